#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "tubal/errors.hpp"

namespace tubal {

/// Dense real 3D volume of shape m x n x k (inline x xline x time).
///
/// Storage order: element (i, j, t) lives at index i + j*m + t*m*n, so every
/// frontal slice (fixed t) is a contiguous column-major m x n matrix and a
/// tube (i, j, :) is strided by m*n. The time sampling interval dt (seconds)
/// rides along as metadata; 0 means "not applicable".
class Tensor3 {
 public:
  Tensor3() = default;
  Tensor3(std::size_t m, std::size_t n, std::size_t k, double dt = 0.0)
      : m_(m), n_(n), k_(k), dt_(dt), data_(m * n * k, 0.0) {}

  /// Unit of the t-product: first frontal slice is the identity, rest zero.
  static Tensor3 t_identity(std::size_t m, std::size_t k);

  std::size_t m() const { return m_; }
  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double dt() const { return dt_; }
  void set_dt(double dt) { dt_ = dt; }

  double& operator()(std::size_t i, std::size_t j, std::size_t t) {
    return data_[i + j * m_ + t * m_ * n_];
  }
  double operator()(std::size_t i, std::size_t j, std::size_t t) const {
    return data_[i + j * m_ + t * m_ * n_];
  }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  double* slice_data(std::size_t t) { return data_.data() + t * m_ * n_; }
  const double* slice_data(std::size_t t) const {
    return data_.data() + t * m_ * n_;
  }

  bool same_dims(const Tensor3& other) const {
    return m_ == other.m_ && n_ == other.n_ && k_ == other.k_;
  }

  double frobenius_norm() const;
  bool all_finite() const;

  Tensor3& operator+=(const Tensor3& rhs);
  Tensor3& operator-=(const Tensor3& rhs);
  Tensor3& operator*=(double s);

  friend Tensor3 operator+(Tensor3 lhs, const Tensor3& rhs) { return lhs += rhs; }
  friend Tensor3 operator-(Tensor3 lhs, const Tensor3& rhs) { return lhs -= rhs; }
  friend Tensor3 operator*(double s, Tensor3 t) { return t *= s; }

 private:
  std::size_t m_ = 0, n_ = 0, k_ = 0;
  double dt_ = 0.0;
  std::vector<double> data_;
};

/// Complex companion of Tensor3, same shape and storage order, holding the
/// tube-wise DFT. Forward transform is unnormalized; the inverse carries the
/// 1/k factor, so ||fft_tubes(t)||_F^2 == k * ||t||_F^2.
class SpectralTensor {
 public:
  SpectralTensor() = default;
  SpectralTensor(std::size_t m, std::size_t n, std::size_t k)
      : m_(m), n_(n), k_(k), data_(m * n * k, {0.0, 0.0}) {}

  std::size_t m() const { return m_; }
  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  std::size_t size() const { return data_.size(); }

  std::complex<double>& operator()(std::size_t i, std::size_t j, std::size_t l) {
    return data_[i + j * m_ + l * m_ * n_];
  }
  const std::complex<double>& operator()(std::size_t i, std::size_t j,
                                         std::size_t l) const {
    return data_[i + j * m_ + l * m_ * n_];
  }

  std::complex<double>* data() { return data_.data(); }
  const std::complex<double>* data() const { return data_.data(); }

  std::complex<double>* slice_data(std::size_t l) {
    return data_.data() + l * m_ * n_;
  }
  const std::complex<double>* slice_data(std::size_t l) const {
    return data_.data() + l * m_ * n_;
  }

  bool same_dims(const SpectralTensor& other) const {
    return m_ == other.m_ && n_ == other.n_ && k_ == other.k_;
  }

  double frobenius_norm() const;
  bool all_finite() const;

 private:
  std::size_t m_ = 0, n_ = 0, k_ = 0;
  std::vector<std::complex<double>> data_;
};

}  // namespace tubal
