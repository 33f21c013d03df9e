#include "tubal/tensor3.hpp"

#include <cmath>

namespace tubal {

Tensor3 Tensor3::t_identity(std::size_t m, std::size_t k) {
  Tensor3 out(m, m, k);
  for (std::size_t i = 0; i < m; ++i) out(i, i, 0) = 1.0;
  return out;
}

double Tensor3::frobenius_norm() const {
  double acc = 0.0;
  for (double v : data_) acc += v * v;
  return std::sqrt(acc);
}

bool Tensor3::all_finite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

Tensor3& Tensor3::operator+=(const Tensor3& rhs) {
  if (!same_dims(rhs)) throw DimMismatch("Tensor3 += with mismatched dims");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

Tensor3& Tensor3::operator-=(const Tensor3& rhs) {
  if (!same_dims(rhs)) throw DimMismatch("Tensor3 -= with mismatched dims");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

Tensor3& Tensor3::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

double SpectralTensor::frobenius_norm() const {
  double acc = 0.0;
  for (const auto& v : data_) acc += std::norm(v);
  return std::sqrt(acc);
}

bool SpectralTensor::all_finite() const {
  for (const auto& v : data_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

}  // namespace tubal
