#pragma once

#include <complex>
#include <random>
#include <vector>

#include "tubal/sampling.hpp"
#include "tubal/synth.hpp"
#include "tubal/tensor3.hpp"

namespace testutil {

// Synthetic config with the plane geometry rescaled into an arbitrary
// window (the stock planes assume 256 time samples).
inline tubal::SynthConfig desk_config(std::size_t m, std::size_t n,
                                      std::size_t k) {
  tubal::SynthConfig cfg;
  cfg.m = m;
  cfg.n = n;
  cfg.k = k;
  const double kk = static_cast<double>(k);
  cfg.planes = {
      {kk / 8.0 / static_cast<double>(m), 0.0, kk / 4.0, 1.0},
      {-kk / 16.0 / static_cast<double>(m), kk / 16.0 / static_cast<double>(n),
       5.0 * kk / 8.0, 0.8},
  };
  return cfg;
}

inline tubal::Tensor3 random_tensor(std::size_t m, std::size_t n, std::size_t k,
                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  tubal::Tensor3 t(m, n, k);
  for (std::size_t tt = 0; tt < k; ++tt) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < m; ++i) t(i, j, tt) = g(rng);
    }
  }
  return t;
}

// Brute-force t-product: tube-wise circular convolution, no FFT involved.
// Kept deliberately naive so it stays independent of the implementation.
inline tubal::Tensor3 t_product_bruteforce(const tubal::Tensor3& x,
                                           const tubal::Tensor3& y) {
  const std::size_t m = x.m(), r = x.n(), n = y.n(), k = x.k();
  tubal::Tensor3 out(m, n, k);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t s = 0; s < r; ++s) {
        for (std::size_t t = 0; t < k; ++t) {
          double acc = 0.0;
          for (std::size_t tau = 0; tau < k; ++tau) {
            acc += x(i, s, tau) * y(s, j, (t + k - tau) % k);
          }
          out(i, j, t) += acc;
        }
      }
    }
  }
  return out;
}

// Plain O(k^2) DFT of one tube, for checking spectra without FFTW.
inline std::vector<std::complex<double>> dft_naive(const std::vector<double>& x) {
  const std::size_t k = x.size();
  std::vector<std::complex<double>> out(k);
  for (std::size_t l = 0; l < k; ++l) {
    std::complex<double> acc = 0.0;
    for (std::size_t t = 0; t < k; ++t) {
      const double ang = -2.0 * 3.14159265358979323846 *
                         static_cast<double>(l * t) / static_cast<double>(k);
      acc += x[t] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    out[l] = acc;
  }
  return out;
}

inline double rel_err(const tubal::Tensor3& a, const tubal::Tensor3& b) {
  const double ref = b.frobenius_norm();
  return ref == 0.0 ? (a - b).frobenius_norm() : (a - b).frobenius_norm() / ref;
}

// Element mask replicating a trace mask's pattern; drives the general LS
// path with a tube-constant observation set.
inline tubal::ObservationMask as_element_mask(const tubal::ObservationMask& trace) {
  const std::size_t m = trace.m(), n = trace.n(), k = trace.k();
  std::vector<std::uint8_t> bytes(m * n * k, 0);
  for (std::size_t t = 0; t < k; ++t) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < m; ++i) {
        bytes[i + j * m + t * m * n] = trace.observes_trace(i, j) ? 1 : 0;
      }
    }
  }
  return tubal::ObservationMask::from_bytes(tubal::MaskKind::element, m, n, k,
                                            std::move(bytes));
}

}  // namespace testutil
