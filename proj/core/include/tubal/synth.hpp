#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tubal/tensor3.hpp"

namespace tubal {

/// A planar reflector: the spike time (in samples, fractional) for trace
/// (i, j) is t0 + dip_x * i + dip_y * j.
struct DippingPlane {
  double dip_x = 0.0;   // samples per inline step
  double dip_y = 0.0;   // samples per xline step
  double t0 = 0.0;      // sample index at (0, 0)
  double amplitude = 1.0;
};

struct SynthConfig {
  std::size_t m = 64, n = 64, k = 256;
  double dt = 0.001;           // seconds per time sample
  double wavelet_freq = 40.0;  // Hz
  std::vector<DippingPlane> planes = default_planes();
  std::optional<std::size_t> truncate_rank = 2;
  std::uint64_t seed = 0;

  static std::vector<DippingPlane> default_planes() {
    return {{0.5, 0.0, 64.0, 1.0}, {-0.25, 0.25, 160.0, 0.8}};
  }
};

/// Ricker wavelet (1 - 2 pi^2 f^2 t^2) exp(-pi^2 f^2 t^2), sampled at dt and
/// centered at the middle sample. Throws FreqAboveNyquist if f >= 1/(2 dt).
std::vector<double> ricker(double freq_hz, double dt_s, std::size_t length);

/// Reflectivity spikes placed along the configured planes (linearly
/// interpolated onto the time grid), convolved trace-wise with the Ricker
/// wavelet. The convolution is linear, not circular: physical wavelets do not
/// wrap around the time window.
Tensor3 dipping_planes_volume(const SynthConfig& cfg);

/// Exact low-tubal-rank projection: t-SVD, keep the first r singular tubes,
/// recompose.
Tensor3 make_low_tubal_rank(const Tensor3& t, std::size_t r);

/// dipping_planes_volume followed by the configured rank truncation.
Tensor3 generate(const SynthConfig& cfg);

}  // namespace tubal
