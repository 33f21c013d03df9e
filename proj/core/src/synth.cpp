#include "tubal/synth.hpp"

#include <cmath>
#include <numbers>

#include "tubal/parallel.hpp"
#include "tubal/t_algebra.hpp"

namespace tubal {

std::vector<double> ricker(double freq_hz, double dt_s, std::size_t length) {
  if (dt_s <= 0.0 || freq_hz <= 0.0) {
    throw Error("ricker: frequency and dt must be positive");
  }
  if (freq_hz >= 0.5 / dt_s) {
    throw FreqAboveNyquist("ricker: central frequency at or above Nyquist");
  }
  std::vector<double> w(length);
  const double center = 0.5 * static_cast<double>(length - 1);
  const double pf = std::numbers::pi * freq_hz;
  for (std::size_t i = 0; i < length; ++i) {
    const double t = (static_cast<double>(i) - center) * dt_s;
    const double a = pf * pf * t * t;
    w[i] = (1.0 - 2.0 * a) * std::exp(-a);
  }
  return w;
}

Tensor3 dipping_planes_volume(const SynthConfig& cfg) {
  const std::size_t m = cfg.m, n = cfg.n, k = cfg.k;
  Tensor3 out(m, n, k, cfg.dt);
  if (cfg.planes.empty()) return out;

  for (const DippingPlane& plane : cfg.planes) {
    bool hit = false;
    for (std::size_t j = 0; j < n && !hit; ++j) {
      for (std::size_t i = 0; i < m && !hit; ++i) {
        const double t = plane.t0 + plane.dip_x * static_cast<double>(i) +
                         plane.dip_y * static_cast<double>(j);
        hit = t >= 0.0 && t < static_cast<double>(k);
      }
    }
    if (!hit) {
      throw PlaneOutOfVolume("dipping_planes_volume: plane misses the volume");
    }
  }

  // Wavelet support of +-1.5/f seconds; the tail is below 1e-9 there.
  const std::size_t half = static_cast<std::size_t>(
      std::ceil(1.5 / (cfg.wavelet_freq * cfg.dt)));
  const std::vector<double> w = ricker(cfg.wavelet_freq, cfg.dt, 2 * half + 1);
  const std::ptrdiff_t wc = static_cast<std::ptrdiff_t>(half);

  parallel_for(n, [&](std::size_t j) {
    std::vector<double> refl(k);
    for (std::size_t i = 0; i < m; ++i) {
      std::fill(refl.begin(), refl.end(), 0.0);
      for (const DippingPlane& plane : cfg.planes) {
        const double t = plane.t0 + plane.dip_x * static_cast<double>(i) +
                         plane.dip_y * static_cast<double>(j);
        const double fl = std::floor(t);
        const std::ptrdiff_t t0 = static_cast<std::ptrdiff_t>(fl);
        const double frac = t - fl;
        if (t0 >= 0 && t0 < static_cast<std::ptrdiff_t>(k)) {
          refl[t0] += plane.amplitude * (1.0 - frac);
        }
        if (t0 + 1 >= 0 && t0 + 1 < static_cast<std::ptrdiff_t>(k) && frac > 0.0) {
          refl[t0 + 1] += plane.amplitude * frac;
        }
      }
      // Linear convolution with the centered wavelet, cropped to [0, k).
      for (std::size_t t = 0; t < k; ++t) {
        if (refl[t] == 0.0) continue;
        const double amp = refl[t];
        for (std::size_t q = 0; q < w.size(); ++q) {
          const std::ptrdiff_t out_t =
              static_cast<std::ptrdiff_t>(t) + static_cast<std::ptrdiff_t>(q) - wc;
          if (out_t >= 0 && out_t < static_cast<std::ptrdiff_t>(k)) {
            out(i, j, out_t) += amp * w[q];
          }
        }
      }
    }
  });
  return out;
}

Tensor3 make_low_tubal_rank(const Tensor3& t, std::size_t r) {
  if (r < 1 || r > std::min(t.m(), t.n())) {
    throw RankOutOfRange("make_low_tubal_rank: rank outside [1, min(m, n)]");
  }
  TSvdResult f = t_svd(t);
  Tensor3 out = compose(truncate_tubes(f, r));
  out.set_dt(t.dt());
  return out;
}

Tensor3 generate(const SynthConfig& cfg) {
  Tensor3 vol = dipping_planes_volume(cfg);
  if (cfg.truncate_rank.has_value()) {
    vol = make_low_tubal_rank(vol, *cfg.truncate_rank);
  }
  return vol;
}

}  // namespace tubal
