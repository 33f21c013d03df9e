#include "tubal/t_algebra.hpp"

#include <fftw3.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>

#include "tubal/parallel.hpp"

namespace tubal {

namespace {

// FFTW plan creation/destruction is not thread-safe; execution is.
std::mutex fftw_mutex;

using Eigen::MatrixXcd;
using MapMatC = Eigen::Map<MatrixXcd>;
using MapMatCConst = Eigen::Map<const MatrixXcd>;

// All m*n tubes at once: real length-k strided signals -> half spectra
// (h = k/2+1 slices). Output layout matches SpectralTensor slices.
void forward_half(const Tensor3& t, std::complex<double>* out) {
  const int k = static_cast<int>(t.k());
  const int mn = static_cast<int>(t.m() * t.n());
  std::vector<double> in(t.data(), t.data() + t.size());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_mutex);
    plan = fftw_plan_many_dft_r2c(1, &k, mn, in.data(), nullptr, mn, 1,
                                  reinterpret_cast<fftw_complex*>(out), nullptr,
                                  mn, 1, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_mutex);
    fftw_destroy_plan(plan);
  }
}

// Inverse of forward_half; scales by 1/k. half is clobbered.
void inverse_half(std::complex<double>* half, Tensor3& out) {
  const int k = static_cast<int>(out.k());
  const int mn = static_cast<int>(out.m() * out.n());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_mutex);
    plan = fftw_plan_many_dft_c2r(1, &k, mn,
                                  reinterpret_cast<fftw_complex*>(half), nullptr,
                                  mn, 1, out.data(), nullptr, mn, 1,
                                  FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_mutex);
    fftw_destroy_plan(plan);
  }
  const double scale = 1.0 / static_cast<double>(k);
  double* d = out.data();
  for (std::size_t i = 0; i < out.size(); ++i) d[i] *= scale;
}

}  // namespace

namespace detail {

void mirror_conjugate(SpectralTensor& s) {
  const std::size_t k = s.k();
  const std::size_t mn = s.m() * s.n();
  const std::size_t h = half_slices(k);
  for (std::size_t l = h; l < k; ++l) {
    const std::complex<double>* src = s.slice_data(k - l);
    std::complex<double>* dst = s.slice_data(l);
    for (std::size_t p = 0; p < mn; ++p) dst[p] = std::conj(src[p]);
  }
}

}  // namespace detail

SpectralTensor fft_tubes(const Tensor3& t) {
  SpectralTensor out(t.m(), t.n(), t.k());
  if (t.size() == 0) return out;
  forward_half(t, out.data());
  detail::mirror_conjugate(out);
  return out;
}

Tensor3 ifft_tubes(const SpectralTensor& s, double sym_tol) {
  const std::size_t m = s.m(), n = s.n(), k = s.k();
  const std::size_t mn = m * n;
  const std::size_t h = detail::half_slices(k);
  Tensor3 out(m, n, k);
  if (s.size() == 0) return out;

  // Asymmetry energy relative to the total spectral energy.
  double asym2 = 0.0;
  double total2 = 0.0;
  for (std::size_t p = 0; p < s.size(); ++p) total2 += std::norm(s.data()[p]);
  {
    const std::complex<double>* dc = s.slice_data(0);
    for (std::size_t p = 0; p < mn; ++p) asym2 += dc[p].imag() * dc[p].imag();
  }
  if (k % 2 == 0 && k > 1) {
    const std::complex<double>* ny = s.slice_data(k / 2);
    for (std::size_t p = 0; p < mn; ++p) asym2 += ny[p].imag() * ny[p].imag();
  }
  for (std::size_t l = 1; l < h && l < k - l; ++l) {
    const std::complex<double>* a = s.slice_data(l);
    const std::complex<double>* b = s.slice_data(k - l);
    for (std::size_t p = 0; p < mn; ++p) asym2 += std::norm(a[p] - std::conj(b[p])) / 2.0;
  }
  if (asym2 > sym_tol * sym_tol * total2) {
    throw SymmetryViolation("ifft_tubes: spectrum is not conjugate symmetric");
  }

  // Project onto the symmetric subspace, then transform the half spectrum.
  std::vector<std::complex<double>> half(mn * h);
  for (std::size_t l = 0; l < h; ++l) {
    const std::complex<double>* a = s.slice_data(l);
    std::complex<double>* dst = half.data() + l * mn;
    if (l == 0 || (k % 2 == 0 && l == k / 2)) {
      for (std::size_t p = 0; p < mn; ++p) dst[p] = {a[p].real(), 0.0};
    } else {
      const std::complex<double>* b = s.slice_data(k - l);
      for (std::size_t p = 0; p < mn; ++p) {
        dst[p] = 0.5 * (a[p] + std::conj(b[p]));
      }
    }
  }
  inverse_half(half.data(), out);
  return out;
}

Tensor3 t_product(const Tensor3& x, const Tensor3& y) {
  if (x.n() != y.m() || x.k() != y.k()) {
    throw DimMismatch("t_product: inner dims or tube length mismatch");
  }
  const std::size_t m = x.m(), r = x.n(), n = y.n(), k = x.k();
  const std::size_t h = detail::half_slices(k);

  SpectralTensor xs = fft_tubes(x);
  SpectralTensor ys = fft_tubes(y);
  SpectralTensor zs(m, n, k);
  parallel_for(h, [&](std::size_t l) {
    MapMatCConst xl(xs.slice_data(l), m, r);
    MapMatCConst yl(ys.slice_data(l), r, n);
    MapMatC zl(zs.slice_data(l), m, n);
    zl.noalias() = xl * yl;
  });
  detail::mirror_conjugate(zs);
  Tensor3 out = ifft_tubes(zs);
  out.set_dt(x.dt() != 0.0 ? x.dt() : y.dt());
  return out;
}

Tensor3 t_transpose(const Tensor3& x) {
  const std::size_t m = x.m(), n = x.n(), k = x.k();
  Tensor3 out(n, m, k, x.dt());
  for (std::size_t t = 0; t < k; ++t) {
    const std::size_t src = (t == 0) ? 0 : k - t;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < m; ++i) {
        out(j, i, t) = x(i, j, src);
      }
    }
  }
  return out;
}

TSvdResult t_svd(const Tensor3& t, std::optional<std::size_t> r) {
  const std::size_t m = t.m(), n = t.n(), k = t.k();
  const std::size_t full = std::min(m, n);
  const std::size_t rho = r.value_or(full);
  if (rho == 0 || rho > full) {
    throw RankOutOfRange("t_svd: requested rank exceeds min(m, n)");
  }
  const std::size_t h = detail::half_slices(k);

  SpectralTensor ts = fft_tubes(t);
  SpectralTensor us(m, rho, k), ss(rho, rho, k), vs(n, rho, k);

  parallel_for(h, [&](std::size_t l) {
    MapMatCConst a(ts.slice_data(l), m, n);
    Eigen::BDCSVD<MatrixXcd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    MatrixXcd u = svd.matrixU().leftCols(rho);
    MatrixXcd v = svd.matrixV().leftCols(rho);
    const auto& sig = svd.singularValues();

    // Deterministic phase: largest-magnitude entry of each left singular
    // vector made real non-negative.
    for (std::size_t c = 0; c < rho; ++c) {
      Eigen::Index imax = 0;
      u.col(c).cwiseAbs().maxCoeff(&imax);
      const std::complex<double> pivot = u(imax, c);
      const double mag = std::abs(pivot);
      if (mag > 0.0) {
        const std::complex<double> phase = std::conj(pivot) / mag;
        u.col(c) *= phase;
        v.col(c) *= phase;
      }
    }

    MapMatC(us.slice_data(l), m, rho) = u;
    MapMatC(vs.slice_data(l), n, rho) = v;
    MapMatC sl(ss.slice_data(l), rho, rho);
    sl.setZero();
    for (std::size_t c = 0; c < rho; ++c) sl(c, c) = sig(c);
  });
  detail::mirror_conjugate(us);
  detail::mirror_conjugate(ss);
  detail::mirror_conjugate(vs);

  TSvdResult out;
  out.u = ifft_tubes(us);
  out.s = ifft_tubes(ss);
  out.v = ifft_tubes(vs);
  return out;
}

TSvdResult truncate_tubes(const TSvdResult& f, std::size_t r) {
  const std::size_t rho = f.rank_width();
  if (r < 1 || r > rho) {
    throw RankOutOfRange("truncate_tubes: rank outside [1, rank_width]");
  }
  const std::size_t k = f.s.k();
  TSvdResult out;
  out.u = Tensor3(f.u.m(), r, k);
  out.s = Tensor3(r, r, k);
  out.v = Tensor3(f.v.m(), r, k);
  for (std::size_t t = 0; t < k; ++t) {
    for (std::size_t j = 0; j < r; ++j) {
      for (std::size_t i = 0; i < f.u.m(); ++i) out.u(i, j, t) = f.u(i, j, t);
      for (std::size_t i = 0; i < r; ++i) out.s(i, j, t) = f.s(i, j, t);
      for (std::size_t i = 0; i < f.v.m(); ++i) out.v(i, j, t) = f.v(i, j, t);
    }
  }
  return out;
}

Tensor3 compose(const TSvdResult& f) {
  return t_product(t_product(f.u, f.s), t_transpose(f.v));
}

namespace {

// Descending l2 norms of the diagonal tubes of S.
std::vector<double> singular_tube_norms(const Tensor3& t) {
  TSvdResult f = t_svd(t);
  const std::size_t rho = f.rank_width();
  const std::size_t k = t.k();
  std::vector<double> norms(rho);
  for (std::size_t i = 0; i < rho; ++i) {
    double acc = 0.0;
    for (std::size_t l = 0; l < k; ++l) acc += f.s(i, i, l) * f.s(i, i, l);
    norms[i] = std::sqrt(acc);
  }
  std::sort(norms.begin(), norms.end(), std::greater<>());
  return norms;
}

}  // namespace

TubalRankResult tubal_rank(const Tensor3& t, double rel_tol) {
  if (rel_tol <= 0.0 || rel_tol >= 1.0) {
    throw Error("tubal_rank: rel_tol must lie in (0, 1)");
  }
  TubalRankResult out;
  out.tube_norms = singular_tube_norms(t);

  const double lead = out.tube_norms.empty() ? 0.0 : out.tube_norms.front();
  if (lead > 0.0) {
    const double thresh = rel_tol * lead;
    for (double b : out.tube_norms) {
      if (b > thresh) ++out.rank;
    }
  }
  return out;
}

std::vector<std::pair<double, double>> singular_tube_cdf(const Tensor3& t) {
  std::vector<double> norms = singular_tube_norms(t);
  std::sort(norms.begin(), norms.end());
  std::vector<std::pair<double, double>> cdf;
  cdf.reserve(norms.size());
  const double rho = static_cast<double>(norms.size());
  for (std::size_t i = 0; i < norms.size(); ++i) {
    cdf.emplace_back(norms[i], static_cast<double>(i + 1) / rho);
  }
  return cdf;
}

}  // namespace tubal
