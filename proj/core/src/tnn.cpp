#include "tubal/tnn.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>

#include "tubal/parallel.hpp"
#include "tubal/t_algebra.hpp"

namespace tubal {

namespace {

using Eigen::MatrixXcd;
using MapMatC = Eigen::Map<MatrixXcd>;
using MapMatCConst = Eigen::Map<const MatrixXcd>;

// Overwrites observed entries of t with the corresponding entries of obs.
void enforce_observations(Tensor3& t, const Tensor3& obs,
                          const ObservationMask& mask) {
  const std::size_t m = t.m(), n = t.n(), k = t.k();
  if (mask.kind() == MaskKind::trace) {
    for (std::size_t tt = 0; tt < k; ++tt) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < m; ++i) {
          if (mask.observes_trace(i, j)) t(i, j, tt) = obs(i, j, tt);
        }
      }
    }
  } else {
    const auto& bytes = mask.bytes();
    double* dst = t.data();
    const double* src = obs.data();
    for (std::size_t p = 0; p < t.size(); ++p) {
      if (bytes[p]) dst[p] = src[p];
    }
  }
}

}  // namespace

Tensor3 svt_tubes(const Tensor3& t, double tau) {
  if (tau < 0.0) throw Error("svt_tubes: tau must be >= 0");
  const std::size_t m = t.m(), n = t.n(), k = t.k();
  SpectralTensor spec = fft_tubes(t);
  SpectralTensor out(m, n, k);
  parallel_for(detail::half_slices(k), [&](std::size_t l) {
    MapMatCConst a(spec.slice_data(l), m, n);
    Eigen::BDCSVD<MatrixXcd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Eigen::VectorXd sig = svd.singularValues();
    for (Eigen::Index i = 0; i < sig.size(); ++i) {
      sig(i) = std::max(sig(i) - tau, 0.0);
    }
    MapMatC(out.slice_data(l), m, n).noalias() =
        svd.matrixU() * sig.asDiagonal() * svd.matrixV().adjoint();
  });
  detail::mirror_conjugate(out);
  Tensor3 result = ifft_tubes(out);
  result.set_dt(t.dt());
  return result;
}

TnnResult complete_tnn(const Tensor3& t_omega, const ObservationMask& mask,
                       const TnnConfig& cfg, const Tensor3* truth) {
  if (!mask.dims_match(t_omega)) {
    throw DimMismatch("complete_tnn: mask and tensor dims differ");
  }
  if (cfg.rho <= 0.0 || cfg.max_iters < 1 || cfg.tol_rse < 0.0 ||
      cfg.tol_primal < 0.0) {
    throw Error("complete_tnn: invalid configuration");
  }
  if (truth != nullptr && !truth->same_dims(t_omega)) {
    throw DimMismatch("complete_tnn: truth dims differ");
  }
  if (!t_omega.all_finite()) throw NonFiniteInput("complete_tnn: non-finite input");

  const auto t_start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         t_start)
        .count();
  };

  const Tensor3 tom = project(t_omega, mask);
  const double obs_norm = tom.frobenius_norm();
  const double truth_norm = truth != nullptr ? truth->frobenius_norm() : 0.0;

  TnnResult res;
  auto record = [&](const Tensor3& output, double obj) {
    res.report.objective_history.push_back(obj);
    if (truth != nullptr) {
      res.report.rse_history.push_back((output - *truth).frobenius_norm() /
                                       truth_norm);
    }
    res.report.elapsed_history.push_back(elapsed());
  };

  // Nothing to complete: the constraint set is a single point.
  if (obs_norm == 0.0 || mask.rate_actual() >= 1.0) {
    res.estimate = tom;
    res.report.iters_run = 1;
    record(res.estimate, 0.0);
    res.report.terminated_by = Termination::tol;
    res.report.wall_time_s = elapsed();
    return res;
  }

  Tensor3 x(t_omega.m(), t_omega.n(), t_omega.k(), t_omega.dt());
  Tensor3 z = tom;
  Tensor3 dual(t_omega.m(), t_omega.n(), t_omega.k());
  double rho = cfg.rho;

  res.report.terminated_by = Termination::max_iters;
  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    x = svt_tubes(z - dual, 1.0 / rho);
    z = x + dual;
    enforce_observations(z, tom, mask);
    const Tensor3 gap = x - z;
    dual += gap;

    // Completion output: observations verbatim, holes from the iterate.
    Tensor3 output = x;
    enforce_observations(output, tom, mask);
    output.set_dt(t_omega.dt());

    const double obj = (project(x, mask) - tom).frobenius_norm() / obs_norm;
    res.report.iters_run = iter;
    record(output, obj);

    const double scale = std::max(x.frobenius_norm(), z.frobenius_norm());
    const double primal = scale > 0.0 ? gap.frobenius_norm() / scale : 0.0;
    if (obj < cfg.tol_rse) {
      res.report.terminated_by = Termination::tol;
      res.estimate = std::move(output);
      break;
    }
    if (primal < cfg.tol_primal) {
      res.report.terminated_by = Termination::stall;
      res.estimate = std::move(output);
      break;
    }
    res.estimate = std::move(output);

    const double rho_next = std::min(rho * cfg.rho_growth, cfg.rho_max);
    if (rho_next != rho) {
      dual *= rho / rho_next;  // scaled dual tracks y / rho
      rho = rho_next;
    }
  }

  res.report.wall_time_s = elapsed();
  return res;
}

}  // namespace tubal
