#include "tubal/altmin.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "tubal/parallel.hpp"
#include "tubal/t_algebra.hpp"

namespace tubal {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using MapMatC = Eigen::Map<MatrixXcd>;
using MapMatCConst = Eigen::Map<const MatrixXcd>;

// Ridge > 0 keeps the normal equations positive definite even when the
// sampled system is rank deficient; ridge == 0 falls back to the
// minimum-norm least-squares solution.
template <typename Mat, typename Vec>
Vec ridge_solve(const Mat& a, const Vec& b, double ridge) {
  if (a.rows() == 0) return Vec::Zero(a.cols());
  if (ridge > 0.0) {
    Mat gram = a.adjoint() * a;
    gram.diagonal().array() += ridge;
    return Eigen::LLT<Mat>(gram).solve(a.adjoint() * b);
  }
  return a.completeOrthogonalDecomposition().solve(b);
}

std::vector<std::vector<int>> observed_rows_per_column(const ObservationMask& mask) {
  std::vector<std::vector<int>> rows(mask.n());
  for (std::size_t j = 0; j < mask.n(); ++j) {
    for (std::size_t i = 0; i < mask.m(); ++i) {
      if (mask.observes_trace(i, j)) rows[j].push_back(static_cast<int>(i));
    }
  }
  return rows;
}

std::vector<std::vector<int>> observed_cols_per_row(const ObservationMask& mask) {
  std::vector<std::vector<int>> cols(mask.m());
  for (std::size_t j = 0; j < mask.n(); ++j) {
    for (std::size_t i = 0; i < mask.m(); ++i) {
      if (mask.observes_trace(i, j)) cols[i].push_back(static_cast<int>(j));
    }
  }
  return cols;
}

// Trace masks are tube-constant, so the problem decouples per frequency
// slice and per column into a small complex least squares.
SpectralTensor ls_y_trace(const SpectralTensor& t_hat,
                          const ObservationMask& mask,
                          const SpectralTensor& x_hat, double ridge) {
  const std::size_t m = x_hat.m(), r = x_hat.n(), n = t_hat.n(), k = t_hat.k();
  const auto rows = observed_rows_per_column(mask);
  SpectralTensor y_hat(r, n, k);
  parallel_for(detail::half_slices(k), [&](std::size_t l) {
    MapMatCConst xl(x_hat.slice_data(l), m, r);
    MapMatCConst tl(t_hat.slice_data(l), m, n);
    MapMatC yl(y_hat.slice_data(l), r, n);
    for (std::size_t j = 0; j < n; ++j) {
      const auto& idx = rows[j];
      if (idx.empty()) {
        yl.col(j).setZero();
        continue;
      }
      MatrixXcd a(idx.size(), r);
      VectorXcd b(idx.size());
      for (std::size_t q = 0; q < idx.size(); ++q) {
        a.row(q) = xl.row(idx[q]);
        b(q) = tl(idx[q], j);
      }
      yl.col(j) = ridge_solve(a, b, ridge);
    }
  });
  detail::mirror_conjugate(y_hat);
  return y_hat;
}

SpectralTensor ls_x_trace(const SpectralTensor& t_hat,
                          const ObservationMask& mask,
                          const SpectralTensor& y_hat, double ridge) {
  const std::size_t r = y_hat.m(), n = y_hat.n(), m = t_hat.m(), k = t_hat.k();
  const auto cols = observed_cols_per_row(mask);
  SpectralTensor x_hat(m, r, k);
  parallel_for(detail::half_slices(k), [&](std::size_t l) {
    MapMatCConst yl(y_hat.slice_data(l), r, n);
    MapMatCConst tl(t_hat.slice_data(l), m, n);
    MapMatC xl(x_hat.slice_data(l), m, r);
    for (std::size_t i = 0; i < m; ++i) {
      const auto& idx = cols[i];
      if (idx.empty()) {
        xl.row(i).setZero();
        continue;
      }
      // T(i,j) = X.row(i) * Y.col(j): plain transpose, no conjugation.
      MatrixXcd a(idx.size(), r);
      VectorXcd b(idx.size());
      for (std::size_t q = 0; q < idx.size(); ++q) {
        a.row(q) = yl.col(idx[q]).transpose();
        b(q) = tl(i, idx[q]);
      }
      xl.row(i) = ridge_solve(a, b, ridge).transpose();
    }
  });
  detail::mirror_conjugate(x_hat);
  return x_hat;
}

// General path: per lateral slice j the unknowns are the r*k tube entries of
// Y(:,j,:) and each observed (i,t) contributes one time-domain row through
// the circular convolution.
SpectralTensor ls_y_general(const SpectralTensor& t_hat,
                            const ObservationMask& mask,
                            const SpectralTensor& x_hat, double ridge) {
  const std::size_t m = x_hat.m(), r = x_hat.n(), n = t_hat.n(), k = t_hat.k();
  const Tensor3 t_time = ifft_tubes(t_hat);
  const Tensor3 x_time = ifft_tubes(x_hat);
  Tensor3 y_time(r, n, k);
  parallel_for(n, [&](std::size_t j) {
    std::vector<std::pair<int, int>> obs;
    for (std::size_t t = 0; t < k; ++t) {
      for (std::size_t i = 0; i < m; ++i) {
        if (mask.observes(i, j, t)) obs.emplace_back(static_cast<int>(i),
                                                     static_cast<int>(t));
      }
    }
    if (obs.empty()) return;
    MatrixXd a(obs.size(), r * k);
    VectorXd b(obs.size());
    for (std::size_t q = 0; q < obs.size(); ++q) {
      const int i = obs[q].first, t = obs[q].second;
      for (std::size_t s = 0; s < r; ++s) {
        for (std::size_t tau = 0; tau < k; ++tau) {
          a(q, s * k + tau) = x_time(i, s, (t + k - tau) % k);
        }
      }
      b(q) = t_time(i, j, t);
    }
    const VectorXd sol = ridge_solve(a, b, ridge);
    for (std::size_t s = 0; s < r; ++s) {
      for (std::size_t tau = 0; tau < k; ++tau) {
        y_time(s, j, tau) = sol(s * k + tau);
      }
    }
  });
  return fft_tubes(y_time);
}

SpectralTensor ls_x_general(const SpectralTensor& t_hat,
                            const ObservationMask& mask,
                            const SpectralTensor& y_hat, double ridge) {
  const std::size_t r = y_hat.m(), n = y_hat.n(), m = t_hat.m(), k = t_hat.k();
  const Tensor3 t_time = ifft_tubes(t_hat);
  const Tensor3 y_time = ifft_tubes(y_hat);
  Tensor3 x_time(m, r, k);
  parallel_for(m, [&](std::size_t i) {
    std::vector<std::pair<int, int>> obs;
    for (std::size_t t = 0; t < k; ++t) {
      for (std::size_t j = 0; j < n; ++j) {
        if (mask.observes(i, j, t)) obs.emplace_back(static_cast<int>(j),
                                                     static_cast<int>(t));
      }
    }
    if (obs.empty()) return;
    MatrixXd a(obs.size(), r * k);
    VectorXd b(obs.size());
    for (std::size_t q = 0; q < obs.size(); ++q) {
      const int j = obs[q].first, t = obs[q].second;
      for (std::size_t s = 0; s < r; ++s) {
        for (std::size_t tau = 0; tau < k; ++tau) {
          a(q, s * k + tau) = y_time(s, j, (t + k - tau) % k);
        }
      }
      b(q) = t_time(i, j, t);
    }
    const VectorXd sol = ridge_solve(a, b, ridge);
    for (std::size_t s = 0; s < r; ++s) {
      for (std::size_t tau = 0; tau < k; ++tau) {
        x_time(i, s, tau) = sol(s * k + tau);
      }
    }
  });
  return fft_tubes(x_time);
}

void check_ls_inputs(const SpectralTensor& t_hat, const ObservationMask& mask,
                     const SpectralTensor& factor_hat) {
  if (mask.m() != t_hat.m() || mask.n() != t_hat.n() || mask.k() != t_hat.k()) {
    throw DimMismatch("ls update: mask and data dims differ");
  }
  if (!t_hat.all_finite() || !factor_hat.all_finite()) {
    throw NonFiniteInput("ls update: non-finite input");
  }
}

}  // namespace

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::tol:
      return "tol";
    case Termination::stall:
      return "stall";
    default:
      return "max_iters";
  }
}

Tensor3 initialize(const Tensor3& t_omega, const ObservationMask& mask,
                   std::size_t r) {
  if (!mask.dims_match(t_omega)) {
    throw DimMismatch("initialize: mask and tensor dims differ");
  }
  if (r < 1 || r > std::min(t_omega.m(), t_omega.n())) {
    throw RankOutOfRange("initialize: rank outside [1, min(m, n)]");
  }
  if (mask.observed_count() == 0) {
    throw EmptyMask("initialize: mask observes nothing");
  }
  const double p = static_cast<double>(mask.observed_elements()) /
                   static_cast<double>(t_omega.size());
  Tensor3 scaled = t_omega;
  scaled *= 1.0 / p;
  TSvdResult f = t_svd(scaled, r);
  return t_product(f.u, f.s);
}

SpectralTensor ls_y(const SpectralTensor& t_hat, const ObservationMask& mask,
                    const SpectralTensor& x_hat, double ridge) {
  check_ls_inputs(t_hat, mask, x_hat);
  if (x_hat.m() != t_hat.m() || x_hat.k() != t_hat.k()) {
    throw DimMismatch("ls_y: factor dims inconsistent with data");
  }
  return mask.kind() == MaskKind::trace ? ls_y_trace(t_hat, mask, x_hat, ridge)
                                        : ls_y_general(t_hat, mask, x_hat, ridge);
}

SpectralTensor ls_x(const SpectralTensor& t_hat, const ObservationMask& mask,
                    const SpectralTensor& y_hat, double ridge) {
  check_ls_inputs(t_hat, mask, y_hat);
  if (y_hat.n() != t_hat.n() || y_hat.k() != t_hat.k()) {
    throw DimMismatch("ls_x: factor dims inconsistent with data");
  }
  return mask.kind() == MaskKind::trace ? ls_x_trace(t_hat, mask, y_hat, ridge)
                                        : ls_x_general(t_hat, mask, y_hat, ridge);
}

Eigen::VectorXcd solve_block_ls(const Eigen::VectorXcd& b,
                                const Eigen::MatrixXcd& a1,
                                const Eigen::MatrixXcd& a2, double ridge) {
  if (a1.cols() != a2.rows() || a1.rows() != b.size()) {
    throw DimMismatch("solve_block_ls: non-conformable blocks");
  }
  if (ridge < 0.0) throw Error("solve_block_ls: ridge must be >= 0");
  if (!b.allFinite() || !a1.allFinite() || !a2.allFinite()) {
    throw NonFiniteInput("solve_block_ls: non-finite input");
  }
  const MatrixXcd op = a1 * a2;
  return ridge_solve(op, b, ridge);
}

CompletionResult complete(const Tensor3& t_omega, const ObservationMask& mask,
                          const SolverConfig& cfg, const Tensor3* truth) {
  if (!mask.dims_match(t_omega)) {
    throw DimMismatch("complete: mask and tensor dims differ");
  }
  if (cfg.rank < 1 || cfg.rank > std::min(t_omega.m(), t_omega.n())) {
    throw RankOutOfRange("complete: rank outside [1, min(m, n)]");
  }
  if (cfg.max_iters < 1 || cfg.tol_rse < 0.0 || cfg.tol_stall < 0.0) {
    throw Error("complete: invalid solver configuration");
  }
  if (truth != nullptr && !truth->same_dims(t_omega)) {
    throw DimMismatch("complete: truth dims differ");
  }
  if (!t_omega.all_finite()) throw NonFiniteInput("complete: non-finite input");

  const auto t_start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         t_start)
        .count();
  };

  const std::size_t m = t_omega.m(), n = t_omega.n(), k = t_omega.k();
  const Tensor3 tom = project(t_omega, mask);
  const double obs_norm = tom.frobenius_norm();
  const double truth_norm = truth != nullptr ? truth->frobenius_norm() : 0.0;

  CompletionResult res;
  res.factors.rank = cfg.rank;
  if (obs_norm == 0.0) {
    res.factors.x = Tensor3(m, cfg.rank, k);
    res.factors.y = Tensor3(cfg.rank, n, k);
    res.estimate = Tensor3(m, n, k, t_omega.dt());
    res.report.iters_run = 0;
    res.report.objective_history.push_back(0.0);
    res.report.terminated_by = Termination::tol;
    res.report.wall_time_s = elapsed();
    return res;
  }

  const double ridge = cfg.ridge >= 0.0
                           ? cfg.ridge
                           : 1e-12 * obs_norm * obs_norm /
                                 static_cast<double>(mask.observed_elements());

  SpectralTensor x_hat = fft_tubes(initialize(tom, mask, cfg.rank));
  const SpectralTensor t_hat = fft_tubes(tom);
  SpectralTensor y_hat;
  Tensor3 estimate(m, n, k, t_omega.dt());

  res.report.terminated_by = Termination::max_iters;
  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    y_hat = ls_y(t_hat, mask, x_hat, ridge);
    x_hat = ls_x(t_hat, mask, y_hat, ridge);

    SpectralTensor z(m, n, k);
    parallel_for(detail::half_slices(k), [&](std::size_t l) {
      MapMatCConst xl(x_hat.slice_data(l), m, cfg.rank);
      MapMatCConst yl(y_hat.slice_data(l), cfg.rank, n);
      MapMatC zl(z.slice_data(l), m, n);
      zl.noalias() = xl * yl;
    });
    detail::mirror_conjugate(z);
    estimate = ifft_tubes(z);
    estimate.set_dt(t_omega.dt());

    const double obj = (project(estimate, mask) - tom).frobenius_norm() / obs_norm;
    res.report.iters_run = iter;
    res.report.objective_history.push_back(obj);
    if (truth != nullptr) {
      res.report.rse_history.push_back((estimate - *truth).frobenius_norm() /
                                       truth_norm);
    }
    res.report.elapsed_history.push_back(elapsed());

    if (obj < cfg.tol_rse) {
      res.report.terminated_by = Termination::tol;
      break;
    }
    const std::size_t count = res.report.objective_history.size();
    if (count >= 2) {
      const double prev = res.report.objective_history[count - 2];
      if (prev > 0.0 && std::abs(prev - obj) <= cfg.tol_stall * prev) {
        res.report.terminated_by = Termination::stall;
        break;
      }
    }
  }

  res.factors.x = ifft_tubes(x_hat);
  res.factors.y = ifft_tubes(y_hat);
  res.estimate = std::move(estimate);
  res.report.wall_time_s = elapsed();
  return res;
}

}  // namespace tubal
