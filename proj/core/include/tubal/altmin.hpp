#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "tubal/sampling.hpp"
#include "tubal/tensor3.hpp"

namespace tubal {

/// Width-r factorization: estimate = t_product(x, y) with x m x r x k and
/// y r x n x k, so the estimate has tubal rank at most r by construction.
struct FactorPair {
  Tensor3 x;
  Tensor3 y;
  std::size_t rank = 0;
};

struct SolverConfig {
  std::size_t rank = 1;
  int max_iters = 50;
  double tol_rse = 1e-4;    // stop when the observed-entry residual drops below
  double tol_stall = 1e-8;  // stop on relative objective change below this
  /// Ridge weight on the least-squares half-steps. Negative means automatic:
  /// 1e-12 * ||P(T)||_F^2 / |Omega|, only material when a sampled slice
  /// system is rank deficient.
  double ridge = -1.0;
  std::uint64_t seed = 0;
};

enum class Termination { tol, stall, max_iters };

struct SolveReport {
  int iters_run = 0;
  /// Observed-entry residual ||P(T) - P(estimate)||_F / ||P(T)||_F after each
  /// full iteration; non-increasing up to 1e-10 slack.
  std::vector<double> objective_history;
  /// Full-tensor RSE against ground truth, when a truth tensor was supplied.
  std::vector<double> rse_history;
  /// Cumulative wall time (seconds) at the end of each iteration.
  std::vector<double> elapsed_history;
  Termination terminated_by = Termination::max_iters;
  double wall_time_s = 0.0;
};

const char* termination_name(Termination t);

/// Spectral initialization: X0 = U_r * S_r from the t-SVD of the
/// observation rescaled by the reciprocal observed fraction.
Tensor3 initialize(const Tensor3& t_omega, const ObservationMask& mask,
                   std::size_t r);

/// Exact minimizer of the observed-entry residual over Y with X held fixed
/// (ridge-regularized). Trace masks decouple per frequency slice and column;
/// element masks are solved per lateral slice through the assembled
/// time-domain system. Inputs and output are tube spectra.
SpectralTensor ls_y(const SpectralTensor& t_omega_hat,
                    const ObservationMask& mask, const SpectralTensor& x_hat,
                    double ridge);

/// Mirror of ls_y: solves for X with Y fixed.
SpectralTensor ls_x(const SpectralTensor& t_omega_hat,
                    const ObservationMask& mask, const SpectralTensor& y_hat,
                    double ridge);

/// Minimizer of ||b - A1*A2*x||^2 + ridge*||x||^2. With ridge == 0 the
/// minimum-norm least-squares solution is returned.
Eigen::VectorXcd solve_block_ls(const Eigen::VectorXcd& b,
                                const Eigen::MatrixXcd& a1,
                                const Eigen::MatrixXcd& a2, double ridge);

struct CompletionResult {
  FactorPair factors;
  Tensor3 estimate;
  SolveReport report;
};

/// Alternating minimization for low-tubal-rank completion: spectral init,
/// repeated ls_y / ls_x half-steps in the frequency domain, inverse transform
/// at the end. `truth`, when given, only feeds rse_history.
CompletionResult complete(const Tensor3& t_omega, const ObservationMask& mask,
                          const SolverConfig& cfg,
                          const Tensor3* truth = nullptr);

}  // namespace tubal
