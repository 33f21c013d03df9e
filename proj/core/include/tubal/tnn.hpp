#pragma once

#include "tubal/altmin.hpp"
#include "tubal/sampling.hpp"
#include "tubal/tensor3.hpp"

namespace tubal {

struct TnnConfig {
  double rho = 1e-2;         // ADMM penalty, grown every iteration
  double rho_growth = 1.1;
  double rho_max = 1e3;
  int max_iters = 500;
  double tol_rse = 1e-4;     // observed-entry residual of the low-rank iterate
  double tol_primal = 1e-7;  // relative primal gap ||X - Z||_F
};

/// Proximal operator of the tensor nuclear norm: per frequency slice,
/// singular values shrunk by tau and clipped at zero.
Tensor3 svt_tubes(const Tensor3& t, double tau);

struct TnnResult {
  Tensor3 estimate;
  SolveReport report;
};

/// ADMM on min ||X||_TNN s.t. P(X) = P(T): singular-value-thresholding
/// X-update, data-consistency Z-update, scaled dual update. The returned
/// estimate keeps the observations verbatim and fills unobserved entries from
/// the low-rank iterate, so data consistency holds for every exit path.
TnnResult complete_tnn(const Tensor3& t_omega, const ObservationMask& mask,
                       const TnnConfig& cfg, const Tensor3* truth = nullptr);

}  // namespace tubal
