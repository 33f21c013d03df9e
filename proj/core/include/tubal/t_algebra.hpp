#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "tubal/tensor3.hpp"

namespace tubal {

/// t-SVD factors: input = U * S * t_transpose(V), with t-orthogonal U, V and
/// f-diagonal S whose diagonal tube norms ||S(i,i,:)||_2 are non-increasing.
/// U is m x rho x k, S is rho x rho x k, V is n x rho x k where rho is
/// min(m, n) or the truncation width that was requested.
struct TSvdResult {
  Tensor3 u;
  Tensor3 s;
  Tensor3 v;

  std::size_t rank_width() const { return s.m(); }
};

struct TubalRankResult {
  std::size_t rank = 0;
  std::vector<double> tube_norms;  // descending, one per singular tube
};

/// Unnormalized k-point DFT of every tube t(i,j,:).
SpectralTensor fft_tubes(const Tensor3& t);

/// Inverse of fft_tubes (scaled by 1/k). The input must be conjugate
/// symmetric along the third axis within sym_tol (relative, Frobenius);
/// otherwise throws SymmetryViolation. Sub-tolerance asymmetry is projected
/// out, so the result is exactly real.
Tensor3 ifft_tubes(const SpectralTensor& s, double sym_tol = 1e-9);

/// Tube-wise circular-convolution product, computed per frequency slice.
/// x: n1 x n2 x k, y: n2 x n3 x k -> n1 x n3 x k.
Tensor3 t_product(const Tensor3& x, const Tensor3& y);

/// Slice 0 transposed in place; slices 1..k-1 transposed and reversed in
/// slice order. Reduces to the matrix transpose for k == 1.
Tensor3 t_transpose(const Tensor3& x);

/// Per-frequency-slice complex SVD assembled into real U, S, V. When r is
/// given, factors are the reduced width-r t-SVD (r <= min(m, n)).
TSvdResult t_svd(const Tensor3& t, std::optional<std::size_t> r = std::nullopt);

/// Keeps the first r singular tubes, trimming the factors to width r.
/// Throws RankOutOfRange unless 1 <= r <= rank_width().
TSvdResult truncate_tubes(const TSvdResult& f, std::size_t r);

/// U * S * t_transpose(V).
Tensor3 compose(const TSvdResult& f);

/// Number of singular tubes with norm strictly above rel_tol times the
/// leading tube norm, plus the full descending tube-norm list.
TubalRankResult tubal_rank(const Tensor3& t, double rel_tol = 1e-6);

/// Empirical CDF over singular-tube l2 norms: (norm, fraction) pairs with
/// norms ascending and fraction i/rho ending at 1.
std::vector<std::pair<double, double>> singular_tube_cdf(const Tensor3& t);

namespace detail {

/// Count of non-redundant frequency slices for a real length-k signal
/// (DC..Nyquist): k/2 + 1.
inline std::size_t half_slices(std::size_t k) { return k / 2 + 1; }

/// Fills slices half_slices(k)..k-1 with the conjugate of their mirror
/// slice, making the tensor a valid real-signal spectrum.
void mirror_conjugate(SpectralTensor& s);

}  // namespace detail

}  // namespace tubal
