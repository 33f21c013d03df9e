#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include "helpers.hpp"
#include "tubal/t_algebra.hpp"
#include "tubal/tnn.hpp"

using namespace tubal;
using testutil::random_tensor;
using testutil::rel_err;

namespace {

// Slicewise oracle built from the naive DFT and a plain Jacobi SVD; shares
// no transform or SVD code path with svt_tubes.
Tensor3 svt_oracle(const Tensor3& t, double tau) {
  const std::size_t m = t.m(), n = t.n(), k = t.k();
  // Spectra per tube via the naive DFT.
  std::vector<Eigen::MatrixXcd> slices(k, Eigen::MatrixXcd(m, n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<double> tube(k);
      for (std::size_t l = 0; l < k; ++l) tube[l] = t(i, j, l);
      const auto spec = testutil::dft_naive(tube);
      for (std::size_t l = 0; l < k; ++l) slices[l](i, j) = spec[l];
    }
  }
  for (std::size_t l = 0; l < k; ++l) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
        slices[l], Eigen::ComputeThinU | Eigen::ComputeThinV);
    Eigen::VectorXd sig = svd.singularValues();
    for (Eigen::Index q = 0; q < sig.size(); ++q) sig(q) = std::max(sig(q) - tau, 0.0);
    slices[l] = svd.matrixU() * sig.asDiagonal() * svd.matrixV().adjoint();
  }
  // Inverse DFT per tube.
  Tensor3 out(m, n, k);
  const double pi = 3.14159265358979323846;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t tt = 0; tt < k; ++tt) {
        std::complex<double> acc = 0.0;
        for (std::size_t l = 0; l < k; ++l) {
          const double ang = 2.0 * pi * static_cast<double>(l * tt) /
                             static_cast<double>(k);
          acc += slices[l](i, j) * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        out(i, j, tt) = acc.real() / static_cast<double>(k);
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("svt_tubes: tau = 0 is the identity") {
  Tensor3 t = random_tensor(5, 4, 3, 1);
  CHECK(rel_err(svt_tubes(t, 0.0), t) < 1e-12);
}

TEST_CASE("svt_tubes: huge tau annihilates the tensor") {
  Tensor3 t = random_tensor(5, 4, 3, 2);
  // Frobenius norm of the spectrum bounds every slice's spectral norm.
  const double bound = fft_tubes(t).frobenius_norm();
  CHECK(svt_tubes(t, bound).frobenius_norm() < 1e-12);
}

TEST_CASE("svt_tubes matches the slicewise SVD oracle") {
  Tensor3 t = random_tensor(5, 4, 3, 3);
  CHECK(rel_err(svt_tubes(t, 0.5), svt_oracle(t, 0.5)) < 1e-10);
}

TEST_CASE("svt_tubes is non-expansive") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Tensor3 a = random_tensor(4, 5, 4, 10 + seed);
    Tensor3 b = random_tensor(4, 5, 4, 20 + seed);
    const double lhs = (svt_tubes(a, 0.7) - svt_tubes(b, 0.7)).frobenius_norm();
    const double rhs = (a - b).frobenius_norm();
    CHECK(lhs <= rhs + 1e-12);
  }
}

TEST_CASE("complete_tnn: full mask returns the observation in one iteration") {
  Tensor3 t = random_tensor(6, 5, 4, 30);
  auto mask = ObservationMask::full(6, 5, 4);
  auto res = complete_tnn(t, mask, TnnConfig{});
  CHECK(res.report.iters_run == 1);
  CHECK(rel_err(res.estimate, t) == 0.0);
}

TEST_CASE("complete_tnn: data consistency and convergence on low-rank data") {
  const std::size_t m = 12, n = 12, k = 8, r = 1;
  Tensor3 truth = t_product(random_tensor(m, r, k, 31), random_tensor(r, n, k, 32));
  auto mask = ObservationMask::random_trace(m, n, k, 0.7, 4);
  Tensor3 t_om = project(truth, mask);

  auto res = complete_tnn(t_om, mask, TnnConfig{}, &truth);
  // Observations are kept verbatim in the returned estimate.
  CHECK((project(res.estimate, mask) - t_om).frobenius_norm() == 0.0);
  CHECK(res.report.objective_history.back() < 1e-4);
  CHECK(res.report.iters_run < 500);
  CHECK(res.report.objective_history.size() ==
        static_cast<std::size_t>(res.report.iters_run));
}
