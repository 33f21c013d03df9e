#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "tubal/t_algebra.hpp"

using namespace tubal;
using testutil::random_tensor;
using testutil::rel_err;

TEST_CASE("fft_tubes: constant tube concentrates at DC") {
  const double c = 2.5;
  Tensor3 t(1, 1, 4);
  for (std::size_t l = 0; l < 4; ++l) t(0, 0, l) = c;
  SpectralTensor s = fft_tubes(t);
  CHECK(std::abs(s(0, 0, 0) - 4.0 * c) < 1e-14);
  for (std::size_t l = 1; l < 4; ++l) CHECK(std::abs(s(0, 0, l)) < 1e-14);
}

TEST_CASE("fft_tubes: unit impulse has flat spectrum") {
  Tensor3 t(1, 1, 4);
  t(0, 0, 0) = 1.0;
  SpectralTensor s = fft_tubes(t);
  for (std::size_t l = 0; l < 4; ++l) CHECK(std::abs(s(0, 0, l) - 1.0) < 1e-14);
}

TEST_CASE("fft_tubes matches a naive DFT") {
  Tensor3 t = random_tensor(2, 3, 7, 11);
  SpectralTensor s = fft_tubes(t);
  for (std::size_t j = 0; j < 3; ++j) {
    for (std::size_t i = 0; i < 2; ++i) {
      std::vector<double> tube(7);
      for (std::size_t l = 0; l < 7; ++l) tube[l] = t(i, j, l);
      const auto ref = testutil::dft_naive(tube);
      for (std::size_t l = 0; l < 7; ++l) {
        CHECK(std::abs(s(i, j, l) - ref[l]) < 1e-12);
      }
    }
  }
}

TEST_CASE("fft/ifft roundtrip and Parseval") {
  for (std::size_t k : {1u, 2u, 4u, 5u, 8u}) {
    Tensor3 t = random_tensor(3, 2, k, 100 + k);
    SpectralTensor s = fft_tubes(t);
    Tensor3 back = ifft_tubes(s);
    CHECK(rel_err(back, t) < 1e-12);
    const double lhs = s.frobenius_norm() * s.frobenius_norm();
    const double rhs = static_cast<double>(k) * t.frobenius_norm() * t.frobenius_norm();
    CHECK(std::abs(lhs - rhs) < 1e-12 * rhs);
  }
}

TEST_CASE("ifft_tubes: DC-only spectrum gives constant tube") {
  SpectralTensor s(1, 1, 4);
  s(0, 0, 0) = 4.0 * 1.5;
  Tensor3 t = ifft_tubes(s);
  for (std::size_t l = 0; l < 4; ++l) CHECK(t(0, 0, l) == doctest::Approx(1.5));
}

TEST_CASE("ifft_tubes: zero spectrum gives zero tensor") {
  Tensor3 t = ifft_tubes(SpectralTensor(2, 2, 6));
  CHECK(t.frobenius_norm() == 0.0);
}

TEST_CASE("ifft_tubes rejects an asymmetric spectrum") {
  Tensor3 t = random_tensor(2, 2, 6, 7);
  SpectralTensor s = fft_tubes(t);
  s(0, 0, 1) += std::complex<double>(0.5, 0.5);  // breaks conjugate symmetry
  CHECK_THROWS_AS(ifft_tubes(s), SymmetryViolation);
  CHECK_NOTHROW(ifft_tubes(s, 1.0));  // loose tolerance accepts and projects
}

TEST_CASE("t_product: hand-computed 1x1x2 circular convolution") {
  Tensor3 a(1, 1, 2), b(1, 1, 2);
  a(0, 0, 0) = 1;
  a(0, 0, 1) = 2;
  b(0, 0, 0) = 3;
  b(0, 0, 1) = 4;
  Tensor3 c = t_product(a, b);
  CHECK(c(0, 0, 0) == doctest::Approx(11.0));  // 1*3 + 2*4
  CHECK(c(0, 0, 1) == doctest::Approx(10.0));  // 1*4 + 2*3
}

TEST_CASE("t_product: t-identity is the unit") {
  Tensor3 t = random_tensor(4, 3, 5, 21);
  Tensor3 id = Tensor3::t_identity(4, 5);
  CHECK(rel_err(t_product(id, t), t) < 1e-12);
}

TEST_CASE("t_product: dimension mismatch throws") {
  CHECK_THROWS_AS(t_product(Tensor3(2, 3, 4), Tensor3(2, 3, 4)), DimMismatch);
  CHECK_THROWS_AS(t_product(Tensor3(2, 3, 4), Tensor3(3, 2, 5)), DimMismatch);
}

TEST_CASE("t_product agrees with the brute-force circular convolution") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Tensor3 x = random_tensor(4, 3, 5, 1000 + seed);
    Tensor3 y = random_tensor(3, 2, 5, 2000 + seed);
    Tensor3 ref = testutil::t_product_bruteforce(x, y);
    CHECK(rel_err(t_product(x, y), ref) < 1e-10);
  }
}

TEST_CASE("t_product is associative and distributive") {
  Tensor3 a = random_tensor(3, 4, 4, 1);
  Tensor3 b = random_tensor(4, 2, 4, 2);
  Tensor3 c = random_tensor(2, 5, 4, 3);
  CHECK(rel_err(t_product(t_product(a, b), c), t_product(a, t_product(b, c))) <
        1e-10);
  Tensor3 b2 = random_tensor(4, 2, 4, 4);
  CHECK(rel_err(t_product(a, b + b2), t_product(a, b) + t_product(a, b2)) < 1e-10);
}

TEST_CASE("t_transpose is an involution and reduces to matrix transpose") {
  Tensor3 t = random_tensor(3, 5, 6, 31);
  CHECK(rel_err(t_transpose(t_transpose(t)), t) < 1e-15);

  Tensor3 flat = random_tensor(3, 4, 1, 32);
  Tensor3 tr = t_transpose(flat);
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t i = 0; i < 3; ++i) CHECK(tr(j, i, 0) == flat(i, j, 0));
  }
}

TEST_CASE("t_transpose reverses products") {
  Tensor3 x = random_tensor(3, 2, 4, 41);
  Tensor3 y = random_tensor(2, 3, 4, 42);
  CHECK(rel_err(t_transpose(t_product(x, y)),
                t_product(t_transpose(y), t_transpose(x))) < 1e-10);
}

namespace {

double tube_norm(const Tensor3& s, std::size_t i) {
  double acc = 0.0;
  for (std::size_t l = 0; l < s.k(); ++l) acc += s(i, i, l) * s(i, i, l);
  return std::sqrt(acc);
}

void check_tsvd_invariants(const Tensor3& t, const TSvdResult& f, double tol) {
  // f-diagonality
  for (std::size_t l = 0; l < f.s.k(); ++l) {
    for (std::size_t j = 0; j < f.s.n(); ++j) {
      for (std::size_t i = 0; i < f.s.m(); ++i) {
        if (i != j) CHECK(std::abs(f.s(i, j, l)) < tol);
      }
    }
  }
  // non-increasing tube norms
  for (std::size_t i = 0; i + 1 < f.rank_width(); ++i) {
    CHECK(tube_norm(f.s, i) >= tube_norm(f.s, i + 1) - tol);
  }
  // t-orthogonality
  const Tensor3 id_u = Tensor3::t_identity(f.rank_width(), t.k());
  CHECK((t_product(t_transpose(f.u), f.u) - id_u).frobenius_norm() < tol * 10);
  CHECK((t_product(t_transpose(f.v), f.v) - id_u).frobenius_norm() < tol * 10);
}

}  // namespace

TEST_CASE("t_svd of the t-identity is exact with S = I_t") {
  Tensor3 id = Tensor3::t_identity(4, 6);
  TSvdResult f = t_svd(id);
  CHECK(rel_err(f.s, id) < 1e-12);
  CHECK(rel_err(compose(f), id) < 1e-10);
}

TEST_CASE("t_svd reconstructs and satisfies the factor invariants") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    Tensor3 t = random_tensor(6, 5, 4, 500 + seed);
    TSvdResult f = t_svd(t);
    CHECK(rel_err(compose(f), t) < 1e-10);
    check_tsvd_invariants(t, f, 1e-10);
  }
}

TEST_CASE("truncate_tubes: full width is the identity") {
  Tensor3 t = random_tensor(4, 5, 3, 77);
  TSvdResult f = t_svd(t);
  TSvdResult g = truncate_tubes(f, f.rank_width());
  CHECK(rel_err(compose(g), t) < 1e-10);
  CHECK_THROWS_AS(truncate_tubes(f, 0), RankOutOfRange);
  CHECK_THROWS_AS(truncate_tubes(f, f.rank_width() + 1), RankOutOfRange);
}

TEST_CASE("truncate_tubes residual equals the dropped tube energy") {
  Tensor3 t = random_tensor(5, 6, 4, 78);
  TSvdResult f = t_svd(t);
  for (std::size_t r : {std::size_t{1}, std::size_t{3}}) {
    const Tensor3 approx = compose(truncate_tubes(f, r));
    double dropped = 0.0;
    for (std::size_t i = r; i < f.rank_width(); ++i) {
      dropped += tube_norm(f.s, i) * tube_norm(f.s, i);
    }
    CHECK((t - approx).frobenius_norm() ==
          doctest::Approx(std::sqrt(dropped)).epsilon(1e-10));
    CHECK(tubal_rank(approx, 1e-9).rank <= r);
  }
}

TEST_CASE("tubal_rank: zero tensor and t-identity") {
  CHECK(tubal_rank(Tensor3(3, 4, 5)).rank == 0);
  TubalRankResult r = tubal_rank(Tensor3::t_identity(4, 3));
  CHECK(r.rank == 4);
  for (double b : r.tube_norms) CHECK(b == doctest::Approx(1.0));
}

TEST_CASE("singular_tube_cdf: degenerate and generic shapes") {
  const auto cdf_id = singular_tube_cdf(Tensor3::t_identity(4, 3));
  CHECK(cdf_id.size() == 4);
  for (const auto& [norm, frac] : cdf_id) CHECK(norm == doctest::Approx(1.0));
  CHECK(cdf_id.back().second == doctest::Approx(1.0));

  const auto cdf = singular_tube_cdf(random_tensor(5, 6, 4, 90));
  for (std::size_t i = 1; i < cdf.size(); ++i) {
    CHECK(cdf[i].first >= cdf[i - 1].first);
    CHECK(cdf[i].second > cdf[i - 1].second);
  }
  CHECK(cdf.back().second == doctest::Approx(1.0));
}
