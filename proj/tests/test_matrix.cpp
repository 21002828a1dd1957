#include <doctest.h>

#include <numbers>

#include "qmobius/matrix.hpp"
#include "test_support.hpp"

using namespace qmob;

namespace {
const Quaternion I = Quaternion::unit_i();
const Quaternion J = Quaternion::unit_j();
const Quaternion K = Quaternion::unit_k();

std::complex<double> polar(double r, double theta) { return std::polar(r, theta); }
}  // namespace

TEST_SUITE("matrix_algebra") {

TEST_CASE("products") {
  auto rng = test::make_rng(21);
  const MatH2 m = test::random_matrix(rng);
  CHECK(MatH2::identity() * m == m);
  CHECK(m * MatH2::identity() == m);
  CHECK(MatH2::diag(I, I) * MatH2::diag(J, J) == MatH2::diag(K, K));
}

TEST_CASE("determinant examples") {
  CHECK(det(MatH2::identity()) == doctest::Approx(1.0));
  CHECK(det(MatH2::diag(2.0, 3.0)) == doctest::Approx(6.0));
  CHECK(det(MatH2{0.0, J, K, 1.0}) == doctest::Approx(1.0));
  CHECK(det(MatH2{1.0, 1.0, 1.0, 1.0}) == doctest::Approx(0.0));
  // ad - cb vanishes here; the quaternionic determinant does not
  CHECK(det(MatH2{I, J, K, -1.0}) == doctest::Approx(2.0));
  CHECK(test::oracle_det(MatH2{I, J, K, -1.0}) == doctest::Approx(2.0));
  const Quaternion z0{1, 1, 0, 0};
  CHECK(det(MatH2{inverse(z0), -1.0, 0.0, z0}) == doctest::Approx(1.0));
}

TEST_CASE("determinant against the real representation") {
  auto rng = test::make_rng(22);
  for (int i = 0; i < 2000; ++i) {
    MatH2 m = test::random_matrix(rng);
    if (i % 4 == 1) m.a = 0.0;
    if (i % 4 == 2) m.c = 0.0;
    if (i % 4 == 3) m.d = 0.0;
    const double d = det(m);
    REQUIRE(d == doctest::Approx(test::oracle_det(m)).epsilon(1e-9));
    // Study determinant of the complex image is det^2
    REQUIRE(d * d == doctest::Approx(std::abs(embed(m).determinant())).epsilon(1e-9));
  }
}

TEST_CASE("determinant is multiplicative and conjugation invariant") {
  auto rng = test::make_rng(23);
  for (int i = 0; i < 1000; ++i) {
    const MatH2 m = test::random_matrix(rng), n = test::random_matrix(rng);
    REQUIRE(det(m * n) == doctest::Approx(det(m) * det(n)).epsilon(1e-9).scale(1e-12));
    const MatH2 p = test::random_sl(rng);
    REQUIRE(det(p * m * inverse(p)) == doctest::Approx(det(m)).epsilon(1e-8).scale(1e-10));
  }
}

TEST_CASE("sl_normalize") {
  const MatH2 m = sl_normalize(MatH2::diag(2.0, 8.0));
  CHECK(is_sl(m));
  CHECK(m.a.w == doctest::Approx(0.5));
  try {
    (void)sl_normalize(MatH2{1.0, 1.0, 1.0, 1.0});
    FAIL("expected throw");
  } catch (const MathError& e) {
    CHECK(e.kind() == ErrorKind::singular_matrix);
  }
}

TEST_CASE("inverse examples") {
  const Quaternion z0{1, 1, 0, 0};
  const MatH2 h{inverse(z0), -1.0, 0.0, z0};
  const MatH2 expected{z0, 1.0, 0.0, inverse(z0)};
  CHECK(test::max_entry_diff(inverse(h), expected) <= 1e-14);
  CHECK(test::max_entry_diff(inverse(MatH2{0.0, J, K, 1.0}), test::oracle_inverse(MatH2{0.0, J, K, 1.0})) <=
        1e-14);
  try {
    (void)inverse(MatH2{1.0, 1.0, 1.0, 1.0});
    FAIL("expected throw");
  } catch (const MathError& e) {
    CHECK(e.kind() == ErrorKind::singular_matrix);
  }
}

TEST_CASE("l-factor and embedded inverses agree with the oracle") {
  auto rng = test::make_rng(24);
  for (int i = 0; i < 2000; ++i) {
    const MatH2 m = test::random_sl(rng, 0.5);
    const MatH2 ref = test::oracle_inverse(m);
    const double scale = std::max(1.0, max_entry_norm(ref));
    REQUIRE(test::max_entry_diff(inverse_l_factors(m), ref) <= 1e-9 * scale);
    REQUIRE(test::max_entry_diff(inverse_embedded(m), ref) <= 1e-9 * scale);
    REQUIRE(test::max_entry_diff(m * inverse(m), MatH2::identity()) <= 1e-9 * scale);
    REQUIRE(test::max_entry_diff(inverse(m) * m, MatH2::identity()) <= 1e-9 * scale);
  }
}

TEST_CASE("embedding is a homomorphism") {
  auto rng = test::make_rng(25);
  for (int i = 0; i < 1000; ++i) {
    const MatH2 m = test::random_matrix(rng), n = test::random_matrix(rng);
    REQUIRE((embed(m * n) - embed(m) * embed(n)).norm() <= 1e-12 * (1.0 + embed(m).norm() * embed(n).norm()));
    REQUIRE(unembed(embed(m)) == m);
  }
}

TEST_CASE("embedding of j") {
  const ComplexEmbed4 e = embed(MatH2::diag(J, 1.0));
  CHECK(e(0, 1) == std::complex<double>(1.0, 0.0));
  CHECK(e(1, 0) == std::complex<double>(-1.0, 0.0));
  CHECK(e(0, 0) == std::complex<double>(0.0, 0.0));
}

TEST_CASE("reassemble inverts the first-column embedding") {
  auto rng = test::make_rng(26);
  const Quaternion p = test::random_quaternion(rng), q = test::random_quaternion(rng);
  const ComplexEmbed4 e = embed(MatH2{p, 0.0, q, 0.0});
  const QuaternionVector v = reassemble(e.col(0));
  CHECK(test::max_abs(v.first - p) <= 1e-15);
  CHECK(test::max_abs(v.second - q) <= 1e-15);
}

TEST_CASE("eigen representative examples") {
  auto r = eigen_representatives(MatH2::diag(2.0, 0.5));
  CHECK(r.lambda.real() == doctest::Approx(2.0));
  CHECK(r.mu.real() == doctest::Approx(0.5));
  CHECK(r.diagonalizable);

  r = eigen_representatives(MatH2{1.0, 1.0, 0.0, 1.0});
  CHECK(std::abs(r.lambda - 1.0) <= 1e-6);
  CHECK(std::abs(r.mu - 1.0) <= 1e-6);
  CHECK_FALSE(r.diagonalizable);

  // equal moduli: the smaller argument comes first
  const auto l = polar(1.0, std::numbers::pi / 6), m = polar(1.0, std::numbers::pi / 12);
  r = eigen_representatives(MatH2::diag(Quaternion::from_complex(l), Quaternion::from_complex(m)));
  CHECK(std::abs(r.lambda - m) <= 1e-12);
  CHECK(std::abs(r.mu - l) <= 1e-12);
  CHECK(r.diagonalizable);

  // representatives live in the upper half plane
  r = eigen_representatives(MatH2::diag(Quaternion{0, 0, 0, 1}, Quaternion{0, 0, -1, 0}));
  CHECK(std::abs(r.lambda - std::complex<double>(0, 1)) <= 1e-12);
  CHECK(std::abs(r.mu - std::complex<double>(0, 1)) <= 1e-12);
  CHECK(r.diagonalizable);
}

TEST_CASE("spectrum is closed under conjugation and conjugation invariant") {
  auto rng = test::make_rng(27);
  for (int i = 0; i < 500; ++i) {
    const MatH2 m = test::random_sl(rng);
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(embed(m));
    const auto ev = es.eigenvalues();
    for (int a = 0; a < 4; ++a) {
      double best = 1e300;
      for (int b = 0; b < 4; ++b) best = std::min(best, std::abs(ev(b) - std::conj(ev(a))));
      REQUIRE(best <= 1e-8 * (1.0 + std::abs(ev(a))));
    }
    const MatH2 p = test::random_sl(rng);
    const auto r1 = eigen_representatives(m);
    const auto r2 = eigen_representatives(p * m * inverse(p));
    REQUIRE(std::abs(r1.lambda - r2.lambda) <= 1e-6 * (1.0 + std::abs(r1.lambda)));
    REQUIRE(std::abs(r1.mu - r2.mu) <= 1e-6 * (1.0 + std::abs(r1.mu)));
    REQUIRE(std::abs(r1.lambda) * std::abs(r1.mu) == doctest::Approx(1.0).epsilon(1e-8));
  }
}

}  // TEST_SUITE
