#include <catch2/catch_amalgamated.hpp>

#include "posinorm/douglas.hpp"

using namespace posinorm;

namespace {

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("range inclusion: diagonal cases with hand-computed constants") {
  // R(A) = span{e0} inside R(B) = C^2, minimal factor diag(1/2, 0)
  const DouglasResult r = range_included(diag2(1, 0), diag2(2, 3));
  REQUIRE(r.included);
  REQUIRE(r.alpha_min.has_value());
  CHECK(*r.alpha_min == Catch::Approx(0.5).epsilon(1e-12));
  REQUIRE(r.factor.has_value());
  CHECK((diag2(2, 3) * *r.factor - diag2(1, 0)).norm() < 1e-13);

  // disjoint coordinate ranges: not included, witness along e1
  const DouglasResult miss = range_included(diag2(0, 1), diag2(1, 0));
  REQUIRE_FALSE(miss.included);
  CHECK_FALSE(miss.alpha_min.has_value());
  REQUIRE(miss.witness.has_value());
  CHECK(std::abs((*miss.witness)(1)) == Catch::Approx(1.0));
  CHECK(std::abs((*miss.witness)(0)) < 1e-12);
}

TEST_CASE("range inclusion: identity against a nilpotent") {
  Matrix j2 = Matrix::Zero(2, 2);
  j2(0, 1) = 1.0;
  const DouglasResult r = range_included(Matrix::Identity(2, 2), j2);
  REQUIRE_FALSE(r.included);
  // R(J2) = span{e0}; the certificate must stick out along e1
  REQUIRE(r.witness.has_value());
  CHECK(std::abs((*r.witness)(1)) == Catch::Approx(1.0).margin(1e-10));
  // near_miss quantifies how decisively the rank test rejected
  CHECK(r.near_miss > 1.0);
}

TEST_CASE("constructed factorizations recover a factor no larger than the seed") {
  // fixed, reproducible instance
  Matrix b(3, 3);
  b << 1, 2, 0, Complex(0, 1), 0, 1, 0, 0, 0;  // rank 2
  Matrix c(3, 3);
  c << 0.5, 0, Complex(0, -0.25), 0, 0.1, 0, 0.3, 0, 0.7;
  const Matrix a = b * c;

  const DouglasResult r = range_included(a, b);
  REQUIRE(r.included);
  REQUIRE(r.alpha_min.has_value());
  CHECK(*r.alpha_min <= op_norm(c) + 1e-10);
  CHECK(r.residual <= 1e-10 * op_norm(a));
  // the returned factor reproduces A through B
  CHECK((b * *r.factor - a).norm() < 1e-10);
}

TEST_CASE("psd pencil extremum on diagonal pencils") {
  const PencilExtremum e = psd_domination_extremum(diag2(1, 4), diag2(1, 1));
  CHECK(e.alpha == Catch::Approx(2.0).epsilon(1e-12));
  REQUIRE(e.maximizer.size() == 2);
  CHECK(std::abs(e.maximizer(1)) == Catch::Approx(1.0).margin(1e-10));

  // support of m escapes support of n: no finite constant
  CHECK(std::isinf(psd_domination_alpha(diag2(1, 0), diag2(0, 1))));

  // zero numerator: constant zero
  CHECK(psd_domination_alpha(Matrix::Zero(2, 2), diag2(1, 1)) == 0.0);
}

TEST_CASE("psd pencil extremum agrees with an explicit inverse-sqrt oracle") {
  // Hermitian PSD pair with n invertible: alpha^2 must equal
  // lambda_max(n^{-1/2} m n^{-1/2}), computed here the pedestrian way.
  Matrix m(2, 2);
  m << 2, Complex(0.5, 0.25), Complex(0.5, -0.25), 1;
  Matrix n(2, 2);
  n << 3, Complex(-1, 0.5), Complex(-1, -0.5), 2;
  REQUIRE(is_psd(m).psd);
  REQUIRE(is_psd(n).psd);

  Eigen::SelfAdjointEigenSolver<Matrix> es(n);
  const Matrix n_inv_half =
      es.eigenvectors() *
      es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
      es.eigenvectors().adjoint();
  Eigen::SelfAdjointEigenSolver<Matrix> ref(n_inv_half * m * n_inv_half);
  const double oracle = std::sqrt(ref.eigenvalues().maxCoeff());

  CHECK(psd_domination_alpha(m, n) == Catch::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("psd pencil preconditions are enforced") {
  Matrix indefinite(2, 2);
  indefinite << 1, 2, 2, 1;
  CHECK_THROWS_AS(psd_domination_extremum(indefinite, Matrix::Identity(2, 2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(psd_domination_extremum(Matrix::Identity(2, 2), indefinite),
                  std::invalid_argument);
}

TEST_CASE("pencil maximizer attains the constant") {
  Matrix m(3, 3);
  m << 5, 1, 0, 1, 2, Complex(0, 1), 0, Complex(0, -1), 1;
  const Matrix mm = m * m.adjoint();  // PSD by construction
  Matrix g = Matrix::Zero(3, 3);
  g(0, 0) = 4;
  g(1, 1) = 1;
  g(2, 2) = 9;

  const PencilExtremum e = psd_domination_extremum(mm, g);
  REQUIRE(std::isfinite(e.alpha));
  const double num = std::real((e.maximizer.adjoint() * mm * e.maximizer)(0));
  const double den = std::real((e.maximizer.adjoint() * g * e.maximizer)(0));
  CHECK(std::sqrt(num / den) == Catch::Approx(e.alpha).epsilon(1e-10));
}

TEST_CASE("posinormal witness factorization TT* = T*QT") {
  // invertible upper-triangular operator
  Matrix t(2, 2);
  t << 1, 1, 0, 1;
  const auto q = posinormal_q(t);
  REQUIRE(q.has_value());
  CHECK(is_psd(*q, Tolerance{}, op_norm(*q)).psd);
  CHECK((t * t.adjoint() - t.adjoint() * *q * t).norm() < 1e-10);

  // normal diagonal: Q is the identity on the support
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1;
  d(1, 1) = Complex(0, 2);
  const auto qd = posinormal_q(d);
  REQUIRE(qd.has_value());
  CHECK((d * d.adjoint() - d.adjoint() * *qd * d).norm() < 1e-12);

  // range-asymmetric nilpotent has no such Q
  Matrix j2 = Matrix::Zero(2, 2);
  j2(0, 1) = 1.0;
  CHECK_FALSE(posinormal_q(j2).has_value());
}

TEST_CASE("inclusion equivalence across all three routes on a fixed grid") {
  // small deterministic sweep over diagonal ranks: the rank route, the
  // pencil route and the least-squares residual route must agree.
  for (int ra = 0; ra <= 3; ++ra) {
    for (int rb = 0; rb <= 3; ++rb) {
      Matrix a = Matrix::Zero(3, 3);
      Matrix b = Matrix::Zero(3, 3);
      for (int i = 0; i < ra && i < 3; ++i) a(i, i) = 1.0 + i;
      for (int i = 0; i < rb && i < 3; ++i) b(i, i) = 2.0 - 0.5 * i;
      const bool via_rank = range_included(a, b).included;
      const bool via_pencil = std::isfinite(
          psd_domination_alpha(a * a.adjoint(), b * b.adjoint()));
      const Matrix c = pinv_solve(b, a);
      const bool via_lsq = (b * c - a).norm() <= 1e-8 * std::max(1.0, op_norm(a));
      CHECK(via_rank == via_pencil);
      CHECK(via_pencil == via_lsq);
      // expected truth: diagonal supports nest iff ra <= rb
      CHECK(via_rank == (ra <= rb));
    }
  }
}
