#include <cmath>

#include <catch2/catch_amalgamated.hpp>

#include "posinorm/classes.hpp"
#include "posinorm/gallery.hpp"

using namespace posinorm;
using namespace posinorm::gallery;

TEST_CASE("projection pairs are Hermitian idempotents with known entries") {
  const auto [p, p1] = build_P_Pk(1);
  CHECK(p(0, 0) == Complex(1, 0));
  CHECK(p(1, 1) == Complex(0, 0));
  // k = 1 degenerates to the complementary coordinate projection
  CHECK((p1 - (Matrix::Identity(2, 2) - p)).norm() < 1e-15);

  const auto [p_, p2] = build_P_Pk(2);
  Matrix half(2, 2);
  half << 0.5, 0.5, 0.5, 0.5;
  CHECK((p2 - half).norm() < 1e-15);

  for (const int k : {1, 2, 3, 7, 40}) {
    const auto [a, b] = build_P_Pk(k);
    CHECK((b * b - b).norm() < 1e-12);
    CHECK((b - b.adjoint()).norm() < 1e-12);
    CHECK(numerical_rank(b) == 1);
  }
  CHECK_THROWS_AS(build_P_Pk(0), std::invalid_argument);
}

TEST_CASE("per-block domination constant via an inverse-matrix oracle") {
  // For invertible B = P + P_k, the best beta with beta P <= B^2 is
  // 1 / ||B^{-1} e_0||^2 because P is the rank-one projection onto e_0.
  // k = 5: B = [[9/5, 2/5], [2/5, 1/5]], B^{-1} = [[1, -2], [-2, 9]],
  // so ||B^{-1} e_0||^2 = 5 and beta_5 = 1/5.
  Matrix b(2, 2);
  b << 1.8, 0.4, 0.4, 0.2;
  const Matrix binv = b.inverse();
  const double oracle = 1.0 / binv.col(0).squaredNorm();
  CHECK(oracle == Catch::Approx(0.2).epsilon(1e-12));

  const BlowupReport r = blowup_report(5);
  REQUIRE(r.per_block_beta.size() == 5);
  CHECK(r.per_block_beta[4] == Catch::Approx(oracle).margin(1e-9));
}

TEST_CASE("blow-up profile at four blocks") {
  const BlowupReport r = blowup_report(4);
  REQUIRE(r.per_block_beta.size() == 4);
  const double expected[] = {1.0, 0.5, 1.0 / 3.0, 0.25};
  for (int k = 0; k < 4; ++k)
    CHECK(r.per_block_beta[k] == Catch::Approx(expected[k]).margin(1e-9));
  // pencil constant for (A, B^2) reaches sqrt(K)
  CHECK(r.alpha_full == Catch::Approx(2.0).margin(1e-8));
  // square-root pair stays uniformly dominated
  CHECK(r.alpha_half <= 1.0 + 1e-10);
  CHECK(r.witness_k == 4);
}

TEST_CASE("single-block assembly degenerates to the identity") {
  const auto [a, b] = build_AB(1);
  CHECK((b - Matrix::Identity(2, 2)).norm() < 1e-14);
  CHECK((a - b * a).norm() < 1e-14);  // A <= B as ranges, trivially
}

TEST_CASE("subdiagonal operator matches its blockwise-predicted square") {
  const Example1Config cfg{2, 5};
  const Matrix t = build_example1_T(cfg);
  const auto [a, b] = build_AB(cfg.block_count);
  const Matrix a_half = hermitian_sqrt(a);
  const Matrix b_half = hermitian_sqrt(b);
  const Index bs = 2 * cfg.block_count;

  // first two subdiagonal blocks carry A^{1/2}, the rest B^{1/2}
  CHECK((t.block(bs, 0, bs, bs) - a_half).norm() < 1e-12);
  CHECK((t.block(2 * bs, bs, bs, bs) - a_half).norm() < 1e-12);
  CHECK((t.block(3 * bs, 2 * bs, bs, bs) - b_half).norm() < 1e-12);
  CHECK((t.block(4 * bs, 3 * bs, bs, bs) - b_half).norm() < 1e-12);
  CHECK(t.block(0, 0, bs, bs).norm() == 0.0);

  const Matrix t2 = build_example1_T_squared(cfg);
  CHECK((t.block(2 * bs, bs, bs, bs) * t.block(bs, 0, bs, bs) -
         t2.block(2 * bs, 0, bs, bs))
            .norm() < 1e-12);
  CHECK((t2.block(2 * bs, 0, bs, bs) - a).norm() < 1e-12);
  CHECK((t2.block(3 * bs, bs, bs, bs) - b_half * a_half).norm() < 1e-12);
  CHECK((t2.block(4 * bs, 2 * bs, bs, bs) - b).norm() < 1e-12);

  CHECK((t * t - t2).norm() < 1e-12 * t2.norm());
}

TEST_CASE("gallery exemplars classify as advertised") {
  const auto items = exemplar_gallery();
  REQUIRE(items.size() == 3);

  const auto fragment = [](const ClassificationReport& rep,
                           const std::string& name) {
    if (name == "posinormal") return rep.posinormal.holds;
    if (name == "coposinormal") return rep.coposinormal.holds;
    if (name == "hyponormal") return rep.hyponormal.holds;
    if (name == "dominant") return rep.dominant.holds;
    if (name == "invertible") return rep.invertible.holds;
    FAIL("unknown fragment name: " << name);
    return false;
  };

  for (const auto& item : items) {
    const ClassificationReport rep = classify(item.matrix);
    for (const auto& [name, expected] : item.expected) {
      INFO(item.name << " / " << name);
      CHECK(fragment(rep, name) == expected);
    }
  }

  // the triangular exemplar's posinormal constant is the golden ratio
  const ClassificationReport rep = classify(items[0].matrix);
  REQUIRE(rep.posinormal.alpha.has_value());
  CHECK(*rep.posinormal.alpha == Catch::Approx(1.6180339887).margin(1e-8));
}
