#pragma once

// Concrete constructions: a block-diagonal pair of projection families
// whose domination constant blows up like √K with the number of
// blocks (the finite shadow of a range inclusion that fails in the
// limit), the block-subdiagonal operator built from their square
// roots, and a small gallery of classification exemplars.

#include <string>
#include <utility>
#include <vector>

#include "posinorm/chains.hpp"
#include "posinorm/douglas.hpp"
#include "posinorm/shifts.hpp"

namespace posinorm::gallery {

struct Example1Config {
  int block_count = 1;  // K: number of 2x2 blocks in A and B
  int depth = 5;        // block rows of the subdiagonal operator
};

/// The projection pair at parameter k: P = diag(1, 0) and
/// P_k = (1/k)·[[k-1, √(k-1)], [√(k-1), 1]].  Both are verified
/// Hermitian idempotent to 1e-12 before being returned.
inline std::pair<Matrix, Matrix> build_P_Pk(int k) {
  if (k < 1) throw std::invalid_argument("build_P_Pk: k must be >= 1");
  Matrix p = Matrix::Zero(2, 2);
  p(0, 0) = 1.0;
  const double kd = k;
  const double s = std::sqrt(kd - 1.0);
  Matrix pk(2, 2);
  pk << (kd - 1.0) / kd, s / kd, s / kd, 1.0 / kd;
  for (const Matrix* m : {&p, &pk}) {
    if ((*m * *m - *m).norm() > 1e-12 || (*m - m->adjoint()).norm() > 1e-12)
      throw std::logic_error("build_P_Pk: projection check failed");
  }
  return {p, pk};
}

/// A = ⊕_k P and B = ⊕_k (P + P_k) for k = 1..K, so that O ≤ A ≤ B
/// (asserted via the PSD test on B - A).
inline std::pair<Matrix, Matrix> build_AB(int K, const Tolerance& tol = {}) {
  if (K < 1) throw std::invalid_argument("build_AB: K must be >= 1");
  Matrix a = Matrix::Zero(2 * K, 2 * K);
  Matrix b = Matrix::Zero(2 * K, 2 * K);
  for (int k = 1; k <= K; ++k) {
    auto [p, pk] = build_P_Pk(k);
    a.block(2 * (k - 1), 2 * (k - 1), 2, 2) = p;
    b.block(2 * (k - 1), 2 * (k - 1), 2, 2) = p + pk;
  }
  if (!is_psd(b - a, tol).psd)
    throw std::logic_error("build_AB: B - A is not PSD");
  return {a, b};
}

struct BlowupReport {
  /// Largest beta with beta·P ≤ (P+P_k)², per block k = 1..K.
  std::vector<double> per_block_beta;
  /// Douglas constant for the square-root pair (A^{1/2}, B^{1/2});
  /// uniformly ≤ 1 because A ≤ B.
  double alpha_half = 0.0;
  /// Minimal alpha with A ≤ alpha²·B²; grows like √K.
  double alpha_full = 0.0;
  /// Block index attaining the extreme constant.
  int witness_k = 0;
};

/// The constant blow-up: each block admits beta = 1/k, so no single
/// constant serves all blocks at once and the pencil constant for
/// (A, B²) climbs as √K, while the square-root pair stays uniformly
/// dominated.
inline BlowupReport blowup_report(int K, const Tolerance& tol = {}) {
  if (K < 1) throw std::invalid_argument("blowup_report: K must be >= 1");
  BlowupReport r;
  r.per_block_beta.reserve(K);
  double worst = -1.0;
  for (int k = 1; k <= K; ++k) {
    auto [p, pk] = build_P_Pk(k);
    const Matrix sum_sq = (p + pk) * (p + pk);
    const double mu = psd_domination_alpha(p, sum_sq, tol);  // P ≤ mu² (P+P_k)²
    r.per_block_beta.push_back(1.0 / (mu * mu));
    if (mu > worst) {
      worst = mu;
      r.witness_k = k;
    }
  }
  auto [a, b] = build_AB(K, tol);
  r.alpha_full = psd_domination_alpha(a, b * b, tol);
  const Matrix a_half = hermitian_sqrt(a, tol);
  const Matrix b_half = hermitian_sqrt(b, tol);
  const DouglasResult half = range_included(a_half, b_half, tol);
  r.alpha_half = half.included ? *half.alpha_min
                               : std::numeric_limits<double>::infinity();
  return r;
}

/// Block-subdiagonal operator on depth block rows of size 2K: the
/// first two subdiagonal blocks are A^{1/2}, all later ones B^{1/2};
/// every other block is zero.
inline Matrix build_example1_T(const Example1Config& cfg,
                               const Tolerance& tol = {}) {
  if (cfg.block_count < 1)
    throw std::invalid_argument("build_example1_T: K must be >= 1");
  if (cfg.depth < 3)
    throw std::invalid_argument("build_example1_T: depth must be >= 3");
  auto [a, b] = build_AB(cfg.block_count, tol);
  const Matrix a_half = hermitian_sqrt(a, tol);
  const Matrix b_half = hermitian_sqrt(b, tol);
  const Index bs = 2 * cfg.block_count;
  const Index n = bs * cfg.depth;
  Matrix t = Matrix::Zero(n, n);
  for (int i = 0; i + 1 < cfg.depth; ++i)
    t.block(bs * (i + 1), bs * i, bs, bs) = i < 2 ? a_half : b_half;
  return t;
}

/// The predicted square of build_example1_T, assembled blockwise from
/// the same square-root factors: blocks A, B^{1/2}A^{1/2}, B, B, …
/// two steps below the diagonal.
inline Matrix build_example1_T_squared(const Example1Config& cfg,
                                       const Tolerance& tol = {}) {
  if (cfg.block_count < 1 || cfg.depth < 3)
    throw std::invalid_argument("build_example1_T_squared: bad config");
  auto [a, b] = build_AB(cfg.block_count, tol);
  const Matrix a_half = hermitian_sqrt(a, tol);
  const Matrix b_half = hermitian_sqrt(b, tol);
  const Index bs = 2 * cfg.block_count;
  const Index n = bs * cfg.depth;
  Matrix t2 = Matrix::Zero(n, n);
  for (int i = 0; i + 2 < cfg.depth; ++i) {
    Matrix blk;
    if (i == 0)
      blk = a_half * a_half;
    else if (i == 1)
      blk = b_half * a_half;
    else
      blk = b_half * b_half;
    t2.block(bs * (i + 2), bs * i, bs, bs) = blk;
  }
  return t2;
}

/// One classification exemplar: a matrix plus the class fragments it
/// is expected to satisfy (class name -> expected verdict).
struct GalleryItem {
  std::string name;
  Matrix matrix;
  std::vector<std::pair<std::string, bool>> expected;
};

/// Exemplars with hand-checkable classification fragments:
/// an invertible non-dominant 2x2, a shifted backward-shift truncation
/// (invertible, posinormal, still non-dominant), and a bilateral
/// reciprocal-weight truncation that loses hyponormality.
inline std::vector<GalleryItem> exemplar_gallery(
    Index backward_dim = 5, Index bilateral_half_width = 4) {
  std::vector<GalleryItem> items;

  Matrix u(2, 2);
  u << 1.0, 1.0, 0.0, 1.0;
  items.push_back({"unit-upper-triangular-2x2",
                   u,
                   {{"posinormal", true},
                    {"coposinormal", true},
                    {"dominant", false},
                    {"hyponormal", false},
                    {"invertible", true}}});

  Matrix back = Matrix::Zero(backward_dim, backward_dim);
  for (Index i = 0; i + 1 < backward_dim; ++i) back(i, i + 1) = 1.0;
  Matrix shifted = 2.0 * Matrix::Identity(backward_dim, backward_dim) + back;
  items.push_back({"two-plus-backward-shift",
                   shifted,
                   {{"invertible", true},
                    {"posinormal", true},
                    {"dominant", false}}});

  const Matrix trunc = shifts::build_shift_truncation(
      shifts::WeightSequence::bilateral_reciprocal(), bilateral_half_width);
  items.push_back(
      {"bilateral-reciprocal-truncation", trunc, {{"hyponormal", false}}});

  return items;
}

}  // namespace posinorm::gallery
