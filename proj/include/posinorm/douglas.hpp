#pragma once

// Range-inclusion / majorization / factorization machinery (the three
// faces of the classical Douglas factorization lemma, specialized to
// matrices).  R(A) ⊆ R(B) is decided by rank augmentation; the minimal
// factor C with A = B·C comes from the pseudoinverse; the optimal
// constant in A A* ≤ α² B B* comes from a reduced Hermitian-definite
// pencil.  In exact arithmetic the three answers coincide; the test
// suite checks they also agree numerically on generated instances.

#include <optional>

#include "posinorm/numeric.hpp"

namespace posinorm {

struct DouglasResult {
  bool included = false;
  /// Spectral norm of the minimal factor; absent when not included.
  std::optional<double> alpha_min;
  /// Minimal-norm C with A = B C; absent when not included.
  std::optional<Matrix> factor;
  /// ||B C - A||_F for the returned factor (0 when factor is absent).
  double residual = 0.0;
  /// Unit vector pointing out of R(B) along R(A); absent when included.
  std::optional<Vector> witness;
  /// First excluded singular value of [B A] divided by the rank cutoff.
  /// Values near 1 flag a decision made close to the threshold.
  double near_miss = 0.0;
};

/// Decide R(A) ⊆ R(B).  Ties at the rank threshold break toward "not
/// included" (the singular value must clear the cutoff to be counted).
inline DouglasResult range_included(const Matrix& a, const Matrix& b,
                                    const Tolerance& tol = {}) {
  require_finite(a, "range_included: A");
  require_finite(b, "range_included: B");
  if (a.rows() != b.rows())
    throw std::invalid_argument("range_included: row counts differ");

  Matrix aug(b.rows(), b.cols() + a.cols());
  aug << b, a;
  Eigen::JacobiSVD<Matrix> aug_svd(aug);
  const RealVector& asv = aug_svd.singularValues();
  const double cutoff = tol.rank_cutoff(aug.rows(), aug.cols());
  const Index rank_b = numerical_rank(b, tol);
  const Index rank_aug = detail::rank_from_values(asv, cutoff);

  DouglasResult out;
  out.included = (rank_aug == rank_b);
  if (asv.size() > rank_b && asv(0) > 0.0)
    out.near_miss = asv(rank_b) / (cutoff * asv(0));

  if (out.included) {
    Matrix c = pinv_solve(b, a, tol);
    out.residual = (b * c - a).norm();
    out.alpha_min = op_norm(c);
    out.factor = std::move(c);
    return out;
  }

  // Certificate: take left singular directions of A and project out
  // R(B); the first direction with a visible component works.
  const SubspaceBasis rb = range_basis(b, tol);
  Eigen::JacobiSVD<Matrix> a_svd(a, Eigen::ComputeThinU);
  const Index ra = detail::rank_from_values(
      a_svd.singularValues(), tol.rank_cutoff(a.rows(), a.cols()));
  for (Index j = 0; j < ra; ++j) {
    Vector u = a_svd.matrixU().col(j);
    Vector w = u - rb.basis * (rb.basis.adjoint() * u);
    if (w.norm() > 1e-8) {
      out.witness = w / w.norm();
      break;
    }
  }
  return out;
}

/// Smallest alpha ≥ 0 with M ≤ alpha² N in the PSD order, +infinity
/// when no such constant exists (i.e. R(M) ⊄ R(N)).  Both inputs must
/// be Hermitian PSD of the same size.
struct PencilExtremum {
  double alpha = 0.0;
  /// Vector attaining (or approaching) the extremal ratio; zero length
  /// when alpha is 0 or infinite.
  Vector maximizer;
};

inline PencilExtremum psd_domination_extremum(const Matrix& m, const Matrix& n,
                                              const Tolerance& tol = {}) {
  require_square(m, "psd_domination: M");
  require_square(n, "psd_domination: N");
  if (m.rows() != n.rows())
    throw std::invalid_argument("psd_domination: size mismatch");
  if (!is_psd(m, tol).psd)
    throw std::invalid_argument("psd_domination: M is not PSD");
  if (!is_psd(n, tol).psd)
    throw std::invalid_argument("psd_domination: N is not PSD");

  PencilExtremum out;
  if (op_norm(m) == 0.0) return out;  // 0 ≤ 0, any alpha; minimal is 0

  // Finite constant iff R(M) ⊆ R(N); for PSD arguments this is exactly
  // a rank-augmentation question.
  Matrix aug(n.rows(), n.cols() + m.cols());
  aug << n, m;
  if (numerical_rank(aug, tol) != numerical_rank(n, tol)) {
    out.alpha = std::numeric_limits<double>::infinity();
    return out;
  }

  // Restrict the pencil to R(N), where N is positive definite; the
  // cross terms vanish because R(M) ⊆ R(N).
  const SubspaceBasis u = range_basis(n, tol);
  if (u.rank() == 0) return out;  // both zero
  const Matrix mr = u.basis.adjoint() * m * u.basis;
  const Matrix nr = u.basis.adjoint() * n * u.basis;
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> ges(
      0.5 * (mr + mr.adjoint()), 0.5 * (nr + nr.adjoint()));
  const Index top = ges.eigenvalues().size() - 1;
  out.alpha = std::sqrt(std::max(ges.eigenvalues()(top), 0.0));
  Vector x = u.basis * ges.eigenvectors().col(top);
  out.maximizer = x / x.norm();
  return out;
}

inline double psd_domination_alpha(const Matrix& m, const Matrix& n,
                                   const Tolerance& tol = {}) {
  return psd_domination_extremum(m, n, tol).alpha;
}

/// PSD interpolant Q with T T* = T* Q T, built as Q = L L* from the
/// minimal factor L of T through T*.  Absent when R(T) ⊄ R(T*), or when
/// the verification residual ||T T* - T* Q T|| exceeds the tolerance.
inline std::optional<Matrix> posinormal_q(const Matrix& t,
                                          const Tolerance& tol = {}) {
  require_square(t, "posinormal_q");
  const DouglasResult d = range_included(t, t.adjoint(), tol);
  if (!d.included) return std::nullopt;
  const Matrix& l = *d.factor;
  Matrix q = l * l.adjoint();
  const double scale = op_norm(t);
  const double resid = (t * t.adjoint() - t.adjoint() * q * t).norm();
  if (resid > tol.residual_tol * std::max(scale * scale, 1e-300))
    return std::nullopt;
  if (!is_psd(q, tol).psd) return std::nullopt;
  return q;
}

}  // namespace posinorm
