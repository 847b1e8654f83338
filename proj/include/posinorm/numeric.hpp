#pragma once

// Dense complex linear algebra kernel shared by every other header:
// SVD-based rank/kernel/range decisions, minimal-norm least-squares
// factors, and tolerance-aware positivity tests.  All decisions are
// relative to the largest singular value of the matrix under test, so
// the same thresholds work at any overall scale.
//
// Builds require EIGEN_USE_LAPACKE (set by the CMake target): SVDs and
// eigensolves then run through LAPACK.  Eigen 3.4.0's native BDCSVD
// corrupts its deflation bookkeeping on matrices with many repeated
// singular values -- exactly the structured projections this library
// works with -- so the LAPACK routing is a correctness requirement,
// not a speed knob.

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace posinorm {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Shared thresholds for rank, positivity, and residual decisions.
/// Every field is *relative*: it multiplies the operator norm (or the
/// squared norm, where the tested object is quadratic in the input).
struct Tolerance {
  /// Singular values below rank_rel_tol * sigma_max count as zero.
  /// The default 0 selects machine epsilon * max(rows, cols).
  double rank_rel_tol = 0.0;
  /// Eigenvalues of a Hermitian matrix above -psd_tol * scale count
  /// as nonnegative.
  double psd_tol = 1e-10;
  /// Acceptable relative residual for factorizations and identities.
  double residual_tol = 1e-8;

  double rank_cutoff(Index rows, Index cols) const {
    if (rank_rel_tol > 0.0) return rank_rel_tol;
    return std::numeric_limits<double>::epsilon() *
           static_cast<double>(std::max<Index>(rows, cols));
  }

  static Tolerance uniform(double t) { return Tolerance{t, t, t}; }
};

inline void require_finite(const Matrix& m, const char* what = "matrix") {
  if (!m.allFinite())
    throw std::invalid_argument(std::string(what) +
                                ": non-finite entry rejected");
}

inline void require_square(const Matrix& m, const char* what = "matrix") {
  if (m.rows() != m.cols())
    throw std::invalid_argument(std::string(what) + ": expected square, got " +
                                std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()));
}

inline Matrix adjoint(const Matrix& m) { return m.adjoint(); }

/// Operator (spectral) norm: largest singular value, 0 for empty input.
inline double op_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
}

namespace detail {

/// Count of singular values above the relative cutoff.  A zero matrix
/// has rank 0 regardless of the cutoff.
inline Index rank_from_values(const RealVector& sv, double cutoff) {
  if (sv.size() == 0) return 0;
  const double ref = sv(0);
  if (!(ref > 0.0)) return 0;
  Index r = 0;
  while (r < sv.size() && sv(r) > cutoff * ref) ++r;
  return r;
}

}  // namespace detail

inline Index numerical_rank(const Matrix& m, const Tolerance& tol = {}) {
  require_finite(m);
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return detail::rank_from_values(svd.singularValues(),
                                  tol.rank_cutoff(m.rows(), m.cols()));
}

/// Orthonormal basis of a subspace of C^ambient_dim, stored columnwise.
struct SubspaceBasis {
  Index ambient_dim = 0;
  Matrix basis;  // ambient_dim x rank, orthonormal columns

  Index rank() const { return basis.cols(); }
};

/// Orthonormal basis of the null space N(m) (right singular vectors of
/// the trailing singular values).  Empty basis when m is injective.
inline SubspaceBasis kernel_basis(const Matrix& m, const Tolerance& tol = {}) {
  require_finite(m);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const Index r = detail::rank_from_values(svd.singularValues(),
                                           tol.rank_cutoff(m.rows(), m.cols()));
  SubspaceBasis out;
  out.ambient_dim = m.cols();
  out.basis = svd.matrixV().rightCols(m.cols() - r);
  return out;
}

/// Orthonormal basis of the column space R(m).
inline SubspaceBasis range_basis(const Matrix& m, const Tolerance& tol = {}) {
  require_finite(m);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
  const Index r = detail::rank_from_values(svd.singularValues(),
                                           tol.rank_cutoff(m.rows(), m.cols()));
  SubspaceBasis out;
  out.ambient_dim = m.rows();
  out.basis = svd.matrixU().leftCols(r);
  return out;
}

/// Minimal-norm least-squares solution X of B X = A, i.e. pinv(B) * A,
/// with singular values below the rank cutoff treated as exactly zero.
inline Matrix pinv_solve(const Matrix& b, const Matrix& a,
                         const Tolerance& tol = {}) {
  require_finite(b, "pinv_solve: B");
  require_finite(a, "pinv_solve: A");
  if (b.rows() != a.rows())
    throw std::invalid_argument("pinv_solve: row counts differ");
  Eigen::JacobiSVD<Matrix> svd(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& sv = svd.singularValues();
  const Index r = detail::rank_from_values(sv,
                                           tol.rank_cutoff(b.rows(), b.cols()));
  Matrix ua = svd.matrixU().leftCols(r).adjoint() * a;
  for (Index i = 0; i < r; ++i) ua.row(i) /= sv(i);
  return svd.matrixV().leftCols(r) * ua;
}

/// Moore–Penrose pseudoinverse (pinv_solve against the identity).
inline Matrix pinv(const Matrix& m, const Tolerance& tol = {}) {
  return pinv_solve(m, Matrix::Identity(m.rows(), m.rows()), tol);
}

struct PsdResult {
  bool psd = false;
  double lambda_min = 0.0;

  explicit operator bool() const { return psd; }
};

/// Positive-semidefiniteness test for a Hermitian matrix.  The matrix
/// must be Hermitian up to residual_tol (it is symmetrized before the
/// eigensolve; a larger deviation is a caller error).  lambda_min is
/// compared against -psd_tol * scale, where scale defaults to ||m|| and
/// can be overridden when m is a small difference of large products.
inline PsdResult is_psd(const Matrix& m, const Tolerance& tol = {},
                        double scale = 0.0) {
  require_finite(m);
  require_square(m);
  if (m.size() == 0) return {true, 0.0};
  const double nm = op_norm(m);
  if ((m - m.adjoint()).norm() > tol.residual_tol * std::max(nm, 1e-300))
    throw std::invalid_argument("is_psd: matrix is not Hermitian");
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues()(0);
  const double ref = scale > 0.0 ? scale : nm;
  return {lo >= -tol.psd_tol * ref, lo};
}

/// Hermitian square root via spectral decomposition.  Eigenvalues in
/// [-psd_tol * ||m||, 0) are clipped to zero; anything lower throws.
inline Matrix hermitian_sqrt(const Matrix& m, const Tolerance& tol = {}) {
  require_finite(m);
  require_square(m);
  if (m.size() == 0) return m;
  const double nm = op_norm(m);
  if ((m - m.adjoint()).norm() > tol.residual_tol * std::max(nm, 1e-300))
    throw std::invalid_argument("hermitian_sqrt: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()));
  RealVector lam = es.eigenvalues();
  for (Index i = 0; i < lam.size(); ++i) {
    if (lam(i) < -tol.psd_tol * nm)
      throw std::invalid_argument("hermitian_sqrt: matrix is not PSD");
    lam(i) = std::sqrt(std::max(lam(i), 0.0));
  }
  return es.eigenvectors() * lam.asDiagonal() *
         es.eigenvectors().adjoint();
}

/// Plain repeated-multiplication power; n = 0 gives the identity.
inline Matrix mat_power(const Matrix& m, int n) {
  require_square(m);
  if (n < 0) throw std::invalid_argument("mat_power: negative exponent");
  Matrix acc = Matrix::Identity(m.rows(), m.cols());
  for (int i = 0; i < n; ++i) acc = acc * m;
  return acc;
}

inline Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace posinorm
