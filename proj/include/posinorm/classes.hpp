#pragma once

// Operator-class detection for a single square complex matrix: the
// posinormal family (range inclusions between T and T*), the kernel
// variants, hyponormality (PSD self-commutator), dominance (range
// inclusion at every eigenvalue), and plain invertibility.  Every
// verdict is a statement about the finite matrix itself; serialized
// reports label them as finite-dimensional verdicts.

#include <optional>
#include <vector>

#include "posinorm/douglas.hpp"

namespace posinorm {

struct ClassVerdict {
  bool holds = false;
  /// Minimal constant where one is meaningful (spectral norm of the
  /// minimal Douglas factor); absent otherwise.
  std::optional<double> alpha;
  /// Unit-vector certificate on failure, where one exists.
  std::optional<Vector> witness;

  explicit operator bool() const { return holds; }
};

/// One row of the dominance table: the minimal constant attached to a
/// single (clustered) eigenvalue, +infinity when the shifted matrix
/// fails the range test there.
struct EigenvalueAlpha {
  Complex lambda{0.0, 0.0};
  double alpha = 0.0;
};

struct ClassificationReport {
  Index dim = 0;
  ClassVerdict posinormal;
  ClassVerdict coposinormal;
  ClassVerdict quasiposinormal;
  ClassVerdict coquasiposinormal;
  ClassVerdict hyponormal;
  ClassVerdict cohyponormal;
  ClassVerdict normal;
  ClassVerdict dominant;
  ClassVerdict codominant;
  ClassVerdict invertible;
  std::vector<EigenvalueAlpha> dominant_table;
  std::vector<EigenvalueAlpha> codominant_table;
};

namespace detail {

/// Unit vector x in span(kernel columns) maximizing ||m x||, plus the
/// attained norm.  Used for kernel-gap certificates.
inline std::pair<Vector, double> kernel_gap_extremum(const Matrix& m,
                                                     const SubspaceBasis& ker) {
  if (ker.rank() == 0) return {Vector(), 0.0};
  const Matrix prod = m * ker.basis;
  Eigen::JacobiSVD<Matrix> svd(prod, Eigen::ComputeThinV);
  if (svd.singularValues().size() == 0) return {Vector(), 0.0};
  Vector x = ker.basis * svd.matrixV().col(0);
  return {x / x.norm(), svd.singularValues()(0)};
}

}  // namespace detail

/// R(T) ⊆ R(T*), with the minimal constant in T T* ≤ α² T*T.  On
/// failure the witness is a unit kernel vector of T that T* does not
/// annihilate (the kernel-gap certificate).
inline ClassVerdict is_posinormal(const Matrix& t, const Tolerance& tol = {}) {
  require_square(t, "is_posinormal");
  const DouglasResult d = range_included(t, t.adjoint(), tol);
  ClassVerdict v;
  v.holds = d.included;
  if (d.included) {
    v.alpha = d.alpha_min;
  } else {
    auto [x, gap] = detail::kernel_gap_extremum(t.adjoint(), kernel_basis(t, tol));
    if (gap > 0.0) v.witness = std::move(x);
  }
  return v;
}

/// R(T*) ⊆ R(T): posinormality of the adjoint.
inline ClassVerdict is_coposinormal(const Matrix& t, const Tolerance& tol = {}) {
  require_square(t, "is_coposinormal");
  return is_posinormal(t.adjoint(), tol);
}

/// N(T) ⊆ N(T*): every kernel direction of T is annihilated by T*
/// up to residual_tol * ||T||.
inline ClassVerdict is_quasiposinormal(const Matrix& t,
                                       const Tolerance& tol = {}) {
  require_square(t, "is_quasiposinormal");
  const SubspaceBasis ker = kernel_basis(t, tol);
  ClassVerdict v;
  if (ker.rank() == 0) {
    v.holds = true;  // injective, nothing to check
    return v;
  }
  auto [x, gap] = detail::kernel_gap_extremum(t.adjoint(), ker);
  v.holds = gap <= tol.residual_tol * std::max(op_norm(t), 1e-300);
  if (!v.holds) v.witness = std::move(x);
  return v;
}

inline ClassVerdict is_coquasiposinormal(const Matrix& t,
                                         const Tolerance& tol = {}) {
  require_square(t, "is_coquasiposinormal");
  return is_quasiposinormal(t.adjoint(), tol);
}

namespace detail {

/// Self-commutator analysis shared by the hyponormal / cohyponormal /
/// normal verdicts: one Hermitian eigensolve of T*T - TT*, judged
/// against psd_tol * ||T||^2 (the commutator is a difference of
/// products of T, so ||T||^2 is the honest reference scale).
struct CommutatorVerdicts {
  ClassVerdict hypo, cohypo, normal;
};

inline CommutatorVerdicts commutator_verdicts(const Matrix& t,
                                              const Tolerance& tol) {
  const Matrix d = t.adjoint() * t - t * t.adjoint();
  const double scale = std::pow(op_norm(t), 2);
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (d + d.adjoint()));
  const RealVector& lam = es.eigenvalues();
  const Index n = lam.size();
  const double slack = tol.psd_tol * std::max(scale, 1e-300);

  CommutatorVerdicts out;
  out.hypo.holds = lam(0) >= -slack;
  if (!out.hypo.holds) out.hypo.witness = es.eigenvectors().col(0);
  out.cohypo.holds = lam(n - 1) <= slack;
  if (!out.cohypo.holds) out.cohypo.witness = es.eigenvectors().col(n - 1);
  out.normal.holds = out.hypo.holds && out.cohypo.holds;
  if (!out.normal.holds)
    out.normal.witness = out.hypo.holds ? out.cohypo.witness : out.hypo.witness;
  return out;
}

/// Cluster the computed spectrum so near-multiple eigenvalues are
/// tested once: sorted lexicographically, grouped under an absolute
/// gap of 1e-8 * ||T||, represented by cluster centroids.
inline std::vector<Complex> clustered_spectrum(const Matrix& t) {
  Eigen::ComplexEigenSolver<Matrix> es(t, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("clustered_spectrum: eigensolver failed");
  std::vector<Complex> ev(es.eigenvalues().data(),
                          es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(ev.begin(), ev.end(), [](const Complex& a, const Complex& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  const double gap = 1e-8 * std::max(op_norm(t), 1e-300);
  std::vector<Complex> reps;
  std::size_t i = 0;
  while (i < ev.size()) {
    std::size_t j = i + 1;
    Complex sum = ev[i];
    while (j < ev.size() && std::abs(ev[j] - ev[j - 1]) <= gap) {
      sum += ev[j];
      ++j;
    }
    reps.push_back(sum / static_cast<double>(j - i));
    i = j;
  }
  return reps;
}

}  // namespace detail

/// T T* ≤ T*T as quadratic forms.  On failure the witness is the
/// eigenvector of the most negative commutator eigenvalue.
inline ClassVerdict is_hyponormal(const Matrix& t, const Tolerance& tol = {}) {
  require_square(t, "is_hyponormal");
  return detail::commutator_verdicts(t, tol).hypo;
}

inline ClassVerdict is_cohyponormal(const Matrix& t, const Tolerance& tol = {}) {
  require_square(t, "is_cohyponormal");
  return detail::commutator_verdicts(t, tol).cohypo;
}

inline ClassVerdict is_normal(const Matrix& t, const Tolerance& tol = {}) {
  require_square(t, "is_normal");
  return detail::commutator_verdicts(t, tol).normal;
}

/// λI - T posinormal for every λ.  Off the spectrum the shifted matrix
/// is invertible (hence posinormal for free), so only the computed
/// eigenvalues are tested; the table records the minimal constant per
/// clustered eigenvalue, +infinity marking a failure.
inline ClassVerdict is_dominant(const Matrix& t, const Tolerance& tol,
                                std::vector<EigenvalueAlpha>* table) {
  require_square(t, "is_dominant");
  const Matrix id = Matrix::Identity(t.rows(), t.cols());
  ClassVerdict v;
  v.holds = true;
  if (table) table->clear();
  for (const Complex& lam : detail::clustered_spectrum(t)) {
    const Matrix shifted = lam * id - t;
    const DouglasResult d = range_included(shifted, shifted.adjoint(), tol);
    const double alpha =
        d.included ? *d.alpha_min : std::numeric_limits<double>::infinity();
    if (table) table->push_back({lam, alpha});
    if (!d.included) {
      if (v.holds && d.witness) v.witness = d.witness;
      v.holds = false;
    }
  }
  return v;
}

inline ClassVerdict is_dominant(const Matrix& t, const Tolerance& tol = {}) {
  return is_dominant(t, tol, nullptr);
}

inline ClassVerdict is_invertible(const Matrix& t, const Tolerance& tol = {}) {
  require_square(t, "is_invertible");
  ClassVerdict v;
  v.holds = numerical_rank(t, tol) == t.rows();
  if (!v.holds) {
    const SubspaceBasis ker = kernel_basis(t, tol);
    if (ker.rank() > 0) v.witness = ker.basis.col(0);
  }
  return v;
}

inline ClassificationReport classify(const Matrix& t, const Tolerance& tol = {}) {
  require_square(t, "classify");
  require_finite(t, "classify");
  ClassificationReport r;
  r.dim = t.rows();
  r.posinormal = is_posinormal(t, tol);
  r.coposinormal = is_coposinormal(t, tol);
  r.quasiposinormal = is_quasiposinormal(t, tol);
  r.coquasiposinormal = is_coquasiposinormal(t, tol);
  const auto comm = detail::commutator_verdicts(t, tol);
  r.hyponormal = comm.hypo;
  r.cohyponormal = comm.cohypo;
  r.normal = comm.normal;
  r.dominant = is_dominant(t, tol, &r.dominant_table);
  r.codominant = is_dominant(t.adjoint(), tol, &r.codominant_table);
  r.invertible = is_invertible(t, tol);
  return r;
}

}  // namespace posinorm
