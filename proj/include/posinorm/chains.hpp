#pragma once

// Kernel/range chains of matrix powers: N(T) ⊆ N(T²) ⊆ … stabilizes at
// the ascent, R(T) ⊇ R(T²) ⊇ … at the descent, and by rank–nullity the
// two indices coincide for matrices.  Powers are renormalized by the
// operator norm at every step so rank decisions are not distorted by
// magnitude drift in non-normal iterates.

#include <vector>

#include "posinorm/numeric.hpp"

namespace posinorm {

struct ChainProfile {
  Index op_dim = 0;
  Index n_max = 0;
  std::vector<Index> kernel_dims;  // dim N(T^n), n = 0..n_max
  std::vector<Index> range_ranks;  // rank(T^n), n = 0..n_max
  Index ascent = 0;
  Index descent = 0;
};

namespace detail {

/// One step of the iterated-range staircase: orthonormal basis of
/// R(step · basis).  step has unit operator norm and basis is
/// orthonormal, so the product's singular values live in [0, 1] and a
/// genuine direction is separated from rounding noise by an absolute
/// cutoff; comparing against the product's own largest singular value
/// would inflate pure-noise products (a numerically zero T^n) back to
/// full rank.
inline SubspaceBasis advance_range(const Matrix& step, const Matrix& basis,
                                   double abs_cutoff) {
  const Matrix prod = step * basis;
  Eigen::JacobiSVD<Matrix> svd(prod, Eigen::ComputeThinU);
  const RealVector& sv = svd.singularValues();
  Index r = 0;
  while (r < sv.size() && sv(r) > abs_cutoff) ++r;
  SubspaceBasis out;
  out.ambient_dim = prod.rows();
  out.basis = svd.matrixU().leftCols(r);
  return out;
}

}  // namespace detail

/// Kernel/range chain of T up to n_max (default: the dimension, which
/// always suffices for stabilization).  Iteration continues internally
/// past n_max if the chain has not yet stabilized, so ascent/descent
/// are exact regardless of the requested window.
inline ChainProfile chain_profile(const Matrix& t, const Tolerance& tol = {},
                                  Index n_max = -1) {
  require_square(t, "chain_profile");
  require_finite(t, "chain_profile");
  const Index dim = t.rows();
  if (n_max < 1) n_max = dim;

  ChainProfile p;
  p.op_dim = dim;
  p.n_max = n_max;
  p.range_ranks.push_back(dim);  // T^0 = I

  const double nt = op_norm(t);
  const Matrix step = nt > 0.0 ? Matrix(t / nt) : t;
  // Iterated-range staircase: carry an orthonormal basis U_n of R(T^n)
  // and advance through R(T^{n+1}) = range of T·U_n.  Re-orthonormalizing
  // every step keeps each rank decision at unit scale, immune to the
  // norm decay explicit matrix powers would suffer.
  const double abs_cutoff = tol.rank_cutoff(dim, dim);
  SubspaceBasis reach{dim, Matrix::Identity(dim, dim)};
  Index stabilized_at = -1;
  for (Index n = 1; stabilized_at < 0 || n <= n_max; ++n) {
    Index r;
    if (stabilized_at >= 0) {
      r = p.range_ranks.back();  // stabilized forever by rank count
    } else if (reach.rank() == 0) {
      r = 0;  // nilpotent chain bottomed out
      if (p.range_ranks.back() == 0) stabilized_at = n - 1;
    } else {
      reach = detail::advance_range(step, reach.basis, abs_cutoff);
      r = reach.rank();
      if (r == p.range_ranks.back()) stabilized_at = n - 1;
    }
    p.range_ranks.push_back(r);
    if (n > 2 * dim + 2 && stabilized_at < 0)
      throw std::runtime_error("chain_profile: chain failed to stabilize");
  }
  p.range_ranks.resize(n_max + 1);
  p.kernel_dims.reserve(n_max + 1);
  for (Index r : p.range_ranks) p.kernel_dims.push_back(dim - r);
  p.ascent = stabilized_at;
  p.descent = stabilized_at;
  return p;
}

/// Equality of subspaces given by orthonormal bases: equal rank and
/// largest principal angle at most angle_tol (measured via the exact
/// identity sin θ_max = ||(I − U U*) V||₂ for orthonormal U, V).
inline bool subspace_equal(const SubspaceBasis& u, const SubspaceBasis& v,
                           double angle_tol = 1e-7) {
  if (u.ambient_dim != v.ambient_dim) return false;
  if (u.rank() != v.rank()) return false;
  if (u.rank() == 0) return true;
  const Matrix ruv = v.basis - u.basis * (u.basis.adjoint() * v.basis);
  const Matrix rvu = u.basis - v.basis * (v.basis.adjoint() * u.basis);
  return op_norm(ruv) <= angle_tol && op_norm(rvu) <= angle_tol;
}

/// Both sides of the power-ascent equivalence
///   asc(T^k) ≤ j  ⇔  asc(T) ≤ j·k,
/// evaluated independently from the two chain profiles, plus the same
/// pair for descent.  agree reports whether each biconditional holds.
struct PowerAscentCheck {
  bool ascent_lhs = false;   // asc(T^k) ≤ j
  bool ascent_rhs = false;   // asc(T) ≤ j*k
  bool ascent_agree = false;
  bool descent_lhs = false;
  bool descent_rhs = false;
  bool descent_agree = false;

  bool agree() const { return ascent_agree && descent_agree; }
};

inline PowerAscentCheck check_power_ascent(const Matrix& t, Index j, Index k,
                                           const Tolerance& tol = {}) {
  if (j < 1 || k < 1)
    throw std::invalid_argument("check_power_ascent: j, k must be >= 1");
  const ChainProfile base = chain_profile(t, tol);
  const ChainProfile powered = chain_profile(mat_power(t, static_cast<int>(k)), tol);
  PowerAscentCheck c;
  c.ascent_lhs = powered.ascent <= j;
  c.ascent_rhs = base.ascent <= j * k;
  c.ascent_agree = (c.ascent_lhs == c.ascent_rhs);
  c.descent_lhs = powered.descent <= j;
  c.descent_rhs = base.descent <= j * k;
  c.descent_agree = (c.descent_lhs == c.descent_rhs);
  return c;
}

/// What stabilization at k buys: once asc(T) ≤ k, ascent and descent
/// coincide and both chains are frozen from k on — R(T^n) = R(T^k) and
/// N(T^n) = N(T^k) as actual subspaces for every n ≥ k — and the same
/// holds for the adjoint.  precondition_met reports asc(T) ≤ k without
/// treating its failure as an error.
struct StabilizationReport {
  bool precondition_met = false;
  Index ascent = 0;
  Index descent = 0;
  bool ascent_equals_descent = false;
  bool ranges_stable = false;
  bool kernels_stable = false;
  Index adjoint_ascent = 0;
  Index adjoint_descent = 0;
  bool adjoint_bound = false;   // asc(T*) = dsc(T*) ≤ k
  bool adjoint_ranges_stable = false;
  bool adjoint_kernels_stable = false;

  bool all_hold() const {
    return precondition_met && ascent_equals_descent && ranges_stable &&
           kernels_stable && adjoint_bound && adjoint_ranges_stable &&
           adjoint_kernels_stable;
  }
};

namespace detail {

/// Subspace-level stabilization of the power chains from k to n_max:
/// compares range and kernel bases of T^n against those of T^k.
inline std::pair<bool, bool> chains_frozen(const Matrix& t, Index k,
                                           Index n_max, const Tolerance& tol) {
  const double nt = op_norm(t);
  const Matrix step = nt > 0.0 ? Matrix(t / nt) : t;
  const Matrix adj = step.adjoint();
  const double abs_cutoff = tol.rank_cutoff(t.rows(), t.cols());

  // Ranges walk the same staircase as chain_profile.  Kernels go through
  // the adjoint staircase: N(T^n) = R((T*)^n)^⊥, and two subspaces agree
  // exactly when their orthogonal complements do, so comparing the
  // adjoint ranges decides kernel stability without ever forming an
  // explicit (norm-collapsing) power of T.
  SubspaceBasis range_n{t.rows(), Matrix::Identity(t.rows(), t.rows())};
  SubspaceBasis corange_n = range_n;
  for (Index n = 1; n <= k; ++n) {
    range_n = advance_range(step, range_n.basis, abs_cutoff);
    corange_n = advance_range(adj, corange_n.basis, abs_cutoff);
  }
  const SubspaceBasis range_k = range_n;
  const SubspaceBasis corange_k = corange_n;

  bool ranges = true, kernels = true;
  for (Index n = k + 1; n <= n_max; ++n) {
    range_n = advance_range(step, range_n.basis, abs_cutoff);
    corange_n = advance_range(adj, corange_n.basis, abs_cutoff);
    ranges = ranges && subspace_equal(range_n, range_k);
    kernels = kernels && subspace_equal(corange_n, corange_k);
  }
  return {ranges, kernels};
}

}  // namespace detail

inline StabilizationReport check_stabilization(const Matrix& t, Index k,
                                               const Tolerance& tol = {}) {
  require_square(t, "check_stabilization");
  if (k < 1) k = 1;  // k = 0 is the same boundary statement as k = 1
  const Index n_max = std::max<Index>(t.rows(), k + 1);

  StabilizationReport r;
  const ChainProfile base = chain_profile(t, tol, n_max);
  r.ascent = base.ascent;
  r.descent = base.descent;
  r.precondition_met = base.ascent <= k;
  r.ascent_equals_descent = (base.ascent == base.descent);
  if (!r.precondition_met) return r;

  auto [rs, ks] = detail::chains_frozen(t, k, n_max, tol);
  r.ranges_stable = rs;
  r.kernels_stable = ks;

  const Matrix adj = t.adjoint();
  const ChainProfile adj_profile = chain_profile(adj, tol, n_max);
  r.adjoint_ascent = adj_profile.ascent;
  r.adjoint_descent = adj_profile.descent;
  r.adjoint_bound = (adj_profile.ascent == adj_profile.descent) &&
                    adj_profile.ascent <= k;
  auto [ars, aks] = detail::chains_frozen(adj, k, n_max, tol);
  r.adjoint_ranges_stable = ars;
  r.adjoint_kernels_stable = aks;
  return r;
}

}  // namespace posinorm
