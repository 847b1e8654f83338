#pragma once

// Randomized property suites with fully pinned determinism: the bit
// generator is mt19937_64, but uniform/normal conversion is hand-rolled
// (standard-library distributions are implementation-defined), so a
// (suite, trials, dim_max, master_seed) tuple reproduces results
// bit-for-bit on any platform.  Each trial derives everything from its
// own seed; failure records therefore replay from the seed alone.

#include <chrono>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "posinorm/chains.hpp"
#include "posinorm/classes.hpp"

namespace posinorm::harness {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Fixed seed-splitting function: trial i of a run with master seed m
/// always sees the same stream, independent of execution order.
inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index + 0x9E3779B97F4A7C15ull));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  long uniform_int(long a, long b) {  // inclusive bounds
    return a + static_cast<long>(gen_() %
                                 static_cast<std::uint64_t>(b - a + 1));
  }
  /// Standard normal via Box-Muller on pinned uniforms.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 =
        (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    const double u2 = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }
  Complex cnormal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }
  Complex phase() {
    const double theta = 2.0 * M_PI * uniform();
    return {std::cos(theta), std::sin(theta)};
  }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Suites run with an explicit singular-value cutoff instead of the
/// eps-level default: constructed instances (products, fifth powers)
/// carry rounding noise around 1e-13 relative, and the generators draw
/// nonzero singular values in [0.3, 3] so every rank decision clears
/// 1e-10 with orders of magnitude to spare.
inline Tolerance harness_tolerance() {
  Tolerance t;
  t.rank_rel_tol = 1e-10;
  return t;
}

// ---------------------------------------------------------------------------
// generators
// ---------------------------------------------------------------------------

inline Matrix random_dense(Index n, Rng& rng) {
  Matrix m(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) m(i, j) = rng.cnormal();
  return m;
}

/// Haar-distributed unitary: QR of a complex Gaussian with the phase
/// convention fixed by positive R diagonal.
inline Matrix random_unitary(Index n, Rng& rng) {
  const Matrix g = random_dense(n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (Index i = 0; i < n; ++i) {
    const Complex d = r(i, i);
    if (std::abs(d) > 0.0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

/// Rescale to a log-uniform target norm in [0.1, 10] (classes and
/// constants are scale-invariant; this keeps tolerance semantics
/// uniform across trials).
inline void rescale_norm(Matrix& m, Rng& rng) {
  const double target = std::pow(10.0, rng.uniform(-1.0, 1.0));
  const double nm = op_norm(m);
  if (nm > 0.0) m *= target / nm;
}

/// Matrix of prescribed rank with nonzero singular values in [0.3, 3]
/// and independent singular bases (generically not range-Hermitian).
inline Matrix random_with_rank(Index n, Index rank, Rng& rng) {
  const Matrix u = random_unitary(n, rng);
  const Matrix v = random_unitary(n, rng);
  RealVector sv = RealVector::Zero(n);
  for (Index i = 0; i < rank; ++i) sv(i) = rng.uniform(0.3, 3.0);
  return u * sv.asDiagonal() * v.adjoint();
}

/// Range-Hermitian (EP) matrix: U·blockdiag(R, 0)·U* with R a random
/// invertible r×r block, so N(T) = N(T*) exactly by construction.
inline Matrix random_ep(Index n, Index rank, Rng& rng) {
  const Matrix u = random_unitary(n, rng);
  Matrix core = Matrix::Zero(n, n);
  if (rank > 0) {
    const Matrix ur = random_unitary(rank, rng);
    const Matrix vr = random_unitary(rank, rng);
    RealVector sv(rank);
    for (Index i = 0; i < rank; ++i) sv(i) = rng.uniform(0.3, 3.0);
    core.topLeftCorner(rank, rank) = ur * sv.asDiagonal() * vr.adjoint();
  }
  return u * core * u.adjoint();
}

inline Matrix random_normal_matrix(Index n, Rng& rng) {
  const Matrix u = random_unitary(n, rng);
  Vector lam(n);
  for (Index i = 0; i < n; ++i) lam(i) = rng.uniform(0.3, 3.0) * rng.phase();
  return u * lam.asDiagonal() * u.adjoint();
}

inline std::vector<Index> random_permutation(Index n, Rng& rng) {
  std::vector<Index> perm(n);
  std::iota(perm.begin(), perm.end(), Index{0});
  for (Index i = n - 1; i > 0; --i)
    std::swap(perm[i], perm[rng.uniform_int(0, i)]);
  return perm;
}

/// Weighted permutation T e_i = d_i e_{perm(i)}: both Gram matrices
/// are diagonal (hence commuting) in the permuted basis.  Zeros, when
/// requested, wipe whole permutation cycles so the support stays
/// invariant and T remains range-symmetric.  Conjugated by a Haar
/// unitary to avoid handing the suites sparse special cases.
inline Matrix random_commuting_gram(Index n, bool singular, Rng& rng) {
  std::vector<Index> perm = random_permutation(n, rng);
  RealVector d(n);
  for (Index i = 0; i < n; ++i) d(i) = rng.uniform(0.3, 3.0);
  if (singular) {
    // Collect cycles and zero a proper nonempty subset of them.  A
    // single n-cycle admits no proper subset, so redraw until the
    // permutation splits; n = 1 degenerates to the zero matrix.
    std::vector<std::vector<Index>> cycles;
    const auto collect = [&] {
      cycles.clear();
      std::vector<bool> seen(n, false);
      for (Index i = 0; i < n; ++i) {
        if (seen[i]) continue;
        cycles.emplace_back();
        for (Index j = i; !seen[j]; j = perm[j]) {
          seen[j] = true;
          cycles.back().push_back(j);
        }
      }
    };
    collect();
    while (n > 1 && cycles.size() < 2) {
      perm = random_permutation(n, rng);
      collect();
    }
    if (cycles.size() > 1) {
      const Index keep = rng.uniform_int(1, cycles.size() - 1);
      for (std::size_t c = 0; c < cycles.size(); ++c) {
        const bool zero = static_cast<Index>(c) >= keep;
        if (zero)
          for (Index j : cycles[c]) d(j) = 0.0;
      }
    } else {
      d.setZero();
    }
  }
  Matrix t = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) t(perm[i], i) = d(i) * rng.phase();
  const Matrix v = random_unitary(n, rng);
  return v * t * v.adjoint();
}

/// Random block partition of n with parts of size 1..4.
inline std::vector<Index> random_partition(Index n, Rng& rng) {
  std::vector<Index> parts;
  Index left = n;
  while (left > 0) {
    const Index b = rng.uniform_int(1, std::min<Index>(4, left));
    parts.push_back(b);
    left -= b;
  }
  return parts;
}

/// Invertible matrix with singular values in [0.3, 3].
inline Matrix random_invertible(Index n, Rng& rng) {
  return random_with_rank(n, n, rng);
}

struct OperatorPair {
  Matrix s, t;
};

/// Star-commuting posinormal pair (S*T = T S*): in a shared random
/// unitary frame, each block makes one factor scalar (anything
/// star-commutes with a scalar) or makes both factors diagonal.
inline OperatorPair random_star_commuting_pair(Index n, Rng& rng) {
  const std::vector<Index> parts = random_partition(n, rng);
  Matrix s0 = Matrix::Zero(n, n);
  Matrix t0 = Matrix::Zero(n, n);
  Index off = 0;
  for (Index b : parts) {
    const long which = rng.uniform_int(0, 2);
    if (which == 0) {  // scalar S block (occasionally zero)
      const Complex sc =
          rng.uniform() < 0.15 ? Complex{0, 0} : rng.uniform(0.3, 3.0) * rng.phase();
      s0.block(off, off, b, b) = sc * Matrix::Identity(b, b);
      t0.block(off, off, b, b) = random_invertible(b, rng);
    } else if (which == 1) {  // scalar T block
      const Complex tc =
          rng.uniform() < 0.15 ? Complex{0, 0} : rng.uniform(0.3, 3.0) * rng.phase();
      t0.block(off, off, b, b) = tc * Matrix::Identity(b, b);
      s0.block(off, off, b, b) = random_invertible(b, rng);
    } else {  // both diagonal
      for (Index i = 0; i < b; ++i) {
        s0(off + i, off + i) = rng.uniform(0.3, 3.0) * rng.phase();
        t0(off + i, off + i) = rng.uniform(0.3, 3.0) * rng.phase();
      }
    }
    off += b;
  }
  const Matrix u = random_unitary(n, rng);
  return {u * s0 * u.adjoint(), u * t0 * u.adjoint()};
}

/// Commuting pair with S normal: S is scalar on each block of a shared
/// unitary frame, T an arbitrary posinormal block operator there
/// (invertible or range-Hermitian per block).
inline OperatorPair random_normal_commuting_pair(Index n, Rng& rng) {
  const std::vector<Index> parts = random_partition(n, rng);
  Matrix s0 = Matrix::Zero(n, n);
  Matrix t0 = Matrix::Zero(n, n);
  Index off = 0;
  for (Index b : parts) {
    const Complex sc =
        rng.uniform() < 0.15 ? Complex{0, 0} : rng.uniform(0.3, 3.0) * rng.phase();
    s0.block(off, off, b, b) = sc * Matrix::Identity(b, b);
    if (rng.uniform() < 0.3 && b > 1) {
      const Index r = rng.uniform_int(1, b - 1);
      t0.block(off, off, b, b) = random_ep(b, r, rng);
    } else {
      t0.block(off, off, b, b) = random_invertible(b, rng);
    }
    off += b;
  }
  const Matrix u = random_unitary(n, rng);
  return {u * s0 * u.adjoint(), u * t0 * u.adjoint()};
}

/// Generator-contract filter: range-Hermitian means N(T) = N(T*) as
/// subspaces.  Adversarial inputs (e.g. a Jordan nilpotent) fail here
/// and are thereby flagged as outside the generator contract.
inline bool ep_contract_ok(const Matrix& t, const Tolerance& tol = harness_tolerance()) {
  return subspace_equal(kernel_basis(t, tol), kernel_basis(t.adjoint(), tol));
}

// ---------------------------------------------------------------------------
// suite plumbing
// ---------------------------------------------------------------------------

struct TrialFailure {
  std::uint64_t seed = 0;
  std::string property;
  std::vector<std::pair<std::string, double>> measured;
};

struct SuiteResult {
  std::string suite;
  int trials = 0;
  int dim_max = 0;
  std::uint64_t master_seed = 0;
  std::vector<TrialFailure> failures;
  double elapsed_seconds = 0.0;

  bool passed() const { return failures.empty(); }
};

namespace detail {

/// Per-trial assertion sink; one failed property = one failure record.
class Trial {
 public:
  Trial(std::uint64_t seed, std::vector<TrialFailure>& sink)
      : seed_(seed), sink_(&sink) {}

  void require(bool ok, std::string_view property,
               std::initializer_list<std::pair<std::string, double>> measured = {}) {
    if (ok) return;
    TrialFailure f;
    f.seed = seed_;
    f.property = property;
    f.measured.assign(measured.begin(), measured.end());
    sink_->push_back(std::move(f));
  }

 private:
  std::uint64_t seed_;
  std::vector<TrialFailure>* sink_;
};

template <typename TrialFn>
SuiteResult run_suite(std::string name, int trials, int dim_max,
                      std::uint64_t master_seed, const Tolerance& tol,
                      TrialFn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteResult res;
  res.suite = std::move(name);
  res.trials = trials;
  res.dim_max = dim_max;
  res.master_seed = master_seed;
  for (int i = 0; i < trials; ++i) {
    const std::uint64_t seed = trial_seed(master_seed, static_cast<std::uint64_t>(i));
    Trial trial(seed, res.failures);
    fn(seed, static_cast<Index>(dim_max), tol, trial);
  }
  res.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return res;
}

inline double safe_ratio(double num, double den) {
  return den > 0.0 ? num / den : 0.0;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// suites
// ---------------------------------------------------------------------------

/// Range-inclusion trifecta: rank augmentation, PSD-pencil finiteness,
/// and pseudoinverse-factor residual must agree; when they say
/// "included", the recovered minimal constant must match a sampled
/// sup-ratio oracle sharpened by the pencil maximizer.
inline SuiteResult suite_douglas(int trials, int dim_max,
                                 std::uint64_t master_seed,
                                 const Tolerance& tol = harness_tolerance()) {
  return detail::run_suite(
      "douglas", trials, dim_max, master_seed, tol,
      [](std::uint64_t seed, Index dim_max, const Tolerance& tol,
         detail::Trial& trial) {
        Rng rng(seed);
        const Index n = rng.uniform_int(2, dim_max);
        const bool constructed = rng.uniform() < 0.5;
        Matrix a, b;
        double construct_norm = 0.0;
        if (constructed) {
          b = random_with_rank(n, rng.uniform_int(1, n), rng);
          Matrix c = random_dense(n, rng);
          const double cn = op_norm(c);
          if (cn > 0.0) c *= rng.uniform(0.3, 3.0) / cn;
          construct_norm = op_norm(c);
          a = b * c;
        } else {
          a = random_with_rank(n, rng.uniform_int(1, n), rng);
          b = random_with_rank(n, rng.uniform_int(1, n), rng);
        }

        const DouglasResult via_rank = range_included(a, b, tol);
        const PencilExtremum pencil =
            psd_domination_extremum(a * a.adjoint(), b * b.adjoint(), tol);
        const bool via_pencil = std::isfinite(pencil.alpha);
        const Matrix c3 = pinv_solve(b, a, tol);
        const double resid = (b * c3 - a).norm();
        const double a_norm = op_norm(a);
        const bool via_residual = resid <= tol.residual_tol * std::max(a_norm, 1e-300);

        trial.require(via_rank.included == via_pencil &&
                          via_pencil == via_residual,
                      "three-way-equivalence",
                      {{"rank_route", via_rank.included ? 1.0 : 0.0},
                       {"pencil_route", via_pencil ? 1.0 : 0.0},
                       {"residual_route", via_residual ? 1.0 : 0.0},
                       {"residual", resid}});
        if (via_rank.included != via_pencil || via_pencil != via_residual)
          return;

        if (!via_rank.included) {
          trial.require(via_rank.witness.has_value(), "witness-present");
          if (via_rank.witness) {
            const Vector& w = *via_rank.witness;
            const SubspaceBasis rb = range_basis(b, tol);
            const double in_b = (rb.basis.adjoint() * w).norm();
            const SubspaceBasis ra = range_basis(a, tol);
            const double in_a = (ra.basis.adjoint() * w).norm();
            trial.require(in_b <= 1e-6 && in_a >= 1e-8,
                          "witness-certificate",
                          {{"component_in_range_b", in_b},
                           {"component_in_range_a", in_a}});
          }
          return;
        }

        const double alpha = *via_rank.alpha_min;
        trial.require(via_rank.residual <=
                          tol.residual_tol * std::max(a_norm, 1e-300),
                      "factor-residual", {{"residual", via_rank.residual}});
        if (constructed)
          trial.require(alpha <= construct_norm + 1e-8, "factor-minimality",
                        {{"alpha", alpha}, {"construct_norm", construct_norm}});

        // sampled sup-ratio oracle, sharpened by the pencil maximizer
        double oracle = 0.0;
        const Matrix a_adj = a.adjoint();
        const Matrix b_adj = b.adjoint();
        for (int s = 0; s < 100; ++s) {
          Vector x(n);
          for (Index i = 0; i < n; ++i) x(i) = rng.cnormal();
          x /= x.norm();
          const double num = (a_adj * x).norm();
          const double den = (b_adj * x).norm();
          trial.require(num <= (alpha + 1e-8) * den + 1e-12,
                        "sampled-domination",
                        {{"ratio", detail::safe_ratio(num, den)}});
          if (den > 1e-12) oracle = std::max(oracle, num / den);
        }
        if (pencil.maximizer.size() == n) {
          const double num = (a_adj * pencil.maximizer).norm();
          const double den = (b_adj * pencil.maximizer).norm();
          if (den > 1e-12) oracle = std::max(oracle, num / den);
        }
        trial.require(std::abs(oracle - alpha) <= 1e-6, "alpha-oracle-agreement",
                      {{"alpha", alpha}, {"oracle", oracle}});
      });
}

/// Powers of range-Hermitian matrices stay posinormal and coposinormal
/// (kernel equality survives every power).
inline SuiteResult suite_ep_powers(int trials, int dim_max,
                                   std::uint64_t master_seed,
                                   const Tolerance& tol = harness_tolerance()) {
  return detail::run_suite(
      "t1c1", trials, dim_max, master_seed, tol,
      [](std::uint64_t seed, Index dim_max, const Tolerance& tol,
         detail::Trial& trial) {
        Rng rng(seed);
        const Index n = rng.uniform_int(2, dim_max);
        Matrix t = rng.uniform() < 0.15
                       ? random_normal_matrix(n, rng)
                       : random_ep(n, rng.uniform_int(1, n), rng);
        rescale_norm(t, rng);
        trial.require(ep_contract_ok(t, tol), "generator-contract");

        // renormalized after every multiply: classes are scale-invariant
        // and unit scale keeps rank cutoffs decisive for high powers
        const Matrix step = t / op_norm(t);
        Matrix power = Matrix::Identity(n, n);
        for (int k = 1; k <= 5; ++k) {
          power = power * step;
          power /= op_norm(power);
          const ClassVerdict pos = is_posinormal(power, tol);
          const ClassVerdict copos = is_coposinormal(power, tol);
          trial.require(pos.holds, "power-posinormal",
                        {{"n", static_cast<double>(k)}});
          trial.require(copos.holds, "power-coposinormal",
                        {{"n", static_cast<double>(k)}});
        }
      });
}

/// Constant tracking for squares and cubes when the two Gram matrices
/// commute: with α the base constant and β the constant of the squared
/// Gram pencil, alpha_min(T²) ≤ α²β and alpha_min(T³) ≤ α⁹.
inline SuiteResult suite_commuting_grams(
    int trials, int dim_max, std::uint64_t master_seed,
    const Tolerance& tol = harness_tolerance()) {
  return detail::run_suite(
      "t3", trials, dim_max, master_seed, tol,
      [](std::uint64_t seed, Index dim_max, const Tolerance& tol,
         detail::Trial& trial) {
        Rng rng(seed);
        const Index n = rng.uniform_int(2, dim_max);
        const long kind = rng.uniform_int(0, 2);
        Matrix t;
        if (kind == 0)
          t = random_normal_matrix(n, rng);
        else
          t = random_commuting_gram(n, /*singular=*/kind == 2, rng);
        rescale_norm(t, rng);

        const Matrix g1 = t * t.adjoint();
        const Matrix g2 = t.adjoint() * t;
        const double scale4 = std::pow(op_norm(t), 4);
        trial.require((g1 * g2 - g2 * g1).norm() <= 1e-10 * std::max(scale4, 1e-300),
                      "generator-contract-commuting-grams");

        const ClassVerdict base = is_posinormal(t, tol);
        trial.require(base.holds, "base-posinormal");
        if (!base.holds) return;
        const double alpha = *base.alpha;

        const double beta = psd_domination_alpha(g1 * g1, g2 * g2, tol);
        const bool grams_included = range_included(g1, g2, tol).included;
        trial.require(grams_included == std::isfinite(beta),
                      "squared-pencil-equivalence",
                      {{"included", grams_included ? 1.0 : 0.0},
                       {"beta", beta}});
        if (!std::isfinite(beta)) return;

        const ClassVerdict sq = is_posinormal(t * t, tol);
        trial.require(sq.holds, "square-posinormal");
        if (sq.holds)
          trial.require(*sq.alpha <= alpha * alpha * beta + 1e-6,
                        "square-constant-bound",
                        {{"alpha_sq", *sq.alpha},
                         {"bound", alpha * alpha * beta}});

        const ClassVerdict cube = is_posinormal(t * t * t, tol);
        trial.require(cube.holds, "cube-posinormal");
        if (cube.holds)
          trial.require(*cube.alpha <= std::pow(alpha, 9) + 1e-6,
                        "cube-constant-bound",
                        {{"alpha_cube", *cube.alpha},
                         {"bound", std::pow(alpha, 9)}});
      });
}

/// Products: star-commuting posinormal pairs multiply into posinormal
/// with alpha_min(ST) ≤ α_T·α_S; for commuting pairs with S normal the
/// star-commutation is verified as a conclusion (not an input), then
/// the same bound applies; posinormal products sit inside the ranges
/// of all four of S, T, S*, T*.
inline SuiteResult suite_star_products(
    int trials, int dim_max, std::uint64_t master_seed,
    const Tolerance& tol = harness_tolerance()) {
  return detail::run_suite(
      "t4", trials, dim_max, master_seed, tol,
      [](std::uint64_t seed, Index dim_max, const Tolerance& tol,
         detail::Trial& trial) {
        Rng rng(seed);
        const Index n = rng.uniform_int(2, dim_max);
        const bool normal_variant = rng.uniform() < 0.5;
        OperatorPair pair = normal_variant
                                ? random_normal_commuting_pair(n, rng)
                                : random_star_commuting_pair(n, rng);
        rescale_norm(pair.s, rng);
        rescale_norm(pair.t, rng);
        const Matrix& s = pair.s;
        const Matrix& t = pair.t;
        const double ns = op_norm(s), nt = op_norm(t);

        const double star_resid = (s.adjoint() * t - t * s.adjoint()).norm();
        trial.require(star_resid <= 1e-10 * std::max(ns * nt, 1e-300),
                      normal_variant ? "fuglede-conclusion"
                                     : "generator-contract-star-commuting",
                      {{"residual", star_resid}});
        if (normal_variant) {
          const double comm_resid = (s * t - t * s).norm();
          trial.require(comm_resid <= 1e-10 * std::max(ns * nt, 1e-300),
                        "generator-contract-commuting",
                        {{"residual", comm_resid}});
          trial.require(is_normal(s, tol).holds, "generator-contract-normal");
        }

        const ClassVerdict vs = is_posinormal(s, tol);
        const ClassVerdict vt = is_posinormal(t, tol);
        trial.require(vs.holds && vt.holds, "factors-posinormal");
        if (!vs.holds || !vt.holds) return;

        Matrix st = s * t;
        // Complementary-support blocks (S scalar-zero where T is
        // invertible and vice versa) make ST vanish exactly; the
        // computed product is then pure rounding noise, and verdicts
        // about it would be verdicts about noise.  Snap anything at the
        // multiplication's error floor (~n^{3/2}·eps·|S||T|) to the
        // zero operator it represents.
        const double noise_floor = 256.0 *
                                   std::numeric_limits<double>::epsilon() *
                                   std::max(ns * nt, 1e-300);
        if (op_norm(st) <= noise_floor) st.setZero();
        const ClassVerdict vp = is_posinormal(st, tol);
        trial.require(vp.holds, "product-posinormal");
        if (!vp.holds) return;
        trial.require(*vp.alpha <= *vs.alpha * *vt.alpha + 1e-6,
                      "product-constant-bound",
                      {{"alpha_product", *vp.alpha},
                       {"bound", *vs.alpha * *vt.alpha}});

        for (const auto& [label, m] :
             {std::pair<const char*, Matrix>{"range-in-s", s},
              {"range-in-t", t},
              {"range-in-s-adjoint", s.adjoint()},
              {"range-in-t-adjoint", t.adjoint()}}) {
          trial.require(range_included(st, m, tol).included, label);
        }
      });
}

/// Kernel chains: when N(T) ⊆ N(T*) by construction, all powers keep
/// the same kernel (ascent ≤ 1) and N(Tⁿ) ⊆ N(T*ⁿ) for every n.
inline SuiteResult suite_kernel_powers(
    int trials, int dim_max, std::uint64_t master_seed,
    const Tolerance& tol = harness_tolerance()) {
  return detail::run_suite(
      "t5", trials, dim_max, master_seed, tol,
      [](std::uint64_t seed, Index dim_max, const Tolerance& tol,
         detail::Trial& trial) {
        Rng rng(seed);
        const Index n = rng.uniform_int(2, dim_max);
        Matrix t = random_ep(n, rng.uniform_int(1, n - 1), rng);
        rescale_norm(t, rng);

        const Index kernel_dim = n - numerical_rank(t, tol);
        trial.require(kernel_dim >= 1, "generator-contract-singular");

        const ChainProfile profile = chain_profile(t, tol);
        trial.require(profile.ascent <= 1, "ascent-at-most-one",
                      {{"ascent", static_cast<double>(profile.ascent)}});

        const Matrix step = t / op_norm(t);
        Matrix power = Matrix::Identity(n, n);
        for (int k = 1; k <= 5; ++k) {
          power = power * step;
          power /= op_norm(power);  // kernels are scale-invariant
          const ClassVerdict quasi = is_quasiposinormal(power, tol);
          trial.require(quasi.holds, "power-quasiposinormal",
                        {{"n", static_cast<double>(k)}});
          const Index kd = n - numerical_rank(power, tol);
          trial.require(kd == kernel_dim, "power-kernel-dimension",
                        {{"n", static_cast<double>(k)},
                         {"kernel_dim", static_cast<double>(kd)},
                         {"base_kernel_dim", static_cast<double>(kernel_dim)}});
          const SubspaceBasis ker = kernel_basis(power, tol);
          double gap = 0.0;
          if (ker.rank() > 0)
            gap = op_norm(power.adjoint() * ker.basis);
          trial.require(gap <= tol.residual_tol * std::max(op_norm(power), 1e-300),
                        "power-kernel-inclusion-in-adjoint",
                        {{"n", static_cast<double>(k)}, {"gap", gap}});
        }
      });
}

/// Mixed ascent/descent checks on dense, deliberately non-EP singular,
/// nilpotent-augmented, and range-Hermitian inputs: chain monotonicity,
/// ascent = descent, the power-ascent biconditional over a j,k grid,
/// and asc(T*) ≤ dsc(T).
inline SuiteResult suite_chains(int trials, int dim_max,
                                std::uint64_t master_seed,
                                const Tolerance& tol = harness_tolerance()) {
  return detail::run_suite(
      "chains", trials, dim_max, master_seed, tol,
      [](std::uint64_t seed, Index dim_max, const Tolerance& tol,
         detail::Trial& trial) {
        Rng rng(seed);
        const Index n = rng.uniform_int(2, dim_max);
        const long kind = rng.uniform_int(0, 3);
        Matrix t;
        Index expected_ascent = -1;
        if (kind == 0) {
          t = random_dense(n, rng);
        } else if (kind == 1) {
          t = random_with_rank(n, rng.uniform_int(1, n - 1), rng);
        } else if (kind == 2) {
          const Index m = rng.uniform_int(2, std::min<Index>(n, 4));
          Matrix core = Matrix::Zero(n, n);
          for (Index i = 0; i + 1 < m; ++i) core(i, i + 1) = rng.uniform(0.3, 3.0);
          if (n > m)
            core.bottomRightCorner(n - m, n - m) = random_invertible(n - m, rng);
          const Matrix u = random_unitary(n, rng);
          t = u * core * u.adjoint();
          expected_ascent = m;
        } else {
          t = random_ep(n, rng.uniform_int(1, n), rng);
        }
        rescale_norm(t, rng);

        const ChainProfile p = chain_profile(t, tol);
        for (std::size_t i = 0; i + 1 < p.kernel_dims.size(); ++i) {
          trial.require(p.kernel_dims[i] <= p.kernel_dims[i + 1],
                        "kernel-chain-monotone");
          trial.require(p.range_ranks[i] >= p.range_ranks[i + 1],
                        "range-chain-monotone");
          if (p.kernel_dims[i] == p.kernel_dims[i + 1] &&
              i + 2 < p.kernel_dims.size())
            trial.require(p.kernel_dims[i + 1] == p.kernel_dims[i + 2],
                          "stabilization-persists");
        }
        trial.require(p.ascent == p.descent, "ascent-equals-descent",
                      {{"ascent", static_cast<double>(p.ascent)},
                       {"descent", static_cast<double>(p.descent)}});
        if (expected_ascent > 0)
          trial.require(p.ascent == expected_ascent, "nilpotent-part-ascent",
                        {{"ascent", static_cast<double>(p.ascent)},
                         {"expected", static_cast<double>(expected_ascent)}});

        const ChainProfile padj = chain_profile(t.adjoint(), tol);
        trial.require(padj.ascent <= p.descent, "adjoint-ascent-bound",
                      {{"adjoint_ascent", static_cast<double>(padj.ascent)},
                       {"descent", static_cast<double>(p.descent)}});

        const Matrix step = op_norm(t) > 0.0 ? Matrix(t / op_norm(t)) : t;
        Matrix power = step;
        for (Index k = 1; k <= 3; ++k) {
          const ChainProfile pk =
              k == 1 ? p : chain_profile(power, tol);
          for (Index j = 1; j <= 3; ++j) {
            const bool lhs = pk.ascent <= j;
            const bool rhs = p.ascent <= j * k;
            trial.require(lhs == rhs, "power-ascent-biconditional",
                          {{"j", static_cast<double>(j)},
                           {"k", static_cast<double>(k)},
                           {"powered_ascent", static_cast<double>(pk.ascent)},
                           {"base_ascent", static_cast<double>(p.ascent)}});
          }
          if (k < 3) power = power * step;
        }
      });
}

/// CLI wire names -> suites.  "all" is expanded by the caller.
inline std::optional<SuiteResult> run_suite_by_name(
    std::string_view name, int trials, int dim_max, std::uint64_t master_seed,
    const Tolerance& tol = harness_tolerance()) {
  if (name == "douglas") return suite_douglas(trials, dim_max, master_seed, tol);
  if (name == "t1c1") return suite_ep_powers(trials, dim_max, master_seed, tol);
  if (name == "t3") return suite_commuting_grams(trials, dim_max, master_seed, tol);
  if (name == "t4") return suite_star_products(trials, dim_max, master_seed, tol);
  if (name == "t5") return suite_kernel_powers(trials, dim_max, master_seed, tol);
  if (name == "chains") return suite_chains(trials, dim_max, master_seed, tol);
  return std::nullopt;
}

inline const std::vector<std::string>& all_suite_names() {
  static const std::vector<std::string> names{"douglas", "t1c1", "t3",
                                              "t4",      "t5",   "chains"};
  return names;
}

}  // namespace posinorm::harness
