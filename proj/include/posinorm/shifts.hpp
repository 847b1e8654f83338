#pragma once

// Weighted shift analysis without truncation: powers of a shift have
// diagonal Gram matrices whose entries are window products of weights,
// so posinormality of S^n reduces to the finiteness of
//
//   s_n = sup_j  prod_{k=j+1}^{n+j} |w_k|  /  prod_{k=n+j+1}^{2n+j} |w_k|,
//
// and s_n ≤ (sup_k |w_k|/|w_{k+n}|)^n ≤ s_1^{n²}.  Window products are
// accumulated in log space; the kinds with monotone ratios resolve the
// sup in closed form, everything else is scanned to a horizon with a
// divergence heuristic.  Finite truncations are provided for
// cross-checks only — cutting a shift to a matrix makes it nilpotent
// and destroys the boundary behaviour.

#include <cmath>
#include <string>
#include <vector>

#include "posinorm/numeric.hpp"

namespace posinorm::shifts {

struct zero_weight_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class WeightKind {
  constant,              // w_k = c
  power_law,             // w_k = k^p
  reciprocal,            // w_k = 1/k
  bilateral_reciprocal,  // w_k = 1/max(|k|, 1), k in Z
  geometric,             // w_k = r^k
  explicit_list          // cyclic extension of a finite list
};

enum class ShiftSupport { unilateral, bilateral };

/// Weight sequence of a shift e_k -> w_k e_{k+1}.  Unilateral kinds
/// index weights from k = 1; the bilateral kind accepts any integer.
/// Construction rejects zero weights (a zero weight breaks
/// injectivity, and with it the whole diagonal analysis).
class WeightSequence {
 public:
  static WeightSequence constant(double c) {
    require_param(c, "constant");
    if (c == 0.0) throw zero_weight_error("constant weight is zero");
    return WeightSequence(WeightKind::constant, c);
  }
  static WeightSequence power_law(double p) {
    require_param(p, "power-law exponent");
    return WeightSequence(WeightKind::power_law, p);
  }
  static WeightSequence reciprocal() {
    return WeightSequence(WeightKind::reciprocal, 0.0);
  }
  static WeightSequence bilateral_reciprocal() {
    return WeightSequence(WeightKind::bilateral_reciprocal, 0.0);
  }
  static WeightSequence geometric(double r) {
    require_param(r, "geometric ratio");
    if (r == 0.0) throw zero_weight_error("geometric ratio is zero");
    return WeightSequence(WeightKind::geometric, r);
  }
  static WeightSequence list(std::vector<double> values) {
    if (values.empty())
      throw std::invalid_argument("weight list must be nonempty");
    for (double v : values) {
      require_param(v, "list weight");
      if (v == 0.0) throw zero_weight_error("weight list contains zero");
    }
    WeightSequence w(WeightKind::explicit_list, 0.0);
    w.values_ = std::move(values);
    w.log_values_.reserve(w.values_.size());
    for (double v : w.values_) w.log_values_.push_back(std::log(std::abs(v)));
    return w;
  }

  WeightKind kind() const { return kind_; }
  double param() const { return param_; }
  const std::vector<double>& values() const { return values_; }
  ShiftSupport support() const {
    return kind_ == WeightKind::bilateral_reciprocal
               ? ShiftSupport::bilateral
               : ShiftSupport::unilateral;
  }

  double weight(long k) const {
    check_index(k);
    switch (kind_) {
      case WeightKind::constant:
        return param_;
      case WeightKind::power_law:
        return std::pow(static_cast<double>(k), param_);
      case WeightKind::reciprocal:
        return 1.0 / static_cast<double>(k);
      case WeightKind::bilateral_reciprocal:
        return 1.0 / static_cast<double>(std::max(k < 0 ? -k : k, 1L));
      case WeightKind::geometric:
        return std::pow(param_, static_cast<double>(k));
      case WeightKind::explicit_list:
        return values_[cyclic_index(k)];
    }
    return 0.0;  // unreachable
  }

  /// log |w_k|, exact in the exponent even where w_k itself would
  /// under- or overflow a double.
  double log_abs_weight(long k) const {
    check_index(k);
    switch (kind_) {
      case WeightKind::constant:
        return std::log(std::abs(param_));
      case WeightKind::power_law:
        return param_ * std::log(static_cast<double>(k));
      case WeightKind::reciprocal:
        return -std::log(static_cast<double>(k));
      case WeightKind::bilateral_reciprocal:
        return -std::log(static_cast<double>(std::max(k < 0 ? -k : k, 1L)));
      case WeightKind::geometric:
        return static_cast<double>(k) * std::log(std::abs(param_));
      case WeightKind::explicit_list:
        return log_values_[cyclic_index(k)];
    }
    return 0.0;  // unreachable
  }

 private:
  WeightSequence(WeightKind kind, double param) : kind_(kind), param_(param) {}

  static void require_param(double v, const char* what) {
    if (!std::isfinite(v))
      throw std::invalid_argument(std::string(what) + ": non-finite value");
  }
  void check_index(long k) const {
    if (support() == ShiftSupport::unilateral && k < 1)
      throw std::invalid_argument("unilateral weight index must be >= 1");
  }
  std::size_t cyclic_index(long k) const {
    const long m = static_cast<long>(values_.size());
    return static_cast<std::size_t>(((k - 1) % m + m) % m);
  }

  WeightKind kind_;
  double param_;
  std::vector<double> values_;
  std::vector<double> log_values_;
};

/// Analysis of one power S^n.  sup_value carries exp(log_sup) for
/// display and may overflow to +inf even when the sup is finite;
/// posinormal / infinite are decided on log_sup and the divergence
/// heuristic, never on the overflowed display value.
struct ShiftVerdict {
  int n = 1;
  long horizon = 0;
  bool closed_form = false;
  /// True when the value is a horizon estimate rather than a proof.
  bool estimate = false;
  /// Divergence heuristic fired: running sup grew by more than 10x
  /// across the last doubling of the horizon.
  bool infinite = false;
  double log_sup = 0.0;
  double sup_value = 1.0;
  /// Index j attaining the running sup; -1 when the sup is a limit
  /// resolved analytically.
  long attained_j = 0;
  double log_base_sup = 0.0;      // log s_1
  double bound_n_squared = 1.0;   // s_1^(n^2)
  double mid_bound = 1.0;         // (sup_k |w_k| / |w_{k+n}|)^n
  bool posinormal = true;
};

namespace detail {

/// Exact central binomial coefficient C(2n, n) as a double (exact for
/// n ≤ 26; the incremental product C(n+i, i) keeps every step integer).
inline double central_binomial(int n) {
  unsigned long long acc = 1;
  for (int i = 1; i <= n; ++i)
    acc = acc * static_cast<unsigned long long>(n + i) /
          static_cast<unsigned long long>(i);
  return static_cast<double>(acc);
}

struct ScanResult {
  double log_sup_half = -std::numeric_limits<double>::infinity();
  double log_sup_full = -std::numeric_limits<double>::infinity();
  long attained_j = 0;
};

/// Sliding-window scan of log ratio(j) = sum of the leading n logs
/// minus the trailing n logs, tracking the sup over the half and full
/// horizon (the halves feed the divergence heuristic).
template <typename LogRatio>
ScanResult scan_sup(long j_lo, long j_hi, long half_lo, long half_hi,
                    LogRatio&& log_ratio) {
  ScanResult r;
  for (long j = j_lo; j <= j_hi; ++j) {
    const double v = log_ratio(j);
    if (v > r.log_sup_full) {
      r.log_sup_full = v;
      r.attained_j = j;
    }
    if (j >= half_lo && j <= half_hi && v > r.log_sup_half)
      r.log_sup_half = v;
  }
  return r;
}

}  // namespace detail

/// s_n for the given sequence: closed form for the monotone-ratio
/// kinds (constant, power-law, reciprocal, geometric — any ratio, since
/// the geometric window ratio does not depend on the window position),
/// horizon scan with the divergence heuristic otherwise.
inline ShiftVerdict shift_power_sup(const WeightSequence& w, int n,
                                    long horizon = 4096) {
  if (n < 1) throw std::invalid_argument("shift_power_sup: n must be >= 1");
  if (horizon < 1)
    throw std::invalid_argument("shift_power_sup: horizon must be >= 1");

  ShiftVerdict v;
  v.n = n;
  v.horizon = horizon;

  const auto closed = [&](int m) -> std::pair<bool, double> {
    // returns (resolved, log s_m)
    switch (w.kind()) {
      case WeightKind::constant:
        return {true, 0.0};
      case WeightKind::power_law:
        if (w.param() >= 0.0) return {true, 0.0};  // ratio < 1, sup is the limit 1
        return {true, -w.param() * std::log(detail::central_binomial(m))};
      case WeightKind::reciprocal:
        return {true, std::log(detail::central_binomial(m))};
      case WeightKind::geometric:
        // the window ratio is constant in j (index sums telescope to
        // −m²·log|r|), so this is exact for every ratio r
        return {true, -static_cast<double>(m) * static_cast<double>(m) *
                          std::log(std::abs(w.param()))};
      default:
        return {false, 0.0};
    }
  };

  const auto scan = [&](int m) -> detail::ScanResult {
    const bool bilateral = w.support() == ShiftSupport::bilateral;
    const long lo = bilateral ? -horizon : 0;
    const long half = horizon / 2;
    // cumulative logs over weight indices lo+1 .. horizon+2m
    const long k_lo = lo + 1, k_hi = horizon + 2 * m;
    std::vector<double> cum(static_cast<std::size_t>(k_hi - k_lo + 2), 0.0);
    for (long k = k_lo; k <= k_hi; ++k)
      cum[static_cast<std::size_t>(k - k_lo + 1)] =
          cum[static_cast<std::size_t>(k - k_lo)] + w.log_abs_weight(k);
    const auto cum_at = [&](long k) {  // sum of logs over (lo, k]
      return cum[static_cast<std::size_t>(k - k_lo + 1)];
    };
    return detail::scan_sup(lo, horizon, bilateral ? -half : 0, half,
                            [&](long j) {
                              return 2.0 * cum_at(j + m) - cum_at(j) -
                                     cum_at(j + 2 * m);
                            });
  };

  const auto resolve = [&](int m) -> std::pair<double, bool> {
    // returns (log s_m, diverging)
    if (auto [ok, val] = closed(m); ok) return {val, false};
    const detail::ScanResult r = scan(m);
    const bool diverging = r.log_sup_full > std::log(10.0) + r.log_sup_half;
    if (m == n) {
      v.attained_j = r.attained_j;
      v.estimate = true;
    }
    return {r.log_sup_full, diverging};
  };

  if (auto [ok, val] = closed(n); ok) {
    v.closed_form = true;
    v.log_sup = val;
    v.attained_j =
        (w.kind() == WeightKind::power_law && w.param() > 0.0) ? -1 : 0;
  } else {
    const auto scanned = resolve(n);
    v.log_sup = scanned.first;
    v.infinite = scanned.second;
  }

  // Base sup s_1 and the two comparison bounds over the same horizon.
  auto [log_s1, s1_diverging] = resolve(1);
  v.log_base_sup = log_s1;
  if (s1_diverging) {
    v.bound_n_squared = std::numeric_limits<double>::infinity();
  } else {
    // Exponentiate the exact base sup where the closed forms pin it;
    // exp(n²·log s₁) would smear the integer values (e.g. 2^{n²}) by a
    // rounding ulp or two.
    const double nn = static_cast<double>(n) * n;
    switch (w.kind()) {
      case WeightKind::constant:
        v.bound_n_squared = 1.0;
        break;
      case WeightKind::power_law:
        v.bound_n_squared =
            w.param() >= 0.0 ? 1.0 : std::pow(2.0, -w.param() * nn);
        break;
      case WeightKind::reciprocal:
        v.bound_n_squared = std::pow(detail::central_binomial(1), nn);
        break;
      case WeightKind::geometric:
        v.bound_n_squared = std::pow(1.0 / std::abs(w.param()), nn);
        break;
      default:
        v.bound_n_squared = std::exp(nn * log_s1);
        break;
    }
  }

  // middle bound: (sup_k |w_k| / |w_{k+n}|)^n
  double log_mid;
  switch (w.kind()) {
    case WeightKind::constant:
      log_mid = 0.0;
      break;
    case WeightKind::power_law:
      log_mid = w.param() >= 0.0
                    ? 0.0
                    : -w.param() * static_cast<double>(n) * std::log(1.0 + n);
      break;
    case WeightKind::reciprocal:
      log_mid = static_cast<double>(n) * std::log(1.0 + n);
      break;
    case WeightKind::geometric:
      log_mid = -static_cast<double>(n) * n * std::log(std::abs(w.param()));
      break;
    default: {
      const bool bilateral = w.support() == ShiftSupport::bilateral;
      const long k_lo = bilateral ? -horizon : 1;
      double sup = -std::numeric_limits<double>::infinity();
      for (long k = k_lo; k <= horizon; ++k)
        sup = std::max(sup, w.log_abs_weight(k) - w.log_abs_weight(k + n));
      log_mid = static_cast<double>(n) * sup;
      break;
    }
  }
  v.mid_bound = std::exp(log_mid);

  if (v.infinite) {
    v.sup_value = std::numeric_limits<double>::infinity();
    v.posinormal = false;
  } else {
    // prefer arithmetic that stays exact for the pinned closed forms
    if (w.kind() == WeightKind::reciprocal)
      v.sup_value = detail::central_binomial(n);
    else if (w.kind() == WeightKind::geometric)
      v.sup_value = std::pow(1.0 / std::abs(w.param()),
                             static_cast<double>(n) * n);
    else
      v.sup_value = std::exp(v.log_sup);
    v.posinormal = true;
  }
  return v;
}

struct ShiftClassAnswer {
  bool verdict = false;
  double alpha = 0.0;  // s_n; +inf when not posinormal
};

/// S^n posinormal ⇔ s_n finite; alpha is the minimal constant of the
/// diagonal comparison, i.e. s_n itself.
inline ShiftClassAnswer shift_posinormal(const WeightSequence& w, int n,
                                         long horizon = 4096) {
  const ShiftVerdict v = shift_power_sup(w, n, horizon);
  return {v.posinormal, v.sup_value};
}

/// Coposinormality of S^n.  An injective unilateral shift never
/// qualifies (e_0 lies in R(S*^n) but not in R(S^n)); the bilateral
/// case mirrors the posinormal criterion with the window ratio
/// inverted.
inline ShiftClassAnswer shift_coposinormal(const WeightSequence& w, int n,
                                           long horizon = 4096) {
  if (n < 1) throw std::invalid_argument("shift_coposinormal: n must be >= 1");
  if (w.support() == ShiftSupport::unilateral)
    return {false, std::numeric_limits<double>::infinity()};
  const long half = horizon / 2;
  std::vector<double> cum;  // cumulative logs, indices -horizon+1 .. horizon+2n
  const long k_lo = -horizon + 1, k_hi = horizon + 2 * n;
  cum.assign(static_cast<std::size_t>(k_hi - k_lo + 2), 0.0);
  for (long k = k_lo; k <= k_hi; ++k)
    cum[static_cast<std::size_t>(k - k_lo + 1)] =
        cum[static_cast<std::size_t>(k - k_lo)] + w.log_abs_weight(k);
  const auto cum_at = [&](long k) {
    return cum[static_cast<std::size_t>(k - k_lo + 1)];
  };
  const detail::ScanResult r = detail::scan_sup(
      -horizon, horizon, -half, half, [&](long j) {
        return cum_at(j + 2 * n) + cum_at(j) - 2.0 * cum_at(j + n);
      });
  if (r.log_sup_full > std::log(10.0) + r.log_sup_half)
    return {false, std::numeric_limits<double>::infinity()};
  return {true, std::exp(r.log_sup_full)};
}

/// First L diagonal entries (basis indices 0..L-1, weights indexed
/// from 1) of S^n S*^n and S*^n S^n:
///   (S^n S*^n)[j] = 0 for j < n, else prod_{k=j-n+1}^{j} |w_k|²
///   (S*^n S^n)[j] = prod_{k=j+1}^{j+n} |w_k|²
/// Unilateral sequences only; truncation conventions for the bilateral
/// case live in build_shift_truncation.
inline std::pair<RealVector, RealVector> shift_gram_diagonals(
    const WeightSequence& w, int n, Index length) {
  if (n < 1) throw std::invalid_argument("shift_gram_diagonals: n >= 1");
  if (length < 2 * n)
    throw std::invalid_argument("shift_gram_diagonals: length must be >= 2n");
  if (w.support() != ShiftSupport::unilateral)
    throw std::invalid_argument(
        "shift_gram_diagonals: unilateral sequences only");
  RealVector lower = RealVector::Zero(length);   // S^n S*^n
  RealVector upper = RealVector::Zero(length);   // S*^n S^n
  for (Index j = 0; j < length; ++j) {
    double acc = 0.0;
    for (long k = j + 1; k <= j + n; ++k) acc += w.log_abs_weight(k);
    upper(j) = std::exp(2.0 * acc);
    if (j >= n) {
      acc = 0.0;
      for (long k = j - n + 1; k <= j; ++k) acc += w.log_abs_weight(k);
      lower(j) = std::exp(2.0 * acc);
    }
  }
  return {lower, upper};
}

/// Finite truncation: L×L with w_1..w_{L-1} on the first subdiagonal
/// (unilateral), or (2L+1)×(2L+1) with weight indices -L..L-1 mapped
/// to basis indices k+L (bilateral).
inline Matrix build_shift_truncation(const WeightSequence& w, Index L) {
  if (L < 2)
    throw std::invalid_argument("build_shift_truncation: L must be >= 2");
  if (w.support() == ShiftSupport::unilateral) {
    Matrix m = Matrix::Zero(L, L);
    for (Index i = 0; i + 1 < L; ++i) m(i + 1, i) = w.weight(i + 1);
    return m;
  }
  const Index size = 2 * L + 1;
  Matrix m = Matrix::Zero(size, size);
  for (long k = -L; k < L; ++k) m(k + L + 1, k + L) = w.weight(k);
  return m;
}

}  // namespace posinorm::shifts
