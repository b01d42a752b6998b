#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "seiffert/algebra.hpp"
#include "seiffert/analysis.hpp"
#include "seiffert/catalog.hpp"
#include "seiffert/core.hpp"
#include "seiffert/errors.hpp"
#include "seiffert/grid.hpp"

namespace seiffert {

/// Optimal constants of a two-sided bound together with where they are
/// attained.
///
/// For convex combinations the constants are weights on the upper mean N:
/// (1 - lower) K + lower N <= M <= (1 - upper) K + upper N. For shifts they
/// are p0 = inf and q0 = sup of the shift objective.
struct BoundResult {
  double lower_constant = std::numeric_limits<double>::quiet_NaN();
  double upper_constant = std::numeric_limits<double>::quiet_NaN();
  Location lower_extremizer;
  Location upper_extremizer;
  /// +1 / -1 when the objective is monotone on the grid, else 0.
  int monotone = 0;
  std::vector<std::pair<double, double>> objective_trace;
  std::string note;
};

namespace detail {

// Value at z = 1 when finite, else nullopt; the search then falls back to
// its sample at 1 - eps.
inline std::optional<double> finite_at_one(const std::function<double(double)>& g) {
  const double v = g(1.0);
  if (std::isfinite(v)) return v;
  return std::nullopt;
}

inline void require_order(const ComparisonVerdict& v, const std::string& lhs,
                          const std::string& rhs, const char* op) {
  if (v.relation != Relation::less_equal)
    throw PreconditionError(std::string(op) + ": requires " + lhs + " < " + rhs +
                            " on the grid, found " + to_string(v.relation));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Convex combinations

/// R(z) = (1/f_M - 1/f_K) / (1/f_N - 1/f_K), whose inf and sup over (0,1)
/// are the optimal weights on N.
inline std::function<double(double)> convex_objective(const SeiffertFunction& fk,
                                                      const SeiffertFunction& fm,
                                                      const SeiffertFunction& fn) {
  return [fk, fm, fn](double z) {
    const double gk = fk.gap(z);
    return (fm.gap(z) - gk) / (fn.gap(z) - gk);
  };
}

/// Optimal mu, nu with (1 - mu) K + mu N <= M <= (1 - nu) K + nu N, for
/// K < M < N.
///
/// The 0/0 limit at z -> 0 comes from the Taylor heads when all three
/// functions have one, otherwise from Richardson extrapolation; the limit at
/// 1 is the value at z = 1 when finite.
inline BoundResult convex_combination_bounds(const SeiffertFunction& fk,
                                             const SeiffertFunction& fm,
                                             const SeiffertFunction& fn,
                                             const SearchOptions& opt = {}) {
  detail::require_order(compare(fk, fm, opt.grid), fk.name(), fm.name(), "convex bounds");
  detail::require_order(compare(fm, fn, opt.grid), fm.name(), fn.name(), "convex bounds");
  const auto r = convex_objective(fk, fm, fn);

  double at_zero;
  if (fk.series() && fm.series() && fn.series()) {
    const PowerSeries gk = detail::gap_series(*fk.series());
    const PowerSeries num = detail::gap_series(*fm.series()) - gk;
    const PowerSeries den = detail::gap_series(*fn.series()) - gk;
    at_zero = PowerSeries::cancel_divide(num, den, 1e-300)[0];
  } else {
    at_zero = richardson_to_zero(r);
  }
  const SearchResult s = search_extrema(r, at_zero, detail::finite_at_one(r), opt);
  BoundResult b;
  b.lower_constant = s.inf.value;
  b.upper_constant = s.sup.value;
  b.lower_extremizer = s.inf.where;
  b.upper_extremizer = s.sup.where;
  b.monotone = s.monotone;
  b.objective_trace = s.trace;
  b.note = "weights on " + fn.name() + " (upper mean); " + fk.name() + " gets 1 - weight";
  return b;
}

inline BoundResult convex_combination_bounds(const Mean& k, const Mean& m, const Mean& n,
                                             const SearchOptions& opt = {}) {
  BoundResult b = convex_combination_bounds(seiffert_from_mean(k), seiffert_from_mean(m),
                                            seiffert_from_mean(n), opt);
  b.note = "weights on " + n.name() + " (upper mean); " + k.name() + " gets 1 - weight";
  return b;
}

/// Sampled soundness of convex-combination constants: both inequalities
/// hold at `samples` pairs with relative slack >= -1e-9, and moving either
/// constant inward by `delta` produces a violating pair.
inline VerificationReport verify_convex_bounds(const Mean& k, const Mean& m, const Mean& n,
                                               const BoundResult& b,
                                               std::size_t samples = kCorpusPoints,
                                               double delta = 1e-3) {
  VerificationReport rep{"convex bounds " + m.name(), {}};
  const double mu = b.lower_constant, nu = b.upper_constant;
  auto slack_lower = [&](double w, double x, double y) {
    return (m(x, y) - ((1.0 - w) * k(x, y) + w * n(x, y))) / (0.5 * (x + y));
  };
  auto slack_upper = [&](double w, double x, double y) {
    return ((1.0 - w) * k(x, y) + w * n(x, y) - m(x, y)) / (0.5 * (x + y));
  };
  CheckResult lo{"lower bound holds", true, std::numeric_limits<double>::infinity(), {}, {}};
  CheckResult up{"upper bound holds", true, std::numeric_limits<double>::infinity(), {}, {}};
  for (const auto& [x, y] : sample_pairs(samples)) {
    const double a = slack_lower(mu, x, y), c = slack_upper(nu, x, y);
    if (a < lo.worst_margin) lo.worst_margin = a, lo.witness = Witness::pair(x, y);
    if (c < up.worst_margin) up.worst_margin = c, up.witness = Witness::pair(x, y);
  }
  lo.passed = lo.worst_margin >= -1e-9;
  up.passed = up.worst_margin >= -1e-9;
  rep.checks.push_back(lo);
  rep.checks.push_back(up);

  // Inward perturbations, searched along x = 1 + z, y = 1 - z.
  auto witness = [&](const char* name, auto slack, double w) {
    CheckResult c{name, false, std::numeric_limits<double>::infinity(), {}, {}};
    for (double z : open_grid(samples)) {
      const double s = slack(w, 1.0 + z, 1.0 - z);
      if (s < c.worst_margin) c.worst_margin = s, c.witness = Witness::pair(1.0 + z, 1.0 - z);
    }
    c.passed = c.worst_margin < 0.0;
    if (!c.passed) c.note = "no violating pair found; the constant is attained only in a limit";
    return c;
  };
  rep.checks.push_back(witness("mu + delta violates", slack_lower, mu + delta));
  rep.checks.push_back(witness("nu - delta violates", slack_upper, nu - delta));
  return rep;
}

// ---------------------------------------------------------------------------
// Shifted arguments

namespace detail {

// Direction of n-hat on the grid: +1 increasing, -1 decreasing, 0 otherwise.
inline int hat_direction(const SeiffertFunction& n, std::size_t grid) {
  const auto z = open_grid(grid);
  int dir = 0;
  double prev = n.hat_deviation(z[0]);
  for (std::size_t i = 1; i < z.size(); ++i) {
    const double v = n.hat_deviation(z[i]);
    const int d = v > prev ? 1 : (v < prev ? -1 : 0);
    if (d == 0 || (dir != 0 && d != dir)) return 0;
    dir = d;
    prev = v;
  }
  return dir;
}

// z in (0, 1] with n-hat(z) - 1 = dy, by bisection on the hat deviation.
// Values beyond n-hat(1) by rounding only are clamped to 1.
inline std::optional<double> hat_deviation_inverse(const SeiffertFunction& n, int direction,
                                                   double dy) {
  if (dy == 0.0) return 0.0;
  const double at_one = n.hat_deviation(1.0);
  const double s = double(direction);
  if (s * dy <= 0.0) return std::nullopt;
  if (s * dy > s * at_one) {
    if (s * (dy - at_one) <= 1e-14 * std::abs(at_one)) return 1.0;
    return std::nullopt;
  }
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (s * (n.hat_deviation(mid) - dy) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

/// z with n(z)/z = y. Requires n-hat strictly monotone on the grid and y in
/// the closure of its range.
inline double hat_inverse(const SeiffertFunction& n, double y, std::size_t grid = kDefaultGrid) {
  const int dir = detail::hat_direction(n, grid);
  if (dir == 0)
    throw PreconditionError("hat_inverse: " + n.name() + "(z)/z is not strictly monotone");
  const auto z = detail::hat_deviation_inverse(n, dir, y - 1.0);
  if (!z) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "hat_inverse: %.15g outside the range of %s(z)/z", y,
                  n.name().c_str());
    throw PreconditionError(buf);
  }
  return *z;
}

/// Optimal p0, q0 with N_p0 <= M <= N_q0 when A < M < N, or
/// N_q0 <= M <= N_p0 when N < M < A; p0 and q0 are the inf and sup of
/// n-hat^-1(m-hat(z)) / z.
///
/// n-hat may increase or decrease; the note records which held and which
/// case applied.
inline BoundResult shift_bounds(const Mean& m, const Mean& n, const SearchOptions& opt = {}) {
  const Mean a = means::arithmetic();
  const auto am = compare(a, m, opt.grid), mn = compare(m, n, opt.grid);
  const auto ma = compare(m, a, opt.grid), nm = compare(n, m, opt.grid);
  bool above;
  if (am.relation == Relation::less_equal && mn.relation == Relation::less_equal)
    above = true;
  else if (nm.relation == Relation::less_equal && ma.relation == Relation::less_equal)
    above = false;
  else
    throw PreconditionError("shift bounds: need A < " + m.name() + " < " + n.name() + " or " +
                            n.name() + " < " + m.name() + " < A on the grid");

  const SeiffertFunction fm = seiffert_from_mean(m), fn = seiffert_from_mean(n);
  const int dir = detail::hat_direction(fn, opt.grid);
  if (dir == 0)
    throw PreconditionError("shift bounds: " + n.name() + " has non-monotone f(z)/z");

  auto phi = [fm, fn, dir](double z) {
    const auto w = detail::hat_deviation_inverse(fn, dir, fm.hat_deviation(z));
    return w ? *w / z : std::numeric_limits<double>::quiet_NaN();
  };

  std::optional<double> at_zero;
  if (fm.series() && fn.series()) {
    const PowerSeries hm = fm.series()->shift_down(1) - PowerSeries::constant(1.0);
    const PowerSeries hn = fn.series()->shift_down(1) - PowerSeries::constant(1.0);
    const double tol = 1e-14;
    const std::size_t km = hm.valuation(tol), kn = hn.valuation(tol);
    if (km == kn && km <= PowerSeries::kOrder)
      at_zero = std::pow(hm[km] / hn[kn], 1.0 / double(km));
  }
  if (!at_zero) at_zero = richardson_to_zero(phi);

  const SearchResult s = search_extrema(phi, at_zero, detail::finite_at_one(phi), opt);
  BoundResult b;
  b.lower_constant = s.inf.value;
  b.upper_constant = s.sup.value;
  b.lower_extremizer = s.inf.where;
  b.upper_extremizer = s.sup.where;
  b.monotone = s.monotone;
  b.objective_trace = s.trace;
  b.note = std::string(above ? "case A < M < N: N_p0 <= M <= N_q0"
                             : "case N < M < A: N_q0 <= M <= N_p0") +
           "; " + n.name() + "(z)/z " + (dir < 0 ? "decreasing" : "increasing");
  return b;
}

/// Sampled soundness of shift constants (case taken from the note of `b`):
/// both inequalities hold at `samples` pairs, and moving p0 up or q0 down by
/// `delta` yields a violating pair.
inline VerificationReport verify_shift_bounds(const Mean& m, const Mean& n, const BoundResult& b,
                                              std::size_t samples = kCorpusPoints,
                                              double delta = 1e-3) {
  VerificationReport rep{"shift bounds " + m.name(), {}};
  const bool above = b.note.rfind("case A", 0) == 0;
  const double p0 = b.lower_constant, q0 = b.upper_constant;
  // Relative slack of "N_t <= M" (sense +1) or "M <= N_t" (sense -1).
  auto slack = [&](double t, int sense, double x, double y) {
    const double nt = t > 1.0 ? std::numeric_limits<double>::quiet_NaN() : shift_mean(n, t)(x, y);
    return sense * (m(x, y) - nt) / (0.5 * (x + y));
  };
  // Above: N_p0 <= M (sense +1 at p0), M <= N_q0 (sense -1 at q0); below reversed.
  const int sense_p = above ? 1 : -1;
  const int sense_q = -sense_p;
  CheckResult cp{"p0 side holds", true, std::numeric_limits<double>::infinity(), {}, {}};
  CheckResult cq{"q0 side holds", true, std::numeric_limits<double>::infinity(), {}, {}};
  for (const auto& [x, y] : sample_pairs(samples)) {
    const double a = slack(p0, sense_p, x, y), c = slack(q0, sense_q, x, y);
    if (a < cp.worst_margin) cp.worst_margin = a, cp.witness = Witness::pair(x, y);
    if (c < cq.worst_margin) cq.worst_margin = c, cq.witness = Witness::pair(x, y);
  }
  cp.passed = cp.worst_margin >= -1e-9;
  cq.passed = cq.worst_margin >= -1e-9;
  rep.checks.push_back(cp);
  rep.checks.push_back(cq);

  auto witness = [&](const char* name, double t, int sense) {
    CheckResult c{name, false, std::numeric_limits<double>::infinity(), {}, {}};
    if (!(t > 0.0 && t <= 1.0)) {
      c.note = "perturbed constant leaves (0, 1]";
      return c;
    }
    for (double z : open_grid(samples)) {
      const double s = slack(t, sense, 1.0 + z, 1.0 - z);
      if (s < c.worst_margin) c.worst_margin = s, c.witness = Witness::pair(1.0 + z, 1.0 - z);
    }
    c.passed = c.worst_margin < 0.0;
    if (!c.passed) c.note = "no violating pair found; the constant is attained only in a limit";
    return c;
  };
  rep.checks.push_back(witness("p0 + delta violates", p0 + delta, sense_p));
  rep.checks.push_back(witness("q0 - delta violates", q0 - delta, sense_q));
  return rep;
}

}  // namespace seiffert
