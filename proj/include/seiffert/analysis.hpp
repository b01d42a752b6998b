#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "seiffert/catalog.hpp"
#include "seiffert/core.hpp"
#include "seiffert/errors.hpp"
#include "seiffert/grid.hpp"
#include "seiffert/series.hpp"
#include "seiffert/transform.hpp"

namespace seiffert {

// ---------------------------------------------------------------------------
// Comparison

enum class Relation { less_equal, greater_equal, incomparable, indistinguishable };

inline const char* to_string(Relation r) {
  switch (r) {
    case Relation::less_equal: return "<=";
    case Relation::greater_equal: return ">=";
    case Relation::incomparable: return "incomparable";
    case Relation::indistinguishable: return "indistinguishable";
  }
  return "?";
}

struct ComparisonVerdict {
  Relation relation = Relation::indistinguishable;
  /// Smallest normalised slack of the reported relation (for incomparable
  /// verdicts, the larger of the two opposite excursions, negated).
  double worst_margin = 0.0;
  /// Point of worst margin; for incomparable verdicts the point where
  /// f_M > f_N most.
  Witness witness;
  /// For incomparable verdicts, the point where f_M < f_N most.
  Witness second_witness;
};

/// Default relative tolerance below which f_M and f_N count as equal.
inline constexpr double kCompareTol = 1e-13;

/// Order of two Seiffert functions read as an order of their means:
/// f >= g on the grid means S_f <= S_g.
inline ComparisonVerdict compare(const SeiffertFunction& f, const SeiffertFunction& g,
                                 std::size_t grid_size = kDefaultGrid, double tol = kCompareTol) {
  double most_pos = 0.0, most_neg = 0.0;
  double min_pos = std::numeric_limits<double>::infinity();
  double min_neg = std::numeric_limits<double>::infinity();
  Witness at_pos, at_neg, at_min_pos, at_min_neg;
  bool any_pos = false, any_neg = false;
  for (double z : open_grid(grid_size)) {
    // f - g through the deviations, so close functions keep their digits.
    const double diff = f.deviation(z) - g.deviation(z);
    const double r = diff / z;
    if (r > tol) {
      any_pos = true;
      if (r > most_pos) most_pos = r, at_pos = Witness::at(z);
      if (r < min_pos) min_pos = r, at_min_pos = Witness::at(z);
    } else if (r < -tol) {
      any_neg = true;
      if (-r > most_neg) most_neg = -r, at_neg = Witness::at(z);
      if (-r < min_neg) min_neg = -r, at_min_neg = Witness::at(z);
    }
  }
  ComparisonVerdict v;
  if (any_pos && any_neg) {
    v.relation = Relation::incomparable;
    v.worst_margin = -std::min(most_pos, most_neg);
    v.witness = at_pos;
    v.second_witness = at_neg;
  } else if (any_pos) {
    v.relation = Relation::less_equal;
    v.worst_margin = min_pos;
    v.witness = at_min_pos;
  } else if (any_neg) {
    v.relation = Relation::greater_equal;
    v.worst_margin = min_neg;
    v.witness = at_min_neg;
  }
  return v;
}

/// Order of two means through their Seiffert functions: M <= N exactly when
/// f_M >= f_N.
inline ComparisonVerdict compare(const Mean& m, const Mean& n,
                                 std::size_t grid_size = kDefaultGrid, double tol = kCompareTol) {
  return compare(seiffert_from_mean(m), seiffert_from_mean(n), grid_size, tol);
}

// ---------------------------------------------------------------------------
// Schur convexity

enum class SchurClass { schur_convex, schur_concave, affine, neither };

inline const char* to_string(SchurClass c) {
  switch (c) {
    case SchurClass::schur_convex: return "schur_convex";
    case SchurClass::schur_concave: return "schur_concave";
    case SchurClass::affine: return "affine";
    case SchurClass::neither: return "neither";
  }
  return "?";
}

struct SchurVerdict {
  SchurClass classification = SchurClass::neither;
  bool strict = false;
  /// Largest step of f(z)/z against the reported direction (for `neither`,
  /// the smaller of the two directions' defects).
  double worst_monotonicity_defect = 0.0;
  Witness witness;
};

/// Schur class of S_f from the monotonicity of f(z)/z: decreasing means
/// Schur-convex, increasing Schur-concave, constant affine.
///
/// Consecutive differences of f(z)/z - 1 within a few ulps count as flat.
inline SchurVerdict schur_classify(const SeiffertFunction& f,
                                   std::size_t grid_size = kDefaultGrid) {
  const auto z = open_grid(grid_size);
  std::vector<double> h(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) h[i] = f.hat_deviation(z[i]);
  double up = 0.0, down = 0.0;
  Witness up_at, down_at;
  std::size_t flat = 0;
  for (std::size_t i = 1; i < h.size(); ++i) {
    const double d = h[i] - h[i - 1];
    const double tol = 4.0 * std::numeric_limits<double>::epsilon() *
                       (1.0 + std::max(std::abs(h[i]), std::abs(h[i - 1])));
    if (d > tol) {
      if (d > up) up = d, up_at = Witness::at(z[i]);
    } else if (d < -tol) {
      if (-d > down) down = -d, down_at = Witness::at(z[i]);
    } else {
      ++flat;
    }
  }
  SchurVerdict v;
  if (up == 0.0 && down == 0.0) {
    v.classification = SchurClass::affine;
  } else if (up == 0.0) {
    v.classification = SchurClass::schur_convex;
    v.strict = flat == 0;
  } else if (down == 0.0) {
    v.classification = SchurClass::schur_concave;
    v.strict = flat == 0;
  } else {
    v.classification = SchurClass::neither;
    v.worst_monotonicity_defect = std::min(up, down);
    v.witness = up < down ? up_at : down_at;
  }
  return v;
}

inline SchurVerdict schur_classify(const Mean& m, std::size_t grid_size = kDefaultGrid) {
  return schur_classify(seiffert_from_mean(m), grid_size);
}

// ---------------------------------------------------------------------------
// Inequality corpora

/// Points per corpus check.
inline constexpr std::size_t kCorpusPoints = 10000;

inline std::vector<std::string> corpus_names() {
  return {"lemma3", "lemma4", "lemma5", "grid_above_A", "grid_below_A", "sin_bound"};
}

namespace detail {

// Check lo(t) < hi(t) at every point, with the slack (hi - lo)/t^3 as the
// margin (t^3 is the order of contact of the odd functions involved).
inline CheckResult strict_less(const std::string& name, const std::vector<double>& grid,
                               const std::function<double(double)>& slack) {
  CheckResult c{name, true, std::numeric_limits<double>::infinity(), {}, {}};
  for (double t : grid) {
    const double m = slack(t) / (t * t * t);
    if (!(m > 0.0)) c.passed = false;
    if (!(m >= c.worst_margin)) {
      c.worst_margin = std::isnan(m) ? -std::numeric_limits<double>::infinity() : m;
      c.witness = Witness::at(t);
    }
  }
  return c;
}

// f < g through deviations.
inline CheckResult below(const SeiffertFunction& f, const SeiffertFunction& g,
                         const std::vector<double>& grid, const std::string& suffix = {}) {
  return strict_less(f.name() + " < " + g.name() + suffix, grid,
                     [&f, &g](double t) { return g.deviation(t) - f.deviation(t); });
}

// Each function in `chain` below the next.
inline void chain(VerificationReport& rep, const std::vector<SeiffertFunction>& fs,
                  const std::vector<double>& grid, const std::string& suffix = {}) {
  for (std::size_t i = 0; i + 1 < fs.size(); ++i)
    rep.checks.push_back(below(fs[i], fs[i + 1], grid, suffix));
}

inline std::string on_interval(double a, double b) {
  char buf[64];
  std::snprintf(buf, sizeof buf, " on (%.6g, %.6g)", a, b);
  return buf;
}

inline VerificationReport corpus_lemma3(std::size_t n) {
  using namespace functions;
  VerificationReport rep{"lemma3", {}};
  // t > arsinh t > arctan t > tanh t > t/(1+t) for t > 0.
  chain(rep, {of_max(), tanh(), atan(), asinh(), identity()}, interior_grid(n, 0.0, 10.0),
        on_interval(0, 10));
  rep.checks.push_back(
      below(sin(), asinh(), interior_grid(n, 0.0, M_PI / 2), on_interval(0, M_PI / 2)));
  rep.checks.push_back(below(atan(), sin(), interior_grid(n), on_interval(0, 1)));
  return rep;
}

inline VerificationReport corpus_lemma4(std::size_t n) {
  using namespace functions;
  VerificationReport rep{"lemma4", {}};
  const auto grid = interior_grid(n);
  chain(rep, {identity(), sinh(), tan(), atanh(), of_min()}, grid);
  chain(rep, {sinh(), asin(), atanh()}, grid);
  // arcsin and tan are not comparable.
  const auto v = compare(asin(), tan(), n);
  CheckResult c{"asin, tan incomparable", v.relation == Relation::incomparable, v.worst_margin,
                v.witness, "second witness " + v.second_witness.describe()};
  rep.checks.push_back(c);
  return rep;
}

inline VerificationReport corpus_lemma5(std::size_t n) {
  VerificationReport rep{"lemma5", {}};
  const auto grid = interior_grid(n);
  const auto asin = functions::asin(), tan = functions::tan();
  // q = arcsin - tan changes sign exactly once, at t ~ 0.99990601, which
  // lies beyond the last point n/(n+1) of the interior grid; the count uses
  // the grid that reaches 1 - eps.
  std::size_t changes = 0;
  double last = 0.0, crossing = std::numeric_limits<double>::quiet_NaN();
  for (double t : open_grid(n)) {
    const double q = asin.deviation(t) - tan.deviation(t);
    if (q == 0.0) continue;
    if (last != 0.0 && (q > 0.0) != (last > 0.0)) {
      ++changes;
      crossing = t;
    }
    last = q;
  }
  char note[96];
  std::snprintf(note, sizeof note, "%zu sign change(s), last near t = %.6f", changes, crossing);
  rep.checks.push_back({"asin - tan changes sign once", changes == 1, double(changes),
                        Witness::at(crossing), note});
  const auto asi1 = family_member("asin", 1), ti1 = family_member("tan", 1);
  rep.checks.push_back(below(asi1, ti1, grid));
  const double u1 = asi1(1.0) - ti1(1.0);
  std::snprintf(note, sizeof note, "u(1) = %.15g", u1);
  rep.checks.push_back({"u(1) < 0", u1 < 0.0, -u1, Witness::at(1.0), note});
  return rep;
}

inline VerificationReport corpus_grid_above(std::size_t n, std::size_t depth = 3) {
  VerificationReport rep{"grid_above_A", {}};
  const auto grid = interior_grid(n);
  const char* rows[] = {"tanh", "atan", "sin", "asinh"};  // increasing f
  for (std::size_t d = 0; d <= depth; ++d) {
    std::vector<SeiffertFunction> col;
    for (const char* r : rows) col.push_back(family_member(r, d));
    col.push_back(functions::identity());
    chain(rep, col, grid);
  }
  for (const char* r : rows)
    for (std::size_t d = 0; d < depth; ++d)
      rep.checks.push_back(below(family_member(r, d), family_member(r, d + 1), grid));
  return rep;
}

inline VerificationReport corpus_grid_below(std::size_t n, std::size_t depth = 3) {
  VerificationReport rep{"grid_below_A", {}};
  const auto grid = interior_grid(n);
  for (std::size_t d = 0; d <= depth; ++d) {
    const auto sh = family_member("sinh", d), as = family_member("asin", d);
    const auto ti = family_member("tan", d), ath = family_member("atanh", d);
    chain(rep, {functions::identity(), sh, as, ath}, grid);
    rep.checks.push_back(below(sh, ti, grid));
    rep.checks.push_back(below(ti, ath, grid));
    if (d >= 1) rep.checks.push_back(below(as, ti, grid));
  }
  for (const char* r : {"sinh", "asin", "tan", "atanh"})
    for (std::size_t d = 0; d < depth; ++d)
      rep.checks.push_back(below(family_member(r, d + 1), family_member(r, d), grid));
  return rep;
}

inline VerificationReport corpus_sin_bound(std::size_t n) {
  VerificationReport rep{"sin_bound", {}};
  const auto grid = interior_grid(n);
  const auto sin = functions::sin();
  const auto cubic = build_series_seiffert(SeriesSpec::cubic(-1.0 / 6.0)).renamed("z-z^3/6");
  // z > sin z > z - z^3/6, i.e. A <= S_sin <= S_cubic.
  chain(rep, {cubic, sin, functions::identity()}, grid);
  // The mean of z - z^3/6 is A 6A^2 / (5A^2 + G^2).
  const Mean m = mean_from_seiffert(cubic);
  CheckResult c{"S[z-z^3/6] = 6A^3/(5A^2+G^2)", true, 0.0, {}, {}};
  for (const auto& [x, y] : sample_pairs(n)) {
    const double a = 0.5 * (x + y), g2 = x * y;
    const double e = rel_diff(m(x, y), 6.0 * a * a * a / (5.0 * a * a + g2));
    if (e > c.worst_margin) c.worst_margin = e, c.witness = Witness::pair(x, y);
  }
  c.passed = c.worst_margin <= 1e-12;
  rep.checks.push_back(c);
  return rep;
}

}  // namespace detail

/// Check a named corpus of inequalities at `points` interior grid points.
/// Strict inequalities must hold with positive margin at every point.
inline VerificationReport verify_corpus(const std::string& name,
                                        std::size_t points = kCorpusPoints) {
  if (name == "lemma3") return detail::corpus_lemma3(points);
  if (name == "lemma4") return detail::corpus_lemma4(points);
  if (name == "lemma5") return detail::corpus_lemma5(points);
  if (name == "grid_above_A") return detail::corpus_grid_above(points);
  if (name == "grid_below_A") return detail::corpus_grid_below(points);
  if (name == "sin_bound") return detail::corpus_sin_bound(points);
  throw PreconditionError("unknown corpus '" + name + "'");
}

// ---------------------------------------------------------------------------
// Combinators

namespace detail {

inline void require_below_arithmetic(const Mean& m, const char* op) {
  for (const auto& [x, y] : sample_pairs(kDefaultSamples)) {
    const double a = 0.5 * (x + y);
    if (m(x, y) > a * (1.0 + 1e-13)) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "%s: '%s' exceeds A at (%.15g, %.15g)", op, m.name().c_str(),
                    x, y);
      throw PreconditionError(buf);
    }
  }
}

}  // namespace detail

/// Seiffert function z [f(t z)/(t z)]^(1/t) of M_t^(1/t) A^(1 - 1/t).
inline SeiffertFunction power_combination(const SeiffertFunction& f, double t) {
  if (!(t > 0.0 && t < 1.0))
    throw PreconditionError("powcomb: t must lie in (0, 1), got " + std::to_string(t));
  std::optional<PowerSeries> series;
  if (f.series()) series = (f.series()->scaled(t) * (1.0 / t)).shift_down(1).pow(1.0 / t).shift_up(1);
  auto deviation = [f, t](double z) {
    return z * std::expm1(std::log1p(f.hat_deviation(t * z)) / t);
  };
  auto value = [deviation](double z) { return z + deviation(z); };
  char name[96];
  std::snprintf(name, sizeof name, "powcomb(%s,%.15g)", f.name().c_str(), t);
  return SeiffertFunction(name, value, series, f.strict(), deviation);
}

/// M_t^(1/t) A^(1 - 1/t) for M <= A and 0 < t < 1.
inline Mean combine_power(const Mean& m, double t) {
  detail::require_below_arithmetic(m, "powcomb");
  char name[96];
  std::snprintf(name, sizeof name, "powcomb(%s,%.15g)", m.name().c_str(), t);
  return mean_from_seiffert(power_combination(seiffert_from_mean(m), t)).renamed(name);
}

/// M_{1/2}^2 / A for M <= A, through g(z) = 4 f(z/2)^2 / z.
inline Mean combine_half_square(const Mean& m) {
  detail::require_below_arithmetic(m, "halfsq");
  const SeiffertFunction f = seiffert_from_mean(m);
  std::optional<PowerSeries> series;
  if (f.series()) {
    const PowerSeries h = f.series()->scaled(0.5);
    series = (h * h * 4.0).shift_down(1);
  }
  // 4 (z/2 + d)^2 / z = z + 4 d + 4 d^2 / z with d = f(z/2) - z/2.
  auto deviation = [f](double z) {
    const double d = f.deviation(0.5 * z);
    return 4.0 * d + 4.0 * d * d / z;
  };
  auto value = [deviation](double z) { return z + deviation(z); };
  const SeiffertFunction g("halfsq(" + f.name() + ")", value, series, f.strict(), deviation);
  return mean_from_seiffert(g).renamed("halfsq(" + m.name() + ")");
}

/// h(z) = K(f(z), g(z)) for a homogeneous K; the mean of h is
/// S_f S_g / K(S_g, S_f). Throws BandViolation when h leaves the band.
inline SeiffertFunction harmonic_weighted_dual(const SeiffertFunction& f,
                                               const SeiffertFunction& g,
                                               std::function<double(double, double)> k,
                                               const std::string& k_name = "K") {
  auto value = [f, g, k](double z) { return k(f(z), g(z)); };
  SeiffertFunction h(k_name + "(" + f.name() + "," + g.name() + ")", value, std::nullopt,
                     f.strict() && g.strict());
  if (auto w = band_violation(h, 256))
    throw BandViolation("harmonic_weighted_dual: '" + h.name() + "' leaves the band near z = " +
                            std::to_string(*w),
                        *w);
  return h;
}

/// Weighted arithmetic K(u, v) = w u + (1 - w) v, with exact deviations.
inline SeiffertFunction weighted_arithmetic_dual(const SeiffertFunction& f,
                                                 const SeiffertFunction& g, double w) {
  if (!(w >= 0.0 && w <= 1.0))
    throw PreconditionError("weight must lie in [0, 1], got " + std::to_string(w));
  std::optional<PowerSeries> series;
  if (f.series() && g.series()) series = *f.series() * w + *g.series() * (1.0 - w);
  auto deviation = [f, g, w](double z) { return w * f.deviation(z) + (1.0 - w) * g.deviation(z); };
  auto value = [deviation](double z) { return z + deviation(z); };
  char name[160];
  std::snprintf(name, sizeof name, "wa(%.15g;%s,%s)", w, f.name().c_str(), g.name().c_str());
  return SeiffertFunction(name, value, series, f.strict() || g.strict(), deviation);
}

}  // namespace seiffert
