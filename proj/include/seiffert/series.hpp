#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "seiffert/core.hpp"
#include "seiffert/errors.hpp"
#include "seiffert/power_series.hpp"

namespace seiffert {

/// Which power-series criterion a coefficient sequence a_1, a_2, ... is read
/// under. The sign pattern of the resulting function depends on the kind:
///
///   general             f = z + sum_{n>=2} a_n z^n
///   alternating_convex  f = z + sum_{n>=2} (-1)^(n+1) a_n z^n
///   odd_alternating     f = z - a_1 z^3 + sum_{n>=2} (-1)^n a_n z^(2n+1)
///   cubic               f = z + a z^3   (single parameter a = a_1)
enum class SeriesKind { general, alternating_convex, odd_alternating, cubic };

inline const char* to_string(SeriesKind k) {
  switch (k) {
    case SeriesKind::general: return "general";
    case SeriesKind::alternating_convex: return "alternating_convex";
    case SeriesKind::odd_alternating: return "odd_alternating";
    case SeriesKind::cubic: return "cubic";
  }
  return "?";
}

inline std::optional<SeriesKind> parse_series_kind(const std::string& s) {
  if (s == "general") return SeriesKind::general;
  if (s == "alternating_convex" || s == "alternating") return SeriesKind::alternating_convex;
  if (s == "odd_alternating" || s == "odd") return SeriesKind::odd_alternating;
  if (s == "cubic") return SeriesKind::cubic;
  return std::nullopt;
}

/// A coefficient sequence rejected by its kind's hypotheses.
class SeriesRejected : public PreconditionError {
 public:
  SeriesRejected(const std::string& what, std::size_t index)
      : PreconditionError(what), index_(index) {}
  /// 1-based index of the first offending coefficient.
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Coefficients a_n (n >= 1) supplied by a rule up to `max_index`.
struct SeriesSpec {
  static constexpr std::size_t kDefaultTruncation = 64;

  SeriesKind kind = SeriesKind::general;
  std::function<double(std::size_t)> rule;
  std::size_t max_index = 0;
  /// Number of coefficients a_1..a_N summed when evaluating.
  std::size_t truncation = kDefaultTruncation;
  std::string name;

  static SeriesSpec from_coefficients(SeriesKind kind, std::vector<double> a,
                                      std::string name = {}) {
    SeriesSpec s;
    s.kind = kind;
    s.max_index = a.size();
    s.truncation = a.size();
    s.rule = [a = std::move(a)](std::size_t n) { return a.at(n - 1); };
    s.name = std::move(name);
    return s;
  }

  static SeriesSpec from_rule(SeriesKind kind, std::function<double(std::size_t)> rule,
                              std::size_t max_index, std::size_t truncation = kDefaultTruncation,
                              std::string name = {}) {
    SeriesSpec s;
    s.kind = kind;
    s.rule = std::move(rule);
    s.max_index = max_index;
    s.truncation = std::min(truncation, max_index);
    s.name = std::move(name);
    return s;
  }

  static SeriesSpec cubic(double a) {
    SeriesSpec s = from_coefficients(SeriesKind::cubic, {a});
    char buf[64];
    std::snprintf(buf, sizeof buf, "z%+.15gz^3", a);
    s.name = buf;
    return s;
  }

  std::size_t terms() const { return std::min(truncation, max_index); }

  double coefficient(std::size_t n) const { return rule(n); }

  /// Power of z multiplied by a_n.
  std::size_t power_of(std::size_t n) const {
    switch (kind) {
      case SeriesKind::odd_alternating: return 2 * n + 1;
      case SeriesKind::cubic: return 3;
      default: return n;
    }
  }

  /// Signed coefficient of z^power_of(n) in f.
  double signed_term(std::size_t n) const {
    const double a = rule(n);
    switch (kind) {
      case SeriesKind::general: return a;
      case SeriesKind::alternating_convex: return n % 2 == 1 ? a : -a;
      case SeriesKind::odd_alternating:
        if (n == 1) return -a;
        return n % 2 == 0 ? a : -a;
      case SeriesKind::cubic: return a;
    }
    return a;
  }

  /// Bound on |f - truncated f| at z.
  ///
  /// Alternating kinds with monotone coefficients are bounded by the first
  /// omitted term; the general kind by the geometric tail of a_n <= 1.
  double tail_bound(double z) const {
    const std::size_t n = terms();
    if (kind == SeriesKind::cubic || n >= max_index) return 0.0;
    switch (kind) {
      case SeriesKind::general: return std::pow(z, double(n + 1)) / (1.0 - z);
      default: return std::abs(rule(n + 1)) * std::pow(z, double(power_of(n + 1)));
    }
  }
};

namespace detail {

inline bool le(double a, double b) { return a <= b + 1e-15 * std::max(std::abs(a), std::abs(b)); }

// First failing hypothesis for `kind`, as (index, reason). Index 0 means pass.
inline std::pair<std::size_t, std::string> first_failure(SeriesKind kind,
                                                         const std::function<double(std::size_t)>& a,
                                                         std::size_t count) {
  auto fmt = [](const char* tmpl, std::size_t n) {
    char buf[128];
    std::snprintf(buf, sizeof buf, tmpl, n, n - 1);
    return std::string(buf);
  };
  if (count == 0) return {1, "empty coefficient list"};
  switch (kind) {
    case SeriesKind::general:
      if (a(1) != 1.0) return {1, "a1 must equal 1"};
      for (std::size_t n = 2; n <= count; ++n) {
        if (a(n) < 0.0) return {n, fmt("a%zu < 0", n)};
        if (a(n) > 1.0) return {n, fmt("a%zu > 1", n)};
      }
      return {0, {}};
    case SeriesKind::alternating_convex:
      if (a(1) != 1.0) return {1, "a1 must equal 1"};
      for (std::size_t n = 2; n <= count; ++n) {
        if (a(n) < 0.0) return {n, fmt("a%zu < 0", n)};
        if (!le(a(n), a(n - 1))) return {n, fmt("a%zu > a%zu (not non-increasing)", n)};
        if (n + 1 <= count && !le(2.0 * a(n), a(n - 1) + a(n + 1)))
          return {n, fmt("2 a%zu > a%zu + a_next (not convex)", n)};
      }
      return {0, {}};
    case SeriesKind::odd_alternating:
      if (a(1) < 0.0) return {1, "a1 < 0"};
      if (a(1) > 0.5) return {1, "a1 > 1/2"};
      for (std::size_t n = 2; n <= count; ++n) {
        if (a(n) < 0.0) return {n, fmt("a%zu < 0", n)};
        if (n == 2 && a(n) > 1.0) return {n, fmt("a%zu > 1", n)};
        if (n > 2 && !le(a(n), a(n - 1))) return {n, fmt("a%zu > a%zu (not non-increasing)", n)};
      }
      return {0, {}};
    case SeriesKind::cubic:
      if (count != 1) return {2, "cubic kind takes exactly one coefficient"};
      if (a(1) < -0.5) return {1, "a < -1/2"};
      if (a(1) > 0.5) return {1, "a > 1/2"};
      return {0, {}};
  }
  return {0, {}};
}

}  // namespace detail

/// Taylor head (powers 0..PowerSeries::kOrder) of the function described by
/// `spec`, independent of its truncation.
inline PowerSeries series_head(const SeriesSpec& spec) {
  PowerSeries s = PowerSeries::identity();
  for (std::size_t n = 1; n <= spec.max_index; ++n) {
    const std::size_t p = spec.power_of(n);
    if (p > PowerSeries::kOrder) break;
    if (spec.kind != SeriesKind::general && spec.kind != SeriesKind::alternating_convex) {
      s[p] += spec.signed_term(n);
    } else if (n >= 2) {
      s[p] += spec.signed_term(n);
    }
  }
  return s;
}

/// Seiffert function defined by a power series whose coefficients satisfy
/// one of the series criteria.
///
/// The coefficients are checked against the kind's hypotheses (throwing
/// SeriesRejected with the first offending index), the truncated series is
/// wrapped with its Taylor head, and band membership is spot-checked on a
/// 256-point grid.
inline SeiffertFunction build_series_seiffert(const SeriesSpec& spec) {
  const std::size_t checked = spec.max_index;
  if (auto [idx, why] = detail::first_failure(spec.kind, spec.rule, checked); idx != 0)
    throw SeriesRejected(std::string("series (") + to_string(spec.kind) + "): " + why, idx);

  // (power, signed coefficient) pairs beyond the linear term.
  std::vector<std::pair<std::size_t, double>> terms;
  for (std::size_t n = 1; n <= spec.terms(); ++n) {
    const bool linear_term = (spec.kind == SeriesKind::general ||
                              spec.kind == SeriesKind::alternating_convex) && n == 1;
    if (linear_term) continue;
    terms.emplace_back(spec.power_of(n), spec.signed_term(n));
  }
  const std::size_t max_power = terms.empty() ? 1 : terms.back().first;
  std::vector<double> by_power(max_power + 1, 0.0);
  for (auto [p, c] : terms) by_power[p] += c;

  auto deviation = [by_power](double z) {
    double acc = 0.0;
    for (std::size_t k = by_power.size(); k-- > 2;) acc = acc * z + by_power[k];
    return acc * z * z;
  };
  auto value = [deviation](double z) { return z + deviation(z); };

  std::string name = spec.name.empty() ? std::string("series:") + to_string(spec.kind) : spec.name;
  SeiffertFunction f(name, value, series_head(spec), true, deviation);
  if (auto w = band_violation(f, 256))
    throw BandViolation("series '" + name + "' leaves the band near z = " + std::to_string(*w), *w);
  return f;
}

/// Outcome of classify_series.
struct SeriesClassification {
  std::optional<SeriesKind> kind;
  std::string reason;
};

/// First criterion whose hypotheses the coefficient list satisfies.
///
/// Without a hint the kinds are tried in the order alternating_convex,
/// odd_alternating, general: the alternating reading is preferred for
/// sequences that would also satisfy the general criterion.
inline SeriesClassification classify_series(const std::vector<double>& a,
                                            std::optional<SeriesKind> hint = {}) {
  auto rule = [&a](std::size_t n) { return n <= a.size() ? a[n - 1] : 0.0; };
  if (hint) {
    auto [idx, why] = detail::first_failure(*hint, rule, a.size());
    if (idx == 0) return {hint, {}};
    return {std::nullopt, std::string(to_string(*hint)) + ": " + why};
  }
  std::string reasons;
  for (SeriesKind k :
       {SeriesKind::alternating_convex, SeriesKind::odd_alternating, SeriesKind::general}) {
    auto [idx, why] = detail::first_failure(k, rule, a.size());
    if (idx == 0) return {k, {}};
    if (!reasons.empty()) reasons += "; ";
    reasons += std::string(to_string(k)) + ": " + why;
  }
  return {std::nullopt, reasons};
}

/// Named coefficient rules a_n (n >= 1) for rule-generated specs.
inline std::optional<std::pair<SeriesKind, std::function<double(std::size_t)>>> series_rule(
    const std::string& name) {
  using Rule = std::function<double(std::size_t)>;
  auto fact = [](std::size_t k) {
    double f = 1.0;
    for (std::size_t i = 2; i <= k; ++i) f *= double(i);
    return f;
  };
  auto make = [](SeriesKind k, Rule r) { return std::optional{std::pair{k, std::move(r)}}; };
  if (name == "harmonic" || name == "log1p")
    return make(SeriesKind::alternating_convex, [](std::size_t n) { return 1.0 / double(n); });
  if (name == "log1p_r1")
    return make(SeriesKind::alternating_convex, [](std::size_t n) { return 2.0 / double(n + 1); });
  if (name == "log1p_r2")
    return make(SeriesKind::alternating_convex, [](std::size_t n) { return 3.0 / double(n + 2); });
  if (name == "sin")
    return make(SeriesKind::odd_alternating, [fact](std::size_t n) { return 1.0 / fact(2 * n + 1); });
  if (name == "sin_r1")
    return make(SeriesKind::odd_alternating, [fact](std::size_t n) { return 6.0 / fact(2 * n + 3); });
  if (name == "sin_r2")
    return make(SeriesKind::odd_alternating,
                [fact](std::size_t n) { return 120.0 / fact(2 * n + 5); });
  if (name == "cos_r1")
    return make(SeriesKind::odd_alternating, [fact](std::size_t n) { return 2.0 / fact(2 * n + 2); });
  if (name == "cos_r2")
    return make(SeriesKind::odd_alternating,
                [fact](std::size_t n) { return 24.0 / fact(2 * n + 4); });
  if (name == "ones" || name == "geometric")
    return make(SeriesKind::general, [](std::size_t) { return 1.0; });
  if (name == "exp")
    return make(SeriesKind::general, [fact](std::size_t n) { return 1.0 / fact(n); });
  return std::nullopt;
}

inline std::vector<std::string> series_rule_names() {
  return {"harmonic", "log1p_r1", "log1p_r2", "sin",  "sin_r1", "sin_r2",
          "cos_r1",   "cos_r2",   "ones",     "exp"};
}

/// The power-series examples
///
///   log(1+z), 2(z - log(1+z))/z, 3(log(1+z) - z + z^2/2)/z^2,
///   sin z, 6(z - sin z)/z^2, 120(sin z - z + z^3/6)/z^4,
///   2(1 - cos z)/z, 24(cos z - 1 + z^2/2)/z^3.
///
/// The logarithmic ones use the closed form from z = 0.1 on and the
/// expansion below. The trigonometric ones cancel badly in closed form
/// well beyond 0.1 while their series converge factorially, so they are
/// summed as series on the whole interval.
inline std::vector<SeiffertFunction> remainder_series_functions() {
  struct Entry {
    const char* name;
    const char* rule;
    double (*closed)(double);
  };
  static const Entry entries[] = {
      {"log(1+z)", "log1p", [](double z) { return std::log1p(z); }},
      {"2(z-log(1+z))/z", "log1p_r1", [](double z) { return 2.0 * (z - std::log1p(z)) / z; }},
      {"3(log(1+z)-z+z^2/2)/z^2", "log1p_r2",
       [](double z) { return 3.0 * (std::log1p(z) - z + 0.5 * z * z) / (z * z); }},
      {"sin z", "sin", nullptr},
      {"6(z-sin z)/z^2", "sin_r1", nullptr},
      {"120(sin z-z+z^3/6)/z^4", "sin_r2", nullptr},
      {"2(1-cos z)/z", "cos_r1", nullptr},
      {"24(cos z-1+z^2/2)/z^3", "cos_r2", nullptr},
  };
  std::vector<SeiffertFunction> out;
  for (const auto& e : entries) {
    auto [kind, rule] = *series_rule(e.rule);
    if (!e.closed) {
      out.push_back(build_series_seiffert(SeriesSpec::from_rule(kind, rule, 24, 24, e.name)));
      continue;
    }
    const PowerSeries head = series_head(SeriesSpec::from_rule(kind, rule, 200));
    auto closed = e.closed;
    auto value = [closed, head](double z) { return z <= kSeriesCutoff ? head(z) : closed(z); };
    out.emplace_back(e.name, value, head, true);
  }
  return out;
}

}  // namespace seiffert
