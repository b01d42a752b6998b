#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "seiffert/errors.hpp"
#include "seiffert/grid.hpp"
#include "seiffert/power_series.hpp"

namespace seiffert {

/// Below this z the Taylor expansion at 0, when known, replaces direct
/// evaluation of f(z) - z.
inline constexpr double kSeriesCutoff = 0.1;

/// Real function f on (0,1) with z/(1+z) <= f(z) <= z/(1-z).
///
/// Instances are immutable and cheap to copy. Besides the value, a Seiffert
/// function can report its deviation f(z) - z without cancellation, either
/// from an explicit evaluator or from the Taylor expansion at 0. All
/// derived quantities (the hat function f(z)/z and the reciprocal gap
/// 1/f(z) - 1/z) go through the deviation.
class SeiffertFunction {
 public:
  using Eval = std::function<double(double)>;

  SeiffertFunction(std::string name, Eval value, std::optional<PowerSeries> series = {},
                   bool strict = false, Eval deviation = {})
      : impl_(std::make_shared<const Impl>(Impl{std::move(name), std::move(value),
                                                std::move(series), strict,
                                                std::move(deviation)})) {}

  double operator()(double z) const { return impl_->value(z); }

  /// f(z) - z.
  double deviation(double z) const {
    if (impl_->deviation) return impl_->deviation(z);
    if (impl_->series && z <= kSeriesCutoff) {
      const PowerSeries& s = *impl_->series;
      return (s - PowerSeries::identity())(z);
    }
    return impl_->value(z) - z;
  }

  /// f(z)/z.
  double hat(double z) const { return 1.0 + hat_deviation(z); }

  /// f(z)/z - 1.
  double hat_deviation(double z) const { return deviation(z) / z; }

  /// 1/f(z) - 1/z, the image of f under the isometry onto [-1, 1].
  double gap(double z) const {
    const double d = deviation(z);
    const double f = z + d;
    if (!std::isfinite(f)) return -1.0 / z;
    return -d / (z * f);
  }

  const std::string& name() const { return impl_->name; }
  bool strict() const { return impl_->strict; }
  const std::optional<PowerSeries>& series() const { return impl_->series; }

  SeiffertFunction renamed(std::string name) const {
    SeiffertFunction copy = *this;
    auto impl = *impl_;
    impl.name = std::move(name);
    copy.impl_ = std::make_shared<const Impl>(std::move(impl));
    return copy;
  }

 private:
  struct Impl {
    std::string name;
    Eval value;
    std::optional<PowerSeries> series;
    bool strict;
    Eval deviation;
  };
  std::shared_ptr<const Impl> impl_;
};

/// Symmetric, 1-homogeneous function on positive pairs lying between min
/// and max.
///
/// The diagonal M(x, x) = x is answered before the evaluator is invoked.
/// `seiffert_series` optionally carries the Taylor expansion at 0 of the
/// associated Seiffert function z / M(1+z, 1-z).
class Mean {
 public:
  using Eval = std::function<double(double, double)>;

  Mean(std::string name, Eval eval, bool strict,
       std::optional<PowerSeries> seiffert_series = {})
      : impl_(std::make_shared<const Impl>(
            Impl{std::move(name), std::move(eval), strict, std::move(seiffert_series)})) {}

  double operator()(double x, double y) const {
    if (x == y) return x;
    return impl_->eval(x, y);
  }

  const std::string& name() const { return impl_->name; }
  bool strict() const { return impl_->strict; }
  const std::optional<PowerSeries>& seiffert_series() const { return impl_->series; }

  Mean renamed(std::string name) const {
    Mean copy = *this;
    auto impl = *impl_;
    impl.name = std::move(name);
    copy.impl_ = std::make_shared<const Impl>(std::move(impl));
    return copy;
  }

 private:
  struct Impl {
    std::string name;
    Eval eval;
    bool strict;
    std::optional<PowerSeries> series;
  };
  std::shared_ptr<const Impl> impl_;
};

/// Point at which a check attained its worst margin. `y` is NaN when the
/// witness is a single z.
struct Witness {
  double x = std::numeric_limits<double>::quiet_NaN();
  double y = std::numeric_limits<double>::quiet_NaN();

  static Witness at(double z) { return {z, std::numeric_limits<double>::quiet_NaN()}; }
  static Witness pair(double x, double y) { return {x, y}; }
  bool is_pair() const { return !std::isnan(y); }

  std::string describe() const {
    char buf[96];
    if (std::isnan(x)) return "-";
    if (is_pair())
      std::snprintf(buf, sizeof buf, "(%.15g, %.15g)", x, y);
    else
      std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
  }
};

struct CheckResult {
  std::string name;
  bool passed = true;
  /// Convention per check; for inequality checks the smallest slack, so a
  /// negative value is a violation.
  double worst_margin = 0.0;
  Witness witness;
  std::string note;
};

struct VerificationReport {
  std::string subject;
  std::vector<CheckResult> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
  }

  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

namespace detail {

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// Absolute rounding allowance for values of magnitude ~z.
inline double rounding_allowance(double z) {
  return 8.0 * std::numeric_limits<double>::epsilon() * z;
}

}  // namespace detail

/// Sampled band check of a Seiffert function.
///
/// Margins are normalised by z^2, the natural scale of f(z) - z/(1 +- z)
/// near 0. Both bounds allow a rounding slack of a few ulps of z, since a
/// function can touch the band to high order (a long truncated geometric
/// series is z/(1-z) in double precision). Also checks
/// the normalisation f(z)/z -> 1 at z = 1e-6.
inline VerificationReport check_seiffert(const SeiffertFunction& f,
                                         std::size_t grid = kDefaultGrid,
                                         double eps = kOpenEps) {
  VerificationReport rep{f.name(), {}};
  CheckResult lower{"band_lower", true, std::numeric_limits<double>::infinity(), {}, {}};
  CheckResult upper{"band_upper", true, std::numeric_limits<double>::infinity(), {}, {}};
  for (double z : open_grid(grid, eps)) {
    const double d = f.deviation(z);
    const double z2 = z * z;
    const double lo = d + z2 / (1.0 + z);  // f - z/(1+z)
    const double hi = z2 / (1.0 - z) - d;  // z/(1-z) - f
    const double lo_n = lo / z2, hi_n = hi / z2;
    if (std::isnan(lo) || std::isnan(hi)) {
      lower.passed = upper.passed = false;
      lower.note = "non-finite value";
      lower.witness = Witness::at(z);
      continue;
    }
    if (lo_n < lower.worst_margin) {
      lower.worst_margin = lo_n;
      lower.witness = Witness::at(z);
    }
    if (hi_n < upper.worst_margin) {
      upper.worst_margin = hi_n;
      upper.witness = Witness::at(z);
    }
    const double tol = detail::rounding_allowance(z);
    if (lo < -tol) lower.passed = false;
    if (hi < -tol) upper.passed = false;
  }
  rep.checks.push_back(lower);
  rep.checks.push_back(upper);

  const double z0 = 1e-6;
  const double lim = std::abs(f.hat_deviation(z0));
  rep.checks.push_back({"limit_ratio", lim < 1e-3, 1e-3 - lim, Witness::at(z0), {}});
  return rep;
}

/// First witness of a band violation, or nullopt.
inline std::optional<double> band_violation(const SeiffertFunction& f,
                                            std::size_t grid = kDefaultGrid) {
  const auto rep = check_seiffert(f, grid);
  for (const auto& c : rep.checks)
    if (!c.passed) return c.witness.x;
  return std::nullopt;
}

/// The mean S_f(x, y) = |x - y| / (2 f(|x - y| / (x + y))), S_f(x, x) = x.
///
/// Throws BandViolation when f fails the sampled band check.
inline Mean mean_from_seiffert(const SeiffertFunction& f, std::size_t check_grid = 256) {
  if (auto w = band_violation(f, check_grid)) {
    throw BandViolation("mean_from_seiffert: '" + f.name() +
                            "' leaves the Seiffert band near z = " + std::to_string(*w),
                        *w);
  }
  const auto series = f.series();
  auto eval = [f, series](double x, double y) {
    const double diff = std::abs(x - y);
    const double sum = x + y;
    const double z = diff / sum;
    if (z < kOpenEps && series) {
      // M = A / (f(z)/z) with f(z)/z from the expansion.
      return 0.5 * sum / (series->shift_down(1))(z);
    }
    return diff / (2.0 * f(z));
  };
  return Mean("S[" + f.name() + "]", eval, f.strict(), series);
}

/// The Seiffert function f_M(z) = z / M(1 + z, 1 - z).
inline SeiffertFunction seiffert_from_mean(const Mean& m) {
  const auto series = m.seiffert_series();
  auto value = [m](double z) { return z / m(1.0 + z, 1.0 - z); };
  auto deviation = [m, series](double z) {
    if (series && z <= kSeriesCutoff) return (*series - PowerSeries::identity())(z);
    const double mz = m(1.0 + z, 1.0 - z);
    return z * (1.0 - mz) / mz;
  };
  return SeiffertFunction("f_" + m.name(), value, series, m.strict(), deviation);
}

/// Sampled symmetry, homogeneity and betweenness of a mean.
///
/// Relative tolerance 1e-12 for the first two; betweenness allows the same
/// relative rounding slack and, for strict means, requires the strict
/// inequalities whenever x and y differ.
inline VerificationReport validate_mean(const Mean& m, std::size_t samples = kDefaultSamples) {
  if (samples < 1) throw PreconditionError("validate_mean: samples must be >= 1");
  constexpr double tol = 1e-12;
  VerificationReport rep{m.name(), {}};
  CheckResult sym{"symmetry", true, 0.0, {}, {}};
  CheckResult hom{"homogeneity", true, 0.0, {}, {}};
  CheckResult bet{"betweenness", true, 0.0, {}, {}};
  CheckResult strict{"strict_betweenness", true, 0.0, {}, {}};
  double worst_strict = std::numeric_limits<double>::infinity();

  for (auto [x, y] : sample_pairs(samples)) {
    const double v = m(x, y);
    const double s = detail::rel_diff(v, m(y, x));
    if (!(s <= sym.worst_margin)) {
      sym.worst_margin = std::isnan(s) ? std::numeric_limits<double>::infinity() : s;
      sym.witness = Witness::pair(x, y);
    }
    for (double lambda : {1e-3, 1.0, 1e3}) {
      const double h = detail::rel_diff(m(lambda * x, lambda * y), lambda * v);
      if (!(h <= hom.worst_margin)) {
        hom.worst_margin = std::isnan(h) ? std::numeric_limits<double>::infinity() : h;
        hom.witness = Witness::pair(x, y);
      }
    }
    const double lo = std::min(x, y), hi = std::max(x, y);
    const double viol = std::max({lo - v, v - hi, 0.0}) / hi;
    if (!(viol <= bet.worst_margin)) {
      bet.worst_margin = std::isnan(viol) ? std::numeric_limits<double>::infinity() : viol;
      bet.witness = Witness::pair(x, y);
    }
    if (m.strict() && x != y) {
      const double slack = std::min(v - lo, hi - v) / hi;
      if (!(slack >= worst_strict)) {
        worst_strict = std::isnan(slack) ? -std::numeric_limits<double>::infinity() : slack;
        strict.witness = Witness::pair(x, y);
      }
    }
  }
  sym.passed = sym.worst_margin <= tol;
  hom.passed = hom.worst_margin <= tol;
  bet.passed = bet.worst_margin <= tol;
  rep.checks.push_back(sym);
  rep.checks.push_back(hom);
  rep.checks.push_back(bet);
  if (m.strict()) {
    strict.worst_margin = worst_strict;
    strict.passed = worst_strict > 0.0;
    rep.checks.push_back(strict);
  }
  return rep;
}

/// Both round-trip identities: f_{S_f} = f on a z-grid and S_{f_M} = M on
/// sampled pairs, each as a sup of relative deviations.
///
/// The z-grid is dyadic (i / 2^k with 2^k > grid), so the pair (1+z, 1-z)
/// is exact. Elsewhere rounding 1+z alone perturbs z by an ulp, which f
/// amplifies by z f'/f, unbounded near 1 when f(1) is infinite.
inline VerificationReport roundtrip_check(const SeiffertFunction& f, const Mean& m,
                                          std::size_t grid = 1000,
                                          double tol = 1e-12) {
  VerificationReport rep{f.name() + " / " + m.name(), {}};

  const Mean sf = mean_from_seiffert(f);
  const SeiffertFunction back = seiffert_from_mean(sf);
  CheckResult fr{"seiffert_roundtrip", true, 0.0, {}, {}};
  std::size_t denom = 2;
  while (denom <= grid) denom *= 2;
  for (std::size_t i = 1; i < denom; ++i) {
    const double z = double(i) / double(denom);
    const double d = detail::rel_diff(back(z), f(z));
    if (!(d <= fr.worst_margin)) {
      fr.worst_margin = std::isnan(d) ? std::numeric_limits<double>::infinity() : d;
      fr.witness = Witness::at(z);
    }
  }
  fr.passed = fr.worst_margin < tol;

  const Mean again = mean_from_seiffert(seiffert_from_mean(m));
  CheckResult mr{"mean_roundtrip", true, 0.0, {}, {}};
  for (auto [x, y] : sample_pairs(grid)) {
    const double d = std::abs(again(x, y) - m(x, y)) / std::max(x, y);
    if (!(d <= mr.worst_margin)) {
      mr.worst_margin = std::isnan(d) ? std::numeric_limits<double>::infinity() : d;
      mr.witness = Witness::pair(x, y);
    }
  }
  mr.passed = mr.worst_margin < tol;

  rep.checks.push_back(fr);
  rep.checks.push_back(mr);
  return rep;
}

}  // namespace seiffert
