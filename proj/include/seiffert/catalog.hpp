#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "seiffert/core.hpp"
#include "seiffert/errors.hpp"
#include "seiffert/power_series.hpp"

namespace seiffert {

namespace detail {

// Seiffert series z / m(z) from the series of m(z) = M(1+z, 1-z).
inline PowerSeries seiffert_series_of_line(const PowerSeries& m) {
  return m.reciprocal().shift_up(1);
}

// ((1+z)^a + (1-z)^a) / 2
inline PowerSeries power_sum(double a) {
  return (PowerSeries::binomial(a, 1.0) + PowerSeries::binomial(a, -1.0)) * 0.5;
}

// ((1+z)^a log(1+z) + (1-z)^a log(1-z)) / 2
inline PowerSeries power_log_sum(double a) {
  const PowerSeries lp = PowerSeries::log1p();
  const PowerSeries lm = lp.scaled(-1.0);
  return (PowerSeries::binomial(a, 1.0) * lp + PowerSeries::binomial(a, -1.0) * lm) * 0.5;
}

}  // namespace detail

namespace means {

inline Mean minimum() {
  return Mean("min", [](double x, double y) { return std::min(x, y); }, false,
              detail::seiffert_series_of_line(PowerSeries{1.0, -1.0}));
}

inline Mean maximum() {
  return Mean("max", [](double x, double y) { return std::max(x, y); }, false,
              detail::seiffert_series_of_line(PowerSeries{1.0, 1.0}));
}

inline Mean arithmetic() {
  return Mean("A", [](double x, double y) { return 0.5 * (x + y); }, true,
              PowerSeries::identity());
}

inline Mean geometric() {
  return Mean("G", [](double x, double y) { return std::sqrt(x) * std::sqrt(y); }, true,
              detail::seiffert_series_of_line(PowerSeries{1.0, 0.0, -1.0}.pow(0.5)));
}

inline Mean harmonic() {
  return Mean("H", [](double x, double y) { return 2.0 * x * (y / (x + y)); }, true,
              detail::seiffert_series_of_line(PowerSeries{1.0, 0.0, -1.0}));
}

inline Mean contraharmonic() {
  return Mean("C", [](double x, double y) { return (x * x + y * y) / (x + y); }, true,
              detail::seiffert_series_of_line(PowerSeries{1.0, 0.0, 1.0}));
}

inline Mean root_mean_square() {
  return Mean("RMS", [](double x, double y) { return std::sqrt(0.5 * (x * x + y * y)); },
              true, detail::seiffert_series_of_line(PowerSeries{1.0, 0.0, 1.0}.pow(0.5)));
}

/// (x^2 + xy + y^2) / (x + sqrt(xy) + y)
inline Mean quotient() {
  const PowerSeries root = PowerSeries{1.0, 0.0, -1.0}.pow(0.5);
  const PowerSeries line = PowerSeries{3.0, 0.0, 1.0} / (PowerSeries::constant(2.0) + root);
  return Mean(
      "Q",
      [](double x, double y) {
        return (x * x + x * y + y * y) / (x + std::sqrt(x) * std::sqrt(y) + y);
      },
      true, detail::seiffert_series_of_line(line));
}

namespace detail {
// |x - y| / (2 g(|x - y| / (x + y))) for an elementary g.
template <class G>
Mean seiffert_type(std::string name, G g, PowerSeries f_series) {
  return Mean(
      std::move(name),
      [g](double x, double y) {
        const double d = std::abs(x - y);
        return d / (2.0 * g(d / (x + y)));
      },
      true, f_series);
}
}  // namespace detail

inline Mean logarithmic() {
  return detail::seiffert_type("L", [](double z) { return std::atanh(z); },
                               PowerSeries::atanh());
}

/// Seiffert's arcsine mean.
inline Mean seiffert_p() {
  return detail::seiffert_type("P", [](double z) { return std::asin(z); },
                               PowerSeries::asin());
}

/// Seiffert's arctangent mean.
inline Mean seiffert_t() {
  return detail::seiffert_type("T", [](double z) { return std::atan(z); },
                               PowerSeries::atan());
}

/// Neuman-Sandor mean.
inline Mean neuman_sandor() {
  return detail::seiffert_type("NS", [](double z) { return std::asinh(z); },
                               PowerSeries::asinh());
}

/// Gini mean ((x^r + y^r) / (x^s + y^s))^(1/(r-s)); for r = s the limit
/// exp((x^r log x + y^r log y) / (x^r + y^r)).
inline Mean gini(double r, double s) {
  char name[64];
  std::snprintf(name, sizeof name, "gini(%.15g,%.15g)", r, s);
  PowerSeries line;
  if (r == s)
    line = (::seiffert::detail::power_log_sum(r) / ::seiffert::detail::power_sum(r)).exp();
  else
    line = (::seiffert::detail::power_sum(r) / ::seiffert::detail::power_sum(s))
               .pow(1.0 / (r - s));
  auto eval = [r, s](double x, double y) {
    // Scale by the larger argument so powers stay in range.
    const double m = std::max(x, y);
    const double a = x / m, b = y / m;
    if (r == s) {
      const double lo = std::min(a, b);
      if (lo == 0.0) return r > 0.0 ? m : 0.0;
      const double ar = std::pow(a, r), br = std::pow(b, r);
      return m * std::exp((ar * std::log(a) + br * std::log(b)) / (ar + br));
    }
    const double num = std::pow(a, r) + std::pow(b, r);
    const double den = std::pow(a, s) + std::pow(b, s);
    return m * std::pow(num / den, 1.0 / (r - s));
  };
  return Mean(name, eval, true, ::seiffert::detail::seiffert_series_of_line(line));
}

/// Power mean ((x^a + y^a) / 2)^(1/a), geometric at a = 0.
inline Mean power(double a) {
  Mean g = gini(a, 0.0);
  char name[64];
  std::snprintf(name, sizeof name, "power(%.15g)", a);
  return g.renamed(name);
}

}  // namespace means

namespace functions {

inline SeiffertFunction identity() {
  return SeiffertFunction(
      "id", [](double z) { return z; }, PowerSeries::identity(), true,
      [](double) { return 0.0; });
}

/// z / (1 + z), the Seiffert function of max.
inline SeiffertFunction of_max() {
  return SeiffertFunction(
      "fmax", [](double z) { return z / (1.0 + z); },
      ::seiffert::detail::seiffert_series_of_line(PowerSeries{1.0, 1.0}), false,
      [](double z) { return -z * z / (1.0 + z); });
}

/// z / (1 - z), the Seiffert function of min.
inline SeiffertFunction of_min() {
  return SeiffertFunction(
      "fmin", [](double z) { return z / (1.0 - z); },
      ::seiffert::detail::seiffert_series_of_line(PowerSeries{1.0, -1.0}), false,
      [](double z) { return z * z / (1.0 - z); });
}

inline SeiffertFunction sin() {
  return {"sin", [](double z) { return std::sin(z); }, PowerSeries::sin(), true};
}
inline SeiffertFunction tan() {
  return {"tan", [](double z) { return std::tan(z); }, PowerSeries::tan(), true};
}
inline SeiffertFunction sinh() {
  return {"sinh", [](double z) { return std::sinh(z); }, PowerSeries::sinh(), true};
}
inline SeiffertFunction tanh() {
  return {"tanh", [](double z) { return std::tanh(z); }, PowerSeries::tanh(), true};
}
inline SeiffertFunction asin() {
  return {"asin", [](double z) { return std::asin(z); }, PowerSeries::asin(), true};
}
inline SeiffertFunction atan() {
  return {"atan", [](double z) { return std::atan(z); }, PowerSeries::atan(), true};
}
inline SeiffertFunction asinh() {
  return {"asinh", [](double z) { return std::asinh(z); }, PowerSeries::asinh(), true};
}
inline SeiffertFunction atanh() {
  return {"atanh", [](double z) { return std::atanh(z); }, PowerSeries::atanh(), true};
}
inline SeiffertFunction log1p() {
  return {"log1p", [](double z) { return std::log1p(z); }, PowerSeries::log1p(), true};
}

/// The eight elementary bases of the iterated integral families, in the
/// order sin, asin, tan, atan, sinh, asinh, tanh, atanh.
inline std::vector<SeiffertFunction> family_bases() {
  return {sin(), asin(), tan(), atan(), sinh(), asinh(), tanh(), atanh()};
}

}  // namespace functions

/// Registry of named means. Every entry passes validate_mean when it is
/// registered.
class MeanCatalog {
 public:
  /// min, max, A, G, H, L, P, T, NS, C, RMS, Q.
  static const MeanCatalog& standard() {
    static const MeanCatalog cat = [] {
      MeanCatalog c;
      for (const Mean& m :
           {means::minimum(), means::maximum(), means::arithmetic(), means::geometric(),
            means::harmonic(), means::logarithmic(), means::seiffert_p(), means::seiffert_t(),
            means::neuman_sandor(), means::contraharmonic(), means::root_mean_square(),
            means::quotient()})
        c.add(m);
      return c;
    }();
    return cat;
  }

  void add(const Mean& m) {
    const auto rep = validate_mean(m);
    if (!rep.passed())
      throw PreconditionError("MeanCatalog: '" + m.name() + "' fails the mean axioms");
    if (entries_.insert_or_assign(m.name(), m).second) order_.push_back(m.name());
  }

  std::optional<Mean> find(const std::string& name) const {
    auto it = entries_.find(name);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  const Mean& at(const std::string& name) const {
    auto it = entries_.find(name);
    if (it == entries_.end()) throw PreconditionError("unknown mean '" + name + "'");
    return it->second;
  }

  std::vector<Mean> all() const {
    std::vector<Mean> out;
    for (const auto& n : order_) out.push_back(entries_.at(n));
    return out;
  }

  /// Names in registration order.
  const std::vector<std::string>& names() const { return order_; }

 private:
  std::map<std::string, Mean> entries_;
  std::vector<std::string> order_;
};

/// Registry of named Seiffert functions. Every entry passes check_seiffert
/// when it is registered.
class SeiffertCatalog {
 public:
  /// id, fmax, fmin, sin, tan, sinh, tanh, asin, atan, asinh, atanh, log1p.
  static const SeiffertCatalog& standard() {
    static const SeiffertCatalog cat = [] {
      SeiffertCatalog c;
      using namespace functions;
      for (const SeiffertFunction& f : {identity(), of_max(), of_min(), sin(), tan(), sinh(),
                                        tanh(), asin(), atan(), asinh(), atanh(), log1p()})
        c.add(f);
      return c;
    }();
    return cat;
  }

  void add(const SeiffertFunction& f) {
    if (!check_seiffert(f).passed())
      throw BandViolation("SeiffertCatalog: '" + f.name() + "' leaves the band",
                          band_violation(f).value_or(0.0));
    if (entries_.insert_or_assign(f.name(), f).second) order_.push_back(f.name());
  }

  std::optional<SeiffertFunction> find(const std::string& name) const {
    auto it = entries_.find(name);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  const SeiffertFunction& at(const std::string& name) const {
    auto it = entries_.find(name);
    if (it == entries_.end())
      throw PreconditionError("unknown Seiffert function '" + name + "'");
    return it->second;
  }

  std::vector<SeiffertFunction> all() const {
    std::vector<SeiffertFunction> out;
    for (const auto& n : order_) out.push_back(entries_.at(n));
    return out;
  }

  /// Names in registration order.
  const std::vector<std::string>& names() const { return order_; }

 private:
  std::map<std::string, SeiffertFunction> entries_;
  std::vector<std::string> order_;
};

}  // namespace seiffert
