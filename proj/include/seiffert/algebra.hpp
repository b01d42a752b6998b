#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>

#include "seiffert/catalog.hpp"
#include "seiffert/core.hpp"
#include "seiffert/errors.hpp"
#include "seiffert/power_series.hpp"

namespace seiffert {

/// Odd continuous bijection (-1, 1) -> R with its inverse.
///
/// The optional series maps act on Taylor heads and let group products keep
/// an expansion at 0.
struct Gauge {
  using Map = std::function<double(double)>;
  using SeriesMap = std::function<PowerSeries(const PowerSeries&)>;

  std::string name;
  Map forward;
  Map inverse;
  SeriesMap forward_series;
  SeriesMap inverse_series;

  /// gamma = artanh, the default.
  static Gauge artanh() {
    return {"artanh", [](double u) { return std::atanh(u); }, [](double y) { return std::tanh(y); },
            [](const PowerSeries& x) {
              // log((1 + x) / (1 - x)) / 2
              return ((PowerSeries::constant(1.0) + x) / (PowerSeries::constant(1.0) - x)).log() *
                     0.5;
            },
            [](const PowerSeries& y) {
              // (e^2y - 1) / (e^2y + 1)
              const PowerSeries e = (y * 2.0).exp();
              return (e - PowerSeries::constant(1.0)) / (e + PowerSeries::constant(1.0));
            }};
  }

  /// gamma(u) = u / (1 - u^2)^(1/2), inverse y / (1 + y^2)^(1/2).
  static Gauge algebraic() {
    return {"algebraic", [](double u) { return u / std::sqrt((1.0 - u) * (1.0 + u)); },
            [](double y) { return y / std::hypot(1.0, y); }, {}, {}};
  }
};

/// Sampled gauge axioms: forward(inverse(y)) = y for |y| <= 5 and oddness
/// on (-1, 1).
inline VerificationReport check_gauge(const Gauge& g, std::size_t samples = 1000) {
  VerificationReport rep{"gauge " + g.name, {}};
  CheckResult inv{"inverse", true, 0.0, {}, {}};
  CheckResult odd{"odd", true, 0.0, {}, {}};
  for (std::size_t i = 1; i < samples; ++i) {
    const double u = -1.0 + 2.0 * double(i) / double(samples);
    const double y = 5.0 * u;
    const double e1 = std::abs(g.forward(g.inverse(y)) - y) / std::max(1.0, std::abs(y));
    const double e2 = std::abs(g.forward(-u) + g.forward(u)) / std::max(1.0, std::abs(g.forward(u)));
    if (e1 > inv.worst_margin) {
      inv.worst_margin = e1;
      inv.witness = Witness::at(y);
    }
    if (e2 > odd.worst_margin) {
      odd.worst_margin = e2;
      odd.witness = Witness::at(u);
    }
  }
  inv.passed = inv.worst_margin <= 1e-12;
  odd.passed = odd.worst_margin <= 1e-12;
  rep.checks = {inv, odd};
  return rep;
}

namespace detail {

// Head of 1/f - 1/z from the head of f.
inline PowerSeries gap_series(const PowerSeries& f) {
  const PowerSeries dev = f - PowerSeries::identity();
  return -(dev.shift_down(2) / f.shift_down(1));
}

// Head of z / (1 + z g) from the head of g.
inline PowerSeries seiffert_series_of_gap(const PowerSeries& g) {
  return (PowerSeries::constant(1.0) + g.shift_up(1)).reciprocal().shift_up(1);
}

}  // namespace detail

/// The isometry f -> 1/f - 1/z onto functions with values in [-1, 1].
inline std::function<double(double)> a_transform(const SeiffertFunction& f) {
  return [f](double z) { return f.gap(z); };
}

/// Inverse of a_transform: g -> z / (1 + z g(z)).
inline SeiffertFunction a_inverse(std::function<double(double)> g, std::string name,
                                  bool strict = true, std::optional<PowerSeries> g_series = {}) {
  auto deviation = [g](double z) {
    const double v = g(z);
    return -z * z * v / (1.0 + z * v);
  };
  auto value = [g](double z) { return z / (1.0 + z * g(z)); };
  std::optional<PowerSeries> series;
  if (g_series) series = detail::seiffert_series_of_gap(*g_series);
  return SeiffertFunction(std::move(name), value, series, strict, deviation);
}

/// f + g = A^-1(gamma^-1(gamma(A f) + gamma(A g))).
///
/// Both operands must be strict: a gap of +-1 lies outside the gauge's
/// domain.
inline SeiffertFunction oplus(const SeiffertFunction& f, const SeiffertFunction& g,
                              const Gauge& gauge = Gauge::artanh()) {
  for (const auto* h : {&f, &g})
    if (!h->strict())
      throw PreconditionError("oplus: '" + h->name() +
                              "' is not strict; its gap reaches +-1 where the gauge is undefined");
  auto gap = [f, g, gauge](double z) {
    return gauge.inverse(gauge.forward(f.gap(z)) + gauge.forward(g.gap(z)));
  };
  std::optional<PowerSeries> gs;
  if (f.series() && g.series() && gauge.forward_series && gauge.inverse_series)
    gs = gauge.inverse_series(gauge.forward_series(detail::gap_series(*f.series())) +
                              gauge.forward_series(detail::gap_series(*g.series())));
  return a_inverse(gap, "oplus(" + f.name() + "," + g.name() + ")", true, gs);
}

/// Group inverse A^-1(-A f) for any gauge; the Seiffert function of 2A - M.
inline SeiffertFunction group_inverse(const SeiffertFunction& f) {
  std::optional<PowerSeries> gs;
  if (f.series()) gs = -detail::gap_series(*f.series());
  return a_inverse([f](double z) { return -f.gap(z); }, "neg(" + f.name() + ")", f.strict(), gs);
}

/// M + N through the Seiffert functions.
inline Mean oplus(const Mean& m, const Mean& n, const Gauge& gauge = Gauge::artanh()) {
  return mean_from_seiffert(oplus(seiffert_from_mean(m), seiffert_from_mean(n), gauge))
      .renamed("oplus(" + m.name() + "," + n.name() + ")");
}

/// 2A - M.
inline Mean neg(const Mean& m) {
  std::optional<PowerSeries> series;
  if (m.seiffert_series()) {
    series = detail::seiffert_series_of_gap(-detail::gap_series(*m.seiffert_series()));
  }
  return Mean(
      "neg(" + m.name() + ")", [m](double x, double y) { return (x + y) - m(x, y); }, m.strict(),
      series);
}

/// f_t(z) = f(t z) / t for 0 < t <= 1.
inline SeiffertFunction shift_seiffert(const SeiffertFunction& f, double t) {
  if (!(t > 0.0 && t <= 1.0))
    throw PreconditionError("shift: t must lie in (0, 1], got " + std::to_string(t));
  if (t == 1.0) return f;
  std::optional<PowerSeries> series;
  if (f.series()) series = f.series()->scaled(t) * (1.0 / t);
  char name[96];
  std::snprintf(name, sizeof name, "shift(%s,%.15g)", f.name().c_str(), t);
  return SeiffertFunction(
      name, [f, t](double z) { return f(t * z) / t; }, series, true,
      [f, t](double z) { return f.deviation(t * z) / t; });
}

/// M_t(x, y) = M(a - t d, a + t d) with a = (x + y)/2, d = (x - y)/2, so
/// that f_{M_t}(z) = f_M(t z) / t. Requires 0 < t <= 1.
inline Mean shift_mean(const Mean& m, double t) {
  if (!(t > 0.0 && t <= 1.0))
    throw PreconditionError("shift: t must lie in (0, 1], got " + std::to_string(t));
  if (t == 1.0) return m;
  std::optional<PowerSeries> series;
  if (m.seiffert_series()) series = m.seiffert_series()->scaled(t) * (1.0 / t);
  char name[96];
  std::snprintf(name, sizeof name, "shift(%s,%.15g)", m.name().c_str(), t);
  return Mean(
      name,
      [m, t](double x, double y) {
        const double a = 0.5 * (x + y), d = 0.5 * std::abs(x - y);
        return m(a - t * d, a + t * d);
      },
      true, series);
}

}  // namespace seiffert
