#pragma once

#include <cmath>
#include <optional>

#include "seiffert/core.hpp"
#include "seiffert/grid.hpp"

namespace seiffert {

/// Outcome of a distance computation.
struct MetricResult {
  double distance = 0.0;
  Location extremizer;
  bool converged = true;
  /// Second estimate from the mean-side formula, when computed.
  std::optional<double> cross_check;
};

/// Agreement required between the two estimates of mean_distance.
inline constexpr double kMetricCrossCheckTol = 1e-6;

/// d(f, g) = sup over (0,1) of |1/f - 1/g|.
///
/// The difference of the gaps is formed from the deviations, so nearby
/// functions do not lose accuracy near 0. Suprema approached at an end of
/// the interval are reported with the endpoint marker.
inline MetricResult seiffert_distance(const SeiffertFunction& f, const SeiffertFunction& g,
                                      const SearchOptions& opt = {}) {
  auto objective = [&f, &g](double z) { return std::abs(f.gap(z) - g.gap(z)); };
  const SearchResult s = search_extrema(objective, std::nullopt, std::nullopt, opt);
  MetricResult r;
  r.distance = s.sup.value;
  r.extremizer = s.sup.where;
  r.converged = std::isfinite(r.distance);
  return r;
}

/// d_M(M, N) = d(f_M, f_N), cross-checked against 2 sup |M - N| / |x - y|
/// over pairs with x + y = 2. A disagreement beyond kMetricCrossCheckTol
/// clears `converged`.
inline MetricResult mean_distance(const Mean& m, const Mean& n, const SearchOptions& opt = {}) {
  MetricResult r = seiffert_distance(seiffert_from_mean(m), seiffert_from_mean(n), opt);
  auto direct = [&m, &n](double z) {
    const double x = 1.0 + z, y = 1.0 - z;
    return std::abs(m(x, y) - n(x, y)) / z;  // 2 |M - N| / (x - y)
  };
  const double second = search_extrema(direct, std::nullopt, std::nullopt, opt).sup.value;
  r.cross_check = second;
  if (!(std::abs(second - r.distance) <= kMetricCrossCheckTol)) r.converged = false;
  return r;
}

}  // namespace seiffert
