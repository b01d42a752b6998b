#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "seiffert/catalog.hpp"
#include "seiffert/core.hpp"
#include "seiffert/errors.hpp"
#include "seiffert/grid.hpp"
#include "seiffert/metric.hpp"

namespace seiffert {

enum class InvariantMode { pointwise_compound, functional };

inline const char* to_string(InvariantMode m) {
  return m == InvariantMode::functional ? "functional" : "pointwise_compound";
}

struct InvariantSolveConfig {
  /// Relative convergence threshold.
  double tolerance = 1e-14;
  std::size_t max_iterations = 200;
  InvariantMode mode = InvariantMode::pointwise_compound;
  /// Chebyshev nodes of the functional mode.
  std::size_t nodes = 65;
  /// Largest z = |x-y|/(x+y) covered by the functional nodes. Pairs beyond
  /// it are brought inside by compound steps, which leave K unchanged.
  double functional_domain = 0.9;
};

/// Margin below 2 required of d_M(M, N).
inline constexpr double kContractionMargin = 1e-6;

/// Gauss compound iteration from one pair.
struct CompoundResult {
  double value = std::numeric_limits<double>::quiet_NaN();
  std::size_t iterations = 0;
  /// |x_k - y_k| for k = 0, 1, ...
  std::vector<double> gaps;
};

/// Common limit of x <- M(x, y), y <- N(x, y), stopped once
/// |x - y| <= tolerance * max(x, y).
inline CompoundResult compound_iteration(const Mean& m, const Mean& n, double x, double y,
                                         const InvariantSolveConfig& cfg = {}) {
  CompoundResult r;
  r.gaps.push_back(std::abs(x - y));
  while (std::abs(x - y) > cfg.tolerance * std::max(x, y)) {
    if (r.iterations == cfg.max_iterations)
      throw ConvergenceError("invariant: compound iteration of (" + m.name() + ", " + n.name() +
                             ") did not converge in " + std::to_string(cfg.max_iterations) +
                             " steps");
    const double nx = m(x, y), ny = n(x, y);
    x = nx;
    y = ny;
    ++r.iterations;
    r.gaps.push_back(std::abs(x - y));
  }
  r.value = 0.5 * (x + y);
  return r;
}

/// A mean on the line x + y = 2, represented by r(z) = X(1+z, 1-z) at
/// Chebyshev-Lobatto nodes in s = z^2 on [0, z_max^2] and interpolated
/// barycentrically.
///
/// Keeping z_max below 1 avoids the endpoint singularities typical of
/// invariant means (AGM behaves like 1/log near z = 1), which would spoil
/// the polynomial interpolation everywhere.
class LineInterpolant {
 public:
  LineInterpolant(std::size_t n, double z_max) : s_(n), w_(n), v_(n, 1.0), z_max_(z_max) {
    if (n < 2) throw PreconditionError("invariant: at least two interpolation nodes required");
    if (!(z_max > 0.0 && z_max < 1.0))
      throw PreconditionError("invariant: functional domain must lie in (0, 1)");
    const double s_max = z_max * z_max;
    const std::size_t k = n - 1;
    for (std::size_t j = 0; j <= k; ++j) {
      s_[j] = 0.5 * s_max * (1.0 - std::cos(std::numbers::pi * double(j) / double(k)));
      w_[j] = (j % 2 ? -1.0 : 1.0) * (j == 0 || j == k ? 0.5 : 1.0);
    }
  }

  std::size_t size() const { return s_.size(); }
  double z_max() const { return z_max_; }
  double node_z(std::size_t j) const { return std::sqrt(s_[j]); }
  std::vector<double>& values() { return v_; }
  const std::vector<double>& values() const { return v_; }

  /// r(z), interpolated in s = z^2.
  double operator()(double z) const {
    const double s = z * z;
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < s_.size(); ++j) {
      const double d = s - s_[j];
      if (d == 0.0) return v_[j];
      const double c = w_[j] / d;
      num += c * v_[j];
      den += c;
    }
    return num / den;
  }

 private:
  std::vector<double> s_, w_, v_;
  double z_max_;
};

/// Outcome of the functional iteration X <- X(M, N).
struct FunctionalResult {
  LineInterpolant line;
  std::size_t iterations = 0;
  /// Sup-norm change between successive iterates on the nodes.
  std::vector<double> changes;
};

/// Iterates Phi(X)(x, y) = X(M(x, y), N(x, y)) on the node values of X
/// along x + y = 2, starting from r0(z) = X0(1+z, 1-z).
inline FunctionalResult functional_iteration(const Mean& m, const Mean& n,
                                             const std::function<double(double)>& r0,
                                             const InvariantSolveConfig& cfg = {}) {
  FunctionalResult res{LineInterpolant(cfg.nodes, cfg.functional_domain), 0, {}};
  LineInterpolant& line = res.line;
  const std::size_t k = line.size();
  std::vector<double> scale(k), w(k);
  for (std::size_t j = 0; j < k; ++j) {
    const double z = line.node_z(j);
    line.values()[j] = r0(z);
    const double a = m(1.0 + z, 1.0 - z), b = n(1.0 + z, 1.0 - z);
    scale[j] = 0.5 * (a + b);
    w[j] = a + b > 0.0 ? std::abs(a - b) / (a + b) : 0.0;
  }
  // Rounding floor for the stopping test.
  const double floor = 16.0 * std::numeric_limits<double>::epsilon();
  const double tol = std::max(cfg.tolerance, floor);
  std::vector<double> next(k);
  while (true) {
    if (res.iterations == cfg.max_iterations)
      throw ConvergenceError("invariant: functional iteration of (" + m.name() + ", " +
                             n.name() + ") did not converge in " +
                             std::to_string(cfg.max_iterations) + " sweeps");
    double change = 0.0, size = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      next[j] = scale[j] * line(w[j]);
      change = std::max(change, std::abs(next[j] - line.values()[j]));
      size = std::max(size, std::abs(next[j]));
    }
    line.values() = next;
    ++res.iterations;
    res.changes.push_back(change);
    if (change <= tol * size) break;
    // Stagnation at the rounding level also ends the sweep.
    if (res.changes.size() >= 3 && change <= 1e3 * floor * size &&
        change >= res.changes[res.changes.size() - 2])
      break;
  }
  return res;
}

/// The unique mean K with K(M(x, y), N(x, y)) = K(x, y).
///
/// Requires d_M(M, N) < 2 - kContractionMargin, the contraction hypothesis;
/// strictness of M and N plays no role.
inline Mean invariant_mean(const Mean& m, const Mean& n, const InvariantSolveConfig& cfg = {}) {
  if (!(cfg.tolerance > 0.0)) throw PreconditionError("invariant: tolerance must be positive");
  const MetricResult d = mean_distance(m, n);
  if (!(d.distance < 2.0 - kContractionMargin)) {
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "invariant: d_M(%s, %s) = %.15g is not below 2; Phi need not contract",
                  m.name().c_str(), n.name().c_str(), d.distance);
    throw PreconditionError(buf);
  }
  const std::string name = "invariant(" + m.name() + "," + n.name() + ")";
  const bool strict = m.strict() && n.strict();
  if (cfg.mode == InvariantMode::pointwise_compound) {
    return Mean(name,
                [m, n, cfg](double x, double y) { return compound_iteration(m, n, x, y, cfg).value; },
                strict);
  }
  auto line = std::make_shared<const LineInterpolant>(
      functional_iteration(m, n, [](double) { return 1.0; }, cfg).line);
  return Mean(
      name,
      [line, m, n, cfg](double x, double y) {
        for (std::size_t i = 0; std::abs(x - y) > line->z_max() * (x + y); ++i) {
          if (i == cfg.max_iterations)
            throw ConvergenceError("invariant: compound steps did not reach the functional domain");
          const double nx = m(x, y), ny = n(x, y);
          x = nx;
          y = ny;
        }
        return 0.5 * (x + y) * (*line)(std::abs(x - y) / (x + y));
      },
      strict);
}

/// Largest node difference between the functional iterates started from
/// min and from max; small when the fixed point is unique.
inline double uniqueness_probe(const Mean& m, const Mean& n, const InvariantSolveConfig& cfg = {}) {
  const auto lo = functional_iteration(m, n, [](double z) { return 1.0 - z; }, cfg);
  const auto hi = functional_iteration(m, n, [](double z) { return 1.0 + z; }, cfg);
  double worst = 0.0;
  for (std::size_t j = 0; j < lo.line.size(); ++j)
    worst = std::max(worst, std::abs(lo.line.values()[j] - hi.line.values()[j]));
  return worst;
}

/// Largest ratio of successive compound gaps |x_k+1 - y_k+1| / |x_k - y_k|
/// over `samples` pairs, skipping steps already at the rounding level.
inline double observed_contraction(const Mean& m, const Mean& n,
                                   std::size_t samples = 1000) {
  double worst = 0.0;
  InvariantSolveConfig cfg;
  for (const auto& [x, y] : sample_pairs(samples, 1e3)) {
    const auto r = compound_iteration(m, n, x, y, cfg);
    const double scale = std::max(x, y);
    for (std::size_t k = 1; k < r.gaps.size(); ++k)
      if (r.gaps[k - 1] > 1e-10 * scale) worst = std::max(worst, r.gaps[k] / r.gaps[k - 1]);
  }
  return worst;
}

/// max over samples of |K(M, N) - K| / K.
inline double invariance_residual(const Mean& k, const Mean& m, const Mean& n,
                                  std::size_t samples = 1000) {
  double worst = 0.0;
  for (const auto& [x, y] : sample_pairs(samples)) {
    const double v = k(x, y);
    worst = std::max(worst, std::abs(k(m(x, y), n(x, y)) - v) / v);
  }
  return worst;
}

}  // namespace seiffert
