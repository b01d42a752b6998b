#pragma once

#include <cmath>
#include <cstdio>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace seiffert {

/// Distance kept from the endpoints of (0,1) by every z-grid.
inline constexpr double kOpenEps = 1e-8;

/// Default number of quasi-random (x, y) pairs used by mean validation.
inline constexpr std::size_t kDefaultSamples = 4096;

/// Default z-grid size for sup/inf searches and monotonicity sweeps.
inline constexpr std::size_t kDefaultGrid = 2048;

/// `n` equally spaced points covering [eps, 1 - eps], endpoints included.
inline std::vector<double> open_grid(std::size_t n, double eps = kOpenEps) {
  std::vector<double> z(n);
  if (n == 1) {
    z[0] = 0.5;
    return z;
  }
  const double width = 1.0 - 2.0 * eps;
  for (std::size_t i = 0; i < n; ++i)
    z[i] = eps + width * static_cast<double>(i) / static_cast<double>(n - 1);
  return z;
}

/// `n` equally spaced interior points of (a, b): a + (b - a) i / (n + 1).
inline std::vector<double> interior_grid(std::size_t n, double a = 0.0, double b = 1.0) {
  std::vector<double> z(n);
  for (std::size_t i = 0; i < n; ++i)
    z[i] = a + (b - a) * static_cast<double>(i + 1) / static_cast<double>(n + 1);
  return z;
}

/// Two-dimensional additive recurrence (R2 sequence) with a fixed start.
///
/// Point i is frac(seed + i * (1/g, 1/g^2)) where g is the plastic number.
/// The default seed 0.5 is part of the reproducibility contract of every
/// sampled report.
class QuasiRandom2D {
 public:
  static constexpr double kSeed = 0.5;

  explicit QuasiRandom2D(double seed = kSeed) : seed_(seed) {}

  std::pair<double, double> operator()(std::size_t i) const {
    constexpr double g = 1.32471795724474602596;
    constexpr double a1 = 1.0 / g;
    constexpr double a2 = 1.0 / (g * g);
    const double k = static_cast<double>(i);
    return {frac(seed_ + a1 * k), frac(seed_ + a2 * k)};
  }

 private:
  static double frac(double v) { return v - std::floor(v); }
  double seed_;
};

/// Positive pairs with x/y spanning [1/max_ratio, max_ratio] and overall
/// scale spanning [1e-3, 1e3], in quasi-random order.
inline std::vector<std::pair<double, double>> sample_pairs(std::size_t n,
                                                           double max_ratio = 1e4) {
  std::vector<std::pair<double, double>> out;
  out.reserve(n);
  const QuasiRandom2D seq;
  const double lr = std::log10(max_ratio);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [u, v] = seq(i);
    const double ratio = std::pow(10.0, lr * (2.0 * u - 1.0));
    const double scale = std::pow(10.0, 6.0 * v - 3.0);
    out.emplace_back(scale * ratio, scale);
  }
  return out;
}

/// Where an extremum was found on (0,1).
struct Location {
  enum class Kind { interior, lower_limit, upper_limit };

  double z = std::numeric_limits<double>::quiet_NaN();
  Kind kind = Kind::interior;

  static Location at(double z) { return {z, Kind::interior}; }
  static Location lower(double z) { return {z, Kind::lower_limit}; }
  static Location upper(double z) { return {z, Kind::upper_limit}; }

  std::string describe() const {
    switch (kind) {
      case Kind::lower_limit: return "z->0+";
      case Kind::upper_limit: return "z->1-";
      default: break;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", z);
    return buf;
  }
};

/// Maximise a unimodal function on [a, b] by golden-section search.
/// Returns (argmax, max).
inline std::pair<double, double> golden_section_max(const std::function<double(double)>& f,
                                                    double a, double b, double tol = 1e-10,
                                                    int max_iterations = 200) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < max_iterations && (b - a) > tol; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc > fd ? std::pair{c, fc} : std::pair{d, fd};
}

/// Result of a sup or inf search over (0,1).
struct Extremum {
  double value = std::numeric_limits<double>::quiet_NaN();
  Location where;
};

/// Sup and inf of an objective over (0,1) together with its sampled shape.
struct SearchResult {
  Extremum sup;
  Extremum inf;
  /// +1 increasing, -1 decreasing, 0 otherwise (on the sampled grid).
  int monotone = 0;
  std::vector<std::pair<double, double>> trace;
};

struct SearchOptions {
  std::size_t grid = kDefaultGrid;
  double eps = kOpenEps;
  double z_tol = 1e-10;
  bool keep_trace = false;
};

/// Locate sup and inf of `objective` on (0,1).
///
/// The objective is sampled on open_grid(grid, eps); the optional limits at
/// 0+ and 1- compete with the sampled values and are reported with endpoint
/// markers. When the samples are monotone the extrema are taken at the
/// endpoints without refinement; otherwise the best interior cell is refined
/// by golden-section search.
inline SearchResult search_extrema(const std::function<double(double)>& objective,
                                   std::optional<double> limit_at_zero,
                                   std::optional<double> limit_at_one,
                                   const SearchOptions& opt = {}) {
  const auto z = open_grid(opt.grid, opt.eps);
  std::vector<double> v(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) v[i] = objective(z[i]);

  SearchResult r;
  if (opt.keep_trace) {
    r.trace.reserve(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) r.trace.emplace_back(z[i], v[i]);
  }

  bool inc = true, dec = true;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] < v[i - 1]) inc = false;
    if (v[i] > v[i - 1]) dec = false;
  }
  r.monotone = inc && !dec ? 1 : (dec && !inc ? -1 : 0);

  const double lo = limit_at_zero.value_or(v.front());
  const double hi = limit_at_one.value_or(v.back());

  auto refine = [&](int sense) -> Extremum {
    // sense = +1 for sup, -1 for inf
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
      if (sense * v[i] > sense * v[best]) best = i;
    Extremum e{v[best], Location::at(z[best])};
    if (r.monotone == 0 && best > 0 && best + 1 < v.size()) {
      auto [zz, fz] = golden_section_max([&](double t) { return sense * objective(t); },
                                         z[best - 1], z[best + 1], opt.z_tol);
      if (sense * fz >= sense * e.value) e = {sense * fz, Location::at(zz)};
    }
    if (sense * lo >= sense * e.value) e = {lo, Location::lower(opt.eps)};
    if (sense * hi >= sense * e.value) e = {hi, Location::upper(1.0 - opt.eps)};
    return e;
  };
  r.sup = refine(+1);
  r.inf = refine(-1);
  return r;
}

/// Extrapolate g(h) -> g(0) from samples at h, h/10, h/100 assuming a smooth
/// expansion in h (polynomial extrapolation through the three points).
inline double richardson_to_zero(const std::function<double(double)>& g, double h = 1e-4) {
  const double h0 = h, h1 = h / 10.0, h2 = h / 100.0;
  const double g0 = g(h0), g1 = g(h1), g2 = g(h2);
  // Lagrange interpolation evaluated at 0.
  const double l0 = (h1 * h2) / ((h0 - h1) * (h0 - h2));
  const double l1 = (h0 * h2) / ((h1 - h0) * (h1 - h2));
  const double l2 = (h0 * h1) / ((h2 - h0) * (h2 - h1));
  return l0 * g0 + l1 * g1 + l2 * g2;
}

}  // namespace seiffert
