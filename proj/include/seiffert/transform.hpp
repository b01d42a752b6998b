#pragma once

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "seiffert/catalog.hpp"
#include "seiffert/core.hpp"
#include "seiffert/errors.hpp"
#include "seiffert/power_series.hpp"

namespace seiffert {

/// Default cap on the depth of iterated family members.
inline constexpr std::size_t kDefaultMaxDepth = 6;

/// Depth ceiling of the shared families; family_member applies its own cap.
inline constexpr std::size_t kMaxSupportedDepth = 32;

namespace detail {

// Relative accuracy demanded of each quadrature. Error estimates beyond
// kQuadratureGiveUp relative to the L1 norm (plus an absolute floor at the
// rounding level of the deviation) are reported as ConvergenceError.
inline constexpr double kQuadratureTol = 1e-13;
inline constexpr double kQuadratureGiveUp = 1e-10;

// One rule per thread: integrate() is not const-callable in older Boost and
// the rules grow their abscissa tables lazily.
inline boost::math::quadrature::tanh_sinh<double>& tanh_sinh_rule() {
  thread_local boost::math::quadrature::tanh_sinh<double> rule;
  return rule;
}

inline boost::math::quadrature::exp_sinh<double>& exp_sinh_rule() {
  thread_local boost::math::quadrature::exp_sinh<double> rule;
  return rule;
}

inline double inverse_factorial(std::size_t n) {
  double f = 1.0;
  for (std::size_t i = 2; i <= n; ++i) f *= double(i);
  return 1.0 / f;
}

// f(t) - t, stepping one ulp inward where f is infinite at the end of the
// interval (artanh at 1). The singularity is integrable.
inline double finite_deviation(const SeiffertFunction& f, double t) {
  double d = f.deviation(t);
  if (!std::isfinite(d)) d = f.deviation(std::nextafter(t, 0.0));
  return d;
}

// Deviation of I^n f at z, from the representation
//
//   I^n f(z) - z = int_0^inf (f - id)(z e^-u) u^(n-1)/(n-1)! du.
//
// With a Taylor head the range u > U, where z e^-u drops below the series
// cutoff, is integrated termwise in closed form.
inline double transformed_deviation(const SeiffertFunction& f, std::size_t n, double z) {
  const double w = inverse_factorial(n - 1);
  auto kernel = [&f, n, w, z](double u) {
    const double d = finite_deviation(f, z * std::exp(-u));
    return n == 1 ? d : d * std::pow(u, double(n - 1)) * w;
  };
  double err = 0.0, l1 = 0.0, main = 0.0, tail = 0.0;
  const auto& series = f.series();
  if (series && z > kSeriesCutoff) {
    const double upper = std::log(z / kSeriesCutoff);
    main = tanh_sinh_rule().integrate(kernel, 0.0, upper, kQuadratureTol, &err, &l1);
    // sum_k s_k t0^k k^-n sum_{j<n} (k U)^j / j!
    double tk = kSeriesCutoff;
    for (std::size_t k = 2; k <= PowerSeries::kOrder; ++k) {
      tk *= kSeriesCutoff;
      const double s = (*series)[k];
      if (s == 0.0) continue;
      const double ku = double(k) * upper;
      double poly = 0.0, term = 1.0;
      for (std::size_t j = 0; j < n; ++j) {
        poly += term;
        term *= ku / double(j + 1);
      }
      tail += s * tk * poly / std::pow(double(k), double(n));
    }
  } else {
    main = exp_sinh_rule().integrate(kernel, 0.0, std::numeric_limits<double>::infinity(),
                                     kQuadratureTol, &err, &l1);
  }
  if (!std::isfinite(main) || err > kQuadratureGiveUp * l1 + 1e-14 * z * z)
    throw ConvergenceError("integral_transform: quadrature for '" + f.name() +
                           "' did not converge at z = " + std::to_string(z));
  return main + tail;
}

inline PowerSeries transformed_series(const PowerSeries& s, std::size_t n) {
  PowerSeries r;
  for (std::size_t k = 1; k <= PowerSeries::kOrder; ++k)
    r[k] = s[k] / std::pow(double(k), double(n));
  return r;
}

}  // namespace detail

/// I^n f, the n-fold application of I f(z) = int_0^z f(t)/t dt.
///
/// The n-fold integral is collapsed to a single one,
///
///   I^n f(z) = z + int_0^inf (f(z e^-u) - z e^-u) u^(n-1)/(n-1)! du,
///
/// evaluated by double-exponential quadrature on the deviation, so the
/// result carries an explicit deviation and never subtracts nearly equal
/// values. When f has a Taylor head the result has the head c_k / k^n and
/// is evaluated from it for z <= kSeriesCutoff.
inline SeiffertFunction integral_transform(const SeiffertFunction& f, std::size_t n = 1,
                                           std::string name = {}) {
  if (n == 0) return f;
  std::optional<PowerSeries> series;
  if (f.series()) series = detail::transformed_series(*f.series(), n);
  auto deviation = [f, n, series](double z) {
    if (series && z <= kSeriesCutoff) return (*series - PowerSeries::identity())(z);
    return detail::transformed_deviation(f, n, z);
  };
  auto value = [deviation](double z) { return z + deviation(z); };
  if (name.empty())
    name = n == 1 ? "I(" + f.name() + ")" : "I^" + std::to_string(n) + "(" + f.name() + ")";
  return SeiffertFunction(std::move(name), value, series, f.strict(), deviation);
}

/// The family I^n(base), n = 0..max_depth, of one of the eight elementary
/// bases. Members are built once and shared; building is synchronized.
class IteratedFamily {
 public:
  IteratedFamily(SeiffertFunction base, std::string label,
                 std::size_t max_depth = kDefaultMaxDepth)
      : base_(std::move(base)), label_(std::move(label)), max_depth_(max_depth) {}

  const SeiffertFunction& base() const { return base_; }
  /// Family label such as "Si" or "ATHi".
  const std::string& label() const { return label_; }
  std::size_t max_depth() const { return max_depth_; }

  /// Depth-n member; depth 0 is the base itself.
  SeiffertFunction member(std::size_t n) const {
    if (n > max_depth_)
      throw PreconditionError("family " + label_ + ": depth " + std::to_string(n) +
                              " exceeds the cap " + std::to_string(max_depth_));
    if (n == 0) return base_;
    std::lock_guard<std::mutex> lock(mu_);
    auto it = members_.find(n);
    if (it == members_.end())
      it = members_
               .emplace(n, integral_transform(base_, n, label_ + "_" + std::to_string(n)))
               .first;
    return it->second;
  }

 private:
  SeiffertFunction base_;
  std::string label_;
  std::size_t max_depth_;
  mutable std::mutex mu_;
  mutable std::map<std::size_t, SeiffertFunction> members_;
};

namespace detail {

struct FamilyName {
  const char* base;
  const char* alias;
  const char* label;
};

inline const FamilyName* family_names() {
  static const FamilyName names[] = {
      {"sin", "sin", "Si"},        {"asin", "arcsin", "ASi"},   {"tan", "tan", "Ti"},
      {"atan", "arctan", "ATi"},   {"sinh", "sinh", "SHi"},     {"asinh", "arsinh", "ASHi"},
      {"tanh", "tanh", "THi"},     {"atanh", "artanh", "ATHi"},
  };
  return names;
}

}  // namespace detail

/// Shared family for a base given as "sin", "arcsin", "asin" or the label
/// "Si" (and likewise for the other seven).
inline const IteratedFamily& iterated_family(const std::string& base) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<IteratedFamily>> families;
  const detail::FamilyName* names = detail::family_names();
  const auto bases = functions::family_bases();
  for (std::size_t i = 0; i < 8; ++i) {
    if (base != names[i].base && base != names[i].alias && base != names[i].label) continue;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = families[names[i].label];
    if (!slot) slot = std::make_unique<IteratedFamily>(bases[i], names[i].label, kMaxSupportedDepth);
    return *slot;
  }
  throw PreconditionError("unknown family base '" + base + "'");
}

/// I^n(base) for one of the eight family bases, n <= max_depth.
inline SeiffertFunction family_member(const std::string& base, std::size_t n,
                                      std::size_t max_depth = kDefaultMaxDepth) {
  if (n > max_depth)
    throw PreconditionError("family_member: depth " + std::to_string(n) + " exceeds the cap " +
                            std::to_string(max_depth));
  return iterated_family(base).member(n);
}

/// Labels of the eight families in base order.
inline std::vector<std::string> family_labels() {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < 8; ++i) out.emplace_back(detail::family_names()[i].label);
  return out;
}

}  // namespace seiffert
