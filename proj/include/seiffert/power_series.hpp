#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>

namespace seiffert {

/// Truncated Taylor expansion at 0 with a fixed number of terms.
///
/// Coefficient k multiplies z^k. Every arithmetic operation truncates at
/// kOrder, so results are exact up to the first dropped power. The class is
/// used for the z -> 0 behaviour of Seiffert functions, where direct
/// evaluation suffers from cancellation.
class PowerSeries {
 public:
  static constexpr std::size_t kOrder = 25;
  using Coefficients = std::array<double, kOrder + 1>;

  PowerSeries() { c_.fill(0.0); }

  PowerSeries(std::initializer_list<double> coefficients) : PowerSeries() {
    std::size_t k = 0;
    for (double v : coefficients) {
      if (k > kOrder) break;
      c_[k++] = v;
    }
  }

  template <class Rule>
  static PowerSeries from_rule(Rule&& rule) {
    PowerSeries s;
    for (std::size_t k = 0; k <= kOrder; ++k) s.c_[k] = rule(k);
    return s;
  }

  static PowerSeries constant(double v) { return PowerSeries{v}; }
  static PowerSeries identity() { return PowerSeries{0.0, 1.0}; }

  double operator[](std::size_t k) const { return k <= kOrder ? c_[k] : 0.0; }
  double& operator[](std::size_t k) { return c_.at(k); }
  const Coefficients& coefficients() const { return c_; }

  double operator()(double z) const {
    double acc = 0.0;
    for (std::size_t k = kOrder + 1; k-- > 0;) acc = acc * z + c_[k];
    return acc;
  }

  /// Index of the first coefficient with magnitude above `tol`, or kOrder + 1.
  std::size_t valuation(double tol = 0.0) const {
    for (std::size_t k = 0; k <= kOrder; ++k)
      if (std::abs(c_[k]) > tol) return k;
    return kOrder + 1;
  }

  PowerSeries& operator+=(const PowerSeries& o) {
    for (std::size_t k = 0; k <= kOrder; ++k) c_[k] += o.c_[k];
    return *this;
  }
  PowerSeries& operator-=(const PowerSeries& o) {
    for (std::size_t k = 0; k <= kOrder; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  PowerSeries& operator*=(double s) {
    for (auto& v : c_) v *= s;
    return *this;
  }

  friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
  friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }
  friend PowerSeries operator*(PowerSeries a, double s) { return a *= s; }
  friend PowerSeries operator*(double s, PowerSeries a) { return a *= s; }
  friend PowerSeries operator-(PowerSeries a) { return a *= -1.0; }

  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries r;
    for (std::size_t i = 0; i <= kOrder; ++i) {
      if (a.c_[i] == 0.0) continue;
      for (std::size_t j = 0; i + j <= kOrder; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
  }

  /// 1 / s, requires s[0] != 0.
  PowerSeries reciprocal() const {
    if (c_[0] == 0.0) throw std::domain_error("PowerSeries::reciprocal: zero constant term");
    PowerSeries r;
    r.c_[0] = 1.0 / c_[0];
    for (std::size_t n = 1; n <= kOrder; ++n) {
      double acc = 0.0;
      for (std::size_t k = 1; k <= n; ++k) acc += c_[k] * r.c_[n - k];
      r.c_[n] = -acc / c_[0];
    }
    return r;
  }

  friend PowerSeries operator/(const PowerSeries& a, const PowerSeries& b) {
    return a * b.reciprocal();
  }

  /// Quotient a / b where both may vanish at 0 to the same leading order.
  static PowerSeries cancel_divide(const PowerSeries& a, const PowerSeries& b, double tol = 0.0) {
    const std::size_t v = b.valuation(tol);
    if (v > kOrder) throw std::domain_error("PowerSeries::cancel_divide: zero divisor");
    return a.shift_down(v) / b.shift_down(v);
  }

  /// Multiply by z^n.
  PowerSeries shift_up(std::size_t n = 1) const {
    PowerSeries r;
    for (std::size_t k = 0; k + n <= kOrder; ++k) r.c_[k + n] = c_[k];
    return r;
  }

  /// Divide by z^n, dropping the first n coefficients. The lost tail is
  /// padded with zeros, so the result has n fewer trustworthy terms.
  PowerSeries shift_down(std::size_t n = 1) const {
    PowerSeries r;
    for (std::size_t k = n; k <= kOrder; ++k) r.c_[k - n] = c_[k];
    return r;
  }

  /// s(t z) as a series in z.
  PowerSeries scaled(double t) const {
    PowerSeries r;
    double p = 1.0;
    for (std::size_t k = 0; k <= kOrder; ++k, p *= t) r.c_[k] = c_[k] * p;
    return r;
  }

  PowerSeries derivative() const {
    PowerSeries r;
    for (std::size_t k = 1; k <= kOrder; ++k) r.c_[k - 1] = static_cast<double>(k) * c_[k];
    return r;
  }

  /// Antiderivative vanishing at 0.
  PowerSeries antiderivative() const {
    PowerSeries r;
    for (std::size_t k = 0; k < kOrder; ++k) r.c_[k + 1] = c_[k] / static_cast<double>(k + 1);
    return r;
  }

  /// log s, requires s[0] > 0.
  PowerSeries log() const {
    if (!(c_[0] > 0.0)) throw std::domain_error("PowerSeries::log: non-positive constant term");
    PowerSeries r = (derivative() / *this).antiderivative();
    r.c_[0] = std::log(c_[0]);
    return r;
  }

  /// exp s.
  PowerSeries exp() const {
    PowerSeries r;
    r.c_[0] = std::exp(c_[0]);
    const PowerSeries d = derivative();
    // E' = s' E
    for (std::size_t n = 1; n <= kOrder; ++n) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += d.c_[k] * r.c_[n - 1 - k];
      r.c_[n] = acc / static_cast<double>(n);
    }
    return r;
  }

  /// s^alpha, requires s[0] > 0.
  PowerSeries pow(double alpha) const { return (log() * alpha).exp(); }

  // Elementary expansions.

  static PowerSeries sin() {
    return from_rule([](std::size_t k) { return k % 2 == 1 ? sign(k / 2) / factorial(k) : 0.0; });
  }
  static PowerSeries cos() {
    return from_rule([](std::size_t k) { return k % 2 == 0 ? sign(k / 2) / factorial(k) : 0.0; });
  }
  static PowerSeries sinh() {
    return from_rule([](std::size_t k) { return k % 2 == 1 ? 1.0 / factorial(k) : 0.0; });
  }
  static PowerSeries cosh() {
    return from_rule([](std::size_t k) { return k % 2 == 0 ? 1.0 / factorial(k) : 0.0; });
  }
  static PowerSeries tan() { return sin() / cos(); }
  static PowerSeries tanh() { return sinh() / cosh(); }
  static PowerSeries atan() {
    return from_rule([](std::size_t k) { return k % 2 == 1 ? sign(k / 2) / double(k) : 0.0; });
  }
  static PowerSeries atanh() {
    return from_rule([](std::size_t k) { return k % 2 == 1 ? 1.0 / double(k) : 0.0; });
  }
  static PowerSeries asin() {
    return from_rule([](std::size_t k) { return k % 2 == 1 ? central(k / 2) / double(k) : 0.0; });
  }
  static PowerSeries asinh() {
    return from_rule(
        [](std::size_t k) { return k % 2 == 1 ? sign(k / 2) * central(k / 2) / double(k) : 0.0; });
  }
  /// log(1 + z)
  static PowerSeries log1p() {
    return from_rule([](std::size_t k) { return k == 0 ? 0.0 : -sign(k) / double(k); });
  }
  /// (1 + a z)^alpha
  static PowerSeries binomial(double alpha, double a = 1.0) {
    return PowerSeries{1.0, a}.pow(alpha);
  }

 private:
  static double sign(std::size_t k) { return k % 2 == 0 ? 1.0 : -1.0; }
  static double factorial(std::size_t k) {
    double f = 1.0;
    for (std::size_t i = 2; i <= k; ++i) f *= double(i);
    return f;
  }
  // (2m)! / (4^m (m!)^2)
  static double central(std::size_t m) {
    double r = 1.0;
    for (std::size_t i = 1; i <= m; ++i) r *= double(2 * i - 1) / double(2 * i);
    return r;
  }

  Coefficients c_;
};

}  // namespace seiffert
