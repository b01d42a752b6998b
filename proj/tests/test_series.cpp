#include <gtest/gtest.h>

#include <cmath>

#include "seiffert/catalog.hpp"
#include "seiffert/series.hpp"

using namespace seiffert;

namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

TEST(Series, Log1pRuleMatchesLibm) {
  auto [kind, rule] = *series_rule("harmonic");
  auto f = build_series_seiffert(SeriesSpec::from_rule(kind, rule, 4000, 4000));
  for (double z : {0.05, 0.3, 0.7}) EXPECT_NEAR(f(z), std::log1p(z), 1e-14);
  // First omitted term bounds the error of a short truncation.
  auto spec = SeriesSpec::from_rule(kind, rule, 4000, 20);
  auto g = build_series_seiffert(spec);
  EXPECT_LE(std::abs(g(0.9) - std::log1p(0.9)), spec.tail_bound(0.9));
}

TEST(Series, SinRuleMatchesLibm) {
  auto [kind, rule] = *series_rule("sin");
  EXPECT_EQ(kind, SeriesKind::odd_alternating);
  EXPECT_DOUBLE_EQ(rule(1), 1.0 / 6.0);
  auto f = build_series_seiffert(SeriesSpec::from_rule(kind, rule, 20));
  for (double z : {0.01, 0.4, 0.99}) EXPECT_NEAR(f(z), std::sin(z), 1e-15);
  const double z = 1e-3;
  EXPECT_NEAR(f.deviation(z), -z * z * z / 6 + std::pow(z, 5) / 120, 1e-24);
}

TEST(Series, RemainderHeads) {
  // a_1 of the odd remainder series: 1/20, 1/42, 1/12, 1/30.
  EXPECT_DOUBLE_EQ((*series_rule("sin_r1")).second(1), 1.0 / 20.0);
  EXPECT_DOUBLE_EQ((*series_rule("sin_r2")).second(1), 1.0 / 42.0);
  EXPECT_DOUBLE_EQ((*series_rule("cos_r1")).second(1), 1.0 / 12.0);
  EXPECT_DOUBLE_EQ((*series_rule("cos_r2")).second(1), 1.0 / 30.0);
  EXPECT_DOUBLE_EQ((*series_rule("log1p_r1")).second(3), 0.5);
  EXPECT_DOUBLE_EQ((*series_rule("log1p_r2")).second(4), 0.5);
}

TEST(Series, RemainderFunctionsAreSeiffert) {
  const auto fs = remainder_series_functions();
  ASSERT_EQ(fs.size(), 8u);
  for (const auto& f : fs) {
    EXPECT_TRUE(check_seiffert(f).passed()) << f.name();
    // Closed form and expansion agree across the switch.
    EXPECT_NEAR(f(0.1), (*f.series())(0.1), 1e-13) << f.name();
    EXPECT_NO_THROW(mean_from_seiffert(f));
  }
}

TEST(Series, TrigRemaindersMatchClosedForms) {
  const auto fs = remainder_series_functions();
  // Closed forms at z where their cancellation is still harmless.
  const double z = 0.9;
  const double s = std::sin(z), c = std::cos(z);
  EXPECT_NEAR(fs[3](z), s, 1e-15);
  EXPECT_NEAR(fs[4](z), 6 * (z - s) / (z * z), 1e-14);
  EXPECT_NEAR(fs[5](z), 120 * (s - z + z * z * z / 6) / std::pow(z, 4), 1e-11);
  EXPECT_NEAR(fs[6](z), 2 * (1 - c) / z, 1e-14);
  EXPECT_NEAR(fs[7](z), 24 * (c - 1 + z * z / 2) / (z * z * z), 1e-12);
}

TEST(Series, RemainderClosedFormsMatchRules) {
  const auto fs = remainder_series_functions();
  const char* rules[] = {"log1p", "log1p_r1", "log1p_r2", "sin",
                         "sin_r1", "sin_r2", "cos_r1", "cos_r2"};
  for (std::size_t i = 0; i < fs.size(); ++i) {
    auto [kind, rule] = *series_rule(rules[i]);
    auto g = build_series_seiffert(SeriesSpec::from_rule(kind, rule, 5000, 5000));
    for (double z : {0.2, 0.5, 0.8}) EXPECT_NEAR(fs[i](z), g(z), 2e-13) << fs[i].name();
  }
}

TEST(Series, CubicFamily) {
  EXPECT_NO_THROW(build_series_seiffert(SeriesSpec::cubic(0.5)));
  EXPECT_NO_THROW(build_series_seiffert(SeriesSpec::cubic(-0.5)));
  EXPECT_NO_THROW(build_series_seiffert(SeriesSpec::cubic(0.0)));
  try {
    build_series_seiffert(SeriesSpec::cubic(0.6));
    FAIL();
  } catch (const SeriesRejected& e) {
    EXPECT_EQ(e.index(), 1u);
  }
  // z - z^3/6 yields A * 6A^2 / (5A^2 + G^2).
  auto m = mean_from_seiffert(build_series_seiffert(SeriesSpec::cubic(-1.0 / 6.0)));
  for (auto [x, y] : {std::pair{1.0, 3.0}, {2.0, 7.0}, {0.01, 5.0}}) {
    const double a = 0.5 * (x + y), g2 = x * y;
    EXPECT_NEAR(m(x, y), a * 6 * a * a / (5 * a * a + g2), 1e-13 * a);
  }
}

TEST(Series, RejectionCarriesFirstIndex) {
  try {
    build_series_seiffert(SeriesSpec::from_coefficients(SeriesKind::general, {1, 0.5, 1.5, 0.2}));
    FAIL();
  } catch (const SeriesRejected& e) {
    EXPECT_EQ(e.index(), 3u);
  }
  try {
    build_series_seiffert(
        SeriesSpec::from_coefficients(SeriesKind::alternating_convex, {1, 0.5, 0.4, 0.1}));
    FAIL();
  } catch (const SeriesRejected& e) {
    EXPECT_EQ(e.index(), 3u);  // 2 * 0.4 > 0.5 + 0.1
  }
}

TEST(Series, Classification) {
  EXPECT_EQ(classify_series({1, 0.5, 1.0 / 3, 0.25}).kind, SeriesKind::alternating_convex);
  EXPECT_EQ(classify_series({1.0 / 6, 1.0 / 120, 1.0 / 5040}).kind, SeriesKind::odd_alternating);
  EXPECT_EQ(classify_series({1, 0.2, 0.9, 0.1}).kind, SeriesKind::general);
  const auto r = classify_series({0.3, 1.5, 0.2});
  EXPECT_FALSE(r.kind);
  EXPECT_NE(r.reason.find("a2 > 1"), std::string::npos) << r.reason;
  EXPECT_EQ(classify_series({1, 0.9}, SeriesKind::general).kind, SeriesKind::general);
}

TEST(Series, GeneralKindIsBetweenIdentityAndMin) {
  auto f = build_series_seiffert(
      SeriesSpec::from_rule(SeriesKind::general, [](std::size_t) { return 1.0; }, 8));
  // Long truncations sit on the upper bound to rounding and are still accepted.
  EXPECT_NO_THROW(build_series_seiffert(
      SeriesSpec::from_rule(SeriesKind::general, [](std::size_t) { return 1.0; }, 64)));
  for (double z : {0.1, 0.5, 0.9}) {
    EXPECT_GT(f(z), z);
    EXPECT_LT(f(z), z / (1 - z));
  }
  auto e = build_series_seiffert(SeriesSpec::from_rule(
      SeriesKind::general, [](std::size_t n) { return 1.0 / factorial(int(n)); }, 30));
  EXPECT_NEAR(e(0.5), std::expm1(0.5), 1e-15);
}
