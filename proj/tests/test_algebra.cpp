#include <gtest/gtest.h>

#include <cmath>

#include "seiffert/algebra.hpp"
#include "seiffert/metric.hpp"
#include "seiffert/transform.hpp"

using namespace seiffert;

namespace {

const std::vector<double>& grid256() {
  static const auto g = open_grid(256, 1e-6);
  return g;
}

}  // namespace

TEST(Algebra, ATransformExamples) {
  const auto id = a_transform(functions::identity());
  const auto mx = a_transform(functions::of_max());
  const auto mn = a_transform(functions::of_min());
  for (double z : grid256()) {
    EXPECT_EQ(id(z), 0.0);
    EXPECT_NEAR(mx(z), 1.0, 1e-15);
    EXPECT_NEAR(mn(z), -1.0, 1e-15);
  }
}

TEST(Algebra, ATransformInverse) {
  const auto f = functions::asinh();
  const auto back = a_inverse(a_transform(f), "back");
  for (double z : grid256()) {
    EXPECT_NEAR(back(z), f(z), 1e-15);
    EXPECT_NEAR(back.deviation(z), f.deviation(z), 1e-15 * z * z + 1e-16 * std::abs(f.deviation(z)));
  }
}

TEST(Algebra, IsometryMatchesDistance) {
  const auto f = functions::sin(), g = functions::atanh();
  const auto af = a_transform(f), ag = a_transform(g);
  double sup = 0.0;
  for (double z : open_grid(kDefaultGrid)) sup = std::max(sup, std::abs(af(z) - ag(z)));
  EXPECT_NEAR(seiffert_distance(f, g).distance, sup, 1e-10);
}

TEST(Algebra, GaugesAreValid) {
  EXPECT_TRUE(check_gauge(Gauge::artanh()).passed());
  EXPECT_TRUE(check_gauge(Gauge::algebraic()).passed());
}

TEST(Algebra, GroupLaws) {
  const auto f = functions::sin(), g = functions::tanh(), h = functions::asin();
  const auto id = functions::identity();
  for (const Gauge& gauge : {Gauge::artanh(), Gauge::algebraic()}) {
    const auto fg = oplus(f, g, gauge), gf = oplus(g, f, gauge);
    const auto left = oplus(fg, h, gauge), right = oplus(f, oplus(g, h, gauge), gauge);
    const auto neutral = oplus(f, id, gauge);
    const auto inverse = oplus(f, group_inverse(f), gauge);
    for (double z : grid256()) {
      EXPECT_NEAR(fg(z), gf(z), 1e-9) << gauge.name;
      EXPECT_NEAR(left(z), right(z), 1e-9) << gauge.name;
      EXPECT_NEAR(neutral(z), f(z), 1e-9) << gauge.name;
      EXPECT_NEAR(inverse(z), z, 1e-9) << gauge.name;
    }
  }
}

TEST(Algebra, SeriesOfProductMatchesValues) {
  const auto fg = oplus(functions::sin(), functions::atanh());
  ASSERT_TRUE(fg.series());
  for (double z : {1e-3, 0.01, 0.05}) {
    const double direct = -z * z * fg.gap(z) / (1.0 + z * fg.gap(z));
    EXPECT_NEAR((*fg.series() - PowerSeries::identity())(z), direct, 1e-15 * z * z);
  }
}

TEST(Algebra, RejectsNonStrict) {
  EXPECT_THROW(oplus(functions::of_max(), functions::sin()), PreconditionError);
  EXPECT_THROW(oplus(means::minimum(), means::arithmetic()), PreconditionError);
}

TEST(Algebra, MeanPlusReflectionIsArithmetic) {
  for (const Mean& m : {means::seiffert_p(), means::seiffert_t()}) {
    const Mean s = oplus(m, neg(m));
    for (const auto& [x, y] : sample_pairs(256)) {
      const double a = 0.5 * (x + y);
      EXPECT_NEAR(s(x, y), a, 1e-9 * a) << m.name();
    }
  }
}

TEST(Algebra, NegIsAMean) {
  for (const Mean& m : {means::seiffert_p(), means::geometric(), means::logarithmic()})
    EXPECT_TRUE(validate_mean(neg(m)).passed()) << m.name();
  // The head of 2A - M agrees with the Seiffert function of the mean.
  const Mean n = neg(means::logarithmic());
  const auto f = seiffert_from_mean(n.renamed("noseries"));
  for (double z : {0.1, 0.05}) EXPECT_NEAR((*n.seiffert_series())(z), z / n(1 + z, 1 - z), 1e-15);
  (void)f;
  // 2A - C = H, up to the cancellation in x + y - C when C is close to max.
  const Mean h = neg(means::contraharmonic());
  for (const auto& [x, y] : sample_pairs(256, 100.0))
    EXPECT_NEAR(h(x, y), means::harmonic()(x, y), 1e-13 * std::max(x, y));
}

TEST(Algebra, ShiftedMean) {
  const Mean p = means::seiffert_p();
  EXPECT_EQ(shift_mean(p, 1.0).name(), "P");
  EXPECT_THROW(shift_mean(p, 0.0), PreconditionError);
  EXPECT_THROW(shift_mean(p, 1.5), PreconditionError);
  const double t = 0.3;
  const auto ft = seiffert_from_mean(shift_mean(p, t));
  const auto f = seiffert_from_mean(p);
  for (double z : open_grid(1000)) {
    EXPECT_NEAR(ft(z), f(t * z) / t, 1e-12 * ft(z));
    EXPECT_GT(ft(z), z / (1 + z));
    EXPECT_LT(ft(z), z / (1 - z));
  }
  // t -> 0 approaches A.
  EXPECT_NEAR(shift_mean(p, 1e-6)(1.0, 3.0), 2.0, 1e-9);
  EXPECT_TRUE(validate_mean(shift_mean(means::maximum(), 0.5)).passed());
}

TEST(Algebra, ShiftedContraharmonicBelowQ) {
  const Mean c = shift_mean(means::contraharmonic(), std::sqrt(0.5));
  const Mean q = means::quotient();
  for (const auto& [x, y] : sample_pairs(kDefaultSamples))
    EXPECT_LE(c(x, y), q(x, y) * (1 + 1e-13)) << x << " " << y;
}
