#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <functional>

#include "seiffert/transform.hpp"

using namespace seiffert;

namespace {

// Adaptive Gauss-Kronrod of g(t)/t on [0, z], independent of the library's
// double-exponential scheme.
double gk_transform(const std::function<double(double)>& g, double z) {
  auto integrand = [&g](double t) { return t == 0.0 ? 1.0 : g(t) / t; };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0, z, 15,
                                                                       1e-14);
}

// Si_n(z) = sum_j (-1)^j z^(2j+1) / ((2j+1)! (2j+1)^n), optionally
// without the leading z.
double si_series(std::size_t n, double z, int from = 0) {
  double sum = 0.0, term = z;  // z^(2j+1)/(2j+1)!
  for (int j = 0; j < 30; ++j) {
    if (j < from) {
      const double k = 2 * j + 1;
      term *= z * z / ((k + 1) * (k + 2));
      continue;
    }
    const double k = 2 * j + 1;
    sum += (j % 2 == 0 ? 1 : -1) * term / std::pow(k, double(n));
    term *= z * z / ((k + 1) * (k + 2));
  }
  return sum;
}

}  // namespace

TEST(Transform, IdentityIsFixed) {
  const auto f = integral_transform(functions::identity());
  for (double z : {1e-3, 0.3, 0.9, 1.0}) EXPECT_NEAR(f(z), z, 1e-16);
}

TEST(Transform, SineIntegralAtOne) {
  const auto si = family_member("sin", 1);
  EXPECT_NEAR(si(1.0), si_series(1, 1.0), 1e-15);
  EXPECT_NEAR(si(1.0), 0.946083070367183, 1e-14);
}

TEST(Transform, DeepSineMembersMatchSeries) {
  for (std::size_t n = 0; n <= 6; ++n) {
    const auto f = family_member("sin", n);
    for (double z : {0.05, 0.2, 0.6, 0.99}) {
      EXPECT_NEAR(f(z), si_series(n, z), 1e-15) << n << " " << z;
      // Deviation without cancellation.
      EXPECT_NEAR(f.deviation(z), si_series(n, z, 1), 1e-15 * z * z) << n << " " << z;
    }
  }
}

TEST(Transform, NestedQuadratureOracle) {
  // I(I(f)) with nested Gauss-Kronrod against the single-integral form.
  for (const char* base : {"tan", "asinh", "atanh"}) {
    const auto& fam = iterated_family(base);
    const auto f0 = fam.base();
    auto i1 = [&](double t) { return gk_transform(f0, t); };
    for (double z : {0.3, 0.8}) {
      EXPECT_NEAR(fam.member(1)(z), i1(z), 1e-13) << base;
      EXPECT_NEAR(fam.member(2)(z), gk_transform(i1, z), 1e-12) << base;
    }
  }
}

TEST(Transform, RepeatedApplicationMatchesDepth) {
  const auto f = functions::atan();
  const auto twice = integral_transform(integral_transform(f));
  for (double z : {0.05, 0.4, 0.95}) EXPECT_NEAR(twice(z), family_member("atan", 2)(z), 1e-14);
}

TEST(Transform, TanhDepthOne) {
  const auto f = family_member("tanh", 1);
  const double z = 0.5;
  const double oracle = gk_transform([](double t) { return std::tanh(t); }, z);
  EXPECT_NEAR(f(z), oracle, 1e-15);
  EXPECT_GT(f(z), std::tanh(z));
  EXPECT_LT(f(z), z);
  EXPECT_GT(f(z), z / (1 + z));
}

TEST(Transform, ArtanhDepthTwoInBand) {
  EXPECT_TRUE(check_seiffert(family_member("artanh", 2), 256).passed());
}

TEST(Transform, Sandwich) {
  const std::vector<std::string> concave{"sin", "asinh", "atan", "tanh"};
  const std::vector<std::string> convex{"sinh", "asin", "tan", "atanh"};
  const auto grid = open_grid(200, 1e-6);
  for (const auto& b : concave) {
    const auto f = family_member(b, 0), g = family_member(b, 1);
    for (double z : grid) {
      EXPECT_LE(f.deviation(z), g.deviation(z)) << b << " " << z;
      EXPECT_LE(g.deviation(z), 0.0) << b << " " << z;
    }
  }
  for (const auto& b : convex) {
    const auto f = family_member(b, 0), g = family_member(b, 1);
    for (double z : grid) {
      EXPECT_GE(f.deviation(z), g.deviation(z)) << b << " " << z;
      EXPECT_GE(g.deviation(z), 0.0) << b << " " << z;
    }
  }
}

TEST(Transform, Monotone) {
  // tanh <= sin on (0,1), so I(tanh) <= I(sin).
  const auto a = family_member("tanh", 1), b = family_member("sin", 1);
  for (double z : open_grid(200, 1e-6)) EXPECT_LE(a.deviation(z), b.deviation(z));
}

TEST(Transform, AllMembersInBand) {
  for (const auto& label : family_labels())
    for (std::size_t n = 0; n <= 3; ++n)
      EXPECT_TRUE(check_seiffert(family_member(label, n), 256).passed()) << label << n;
}

TEST(Transform, ArcsineMinusTangentIntegralAtOne) {
  const double u = family_member("asin", 1)(1.0) - family_member("tan", 1)(1.0);
  // Independent high-precision quadrature of (arcsin t - tan t)/t on (0,1).
  EXPECT_NEAR(u, -0.0603581853717295, 1e-13);
  // ASi_1(1) = (pi/2) log 2
  EXPECT_NEAR(family_member("asin", 1)(1.0), M_PI / 2 * std::log(2.0), 1e-13);
}

TEST(Transform, DepthCap) {
  EXPECT_THROW(family_member("sin", 7), PreconditionError);
  EXPECT_NO_THROW(family_member("sin", 7, 8));
  EXPECT_THROW(family_member("cos", 1), PreconditionError);
  EXPECT_EQ(family_member("sin", 2).name(), "Si_2");
  EXPECT_EQ(family_member("sin", 0).name(), "sin");
}
