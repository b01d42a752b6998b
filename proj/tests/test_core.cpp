#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "seiffert/catalog.hpp"
#include "seiffert/core.hpp"

using namespace seiffert;

namespace {

TEST(Bijection, IdentityGivesArithmeticMean) {
  const Mean a = mean_from_seiffert(functions::identity());
  EXPECT_DOUBLE_EQ(a(1.0, 3.0), 2.0);
  EXPECT_DOUBLE_EQ(a(5.0, 5.0), 5.0);
}

TEST(Bijection, AtanhGivesLogarithmicMean) {
  const Mean l = mean_from_seiffert(functions::atanh());
  const double e2 = std::exp(2.0);
  EXPECT_NEAR(l(1.0, e2), (e2 - 1.0) / 2.0, 1e-14);
}

TEST(Bijection, ArcsinGivesSeiffertP) {
  // Oracle: P(1, 3) = (3 - 1) / (2 asin(1/2)) = 6 / pi.
  const Mean p = mean_from_seiffert(functions::asin());
  EXPECT_NEAR(p(1.0, 3.0), 6.0 / std::numbers::pi, 1e-15);
  EXPECT_NEAR(p(1.0, 3.0), means::seiffert_p()(1.0, 3.0), 1e-15);
}

TEST(Bijection, SeiffertFunctionsOfMinMaxAndA) {
  const auto fmin = seiffert_from_mean(means::minimum());
  const auto fmax = seiffert_from_mean(means::maximum());
  const auto fa = seiffert_from_mean(means::arithmetic());
  for (double z : {0.01, 0.25, 0.5, 0.9}) {
    EXPECT_NEAR(fmin(z), z / (1.0 - z), 1e-15 * fmin(z));
    EXPECT_NEAR(fmax(z), z / (1.0 + z), 1e-15);
    EXPECT_NEAR(fa(z), z, 1e-16);
  }
}

TEST(Bijection, DiagonalNeverEvaluatesAtZero) {
  bool touched_zero = false;
  SeiffertFunction f("probe", [&](double z) {
    if (z == 0.0) touched_zero = true;
    return z;
  }, PowerSeries::identity(), true);
  const Mean m = mean_from_seiffert(f);
  EXPECT_EQ(m(2.0, 2.0), 2.0);
  EXPECT_FALSE(touched_zero);
  // Near-diagonal pairs go through the expansion and stay accurate.
  EXPECT_NEAR(m(1.0, 1.0 + 1e-12), 1.0 + 5e-13, 1e-15);
}

TEST(Bijection, RejectsFunctionsOutsideTheBand) {
  SeiffertFunction bad("2z", [](double z) { return 2.0 * z; });
  try {
    (void)mean_from_seiffert(bad);
    FAIL() << "expected BandViolation";
  } catch (const BandViolation& e) {
    EXPECT_GT(e.witness(), 0.0);
    EXPECT_LT(e.witness(), 1.0);
  }
}

TEST(Catalog, SeriesHeadsAgreeWithDirectEvaluation) {
  // The stored expansions were derived by series arithmetic; compare with
  // the closed forms at moderate z where both are accurate.
  std::vector<Mean> ms = MeanCatalog::standard().all();
  ms.push_back(means::gini(1.0, 0.5));
  ms.push_back(means::gini(1.0, 1.0));
  ms.push_back(means::gini(2.0, -1.0));
  ms.push_back(means::power(1.5));
  ms.push_back(means::power(-0.5));
  for (const Mean& m : ms) {
    ASSERT_TRUE(m.seiffert_series()) << m.name();
    for (double z : {0.02, 0.08}) {
      const double direct = z / m(1.0 + z, 1.0 - z);
      EXPECT_NEAR((*m.seiffert_series())(z), direct, 2e-15 * z) << m.name() << " z=" << z;
    }
  }
}

TEST(Catalog, QuotientMeanHeadIsKnownExpansion) {
  // z (2 + sqrt(1 - z^2)) / (3 + z^2) = z - z^3/2 + z^5/8 - z^7/16 + ...
  const auto& s = *means::quotient().seiffert_series();
  EXPECT_NEAR(s[1], 1.0, 1e-15);
  EXPECT_NEAR(s[3], -0.5, 1e-15);
  EXPECT_NEAR(s[5], 0.125, 1e-15);
  EXPECT_NEAR(s[7], -0.0625, 1e-15);
}

TEST(Catalog, EveryEntryIsValid) {
  for (const Mean& m : MeanCatalog::standard().all()) {
    const auto rep = validate_mean(m);
    EXPECT_TRUE(rep.passed()) << m.name();
  }
  for (const auto& f : SeiffertCatalog::standard().all()) {
    EXPECT_TRUE(check_seiffert(f).passed()) << f.name();
  }
  EXPECT_THROW((void)MeanCatalog::standard().at("nope"), PreconditionError);
}

TEST(ValidateMean, HarmonicAndContraharmonicPass) {
  EXPECT_TRUE(validate_mean(means::harmonic()).passed());
  const auto rep = validate_mean(means::contraharmonic());
  EXPECT_TRUE(rep.passed());
  // Direct check C(x, y) <= max(x, y): x^2 + y^2 <= max (x + y).
  for (auto [x, y] : sample_pairs(256)) EXPECT_LE(means::contraharmonic()(x, y), std::max(x, y));
}

TEST(ValidateMean, CubicOutsideLowerLimitFailsNearOne) {
  SeiffertFunction cubic("z-0.6z^3", [](double z) { return z - 0.6 * z * z * z; });
  // Build the mean without the band gate to exercise validate_mean itself.
  const Mean m("S[z-0.6z^3]",
               [cubic](double x, double y) {
                 const double d = std::abs(x - y);
                 return d / (2.0 * cubic(d / (x + y)));
               },
               false);
  const auto rep = validate_mean(m);
  EXPECT_FALSE(rep.passed());
  const auto* bet = rep.find("betweenness");
  ASSERT_NE(bet, nullptr);
  EXPECT_FALSE(bet->passed);
  const double z = std::abs(bet->witness.x - bet->witness.y) / (bet->witness.x + bet->witness.y);
  EXPECT_GT(z, 0.9);
  EXPECT_THROW((void)mean_from_seiffert(cubic), BandViolation);
}

TEST(ValidateMean, CubicWithPositiveCoefficientIsInsideTheBand) {
  // z + a z^3 stays below z/(1-z) for every a <= 4, so a = 0.6 is a genuine
  // Seiffert function; only a < -1/2 breaks the band.
  SeiffertFunction cubic("z+0.6z^3", [](double z) { return z + 0.6 * z * z * z; },
                         PowerSeries{0.0, 1.0, 0.0, 0.6});
  EXPECT_TRUE(check_seiffert(cubic).passed());
  EXPECT_TRUE(validate_mean(mean_from_seiffert(cubic)).passed());
}

TEST(ValidateMean, FailuresAreReportedNotThrown) {
  const Mean sq("H^2/A",
                [](double x, double y) {
                  const double h = 2.0 * x * y / (x + y);
                  return h * h / (0.5 * (x + y));
                },
                false);
  VerificationReport rep;
  EXPECT_NO_THROW(rep = validate_mean(sq));
  EXPECT_FALSE(rep.passed());
  EXPECT_TRUE(rep.find("betweenness")->witness.is_pair());
  EXPECT_THROW((void)validate_mean(sq, 0), PreconditionError);
}

TEST(Roundtrip, IdentitiesHoldForCatalogEntries) {
  const auto rep = roundtrip_check(functions::sin(), means::contraharmonic());
  EXPECT_TRUE(rep.passed()) << rep.checks[0].worst_margin << " " << rep.checks[1].worst_margin;
  const auto rep2 = roundtrip_check(functions::tan(), means::gini(1.0, 0.5));
  EXPECT_TRUE(rep2.passed());
  EXPECT_LT(rep2.find("mean_roundtrip")->worst_margin, 1e-12);
}

TEST(Properties, BijectionIsIdempotentOnCatalogMeans) {
  for (const Mean& m : MeanCatalog::standard().all()) {
    const auto f = seiffert_from_mean(m);
    const auto f2 = seiffert_from_mean(mean_from_seiffert(f));
    for (double z : open_grid(257)) {
      EXPECT_LE(detail::rel_diff(f(z), f2(z)), 1e-12) << m.name() << " z=" << z;
    }
  }
}

TEST(Properties, MinAndMaxBracketEveryCatalogFunction) {
  const auto fmin = functions::of_min();
  const auto fmax = functions::of_max();
  for (const auto& f : SeiffertCatalog::standard().all()) {
    for (double z : open_grid(513)) {
      EXPECT_LE(f.deviation(z), fmin.deviation(z) + 1e-30) << f.name();
      EXPECT_GE(f.deviation(z), fmax.deviation(z) - 1e-30) << f.name();
    }
  }
}

TEST(Properties, AntimonotonicityOnKnownOrders) {
  // min < H < G < L < P < A < NS < T < Q < C < max, strict in the middle.
  const std::vector<Mean> chain = {means::minimum(),    means::harmonic(),   means::geometric(),
                                   means::logarithmic(), means::seiffert_p(), means::arithmetic(),
                                   means::neuman_sandor(), means::seiffert_t(),
                                   means::root_mean_square(), means::contraharmonic(),
                                   means::maximum()};
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    const auto f = seiffert_from_mean(chain[i]);
    const auto g = seiffert_from_mean(chain[i + 1]);
    for (double z : open_grid(513)) {
      // M <= N  <=>  f_M >= f_N; strict pairs give strict inequality.
      EXPECT_GT(f.deviation(z), g.deviation(z)) << chain[i].name() << " vs " << chain[i + 1].name()
                                               << " z=" << z;
    }
  }
}

}  // namespace
