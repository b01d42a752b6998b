#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "seiffert/bounds.hpp"
#include "seiffert/catalog.hpp"

using namespace seiffert;

namespace {

constexpr double kPi = std::numbers::pi;

struct ConvexCase {
  const char* label;
  SeiffertFunction (*make)();
  double lower;
  double upper;
};

const ConvexCase kConvexCases[] = {
    {"sin", functions::sin, 0.5, 1.0 / (2.0 * std::sin(1.0))},
    {"asin", functions::asin, 1.0 / kPi, 0.5},
    {"tan", functions::tan, 1.0 / (2.0 * std::tan(1.0)), 0.5},
    {"atan", functions::atan, 0.5, 2.0 / kPi},
    {"sinh", functions::sinh, 1.0 / (2.0 * std::sinh(1.0)), 0.5},
    {"asinh", functions::asinh, 0.5, 1.0 / (2.0 * std::asinh(1.0))},
    {"tanh", functions::tanh, 0.5, 1.0 / (2.0 * std::tanh(1.0))},
    {"atanh", functions::atanh, 0.0, 0.5},
};

class ConvexExample : public ::testing::TestWithParam<ConvexCase> {};

}  // namespace

TEST_P(ConvexExample, ReproducesClosedFormWeights) {
  const auto& c = GetParam();
  const BoundResult b =
      convex_combination_bounds(functions::of_min(), c.make(), functions::of_max());
  EXPECT_NEAR(b.lower_constant, c.lower, 1e-9) << c.label;
  EXPECT_NEAR(b.upper_constant, c.upper, 1e-9) << c.label;
  EXPECT_NE(b.monotone, 0) << c.label;
}

INSTANTIATE_TEST_SUITE_P(MinMax, ConvexExample, ::testing::ValuesIn(kConvexCases),
                         [](const auto& info) { return std::string(info.param.label); });

TEST(ConvexBounds, MeanOverloadAgreesForSeiffertP) {
  const BoundResult b =
      convex_combination_bounds(means::minimum(), means::seiffert_p(), means::maximum());
  EXPECT_NEAR(b.lower_constant, 1.0 / kPi, 1e-9);
  EXPECT_NEAR(b.upper_constant, 0.5, 1e-9);
  EXPECT_EQ(b.lower_extremizer.kind, Location::Kind::upper_limit);
  EXPECT_EQ(b.upper_extremizer.kind, Location::Kind::lower_limit);
}

TEST(ConvexBounds, GeometricBetweenHarmonicAndArithmetic) {
  // 1/f_H - 1/z = -z and 1/f_G - 1/z = (sqrt(1 - z^2) - 1)/z, so
  // R = (sqrt(1 - z^2) - 1 + z^2)/z^2 falls from 1/2 to 0.
  const BoundResult b =
      convex_combination_bounds(means::harmonic(), means::geometric(), means::arithmetic());
  EXPECT_NEAR(b.lower_constant, 0.0, 1e-9);
  EXPECT_NEAR(b.upper_constant, 0.5, 1e-9);
  EXPECT_EQ(b.monotone, -1);
}

TEST(ConvexBounds, RejectsWrongOrder) {
  EXPECT_THROW(convex_combination_bounds(means::maximum(), means::seiffert_p(), means::minimum()),
               PreconditionError);
  EXPECT_THROW(convex_combination_bounds(functions::of_min(), functions::of_max(),
                                         functions::sin()),
               PreconditionError);
}

TEST(ConvexBounds, SoundOnSamplesWithTighteningWitnesses) {
  const Mean lo = means::minimum(), hi = means::maximum();
  for (const Mean& m : {means::seiffert_p(), means::seiffert_t()}) {
    const BoundResult b = convex_combination_bounds(lo, m, hi);
    const VerificationReport rep = verify_convex_bounds(lo, m, hi, b);
    EXPECT_TRUE(rep.passed()) << m.name();
    EXPECT_TRUE(rep.find("mu + delta violates")->witness.is_pair());
  }
}

TEST(ConvexBounds, LogarithmicLowerWeightHasNoFiniteWitness) {
  // mu = 0 is approached only as z -> 1 like 1/artanh(z); a weight of 1e-3
  // would need z within e^-1000 of 1.
  const Mean lo = means::minimum(), hi = means::maximum(), l = means::logarithmic();
  const BoundResult b = convex_combination_bounds(lo, l, hi);
  EXPECT_NEAR(b.lower_constant, 0.0, 1e-12);
  const VerificationReport rep = verify_convex_bounds(lo, l, hi, b);
  EXPECT_TRUE(rep.find("lower bound holds")->passed);
  EXPECT_TRUE(rep.find("upper bound holds")->passed);
  EXPECT_TRUE(rep.find("nu - delta violates")->passed);
  EXPECT_FALSE(rep.find("mu + delta violates")->passed);
}

TEST(HatInverse, ContraharmonicExample) {
  const SeiffertFunction fc = seiffert_from_mean(means::contraharmonic());
  EXPECT_NEAR(hat_inverse(fc, 0.8), 0.5, 1e-13);
  EXPECT_NEAR(hat_inverse(fc, 1.0 / (1.0 + 0.09)), 0.3, 1e-13);
}

TEST(HatInverse, HarmonicIsIncreasing) {
  const SeiffertFunction fh = seiffert_from_mean(means::harmonic());
  EXPECT_NEAR(hat_inverse(fh, 1.0 / (1.0 - 0.49)), 0.7, 1e-12);
}

TEST(HatInverse, RejectsConstantAndOutOfRange) {
  EXPECT_THROW(hat_inverse(functions::identity(), 1.0), PreconditionError);
  const SeiffertFunction fc = seiffert_from_mean(means::contraharmonic());
  EXPECT_THROW(hat_inverse(fc, 0.4), PreconditionError);
  EXPECT_THROW(hat_inverse(fc, 1.1), PreconditionError);
}

class GiniVsContraharmonic : public ::testing::TestWithParam<double> {};

TEST_P(GiniVsContraharmonic, Constants) {
  const double a = GetParam();
  const BoundResult b = shift_bounds(means::gini(1.0, a), means::contraharmonic());
  EXPECT_NEAR(b.lower_constant, std::sqrt(a / 2.0), 1e-9);
  EXPECT_NEAR(b.upper_constant, 1.0, 1e-9);
  EXPECT_EQ(b.note.rfind("case A", 0), 0u);
}

INSTANTIATE_TEST_SUITE_P(Alpha, GiniVsContraharmonic, ::testing::Values(0.5, 1.0, 1.5));

TEST(ShiftBounds, PowerVsRootMeanSquare) {
  const double a = 1.5;
  const BoundResult b = shift_bounds(means::power(a), means::root_mean_square());
  EXPECT_NEAR(b.lower_constant, std::sqrt(a - 1.0), 1e-9);
  EXPECT_NEAR(b.upper_constant, std::sqrt(std::pow(4.0, 1.0 - 1.0 / a) - 1.0), 1e-9);
}

class PowerVsHarmonic : public ::testing::TestWithParam<double> {};

TEST_P(PowerVsHarmonic, UpperShiftConstant) {
  const double a = GetParam();
  const BoundResult b = shift_bounds(means::power(a), means::harmonic());
  EXPECT_NEAR(b.lower_constant, std::sqrt((1.0 - a) / 2.0), 1e-9);
  EXPECT_EQ(b.note.rfind("case N", 0), 0u);
  EXPECT_NE(b.note.find("increasing"), std::string::npos);
}

INSTANTIATE_TEST_SUITE_P(Alpha, PowerVsHarmonic, ::testing::Values(-0.5, 0.0, 0.5));

TEST(ShiftBounds, QuotientVsContraharmonic) {
  const BoundResult b = shift_bounds(means::quotient(), means::contraharmonic());
  EXPECT_NEAR(b.lower_constant, std::sqrt(2.0) / 2.0, 1e-9);
  EXPECT_NEAR(b.upper_constant, 1.0, 1e-9);
  // Closed form of the objective: sqrt((1 - sqrt(1 - z^2)) / z^2).
  BoundResult traced;
  SearchOptions opt;
  opt.grid = 256;
  opt.keep_trace = true;
  traced = shift_bounds(means::quotient(), means::contraharmonic(), opt);
  for (const auto& [z, v] : traced.objective_trace) {
    const double s = std::sqrt((1.0 - z) * (1.0 + z));
    EXPECT_NEAR(v, std::sqrt(1.0 / (1.0 + s)), 1e-12) << z;
  }
}

TEST(ShiftBounds, SoundOnSamples) {
  const Mean m = means::gini(1.0, 0.5), c = means::contraharmonic();
  const BoundResult b = shift_bounds(m, c);
  const VerificationReport rep = verify_shift_bounds(m, c, b);
  EXPECT_TRUE(rep.find("p0 side holds")->passed);
  EXPECT_TRUE(rep.find("q0 side holds")->passed);
  EXPECT_TRUE(rep.find("p0 + delta violates")->passed);
  EXPECT_TRUE(rep.find("q0 - delta violates")->passed);

  const Mean p = means::power(0.5), h = means::harmonic();
  const BoundResult bh = shift_bounds(p, h);
  const VerificationReport rh = verify_shift_bounds(p, h, bh);
  EXPECT_TRUE(rh.find("p0 side holds")->passed);
  EXPECT_TRUE(rh.find("q0 side holds")->passed);
  EXPECT_TRUE(rh.find("p0 + delta violates")->passed);
}

TEST(ShiftBounds, RejectsMeanOutsideEitherCase) {
  EXPECT_THROW(shift_bounds(means::geometric(), means::contraharmonic()), PreconditionError);
  EXPECT_THROW(shift_bounds(means::contraharmonic(), means::quotient()), PreconditionError);
}
