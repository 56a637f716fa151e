#include <gtest/gtest.h>

#include <numbers>

#include "k3/cusp.hpp"
#include "k3/weierstrass.hpp"
#include "support/expect.hpp"

using namespace k3;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(CriticalValues, ClosedForm) {
  const UnfoldingSample s = critical_values(-3.0);
  EXPECT_NEAR(std::abs(s.u[0] - 2.0) * std::abs(s.u[0] + 2.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(s.u[0] + s.u[1]), 0.0, 1e-12);
  for (const Complex t : {Complex(0.3, -1.2), Complex(-5.0, 0.1), Complex(1e-3, 1e-3)}) {
    const UnfoldingSample v = critical_values(t);
    for (const auto& u : v.u) {
      EXPECT_LE(std::abs(4.0 * t * t * t + 27.0 * u * u), 1e-10 * std::max(1.0, std::pow(std::abs(t), 3)));
      EXPECT_NEAR(std::abs(u), 2.0 / std::sqrt(27.0) * std::pow(std::abs(t), 1.5), 1e-12);
    }
  }
  EXPECT_K3_ERROR(critical_values(0.0), ErrorCode::CuspAtZero);
}

TEST(CriticalValues, CubicReallyHasADoubleRoot) {
  // At x = +-sqrt(-t/3) the derivative 3x^2 + t vanishes; the cubic vanishes
  // there for one of the two critical values.
  const Complex t(0.7, 0.4);
  const Complex x = std::sqrt(-t / 3.0);
  const UnfoldingSample s = critical_values(t);
  double best = 1e9;
  for (const Complex root : {x, -x})
    for (const auto& u : s.u) best = std::min(best, std::abs(root * root * root + t * root + u));
  EXPECT_LT(best, 1e-12);
}

TEST(Braid, ThreeHalfTwists) {
  EXPECT_NEAR(braid_winding(0.1, 4096), 3 * kPi, 1e-6);
  EXPECT_NEAR(braid_winding(0.1, 4096, true), -3 * kPi, 1e-6);
  EXPECT_NEAR(braid_winding(0.1, 16), 3 * kPi, 1e-3);
}

TEST(Braid, RadiusIndependentAndStable) {
  for (const double r : {1e-3, 0.01, 0.5, 1.0, 3.7, 10.0}) EXPECT_NEAR(braid_winding(r, 4096), 3 * kPi, 1e-6) << r;
  EXPECT_NEAR(braid_winding(0.1, 2048), braid_winding(0.1, 4096), 1e-9);
}

TEST(Braid, CoarseSamplingIsRejected) {
  EXPECT_K3_ERROR(braid_winding(0.1, 8), ErrorCode::StepTooCoarse);
  // A stricter matching margin needs finer sampling.
  EXPECT_K3_ERROR(braid_winding(0.1, 16, false, 10.0), ErrorCode::StepTooCoarse);
  EXPECT_NEAR(braid_winding(0.1, 64, false, 10.0), 3 * kPi, 1e-9);
}

TEST(Braid, LocalDiscriminantHasTwoSimpleZeros) {
  // For fixed t != 0, delta(u) = 4t^3 + 27u^2 has two simple zeros (two I1
  // fibers); at t = 0 a single double zero with a = t = 0 (type II).
  const Rational t = -3;
  const RationalPoly local(RatVector{4 * t * t * t, 0, 27});
  const auto factors = factor_rational(local);
  ASSERT_EQ(factors.size(), 2u);
  for (const auto& f : factors) {
    EXPECT_EQ(f.multiplicity, 1);
    EXPECT_EQ(classify_fiber(VanishingOrder::of(0), VanishingOrder::of(0), VanishingOrder::of(f.multiplicity)),
              (KodairaType{KodairaType::Kind::I, 1}));
  }
  const RationalPoly at_zero{0, 0, 27};
  EXPECT_EQ(multiplicity(at_zero, RationalPoly{0, 1}), 2);
  EXPECT_EQ(classify_fiber(VanishingOrder::inf(), VanishingOrder::of(1), VanishingOrder::of(2)).kind,
            KodairaType::Kind::II);
}
