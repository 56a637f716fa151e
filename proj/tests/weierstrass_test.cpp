#include <gtest/gtest.h>

#include "k3/weierstrass.hpp"
#include "support/expect.hpp"
#include "support/generators.hpp"

using namespace k3;
using K = KodairaType::Kind;

namespace {

RationalPoly s_pow(std::size_t k) { return RationalPoly::monomial(1, k); }
RationalPoly c(long long v) { return RationalPoly::constant(v); }
VanishingOrder o(int v) { return VanishingOrder::of(v); }
const VanishingOrder kInf = VanishingOrder::inf();

const FiberReport& fiber_at(const FibrationAnalysis& a, const Place& p) {
  for (const auto& f : a.fibers)
    if (f.place == p) return f;
  throw std::runtime_error("no fiber at " + p.str());
}

// Orders at a rational point s = r computed by Taylor expansion rather than
// by factor division: the number of leading vanishing derivatives at r.
int order_by_derivatives(RationalPoly f, const Rational& r) {
  int k = 0;
  while (!f.is_zero() && f(r) == 0) {
    f = f.derivative();
    ++k;
  }
  return k;
}

}  // namespace

TEST(Kodaira, Table) {
  EXPECT_EQ(classify_fiber(o(0), o(0), o(0)).kind, K::Smooth);
  EXPECT_EQ(classify_fiber(o(0), o(0), o(1)), (KodairaType{K::I, 1}));
  EXPECT_EQ(classify_fiber(o(0), o(0), o(5)), (KodairaType{K::I, 5}));
  EXPECT_EQ(classify_fiber(kInf, o(1), o(2)).kind, K::II);
  EXPECT_EQ(classify_fiber(o(1), o(1), o(2)).kind, K::II);
  EXPECT_EQ(classify_fiber(o(1), kInf, o(3)).kind, K::III);
  EXPECT_EQ(classify_fiber(o(2), o(2), o(4)).kind, K::IV);
  EXPECT_EQ(classify_fiber(o(2), o(3), o(6)), (KodairaType{K::IStar, 0}));
  EXPECT_EQ(classify_fiber(o(2), o(3), o(9)), (KodairaType{K::IStar, 3}));
  EXPECT_EQ(classify_fiber(o(3), o(4), o(8)).kind, K::IVStar);
  EXPECT_EQ(classify_fiber(o(3), kInf, o(9)).kind, K::IIIStar);
  EXPECT_EQ(classify_fiber(o(4), o(5), o(10)).kind, K::IIStar);
  EXPECT_K3_ERROR(classify_fiber(o(4), o(6), o(12)), ErrorCode::NonMinimal);
  EXPECT_K3_ERROR(classify_fiber(o(1), o(1), o(3)), ErrorCode::InconsistentOrders);
  EXPECT_K3_ERROR(classify_fiber(o(0), o(0), kInf), ErrorCode::InconsistentOrders);
}

TEST(Kodaira, EulerNumbersAndMonodromy) {
  // Euler number equals ord(delta) for every minimal fiber type.
  const std::vector<std::pair<KodairaType, int>> rows = {
      {{K::I, 3}, 3}, {{K::II, 0}, 2},     {{K::III, 0}, 3},    {{K::IV, 0}, 4},
      {{K::IStar, 2}, 8}, {{K::IVStar, 0}, 8}, {{K::IIIStar, 0}, 9}, {{K::IIStar, 0}, 10}};
  for (const auto& [t, e] : rows) {
    EXPECT_EQ(euler_number(t), e) << t.str();
    const IntMatrix m = local_monodromy(t);
    EXPECT_EQ(bareiss_determinant(m), 1) << t.str();
  }
  // Finite-order monodromies: II has order 6, III order 4, IV order 3.
  auto order = [](const IntMatrix& m) {
    IntMatrix p = m;
    for (int k = 1; k <= 12; ++k) {
      if (p == IntMatrix::identity(2)) return k;
      p = p * m;
    }
    return 0;
  };
  EXPECT_EQ(order(local_monodromy({K::II, 0})), 6);
  EXPECT_EQ(order(local_monodromy({K::III, 0})), 4);
  EXPECT_EQ(order(local_monodromy({K::IV, 0})), 3);
  EXPECT_EQ(order(local_monodromy({K::IIStar, 0})), 6);
  EXPECT_K3_ERROR(local_monodromy({K::Smooth, 0}), ErrorCode::SmoothFiber);
}

TEST(Weierstrass, CuspidalSextic) {
  const WeierstrassModel m(RationalPoly(), s_pow(12) - c(1));
  const FibrationAnalysis a = analyze(m);
  EXPECT_EQ(a.fibers.size(), 6u);
  int weighted = 0;
  for (const auto& f : a.fibers) {
    EXPECT_EQ(f.kodaira.kind, K::II);
    EXPECT_EQ(f.orders, (OrderTriple{kInf, o(1), o(2)}));
    weighted += f.place_degree;
  }
  EXPECT_EQ(weighted, 12);
  EXPECT_EQ(a.summary.total_ord_delta, 24);
  EXPECT_EQ(a.summary.total_euler, 24);
  EXPECT_TRUE(a.summary.is_integral);
  EXPECT_FALSE(a.summary.is_nodal);
}

TEST(Weierstrass, I2AtOrigin) {
  const WeierstrassModel m(c(-3) + s_pow(8), c(2) + s_pow(2) + s_pow(12));
  const FibrationAnalysis a = analyze(m);
  const FiberReport& f = fiber_at(a, Place::finite(s_pow(1)));
  EXPECT_EQ(f.kodaira, (KodairaType{K::I, 2}));
  EXPECT_EQ(f.orders, (OrderTriple{o(0), o(0), o(2)}));
  EXPECT_EQ(order_by_derivatives(discriminant(m), 0), 2);
  EXPECT_EQ(a.summary.total_ord_delta, 24);
  EXPECT_FALSE(a.summary.is_integral);
}

TEST(Weierstrass, NonMinimalAtInfinity) {
  const WeierstrassModel m(Rational(-3) * s_pow(4), s_pow(6) + c(1));
  try {
    analyze(m);
    FAIL() << "expected NonMinimal";
  } catch (const NonMinimalError& err) {
    EXPECT_EQ(err.code(), ErrorCode::NonMinimal);
    EXPECT_EQ(err.places(), std::vector<Place>{Place::infinity()});
  }
  // The chart at infinity sees the same orders at s' = 0.
  const WeierstrassModel flipped = m.at_infinity_chart();
  EXPECT_EQ(ord_at(flipped, Place::finite(s_pow(1))), ord_at(m, Place::infinity()));
}

TEST(Weierstrass, IdenticallyZeroDiscriminant) {
  // a = -3 t^2, b = 2 t^3 with t = s: 4a^3 + 27b^2 = -108 s^6 + 108 s^6 = 0.
  const WeierstrassModel m(Rational(-3) * s_pow(2), Rational(2) * s_pow(3));
  EXPECT_K3_ERROR(analyze(m), ErrorCode::IdenticallyZero);
  EXPECT_K3_ERROR(WeierstrassModel(s_pow(9), c(1)), ErrorCode::DimensionMismatch);
}

TEST(Weierstrass, ClassicalConfigurations) {
  // a = 0, b = s^5 (1 + s^2): ord_0 b = 5 and ord_inf b = 12 - 7 = 5 give II*
  // at both ends, and s^2 + 1 is a degree-2 place of type II.
  const WeierstrassModel m(RationalPoly(), s_pow(5) + s_pow(7));
  const FibrationAnalysis a = analyze(m);
  EXPECT_EQ(fiber_at(a, Place::finite(s_pow(1))).kodaira.kind, K::IIStar);
  EXPECT_EQ(fiber_at(a, Place::infinity()).kodaira.kind, K::IIStar);
  EXPECT_EQ(fiber_at(a, Place::finite(RationalPoly{1, 0, 1})).kodaira.kind, K::II);
  EXPECT_EQ(a.summary.total_euler, 24);
  // I*0 at 0: a = s^2 a0, b = s^3 b0 with a0, b0 generic.
  const WeierstrassModel istar(s_pow(2) * (c(1) + s_pow(3)), s_pow(3) * (c(1) + s_pow(5)));
  const FibrationAnalysis b = analyze(istar);
  EXPECT_EQ(fiber_at(b, Place::finite(s_pow(1))).kodaira, (KodairaType{K::IStar, 0}));
  EXPECT_EQ(b.summary.total_euler, 24);
}

TEST(Weierstrass, RandomModelsAreNodal) {
  gen::Rng rng(71);
  int checked = 0;
  while (checked < 15) {
    const WeierstrassModel m(gen::random_poly(rng, 8, 5), gen::random_poly(rng, 12, 5));
    const RationalPoly delta = discriminant(m);
    if (delta.degree() != 24 || poly_gcd(delta, delta.derivative()).degree() != 0) continue;
    ++checked;
    const FibrationAnalysis a = analyze(m);
    int weighted = 0;
    for (const auto& f : a.fibers) {
      EXPECT_EQ(f.kodaira, (KodairaType{K::I, 1}));
      weighted += f.place_degree;
    }
    EXPECT_EQ(weighted, 24);
    EXPECT_TRUE(a.summary.is_nodal);
    EXPECT_TRUE(a.summary.is_integral);
    EXPECT_EQ(a.summary.total_euler, 24);
  }
}

TEST(Weierstrass, OrdersAgreeWithTaylorExpansion) {
  gen::Rng rng(72);
  for (int trial = 0; trial < 10; ++trial) {
    // Plant vanishing at s = r.
    const Rational r(gen::uniform(rng, -3, 3), gen::uniform(rng, 1, 3));
    const RationalPoly lin(RatVector{-r, 1});
    const int ka = static_cast<int>(gen::uniform(rng, 0, 3)), kb = static_cast<int>(gen::uniform(rng, 0, 4));
    const RationalPoly a = lin.pow(static_cast<unsigned>(ka)) * gen::random_poly(rng, 8 - ka, 4);
    const RationalPoly b = lin.pow(static_cast<unsigned>(kb)) * gen::random_poly(rng, 12 - kb, 4);
    const WeierstrassModel m(a, b);
    const OrderTriple ord = ord_at(m, Place::finite(lin.monic()));
    EXPECT_EQ(ord.a, o(order_by_derivatives(a, r)));
    EXPECT_EQ(ord.b, o(order_by_derivatives(b, r)));
    EXPECT_EQ(ord.delta, o(order_by_derivatives(Rational(4) * a.pow(3) + Rational(27) * b.pow(2), r)));
  }
}
