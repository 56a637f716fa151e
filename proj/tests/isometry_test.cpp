#include <gtest/gtest.h>

#include "k3/isometry.hpp"
#include "support/expect.hpp"
#include "support/generators.hpp"

using namespace k3;
using k3::gen::unit;

namespace {

const GramLattice& k3h() {
  static const GramLattice h = k3_lattice();
  return h;
}

// x -> x + (x.e) gamma - (x.gamma) e - 1/2 (gamma.gamma)(x.e) e, evaluated
// vector by vector rather than through the matrix.
IntVector eichler_by_formula(const GramLattice& h, const IntVector& e, const IntVector& gamma, const IntVector& x) {
  const Integer xe = h.inner(x, e), xg = h.inner(x, gamma), gg = h.norm(gamma);
  IntVector out = x;
  for (std::size_t i = 0; i < x.size(); ++i) out[i] += xe * gamma[i] - xg * e[i] - (gg / 2) * xe * e[i];
  return out;
}

}  // namespace

TEST(Isometry, VerifyReportsViolation) {
  const GramLattice u = hyperbolic_plane();
  EXPECT_NO_THROW(verify_isometry(u, IntMatrix{{0, 1}, {1, 0}}));
  EXPECT_NO_THROW(verify_isometry(u, IntMatrix{{-1, 0}, {0, -1}}));
  EXPECT_K3_ERROR(verify_isometry(u, IntMatrix{{1, 1}, {0, 1}}), ErrorCode::NotIsometry);
  EXPECT_K3_ERROR(verify_isometry(u, IntMatrix{{2, 0}, {0, 1}}), ErrorCode::NotIsometry);
}

TEST(Reflection, Basics) {
  const GramLattice& h = k3h();
  const IntVector alpha = gen::add(unit(22, 0), unit(22, 1), -1);
  const Isometry s = reflection(h, alpha);
  EXPECT_EQ(s(alpha), gen::negate(alpha));
  EXPECT_TRUE((s * s).is_identity());
  EXPECT_K3_ERROR(reflection(h, unit(22, 0)), ErrorCode::NotMinusTwo);
}

TEST(Eichler, MatrixMatchesFormula) {
  const GramLattice& h = k3h();
  gen::Rng rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const IntVector e = gen::random_isotropic(rng, h);
    const IntVector gamma = gen::random_perp(rng, h, e);
    const Isometry m = eichler(h, e, gamma);
    const IntVector x = gen::random_vector(rng, 22, 4);
    EXPECT_EQ(m(x), eichler_by_formula(h, e, gamma, x));
    EXPECT_EQ(m(e), e);
    EXPECT_NO_THROW(verify_isometry(h, m.matrix()));
  }
}

TEST(Eichler, GroupLaws) {
  const GramLattice& h = k3h();
  gen::Rng rng(42);
  const IntVector e = gen::random_isotropic(rng, h);
  for (int trial = 0; trial < 20; ++trial) {
    const IntVector g1 = gen::random_perp(rng, h, e), g2 = gen::random_perp(rng, h, e);
    EXPECT_TRUE(eichler_compose_check(h, e, g1, g2));
    EXPECT_EQ(eichler(h, e, gen::add(g1, e)).matrix(), eichler(h, e, g1).matrix());
  }
  EXPECT_TRUE(eichler(h, e, IntVector(22, 0)).is_identity());
  EXPECT_K3_ERROR(eichler(h, e, hyperbolic_partner(h, e)), ErrorCode::NotOrthogonal);
}

TEST(Eichler, InducesIdentityOnQuotient) {
  const GramLattice& h = k3h();
  gen::Rng rng(43);
  const IntVector e = gen::random_isotropic(rng, h);
  const IsotropicQuotient q = quotient_by_isotropic(h, e);
  for (int trial = 0; trial < 10; ++trial)
    EXPECT_TRUE(induced_on_quotient(q, eichler(h, e, gen::random_perp(rng, h, e))).is_identity());
  EXPECT_K3_ERROR(induced_on_quotient(q, minus_identity(h)), ErrorCode::DoesNotFixE);
}

TEST(Spinor, KnownSigns) {
  const GramLattice& h = k3h();
  const SpinorFrame frame = positive_frame(h);
  const IntVector alpha = gen::add(unit(22, 0), unit(22, 1), -1);
  EXPECT_EQ(spinor_sign(h, reflection(h, alpha), frame), 1);
  EXPECT_EQ(spinor_sign(h, minus_identity(h), frame), -1);
  EXPECT_EQ(spinor_sign(h, identity_isometry(h), hyperbolic_frame(h, 3)), 1);
  // Reflection in a positive vector of norm 2 reverses the orientation.
  const IntMatrix s_plus = [&] {
    const IntVector v = gen::add(unit(22, 0), unit(22, 1));
    IntMatrix m = IntMatrix::identity(22);
    const IntVector gv = h.dual(v);
    for (std::size_t i = 0; i < 22; ++i)
      for (std::size_t j = 0; j < 22; ++j) m(i, j) -= v[i] * gv[j];
    return m;
  }();
  EXPECT_EQ(spinor_sign(h, verify_isometry(h, s_plus), frame), -1);
  const GramLattice he = standard_quotient_lattice();
  EXPECT_EQ(spinor_sign(he, minus_identity(he), positive_frame(he)), 1);
}

TEST(Spinor, FrameValidation) {
  const GramLattice& h = k3h();
  EXPECT_K3_ERROR(spinor_sign(h, minus_identity(h), hyperbolic_frame(h, 2)), ErrorCode::DegenerateFrame);
  SpinorFrame bad = hyperbolic_frame(h, 3);
  bad.vectors[2] = to_rational(gen::add(unit(22, 4), unit(22, 5), -1));
  EXPECT_K3_ERROR(spinor_sign(h, minus_identity(h), bad), ErrorCode::DegenerateFrame);
}

TEST(Spinor, MultiplicativeAndFrameIndependent) {
  const GramLattice& h = k3h();
  gen::Rng rng(44);
  const SpinorFrame f1 = positive_frame(h), f2 = hyperbolic_frame(h, 3);
  // A third frame: the image of f2 under a random isometry.
  const Isometry g = gen::random_isometry(rng, h, 6);
  SpinorFrame f3;
  for (const auto& v : f2.vectors) f3.vectors.push_back(to_rational(g.matrix()) * v);
  for (int trial = 0; trial < 15; ++trial) {
    Isometry a = gen::random_isometry(rng, h, 3), b = gen::random_isometry(rng, h, 3);
    if (trial % 3 == 0) a = minus_identity(h) * a;
    const int sa = spinor_sign(h, a, f1), sb = spinor_sign(h, b, f1);
    EXPECT_EQ(spinor_sign(h, a * b, f1), sa * sb);
    EXPECT_EQ(spinor_sign(h, a, f2), sa);
    EXPECT_EQ(spinor_sign(h, a, f3), sa);
  }
}

TEST(ConnectLifts, MapsAlphaAndActsTriviallyOnQuotient) {
  const GramLattice& h = k3h();
  gen::Rng rng(45);
  for (int trial = 0; trial < 15; ++trial) {
    const auto [e, alpha] = gen::random_isotropic_with_root(rng, h);
    const IsotropicQuotient q = quotient_by_isotropic(h, e);
    const long long n = gen::uniform(rng, -5, 5);
    const IntVector target = gen::add(alpha, e, n);
    const Isometry m = connect_lifts(h, e, alpha, target);
    EXPECT_EQ(m(alpha), target);
    EXPECT_TRUE(induced_on_quotient(q, m).is_identity());
  }
}

TEST(ConnectLifts, Errors) {
  const GramLattice& h = k3h();
  const IntVector e = unit(22, 0);
  const IntVector alpha = gen::add(unit(22, 2), unit(22, 3), -1);
  EXPECT_K3_ERROR(connect_lifts(h, e, alpha, gen::add(alpha, unit(22, 2))), ErrorCode::NotRoots);
  const IntVector beta = gen::add(unit(22, 4), unit(22, 5), -1);
  EXPECT_K3_ERROR(connect_lifts(h, e, alpha, beta), ErrorCode::NotSameCoset);
  const IntVector sigma = gen::add(unit(22, 1), e, -1);
  EXPECT_K3_ERROR(connect_lifts(h, e, sigma, sigma), ErrorCode::NotOrthogonal);
  EXPECT_TRUE(connect_lifts(h, e, alpha, alpha).is_identity());
}

TEST(Involution, ActsAsMinusOneOnQuotient) {
  const GramLattice& h = k3h();
  gen::Rng rng(46);
  for (int trial = 0; trial < 8; ++trial) {
    // Move the standard section (e_1, f_1 - e_1) by a random isometry.
    const Isometry g = gen::random_isometry(rng, h, 5);
    const IntVector e = g(unit(22, 0));
    const IntVector sigma = g(gen::add(unit(22, 1), unit(22, 0), -1));
    const Isometry inv = involution_class(h, e, sigma);
    EXPECT_EQ(inv(e), e);
    EXPECT_EQ(inv(sigma), sigma);
    EXPECT_TRUE((inv * inv).is_identity());
    EXPECT_EQ(spinor_sign(h, inv, positive_frame(h)), 1);
    const IsotropicQuotient q = quotient_by_isotropic(h, e);
    EXPECT_EQ(induced_on_quotient(q, inv).matrix(), -IntMatrix::identity(20));
  }
}
