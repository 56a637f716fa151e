#include <gtest/gtest.h>

#include "k3/linalg.hpp"
#include "support/expect.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace k3;
using k3::gen::Rng;
using k3::gen::uniform;

namespace {

IntMatrix random_matrix(Rng& rng, std::size_t r, std::size_t c, long long bound) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = uniform(rng, -bound, bound);
  return m;
}

}  // namespace

TEST(Bareiss, MatchesCharacteristicPolynomialConstant) {
  Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const auto n = static_cast<std::size_t>(uniform(rng, 1, 7));
    const IntMatrix m = random_matrix(rng, n, n, 9);
    EXPECT_EQ(Rational(bareiss_determinant(m)), oracle::determinant(m));
  }
}

TEST(Bareiss, SingularAndPivoting) {
  EXPECT_EQ(bareiss_determinant(IntMatrix{{1, 2}, {2, 4}}), 0);
  EXPECT_EQ(bareiss_determinant(IntMatrix{{0, 1}, {1, 0}}), -1);
  EXPECT_EQ(bareiss_determinant(IntMatrix{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}), -1);
}

TEST(IntegerInverse, RoundTrip) {
  const IntMatrix m{{2, 1}, {1, 1}};
  EXPECT_EQ(m * integer_inverse(m), IntMatrix::identity(2));
}

TEST(Hermite, TransformIsUnimodularAndReproducesForm) {
  Rng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const IntMatrix a = random_matrix(rng, static_cast<std::size_t>(uniform(rng, 1, 6)),
                                      static_cast<std::size_t>(uniform(rng, 1, 6)), 6);
    const RowEchelon ech = hermite_rows(a);
    EXPECT_EQ(ech.transform * a, ech.form);
    const Integer d = bareiss_determinant(ech.transform);
    EXPECT_TRUE(d == 1 || d == -1);
    for (std::size_t r = ech.rank(); r < ech.form.rows(); ++r)
      EXPECT_TRUE(is_zero(ech.form.row(r)));
  }
}

TEST(IntegerKernel, SaturatedAndAnnihilated) {
  Rng rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = static_cast<std::size_t>(uniform(rng, 2, 8));
    const IntMatrix a = random_matrix(rng, static_cast<std::size_t>(uniform(rng, 1, n - 1)), n, 5);
    const IntMatrix k = integer_kernel(a, n);
    const IntMatrix zero = a * k;
    for (std::size_t i = 0; i < zero.rows(); ++i) EXPECT_TRUE(is_zero(zero.row(i)));
    if (k.cols() > 0) EXPECT_EQ(left_inverse(k) * k, IntMatrix::identity(k.cols()));
  }
}

TEST(IntegerKernel, KnownExample) {
  // 2x + 4y + 6z = 0 has the saturated kernel of rank 2 spanned by
  // (-2, 1, 0) and (-3, 0, 1) up to unimodular change.
  const IntMatrix k = integer_kernel(IntMatrix{{2, 4, 6}}, 3);
  ASSERT_EQ(k.cols(), 2u);
  const IntMatrix expected{{-2, -3}, {1, 0}, {0, 1}};
  const IntMatrix coords = left_inverse(k) * expected;
  const Integer d = bareiss_determinant(coords);
  EXPECT_TRUE(d == 1 || d == -1);
}

TEST(ExtendToUnimodular, FirstColumnKept) {
  const IntVector c = int_vector({6, 10, 15});
  const IntMatrix m = extend_to_unimodular(c);
  EXPECT_EQ(m.col(0), c);
  const Integer d = bareiss_determinant(m);
  EXPECT_TRUE(d == 1 || d == -1);
  EXPECT_K3_ERROR(extend_to_unimodular(int_vector({2, 4})), ErrorCode::NotPrimitive);
}

TEST(UnitFunctional, Solves) {
  Rng rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    IntVector r = gen::random_vector(rng, 6, 20);
    if (content(r) != 1) continue;
    const IntVector x = solve_unit_functional(r);
    Integer dot = 0;
    for (std::size_t i = 0; i < r.size(); ++i) dot += r[i] * x[i];
    EXPECT_EQ(dot, 1);
  }
  EXPECT_EQ(solve_unit_functional(int_vector({4, -1, 1})), int_vector({0, -1, 0}));
  EXPECT_K3_ERROR(solve_unit_functional(int_vector({4, 6})), ErrorCode::NoSolution);
}
