#pragma once

// Exact integer and rational linear algebra: fraction-free determinants,
// Hermite row reduction with unimodular transforms, saturated integer
// kernels, and the basis-extension helpers built on them.

#include <cstddef>
#include <optional>
#include <tuple>
#include <vector>

#include "k3/numeric.hpp"

namespace k3 {

// Bareiss fraction-free elimination. Every intermediate value is a minor of
// the input, so the divisions below are exact.
inline Integer bareiss_determinant(IntMatrix m) {
  if (!m.square()) fail(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Integer previous = 1;
  int parity = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      m.swap_rows(k, swap);
      parity = -parity;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / previous;
      }
      m(i, k) = 0;
    }
    previous = m(k, k);
  }
  return parity * m(n - 1, n - 1);
}

// Gauss-Jordan inverse over the rationals; nullopt when singular.
inline std::optional<RatMatrix> rational_inverse(const RatMatrix& a) {
  if (!a.square()) fail(ErrorCode::DimensionMismatch, "inverse of a non-square matrix");
  const std::size_t n = a.rows();
  RatMatrix m = a;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return std::nullopt;
    m.swap_rows(c, p);
    inv.swap_rows(c, p);
    const Rational pivot = m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) /= pivot;
      inv(c, j) /= pivot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m(i, c) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

// Inverse of a unimodular integer matrix; throws if the matrix is not
// invertible over the integers.
inline IntMatrix integer_inverse(const IntMatrix& a) {
  auto inv = rational_inverse(to_rational(a));
  if (!inv) fail(ErrorCode::Degenerate, "singular matrix has no inverse");
  IntMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Rational& q = (*inv)(i, j);
      if (boost::multiprecision::denominator(q) != 1)
        fail(ErrorCode::Degenerate, "matrix is not unimodular");
      out(i, j) = boost::multiprecision::numerator(q);
    }
  return out;
}

// Returns (g, x, y) with x*a + y*b = g = gcd(a, b) >= 0.
inline std::tuple<Integer, Integer, Integer> extended_gcd(const Integer& a, const Integer& b) {
  Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

struct RowEchelon {
  IntMatrix form;       // U * A, in Hermite normal form
  IntMatrix transform;  // unimodular U
  std::vector<std::size_t> pivot_cols;
  std::size_t rank() const { return pivot_cols.size(); }
};

// Row-style Hermite normal form: positive pivots, entries above each pivot
// reduced into [0, pivot). The transform is tracked row for row.
inline RowEchelon hermite_rows(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  RowEchelon out{a, IntMatrix::identity(m), {}};
  IntMatrix& h = out.form;
  IntMatrix& u = out.transform;

  // row_r <- x*row_r + y*row_i ; row_i <- p*row_r + q*row_i (det 1)
  auto combine = [](IntMatrix& mat, std::size_t r, std::size_t i, const Integer& x, const Integer& y,
                    const Integer& p, const Integer& q) {
    for (std::size_t j = 0; j < mat.cols(); ++j) {
      Integer vr = mat(r, j), vi = mat(i, j);
      mat(r, j) = x * vr + y * vi;
      mat(i, j) = p * vr + q * vi;
    }
  };

  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < m; ++col) {
    for (std::size_t i = r + 1; i < m; ++i) {
      if (h(i, col) == 0) continue;
      const Integer a0 = h(r, col), b0 = h(i, col);
      auto [g, x, y] = extended_gcd(a0, b0);
      const Integer p = -b0 / g, q = a0 / g;
      combine(h, r, i, x, y, p, q);
      combine(u, r, i, x, y, p, q);
    }
    if (h(r, col) == 0) continue;
    if (h(r, col) < 0) {
      for (std::size_t j = 0; j < n; ++j) h(r, j) = -h(r, j);
      for (std::size_t j = 0; j < m; ++j) u(r, j) = -u(r, j);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer f = floor(Rational(h(i, col), h(r, col)));
      if (f == 0) continue;
      for (std::size_t j = 0; j < n; ++j) h(i, j) -= f * h(r, j);
      for (std::size_t j = 0; j < m; ++j) u(i, j) -= f * u(r, j);
    }
    out.pivot_cols.push_back(col);
    ++r;
  }
  return out;
}

// Saturated basis (as columns) of {x in Z^n : a x = 0}.
inline IntMatrix integer_kernel(const IntMatrix& a, std::size_t n) {
  if (a.rows() == 0) return IntMatrix::identity(n);
  if (a.cols() != n) fail(ErrorCode::DimensionMismatch, "kernel constraint width");
  RowEchelon ech = hermite_rows(a.transpose());
  const std::size_t rank = ech.rank();
  IntMatrix basis(n, n - rank);
  for (std::size_t k = rank; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) basis(i, k - rank) = ech.transform(k, i);
  return basis;
}

// Unimodular n x n matrix whose first column is the primitive vector c.
inline IntMatrix extend_to_unimodular(const IntVector& c) {
  const std::size_t n = c.size();
  IntMatrix column(n, 1);
  for (std::size_t i = 0; i < n; ++i) column(i, 0) = c[i];
  RowEchelon ech = hermite_rows(column);
  if (ech.rank() != 1 || ech.form(0, 0) != 1) fail(ErrorCode::NotPrimitive, "vector is not primitive");
  return integer_inverse(ech.transform);
}

// For an n x m matrix with saturated, independent columns, an m x n integer
// matrix l with l * k = identity.
inline IntMatrix left_inverse(const IntMatrix& k) {
  const std::size_t n = k.rows(), m = k.cols();
  RowEchelon ech = hermite_rows(k);
  if (ech.rank() != m) fail(ErrorCode::Degenerate, "columns are dependent");
  IntMatrix top(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) top(i, j) = ech.form(i, j);
  for (std::size_t i = 0; i < m; ++i)
    if (top(i, i) != 1) fail(ErrorCode::NotPrimitive, "columns do not span a saturated sublattice");
  IntMatrix upper(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) upper(i, j) = ech.transform(i, j);
  return integer_inverse(top) * upper;
}

// Canonical integer solution of r . x = 1. Prefers a signed unit vector at
// the first coordinate where r is +-1; otherwise the first row of the Hermite
// transform of r.
inline IntVector solve_unit_functional(const IntVector& r) {
  const std::size_t n = r.size();
  IntVector x(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (r[i] == 1 || r[i] == -1) {
      x[i] = r[i];
      return x;
    }
  }
  IntMatrix column(n, 1);
  for (std::size_t i = 0; i < n; ++i) column(i, 0) = r[i];
  RowEchelon ech = hermite_rows(column);
  if (ech.rank() != 1 || ech.form(0, 0) != 1) fail(ErrorCode::NoSolution, "functional has content != 1");
  return ech.transform.row(0);
}

}  // namespace k3
