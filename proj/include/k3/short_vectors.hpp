#pragma once

// Complete enumeration of vectors of a given norm in a definite lattice
// (Fincke-Pohst over an exact LDL^T), and the root tests built on it for
// orthogonal complements of rational positive planes.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "k3/lattice.hpp"
#include "k3/linalg.hpp"

namespace k3 {

enum class Definiteness { Positive, Negative };

class DefiniteLattice {
 public:
  DefiniteLattice(IntMatrix gram, Definiteness sign) : lattice_(std::move(gram)), sign_(sign) {
    const Signature sig = signature(lattice_);
    if (sig.null != 0) fail(ErrorCode::Degenerate, "Gram matrix is singular");
    const bool ok = sign_ == Definiteness::Positive ? sig.negative == 0 : sig.positive == 0;
    if (!ok) fail(ErrorCode::Degenerate, "Gram matrix is not definite of the stated sign");
  }

  const GramLattice& lattice() const { return lattice_; }
  const IntMatrix& gram() const { return lattice_.gram(); }
  Definiteness sign() const { return sign_; }
  std::size_t rank() const { return lattice_.rank(); }

 private:
  GramLattice lattice_;
  Definiteness sign_;
};

namespace detail {

// LLL on a positive definite Gram matrix. The Gram-Schmidt data is
// recomputed in floating point, but every basis change is applied to the
// exact Gram matrix and transform, so the result is always an exact
// unimodular change of basis (only its quality depends on rounding).
struct ReducedGram {
  IntMatrix gram;
  IntMatrix transform;  // columns: reduced basis in input coordinates
};

inline ReducedGram lll_reduce(const IntMatrix& gram) {
  const std::size_t n = gram.rows();
  ReducedGram out{gram, IntMatrix::identity(n)};
  if (n < 2) return out;
  IntMatrix& g = out.gram;
  IntMatrix& t = out.transform;
  std::vector<std::vector<double>> mu(n, std::vector<double>(n, 0.0));
  std::vector<double> bstar(n, 0.0);

  auto gso = [&]() {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        double s = g(i, j).convert_to<double>();
        for (std::size_t k = 0; k < j; ++k) s -= mu[i][k] * mu[j][k] * bstar[k];
        mu[i][j] = s / bstar[j];
      }
      double s = g(i, i).convert_to<double>();
      for (std::size_t k = 0; k < i; ++k) s -= mu[i][k] * mu[i][k] * bstar[k];
      bstar[i] = s;
    }
  };
  // b_k <- b_k - q b_j
  auto subtract = [&](std::size_t k, std::size_t j, const Integer& q) {
    for (std::size_t r = 0; r < n; ++r) t(r, k) -= q * t(r, j);
    const Integer gjj = g(j, j), gkj = g(k, j);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == k) continue;
      g(k, r) -= q * g(j, r);
      g(r, k) = g(k, r);
    }
    g(k, k) += q * q * gjj - 2 * q * gkj;
  };
  auto swap = [&](std::size_t a, std::size_t b) {
    t.swap_cols(a, b);
    g.swap_rows(a, b);
    g.swap_cols(a, b);
  };

  gso();
  std::size_t k = 1;
  std::size_t guard = 0;
  while (k < n && guard++ < 100000) {
    for (std::size_t j = k; j-- > 0;) {
      const double r = std::nearbyint(mu[k][j]);
      if (r != 0.0) {
        subtract(k, j, Integer(static_cast<long long>(r)));
        gso();
      }
    }
    if (bstar[k] >= (0.99 - mu[k][k - 1] * mu[k][k - 1]) * bstar[k - 1]) {
      ++k;
    } else {
      swap(k, k - 1);
      gso();
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
  return out;
}

// Fincke-Pohst enumeration of {x : x^T A x = target} for positive definite A.
inline std::vector<IntVector> fincke_pohst(const IntMatrix& a, const Integer& target) {
  const std::size_t n = a.rows();
  std::vector<IntVector> found;
  if (n == 0) return found;
  // A = R^T D R, R unit upper triangular: Q(x) = sum_i d_i (x_i + sum_{j>i} r_ij x_j)^2
  RatMatrix m = to_rational(a);
  std::vector<Rational> d(n);
  RatMatrix r = RatMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = m(i, i);
    if (d[i] <= 0) fail(ErrorCode::Degenerate, "Gram matrix is not positive definite");
    for (std::size_t j = i + 1; j < n; ++j) r(i, j) = m(i, j) / d[i];
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j; k < n; ++k) {
        m(j, k) -= r(i, j) * m(i, k);
        m(k, j) = m(j, k);
      }
  }

  IntVector x(n, 0);
  const Rational bound(target);
  std::function<void(std::size_t, const Rational&)> descend = [&](std::size_t i, const Rational& remaining) {
    Rational center = 0;
    for (std::size_t j = i + 1; j < n; ++j)
      if (x[j] != 0 && r(i, j) != 0) center -= r(i, j) * x[j];
    const Rational radius_sq = remaining / d[i];
    // Integers z with (z - center)^2 <= radius_sq.
    const double approx = std::sqrt(radius_sq.convert_to<double>());
    const double c = center.convert_to<double>();
    Integer lo(static_cast<long long>(std::floor(c - approx)) - 1);
    Integer hi(static_cast<long long>(std::ceil(c + approx)) + 1);
    auto inside = [&](const Integer& z) {
      const Rational off = Rational(z) - center;
      return off * off <= radius_sq;
    };
    while (Rational(lo) < center && !inside(lo)) ++lo;
    while (Rational(hi) > center && !inside(hi)) --hi;
    while (inside(lo - 1)) --lo;
    while (inside(hi + 1)) ++hi;
    for (Integer z = lo; z <= hi; ++z) {
      const Rational off = Rational(z) - center;
      const Rational used = d[i] * off * off;
      if (used > remaining) continue;
      x[i] = z;
      if (i == 0) {
        if (remaining - used == 0) found.push_back(x);
      } else {
        descend(i - 1, remaining - used);
      }
    }
    x[i] = 0;
  };
  descend(n - 1, bound);
  return found;
}

}  // namespace detail

// All v with v.v = target, sorted lexicographically (so -v precedes v when
// the first nonzero coordinate of v is positive).
inline std::vector<IntVector> enumerate_norm_vectors(const DefiniteLattice& d, const Integer& target) {
  const bool negative = d.sign() == Definiteness::Negative;
  if ((negative && target > 0) || (!negative && target < 0))
    fail(ErrorCode::WrongSign, "target " + target.str() + " has the wrong sign for this lattice");
  const std::size_t n = d.rank();
  if (target == 0) return {IntVector(n, 0)};

  IntMatrix positive = negative ? -d.gram() : d.gram();
  const Integer norm = negative ? Integer(-target) : target;
  const detail::ReducedGram reduced = detail::lll_reduce(positive);
  std::vector<IntVector> out;
  for (const auto& x : detail::fincke_pohst(reduced.gram, norm)) out.push_back(reduced.transform * x);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// A rational 2- or 3-plane in the ambient lattice on which the form is
// positive definite.
struct RationalPlane {
  GramLattice ambient;
  std::vector<RatVector> spanners;

  std::size_t dim() const { return spanners.size(); }
};

inline void validate_plane(const RationalPlane& plane) {
  const std::size_t n = plane.ambient.rank();
  if (plane.spanners.empty()) fail(ErrorCode::NotPositivePlane, "plane has no spanners");
  for (const auto& v : plane.spanners)
    if (v.size() != n) fail(ErrorCode::DimensionMismatch, "spanner length");
  const RatMatrix f = RatMatrix::from_columns(plane.spanners, n);
  const RatMatrix restricted = f.transpose() * to_rational(plane.ambient.gram()) * f;
  const Signature sig = inertia(restricted);
  if (sig.positive != plane.dim())
    fail(ErrorCode::NotPositivePlane, "restricted form is not positive definite");
}

// Saturated basis (columns) of the integer vectors orthogonal to the plane.
inline IntMatrix plane_complement_basis(const RationalPlane& plane) {
  const GramLattice& l = plane.ambient;
  const std::size_t n = l.rank();
  IntMatrix constraints(plane.dim(), n);
  const RatMatrix g = to_rational(l.gram());
  for (std::size_t i = 0; i < plane.dim(); ++i) {
    RatVector row(n, 0);
    for (std::size_t k = 0; k < n; ++k)
      if (plane.spanners[i][k] != 0)
        for (std::size_t j = 0; j < n; ++j) row[j] += plane.spanners[i][k] * g(k, j);
    Integer lcm = 1;
    for (const auto& q : row) {
      const Integer den = boost::multiprecision::denominator(q);
      lcm = lcm / gcd(lcm, den) * den;
    }
    for (std::size_t j = 0; j < n; ++j) constraints(i, j) = boost::multiprecision::numerator(row[j] * lcm);
  }
  return integer_kernel(constraints, n);
}

inline std::vector<IntVector> roots_in_orthogonal_complement(const GramLattice& l, const RationalPlane& plane) {
  if (plane.ambient != l) fail(ErrorCode::DimensionMismatch, "plane lives in a different lattice");
  validate_plane(plane);
  const IntMatrix basis = plane_complement_basis(plane);
  if (basis.cols() == 0) return {};
  const DefiniteLattice complement(induced_gram(l, basis), Definiteness::Negative);
  std::vector<IntVector> roots;
  for (const auto& y : enumerate_norm_vectors(complement, -2)) roots.push_back(basis * y);
  std::sort(roots.begin(), roots.end());
  return roots;
}

enum class InteriorKind { Interior, Wall, DeepWall };

inline std::string to_string(InteriorKind k) {
  switch (k) {
    case InteriorKind::Interior: return "Interior";
    case InteriorKind::Wall: return "Wall";
    case InteriorKind::DeepWall: return "DeepWall";
  }
  return "?";
}

struct InteriorVerdict {
  InteriorKind kind;
  std::vector<IntVector> witnesses;
};

inline InteriorVerdict period_interior_test(const GramLattice& he, const RationalPlane& plane) {
  std::vector<IntVector> roots = roots_in_orthogonal_complement(he, plane);
  InteriorKind kind = InteriorKind::DeepWall;
  if (roots.empty()) kind = InteriorKind::Interior;
  else if (roots.size() == 2) kind = InteriorKind::Wall;
  return {kind, std::move(roots)};
}

}  // namespace k3
