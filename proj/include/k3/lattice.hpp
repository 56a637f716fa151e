#pragma once

// Integral lattices given by a symmetric Gram matrix, and the standard K3
// building blocks U and E8(-1).

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "k3/linalg.hpp"
#include "k3/numeric.hpp"

namespace k3 {

struct Signature {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t null = 0;

  std::size_t rank() const { return positive + negative + null; }
  bool operator==(const Signature&) const = default;
  friend Signature operator+(const Signature& a, const Signature& b) {
    return {a.positive + b.positive, a.negative + b.negative, a.null + b.null};
  }
};

// Immutable Z^n with an integral symmetric bilinear form. Vectors are plain
// coordinate vectors relative to the standard basis of Z^n.
class GramLattice {
 public:
  GramLattice() = default;

  explicit GramLattice(IntMatrix gram) : gram_(std::move(gram)) {
    if (!gram_.square()) fail(ErrorCode::DimensionMismatch, "Gram matrix must be square");
    for (std::size_t i = 0; i < gram_.rows(); ++i)
      for (std::size_t j = i + 1; j < gram_.cols(); ++j)
        if (gram_(i, j) != gram_(j, i))
          fail(ErrorCode::NonSymmetric, "gram[" + std::to_string(i) + "][" + std::to_string(j) +
                                            "] != gram[" + std::to_string(j) + "][" +
                                            std::to_string(i) + "]");
  }

  std::size_t rank() const { return gram_.rows(); }
  const IntMatrix& gram() const { return gram_; }

  Integer inner(const IntVector& v, const IntVector& w) const {
    check(v);
    check(w);
    Integer s = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
      if (v[i] == 0) continue;
      for (std::size_t j = 0; j < rank(); ++j)
        if (w[j] != 0 && gram_(i, j) != 0) s += v[i] * gram_(i, j) * w[j];
    }
    return s;
  }

  Integer norm(const IntVector& v) const { return inner(v, v); }

  // Row vector v^T G, i.e. the linear form x -> v . x.
  IntVector dual(const IntVector& v) const {
    check(v);
    IntVector out(rank(), 0);
    for (std::size_t i = 0; i < rank(); ++i) {
      if (v[i] == 0) continue;
      for (std::size_t j = 0; j < rank(); ++j) out[j] += v[i] * gram_(i, j);
    }
    return out;
  }

  void check(const IntVector& v) const {
    if (v.size() != rank())
      fail(ErrorCode::DimensionMismatch,
           "vector of length " + std::to_string(v.size()) + " in lattice of rank " + std::to_string(rank()));
  }

  IntVector basis_vector(std::size_t i) const {
    IntVector v(rank(), 0);
    v.at(i) = 1;
    return v;
  }

  bool operator==(const GramLattice&) const = default;

 private:
  IntMatrix gram_;
};

inline GramLattice make_lattice(const std::vector<std::vector<Integer>>& gram) {
  for (const auto& row : gram)
    if (row.size() != gram.size()) fail(ErrorCode::DimensionMismatch, "Gram matrix must be square");
  return GramLattice(IntMatrix::from_rows(gram));
}

inline GramLattice hyperbolic_plane() { return GramLattice(IntMatrix{{0, 1}, {1, 0}}); }

// Negated Cartan matrix of E8, Bourbaki labels 1..8 (node 2 hangs off node 4).
inline GramLattice e8_minus() {
  IntMatrix g(8, 8);
  for (std::size_t i = 0; i < 8; ++i) g(i, i) = -2;
  constexpr std::array<std::pair<int, int>, 7> edges{{{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}}};
  for (auto [a, b] : edges) {
    g(a - 1, b - 1) = 1;
    g(b - 1, a - 1) = 1;
  }
  return GramLattice(std::move(g));
}

inline GramLattice direct_sum(const GramLattice& a, const GramLattice& b) {
  const std::size_t n = a.rank(), m = b.rank();
  IntMatrix g(n + m, n + m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = a.gram()(i, j);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g(n + i, n + j) = b.gram()(i, j);
  return GramLattice(std::move(g));
}

inline GramLattice direct_sum(std::initializer_list<GramLattice> parts) {
  GramLattice out;
  for (const auto& p : parts) out = direct_sum(out, p);
  return out;
}

// U + U + U + E8(-1) + E8(-1). Coordinates 2k, 2k+1 are the isotropic pair
// (e_{k+1}, f_{k+1}) of the k-th hyperbolic plane.
inline GramLattice k3_lattice() {
  const GramLattice u = hyperbolic_plane();
  const GramLattice e8 = e8_minus();
  return direct_sum({u, u, u, e8, e8});
}

// U + U + E8(-1) + E8(-1), the standard model of e-perp / Ze.
inline GramLattice standard_quotient_lattice() {
  const GramLattice u = hyperbolic_plane();
  const GramLattice e8 = e8_minus();
  return direct_sum({u, u, e8, e8});
}

inline Integer inner(const GramLattice& l, const IntVector& v, const IntVector& w) { return l.inner(v, w); }

inline Integer determinant(const GramLattice& l) { return bareiss_determinant(l.gram()); }

inline bool is_even(const GramLattice& l) {
  for (std::size_t i = 0; i < l.rank(); ++i)
    if (l.gram()(i, i) % 2 != 0) return false;
  return true;
}

inline bool is_unimodular(const GramLattice& l) {
  const Integer d = determinant(l);
  return d == 1 || d == -1;
}

// Inertia of a rational symmetric matrix by LDL^T with symmetric pivoting.
// A nonzero diagonal entry is used as a 1x1 pivot; if the active diagonal is
// zero but an off-diagonal entry b is not, the block [[0,b],[b,0]] is a
// hyperbolic 2x2 pivot contributing one positive and one negative square.
inline Signature inertia(RatMatrix a) {
  const std::size_t n = a.rows();
  std::vector<bool> active(n, true);
  std::size_t remaining = n;
  Signature sig;
  auto eliminate = [&](const std::vector<std::size_t>& pivots, const RatMatrix& block_inverse) {
    for (auto p : pivots) active[p] = false;
    remaining -= pivots.size();
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < n; ++i)
      if (active[i]) rest.push_back(i);
    const std::size_t k = pivots.size();
    // a_rest -= C * B^{-1} * C^T, C = a(rest, pivots)
    std::vector<RatVector> cb(rest.size(), RatVector(k));
    for (std::size_t r = 0; r < rest.size(); ++r)
      for (std::size_t q = 0; q < k; ++q)
        for (std::size_t p = 0; p < k; ++p) cb[r][q] += a(rest[r], pivots[p]) * block_inverse(p, q);
    for (std::size_t r = 0; r < rest.size(); ++r)
      for (std::size_t s = 0; s < rest.size(); ++s) {
        Rational t = 0;
        for (std::size_t q = 0; q < k; ++q) t += cb[r][q] * a(rest[s], pivots[q]);
        if (t != 0) a(rest[r], rest[s]) -= t;
      }
  };
  while (remaining > 0) {
    std::optional<std::size_t> diag;
    for (std::size_t i = 0; i < n && !diag; ++i)
      if (active[i] && a(i, i) != 0) diag = i;
    if (diag) {
      const Rational d = a(*diag, *diag);
      (d > 0 ? sig.positive : sig.negative) += 1;
      RatMatrix inv(1, 1);
      inv(0, 0) = 1 / d;
      eliminate({*diag}, inv);
      continue;
    }
    std::optional<std::pair<std::size_t, std::size_t>> off;
    for (std::size_t i = 0; i < n && !off; ++i)
      for (std::size_t j = i + 1; j < n && !off; ++j)
        if (active[i] && active[j] && a(i, j) != 0) off = std::make_pair(i, j);
    if (!off) {
      sig.null += remaining;
      break;
    }
    const Rational b = a(off->first, off->second);
    sig.positive += 1;
    sig.negative += 1;
    RatMatrix inv(2, 2);
    inv(0, 1) = 1 / b;
    inv(1, 0) = 1 / b;
    eliminate({off->first, off->second}, inv);
  }
  return sig;
}

inline Signature signature(const GramLattice& l) { return inertia(to_rational(l.gram())); }

inline bool is_isotropic(const GramLattice& l, const IntVector& v) { return l.norm(v) == 0; }

inline bool is_primitive(const GramLattice& l, const IntVector& v) {
  l.check(v);
  if (is_zero(v)) fail(ErrorCode::ZeroVector, "primitivity of the zero vector");
  return content(v) == 1;
}

// Gram matrix of the given vectors (columns of `basis`) under the form of l.
inline IntMatrix induced_gram(const GramLattice& l, const IntMatrix& basis) {
  return basis.transpose() * l.gram() * basis;
}

}  // namespace k3
