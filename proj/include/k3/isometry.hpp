#pragma once

// Integer isometries of a Gram lattice. Matrices act on column coordinate
// vectors; `a * b` is the isometry that applies b first, then a.

#include <cstddef>
#include <string>
#include <vector>

#include "k3/isotropic.hpp"
#include "k3/lattice.hpp"
#include "k3/linalg.hpp"

namespace k3 {

class Isometry {
 public:
  Isometry(GramLattice lattice, IntMatrix matrix) : lattice_(std::move(lattice)), matrix_(std::move(matrix)) {}

  const GramLattice& lattice() const { return lattice_; }
  const IntMatrix& matrix() const { return matrix_; }
  std::size_t rank() const { return matrix_.rows(); }

  IntVector operator()(const IntVector& v) const {
    lattice_.check(v);
    return matrix_ * v;
  }

  bool is_identity() const { return matrix_ == IntMatrix::identity(rank()); }

  friend Isometry operator*(const Isometry& a, const Isometry& b) {
    if (a.lattice_ != b.lattice_) fail(ErrorCode::DimensionMismatch, "isometries of different lattices");
    return Isometry(a.lattice_, a.matrix_ * b.matrix_);
  }

  bool operator==(const Isometry& other) const { return matrix_ == other.matrix_ && lattice_ == other.lattice_; }

 private:
  GramLattice lattice_;
  IntMatrix matrix_;
};

inline Isometry verify_isometry(const GramLattice& l, const IntMatrix& m) {
  if (!m.square() || m.rows() != l.rank())
    fail(ErrorCode::DimensionMismatch, "matrix does not match the lattice rank");
  const IntMatrix pulled = m.transpose() * l.gram() * m;
  for (std::size_t i = 0; i < l.rank(); ++i)
    for (std::size_t j = 0; j < l.rank(); ++j)
      if (pulled(i, j) != l.gram()(i, j))
        fail(ErrorCode::NotIsometry, "(M^T G M)[" + std::to_string(i) + "][" + std::to_string(j) +
                                         "] = " + pulled(i, j).str() + " != " + l.gram()(i, j).str());
  const Integer det = bareiss_determinant(m);
  if (det != 1 && det != -1) fail(ErrorCode::NotIsometry, "determinant " + det.str());
  return Isometry(l, m);
}

inline Isometry identity_isometry(const GramLattice& l) { return Isometry(l, IntMatrix::identity(l.rank())); }

inline Isometry minus_identity(const GramLattice& l) { return Isometry(l, -IntMatrix::identity(l.rank())); }

// s_alpha : x -> x + (alpha.x) alpha, for alpha.alpha = -2.
inline Isometry reflection(const GramLattice& l, const IntVector& alpha) {
  l.check(alpha);
  if (l.norm(alpha) != -2) fail(ErrorCode::NotMinusTwo, "alpha.alpha = " + l.norm(alpha).str());
  const IntVector d = l.dual(alpha);
  IntMatrix m = IntMatrix::identity(l.rank());
  for (std::size_t i = 0; i < l.rank(); ++i)
    for (std::size_t j = 0; j < l.rank(); ++j) m(i, j) += alpha[i] * d[j];
  return Isometry(l, std::move(m));
}

// E(e ^ gamma): x -> x + (x.e) gamma - (x.gamma) e - 1/2 (gamma.gamma)(x.e) e.
inline Isometry eichler(const GramLattice& h, const IntVector& e, const IntVector& gamma) {
  require_primitive_isotropic(h, e);
  h.check(gamma);
  if (h.inner(gamma, e) != 0) fail(ErrorCode::NotOrthogonal, "gamma.e = " + h.inner(gamma, e).str());
  const Integer gg = h.norm(gamma);
  if (gg % 2 != 0) fail(ErrorCode::NotIsometry, "gamma.gamma is odd; transformation is not integral");
  const Integer half = gg / 2;
  const IntVector de = h.dual(e);
  const IntVector dg = h.dual(gamma);
  IntMatrix m = IntMatrix::identity(h.rank());
  for (std::size_t i = 0; i < h.rank(); ++i)
    for (std::size_t j = 0; j < h.rank(); ++j)
      m(i, j) += gamma[i] * de[j] - e[i] * dg[j] - half * e[i] * de[j];
  return Isometry(h, std::move(m));
}

inline bool eichler_compose_check(const GramLattice& h, const IntVector& e, const IntVector& gamma1,
                                  const IntVector& gamma2) {
  IntVector sum(gamma1.size());
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = gamma1[i] + gamma2[i];
  return (eichler(h, e, gamma1) * eichler(h, e, gamma2)).matrix() == eichler(h, e, sum).matrix();
}

// Ordered rational vectors spanning a maximal positive definite subspace.
struct SpinorFrame {
  std::vector<RatVector> vectors;

  std::size_t size() const { return vectors.size(); }
  RatMatrix as_columns(std::size_t n) const { return RatMatrix::from_columns(vectors, n); }
};

inline Rational rational_determinant(RatMatrix m) {
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      m.swap_rows(p, c);
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      const Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

inline RatMatrix frame_gram(const GramLattice& l, const SpinorFrame& frame) {
  const RatMatrix f = frame.as_columns(l.rank());
  return f.transpose() * to_rational(l.gram()) * f;
}

inline void validate_frame(const GramLattice& l, const SpinorFrame& frame) {
  for (const auto& v : frame.vectors)
    if (v.size() != l.rank()) fail(ErrorCode::DimensionMismatch, "frame vector length");
  const Signature sig = inertia(frame_gram(l, frame));
  if (sig.positive != frame.size())
    fail(ErrorCode::DegenerateFrame, "frame vectors do not span a positive definite subspace");
  if (frame.size() != signature(l).positive)
    fail(ErrorCode::DegenerateFrame, "frame does not span a maximal positive subspace");
}

// e_k + f_k for the first `count` hyperbolic planes of a lattice laid out as
// U + U + ... (k3_lattice, standard_quotient_lattice).
inline SpinorFrame hyperbolic_frame(const GramLattice& l, std::size_t count) {
  SpinorFrame frame;
  for (std::size_t k = 0; k < count; ++k) {
    RatVector v(l.rank(), 0);
    v.at(2 * k) = 1;
    v.at(2 * k + 1) = 1;
    frame.vectors.push_back(std::move(v));
  }
  return frame;
}

// Exact orthogonal basis of Q^n under the form; the positive members form a
// maximal positive subspace.
inline std::vector<RatVector> orthogonal_basis(const GramLattice& l) {
  const std::size_t n = l.rank();
  const RatMatrix g = to_rational(l.gram());
  auto pair = [&](const RatVector& a, const RatVector& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (b[j] != 0 && g(i, j) != 0) s += a[i] * g(i, j) * b[j];
    }
    return s;
  };
  std::vector<RatVector> pending;
  for (std::size_t i = 0; i < n; ++i) {
    RatVector v(n, 0);
    v[i] = 1;
    pending.push_back(std::move(v));
  }
  std::vector<RatVector> out;
  while (!pending.empty()) {
    std::size_t pick = pending.size();
    for (std::size_t i = 0; i < pending.size() && pick == pending.size(); ++i)
      if (pair(pending[i], pending[i]) != 0) pick = i;
    if (pick == pending.size()) {
      bool merged = false;
      for (std::size_t i = 0; i < pending.size() && !merged; ++i)
        for (std::size_t j = i + 1; j < pending.size() && !merged; ++j)
          if (pair(pending[i], pending[j]) != 0) {
            for (std::size_t k = 0; k < n; ++k) pending[i][k] += pending[j][k];
            merged = true;
          }
      if (!merged) {
        for (auto& v : pending) out.push_back(std::move(v));
        break;
      }
      continue;
    }
    RatVector v = std::move(pending[pick]);
    pending.erase(pending.begin() + static_cast<long>(pick));
    const Rational vv = pair(v, v);
    for (auto& u : pending) {
      const Rational c = pair(u, v) / vv;
      if (c != 0)
        for (std::size_t k = 0; k < n; ++k) u[k] -= c * v[k];
    }
    out.push_back(std::move(v));
  }
  return out;
}

// A maximal positive frame for any nondegenerate lattice, found exactly.
inline SpinorFrame positive_frame(const GramLattice& l) {
  SpinorFrame frame;
  for (auto& v : orthogonal_basis(l)) {
    Rational s = 0;
    for (std::size_t i = 0; i < l.rank(); ++i)
      for (std::size_t j = 0; j < l.rank(); ++j) s += v[i] * l.gram()(i, j) * v[j];
    if (s > 0) frame.vectors.push_back(std::move(v));
  }
  return frame;
}

// Sign of det of the compression of M to the frame span. With F the frame
// matrix, the compression in frame coordinates is (F^T G F)^{-1} F^T G M F,
// and F^T G F is positive definite, so only det(F^T G M F) matters.
inline int spinor_sign(const GramLattice& l, const Isometry& m, const SpinorFrame& frame) {
  validate_frame(l, frame);
  if (m.rank() != l.rank()) fail(ErrorCode::DimensionMismatch, "isometry rank");
  const RatMatrix f = frame.as_columns(l.rank());
  const RatMatrix c = f.transpose() * to_rational(l.gram()) * to_rational(m.matrix()) * f;
  const Rational det = rational_determinant(c);
  if (det == 0) fail(ErrorCode::DegenerateFrame, "compression of the isometry to the frame is singular");
  return det > 0 ? 1 : -1;
}

inline Isometry induced_on_quotient(const IsotropicQuotient& q, const Isometry& m) {
  if (m.rank() != q.source.rank()) fail(ErrorCode::DimensionMismatch, "isometry rank");
  if (m(q.e) != q.e) fail(ErrorCode::DoesNotFixE, "M e != e");
  const std::size_t r = q.rank();
  IntMatrix induced(r, r);
  for (std::size_t j = 0; j < r; ++j) {
    const IntVector image = q.project(m(q.lift_basis.col(j)));
    for (std::size_t i = 0; i < r; ++i) induced(i, j) = image[i];
  }
  return verify_isometry(q.quotient, induced);
}

// Eichler transformation E(e ^ n gamma) carrying the root alpha to alpha',
// where alpha - alpha' = n e and gamma in e-perp has alpha.gamma = 1.
inline Isometry connect_lifts(const GramLattice& h, const IntVector& e, const IntVector& alpha,
                              const IntVector& alpha_prime) {
  require_primitive_isotropic(h, e);
  h.check(alpha);
  h.check(alpha_prime);
  if (h.norm(alpha) != -2 || h.norm(alpha_prime) != -2) fail(ErrorCode::NotRoots, "alpha and alpha' must have norm -2");
  if (h.inner(alpha, e) != 0 || h.inner(alpha_prime, e) != 0)
    fail(ErrorCode::NotOrthogonal, "alpha and alpha' must lie in e-perp");

  IntVector diff(h.rank());
  for (std::size_t i = 0; i < h.rank(); ++i) diff[i] = alpha[i] - alpha_prime[i];
  std::size_t lead = 0;
  while (e[lead] == 0) ++lead;
  if (diff[lead] % e[lead] != 0) fail(ErrorCode::NotSameCoset, "alpha - alpha' is not a multiple of e");
  const Integer n = diff[lead] / e[lead];
  for (std::size_t i = 0; i < h.rank(); ++i)
    if (diff[i] != n * e[i]) fail(ErrorCode::NotSameCoset, "alpha - alpha' is not a multiple of e");

  const Sublattice perp = orthogonal_complement(h, {e});
  const IntVector functional = perp.basis.transpose() * h.dual(alpha);
  const IntVector gamma = perp.basis * solve_unit_functional(functional);
  IntVector scaled(h.rank());
  for (std::size_t i = 0; i < h.rank(); ++i) scaled[i] = n * gamma[i];
  return eichler(h, e, scaled);
}

// Identity on span(e, sigma), minus identity on its orthogonal complement.
// The projection onto span(e, sigma) uses the inverse [[2,1],[1,0]] of its
// Gram matrix [[0,1],[1,-2]].
inline Isometry involution_class(const GramLattice& h, const IntVector& e, const IntVector& sigma) {
  require_section(h, e, sigma);
  const IntVector de = h.dual(e);
  const IntVector ds = h.dual(sigma);
  const std::size_t n = h.rank();
  IntMatrix m = -IntMatrix::identity(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Integer ce = 2 * (2 * de[j] + ds[j]);
    const Integer cs = 2 * de[j];
    for (std::size_t i = 0; i < n; ++i) m(i, j) += ce * e[i] + cs * sigma[i];
  }
  return verify_isometry(h, m);
}

}  // namespace k3
