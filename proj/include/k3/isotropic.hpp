#pragma once

// Constructions attached to a primitive isotropic vector e: the sublattice
// e-perp, the quotient H(e) = e-perp / Ze, hyperbolic partners, the section
// polarization 3e + sigma and the dominance test against a root list.

#include <cstddef>
#include <string>
#include <vector>

#include "k3/lattice.hpp"
#include "k3/linalg.hpp"

namespace k3 {

// Saturated sublattice given by a basis in ambient coordinates (columns).
struct Sublattice {
  GramLattice ambient;
  IntMatrix basis;
  IntMatrix gram;

  std::size_t rank() const { return basis.cols(); }
  IntVector vector(std::size_t i) const { return basis.col(i); }
  GramLattice as_lattice() const { return GramLattice(gram); }
};

inline Sublattice orthogonal_complement(const GramLattice& l, const std::vector<IntVector>& vs) {
  IntMatrix constraints(vs.size(), l.rank());
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const IntVector row = l.dual(vs[i]);
    for (std::size_t j = 0; j < l.rank(); ++j) constraints(i, j) = row[j];
  }
  IntMatrix basis = integer_kernel(constraints, l.rank());
  IntMatrix gram = induced_gram(l, basis);
  return {l, std::move(basis), std::move(gram)};
}

// H(e) together with the data needed to move between e-perp and H(e).
struct IsotropicQuotient {
  GramLattice source;
  IntVector e;
  GramLattice quotient;
  // n x (n-2): lifts to e-perp of the quotient basis.
  IntMatrix lift_basis;
  // n x (n-1): basis of e-perp whose first column is e, followed by lift_basis.
  IntMatrix perp_basis;
  // (n-1) x n: integer left inverse of perp_basis.
  IntMatrix perp_coordinates;

  std::size_t rank() const { return quotient.rank(); }

  // Quotient coordinates of x in e-perp.
  IntVector project(const IntVector& x) const {
    source.check(x);
    if (source.inner(x, e) != 0) fail(ErrorCode::NotOrthogonal, "vector is not in e-perp");
    IntVector y = perp_coordinates * x;
    return IntVector(y.begin() + 1, y.end());
  }

  // The distinguished lift of quotient coordinates y.
  IntVector lift(const IntVector& y) const {
    quotient.check(y);
    return lift_basis * y;
  }
};

inline void require_primitive_isotropic(const GramLattice& h, const IntVector& e) {
  h.check(e);
  if (is_zero(e) || content(e) != 1) fail(ErrorCode::NotPrimitive, "e is not primitive");
  if (h.norm(e) != 0) fail(ErrorCode::NotIsotropic, "e.e = " + h.norm(e).str());
}

inline IsotropicQuotient quotient_by_isotropic(const GramLattice& h, const IntVector& e) {
  require_primitive_isotropic(h, e);
  const std::size_t n = h.rank();
  const Sublattice perp = orthogonal_complement(h, {e});
  // e in the coordinates of the kernel basis; primitive because e is.
  const IntVector c = left_inverse(perp.basis) * e;
  const IntMatrix adapted = perp.basis * extend_to_unimodular(c);
  if (adapted.col(0) != e) fail(ErrorCode::Internal, "basis extension lost e");

  IntMatrix lifts(n, n - 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 1; j + 1 < n; ++j) lifts(i, j - 1) = adapted(i, j);
  GramLattice quotient(induced_gram(h, lifts));
  IntMatrix coords = left_inverse(adapted);
  return {h, e, std::move(quotient), std::move(lifts), adapted, std::move(coords)};
}

// Lattice-level realization of the Leray-primitive subquotient of H^2: it is
// exactly e-perp / Ze, so this is quotient_by_isotropic under another name.
inline IsotropicQuotient leray_subquotient(const GramLattice& h, const IntVector& e) {
  return quotient_by_isotropic(h, e);
}

// e' with e.e' = 1 and e'.e' = 0, for h even and e primitive isotropic.
inline IntVector hyperbolic_partner(const GramLattice& h, const IntVector& e) {
  require_primitive_isotropic(h, e);
  IntVector x = solve_unit_functional(h.dual(e));
  const Integer xx = h.norm(x);
  if (xx % 2 != 0) fail(ErrorCode::NoSolution, "odd self-product; lattice is not even");
  const Integer shift = xx / 2;
  for (std::size_t i = 0; i < x.size(); ++i) x[i] -= shift * e[i];
  return x;
}

inline void require_section(const GramLattice& h, const IntVector& e, const IntVector& sigma) {
  h.check(e);
  h.check(sigma);
  if (h.norm(e) != 0) fail(ErrorCode::BadSection, "e.e != 0");
  if (h.norm(sigma) != -2) fail(ErrorCode::BadSection, "sigma.sigma = " + h.norm(sigma).str() + ", expected -2");
  if (h.inner(e, sigma) != 1) fail(ErrorCode::BadSection, "e.sigma != 1");
}

// kappa = 3e + sigma; kappa.kappa = 4, kappa.e = kappa.sigma = 1.
inline IntVector section_polarization(const GramLattice& h, const IntVector& e, const IntVector& sigma) {
  require_section(h, e, sigma);
  IntVector kappa(h.rank());
  for (std::size_t i = 0; i < h.rank(); ++i) kappa[i] = 3 * e[i] + sigma[i];
  return kappa;
}

enum class Dominance { NonFibration, Fibration, IntegralFibration };

inline std::string to_string(Dominance d) {
  switch (d) {
    case Dominance::NonFibration: return "NonFibration";
    case Dominance::Fibration: return "Fibration";
    case Dominance::IntegralFibration: return "IntegralFibration";
  }
  return "?";
}

inline Dominance dominance_classify(const GramLattice& h, const IntVector& e, const std::vector<IntVector>& roots) {
  bool strict = true;
  for (const auto& alpha : roots) {
    if (h.norm(alpha) != -2) fail(ErrorCode::NotARoot, "alpha.alpha = " + h.norm(alpha).str());
  }
  for (const auto& alpha : roots) {
    const Integer p = h.inner(e, alpha);
    if (p < 0) return Dominance::NonFibration;
    if (p == 0) strict = false;
  }
  return strict ? Dominance::IntegralFibration : Dominance::Fibration;
}

}  // namespace k3
