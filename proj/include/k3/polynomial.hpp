#pragma once

// Univariate polynomials with exact rational coefficients.

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "k3/numeric.hpp"

namespace k3 {

class RationalPoly {
 public:
  RationalPoly() = default;
  explicit RationalPoly(RatVector coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  RationalPoly(std::initializer_list<long long> coeffs) {
    for (auto c : coeffs) coeffs_.emplace_back(c);
    trim();
  }

  static RationalPoly constant(const Rational& c) { return RationalPoly(RatVector{c}); }
  static RationalPoly monomial(const Rational& c, std::size_t degree) {
    RatVector v(degree + 1, 0);
    v[degree] = c;
    return RationalPoly(std::move(v));
  }
  static RationalPoly from_integers(const IntVector& c) { return RationalPoly(RatVector(c.begin(), c.end())); }

  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const RatVector& coeffs() const { return coeffs_; }
  Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
  Rational lead() const { return is_zero() ? Rational(0) : coeffs_.back(); }

  Rational operator()(const Rational& x) const {
    Rational acc = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
  }

  RationalPoly derivative() const {
    RatVector d;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * static_cast<long long>(i));
    return RationalPoly(std::move(d));
  }

  RationalPoly monic() const {
    if (is_zero()) return *this;
    RatVector c = coeffs_;
    const Rational l = lead();
    for (auto& x : c) x /= l;
    return RationalPoly(std::move(c));
  }

  friend RationalPoly operator+(const RationalPoly& a, const RationalPoly& b) {
    RatVector c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
    return RationalPoly(std::move(c));
  }
  friend RationalPoly operator-(const RationalPoly& a) {
    RatVector c = a.coeffs_;
    for (auto& x : c) x = -x;
    return RationalPoly(std::move(c));
  }
  friend RationalPoly operator-(const RationalPoly& a, const RationalPoly& b) { return a + (-b); }
  friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    RatVector c(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return RationalPoly(std::move(c));
  }
  friend RationalPoly operator*(const Rational& s, const RationalPoly& a) { return constant(s) * a; }

  RationalPoly pow(unsigned k) const {
    RationalPoly out = constant(1);
    for (unsigned i = 0; i < k; ++i) out = out * *this;
    return out;
  }

  // (quotient, remainder)
  std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& d) const {
    if (d.is_zero()) fail(ErrorCode::ZeroPolynomial, "division by the zero polynomial");
    RatVector r = coeffs_;
    if (degree() < d.degree()) return {RationalPoly(), *this};
    RatVector q(static_cast<std::size_t>(degree() - d.degree() + 1), 0);
    const Rational l = d.lead();
    const std::size_t dd = static_cast<std::size_t>(d.degree());
    for (std::size_t k = q.size(); k-- > 0;) {
      const Rational c = r[k + dd] / l;
      q[k] = c;
      if (c == 0) continue;
      for (std::size_t j = 0; j <= dd; ++j) r[k + j] -= c * d.coeffs_[j];
    }
    return {RationalPoly(std::move(q)), RationalPoly(std::move(r))};
  }

  bool divisible_by(const RationalPoly& d) const { return divmod(d).second.is_zero(); }

  bool operator==(const RationalPoly&) const = default;

  // Canonical order: by degree, then coefficients from the top down.
  friend bool operator<(const RationalPoly& a, const RationalPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (std::size_t i = a.coeffs_.size(); i-- > 0;)
      if (a.coeffs_[i] != b.coeffs_[i]) return a.coeffs_[i] < b.coeffs_[i];
    return false;
  }

  // Human-readable form in the variable s, highest degree first.
  std::string str(const std::string& var = "s") const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      const Rational& c = coeffs_[i];
      if (c == 0) continue;
      const bool negative = c < 0;
      const Rational mag = negative ? Rational(-c) : c;
      if (out.empty()) out += negative ? "-" : "";
      else out += negative ? " - " : " + ";
      const std::string m = to_string(mag);
      if (i == 0) out += m;
      else {
        if (mag != 1) out += m + "*";
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  RatVector coeffs_;
};

inline RationalPoly poly_gcd(RationalPoly a, RationalPoly b) {
  a = a.monic();
  b = b.monic();
  while (!b.is_zero()) {
    RationalPoly r = a.divmod(b).second.monic();
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Multiplicity of the (nonconstant) factor p in f; the zero polynomial has
// no finite multiplicity and is reported as -1.
inline int multiplicity(const RationalPoly& f, const RationalPoly& p) {
  if (f.is_zero()) return -1;
  int k = 0;
  RationalPoly g = f;
  while (true) {
    auto [q, r] = g.divmod(p);
    if (!r.is_zero()) return k;
    g = std::move(q);
    ++k;
  }
}

// Yun's algorithm: f = c * prod_i a_i^i with the a_i monic, squarefree and
// pairwise coprime. Returns the (a_i, i) with deg a_i > 0.
inline std::vector<std::pair<RationalPoly, int>> squarefree_decomposition(const RationalPoly& f) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "squarefree decomposition of 0");
  std::vector<std::pair<RationalPoly, int>> out;
  if (f.degree() == 0) return out;
  const RationalPoly fm = f.monic();
  const RationalPoly d = fm.derivative();
  RationalPoly a = poly_gcd(fm, d);
  RationalPoly b = fm.divmod(a).first;
  RationalPoly c = d.divmod(a).first;
  RationalPoly e = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    RationalPoly g = poly_gcd(b, e);
    if (g.degree() > 0) out.emplace_back(g, i);
    b = b.divmod(g).first;
    c = e.divmod(g).first;
    e = c - b.derivative();
    ++i;
  }
  return out;
}

// Primitive integer polynomial proportional to f, with positive leading
// coefficient.
inline IntVector primitive_integer_part(const RationalPoly& f) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "primitive part of 0");
  Integer lcm = 1;
  for (const auto& c : f.coeffs()) {
    const Integer den = boost::multiprecision::denominator(c);
    lcm = lcm / gcd(lcm, den) * den;
  }
  IntVector out;
  for (const auto& c : f.coeffs()) out.push_back(boost::multiprecision::numerator(c * Rational(lcm)));
  const Integer g = content(out);
  for (auto& x : out) x /= g;
  if (out.back() < 0)
    for (auto& x : out) x = -x;
  return out;
}

}  // namespace k3
