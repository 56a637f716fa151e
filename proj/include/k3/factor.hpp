#pragma once

// Factorization of polynomials over the rationals: Yun squarefree
// decomposition, then Berlekamp-Zassenhaus on each squarefree part
// (Cantor-Zassenhaus modulo a small prime, linear Hensel lifting, and
// exhaustive recombination of the lifted factors).

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "k3/linalg.hpp"
#include "k3/polynomial.hpp"

namespace k3 {

namespace detail {

using ModPoly = std::vector<std::uint64_t>;  // low degree first, trimmed

struct PrimeField {
  std::uint64_t p;

  std::uint64_t reduce(const Integer& x) const {
    Integer r = x % p;
    if (r < 0) r += p;
    return r.convert_to<std::uint64_t>();
  }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return a * b % p; }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p - b) % p; }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  std::uint64_t inv(std::uint64_t a) const { return pow(a, p - 2); }

  static void trim(ModPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
  }
  static int deg(const ModPoly& f) { return static_cast<int>(f.size()) - 1; }

  ModPoly from(const IntVector& f) const {
    ModPoly out;
    for (const auto& c : f) out.push_back(reduce(c));
    trim(out);
    return out;
  }
  ModPoly add(const ModPoly& a, const ModPoly& b) const {
    ModPoly c(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) c[i] = add(c[i], b[i]);
    trim(c);
    return c;
  }
  ModPoly sub(const ModPoly& a, const ModPoly& b) const {
    ModPoly c(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) c[i] = sub(c[i], b[i]);
    trim(c);
    return c;
  }
  ModPoly mul(const ModPoly& a, const ModPoly& b) const {
    if (a.empty() || b.empty()) return {};
    ModPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    trim(c);
    return c;
  }
  std::pair<ModPoly, ModPoly> divmod(const ModPoly& a, const ModPoly& b) const {
    ModPoly r = a;
    if (deg(a) < deg(b)) return {{}, r};
    const std::size_t db = b.size() - 1;
    ModPoly q(a.size() - db, 0);
    const std::uint64_t li = inv(b.back());
    for (std::size_t k = q.size(); k-- > 0;) {
      const std::uint64_t c = mul(r[k + db], li);
      q[k] = c;
      if (c == 0) continue;
      for (std::size_t j = 0; j <= db; ++j) r[k + j] = sub(r[k + j], mul(c, b[j]));
    }
    trim(q);
    trim(r);
    return {q, r};
  }
  ModPoly rem(const ModPoly& a, const ModPoly& b) const { return divmod(a, b).second; }
  ModPoly monic(ModPoly f) const {
    if (f.empty()) return f;
    const std::uint64_t li = inv(f.back());
    for (auto& c : f) c = mul(c, li);
    return f;
  }
  ModPoly gcd(ModPoly a, ModPoly b) const {
    while (!b.empty()) {
      ModPoly r = rem(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }
  // (s, t) with s a + t b = 1, for coprime a, b.
  std::pair<ModPoly, ModPoly> bezout(const ModPoly& a, const ModPoly& b) const {
    ModPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
      auto [q, r] = divmod(r0, r1);
      r0 = std::move(r1);
      r1 = std::move(r);
      ModPoly s = sub(s0, mul(q, s1));
      s0 = std::move(s1);
      s1 = std::move(s);
      ModPoly t = sub(t0, mul(q, t1));
      t0 = std::move(t1);
      t1 = std::move(t);
    }
    // r0 is a nonzero constant
    const std::uint64_t ci = inv(r0.at(0));
    for (auto& c : s0) c = mul(c, ci);
    for (auto& c : t0) c = mul(c, ci);
    return {s0, t0};
  }
  ModPoly powmod(ModPoly base, const Integer& exponent, const ModPoly& modulus) const {
    ModPoly result{1};
    base = rem(base, modulus);
    if (exponent == 0) return rem(result, modulus);
    const std::size_t bits = boost::multiprecision::msb(exponent) + 1;
    for (std::size_t i = bits; i-- > 0;) {
      result = rem(mul(result, result), modulus);
      if (boost::multiprecision::bit_test(exponent, static_cast<unsigned>(i))) result = rem(mul(result, base), modulus);
    }
    return result;
  }
  ModPoly derivative(const ModPoly& f) const {
    ModPoly d;
    for (std::size_t i = 1; i < f.size(); ++i) d.push_back(mul(f[i], i % p));
    trim(d);
    return d;
  }

  // Distinct-degree factorization of a monic squarefree f: (product, degree).
  std::vector<std::pair<ModPoly, int>> distinct_degree(ModPoly f) const {
    std::vector<std::pair<ModPoly, int>> out;
    const ModPoly x{0, 1};
    ModPoly h = x;
    for (int d = 1; 2 * d <= deg(f); ++d) {
      h = powmod(h, Integer(p), f);
      ModPoly g = gcd(f, sub(h, x));
      if (deg(g) > 0) {
        out.emplace_back(g, d);
        f = divmod(f, g).first;
        h = rem(h, f);
      }
    }
    if (deg(f) > 0) out.emplace_back(f, deg(f));
    return out;
  }

  // Splits a monic product of irreducibles of degree d into its factors.
  void equal_degree(const ModPoly& g, int d, std::mt19937_64& rng, std::vector<ModPoly>& out) const {
    if (deg(g) == d) {
      out.push_back(g);
      return;
    }
    Integer exponent = 1;
    for (int i = 0; i < d; ++i) exponent *= p;
    exponent = (exponent - 1) / 2;
    std::uniform_int_distribution<std::uint64_t> coin(0, p - 1);
    while (true) {
      ModPoly a(static_cast<std::size_t>(deg(g)));
      for (auto& c : a) c = coin(rng);
      trim(a);
      if (deg(a) < 1) continue;
      ModPoly b = sub(powmod(a, exponent, g), ModPoly{1});
      ModPoly u = gcd(g, b);
      if (deg(u) > 0 && deg(u) < deg(g)) {
        equal_degree(u, d, rng, out);
        equal_degree(divmod(g, u).first, d, rng, out);
        return;
      }
    }
  }

  std::vector<ModPoly> factor_monic_squarefree(const ModPoly& f) const {
    std::mt19937_64 rng(0x5eed + p);
    std::vector<ModPoly> out;
    for (const auto& [g, d] : distinct_degree(f)) equal_degree(g, d, rng, out);
    std::sort(out.begin(), out.end(), [](const ModPoly& a, const ModPoly& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
    });
    return out;
  }
};

// Integer polynomial helpers (low degree first).
inline IntVector int_mul(const IntVector& a, const IntVector& b) {
  if (a.empty() || b.empty()) return {};
  IntVector c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

inline Integer mod_floor(const Integer& x, const Integer& m) {
  Integer r = x % m;
  if (r < 0) r += m;
  return r;
}

inline IntVector int_mod(IntVector a, const Integer& m) {
  for (auto& c : a) c = mod_floor(c, m);
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

inline IntVector symmetric_mod(IntVector a, const Integer& m) {
  const Integer half = m / 2;
  for (auto& c : a) {
    c = mod_floor(c, m);
    if (c > half) c -= m;
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

inline IntVector lift_mod_poly(const detail::ModPoly& f) { return IntVector(f.begin(), f.end()); }

// Lifts f == g h (mod p), all monic, to a factorization modulo p^k.
inline std::pair<IntVector, IntVector> hensel_pair(const IntVector& f, const ModPoly& g0, const ModPoly& h0,
                                                   const PrimeField& field, unsigned k) {
  const auto [s, t] = field.bezout(g0, h0);
  IntVector g = lift_mod_poly(g0), h = lift_mod_poly(h0);
  Integer m = field.p;
  for (unsigned j = 1; j < k; ++j) {
    IntVector diff = f;
    const IntVector gh = int_mul(g, h);
    if (diff.size() < gh.size()) diff.resize(gh.size(), 0);
    for (std::size_t i = 0; i < gh.size(); ++i) diff[i] -= gh[i];
    IntVector scaled;
    for (const auto& c : diff) scaled.push_back(c / m);
    const ModPoly e = field.from(scaled);
    auto [q, dg] = field.divmod(field.mul(t, e), g0);
    const ModPoly dh = field.add(field.mul(s, e), field.mul(q, h0));
    if (g.size() < dg.size()) g.resize(dg.size(), 0);
    if (h.size() < dh.size()) h.resize(dh.size(), 0);
    for (std::size_t i = 0; i < dg.size(); ++i) g[i] += m * Integer(dg[i]);
    for (std::size_t i = 0; i < dh.size(); ++i) h[i] += m * Integer(dh[i]);
    m *= field.p;
  }
  return {int_mod(g, m), int_mod(h, m)};
}

inline void hensel_all(const IntVector& f, const std::vector<ModPoly>& factors, const PrimeField& field, unsigned k,
                       const Integer& modulus, std::vector<IntVector>& out) {
  if (factors.size() == 1) {
    out.push_back(int_mod(f, modulus));
    return;
  }
  const std::size_t half = factors.size() / 2;
  std::vector<ModPoly> left(factors.begin(), factors.begin() + static_cast<long>(half));
  std::vector<ModPoly> right(factors.begin() + static_cast<long>(half), factors.end());
  ModPoly g0{1}, h0{1};
  for (const auto& x : left) g0 = field.mul(g0, x);
  for (const auto& x : right) h0 = field.mul(h0, x);
  auto [g, h] = hensel_pair(f, g0, h0, field, k);
  hensel_all(g, left, field, k, modulus, out);
  hensel_all(h, right, field, k, modulus, out);
}

inline std::vector<std::uint64_t> small_primes(std::uint64_t limit) {
  std::vector<bool> sieve(limit + 1, true);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (!sieve[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) sieve[j] = false;
  }
  return out;
}

// Exact quotient f / g over Z, or nullopt.
inline std::optional<IntVector> exact_int_division(const IntVector& f, const IntVector& g) {
  auto [q, r] = RationalPoly::from_integers(f).divmod(RationalPoly::from_integers(g));
  if (!r.is_zero()) return std::nullopt;
  IntVector out;
  for (const auto& c : q.coeffs()) {
    if (boost::multiprecision::denominator(c) != 1) return std::nullopt;
    out.push_back(boost::multiprecision::numerator(c));
  }
  return out;
}

inline IntVector primitive(IntVector f) {
  const Integer g = content(f);
  for (auto& c : f) c /= g;
  if (!f.empty() && f.back() < 0)
    for (auto& c : f) c = -c;
  return f;
}

// Irreducible factors of a primitive squarefree integer polynomial.
inline std::vector<IntVector> zassenhaus(const IntVector& f_in) {
  IntVector f = primitive(f_in);
  const int n = static_cast<int>(f.size()) - 1;
  if (n <= 1) return {f};

  // Pick the prime (among a few admissible ones) giving the fewest factors.
  std::optional<PrimeField> best;
  std::vector<ModPoly> best_factors;
  int admissible = 0;
  for (std::uint64_t p : small_primes(4000)) {
    if (p == 2) continue;
    const PrimeField field{p};
    const ModPoly fp = field.from(f);
    if (PrimeField::deg(fp) != n) continue;
    if (PrimeField::deg(field.gcd(fp, field.derivative(fp))) != 0) continue;
    std::vector<ModPoly> factors = field.factor_monic_squarefree(field.monic(fp));
    if (!best || factors.size() < best_factors.size()) {
      best = field;
      best_factors = std::move(factors);
    }
    if (best_factors.size() == 1 || ++admissible == 6) break;
  }
  if (!best) fail(ErrorCode::Internal, "no admissible prime for factorization");
  if (best_factors.size() == 1) return {f};

  // Coefficients of any factor are bounded by 2^n |f|_2 (Mignotte).
  Integer norm_sq = 0;
  for (const auto& c : f) norm_sq += c * c;
  const Integer bound = (Integer(1) << n) * (boost::multiprecision::sqrt(norm_sq) + 1) * abs(f.back()) * 2 + 1;
  unsigned k = 1;
  Integer modulus = best->p;
  while (modulus <= bound) {
    modulus *= best->p;
    ++k;
  }
  const Integer lc = f.back();
  auto [g, x, y] = extended_gcd(mod_floor(lc, modulus), modulus);
  const Integer lc_inv = mod_floor(x, modulus);
  IntVector monic_f = f;
  for (auto& c : monic_f) c = mod_floor(c * lc_inv, modulus);
  std::vector<IntVector> lifted;
  hensel_all(monic_f, best_factors, *best, k, modulus, lifted);

  std::vector<IntVector> result;
  std::size_t d = 1;
  while (2 * d <= lifted.size()) {
    bool found = false;
    std::vector<std::size_t> idx(d);
    for (std::size_t i = 0; i < d; ++i) idx[i] = i;
    while (true) {
      IntVector cand{f.back()};
      for (auto i : idx) cand = int_mod(int_mul(cand, lifted[i]), modulus);
      cand = primitive(symmetric_mod(cand, modulus));
      if (cand.size() > 1) {
        if (auto q = exact_int_division(f, cand)) {
          result.push_back(cand);
          f = primitive(*q);
          for (std::size_t i = d; i-- > 0;) lifted.erase(lifted.begin() + static_cast<long>(idx[i]));
          found = true;
          break;
        }
      }
      // next combination
      std::size_t i = d;
      while (i > 0 && idx[i - 1] == lifted.size() - d + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < d; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++d;
  }
  if (f.size() > 1) result.push_back(f);
  return result;
}

// A repeated factor over Q survives reduction modulo any prime not dividing
// the leading coefficient, so a squarefree reduction certifies squarefreeness.
inline bool squarefree_mod_some_prime(const IntVector& f) {
  const int n = static_cast<int>(f.size()) - 1;
  int tried = 0;
  for (std::uint64_t p : small_primes(200)) {
    if (p <= n) continue;
    const PrimeField field{p};
    const ModPoly fp = field.from(f);
    if (PrimeField::deg(fp) != n) continue;
    if (PrimeField::deg(field.gcd(fp, field.derivative(fp))) == 0) return true;
    if (++tried == 4) break;
  }
  return false;
}

}  // namespace detail

struct PolyFactor {
  RationalPoly factor;  // monic, irreducible over Q
  int multiplicity;
};

// Complete factorization of a nonzero polynomial into monic irreducibles,
// in canonical order (see RationalPoly::operator<).
inline std::vector<PolyFactor> factor_rational(const RationalPoly& f) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "factorization of 0");
  std::vector<PolyFactor> out;
  std::vector<std::pair<RationalPoly, int>> parts;
  if (f.degree() > 0 && detail::squarefree_mod_some_prime(primitive_integer_part(f)))
    parts.emplace_back(f.monic(), 1);
  else
    parts = squarefree_decomposition(f);
  for (const auto& [part, mult] : parts) {
    for (const auto& g : detail::zassenhaus(primitive_integer_part(part)))
      out.push_back({RationalPoly::from_integers(g).monic(), mult});
  }
  std::sort(out.begin(), out.end(), [](const PolyFactor& a, const PolyFactor& b) { return a.factor < b.factor; });
  return out;
}

}  // namespace k3
