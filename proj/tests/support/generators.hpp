#pragma once

// Seeded random inputs for the property tests and the acceptance gate.

#include <cstdint>
#include <random>
#include <vector>

#include "k3/isometry.hpp"
#include "k3/isotropic.hpp"
#include "k3/lattice.hpp"
#include "k3/period.hpp"
#include "k3/polynomial.hpp"

namespace k3::gen {

using Rng = std::mt19937_64;

inline long long uniform(Rng& rng, long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

inline IntVector random_vector(Rng& rng, std::size_t n, long long bound) {
  IntVector v(n);
  for (auto& x : v) x = uniform(rng, -bound, bound);
  return v;
}

inline IntVector unit(std::size_t n, std::size_t i) {
  IntVector v(n, 0);
  v[i] = 1;
  return v;
}

inline IntVector add(const IntVector& a, const IntVector& b, const Integer& k = 1) {
  IntVector out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += k * b[i];
  return out;
}

inline IntVector negate(IntVector v) {
  for (auto& x : v) x = -x;
  return v;
}

inline Integer height(const IntVector& v) {
  Integer h = 0;
  for (const auto& x : v) h = std::max(h, abs(x));
  return h;
}

// Primitive isotropic vector of the K3 lattice with all coordinates in
// [-max_height, max_height]: random small entries outside one hyperbolic
// plane, then (a, b) in that plane with 2ab cancelling the rest.
inline IntVector random_isotropic(Rng& rng, const GramLattice& h, long long max_height = 10) {
  const std::size_t n = h.rank();
  const std::size_t planes = 3;
  while (true) {
    const std::size_t block = static_cast<std::size_t>(uniform(rng, 0, planes - 1));
    IntVector v(n, 0);
    const long long spread = uniform(rng, 1, 2);
    for (std::size_t i = 0; i < n; ++i)
      if (i / 2 != block && uniform(rng, 0, 2) == 0) v[i] = uniform(rng, -spread, spread);
    const Integer rest = h.norm(v);
    const Integer m = -rest / 2;  // want a*b = m
    std::vector<std::pair<long long, long long>> choices;
    for (long long a = -max_height; a <= max_height; ++a) {
      if (a == 0) {
        if (m == 0)
          for (long long b = -max_height; b <= max_height; ++b) choices.emplace_back(0, b);
        continue;
      }
      if (m % a != 0) continue;
      const Integer b = m / a;
      if (abs(b) <= max_height) choices.emplace_back(a, static_cast<long long>(b));
    }
    if (choices.empty()) continue;
    const auto [a, b] = choices[static_cast<std::size_t>(uniform(rng, 0, static_cast<long long>(choices.size()) - 1))];
    v[2 * block] = a;
    v[2 * block + 1] = b;
    if (is_zero(v) || content(v) != 1 || height(v) > max_height) continue;
    return v;
  }
}

// Random small element of e-perp.
inline IntVector random_perp(Rng& rng, const GramLattice& h, const IntVector& e, long long bound = 3) {
  static thread_local std::vector<std::pair<IntVector, IntMatrix>> cache;
  const IntMatrix* basis = nullptr;
  for (const auto& [key, b] : cache)
    if (key == e) basis = &b;
  if (!basis) {
    cache.emplace_back(e, orthogonal_complement(h, {e}).basis);
    basis = &cache.back().second;
  }
  return *basis * random_vector(rng, basis->cols(), bound);
}

// Random isometry built from Eichler transformations on the three standard
// isotropic vectors e_1, e_2, e_3 and reflections in simple roots.
inline Isometry random_isometry(Rng& rng, const GramLattice& h, int factors = 4) {
  Isometry g = identity_isometry(h);
  for (int k = 0; k < factors; ++k) {
    if (uniform(rng, 0, 2) == 0) {
      IntVector alpha(h.rank(), 0);
      const auto choice = uniform(rng, 0, 3);
      if (choice < 3) {
        alpha[2 * static_cast<std::size_t>(choice)] = 1;
        alpha[2 * static_cast<std::size_t>(choice) + 1] = -1;
      } else {
        alpha[static_cast<std::size_t>(uniform(rng, 6, static_cast<long long>(h.rank()) - 1))] = 1;
      }
      g = reflection(h, alpha) * g;
    } else {
      const IntVector e = unit(h.rank(), 2 * static_cast<std::size_t>(uniform(rng, 0, 2)));
      g = eichler(h, e, random_perp(rng, h, e, 1)) * g;
    }
  }
  return g;
}

// Primitive isotropic e with a root alpha orthogonal to it: a standard pair
// (e_k, root) moved by a random isometry. Searching e-perp for roots
// directly is far slower.
struct IsotropicWithRoot {
  IntVector e;
  IntVector alpha;
};

inline IsotropicWithRoot random_isotropic_with_root(Rng& rng, const GramLattice& h, int factors = 4) {
  const std::size_t n = h.rank();
  const std::size_t k = static_cast<std::size_t>(uniform(rng, 0, 2));
  IntVector alpha(n, 0);
  if (uniform(rng, 0, 1) == 0) {
    const std::size_t j = (k + static_cast<std::size_t>(uniform(rng, 1, 2))) % 3;
    alpha[2 * j] = 1;
    alpha[2 * j + 1] = -1;
  } else {
    alpha[static_cast<std::size_t>(uniform(rng, 6, static_cast<long long>(n) - 1))] = 1;
  }
  const Isometry g = random_isometry(rng, h, factors);
  return {g(unit(n, 2 * k)), g(alpha)};
}

// Real positive 3-frame of the K3 lattice: a random positive part in the
// span of e_i + f_i plus a smaller random negative part, moved by a random
// integral isometry.
inline RealFrame random_positive_frame(Rng& rng, const GramLattice& h, const Isometry* move = nullptr) {
  const RealMatrix form = real_form(h);
  std::normal_distribution<double> normal;
  while (true) {
    RealFrame f{form, {}};
    for (int i = 0; i < 3; ++i) {
      RealVector v = RealVector::Zero(static_cast<Eigen::Index>(h.rank()));
      for (int k = 0; k < 3; ++k) {
        const double c = normal(rng);
        v(2 * k) += c;
        v(2 * k + 1) += c;
        const double d = 0.3 * normal(rng);
        v(2 * k) += d;
        v(2 * k + 1) -= d;
      }
      for (Eigen::Index k = 6; k < v.size(); ++k) v(k) += 0.1 * normal(rng);
      f.vectors.push_back(v);
    }
    if (move) {
      const RealMatrix m = real_matrix(move->matrix());
      for (auto& v : f.vectors) v = m * v;
    }
    Eigen::LDLT<RealMatrix> ldlt(f.gram());
    const auto d = ldlt.vectorD();
    if (ldlt.info() == Eigen::Success && d.minCoeff() > 1e-3 * d.maxCoeff() && d.minCoeff() > 1e-3) return f;
  }
}

// -B^T B for a random near-identity integer B: a negative definite Gram
// matrix whose box-search bounds stay small.
inline IntMatrix random_negative_definite(Rng& rng, std::size_t n) {
  while (true) {
    IntMatrix b = IntMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (uniform(rng, 0, 3) == 0) b(i, j) += uniform(rng, -1, 1);
    if (bareiss_determinant(b) != 0) return -(b.transpose() * b);
  }
}

// Random real vector of e-perp with coordinates of size about `scale`:
// a Gaussian y with its e-component removed along G^{-1} e.
inline RealVector random_real_perp(Rng& rng, const GramLattice& h, const IntVector& e, double scale = 0.5) {
  std::normal_distribution<double> normal;
  const RealMatrix form = real_form(h);
  const RealVector ev = real_vector(e);
  const RealVector dual = form.fullPivLu().solve(ev);  // dual . x = e^T x in the form
  RealVector y(static_cast<Eigen::Index>(h.rank()));
  for (auto& c : y) c = scale * normal(rng);
  return y - (y.dot(form * ev) / ev.squaredNorm()) * dual;
}

// Random polynomial of exact degree `degree` with integer coefficients.
inline RationalPoly random_poly(Rng& rng, int degree, long long bound) {
  RatVector c(static_cast<std::size_t>(degree) + 1);
  for (auto& x : c) x = uniform(rng, -bound, bound);
  while (c.back() == 0) c.back() = uniform(rng, -bound, bound);
  return RationalPoly(std::move(c));
}

}  // namespace k3::gen
