#pragma once

// Unfolding of the cusp y^2 = x^3 + t x + u. For t != 0 the cubic has a
// double root exactly when 4t^3 + 27u^2 = 0, so each t has two critical
// values u; as t circles 0 they braid around each other.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "k3/error.hpp"

namespace k3 {

using Complex = std::complex<double>;

struct UnfoldingSample {
  Complex t;
  std::array<Complex, 2> u;
};

inline UnfoldingSample critical_values(Complex t) {
  if (t == Complex(0.0, 0.0)) fail(ErrorCode::CuspAtZero, "the critical values coincide at t = 0");
  const Complex root = std::sqrt(-4.0 * t * t * t / 27.0);
  return {t, {root, -root}};
}

// Smallest acceptable ratio between the cost of the rejected matching and the
// chosen one when continuing the pair from one sample to the next.
inline constexpr double kDefaultMatchMargin = 2.0;

// Total change of arg(u_1 - u_2) along t = radius * e^{i theta}, theta from 0
// to 2 pi (or to -2 pi when clockwise), with the pair continued by
// nearest-neighbor matching.
inline double braid_winding(double radius, int steps, bool clockwise = false,
                            double margin = kDefaultMatchMargin) {
  if (!(radius > 0.0)) fail(ErrorCode::DimensionMismatch, "radius must be positive");
  if (steps < 16) fail(ErrorCode::StepTooCoarse, "at least 16 steps are required");
  const double direction = clockwise ? -1.0 : 1.0;
  auto at = [&](int k) {
    const double theta = direction * 2.0 * std::numbers::pi * k / steps;
    return critical_values(std::polar(radius, theta)).u;
  };
  std::array<Complex, 2> prev = at(0);
  double total = 0.0;
  for (int k = 1; k <= steps; ++k) {
    std::array<Complex, 2> next = at(k);
    const double keep = std::abs(next[0] - prev[0]) + std::abs(next[1] - prev[1]);
    const double swap = std::abs(next[0] - prev[1]) + std::abs(next[1] - prev[0]);
    const double best = std::min(keep, swap), other = std::max(keep, swap);
    if (other < margin * best)
      fail(ErrorCode::StepTooCoarse, "step " + std::to_string(k) + " cannot be matched unambiguously");
    if (swap < keep) std::swap(next[0], next[1]);
    total += std::arg((next[0] - next[1]) / (prev[0] - prev[1]));
    prev = next;
  }
  return total;
}

}  // namespace k3
