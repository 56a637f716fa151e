#pragma once

// Weierstrass fibrations y^2 = x^3 + a(s) x + b(s) over P^1 with
// deg a <= 8, deg b <= 12: discriminant, vanishing orders at every place
// (infinity via the weight deficits 8, 12, 24), Kodaira types, Euler numbers
// and local monodromy. Characteristic zero only.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "k3/factor.hpp"
#include "k3/numeric.hpp"
#include "k3/polynomial.hpp"

namespace k3 {

inline constexpr int kWeightA = 8;
inline constexpr int kWeightB = 12;
inline constexpr int kWeightDelta = 24;

// Order of vanishing; the zero polynomial vanishes to infinite order.
struct VanishingOrder {
  bool infinite = false;
  int value = 0;

  static VanishingOrder inf() { return {true, 0}; }
  static VanishingOrder of(int v) { return {false, v}; }

  bool at_least(int k) const { return infinite || value >= k; }
  bool equals(int k) const { return !infinite && value == k; }
  std::string str() const { return infinite ? "inf" : std::to_string(value); }
  bool operator==(const VanishingOrder&) const = default;
};

struct OrderTriple {
  VanishingOrder a, b, delta;
  bool operator==(const OrderTriple&) const = default;
};

class WeierstrassModel {
 public:
  WeierstrassModel(RationalPoly a, RationalPoly b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_.degree() > kWeightA) fail(ErrorCode::DimensionMismatch, "deg a exceeds 8");
    if (b_.degree() > kWeightB) fail(ErrorCode::DimensionMismatch, "deg b exceeds 12");
  }

  const RationalPoly& a() const { return a_; }
  const RationalPoly& b() const { return b_; }

  // The model in the chart s' = 1/s: coefficient lists reversed at weights 8, 12.
  WeierstrassModel at_infinity_chart() const {
    auto flip = [](const RationalPoly& f, int weight) {
      RatVector c(static_cast<std::size_t>(weight) + 1, 0);
      for (int i = 0; i <= f.degree(); ++i) c[static_cast<std::size_t>(weight - i)] = f.coeff(static_cast<std::size_t>(i));
      return RationalPoly(std::move(c));
    };
    return WeierstrassModel(flip(a_, kWeightA), flip(b_, kWeightB));
  }

 private:
  RationalPoly a_, b_;
};

// A closed point of P^1 over Q: a monic irreducible polynomial, or infinity.
struct Place {
  std::optional<RationalPoly> factor;

  static Place infinity() { return {}; }
  static Place finite(RationalPoly p) { return {std::move(p)}; }

  bool is_infinity() const { return !factor.has_value(); }
  int degree() const { return factor ? factor->degree() : 1; }
  std::string str() const { return factor ? factor->str() : "inf"; }
  bool operator==(const Place&) const = default;
  // Finite places by factor order, infinity last.
  friend bool operator<(const Place& x, const Place& y) {
    if (x.is_infinity() || y.is_infinity()) return !x.is_infinity() && y.is_infinity();
    return *x.factor < *y.factor;
  }
};

struct KodairaType {
  enum class Kind { Smooth, I, II, III, IV, IStar, IVStar, IIIStar, IIStar };
  Kind kind = Kind::Smooth;
  int n = 0;  // for I_n and I*_n

  std::string str() const {
    switch (kind) {
      case Kind::Smooth: return "smooth";
      case Kind::I: return "I" + std::to_string(n);
      case Kind::II: return "II";
      case Kind::III: return "III";
      case Kind::IV: return "IV";
      case Kind::IStar: return "I*" + std::to_string(n);
      case Kind::IVStar: return "IV*";
      case Kind::IIIStar: return "III*";
      case Kind::IIStar: return "II*";
    }
    return "?";
  }
  bool operator==(const KodairaType&) const = default;
  friend bool operator<(const KodairaType& x, const KodairaType& y) {
    return std::pair(static_cast<int>(x.kind), x.n) < std::pair(static_cast<int>(y.kind), y.n);
  }
};

class NonMinimalError : public Error {
 public:
  explicit NonMinimalError(std::vector<Place> places)
      : Error(ErrorCode::NonMinimal, describe(places)), places_(std::move(places)) {}
  const std::vector<Place>& places() const { return places_; }

 private:
  static std::string describe(const std::vector<Place>& places) {
    std::string s = "ord(a) >= 4 and ord(b) >= 6 at";
    for (const auto& p : places) s += " [" + p.str() + "]";
    return s;
  }
  std::vector<Place> places_;
};

inline RationalPoly discriminant(const WeierstrassModel& m) {
  const RationalPoly delta = Rational(4) * m.a().pow(3) + Rational(27) * m.b().pow(2);
  if (delta.is_zero()) fail(ErrorCode::IdenticallyZero, "4a^3 + 27b^2 vanishes identically");
  return delta;
}

inline std::vector<std::pair<Place, int>> places_of(const RationalPoly& p) {
  if (p.is_zero()) fail(ErrorCode::ZeroPolynomial, "places of the zero polynomial");
  std::vector<std::pair<Place, int>> out;
  for (const auto& f : factor_rational(p)) out.emplace_back(Place::finite(f.factor), f.multiplicity);
  return out;
}

inline VanishingOrder order_at(const RationalPoly& f, const Place& place, int weight) {
  if (f.is_zero()) return VanishingOrder::inf();
  if (place.is_infinity()) return VanishingOrder::of(weight - f.degree());
  return VanishingOrder::of(multiplicity(f, *place.factor));
}

inline OrderTriple ord_at(const WeierstrassModel& m, const Place& place) {
  const RationalPoly delta = Rational(4) * m.a().pow(3) + Rational(27) * m.b().pow(2);
  return {order_at(m.a(), place, kWeightA), order_at(m.b(), place, kWeightB), order_at(delta, place, kWeightDelta)};
}

inline KodairaType classify_fiber(const VanishingOrder& oa, const VanishingOrder& ob, const VanishingOrder& od) {
  using K = KodairaType::Kind;
  if (oa.at_least(4) && ob.at_least(6)) fail(ErrorCode::NonMinimal, "ord(a) >= 4 and ord(b) >= 6");
  auto inconsistent = [&]() -> KodairaType {
    fail(ErrorCode::InconsistentOrders,
         "no Kodaira row for (" + oa.str() + ", " + ob.str() + ", " + od.str() + ")");
  };
  if (od.infinite) return inconsistent();
  const int d = od.value;
  auto expect = [&](int want, KodairaType t) { return d == want ? t : inconsistent(); };
  if (d == 0) {
    if (oa.at_least(1) && ob.at_least(1)) return inconsistent();
    return {K::Smooth, 0};
  }
  if (oa.equals(0)) return ob.equals(0) ? KodairaType{K::I, d} : inconsistent();
  // From here ord(a) >= 1.
  if (ob.equals(0)) return inconsistent();
  if (ob.equals(1)) return expect(2, {K::II, 0});
  if (oa.equals(1)) return expect(3, {K::III, 0});
  if (ob.equals(2)) return expect(4, {K::IV, 0});
  if (ob.equals(3)) {
    if (oa.equals(2)) return d >= 6 ? KodairaType{K::IStar, d - 6} : inconsistent();
    return expect(6, {K::IStar, 0});
  }
  if (oa.equals(2)) return expect(6, {K::IStar, 0});
  if (ob.equals(4)) return expect(8, {K::IVStar, 0});
  if (oa.equals(3)) return expect(9, {K::IIIStar, 0});
  if (ob.equals(5)) return expect(10, {K::IIStar, 0});
  return inconsistent();
}

inline int euler_number(const KodairaType& t) {
  using K = KodairaType::Kind;
  switch (t.kind) {
    case K::Smooth: return 0;
    case K::I: return t.n;
    case K::II: return 2;
    case K::III: return 3;
    case K::IV: return 4;
    case K::IStar: return 6 + t.n;
    case K::IVStar: return 8;
    case K::IIIStar: return 9;
    case K::IIStar: return 10;
  }
  return 0;
}

// Conjugacy-class representative in SL2(Z).
inline IntMatrix local_monodromy(const KodairaType& t) {
  using K = KodairaType::Kind;
  switch (t.kind) {
    case K::Smooth: fail(ErrorCode::SmoothFiber, "smooth fibers have trivial monodromy");
    case K::I: return {{1, t.n}, {0, 1}};
    case K::II: return {{1, 1}, {-1, 0}};
    case K::III: return {{0, 1}, {-1, 0}};
    case K::IV: return {{0, 1}, {-1, -1}};
    case K::IStar: return {{-1, -t.n}, {0, -1}};
    case K::IVStar: return {{-1, -1}, {1, 0}};
    case K::IIIStar: return {{0, -1}, {1, 0}};
    case K::IIStar: return {{0, -1}, {1, 1}};
  }
  fail(ErrorCode::Internal, "unknown Kodaira type");
}

struct FiberReport {
  Place place;
  int place_degree;
  OrderTriple orders;
  KodairaType kodaira;
  int euler;
  IntMatrix monodromy;
};

struct FibrationSummary {
  int total_ord_delta = 0;
  int total_euler = 0;
  bool is_integral = true;
  bool is_nodal = true;
  bool minimal = true;
};

struct FibrationAnalysis {
  std::vector<FiberReport> fibers;
  FibrationSummary summary;
};

// One report per place where the discriminant vanishes, finite places in
// canonical factor order, infinity last. Throws NonMinimalError listing every
// offending place.
inline FibrationAnalysis analyze(const WeierstrassModel& m) {
  const RationalPoly delta = discriminant(m);
  std::vector<Place> places;
  for (auto& [place, mult] : places_of(delta)) places.push_back(place);
  if (delta.degree() < kWeightDelta) places.push_back(Place::infinity());

  std::vector<std::pair<Place, OrderTriple>> orders;
  std::vector<Place> bad;
  for (const auto& place : places) {
    const OrderTriple o = ord_at(m, place);
    if (o.a.at_least(4) && o.b.at_least(6)) bad.push_back(place);
    orders.emplace_back(place, o);
  }
  if (!bad.empty()) throw NonMinimalError(std::move(bad));

  FibrationAnalysis out;
  using K = KodairaType::Kind;
  for (const auto& [place, o] : orders) {
    const KodairaType t = classify_fiber(o.a, o.b, o.delta);
    const int eu = euler_number(t);
    out.fibers.push_back({place, place.degree(), o, t, eu, local_monodromy(t)});
    out.summary.total_ord_delta += place.degree() * o.delta.value;
    out.summary.total_euler += place.degree() * eu;
    const bool integral = (t.kind == K::I && t.n == 1) || t.kind == K::II;
    out.summary.is_integral = out.summary.is_integral && integral;
    out.summary.is_nodal = out.summary.is_nodal && t.kind == K::I && t.n == 1;
  }
  return out;
}

}  // namespace k3
