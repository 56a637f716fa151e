#pragma once

// Floating-point model of positive frames in H_R: the Kahler vector kappa_P,
// the oriented plane kappa-perp in P, the maps h' (P -> P cap e-perp) and
// h'' (push to H(e)_R), real Eichler transformations and the twistor sphere.
//
// Orientation convention: frames are ordered, and the oriented plane Pi
// attached to kappa in P is the one for which (kappa, pi_1, pi_2) has the
// orientation of the ambient frame (v_1, v_2, v_3).

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "k3/isotropic.hpp"
#include "k3/lattice.hpp"

namespace k3 {

inline constexpr double kPositivityTolerance = 1e-9;
inline constexpr double kAgreementTolerance = 1e-8;
inline constexpr double kRecoveryTolerance = 1e-6;

// Extended precision: frames moved far by real Eichler transformations have
// entries in the thousands while their Gram matrices stay of size one, and
// double rounding alone would then eat most of the 1e-9 budget.
using Real = long double;
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
using RealMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using Vec3 = Eigen::Matrix<Real, 3, 1>;
using Mat3 = Eigen::Matrix<Real, 3, 3>;
using RowVec3 = Eigen::Matrix<Real, 1, 3>;

inline RealMatrix real_form(const GramLattice& l) {
  RealMatrix g(l.rank(), l.rank());
  for (std::size_t i = 0; i < l.rank(); ++i)
    for (std::size_t j = 0; j < l.rank(); ++j) g(i, j) = l.gram()(i, j).convert_to<Real>();
  return g;
}

inline RealVector real_vector(const IntVector& v) {
  RealVector x(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) x(i) = v[i].convert_to<Real>();
  return x;
}

inline RealMatrix real_matrix(const IntMatrix& m) {
  RealMatrix x(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) x(i, j) = m(i, j).convert_to<Real>();
  return x;
}

// An ordered list of real vectors together with the ambient form.
struct RealFrame {
  RealMatrix form;
  std::vector<RealVector> vectors;

  std::size_t size() const { return vectors.size(); }
  Real pair(const RealVector& a, const RealVector& b) const { return a.dot(form * b); }
  RealMatrix gram() const {
    RealMatrix g(size(), size());
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j) g(i, j) = pair(vectors[i], vectors[j]);
    return g;
  }
};

struct KappaVector {
  RealVector coords;
};

// Gram-Schmidt under the ambient form; triangular with positive diagonal,
// so the orientation of the frame is kept.
inline RealFrame orthonormalize(const RealFrame& frame) {
  RealFrame out{frame.form, {}};
  for (const auto& v : frame.vectors) {
    RealVector w = v;
    for (const auto& u : out.vectors) w -= frame.pair(w, u) * u;
    const Real nn = frame.pair(w, w);
    if (!(nn > kPositivityTolerance)) fail(ErrorCode::NotPositive, "frame is not positive definite");
    out.vectors.push_back(w / std::sqrt(nn));
  }
  return out;
}

// Coordinates of a vector of span(frame) in an orthonormal frame.
inline Vec3 frame_coordinates(const RealFrame& orthonormal, const RealVector& x) {
  Vec3 c;
  for (int i = 0; i < 3; ++i) c(i) = orthonormal.pair(x, orthonormal.vectors[static_cast<std::size_t>(i)]);
  return c;
}

namespace detail {

// Pairings w_i = e.v_i and the coefficients c = G_P^{-1} w of the projection
// of e onto span(P). Solving against the 3x3 Gram matrix stays accurate for
// frames with large entries, where Gram-Schmidt loses digits.
struct Projection {
  Vec3 w;
  Vec3 c;
};

inline Projection project_onto_frame(const RealFrame& p, const IntVector& e) {
  if (p.size() != 3) fail(ErrorCode::DimensionMismatch, "kappa needs a positive 3-frame");
  const RealVector ev = real_vector(e);
  Projection out;
  for (int i = 0; i < 3; ++i) out.w(i) = p.pair(ev, p.vectors[static_cast<std::size_t>(i)]);
  const Mat3 g = p.gram();
  const Eigen::LDLT<Mat3> ldlt(g);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() || ldlt.vectorD().minCoeff() <= kPositivityTolerance)
    fail(ErrorCode::NotPositive, "frame is not positive definite");
  out.c = ldlt.solve(out.w);
  // e.p = |p|^2 = w . c
  if (!(std::sqrt(std::max<Real>(out.w.dot(out.c), 0)) > kPositivityTolerance))
    fail(ErrorCode::EOrthogonalToP, "e is orthogonal to P");
  return out;
}

}  // namespace detail

inline KappaVector kappa_from_frame(const RealFrame& p, const IntVector& e) {
  const detail::Projection proj = detail::project_onto_frame(p, e);
  RealVector projection = RealVector::Zero(p.vectors.front().size());
  for (int i = 0; i < 3; ++i) projection += proj.c(i) * p.vectors[static_cast<std::size_t>(i)];
  const Real nn = p.pair(projection, projection);
  return {projection * std::sqrt(2.0 / nn)};
}

namespace detail {

// Unit vectors (a, b) in R^3 with (k, a, b) a right-handed orthonormal basis.
inline std::pair<Vec3, Vec3> oriented_complement(const Vec3& k) {
  int least = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(k(i)) < std::abs(k(least))) least = i;
  Vec3 t = Vec3::Zero();
  t(least) = 1.0;
  Vec3 a = (t - t.dot(k) * k).normalized();
  Vec3 b = k.cross(a);
  return {a, b};
}

inline Vec3 least_aligned_axis(const Vec3& w) {
  int least = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(w(i)) < std::abs(w(least))) least = i;
  Vec3 t = Vec3::Zero();
  t(least) = 1.0;
  return t;
}

}  // namespace detail

inline RealFrame hodge_two_plane(const RealFrame& p, const KappaVector& kappa) {
  const RealFrame u = orthonormalize(p);
  const Vec3 k = frame_coordinates(u, kappa.coords);
  RealVector residual = kappa.coords;
  for (int i = 0; i < 3; ++i) residual -= k(i) * u.vectors[static_cast<std::size_t>(i)];
  if (residual.norm() > kAgreementTolerance * std::max<Real>(1, kappa.coords.norm()))
    fail(ErrorCode::KappaNotInP, "kappa does not lie in span(P)");
  const auto [a, b] = detail::oriented_complement(k.normalized());
  RealFrame out{p.form, {}};
  for (const auto& c : {a, b}) {
    RealVector x = RealVector::Zero(kappa.coords.size());
    for (int i = 0; i < 3; ++i) x += c(i) * u.vectors[static_cast<std::size_t>(i)];
    out.vectors.push_back(x);
  }
  return out;
}

// P cap e-perp, computed in the coefficient space of the given frame: the
// kernel of c -> sum c_i (e.v_i), oriented against the kappa direction
// G_P^{-1} (e.v_i).
inline RealFrame h_prime(const RealFrame& p, const IntVector& e) {
  if (p.size() != 3) fail(ErrorCode::DimensionMismatch, "h' needs a positive 3-frame");
  const RealVector ev = real_vector(e);
  Vec3 w;
  for (int i = 0; i < 3; ++i) w(i) = p.pair(ev, p.vectors[static_cast<std::size_t>(i)]);
  if (w.norm() <= kPositivityTolerance) fail(ErrorCode::NonTransverse, "P is contained in e-perp");
  const Vec3 wn = w.normalized();
  Vec3 c1 = wn.cross(detail::least_aligned_axis(wn)).normalized();
  Vec3 c2 = wn.cross(c1);
  const Mat3 gp = p.gram();
  const Vec3 kappa_dir = gp.ldlt().solve(w);
  Mat3 orient;
  orient << kappa_dir, c1, c2;
  if (orient.determinant() < 0) std::swap(c1, c2);
  RealFrame out{p.form, {}};
  for (const auto& c : {c1, c2}) {
    RealVector x = RealVector::Zero(ev.size());
    for (int i = 0; i < 3; ++i) x += c(i) * p.vectors[static_cast<std::size_t>(i)];
    out.vectors.push_back(x);
  }
  return orthonormalize(out);
}

// Pushes a frame lying in e-perp through the projection e-perp -> H(e).
inline RealFrame h_double_prime(const RealFrame& pi, const IsotropicQuotient& q) {
  const RealMatrix coords = real_matrix(q.perp_coordinates);
  const RealVector ev = real_vector(q.e);
  RealFrame out{real_form(q.quotient), {}};
  for (const auto& x : pi.vectors) {
    if (std::abs(pi.pair(x, ev)) > kAgreementTolerance * std::max<Real>(1, x.norm()))
      fail(ErrorCode::NotOrthogonal, "plane is not contained in e-perp");
    const RealVector y = coords * x;
    out.vectors.push_back(y.tail(y.size() - 1));
  }
  return out;
}

// The composite P -> H(e)_R computed without h' or the left inverse: the
// kernel of the e-functional on the frame's coefficient space, with quotient
// coordinates recovered from the pairings with the lift basis.
inline RealFrame h_composite(const RealFrame& p, const IsotropicQuotient& q) {
  if (p.size() != 3) fail(ErrorCode::DimensionMismatch, "h needs a positive 3-frame");
  const RealVector ev = real_vector(q.e);
  const RealMatrix lifts = real_matrix(q.lift_basis);
  const RealMatrix gq = real_form(q.quotient);
  RowVec3 w;
  for (int i = 0; i < 3; ++i) w(i) = p.pair(ev, p.vectors[static_cast<std::size_t>(i)]);
  if (w.norm() <= kPositivityTolerance) fail(ErrorCode::NonTransverse, "P is contained in e-perp");
  Eigen::FullPivLU<RowVec3> lu(w);
  RealMatrix kernel = lu.kernel();  // 3 x 2
  const Vec3 kappa_dir = p.gram().ldlt().solve(w.transpose());
  Mat3 orient;
  orient << kappa_dir, kernel.col(0), kernel.col(1);
  if (orient.determinant() < 0) kernel.col(0).swap(kernel.col(1));
  RealFrame out{gq, {}};
  for (int j = 0; j < 2; ++j) {
    RealVector pairing = RealVector::Zero(lifts.cols());
    for (int i = 0; i < 3; ++i)
      pairing += kernel(i, j) * (lifts.transpose() * (p.form * p.vectors[static_cast<std::size_t>(i)]));
    out.vectors.push_back(gq.fullPivLu().solve(pairing));
  }
  return orthonormalize(out);
}

// x + (x.e) gamma - (x.gamma) e - 1/2 (gamma.gamma)(x.e) e
inline RealVector real_eichler(const RealMatrix& form, const IntVector& e, const RealVector& gamma,
                               const RealVector& x) {
  const RealVector ev = real_vector(e);
  const Real xe = x.dot(form * ev);
  const Real xg = x.dot(form * gamma);
  const Real gg = gamma.dot(form * gamma);
  return x + xe * gamma - xg * ev - 0.5 * gg * xe * ev;
}

inline RealFrame real_eichler(const RealFrame& frame, const IntVector& e, const RealVector& gamma) {
  RealFrame out{frame.form, {}};
  for (const auto& v : frame.vectors) out.vectors.push_back(real_eichler(frame.form, e, gamma, v));
  return out;
}

// kappa.e = sqrt(2) |p| with |p|^2 = w . c.
inline Real torsor_invariant(const RealFrame& p, const IntVector& e) {
  const detail::Projection proj = detail::project_onto_frame(p, e);
  return std::sqrt(2.0 * proj.w.dot(proj.c));
}

// The gamma in e-perp (defined mod R e) with E(e ^ gamma) kappa = kappa',
// for kappa, kappa' of norm 2 with equal positive pairing against e.
inline RealVector torsor_parameter(const RealMatrix& form, const IntVector& e, const KappaVector& kappa,
                                   const KappaVector& kappa_prime) {
  const RealVector ev = real_vector(e);
  const Real c = kappa.coords.dot(form * ev);
  const Real c_prime = kappa_prime.coords.dot(form * ev);
  if (!(c > kPositivityTolerance)) fail(ErrorCode::EOrthogonalToP, "kappa.e must be positive");
  if (std::abs(c - c_prime) > kAgreementTolerance * std::max<Real>(1, std::abs(c)))
    fail(ErrorCode::NotOrthogonal, "kappa.e and kappa'.e differ; no Eichler transformation relates them");
  return (kappa_prime.coords - kappa.coords) / c;
}

// n points kappa in span(P) with kappa.kappa = 2 from a randomly rotated
// Fibonacci lattice on the sphere. With `antipodal`, the output alternates
// kappa, -kappa.
inline std::vector<KappaVector> twistor_sphere_sample(const RealFrame& p, std::size_t n, std::uint64_t seed,
                                                      bool antipodal = false) {
  if (n == 0) fail(ErrorCode::DimensionMismatch, "need at least one sample");
  if (p.size() != 3) fail(ErrorCode::DimensionMismatch, "twistor sphere needs a positive 3-frame");
  const RealFrame u = orthonormalize(p);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::Quaternion<Real> rotation(normal(rng), normal(rng), normal(rng), normal(rng));
  rotation.normalize();
  const Mat3 r = rotation.toRotationMatrix();
  const std::size_t base = antipodal ? (n + 1) / 2 : n;
  const Real golden = std::numbers::pi_v<Real> * (3 - std::sqrt(Real(5)));
  std::vector<KappaVector> out;
  for (std::size_t i = 0; i < base && out.size() < n; ++i) {
    const Real z = 1.0 - (2.0 * static_cast<Real>(i) + 1.0) / static_cast<Real>(base);
    const Real rad = std::sqrt(std::max<Real>(0, 1 - z * z));
    const Real phi = golden * static_cast<Real>(i);
    const Vec3 s = r * Vec3(rad * std::cos(phi), rad * std::sin(phi), z);
    RealVector kappa = RealVector::Zero(p.vectors.front().size());
    for (int k = 0; k < 3; ++k) kappa += std::sqrt(Real(2)) * s(k) * u.vectors[static_cast<std::size_t>(k)];
    out.push_back({kappa});
    if (antipodal && out.size() < n) out.push_back({-kappa});
  }
  return out;
}

// Plucker coordinates of an oriented plane from a form-orthonormal 2-frame;
// equal oriented planes give equal coordinates.
inline RealVector plucker(const RealFrame& plane) {
  const RealFrame u = orthonormalize(plane);
  const RealVector& a = u.vectors.at(0);
  const RealVector& b = u.vectors.at(1);
  const Eigen::Index n = a.size();
  RealVector out(n * (n - 1) / 2);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) out(k++) = a(i) * b(j) - a(j) * b(i);
  return out;
}

inline Real oriented_plane_distance(const RealFrame& x, const RealFrame& y) {
  return (plucker(x) - plucker(y)).cwiseAbs().maxCoeff();
}

}  // namespace k3
