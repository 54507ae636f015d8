#pragma once

// The homoclinic base map f0: the time-1 map of a smooth vector field on the
// disk of radius 2 with four dissipative saddles at the corners of
// [-1/2,1/2]^2, connected by the sides of the square.
//
// Along the bottom side the field is
//
//   V0(x,y) = alpha_L(x,y) (X0(x), A0(x) (y + 1/2))
//
// with X0 blending -kappa(x+1/2) into -lambda(1/2-x) over [1/13,1/12], A0
// blending lambda into -kappa over [-1/11,-1/12], and alpha_L slowing the
// flow by 1/L on the strip |440x - 42| <= 1 (see slowdown()).  The other three
// sides are obtained with the rotations tau_i.  Inside Q0 = [-1/10,1/10]^2 the
// field is a radial repeller, blended in over the annulus between Q0 and
// Q = [-1/6,1/6]^2, and the whole field is damped near Q, outside
// [-13/24,13/24]^2 and switched off for |p| >= 1.9.
//
// On the four corners tau_i(C0), C0 = [-1/2,-5/12]^2, f0 is exactly
// (x,y) -> (K^-1 (x+1/2) - 1/2, Lambda (y+1/2) - 1/2) and is evaluated in
// closed form there.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>

#include "homoclinic/dual.hpp"
#include "homoclinic/errors.hpp"
#include "homoclinic/geometry.hpp"
#include "homoclinic/smooth_kit.hpp"

namespace homoclinic {

struct Params {
  double K{50.0};        // corner contraction, kappa = log K
  double L{20.0};        // slowdown factor on the transit strip
  double Lambda{kLambda};
  double K_floor{20.0};  // configurable lower bound on K
  int substeps{256};     // RK4 steps per unit time
  double inner_damping{0.02};
  double outer_damping{0.02};

  [[nodiscard]] double kappa() const { return std::log(K); }
  [[nodiscard]] double lambda() const { return std::log(Lambda); }

  void validate() const {
    if (!(K > K_floor)) throw ConfigError("params: K must exceed K_floor (" + std::to_string(K_floor) + ")");
    if (!(L >= 1.0)) throw ConfigError("params: L must be >= 1");
    if (Lambda != kLambda) throw ConfigError("params: Lambda is fixed to 6/5");
    if (substeps < 1) throw ConfigError("params: substeps must be positive");
    if (!(inner_damping > 0.0 && inner_damping <= 1.0) || !(outer_damping > 0.0 && outer_damping <= 1.0)) {
      throw ConfigError("params: damping factors must lie in (0,1]");
    }
  }
};

namespace detail {

inline constexpr double kStripEdge = 0.1;          // Lambda/3 - 1/2 = -1/10
inline constexpr double kFieldCutoffInner = 3.24;  // 1.8^2
inline constexpr double kFieldCutoffOuter = 3.61;  // 1.9^2

template <typename T>
T x_rate(const T& x, double kappa, double lam) {
  const T w = bump(156.0 * x - 12.0);
  return w * (-kappa * (x + 0.5)) + (1.0 - w) * (-lam * (0.5 - x));
}

template <typename T>
T y_rate(const T& x, double kappa, double lam) {
  const T w = bump(132.0 * x + 12.0);
  return w * lam - (1.0 - w) * kappa;
}

/// First factor of alpha_L: 1/L on |440x-42| <= 1, 1 on |440x-42| >= 2.
template <typename T>
T slowdown(const T& x, double L) {
  using std::abs;
  return 1.0 - (1.0 - 1.0 / L) * bump(abs(440.0 * x - 42.0) - 1.0);
}

template <typename T>
T radial_factor(const T& x, const T& y) {
  return bump((2.0 / 7.0) * (x * x + y * y) - 1.0 / 7.0);
}

template <typename T>
T alpha_L(const T& x, const T& y, double L) {
  return slowdown(x, L) * radial_factor(x, y);
}

/// V0 on the strip y <= -1/10 (formulas extended to all x in the disk).
template <typename T>
Point2<T> v0(const Point2<T>& p, const Params& prm) {
  const double kap = prm.kappa();
  const double lam = prm.lambda();
  const T a = alpha_L(p.x, p.y, prm.L);
  return {a * x_rate(p.x, kap, lam), a * y_rate(p.x, kap, lam) * (p.y + 0.5)};
}

template <typename T>
Point2<T> v0_rotated(int i, const Point2<T>& p, const Params& prm) {
  return rotate(i, v0(rotate_inverse(i, p), prm));
}

/// V1 on D \ Q0; the branch order matches the four-case definition.  Where
/// two branches apply they agree (see the overlap tests).
template <typename T>
Point2<T> v1(const Point2<T>& p, const Params& prm) {
  if (value(p.y) <= -kStripEdge) return v0(p, prm);
  if (value(p.x) <= -kStripEdge) return v0_rotated(1, p, prm);
  if (value(p.y) >= kStripEdge) return v0_rotated(2, p, prm);
  if (value(p.x) >= kStripEdge) return v0_rotated(3, p, prm);
  throw DomainError("V1 is undefined inside Q0");
}

/// Evaluates V1 on a forced branch; used to check agreement on overlaps.
template <typename T>
Point2<T> v1_branch(int i, const Point2<T>& p, const Params& prm) {
  return i == 0 ? v0(p, prm) : v0_rotated(i, p, prm);
}

template <typename T>
Point2<T> vector_field(const Point2<T>& p, const Params& prm) {
  using std::abs;
  const T ax = abs(p.x);
  const T ay = abs(p.y);

  const T r2 = p.x * p.x + p.y * p.y;
  const T cutoff = bump((r2 - kFieldCutoffInner) / (kFieldCutoffOuter - kFieldCutoffInner));
  if (value(cutoff) == 0.0) return {T(0.0), T(0.0)};

  // Repeller on Q0, blended into V1 over the annulus Q \ Q0.
  const T w_in = bump(15.0 * (ax - 0.1)) * bump(15.0 * (ay - 0.1));
  Point2<T> v{T(0.0), T(0.0)};
  if (value(w_in) > 0.0) v = (w_in * prm.lambda()) * p;
  if (value(w_in) < 1.0) v = v + (1.0 - w_in) * v1(p, prm);

  const T damp_in = 1.0 - (1.0 - prm.inner_damping) * bump(12.0 * (ax - 1.0 / 6.0)) * bump(12.0 * (ay - 1.0 / 6.0));
  const T damp_out = prm.outer_damping + (1.0 - prm.outer_damping) *
                                             bump(24.0 * (ax - 13.0 / 24.0)) * bump(24.0 * (ay - 13.0 / 24.0));
  return (damp_in * damp_out * cutoff) * v;
}

template <typename T>
Point2<T> rk4_step(const Point2<T>& p, double h, const Params& prm) {
  const Point2<T> k1 = vector_field(p, prm);
  const Point2<T> k2 = vector_field(p + (0.5 * h) * k1, prm);
  const Point2<T> k3 = vector_field(p + (0.5 * h) * k2, prm);
  const Point2<T> k4 = vector_field(p + h * k3, prm);
  return p + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

template <typename T>
Point2<T> integrate(Point2<T> p, double t, std::int64_t steps, const Params& prm) {
  const double h = t / static_cast<double>(steps);
  for (std::int64_t k = 0; k < steps; ++k) p = rk4_step(p, h, prm);
  return p;
}

/// Corner in which the closed-form time-1 map applies to p: the point is in
/// [-1/30, 9/22] x [-1/30, 1/(4 Lambda)] in local coordinates
/// tau_i^{-1}(p) + 1/2, so the whole time-1 trajectory stays where the field
/// is exactly linear (the outer damping starts at distance 1/24 outside).
inline std::optional<int> affine_corner(const DiskPoint& p, const Params& prm) {
  constexpr double kMargin = 1.0 / 30.0;
  for (int i = 0; i < 4; ++i) {
    const DiskPoint q = rotate_inverse(i, p);
    const double u = q.x + 0.5;
    const double v = q.y + 0.5;
    if (u >= -kMargin && u <= 9.0 / 22.0 && v >= -kMargin && prm.Lambda * v <= 0.25) return i;
  }
  return std::nullopt;
}

inline DiskPoint affine_image(int i, const DiskPoint& p, const Params& prm) {
  const DiskPoint q = rotate_inverse(i, p);
  return rotate(i, DiskPoint{(q.x + 0.5) / prm.K - 0.5, prm.Lambda * (q.y + 0.5) - 0.5});
}

inline Mat2 affine_jacobian(int i, const Params& prm) {
  const Mat2 r = rotation_matrix(i);
  return r * Mat2::diag(1.0 / prm.K, prm.Lambda) * r.inverse();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Pointwise field components.

/// X0 on [-1/2, 1/2].
[[nodiscard]] inline double X0(double x, const Params& prm) {
  if (!(x >= -0.5 && x <= 0.5)) throw DomainError("X0: x outside [-1/2, 1/2]");
  return detail::x_rate(x, prm.kappa(), prm.lambda());
}

/// A0 on [-1/2, 1/2].
[[nodiscard]] inline double A0(double x, const Params& prm) {
  if (!(x >= -0.5 && x <= 0.5)) throw DomainError("A0: x outside [-1/2, 1/2]");
  return detail::y_rate(x, prm.kappa(), prm.lambda());
}

[[nodiscard]] inline double alpha_L(double x, double y, const Params& prm) {
  return detail::alpha_L(x, y, prm.L);
}

struct FieldSample {
  DiskPoint value{};
  Mat2 jacobian{};
};

[[nodiscard]] inline FieldSample field(const DiskPoint& p, const Params& prm) {
  if (!in_disk(p)) throw DomainError("field: point outside D");
  const Point2<Dual> pd{Dual(p.x, 1.0, 0.0), Dual(p.y, 0.0, 1.0)};
  const Point2<Dual> v = detail::vector_field(pd, prm);
  return {{v.x.v, v.y.v}, {v.x.d[0], v.x.d[1], v.y.d[0], v.y.d[1]}};
}

// ---------------------------------------------------------------------------
// Flow and time-1 map.

/// Time-t flow with step refinement: the step count is doubled until two
/// successive answers differ by less than tol * max(1, |t|).
[[nodiscard]] inline DiskPoint flow(const DiskPoint& p, double t, const Params& prm, double tol = 1e-9) {
  if (!in_disk(p)) throw DomainError("flow: point outside D");
  if (!(tol > 0.0)) throw DomainError("flow: tol must be positive");
  if (t == 0.0) return p;
  std::int64_t steps = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(std::abs(t) * prm.substeps)));
  DiskPoint prev = detail::integrate(p, t, steps, prm);
  constexpr std::int64_t kMaxSteps = std::int64_t{1} << 24;
  while (true) {
    steps *= 2;
    if (steps > kMaxSteps) throw NumericalError("flow: step size underflow before reaching tolerance");
    const DiskPoint next = detail::integrate(p, t, steps, prm);
    if (distance(next, prev) < tol * std::max(1.0, std::abs(t))) return next;
    prev = next;
  }
}

/// f0 = time-1 map: closed form on the affine corners, fixed-step RK4
/// (prm.substeps steps) elsewhere.
[[nodiscard]] inline DiskPoint f0(const DiskPoint& p, const Params& prm) {
  if (auto i = detail::affine_corner(p, prm)) return detail::affine_image(*i, p, prm);
  return detail::integrate(p, 1.0, prm.substeps, prm);
}

/// f0 together with its Jacobian (derivative of the discrete map).
struct MapJet {
  DiskPoint image{};
  Mat2 jacobian{};
};

[[nodiscard]] inline MapJet f0_jet(const DiskPoint& p, const Params& prm) {
  if (auto i = detail::affine_corner(p, prm)) {
    return {detail::affine_image(*i, p, prm), detail::affine_jacobian(*i, prm)};
  }
  const Point2<Dual> pd{Dual(p.x, 1.0, 0.0), Dual(p.y, 0.0, 1.0)};
  const Point2<Dual> q = detail::integrate(pd, 1.0, prm.substeps, prm);
  return {{q.x.v, q.y.v}, {q.x.d[0], q.x.d[1], q.y.d[0], q.y.d[1]}};
}

[[nodiscard]] inline TangentVector df0(const DiskPoint& p, const TangentVector& v, const Params& prm) {
  const MapJet jet = f0_jet(p, prm);
  const DiskPoint w = jet.jacobian * v.vec();
  return {w.x, w.y, jet.image};
}

/// f0 packaged as a map object (same interface as PerturbedMap).
struct BaseMap {
  Params prm{};

  [[nodiscard]] DiskPoint operator()(const DiskPoint& p) const { return f0(p, prm); }
  [[nodiscard]] MapJet jet(const DiskPoint& p) const { return f0_jet(p, prm); }
  [[nodiscard]] const Params& params() const { return prm; }
};

// ---------------------------------------------------------------------------
// Transitions between corners.

/// p in f0(C0) \ C0: local coordinates u = x+1/2 in [0, 1/(12K)] and
/// v = y+1/2 in (1/12, Lambda/12].
[[nodiscard]] inline bool in_exit_domain(const DiskPoint& p, const Params& prm) {
  const double u = p.x + 0.5;
  const double v = p.y + 0.5;
  return u >= 0.0 && u <= 1.0 / (12.0 * prm.K) && v > 1.0 / 12.0 && v <= prm.Lambda / 12.0;
}

struct Transition {
  std::int64_t steps{0};
  DiskPoint entry{};
};

/// First n >= 1 with f0^n(p) in tau_1(C0), for any starting point.
[[nodiscard]] inline Transition first_entry(const DiskPoint& p, const Params& prm, int target_corner = 1,
                                            std::int64_t budget = 200000) {
  const CornerFrame target{target_corner};
  DiskPoint q = p;
  for (std::int64_t n = 1; n <= budget; ++n) {
    q = f0(q, prm);
    if (target.contains(q)) return {n, q};
  }
  throw NumericalError("transition: no entry into tau_" + std::to_string(target_corner) +
                       "(C0) within the iteration budget");
}

/// tau(p) = min{n >= 1 : f0^n(p) in tau_1(C0)} for p in f0(C0) \ C0.
[[nodiscard]] inline std::int64_t transition_time(const DiskPoint& p, const Params& prm,
                                                  std::int64_t budget = 200000) {
  if (!in_exit_domain(p, prm)) throw DomainError("transition_time: point not in f0(C0) \\ C0");
  return first_entry(p, prm, 1, budget).steps;
}

struct ContractionCheck {
  double ratio{0.0};
  bool pass{false};
  std::int64_t steps{0};
};

/// Ratio (f0^tau(p))_1 / p_1 in offsets from x = -1/2, where tau is the first
/// entry time into tau_1(C0).  The first coordinate is the distance to the
/// left side of the square, i.e. to the connecting orbit.
[[nodiscard]] inline ContractionCheck check_contraction(const DiskPoint& p, const Params& prm) {
  const double x1 = p.x + 0.5;
  const double x2 = p.y + 0.5;
  if (!(x1 > 0.0 && x1 <= 0.1 && x2 > 0.0 && x2 <= 1.0 / 12.0)) {
    throw DomainError("check_contraction: expected 0 < x+1/2 <= 1/10 and 0 < y+1/2 <= 1/12");
  }
  if (!(prm.kappa() >= 2.0 * prm.lambda())) throw DomainError("check_contraction: requires K >= Lambda^2");
  const Transition t = first_entry(p, prm, 1);
  const double ratio = (t.entry.x + 0.5) / x1;
  return {ratio, ratio < 1.0, t.steps};
}

}  // namespace homoclinic
