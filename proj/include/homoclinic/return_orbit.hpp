#pragma once

// Periodic return orbits through a wiggle region, for exponents at large T.
//
// A point (x, 0) of region n in corner 0 is lifted to height phi(x) by the
// perturbation, spends k steps in the corner where the map is exactly
// (x/K, Lambda y) in chart coordinates, and then travels along the side of
// the square to the next corner, where it lands at chart position X.  The
// orbit is periodic (up to the rotation tau_1) when X = x.
//
// Heights phi ~ Lambda^-T underflow the disk coordinates for T in the
// hundreds, so the corner phase is evaluated in chart coordinates and only
// the transit from height h = phi Lambda^k is integrated.  The period
// Jacobian is assembled from the same pieces.

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>

#include "homoclinic/analysis.hpp"
#include "homoclinic/base_map.hpp"
#include "homoclinic/entropy.hpp"
#include "homoclinic/errors.hpp"
#include "homoclinic/perturbation.hpp"

namespace homoclinic {

struct ReturnOrbit {
  double x_star{0.0};    // chart position of the periodic point
  double phi_star{0.0};  // its lift phi(x*)
  double h0{0.0};        // chart height after the k corner steps
  int corner_steps{0};   // k
  int transit_steps{0};  // m
  double landing_error{0.0};
  double offset{0.0};  // x* minus the pinned anchor (gbar), analytic
  Mat2 jacobian{};       // period map in corner-0 chart coordinates
  double top_eigenvalue{0.0};
  double lambda_hat{0.0};  // log |top eigenvalue| / (k + m)

  [[nodiscard]] int period() const { return corner_steps + transit_steps; }
};

namespace detail {

/// Largest |eigenvalue| of a 2x2 matrix.
inline double spectral_radius(const Mat2& m) {
  const std::complex<double> tr = m.a + m.d;
  const std::complex<double> det = m.det();
  const std::complex<double> disc = std::sqrt(tr * tr - 4.0 * det);
  return std::max(std::abs((tr + disc) / 2.0), std::abs((tr - disc) / 2.0));
}

}  // namespace detail

/// The transit part: a point at chart height h on the unstable side of
/// corner 0 (chart (0, h)), followed until it lands in the next corner.
class TransitMap {
 public:
  explicit TransitMap(const PerturbedMap& f) : f_(f) {}

  [[nodiscard]] DiskPoint start(double h) const { return CornerFrame{0}.from_chart({0.0, h}); }

  /// Chart-1 position after m steps.
  [[nodiscard]] DiskPoint landing(double h, int m) const {
    DiskPoint p = start(h);
    for (int s = 0; s < m; ++s) p = f_(p);
    return CornerFrame{1}.to_chart(p);
  }

  /// Smallest m for which the landings of h_lo and h_hi bracket X.
  [[nodiscard]] std::optional<int> bracket(double h_lo, double h_hi, double X, int m_max = 400) const {
    DiskPoint a = start(h_lo);
    DiskPoint b = start(h_hi);
    const CornerFrame c1{1};
    for (int m = 1; m <= m_max; ++m) {
      a = f_(a);
      b = f_(b);
      const DiskPoint ua = c1.to_chart(a);
      const DiskPoint ub = c1.to_chart(b);
      if (!HorseshoeModel::landed(ua) && !HorseshoeModel::landed(ub)) continue;
      if (std::min(ua.x, ub.x) <= X && std::max(ua.x, ub.x) >= X) return m;
    }
    return std::nullopt;
  }

  [[nodiscard]] double solve(double h_lo, double h_hi, int m, double X) const {
    return monotone_root([&](double h) { return std::log(landing(h, m).x / X); }, h_lo, h_hi, 80);
  }

  /// Transit Jacobian in chart coordinates (corner 0 -> corner 1).
  [[nodiscard]] Mat2 chart_jacobian(double h, int m) const {
    DiskPoint p = start(h);
    Mat2 j = Mat2::identity();
    for (int s = 0; s < m; ++s) {
      const MapJet jet = f_.jet(p);
      j = jet.jacobian * j;
      p = jet.image;
    }
    const Mat2 c0 = CornerFrame{0}.chart_linear();
    const Mat2 c1 = CornerFrame{1}.chart_linear();
    return c1 * j * c0.inverse();
  }

 private:
  const PerturbedMap& f_;
};

/// Monotone piece of the lift used for the return orbit: for gbar the side
/// of a zero of cos(10 pi n^4 x) where phi > 0 (the set U_n), for g the
/// rising half-wiggle through a zero of sin.
struct LiftBranch {
  double x_lo{0.0};
  double x_hi{0.0};
  double phi_lo{0.0};  // lift range used to bracket the landing
  double phi_hi{0.0};
  int k{0};            // corner steps
  // For gbar the lift phi ~ Lambda^-T is far below the rounding error of
  // cos near its zero, so x* is taken to be the zero itself; the true
  // offset phi*/phi'(x_z) is reported separately.
  bool pinned{false};
  double anchor{0.0};
};

[[nodiscard]] inline LiftBranch lift_branch(const PerturbedMap& f, int n, int wiggle_index) {
  const WiggleRegion& r = f.region(n);
  const ScheduleEntry& e = r.entry;
  const double lam = f.params().Lambda;
  LiftBranch b;
  if (f.config().variant == Variant::kExponent) {
    // Zeros of cos(10 pi n^4 x): x = (q + 1/2) / (10 n^4); take the q-th one
    // past the cutoff ramp.
    const double n4 = 1.0 / e.ell;
    const double q0 = std::ceil(10.0 * n4 * (e.a + 1.0 / (10.0 * n4)) - 0.5);
    const double xz = (q0 + wiggle_index + 0.5) / (10.0 * n4);
    if (!(xz < e.b - 1.0 / (10.0 * n4))) throw DomainError("lift_branch: wiggle index outside the plateau");
    const double slope = -10.0 * std::numbers::pi * n4 * std::sin(10.0 * std::numbers::pi * n4 * xz);
    const double quarter = 1.0 / (20.0 * n4);
    b.x_lo = slope > 0.0 ? xz : xz - quarter;
    b.x_hi = slope > 0.0 ? xz + quarter : xz;
    b.k = e.T;
    b.pinned = true;
    b.anchor = xz;
    b.phi_lo = (5.0 / 12.0) * std::pow(lam, -static_cast<double>(e.T));
    b.phi_hi = std::pow(lam, -static_cast<double>(e.T));
    return b;
  }
  if (f.config().variant != Variant::kEntropy) throw ConfigError("lift_branch: map has no perturbation");
  const double w = e.ell / static_cast<double>(e.N);
  // sin(pi (x-a)/w) rises through 0 at x = a + 2 q w.
  const double xc = e.a + 2.0 * (1.0 + wiggle_index) * w;
  if (!(xc + 0.5 * w < e.b - w)) throw DomainError("lift_branch: wiggle index outside the plateau");
  b.x_lo = xc - 0.5 * w;
  b.x_hi = xc + 0.5 * w;
  b.k = e.T - 1;
  b.phi_lo = std::pow(lam, -static_cast<double>(e.T));
  b.phi_hi = 3.0 * std::pow(lam, -static_cast<double>(e.T));
  return b;
}

/// Finds the periodic return orbit on the given branch by backward
/// iteration x <- phi^{-1}(Lambda^-k X^{-1}(x)), which contracts because the
/// transit expands heights into landing positions.
[[nodiscard]] inline ReturnOrbit periodic_return_orbit(const PerturbedMap& f, int n, int wiggle_index = 2,
                                                       int iterations = 6) {
  const WiggleRegion& r = f.region(n);
  const LiftBranch br = lift_branch(f, n, wiggle_index);
  const double lam = f.params().Lambda;
  const double K = f.params().K;
  const TransitMap tr(f);
  const double scale_k = std::pow(lam, static_cast<double>(br.k));
  const double h_lo = br.phi_lo * scale_k;
  const double h_hi = br.phi_hi * scale_k;

  auto phi_at = [&](double x) { return f.displacement(r, DiskPoint{x, 0.0}); };
  double x = br.pinned ? br.anchor : 0.5 * (br.x_lo + br.x_hi);
  ReturnOrbit out;
  std::optional<int> m;
  for (int it = 0; it < iterations; ++it) {
    if (!m) m = tr.bracket(h_lo, h_hi, x);
    if (!m) throw NumericalError("periodic_return_orbit: no transit step count lands on the branch");
    const double h = tr.solve(h_lo, h_hi, *m, x);
    const double target = h / scale_k;
    out.h0 = h;
    if (br.pinned) break;
    x = monotone_root([&](double s) { return phi_at(s) - target; }, br.x_lo, br.x_hi, 200);
  }
  out.x_star = x;
  out.phi_star = out.h0 / scale_k;
  out.corner_steps = br.k;
  out.transit_steps = *m;
  out.landing_error = std::abs(tr.landing(out.h0, *m).x - x);

  const Mat2 dg = f.jacobian_chart(r, {x, 0.0});
  if (br.pinned) out.offset = out.phi_star / dg.c;
  const Mat2 corner = Mat2::diag(std::pow(K, -static_cast<double>(br.k)), scale_k);
  out.jacobian = tr.chart_jacobian(out.h0, *m) * (corner * dg);
  out.top_eigenvalue = detail::spectral_radius(out.jacobian);
  out.lambda_hat = std::log(out.top_eigenvalue) / static_cast<double>(out.period());
  return out;
}

/// C for which lambda_hat = (T lambda - (log n)^2 + 4 log n - C) / (T + C).
[[nodiscard]] inline double exponent_constant(double lambda_hat, int T, int n, double Lambda) {
  const double ln = std::log(static_cast<double>(n));
  return (T * std::log(Lambda) - ln * ln + 4.0 * ln - lambda_hat * T) / (1.0 + lambda_hat);
}

}  // namespace homoclinic
