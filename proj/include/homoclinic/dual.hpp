#pragma once

// Forward-mode dual numbers with two tangent slots.  Evaluating a planar map
// on Dual seeds yields the value and the full 2x2 Jacobian in one pass, which
// for an explicit Runge-Kutta step is the same as integrating the
// variational equation with the same scheme.

#include <array>
#include <cmath>

namespace homoclinic {

struct Dual {
  double v{0.0};
  std::array<double, 2> d{0.0, 0.0};

  constexpr Dual() = default;
  constexpr Dual(double value) : v(value) {}  // NOLINT(implicit)
  constexpr Dual(double value, double d0, double d1) : v(value), d{d0, d1} {}

  Dual& operator+=(const Dual& o) {
    v += o.v;
    d[0] += o.d[0];
    d[1] += o.d[1];
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    v -= o.v;
    d[0] -= o.d[0];
    d[1] -= o.d[1];
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    d[0] = d[0] * o.v + v * o.d[0];
    d[1] = d[1] * o.v + v * o.d[1];
    v *= o.v;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    const double inv = 1.0 / o.v;
    const double q = v * inv;
    d[0] = (d[0] - q * o.d[0]) * inv;
    d[1] = (d[1] - q * o.d[1]) * inv;
    v = q;
    return *this;
  }
};

inline Dual operator-(const Dual& a) { return {-a.v, -a.d[0], -a.d[1]}; }
inline Dual operator+(Dual a, const Dual& b) { return a += b; }
inline Dual operator-(Dual a, const Dual& b) { return a -= b; }
inline Dual operator*(Dual a, const Dual& b) { return a *= b; }
inline Dual operator/(Dual a, const Dual& b) { return a /= b; }
inline Dual operator+(Dual a, double b) { a.v += b; return a; }
inline Dual operator+(double a, Dual b) { b.v += a; return b; }
inline Dual operator-(Dual a, double b) { a.v -= b; return a; }
inline Dual operator-(double a, const Dual& b) { return {a - b.v, -b.d[0], -b.d[1]}; }
inline Dual operator*(Dual a, double b) { return {a.v * b, a.d[0] * b, a.d[1] * b}; }
inline Dual operator*(double a, const Dual& b) { return {a * b.v, a * b.d[0], a * b.d[1]}; }
inline Dual operator/(const Dual& a, double b) { return a * (1.0 / b); }
inline Dual operator/(double a, const Dual& b) { return Dual(a) / b; }

inline Dual exp(const Dual& a) {
  const double e = std::exp(a.v);
  return {e, e * a.d[0], e * a.d[1]};
}
inline Dual sin(const Dual& a) {
  const double c = std::cos(a.v);
  return {std::sin(a.v), c * a.d[0], c * a.d[1]};
}
inline Dual cos(const Dual& a) {
  const double s = -std::sin(a.v);
  return {std::cos(a.v), s * a.d[0], s * a.d[1]};
}
inline Dual abs(const Dual& a) { return a.v < 0.0 ? -a : a; }

[[nodiscard]] constexpr double value(double x) { return x; }
[[nodiscard]] constexpr double value(const Dual& x) { return x.v; }

}  // namespace homoclinic
