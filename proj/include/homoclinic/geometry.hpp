#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace homoclinic {

/// A point (or a vector) of the plane, templated so that field code can be
/// evaluated on dual numbers.
template <typename T>
struct Point2 {
  T x{};
  T y{};
};

template <typename T>
Point2<T> operator+(const Point2<T>& a, const Point2<T>& b) { return {a.x + b.x, a.y + b.y}; }
template <typename T>
Point2<T> operator-(const Point2<T>& a, const Point2<T>& b) { return {a.x - b.x, a.y - b.y}; }
template <typename T, typename S>
Point2<T> operator*(const S& s, const Point2<T>& a) { return {s * a.x, s * a.y}; }

/// State on the disk D = closed ball of radius 2.
using DiskPoint = Point2<double>;

inline constexpr double kDiskRadius = 2.0;

[[nodiscard]] inline double norm(const DiskPoint& p) { return std::hypot(p.x, p.y); }
[[nodiscard]] inline double distance(const DiskPoint& a, const DiskPoint& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}
[[nodiscard]] inline bool in_disk(const DiskPoint& p) {
  return p.x * p.x + p.y * p.y <= kDiskRadius * kDiskRadius;
}

/// Row-major 2x2 matrix.
struct Mat2 {
  double a{1.0}, b{0.0}, c{0.0}, d{1.0};

  [[nodiscard]] static constexpr Mat2 identity() { return {}; }
  [[nodiscard]] static constexpr Mat2 diag(double p, double q) { return {p, 0.0, 0.0, q}; }
  [[nodiscard]] double det() const { return a * d - b * c; }
  [[nodiscard]] Mat2 inverse() const {
    const double k = 1.0 / det();
    return {d * k, -b * k, -c * k, a * k};
  }
};

[[nodiscard]] inline Mat2 operator*(const Mat2& m, const Mat2& n) {
  return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
          m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}
[[nodiscard]] inline DiskPoint operator*(const Mat2& m, const DiskPoint& v) {
  return {m.a * v.x + m.b * v.y, m.c * v.x + m.d * v.y};
}

/// Tangent vector attached to a base point.
struct TangentVector {
  double v1{0.0};
  double v2{0.0};
  DiskPoint base{};

  [[nodiscard]] DiskPoint vec() const { return {v1, v2}; }
  [[nodiscard]] double norm() const { return std::hypot(v1, v2); }
};

// ---------------------------------------------------------------------------
// Four-fold symmetry.  tau_0 = id, tau_1(x,y) = (y,-x), tau_2(x,y) = (-x,-y),
// tau_3(x,y) = (-y,x).  tau_i = tau_1^i; all are linear isometries.

template <typename T>
[[nodiscard]] Point2<T> rotate(int i, const Point2<T>& p) {
  switch (((i % 4) + 4) % 4) {
    case 0: return p;
    case 1: return {p.y, -p.x};
    case 2: return {-p.x, -p.y};
    default: return {-p.y, p.x};
  }
}

template <typename T>
[[nodiscard]] Point2<T> rotate_inverse(int i, const Point2<T>& p) {
  return rotate(4 - (((i % 4) + 4) % 4), p);
}

/// Matrix of tau_i (equal to its derivative).
[[nodiscard]] inline Mat2 rotation_matrix(int i) {
  const DiskPoint e1 = rotate(i, DiskPoint{1.0, 0.0});
  const DiskPoint e2 = rotate(i, DiskPoint{0.0, 1.0});
  return {e1.x, e2.x, e1.y, e2.y};
}

// ---------------------------------------------------------------------------
// Affine corners.  C0 = [-1/2,-5/12]^2; the corner chart identifies tau_i(C0)
// with [0,2]^2 via u = 24 (tau_i^{-1}(p) + (1/2,1/2)).

inline constexpr double kCornerLo = -0.5;
inline constexpr double kCornerHi = -5.0 / 12.0;
inline constexpr double kChartScale = 24.0;

struct CornerFrame {
  int index{0};

  [[nodiscard]] DiskPoint to_chart(const DiskPoint& p) const {
    const DiskPoint q = rotate_inverse(index, p);
    return {kChartScale * (q.x + 0.5), kChartScale * (q.y + 0.5)};
  }
  [[nodiscard]] DiskPoint from_chart(const DiskPoint& u) const {
    return rotate(index, DiskPoint{u.x / kChartScale - 0.5, u.y / kChartScale - 0.5});
  }
  /// Linear part of the chart (maps tangent vectors to chart tangent vectors).
  [[nodiscard]] Mat2 chart_linear() const {
    const Mat2 r = rotation_matrix(index).inverse();
    return {kChartScale * r.a, kChartScale * r.b, kChartScale * r.c, kChartScale * r.d};
  }
  /// Closed membership in tau_i(C0).
  [[nodiscard]] bool contains(const DiskPoint& p) const {
    const DiskPoint q = rotate_inverse(index, p);
    return q.x >= kCornerLo && q.x <= kCornerHi && q.y >= kCornerLo && q.y <= kCornerHi;
  }
};

/// Index of the affine corner tau_i(C0) containing p, or -1.
[[nodiscard]] inline int corner_of(const DiskPoint& p) {
  for (int i = 0; i < 4; ++i) {
    if (CornerFrame{i}.contains(p)) return i;
  }
  return -1;
}

}  // namespace homoclinic
