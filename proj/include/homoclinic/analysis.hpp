#pragma once

// Tangent cocycle along orbits: renormalized log-growth, finite-time
// exponents, visits to the fundamental domain Delta, affine segments,
// special times and the normal/special block decomposition.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "homoclinic/base_map.hpp"
#include "homoclinic/errors.hpp"
#include "homoclinic/geometry.hpp"

namespace homoclinic {

/// Orbit with a renormalized tangent vector.  log_norm[t] is log |v(t)|
/// relative to |v(0)|; directions[t] has unit norm.
struct TangentOrbit {
  std::vector<DiskPoint> points;
  std::vector<DiskPoint> directions;
  std::vector<double> log_norm;

  [[nodiscard]] std::int64_t steps() const { return static_cast<std::int64_t>(points.size()) - 1; }
  [[nodiscard]] double log_growth() const { return log_norm.back(); }

  void start(const DiskPoint& p, const DiskPoint& v) {
    const double nv = std::hypot(v.x, v.y);
    if (!(nv > 0.0) || !std::isfinite(nv)) throw DomainError("tangent orbit: v must be a nonzero finite vector");
    points.assign(1, p);
    directions.assign(1, DiskPoint{v.x / nv, v.y / nv});
    log_norm.assign(1, 0.0);
  }

  /// Appends one step given the image point and the Jacobian at the last point.
  void push(const DiskPoint& image, const Mat2& jacobian) {
    const DiskPoint w = jacobian * directions.back();
    const double nw = std::hypot(w.x, w.y);
    if (!(nw > 0.0) || !std::isfinite(nw)) throw NumericalError("tangent orbit: derivative numerically zero");
    points.push_back(image);
    directions.push_back({w.x / nw, w.y / nw});
    log_norm.push_back(log_norm.back() + std::log(nw));
  }
};

template <typename Map>
[[nodiscard]] TangentOrbit iterate_tangent(const Map& f, const DiskPoint& p, const DiskPoint& v, std::int64_t steps) {
  if (steps < 1) throw DomainError("iterate_tangent: steps must be >= 1");
  TangentOrbit orb;
  orb.points.reserve(static_cast<std::size_t>(steps) + 1);
  orb.directions.reserve(static_cast<std::size_t>(steps) + 1);
  orb.log_norm.reserve(static_cast<std::size_t>(steps) + 1);
  orb.start(p, v);
  for (std::int64_t k = 0; k < steps; ++k) {
    const MapJet j = f.jet(orb.points.back());
    if (!in_disk(j.image)) throw NumericalError("iterate_tangent: orbit left D");
    orb.push(j.image, j.jacobian);
  }
  return orb;
}

/// Direct product of Jacobians along the first `steps` points (no
/// renormalization); used as an oracle at short horizons.
template <typename Map>
[[nodiscard]] double direct_log_growth(const Map& f, const DiskPoint& p, const DiskPoint& v, int steps) {
  DiskPoint x = p;
  Mat2 prod = Mat2::identity();
  for (int k = 0; k < steps; ++k) {
    const MapJet j = f.jet(x);
    prod = j.jacobian * prod;
    x = j.image;
  }
  const DiskPoint w = prod * v;
  return std::log(std::hypot(w.x, w.y) / std::hypot(v.x, v.y));
}

struct LyapunovEstimate {
  double lambda_hat{0.0};
  double liminf_proxy{0.0};  // min over 10 equal windows of their averages
};

[[nodiscard]] inline LyapunovEstimate lyapunov(const TangentOrbit& orb) {
  const std::int64_t n = orb.steps();
  if (n < 1) throw DomainError("lyapunov: empty orbit");
  LyapunovEstimate e;
  e.lambda_hat = orb.log_growth() / static_cast<double>(n);
  const std::int64_t w = std::max<std::int64_t>(1, n / 10);
  e.liminf_proxy = std::numeric_limits<double>::infinity();
  for (std::int64_t s = 0; s + w <= n; s += w) {
    const double avg = (orb.log_norm[static_cast<std::size_t>(s + w)] - orb.log_norm[static_cast<std::size_t>(s)]) /
                       static_cast<double>(w);
    e.liminf_proxy = std::min(e.liminf_proxy, avg);
  }
  return e;
}

// ---------------------------------------------------------------------------
// Delta = union of tau_i(]2/5, 5/12] x [-1/2, -1/10]).

[[nodiscard]] inline bool in_delta(const DiskPoint& p) {
  for (int i = 0; i < 4; ++i) {
    const DiskPoint q = rotate_inverse(i, p);
    if (q.x > 2.0 / 5.0 && q.x <= 5.0 / 12.0 && q.y >= -0.5 && q.y <= -0.1) return true;
  }
  return false;
}

struct DeltaFrequency {
  double frequency{0.0};
  double liminf_proxy{0.0};
  std::int64_t visits{0};
};

/// Visits among times 0..steps-1.
[[nodiscard]] inline DeltaFrequency delta_frequency(const TangentOrbit& orb) {
  const std::int64_t n = orb.steps();
  DeltaFrequency d;
  if (n < 1) return d;
  std::vector<std::int64_t> cum(static_cast<std::size_t>(n) + 1, 0);
  for (std::int64_t k = 0; k < n; ++k) {
    cum[static_cast<std::size_t>(k) + 1] = cum[static_cast<std::size_t>(k)] + (in_delta(orb.points[static_cast<std::size_t>(k)]) ? 1 : 0);
  }
  d.visits = cum.back();
  d.frequency = static_cast<double>(d.visits) / static_cast<double>(n);
  const std::int64_t w = std::max<std::int64_t>(1, n / 10);
  d.liminf_proxy = 1.0;
  for (std::int64_t s = 0; s + w <= n; s += w) {
    d.liminf_proxy = std::min(d.liminf_proxy, static_cast<double>(cum[static_cast<std::size_t>(s + w)] - cum[static_cast<std::size_t>(s)]) /
                                                  static_cast<double>(w));
  }
  return d;
}

// ---------------------------------------------------------------------------
// Affine segments S_n = [t_{n-1}, s_n]: maximal runs of the orbit in the
// corners C = union tau_i(C0).

struct AffineSegmentRecord {
  std::int64_t t_prev{0};  // t_{n-1}
  std::int64_t s{0};       // s_n
  std::int64_t t_next{0};  // t_n
  int corner{0};           // host corner of the segment
  double theta{0.0};       // |tan| at t_n, in the chart of the corner hit at t_n
  bool theta_infinite{false};
  double theta_tilde{0.0};  // 1 / |tan| at s_n
  double x1_at_s{0.0};      // local first coordinate at s_n
  bool special{false};

  [[nodiscard]] std::int64_t tau() const { return t_next - t_prev; }
  [[nodiscard]] std::int64_t tau_prime() const { return s - t_prev; }
  [[nodiscard]] std::int64_t d() const { return t_next - s; }
};

namespace detail {

/// |tan| of the angle between v and tau_i'(e1).
inline std::pair<double, bool> abs_tan(int corner, const DiskPoint& v) {
  const DiskPoint w = rotate_inverse(corner, v);
  if (w.x == 0.0) return {std::numeric_limits<double>::infinity(), true};
  return {std::abs(w.y / w.x), false};
}

}  // namespace detail

struct SegmentedOrbit {
  std::int64_t anchor{0};  // first index k with x_k in C and x_{k-1} not in C
  std::vector<AffineSegmentRecord> segments;
  bool degenerate{false};  // orbit never leaves C after the anchor
};

/// Splits an orbit into affine segments.  Only complete segments (with a
/// following entry time t_n inside the horizon) are returned.
[[nodiscard]] inline SegmentedOrbit segment_orbit(const TangentOrbit& orb) {
  const std::int64_t n = static_cast<std::int64_t>(orb.points.size());
  std::vector<int> corner(static_cast<std::size_t>(n));
  for (std::int64_t k = 0; k < n; ++k) corner[static_cast<std::size_t>(k)] = corner_of(orb.points[static_cast<std::size_t>(k)]);
  auto in_c = [&](std::int64_t k) { return corner[static_cast<std::size_t>(k)] >= 0; };

  SegmentedOrbit out;
  std::int64_t k = 1;
  while (k < n && !(in_c(k) && !in_c(k - 1))) ++k;
  if (k >= n) {
    if (n > 0 && in_c(0)) {
      out.degenerate = true;
      return out;
    }
    throw NumericalError("segment_orbit: orbit never enters the corners");
  }
  out.anchor = k;
  std::int64_t t_prev = k;
  while (true) {
    std::int64_t s = t_prev;
    while (s + 1 < n && in_c(s + 1)) ++s;
    std::int64_t t_next = s + 1;
    while (t_next < n && !in_c(t_next)) ++t_next;
    if (t_next >= n) {
      if (out.segments.empty() && s + 1 >= n) out.degenerate = true;
      break;
    }
    AffineSegmentRecord rec;
    rec.t_prev = t_prev;
    rec.s = s;
    rec.t_next = t_next;
    rec.corner = corner[static_cast<std::size_t>(t_prev)];
    const auto [th, inf] = detail::abs_tan(corner[static_cast<std::size_t>(t_next)], orb.directions[static_cast<std::size_t>(t_next)]);
    rec.theta = th;
    rec.theta_infinite = inf;
    const int cs = corner[static_cast<std::size_t>(s)];
    const auto [ts, ts_inf] = detail::abs_tan(cs, orb.directions[static_cast<std::size_t>(s)]);
    rec.theta_tilde = ts_inf ? 0.0 : (ts == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / ts);
    rec.x1_at_s = rotate_inverse(cs, orb.points[static_cast<std::size_t>(s)]).x + 0.5;
    out.segments.push_back(rec);
    t_prev = t_next;
  }
  return out;
}

/// Special flag of t_n: theta_n > Lambda^{-(1-1/r) tau_{n+1}}.  The last
/// record has no successor and stays unflagged.
inline void classify_special(std::vector<AffineSegmentRecord>& segs, double r, double Lambda) {
  for (std::size_t i = 0; i < segs.size(); ++i) {
    if (i + 1 == segs.size()) {
      segs[i].special = false;
      break;
    }
    const double thr = std::pow(Lambda, -(1.0 - 1.0 / r) * static_cast<double>(segs[i + 1].tau()));
    segs[i].special = segs[i].theta_infinite || segs[i].theta > thr;
  }
}

// ---------------------------------------------------------------------------
// Block decomposition of [t_{N1}, t_N[.  Times are indexed by segment index:
// index j stands for t_j, and special[j] is the flag of t_j.

struct Block {
  int start{0};  // index j of t_j
  int end{0};    // exclusive end index
  bool special{false};

  bool operator==(const Block&) const = default;
};

struct BlockDecomposition {
  std::vector<Block> blocks;  // ordered left to right
  int residual{0};            // j_I, either N1 or N1+1

  bool operator==(const BlockDecomposition&) const = default;
};

/// Greedy right-to-left partition starting from a_1 = t_N.
[[nodiscard]] inline BlockDecomposition block_decompose(const std::vector<bool>& special, int n1, int n) {
  if (n1 < 0 || n < n1 || n >= static_cast<int>(special.size()) + 1) throw DomainError("block_decompose: bad indices");
  BlockDecomposition out;
  int m = n;
  while (true) {
    if (m - 1 >= n1 && !special[static_cast<std::size_t>(m - 1)]) {
      out.blocks.push_back({m - 1, m, false});
      m -= 1;
    } else if (m - 2 >= n1 && special[static_cast<std::size_t>(m - 1)]) {
      out.blocks.push_back({m - 2, m, true});
      m -= 2;
    } else {
      break;
    }
  }
  std::reverse(out.blocks.begin(), out.blocks.end());
  out.residual = m;
  return out;
}

/// Exhaustive oracle: all right-to-left chains of legal blocks that cannot be
/// extended further.  Block legality is fixed by the flags, so the result has
/// exactly one element when the decomposition is well defined.
[[nodiscard]] inline std::vector<BlockDecomposition> block_decompose_bruteforce(const std::vector<bool>& special, int n1,
                                                                                int n) {
  std::vector<BlockDecomposition> found;
  std::vector<Block> chain;
  auto rec = [&](auto&& self, int m) -> void {
    bool extended = false;
    for (int len : {1, 2}) {
      const int start = m - len;
      if (start < n1) continue;
      const bool mid_special = special[static_cast<std::size_t>(m - 1)];
      const bool legal = (len == 1) ? !mid_special : mid_special;
      if (!legal) continue;
      extended = true;
      chain.push_back({start, m, len == 2});
      self(self, start);
      chain.pop_back();
    }
    if (!extended) {
      BlockDecomposition d;
      d.blocks.assign(chain.rbegin(), chain.rend());
      d.residual = m;
      found.push_back(std::move(d));
    }
  };
  rec(rec, n);
  return found;
}

// ---------------------------------------------------------------------------
// Growth checks along blocks.

struct BlockCheck {
  Block block{};
  std::int64_t t_start{0};
  std::int64_t t_end{0};
  double log_ratio{0.0};   // log |v(end)| - log |v(start)| - (t_end - t_start) log Lambda / r
  double ratio{0.0};       // exp(log_ratio)
  double budget{0.0};      // 1/A (normal) or 1/A^2 (special)
  bool pass{false};
};

struct GrowthReport {
  std::vector<BlockCheck> blocks;
  int normal_blocks{0};
  int normal_pass{0};
  int special_blocks{0};
  int special_pass{0};
  double corner_balance_c{-std::numeric_limits<double>::infinity()};  // max over n of log_K(K^-tau'_n Lambda^tau'_{n+1})
  double angle_ratio_lo{std::numeric_limits<double>::infinity()};   // min/max of log_K(theta / (theta~ + x1))
  double angle_ratio_hi{-std::numeric_limits<double>::infinity()};
  double aggregate_log_c{0.0};  // log C(x,v) from the residual prefix
  bool aggregate_pass{false};   // |v_N| <= C Lambda^{t_N/r} / A^N
};

[[nodiscard]] inline GrowthReport check_block_growth(const TangentOrbit& orb, const std::vector<AffineSegmentRecord>& segs,
                                                      const BlockDecomposition& dec, double A, double r,
                                                      const Params& prm) {
  GrowthReport rep;
  if (segs.empty()) return rep;
  const double lam = std::log(prm.Lambda);
  const double logA = std::log(A);
  const double logK = std::log(prm.K);
  // t_j for j = 0..segs.size(): t_0 = segs[0].t_prev, t_j = segs[j-1].t_next.
  auto t_of = [&](int j) -> std::int64_t { return j == 0 ? segs[0].t_prev : segs[static_cast<std::size_t>(j) - 1].t_next; };
  auto lv = [&](std::int64_t t) { return orb.log_norm[static_cast<std::size_t>(t)]; };

  for (const Block& b : dec.blocks) {
    BlockCheck c;
    c.block = b;
    c.t_start = t_of(b.start);
    c.t_end = t_of(b.end);
    c.log_ratio = lv(c.t_end) - lv(c.t_start) - static_cast<double>(c.t_end - c.t_start) * lam / r;
    c.ratio = std::exp(c.log_ratio);
    c.budget = b.special ? 1.0 / (A * A) : 1.0 / A;
    c.pass = c.log_ratio <= (b.special ? -2.0 * logA : -logA);
    if (b.special) {
      ++rep.special_blocks;
      rep.special_pass += c.pass ? 1 : 0;
    } else {
      ++rep.normal_blocks;
      rep.normal_pass += c.pass ? 1 : 0;
    }
    rep.blocks.push_back(c);
  }

  for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
    const double c = (-static_cast<double>(segs[i].tau_prime()) * logK + static_cast<double>(segs[i + 1].tau_prime()) * lam) / logK;
    rep.corner_balance_c = std::max(rep.corner_balance_c, c);
  }
  for (const AffineSegmentRecord& s : segs) {
    if (s.theta_infinite || !std::isfinite(s.theta_tilde) || s.theta <= 0.0) continue;
    const double den = s.theta_tilde + s.x1_at_s;
    if (!(den > 0.0)) continue;
    const double e = std::log(s.theta / den) / logK;
    rep.angle_ratio_lo = std::min(rep.angle_ratio_lo, e);
    rep.angle_ratio_hi = std::max(rep.angle_ratio_hi, e);
  }

  const int n_total = static_cast<int>(segs.size());
  const std::int64_t t_res = t_of(dec.residual);
  const std::int64_t t_n = t_of(n_total);
  rep.aggregate_log_c = lv(t_res) - static_cast<double>(t_res) * lam / r + dec.residual * logA;
  const double rhs = rep.aggregate_log_c + static_cast<double>(t_n) * lam / r - n_total * logA;
  rep.aggregate_pass = lv(t_n) <= rhs + 1e-9;
  return rep;
}

struct ExponentReport {
  double lambda_hat{0.0};
  double liminf_proxy{0.0};
  double delta_frequency{0.0};
  double chi{0.0};
  double bound{0.0};  // log Lambda / r - chi * frequency
  bool pass{false};
};

[[nodiscard]] inline ExponentReport exponent_bound_check(const TangentOrbit& orb, double chi, double r, double Lambda) {
  ExponentReport rep;
  const LyapunovEstimate ly = lyapunov(orb);
  const DeltaFrequency df = delta_frequency(orb);
  rep.lambda_hat = ly.lambda_hat;
  rep.liminf_proxy = ly.liminf_proxy;
  rep.delta_frequency = df.frequency;
  rep.chi = chi;
  rep.bound = std::log(Lambda) / r - chi * df.frequency;
  rep.pass = rep.lambda_hat < rep.bound;
  return rep;
}

template <typename Map>
[[nodiscard]] ExponentReport exponent_bound_check(const Map& f, const DiskPoint& p, const DiskPoint& v, std::int64_t steps,
                                                  double chi, double r) {
  const DiskPoint q = p;
  if (!(std::abs(q.x) < 0.5 && std::abs(q.y) < 0.5) || (std::abs(q.x) <= 1.0 / 6.0 && std::abs(q.y) <= 1.0 / 6.0)) {
    throw DomainError("exponent_bound_check: p must lie in ]-1/2,1/2[^2 minus Q");
  }
  return exponent_bound_check(iterate_tangent(f, p, v, steps), chi, r, f.params().Lambda);
}

}  // namespace homoclinic
