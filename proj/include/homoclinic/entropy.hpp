#pragma once

// Separated sets, Bowen distances and horseshoe certificates.
//
// Greedy separated sets only give lower bounds on r_f(eps, n).  The horseshoe
// certificate follows orbits of flat graphs over the strips I_j of a wiggle
// region through one excursion around the square and tests that the image
// contains a graph over every target strip I_k.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "homoclinic/analysis.hpp"
#include "homoclinic/base_map.hpp"
#include "homoclinic/errors.hpp"
#include "homoclinic/geometry.hpp"
#include "homoclinic/parallel.hpp"
#include "homoclinic/perturbation.hpp"
#include "homoclinic/rng.hpp"

namespace homoclinic {

using Orbit = std::vector<DiskPoint>;

template <typename Map>
[[nodiscard]] Orbit orbit_of(const Map& f, DiskPoint p, int n) {
  Orbit o;
  o.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    o.push_back(p);
    if (k + 1 < n) p = f(p);
  }
  return o;
}

template <typename Map>
[[nodiscard]] std::vector<Orbit> orbits_of(const Map& f, const std::vector<DiskPoint>& samples, int n, int workers = 1) {
  std::vector<Orbit> out(samples.size());
  parallel_for(samples.size(), workers, [&](std::size_t i) { out[i] = orbit_of(f, samples[i], n); });
  return out;
}

/// max_{0<=k<n} scale * |f^k p - f^k q|.
template <typename Map>
[[nodiscard]] double bowen_distance(const Map& f, DiskPoint p, DiskPoint q, int n, double scale = 1.0) {
  if (n < 1) throw DomainError("bowen_distance: n must be >= 1");
  double d = 0.0;
  for (int k = 0; k < n; ++k) {
    d = std::max(d, scale * distance(p, q));
    if (k + 1 < n) {
      p = f(p);
      q = f(q);
    }
  }
  return d;
}

[[nodiscard]] inline bool bowen_separated(const Orbit& a, const Orbit& b, int n, double eps, double scale) {
  const double lim = eps / scale;
  const double lim2 = lim * lim;
  for (int k = 0; k < n; ++k) {
    const double dx = a[static_cast<std::size_t>(k)].x - b[static_cast<std::size_t>(k)].x;
    const double dy = a[static_cast<std::size_t>(k)].y - b[static_cast<std::size_t>(k)].y;
    if (dx * dx + dy * dy >= lim2) return true;
  }
  return false;
}

struct SeparatedResult {
  std::int64_t count{0};
  bool saturated{false};
  std::vector<std::size_t> retained;
};

/// Greedy (eps, n)-separated subset of precomputed orbits, in sample order.
[[nodiscard]] inline SeparatedResult separated_count(const std::vector<Orbit>& orbits, double eps, int n,
                                                     double scale = 1.0) {
  if (!(eps > 0.0) || n < 1) throw DomainError("separated_count: need eps > 0 and n >= 1");
  SeparatedResult res;
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    if (static_cast<int>(orbits[i].size()) < n) throw DomainError("separated_count: orbit shorter than n");
    bool ok = true;
    // Most recent retained orbits are the likeliest to be close.
    for (auto it = res.retained.rbegin(); it != res.retained.rend(); ++it) {
      if (!bowen_separated(orbits[i], orbits[*it], n, eps, scale)) {
        ok = false;
        break;
      }
    }
    if (ok) res.retained.push_back(i);
  }
  res.count = static_cast<std::int64_t>(res.retained.size());
  res.saturated = res.count == static_cast<std::int64_t>(orbits.size());
  return res;
}

/// Re-checks every retained pair (soundness of a greedy result).
[[nodiscard]] inline bool verify_separated(const std::vector<Orbit>& orbits, const SeparatedResult& r, double eps, int n,
                                           double scale = 1.0) {
  for (std::size_t a = 0; a < r.retained.size(); ++a) {
    for (std::size_t b = a + 1; b < r.retained.size(); ++b) {
      if (!bowen_separated(orbits[r.retained[a]], orbits[r.retained[b]], n, eps, scale)) return false;
    }
  }
  return true;
}

struct EntropyRow {
  double eps{0.0};
  int n{0};
  std::int64_t count{0};
  bool saturated{false};
};

struct EntropyEstimate {
  std::vector<EntropyRow> table;
  std::vector<double> eps;
  std::vector<double> slope;  // least-squares slope of log count vs n, per eps
  std::vector<bool> slope_valid;
  bool monotone_in_n{true};
  bool monotone_in_eps{true};
};

[[nodiscard]] inline double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx == 0.0 ? 0.0 : sxy / sxx;
}

[[nodiscard]] inline EntropyEstimate entropy_estimate(const std::vector<Orbit>& orbits, const std::vector<double>& eps_grid,
                                                      const std::vector<int>& n_grid, double scale = 1.0,
                                                      int workers = 1) {
  if (eps_grid.empty() || n_grid.empty()) throw DomainError("entropy_estimate: empty grid");
  EntropyEstimate est;
  est.eps = eps_grid;
  est.table.resize(eps_grid.size() * n_grid.size());
  parallel_for(est.table.size(), workers, [&](std::size_t idx) {
    const std::size_t ei = idx / n_grid.size();
    const std::size_t ni = idx % n_grid.size();
    const SeparatedResult r = separated_count(orbits, eps_grid[ei], n_grid[ni], scale);
    est.table[idx] = {eps_grid[ei], n_grid[ni], r.count, r.saturated};
  });
  for (std::size_t ei = 0; ei < eps_grid.size(); ++ei) {
    std::vector<double> xs;
    std::vector<double> ys;
    bool valid = true;
    for (std::size_t ni = 0; ni < n_grid.size(); ++ni) {
      const EntropyRow& row = est.table[ei * n_grid.size() + ni];
      xs.push_back(row.n);
      ys.push_back(std::log(static_cast<double>(row.count)));
      valid = valid && !row.saturated;
      if (ni > 0 && row.count < est.table[ei * n_grid.size() + ni - 1].count) est.monotone_in_n = false;
    }
    est.slope.push_back(ls_slope(xs, ys));
    est.slope_valid.push_back(valid);
  }
  for (std::size_t ni = 0; ni < n_grid.size(); ++ni) {
    for (std::size_t ei = 0; ei + 1 < eps_grid.size(); ++ei) {
      const auto& a = est.table[ei * n_grid.size() + ni];
      const auto& b = est.table[(ei + 1) * n_grid.size() + ni];
      if ((a.eps < b.eps && a.count < b.count) || (a.eps > b.eps && a.count > b.count)) est.monotone_in_eps = false;
    }
  }
  return est;
}

// ---------------------------------------------------------------------------
// Graph-crossing horseshoe.

struct GraphCurve {
  int j{0};
  std::vector<DiskPoint> points;  // chart coordinates, x strictly increasing
  double sup_bound{0.0};          // Lambda^{-T-1}/10
  double slope_bound{0.0};        // K^{-T}

  [[nodiscard]] double sup() const {
    double s = 0.0;
    for (const DiskPoint& p : points) s = std::max(s, std::abs(p.y));
    return s;
  }
  [[nodiscard]] double max_slope() const {
    double s = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) {
      s = std::max(s, std::abs((points[i].y - points[i - 1].y) / (points[i].x - points[i - 1].x)));
    }
    return s;
  }
  [[nodiscard]] bool valid() const {
    for (std::size_t i = 1; i < points.size(); ++i) {
      if (!(points[i].x > points[i - 1].x)) return false;
    }
    return points.size() >= 2 && sup() < sup_bound && max_slope() < slope_bound;
  }
};

struct CrossResult {
  int j{0};
  int k{0};
  bool found{false};
  int steps{0};  // s such that the s-th image meets I_k
  int corner_from{0};
  int corner_to{1};
  double sup{0.0};
  double slope{0.0};
  std::size_t samples{0};
  std::string reason;
  std::vector<DiskPoint> witness;  // image polyline over I_k, corner_to chart
};

struct HorseshoeCertificate {
  int n{0};
  std::int64_t N{0};
  int T{0};
  std::vector<CrossResult> pairs;
  bool pass{false};
  std::optional<double> bound;  // log(N-1)/T, only when every pair crossed
  int return_time{0};           // most common s among the crossings
  bool separation_checked{false};
  bool separation_pass{false};
  double separation_min{0.0};   // min pairwise Bowen distance (chart units)
  std::int64_t separation_orbits{0};
};

struct CrossOptions {
  int extra_steps{400};     // search s in [T, T + extra_steps]
  int resample{256};        // initial samples over the witness sub-arc
  int bisection_iters{64};
};

/// Root of a monotone function on [lo, hi] with a sign change (Illinois
/// variant of regula falsi, falling back to bisection when it stalls).
template <typename Fn>
[[nodiscard]] double monotone_root(Fn&& fn, double lo, double hi, int max_evals = 64) {
  double flo = fn(lo);
  double fhi = fn(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  int side = 0;
  for (int it = 0; it < max_evals; ++it) {
    double mid = (lo * fhi - hi * flo) / (fhi - flo);
    if (!(mid > lo && mid < hi) || it % 8 == 7) mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = fn(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
      if (side == -1) fhi *= 0.5;
      side = -1;
    } else {
      hi = mid;
      fhi = fm;
      if (side == 1) flo *= 0.5;
      side = 1;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(hi)) break;
  }
  return std::abs(flo) < std::abs(fhi) ? lo : hi;
}

/// One excursion of the perturbed map from the strips of region n in corner
/// `from` to the next corner.  Chart distances are 24 x Euclidean.
class HorseshoeModel {
 public:
  /// Geometry (strips, bounds) comes from the region n of `f`; orbits are
  /// computed with `dynamics` when given (used for the pure-f0 control).
  HorseshoeModel(const PerturbedMap& f, int n, int from = 0, const PerturbedMap* dynamics = nullptr)
      : f_(dynamics != nullptr ? *dynamics : f), r_(f.region(n)), from_(from), to_((from + 1) % 4) {
    const Params& prm = f.params();
    sup_bound_ = std::pow(prm.Lambda, -static_cast<double>(r_.entry.T) - 1.0) / 10.0;
    slope_bound_ = std::pow(prm.K, -static_cast<double>(r_.entry.T));
  }

  [[nodiscard]] const WiggleRegion& region() const { return r_; }
  [[nodiscard]] const PerturbedMap& map() const { return f_; }
  [[nodiscard]] double sup_bound() const { return sup_bound_; }
  [[nodiscard]] double slope_bound() const { return slope_bound_; }
  [[nodiscard]] int from() const { return from_; }
  [[nodiscard]] int to() const { return to_; }

  /// I_j = [a + (j - 1/4) ell/N, a + (j + 1/4) ell/N].
  [[nodiscard]] std::pair<double, double> strip(int j) const {
    const double w = r_.entry.ell / static_cast<double>(r_.entry.N);
    return {r_.entry.a + (j - 0.25) * w, r_.entry.a + (j + 0.25) * w};
  }
  [[nodiscard]] double separation_eps() const { return r_.entry.ell / (2.0 * static_cast<double>(r_.entry.N)); }

  [[nodiscard]] DiskPoint start(double x, double y = 0.0) const { return CornerFrame{from_}.from_chart({x, y}); }

  /// Target-chart positions of f^s(start(x, y)) for s = 1..s_max.
  [[nodiscard]] std::vector<DiskPoint> track(double x, double y, int s_max) const {
    std::vector<DiskPoint> out;
    out.reserve(static_cast<std::size_t>(s_max));
    DiskPoint p = start(x, y);
    const CornerFrame target{to_};
    for (int s = 1; s <= s_max; ++s) {
      p = f_(p);
      out.push_back(target.to_chart(p));
    }
    return out;
  }

  [[nodiscard]] DiskPoint image(double x, double y, int s) const { return track(x, y, s).back(); }

  /// A landing in the target chart counts when it is inside the corner
  /// square [0,2]^2 near its stable side.
  [[nodiscard]] static bool landed(const DiskPoint& u) { return u.x >= 0.0 && u.x <= 2.0 && std::abs(u.y) <= 1.0; }

  /// First step s >= T at which the images of (x_lo, y_lo) and (x_hi, y_hi)
  /// bracket [X_lo, X_hi] in the target chart, or nothing up to s_max.
  [[nodiscard]] std::optional<int> bracketing_step(double x_lo, double y_lo, double x_hi, double y_hi, double X_lo,
                                                   double X_hi, int s_max) const {
    DiskPoint pa = start(x_lo, y_lo);
    DiskPoint pb = start(x_hi, y_hi);
    const CornerFrame target{to_};
    for (int s = 1; s <= s_max; ++s) {
      pa = f_(pa);
      pb = f_(pb);
      if (s < r_.entry.T) continue;
      const DiskPoint a = target.to_chart(pa);
      const DiskPoint b = target.to_chart(pb);
      if (!landed(a) && !landed(b)) continue;
      if (std::min(a.x, b.x) <= X_lo && std::max(a.x, b.x) >= X_hi) return s;
    }
    return std::nullopt;
  }

  /// x in [x_lo, x_hi] with image(x, y, s).x = X, assuming monotonicity.
  [[nodiscard]] double solve(double x_lo, double x_hi, double y, int s, double X, int iters = 64) const {
    // Landing positions vary exponentially along the strip; the logarithm
    // is close to linear, which suits regula falsi.
    return monotone_root([&](double x) { return std::log(image(x, y, s).x / X); }, x_lo, x_hi, iters);
  }

 private:
  const PerturbedMap& f_;
  WiggleRegion r_;
  int from_;
  int to_;
  double sup_bound_{0.0};
  double slope_bound_{0.0};
};

/// Flat graph (phi = 0) or, with seed != 0, a random member of G_j within
/// half of both bounds.
[[nodiscard]] inline GraphCurve make_graph(const HorseshoeModel& m, int j, std::uint64_t seed = 0, int samples = 256) {
  const std::int64_t N = m.region().entry.N;
  if (j < 1 || j > N - 1) throw DomainError("make_graph: j must lie in 1..N-1");
  if (samples < 2) throw DomainError("make_graph: need at least 2 samples");
  GraphCurve g;
  g.j = j;
  g.sup_bound = m.sup_bound();
  g.slope_bound = m.slope_bound();
  const auto [lo, hi] = m.strip(j);
  double amp = 0.0;
  double freq = 0.0;
  double phase = 0.0;
  if (seed != 0) {
    CounterRng rng(seed, static_cast<std::uint64_t>(j));
    freq = 2.0 * std::numbers::pi * (1.0 + rng.below(4)) / (hi - lo);
    phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
    amp = 0.5 * std::min(g.sup_bound, g.slope_bound / freq) * rng.uniform(0.1, 1.0);
  }
  for (int i = 0; i < samples; ++i) {
    const double x = lo + (hi - lo) * i / (samples - 1);
    g.points.push_back({x, amp * std::sin(freq * (x - lo) + phase)});
  }
  return g;
}

namespace detail {

inline double interp_y(const std::vector<DiskPoint>& pts, double x) {
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].x >= x) {
      const double t = (x - pts[i - 1].x) / (pts[i].x - pts[i - 1].x);
      return pts[i - 1].y + t * (pts[i].y - pts[i - 1].y);
    }
  }
  return pts.back().y;
}

}  // namespace detail

/// Does the s-step image of graph Gamma over I_j contain a graph over I_k
/// satisfying the bounds of G_k?
[[nodiscard]] inline CrossResult cross_check(const HorseshoeModel& m, const GraphCurve& gamma, int k,
                                             const CrossOptions& opt = {}) {
  CrossResult res;
  res.j = gamma.j;
  res.k = k;
  res.corner_from = m.from();
  res.corner_to = m.to();
  const std::int64_t N = m.region().entry.N;
  if (k < 1 || k > N - 1) throw DomainError("cross_check: k must lie in 1..N-1");
  if (!gamma.valid()) {
    res.reason = "input graph is not in G_j";
    return res;
  }
  const auto [Xlo, Xhi] = m.strip(k);
  const double x_lo = gamma.points.front().x;
  const double x_hi = gamma.points.back().x;
  auto y_at = [&](double x) { return detail::interp_y(gamma.points, x); };
  // Bracketing along the curve: images of the end points.
  const int s_max = m.region().entry.T + opt.extra_steps;
  const std::optional<int> s = m.bracketing_step(x_lo, y_at(x_lo), x_hi, y_at(x_hi), Xlo, Xhi, s_max);
  if (!s) {
    res.reason = "no step in [T, T+extra] whose image brackets I_k";
    return res;
  }
  res.steps = *s;
  auto img = [&](double x) { return m.image(x, y_at(x), *s); };
  // Bisection for the parameters whose images hit the ends of I_k.
  auto solve = [&](double X) {
    return monotone_root([&](double x) { return std::log(img(x).x / X); }, x_lo, x_hi, opt.bisection_iters);
  };
  double pa = solve(Xlo);
  double pb = solve(Xhi);
  if (pa > pb) std::swap(pa, pb);
  // Widen slightly so that the resampled image covers I_k with margin.
  const double pad = 0.02 * (pb - pa);
  pa = std::max(x_lo, pa - pad);
  pb = std::min(x_hi, pb + pad);

  struct Sample {
    double t;
    DiskPoint u;
  };
  std::vector<Sample> pts;
  for (int i = 0; i < opt.resample; ++i) {
    const double t = pa + (pb - pa) * i / (opt.resample - 1);
    pts.push_back({t, img(t)});
  }
  const double gap = m.sup_bound() / 10.0;  // Lambda^{-T-1}/100
  for (int pass = 0; pass < 20; ++pass) {
    std::vector<Sample> refined;
    bool inserted = false;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      refined.push_back(pts[i]);
      if (i + 1 < pts.size() && distance(pts[i].u, pts[i + 1].u) > gap) {
        const double t = 0.5 * (pts[i].t + pts[i + 1].t);
        if (t > pts[i].t && t < pts[i + 1].t) {
          refined.push_back({t, img(t)});
          inserted = true;
        }
      }
    }
    pts.swap(refined);
    if (!inserted) break;
  }
  res.samples = pts.size();

  // Orient so that image x increases along the parameter.
  if (pts.front().u.x > pts.back().u.x) std::reverse(pts.begin(), pts.end());
  std::vector<DiskPoint> arc;
  for (const Sample& q : pts) arc.push_back(q.u);
  for (std::size_t i = 1; i < arc.size(); ++i) {
    if (!(arc[i].x > arc[i - 1].x)) {
      res.reason = "image is not a graph (x not strictly increasing)";
      return res;
    }
  }
  if (!(arc.front().x <= Xlo && arc.back().x >= Xhi)) {
    res.reason = "image does not cover I_k";
    return res;
  }
  // Restriction to I_k (with the end points interpolated onto the strip ends).
  std::vector<DiskPoint> w;
  w.push_back({Xlo, detail::interp_y(arc, Xlo)});
  for (const DiskPoint& q : arc) {
    if (q.x > Xlo && q.x < Xhi) w.push_back(q);
  }
  w.push_back({Xhi, detail::interp_y(arc, Xhi)});
  GraphCurve wit;
  wit.j = k;
  wit.points = w;
  wit.sup_bound = m.sup_bound();
  wit.slope_bound = m.slope_bound();
  res.sup = wit.sup();
  res.slope = wit.max_slope();
  res.witness = std::move(w);
  if (!wit.valid()) {
    res.reason = "image graph violates the G_k bounds";
    return res;
  }
  res.found = true;
  return res;
}

// ---------------------------------------------------------------------------
// Itineraries: points of the horseshoe with prescribed strip sequences.

/// Return map x -> landing chart x after one excursion, on branch j: solves
/// for x in I_j whose image is X.  Returns the parameter and the step count.
struct BranchSolution {
  double x{0.0};
  int steps{0};
};

[[nodiscard]] inline std::optional<BranchSolution> solve_branch(const HorseshoeModel& m, int j, double X,
                                                                const CrossOptions& opt = {}) {
  const auto [lo, hi] = m.strip(j);
  const auto s = m.bracketing_step(lo, 0.0, hi, 0.0, X, X, m.region().entry.T + opt.extra_steps);
  if (!s) return std::nullopt;
  return BranchSolution{m.solve(lo, hi, 0.0, *s, X, opt.bisection_iters), *s};
}

/// Start points in the source chart (y = 0) realizing the itineraries
/// (j1, j2): f^{s}(x) lands at a point of I_{j2} (at relative position
/// `frac` in the strip) in the next corner.
[[nodiscard]] inline std::vector<double> itinerary_points(const HorseshoeModel& m, const std::vector<int>& j1s,
                                                          const std::vector<int>& j2s, double frac, int workers = 1) {
  std::vector<double> out(j1s.size() * j2s.size(), std::numeric_limits<double>::quiet_NaN());
  parallel_for(out.size(), workers, [&](std::size_t idx) {
    const int j1 = j1s[idx / j2s.size()];
    const int j2 = j2s[idx % j2s.size()];
    const auto [lo, hi] = m.strip(j2);
    const auto sol = solve_branch(m, j1, lo + frac * (hi - lo));
    if (sol) out[idx] = sol->x;
  });
  return out;
}

/// Aggregates crossings; the bound is emitted only when every pair crossed.
/// With check_separation, orbits with itineraries (j1, j2) over all strips
/// are built and their pairwise Bowen distance over 2T steps is compared with
/// ell/(2N) in chart units.
[[nodiscard]] inline HorseshoeCertificate horseshoe_certificate(const HorseshoeModel& m,
                                                                const std::vector<std::pair<int, int>>& pairs,
                                                                bool check_separation, int workers = 1,
                                                                const CrossOptions& opt = {}) {
  HorseshoeCertificate cert;
  const ScheduleEntry& e = m.region().entry;
  cert.n = e.n;
  cert.N = e.N;
  cert.T = e.T;
  cert.pairs.resize(pairs.size());
  parallel_for(pairs.size(), workers, [&](std::size_t i) {
    cert.pairs[i] = cross_check(m, make_graph(m, pairs[i].first), pairs[i].second, opt);
  });
  cert.pass = !pairs.empty() && std::all_of(cert.pairs.begin(), cert.pairs.end(), [](const CrossResult& c) { return c.found; });
  if (!cert.pass) return cert;
  cert.bound = std::log(static_cast<double>(e.N - 1)) / static_cast<double>(e.T);
  {
    std::vector<int> steps;
    for (const CrossResult& c : cert.pairs) steps.push_back(c.steps);
    std::sort(steps.begin(), steps.end());
    int best = steps.front();
    int best_count = 0;
    for (std::size_t i = 0; i < steps.size();) {
      std::size_t j = i;
      while (j < steps.size() && steps[j] == steps[i]) ++j;
      if (static_cast<int>(j - i) > best_count) {
        best_count = static_cast<int>(j - i);
        best = steps[i];
      }
      i = j;
    }
    cert.return_time = best;
  }
  if (check_separation) {
    std::vector<int> js(static_cast<std::size_t>(e.N - 1));
    std::iota(js.begin(), js.end(), 1);
    const std::vector<double> xs = itinerary_points(m, js, js, 0.5, workers);
    std::vector<DiskPoint> starts;
    for (double x : xs) {
      if (std::isnan(x)) {
        cert.separation_checked = true;
        cert.separation_pass = false;
        return cert;
      }
      starts.push_back(m.start(x));
    }
    const int horizon = 2 * e.T;
    const std::vector<Orbit> orbs = orbits_of(m.map(), starts, horizon, workers);
    const double scale = kChartScale;
    std::vector<double> row_min(orbs.size(), std::numeric_limits<double>::infinity());
    parallel_for(orbs.size(), workers, [&](std::size_t a) {
      for (std::size_t b = a + 1; b < orbs.size(); ++b) {
        double d2 = 0.0;
        for (int t = 0; t < horizon; ++t) {
          const DiskPoint& u = orbs[a][static_cast<std::size_t>(t)];
          const DiskPoint& v = orbs[b][static_cast<std::size_t>(t)];
          d2 = std::max(d2, (u.x - v.x) * (u.x - v.x) + (u.y - v.y) * (u.y - v.y));
        }
        row_min[a] = std::min(row_min[a], scale * std::sqrt(d2));
      }
    });
    cert.separation_checked = true;
    cert.separation_min = *std::min_element(row_min.begin(), row_min.end());
    cert.separation_pass = cert.separation_min >= m.separation_eps();
    cert.separation_orbits = static_cast<std::int64_t>(starts.size());
  }
  return cert;
}

}  // namespace homoclinic
