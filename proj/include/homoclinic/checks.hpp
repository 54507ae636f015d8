#pragma once

// Property checks at desk scale.  Each check returns the measured numbers
// together with its verdict, so that callers can print or serialize them.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "homoclinic/analysis.hpp"
#include "homoclinic/base_map.hpp"
#include "homoclinic/entropy.hpp"
#include "homoclinic/horseshoe_orbits.hpp"
#include "homoclinic/lipschitz.hpp"
#include "homoclinic/parallel.hpp"
#include "homoclinic/perturbation.hpp"
#include "homoclinic/return_orbit.hpp"
#include "homoclinic/rng.hpp"

namespace homoclinic {

/// n = 2, T = 40, r = 1 (N = 45) at K = 50, L = 20.
[[nodiscard]] inline PerturbedMapConfig surrogate_config() {
  PerturbedMapConfig c;
  c.base.K = 50.0;
  c.base.L = 20.0;
  c.schedule.n0 = 2;
  c.schedule.r = 1.0;
  c.schedule.T_explicit[2] = 40;
  c.n_max = 2;
  c.variant = Variant::kEntropy;
  return c;
}

[[nodiscard]] inline PerturbedMap unperturbed(const Params& prm) {
  PerturbedMapConfig c;
  c.base = prm;
  c.variant = Variant::kNone;
  return PerturbedMap(c);
}

/// Uniform point of D; stream k of the seed.
[[nodiscard]] inline DiskPoint random_disk_point(CounterRng& rng, double radius = kDiskRadius) {
  while (true) {
    const DiskPoint p = uniform_point(rng, -radius, radius);
    if (p.x * p.x + p.y * p.y < radius * radius) return p;
  }
}

// ---------------------------------------------------------------------------
// Base map.

struct AffineCornerCheck {
  double max_error{0.0};
  DiskPoint worst{};
  int grid{0};
  bool pass{false};
};

/// Flow to time 1 at tolerance tol against the affine formula, on a grid of
/// the closed corner square C0.
[[nodiscard]] inline AffineCornerCheck affine_corner_check(const Params& prm, int grid = 50, double tol = 1e-9,
                                                           double bound = 1e-7) {
  AffineCornerCheck out;
  out.grid = grid;
  for (int a = 0; a < grid; ++a) {
    for (int b = 0; b < grid; ++b) {
      const DiskPoint p{-0.5 + (1.0 / 12.0) * a / (grid - 1), -0.5 + (1.0 / 12.0) * b / (grid - 1)};
      const DiskPoint q = flow(p, 1.0, prm, tol);
      const DiskPoint e{(p.x + 0.5) / prm.K - 0.5, prm.Lambda * (p.y + 0.5) - 0.5};
      const double err = distance(q, e);
      if (err > out.max_error) {
        out.max_error = err;
        out.worst = p;
      }
    }
  }
  out.pass = out.max_error <= bound;
  return out;
}

struct SymmetryCheck {
  double max_defect{0.0};
  int samples{0};
  int boundary_samples{0};
  int boundary_mismatches{0};  // f0(p) != p bit for bit, or a nonzero field
  bool pass{false};
};

/// |f0(tau_i p) - tau_i f0(p)| over random points of D, and f0 = id exactly
/// on 1.9 <= |p| <= 2.
[[nodiscard]] inline SymmetryCheck symmetry_check(const Params& prm, int samples, std::uint64_t seed,
                                                  double bound = 1e-7) {
  SymmetryCheck out;
  out.samples = samples;
  out.boundary_samples = samples;
  for (int k = 0; k < samples; ++k) {
    CounterRng rng(seed, static_cast<std::uint64_t>(k));
    const DiskPoint p = random_disk_point(rng);
    const DiskPoint fp = f0(p, prm);
    for (int i = 1; i < 4; ++i) {
      out.max_defect = std::max(out.max_defect, distance(f0(rotate(i, p), prm), rotate(i, fp)));
    }
    const double rad = 1.9 + 0.1 * rng.uniform();
    const double ang = 2.0 * std::numbers::pi * rng.uniform();
    const DiskPoint b{rad * std::cos(ang), rad * std::sin(ang)};
    const DiskPoint fb = f0(b, prm);
    const FieldSample v = field(b, prm);
    if (fb.x != b.x || fb.y != b.y || v.value.x != 0.0 || v.value.y != 0.0) ++out.boundary_mismatches;
  }
  out.pass = out.max_defect <= bound && out.boundary_mismatches == 0;
  return out;
}

struct AnchorCheck {
  DiskPoint image{};
  double error{0.0};
  double flow_error{0.0};  // same point through the adaptive flow
  bool pass{false};
};

[[nodiscard]] inline AnchorCheck anchor_check(const Params& prm, double bound = 1e-6) {
  AnchorCheck out;
  const DiskPoint p{5.0 / 12.0, -0.5};
  const DiskPoint target{2.0 / 5.0, -0.5};
  out.image = f0(p, prm);
  out.error = distance(out.image, target);
  out.flow_error = distance(flow(p, 1.0, prm), target);
  out.pass = out.error <= bound && out.flow_error <= bound;
  return out;
}

struct TransitionLawRow {
  double L{0.0};
  double mean_tau{0.0};
  std::int64_t min_tau{0};
  std::int64_t max_tau{0};
};

struct TransitionLaw {
  std::vector<TransitionLawRow> rows;
  double c1{0.0};  // intercept
  double c2{0.0};  // slope in L
  double r2{0.0};
  bool pass{false};
};

/// Points of the exit domain f0(C0) \ C0 from a Halton sequence.
[[nodiscard]] inline DiskPoint exit_domain_point(std::uint64_t index, const Params& prm) {
  const DiskPoint h = halton_point(index + 1, 0.0, 1.0);
  const double u = (0.05 + 0.9 * h.x) / (12.0 * prm.K);
  const double v = 1.0 / 12.0 + (0.05 + 0.9 * h.y) * (prm.Lambda - 1.0) / 12.0;
  return {u - 0.5, v - 0.5};
}

struct LinearFit {
  double intercept{0.0};
  double slope{0.0};
  double r2{0.0};
};

[[nodiscard]] inline LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  LinearFit f;
  f.slope = ls_slope(x, y);
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
  f.intercept = my - f.slope * mx;
  double ss_res = 0.0;
  double ss_tot = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (f.intercept + f.slope * x[i]);
    ss_res += e * e;
    ss_tot += (y[i] - my) * (y[i] - my);
  }
  f.r2 = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
  return f;
}

[[nodiscard]] inline TransitionLaw transition_law(Params prm, const std::vector<double>& Ls, int samples = 8,
                                                  int workers = 1, double r2_min = 0.99) {
  TransitionLaw out;
  out.rows.resize(Ls.size());
  parallel_for(Ls.size(), workers, [&](std::size_t i) {
    Params q = prm;
    q.L = Ls[i];
    TransitionLawRow row;
    row.L = Ls[i];
    row.min_tau = std::numeric_limits<std::int64_t>::max();
    double sum = 0.0;
    for (int k = 0; k < samples; ++k) {
      const std::int64_t t = transition_time(exit_domain_point(static_cast<std::uint64_t>(k), q), q);
      sum += static_cast<double>(t);
      row.min_tau = std::min(row.min_tau, t);
      row.max_tau = std::max(row.max_tau, t);
    }
    row.mean_tau = sum / samples;
    out.rows[i] = row;
  });
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& r : out.rows) {
    xs.push_back(r.L);
    ys.push_back(r.mean_tau);
  }
  const LinearFit fit = linear_fit(xs, ys);
  out.c1 = fit.intercept;
  out.c2 = fit.slope;
  out.r2 = fit.r2;
  out.pass = out.r2 >= r2_min;
  return out;
}

struct ContractionRow {
  double L{0.0};
  double x1{0.0};
  double x2{0.0};
  double ratio{0.0};          // (f0^tau(x))_1 / x_1 in disk coordinates
  double tangent_ratio{0.0};  // d(f0^tau)_1 / dx_1 along the same orbit
  std::int64_t steps{0};
};

struct ContractionStudy {
  std::vector<ContractionRow> rows;
  std::vector<double> u;  // max tangent ratio per L
  double spread{0.0};     // (u_max - u_min) / u_max
  bool all_below_one{false};
  bool pass{false};
};

/// The transit contracts offsets from the left side by about K^-tau, far
/// below the spacing of doubles near x = -1/2, so the measured ratio mostly
/// sits at the rounding floor.  u is read from the Jacobian product instead.
/// x2 should cover a fundamental domain ]1/(12 Lambda), 1/12].
[[nodiscard]] inline ContractionStudy contraction_study(Params prm, const std::vector<double>& Ls,
                                                        const std::vector<double>& x1s,
                                                        const std::vector<double>& x2s, double spread_max = 0.05) {
  ContractionStudy out;
  out.all_below_one = true;
  for (double L : Ls) {
    prm.L = L;
    double u = 0.0;
    for (double x1 : x1s) {
      for (double x2 : x2s) {
        const DiskPoint p{x1 - 0.5, x2 - 0.5};
        const ContractionCheck c = check_contraction(p, prm);
        DiskPoint q = p;
        Mat2 prod = Mat2::identity();
        for (std::int64_t s = 0; s < c.steps; ++s) {
          const MapJet j = f0_jet(q, prm);
          prod = j.jacobian * prod;
          q = j.image;
        }
        out.rows.push_back({L, x1, x2, c.ratio, prod.a, c.steps});
        out.all_below_one = out.all_below_one && c.pass && prod.a < 1.0;
        u = std::max(u, prod.a);
      }
    }
    out.u.push_back(u);
  }
  const auto [lo, hi] = std::minmax_element(out.u.begin(), out.u.end());
  out.spread = *hi > 0.0 ? (*hi - *lo) / *hi : 0.0;
  out.pass = out.all_below_one && out.spread <= spread_max;
  return out;
}

/// m heights evenly spaced over ]1/(12 Lambda), 1/12], ending at 1/12.
[[nodiscard]] inline std::vector<double> fundamental_heights(int m, double Lambda = kLambda) {
  std::vector<double> out;
  const double lo = 1.0 / (12.0 * Lambda);
  for (int k = 1; k <= m; ++k) out.push_back(lo + (1.0 / 12.0 - lo) * k / m);
  return out;
}

struct ZeroEntropyOrbit {
  DiskPoint start{};
  DiskPoint end{};
  double lambda_hat{0.0};
  bool in_square{false};  // start inside the closed square [-1/2,1/2]^2
};

struct ZeroEntropyCheck {
  std::vector<ZeroEntropyOrbit> orbits;
  double max_abs{0.0};
  int outside_band{0};         // orbits with |lambda_hat| > band
  int outside_band_square{0};  // ... among those started in the square
  std::vector<EntropyRow> counts;
  double slope{0.0};
  bool slope_valid{false};
  bool lyapunov_pass{false};
  bool slope_pass{false};
  bool pass{false};
};

/// Halton points of [-1/2,1/2]^2 followed by per_region random points in
/// each wiggle box of each corner.
[[nodiscard]] inline std::vector<DiskPoint> entropy_sample_set(const PerturbedMap& f, int grid_points, int per_region,
                                                               std::uint64_t seed) {
  std::vector<DiskPoint> out;
  for (int i = 1; i <= grid_points; ++i) out.push_back(halton_point(static_cast<std::uint64_t>(i), -0.5, 0.5));
  for (const WiggleRegion& r : f.regions()) {
    for (int corner = 0; corner < 4; ++corner) {
      CounterRng rng(seed, (static_cast<std::uint64_t>(r.entry.n) << 8) + static_cast<std::uint64_t>(corner));
      for (int k = 0; k < per_region; ++k) {
        const DiskPoint u{rng.uniform(r.x_lo, r.x_hi), rng.uniform(-r.y_half, r.y_half)};
        out.push_back(CornerFrame{corner}.from_chart(u));
      }
    }
  }
  return out;
}

[[nodiscard]] inline bool in_closed_square(const DiskPoint& p) { return std::abs(p.x) <= 0.5 && std::abs(p.y) <= 0.5; }

/// Finite-time exponents of random f0 orbits of D, and the separated-set
/// growth rate of f0 at resolution eps over Halton points of the square.
[[nodiscard]] inline ZeroEntropyCheck zero_entropy_check(const Params& prm, int orbits, std::int64_t steps,
                                                         std::uint64_t seed, int entropy_samples, double eps,
                                                         const std::vector<int>& n_grid, double band = 0.02,
                                                         int workers = 1) {
  ZeroEntropyCheck out;
  const BaseMap f{prm};
  out.orbits.resize(static_cast<std::size_t>(orbits));
  parallel_for(out.orbits.size(), workers, [&](std::size_t k) {
    CounterRng rng(seed, k);
    const DiskPoint p = random_disk_point(rng);
    const double a = 2.0 * std::numbers::pi * rng.uniform();
    const TangentOrbit orb = iterate_tangent(f, p, {std::cos(a), std::sin(a)}, steps);
    out.orbits[k] = {p, orb.points.back(), lyapunov(orb).lambda_hat, in_closed_square(p)};
  });
  for (const auto& o : out.orbits) {
    out.max_abs = std::max(out.max_abs, std::abs(o.lambda_hat));
    if (std::abs(o.lambda_hat) > band) {
      ++out.outside_band;
      if (o.in_square) ++out.outside_band_square;
    }
  }
  out.lyapunov_pass = out.outside_band == 0;

  const std::vector<DiskPoint> starts = entropy_sample_set(unperturbed(prm), entropy_samples, 0, seed);
  const int horizon = *std::max_element(n_grid.begin(), n_grid.end());
  const std::vector<Orbit> orbs = orbits_of(f, starts, horizon, workers);
  const EntropyEstimate est = entropy_estimate(orbs, {eps}, n_grid, 1.0, workers);
  out.counts = est.table;
  out.slope = est.slope.front();
  out.slope_valid = est.slope_valid.front();
  out.slope_pass = out.slope_valid && out.slope <= band;
  out.pass = out.lyapunov_pass && out.slope_pass;
  return out;
}

// ---------------------------------------------------------------------------
// Perturbation and tangent cocycle.

/// Uniform samples of the support box of R_n in chart coordinates.
[[nodiscard]] inline MajderReport majder_check(const PerturbedMap& f, int n, int samples, std::uint64_t seed) {
  const WiggleRegion& r = f.region(n);
  std::vector<std::pair<int, DiskPoint>> pts;
  pts.reserve(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    CounterRng rng(seed, static_cast<std::uint64_t>(k));
    const double x = rng.uniform(r.x_lo, r.x_hi);
    const double y = rng.uniform(-r.y_half, r.y_half);
    pts.push_back({n, {x, y}});
  }
  return check_majder(f, pts);
}

struct CocycleOracle {
  double max_rel_error{0.0};
  int seeds{0};
  int in_region{0};  // seeds started in a wiggle box
  bool pass{false};
};

/// Renormalized log growth against the plain product of Jacobians.  Half of
/// the seeds start in the wiggle boxes, the others anywhere in D.  The error
/// is taken relative to max(1, |direct|).
[[nodiscard]] inline CocycleOracle cocycle_oracle(const PerturbedMap& f, int seeds, int steps, std::uint64_t seed,
                                                  double bound = 1e-8) {
  CocycleOracle out;
  out.seeds = seeds;
  for (int k = 0; k < seeds; ++k) {
    CounterRng rng(seed, static_cast<std::uint64_t>(k));
    DiskPoint p;
    if (k % 2 == 0 && !f.regions().empty()) {
      const WiggleRegion& r = f.regions()[rng.below(f.regions().size())];
      const DiskPoint u{rng.uniform(r.x_lo, r.x_hi), rng.uniform(-r.y_half, r.y_half)};
      p = CornerFrame{static_cast<int>(rng.below(4))}.from_chart(u);
      ++out.in_region;
    } else {
      p = random_disk_point(rng);
    }
    const double a = 2.0 * std::numbers::pi * rng.uniform();
    const DiskPoint v{std::cos(a), std::sin(a)};
    const double renorm = iterate_tangent(f, p, v, steps).log_growth();
    const double direct = direct_log_growth(f, p, v, steps);
    out.max_rel_error = std::max(out.max_rel_error, std::abs(renorm - direct) / std::max(1.0, std::abs(direct)));
  }
  out.pass = out.max_rel_error <= bound;
  return out;
}

// ---------------------------------------------------------------------------
// Horseshoe.

/// Strips 1..N-1 split into four bands; one pair per band pair plus one
/// diagonal pair j = k per band.
[[nodiscard]] inline std::vector<std::pair<int, int>> stratified_pairs(std::int64_t N, std::uint64_t seed) {
  const int strips = static_cast<int>(N - 1);
  const int bands = std::min(4, strips);
  auto band_pick = [&](CounterRng& rng, int b) {
    const int lo = 1 + b * strips / bands;
    const int hi = (b + 1) * strips / bands;  // inclusive
    return lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
  };
  std::vector<std::pair<int, int>> out;
  CounterRng rng(seed, 0);
  for (int a = 0; a < bands; ++a) {
    for (int b = 0; b < bands; ++b) out.emplace_back(band_pick(rng, a), band_pick(rng, b));
  }
  for (int a = 0; a < bands; ++a) {
    const int j = band_pick(rng, a);
    out.emplace_back(j, j);
  }
  return out;
}

struct CertificateCheck {
  HorseshoeCertificate certificate;
  HorseshoeCertificate control;  // same pairs under f0
  double expected_bound{0.0};
  bool bound_exact{false};
  bool pass{false};
};

[[nodiscard]] inline CertificateCheck certificate_check(const PerturbedMap& f, int n, std::uint64_t seed,
                                                        int workers = 1) {
  CertificateCheck out;
  const HorseshoeModel m(f, n);
  const ScheduleEntry& e = m.region().entry;
  const auto pairs = stratified_pairs(e.N, seed);
  out.certificate = horseshoe_certificate(m, pairs, true, workers);
  const PerturbedMap base = unperturbed(f.params());
  const HorseshoeModel control(f, n, 0, &base);
  out.control = horseshoe_certificate(control, pairs, false, workers);
  out.expected_bound = std::log(static_cast<double>(e.N - 1)) / static_cast<double>(e.T);
  out.bound_exact = out.certificate.bound.has_value() && *out.certificate.bound == out.expected_bound;
  out.pass = out.certificate.pass && out.bound_exact && out.certificate.separation_pass && !out.control.pass;
  return out;
}

struct HorseshoeEntropyCheck {
  std::vector<EntropyRow> counts;
  std::int64_t samples{0};
  double eps{0.0};
  double slope{0.0};
  double target{0.0};  // log(N-1)/T
  double rel_error{0.0};
  bool saturated{false};
  bool pass{false};
};

/// Separated-set growth over the itinerary points (j1, j2) of all strips,
/// at eps = ell/(2N) in chart units, between the first and last horizon.
[[nodiscard]] inline HorseshoeEntropyCheck horseshoe_entropy_check(const PerturbedMap& f, int n,
                                                                   const std::vector<int>& n_grid, int workers = 1,
                                                                   double rel_tol = 0.15) {
  HorseshoeEntropyCheck out;
  const HorseshoeModel m(f, n);
  const ScheduleEntry& e = m.region().entry;
  std::vector<int> js(static_cast<std::size_t>(e.N - 1));
  std::iota(js.begin(), js.end(), 1);
  std::vector<DiskPoint> starts;
  for (double x : itinerary_points(m, js, js, 0.5, workers)) {
    if (!std::isnan(x)) starts.push_back(m.start(x));
  }
  out.samples = static_cast<std::int64_t>(starts.size());
  out.eps = m.separation_eps();
  const int horizon = *std::max_element(n_grid.begin(), n_grid.end());
  const std::vector<Orbit> orbs = orbits_of(m.map(), starts, horizon, workers);
  out.counts.resize(n_grid.size());
  parallel_for(n_grid.size(), workers, [&](std::size_t i) {
    const SeparatedResult r = separated_count(orbs, out.eps, n_grid[i], kChartScale);
    out.counts[i] = {out.eps, n_grid[i], r.count, r.saturated};
  });
  const EntropyRow& a = out.counts.front();
  const EntropyRow& b = out.counts.back();
  out.slope = (std::log(static_cast<double>(b.count)) - std::log(static_cast<double>(a.count))) / (b.n - a.n);
  out.target = std::log(static_cast<double>(e.N - 1)) / static_cast<double>(e.T);
  out.rel_error = std::abs(out.slope - out.target) / out.target;
  out.saturated = std::any_of(out.counts.begin(), out.counts.end(), [](const EntropyRow& r) { return r.saturated; });
  out.pass = !out.saturated && out.rel_error <= rel_tol;
  return out;
}

/// Which growth condition failed first: normal blocks (ratio above 1/e),
/// special blocks (over budget), Delta visits, or the exponent margin.
[[nodiscard]] inline std::string violated_condition(const HorseshoeExponentStudy& st) {
  for (const auto& row : st.rows) {
    if (row.normal_pass != row.normal_blocks) return "normal block growth";
  }
  for (const auto& row : st.rows) {
    if (row.special_pass != row.special_blocks) return "special block growth";
  }
  if (!st.all_visit_delta) return "Delta visits";
  if (!st.all_below) return "exponent margin";
  return "";
}

// ---------------------------------------------------------------------------
// Block decomposition oracle.

struct BlockOracle {
  int sequences{0};
  int agree{0};
  int ambiguous{0};  // brute force found more than one maximal chain
  bool pass{false};
};

[[nodiscard]] inline BlockOracle block_oracle(int sequences, int max_segments, std::uint64_t seed) {
  BlockOracle out;
  out.sequences = sequences;
  for (int k = 0; k < sequences; ++k) {
    CounterRng rng(seed, static_cast<std::uint64_t>(k));
    const int len = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_segments)));
    std::vector<bool> flags(static_cast<std::size_t>(len));
    for (std::size_t i = 0; i < flags.size(); ++i) flags[i] = rng.below(2) == 1;
    const int n1 = static_cast<int>(rng.below(static_cast<std::uint64_t>(len + 1)));
    const BlockDecomposition g = block_decompose(flags, n1, len);
    const auto all = block_decompose_bruteforce(flags, n1, len);
    if (all.size() > 1) ++out.ambiguous;
    if (all.size() == 1 && all.front() == g) ++out.agree;
  }
  out.pass = out.agree == out.sequences;
  return out;
}

// ---------------------------------------------------------------------------
// Return orbits of the exponent variant.

[[nodiscard]] inline PerturbedMapConfig exponent_variant_config(int n, int T, const Params& base = {}) {
  PerturbedMapConfig c;
  c.base = base;
  c.variant = Variant::kExponent;
  c.schedule.n0 = n;
  c.schedule.T_explicit[n] = T;
  c.n_max = n;
  return c;
}

[[nodiscard]] inline PerturbedMapConfig entropy_variant_config(int n, int T, double r, const Params& base = {}) {
  PerturbedMapConfig c;
  c.base = base;
  c.variant = Variant::kEntropy;
  c.schedule.n0 = n;
  c.schedule.r = r;
  c.schedule.T_explicit[n] = T;
  c.n_max = n;
  return c;
}

struct ReturnOrbitRow {
  int T{0};
  ReturnOrbit orbit;
  double C{0.0};          // measured constant
  double deviation{0.0};  // (lambda_hat - lambda) / lambda
};

struct ExponentGapCheck {
  std::vector<ReturnOrbitRow> gbar;
  ReturnOrbit g;  // entropy variant at the first T
  int g_n{0};
  double g_r{0.0};
  double lambda{0.0};
  bool lower_bound{false};  // every gbar row has lambda_hat >= (1 - rel) lambda
  bool gap{false};          // gbar exceeds g at the first T
  bool pass{false};
};

[[nodiscard]] inline ExponentGapCheck exponent_gap_check(int n, const std::vector<int>& Ts, int g_n, double g_r,
                                                         const Params& base = {}, double rel = 0.10, int workers = 1) {
  ExponentGapCheck out;
  out.lambda = base.lambda();
  out.g_n = g_n;
  out.g_r = g_r;
  out.gbar.resize(Ts.size());
  parallel_for(Ts.size() + 1, workers, [&](std::size_t i) {
    if (i == Ts.size()) {
      const PerturbedMap f(entropy_variant_config(g_n, Ts.front(), g_r, base));
      out.g = periodic_return_orbit(f, g_n);
      return;
    }
    const PerturbedMap f(exponent_variant_config(n, Ts[i], base));
    ReturnOrbitRow row;
    row.T = Ts[i];
    row.orbit = periodic_return_orbit(f, n);
    row.C = exponent_constant(row.orbit.lambda_hat, Ts[i], n, base.Lambda);
    row.deviation = (row.orbit.lambda_hat - out.lambda) / out.lambda;
    out.gbar[i] = row;
  });
  out.lower_bound = std::all_of(out.gbar.begin(), out.gbar.end(),
                                [&](const ReturnOrbitRow& r) { return r.orbit.lambda_hat >= (1.0 - rel) * out.lambda; });
  out.gap = out.gbar.front().orbit.lambda_hat > out.g.lambda_hat;
  out.pass = out.lower_bound && out.gap;
  return out;
}

// ---------------------------------------------------------------------------
// Patched maps.

struct PatchCheck {
  LipschitzStudy increasing;
  LipschitzStudy constant;
  bool pass{false};
};

[[nodiscard]] inline PatchCheck patch_check(std::int64_t pairs, std::uint64_t seed, const EntropyWindow& w = {},
                                            double tol = 0.03, int workers = 1, int disks = 4, double c_lo = 0.8,
                                            double c_hi = 1.5) {
  PatchCheck out;
  out.increasing = lipschitz_study(make_patched_map(PatchMode::kIncreasing, disks, c_lo, c_hi), PatchMode::kIncreasing,
                                   pairs, seed, w, tol, workers);
  out.constant = lipschitz_study(make_patched_map(PatchMode::kConstant, disks, c_lo, c_hi), PatchMode::kConstant, pairs,
                                 seed, w, tol, workers);
  out.pass = out.increasing.pass && out.constant.pass;
  return out;
}

}  // namespace homoclinic
