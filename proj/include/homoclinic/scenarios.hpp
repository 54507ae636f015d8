#pragma once

// Scenario runner: one function per scenario, each writing its data files
// and returning the list of checks with their verdicts.  The manifest is
// written last; it is the only file that carries the wall-clock time.

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "homoclinic/checks.hpp"
#include "homoclinic/config.hpp"
#include "homoclinic/io.hpp"

namespace homoclinic {

#ifndef HOMOCLINIC_VERSION
#define HOMOCLINIC_VERSION "0.0.0"
#endif

struct CheckLine {
  std::string name;
  bool pass{false};
  std::string detail;
};

struct ScenarioResult {
  std::string scenario;
  std::string config_hash;
  std::vector<CheckLine> checks;
  std::vector<std::string> files;
  double wall_seconds{0.0};

  [[nodiscard]] bool pass() const {
    for (const auto& c : checks) {
      if (!c.pass) return false;
    }
    return true;
  }
};

namespace detail {

inline Json point_json(const DiskPoint& p) { return Json::array({p.x, p.y}); }

inline std::string fmt(double v) { return format_number(v); }

/// Header lines shared by every data file.
inline Json stamp(const std::string& scenario, const std::string& hash) {
  return {{"scenario", scenario}, {"config_hash", hash}, {"version", HOMOCLINIC_VERSION}};
}

inline std::string csv_with_hash(const CsvTable& t, const std::string& hash) {
  return "# config_hash " + hash + "\n" + t.text();
}

inline std::string plot_with_hash(const PlotTable& t, const std::string& hash) {
  return "# config_hash " + hash + "\n" + t.text();
}

struct Context {
  const ExperimentConfig& cfg;
  OutputDir& out;
  std::string hash;
  int workers{1};
};

// ---------------------------------------------------------------------------

inline std::vector<CheckLine> run_verify_f0(Context& cx) {
  const Params& prm = cx.cfg.map.base;
  const auto a = affine_corner_check(prm, cx.cfg.grids.corner_grid, 1e-9, cx.cfg.tol.affine);
  const auto s = symmetry_check(prm, cx.cfg.grids.symmetry_samples, cx.cfg.seed, cx.cfg.tol.symmetry);
  const auto n = anchor_check(prm, cx.cfg.tol.anchor);
  Json j = stamp("verify-f0", cx.hash);
  j["affine_corner"] = {{"grid", a.grid}, {"max_error", a.max_error}, {"worst", point_json(a.worst)}, {"pass", a.pass}};
  j["symmetry"] = {{"samples", s.samples},
                   {"max_defect", s.max_defect},
                   {"boundary_samples", s.boundary_samples},
                   {"boundary_mismatches", s.boundary_mismatches},
                   {"pass", s.pass}};
  j["anchor"] = {{"image", point_json(n.image)}, {"error", n.error}, {"flow_error", n.flow_error}, {"pass", n.pass}};
  cx.out.write_json("verify_f0.json", j);
  return {{"affine corners", a.pass, "max error " + fmt(a.max_error)},
          {"symmetry and boundary identity", s.pass,
           "max defect " + fmt(s.max_defect) + ", boundary mismatches " + std::to_string(s.boundary_mismatches)},
          {"anchor f0(5/12,-1/2)", n.pass, "error " + fmt(n.error)}};
}

inline std::vector<CheckLine> run_transition_scan(Context& cx) {
  const ExperimentConfig& c = cx.cfg;
  const auto law = transition_law(c.map.base, c.grids.L, c.grids.transition_samples, cx.workers, c.tol.transition_r2);
  const auto con = contraction_study(c.map.base, c.grids.contraction_L, c.grids.x1,
                                     fundamental_heights(c.grids.x2_count, c.map.base.Lambda),
                                     c.tol.contraction_spread);
  CsvTable t({"L", "mean_tau", "min_tau", "max_tau"});
  PlotTable plot({"L", "mean_tau"});
  for (const auto& r : law.rows) {
    t.row(r.L, r.mean_tau, r.min_tau, r.max_tau);
    plot.row({r.L, r.mean_tau});
  }
  CsvTable ct({"L", "x1", "x2", "ratio", "tangent_ratio", "steps"});
  for (const auto& r : con.rows) ct.row(r.L, r.x1, r.x2, r.ratio, r.tangent_ratio, r.steps);
  Json j = stamp("transition-scan", cx.hash);
  j["transition"] = {{"c1", law.c1}, {"c2", law.c2}, {"r2", law.r2}, {"pass", law.pass}};
  j["contraction"] = {{"u", con.u},
                      {"spread", con.spread},
                      {"all_below_one", con.all_below_one},
                      {"pass", con.pass}};
  cx.out.write("transition.csv", csv_with_hash(t, cx.hash));
  cx.out.write("contraction.csv", csv_with_hash(ct, cx.hash));
  cx.out.write("plot_tau_vs_L.dat", plot_with_hash(plot, cx.hash));
  cx.out.write_json("transition.json", j);
  std::string u;
  for (double v : con.u) u += (u.empty() ? "" : ", ") + fmt(v);
  return {{"transition-time law", law.pass,
           "tau = " + fmt(law.c1) + " + " + fmt(law.c2) + " L, R^2 " + fmt(law.r2)},
          {"corner contraction", con.pass,
           "ratios below 1: " + std::string(con.all_below_one ? "yes" : "no") + ", u per L: " + u + ", spread " +
               fmt(con.spread)}};
}

inline std::vector<CheckLine> run_perturbation_check(Context& cx) {
  const ExperimentConfig& c = cx.cfg;
  if (c.map.variant == Variant::kNone) throw ConfigError("perturbation-check needs a perturbed variant");
  const PerturbedMap f(c.map);
  CsvTable sched({"n", "a", "b", "ell", "T", "N", "amplitude", "y_half"});
  for (const auto& r : f.regions()) {
    sched.row(r.entry.n, r.entry.a, r.entry.b, r.entry.ell, r.entry.T, r.entry.N, r.amplitude, r.y_half);
  }
  cx.out.write("schedule.csv", csv_with_hash(sched, cx.hash));

  std::vector<CheckLine> lines;
  Json j = stamp("perturbation-check", cx.hash);
  j["variant"] = to_string(c.map.variant);
  if (c.map.variant == Variant::kEntropy) {
    const int n0 = c.map.schedule.n0;
    const auto m = majder_check(f, n0, c.grids.majder_samples, c.seed);
    j["derivative_bound"] = {{"n", n0},
                             {"samples", m.samples},
                             {"max_ratio", m.max_ratio},
                             {"argmax", point_json(m.argmax)},
                             {"pass", m.pass}};
    lines.push_back({"derivative bound in R_n0", m.pass, "max ratio " + fmt(m.max_ratio)});
  }
  const auto o = cocycle_oracle(f, c.grids.oracle_seeds, c.grids.oracle_steps, c.seed, c.tol.oracle);
  j["cocycle_oracle"] = {{"seeds", o.seeds}, {"in_region", o.in_region}, {"max_rel_error", o.max_rel_error},
                         {"pass", o.pass}};
  lines.push_back({"tangent cocycle oracle", o.pass, "max relative error " + fmt(o.max_rel_error)});

  const auto trend = cr_distance_trend(f, c.grids.cr_grid);
  CsvTable tr({"n", "order", "norm"});
  for (const auto& term : trend) {
    for (std::size_t s = 0; s < term.order_norms.size(); ++s) tr.row(term.n, static_cast<int>(s), term.order_norms[s]);
  }
  cx.out.write("cr_trend.csv", csv_with_hash(tr, cx.hash));
  cx.out.write_json("perturbation.json", j);
  return lines;
}

template <typename Map>
TangentOrbit random_tangent_orbit(const Map& f, std::uint64_t seed, std::size_t k, std::int64_t steps,
                                  DiskPoint* start) {
  CounterRng rng(seed, k);
  const DiskPoint p = random_disk_point(rng);
  const double a = 2.0 * std::numbers::pi * rng.uniform();
  if (start != nullptr) *start = p;
  return iterate_tangent(f, p, {std::cos(a), std::sin(a)}, steps);
}

inline std::vector<CheckLine> run_lyapunov_scan(Context& cx) {
  const ExperimentConfig& c = cx.cfg;
  const PerturbedMap f(c.map);
  struct Row {
    DiskPoint start;
    LyapunovEstimate ly;
    DeltaFrequency df;
  };
  std::vector<Row> rows(static_cast<std::size_t>(c.grids.orbits));
  parallel_for(rows.size(), cx.workers, [&](std::size_t k) {
    DiskPoint p;
    const TangentOrbit orb = random_tangent_orbit(f, c.seed, k, c.grids.steps, &p);
    rows[k] = {p, lyapunov(orb), delta_frequency(orb)};
  });
  CsvTable t({"index", "x", "y", "lambda_hat", "liminf_proxy", "delta_frequency", "in_square"});
  double max_abs = 0.0;
  int outside = 0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const Row& r = rows[k];
    t.row(k, r.start.x, r.start.y, r.ly.lambda_hat, r.ly.liminf_proxy, r.df.frequency, in_closed_square(r.start));
    max_abs = std::max(max_abs, std::abs(r.ly.lambda_hat));
    if (std::abs(r.ly.lambda_hat) > c.tol.zero_band) ++outside;
  }
  // Histogram over [-log Lambda, log Lambda] in 40 bins.
  PlotTable hist({"bin_center", "count"});
  const double lim = c.map.base.lambda();
  std::vector<int> bins(40, 0);
  for (const Row& r : rows) {
    const double u = (r.ly.lambda_hat + lim) / (2.0 * lim);
    const int b = std::clamp(static_cast<int>(std::floor(u * 40.0)), 0, 39);
    ++bins[static_cast<std::size_t>(b)];
  }
  for (int b = 0; b < 40; ++b) hist.row({-lim + (b + 0.5) * 2.0 * lim / 40.0, static_cast<double>(bins[b])});
  cx.out.write("lyapunov.csv", csv_with_hash(t, cx.hash));
  cx.out.write("plot_lambda_hist.dat", plot_with_hash(hist, cx.hash));
  Json j = stamp("lyapunov-scan", cx.hash);
  j["orbits"] = c.grids.orbits;
  j["steps"] = c.grids.steps;
  j["max_abs_lambda_hat"] = max_abs;
  j["outside_band"] = outside;
  j["band"] = c.tol.zero_band;
  cx.out.write_json("lyapunov.json", j);
  if (c.map.variant != Variant::kNone) {
    return {{"orbits computed", true, std::to_string(rows.size()) + " orbits, max |lambda_hat| " + fmt(max_abs)}};
  }
  return {{"zero exponents of f0", outside == 0,
           std::to_string(outside) + " of " + std::to_string(rows.size()) + " orbits outside the band, max |lambda_hat| " +
               fmt(max_abs)}};
}

inline std::vector<CheckLine> run_segments(Context& cx) {
  const ExperimentConfig& c = cx.cfg;
  const PerturbedMap f(c.map);
  CsvTable t({"orbit", "segment", "corner", "t_prev", "s", "t_next", "tau", "theta", "theta_infinite", "theta_tilde",
              "x1_at_s", "special"});
  const int count = std::min(c.grids.orbits, 10);
  int no_corner = 0;  // orbits outside the square circle around without entering C
  for (int k = 0; k < count; ++k) {
    const TangentOrbit orb = random_tangent_orbit(f, c.seed, static_cast<std::size_t>(k), c.grids.steps, nullptr);
    if (std::none_of(orb.points.begin(), orb.points.end(), [](const DiskPoint& p) { return corner_of(p) >= 0; })) {
      ++no_corner;
      continue;
    }
    SegmentedOrbit seg = segment_orbit(orb);
    classify_special(seg.segments, c.map.schedule.r, c.map.base.Lambda);
    for (std::size_t i = 0; i < seg.segments.size(); ++i) {
      const auto& s = seg.segments[i];
      t.row(k, i, s.corner, s.t_prev, s.s, s.t_next, s.tau(), s.theta, s.theta_infinite, s.theta_tilde, s.x1_at_s,
            s.special);
    }
  }
  cx.out.write("segments.csv", csv_with_hash(t, cx.hash));
  const auto b = block_oracle(c.grids.block_sequences, c.grids.block_max_segments, c.seed);
  Json j = stamp("segments", cx.hash);
  j["orbits"] = count;
  j["orbits_without_corner_visits"] = no_corner;
  j["block_oracle"] = {{"sequences", b.sequences}, {"agree", b.agree}, {"ambiguous", b.ambiguous}, {"pass", b.pass}};
  cx.out.write_json("blocks.json", j);
  return {{"block decomposition oracle", b.pass,
           std::to_string(b.agree) + " of " + std::to_string(b.sequences) + " sequences agree"}};
}

inline Json study_json(const HorseshoeExponentStudy& st) {
  return {{"orbits", st.rows.size()},   {"bound", st.bound},         {"chi", st.chi},
          {"all_below", st.all_below},  {"all_visit_delta", st.all_visit_delta},
          {"blocks_pass", st.blocks_pass}, {"violated", violated_condition(st)}, {"pass", st.pass}};
}

inline CsvTable study_csv(const HorseshoeExponentStudy& st, std::uint64_t seed) {
  CsvTable t({"seed", "orbit", "lambda_hat", "delta_frequency", "margin", "segments", "special_blocks", "special_pass",
              "normal_blocks", "normal_pass", "worst_normal_ratio", "max_jump", "pass"});
  for (const auto& r : st.rows) {
    t.row(seed, r.index, r.lambda_hat, r.delta_frequency, r.margin, r.segments, r.special_blocks, r.special_pass,
          r.normal_blocks, r.normal_pass, r.worst_normal_ratio, r.max_jump, r.pass);
  }
  return t;
}

inline double worst_ratio(const HorseshoeExponentStudy& st) {
  double w = 0.0;
  for (const auto& r : st.rows) w = std::max(w, r.worst_normal_ratio);
  return w;
}

inline double max_lambda(const HorseshoeExponentStudy& st) {
  double w = -std::numeric_limits<double>::infinity();
  for (const auto& r : st.rows) w = std::max(w, r.lambda_hat);
  return w;
}

inline std::vector<CheckLine> run_exponent_bound(Context& cx) {
  const ExperimentConfig& c = cx.cfg;
  if (c.map.variant != Variant::kEntropy) throw ConfigError("exponent-bound needs the entropy variant");
  const PerturbedMap f(c.map);
  const int n = c.map.schedule.n0;
  const auto st = horseshoe_exponent_study(f, n, c.grids.horseshoe_orbits, c.grids.returns, c.seed, cx.workers,
                                           c.grids.A);
  cx.out.write("exponent_orbits.csv", csv_with_hash(study_csv(st, c.seed), cx.hash));
  Json j = stamp("exponent-bound", cx.hash);
  j["n"] = n;
  j["study"] = study_json(st);
  j["worst_normal_ratio"] = worst_ratio(st);
  j["max_lambda_hat"] = max_lambda(st);
  cx.out.write_json("exponent.json", j);
  const std::string v = violated_condition(st);
  return {{"exponent bound on horseshoe orbits", st.pass,
           "max lambda_hat " + fmt(max_lambda(st)) + " vs " + fmt(st.bound) + ", chi " + fmt(st.chi) +
               ", worst normal block ratio " + fmt(worst_ratio(st)) + (v.empty() ? "" : ", fails: " + v)}};
}

inline std::vector<CheckLine> run_entropy_scan(Context& cx) {
  const ExperimentConfig& c = cx.cfg;
  const PerturbedMap f(c.map);
  const int per_region = c.map.variant == Variant::kNone ? 0 : std::max(1, c.grids.entropy_samples / 8);
  const std::vector<DiskPoint> starts = entropy_sample_set(f, c.grids.entropy_samples, per_region, c.seed);
  const int horizon = *std::max_element(c.grids.n.begin(), c.grids.n.end());
  const std::vector<Orbit> orbs = orbits_of(f, starts, horizon, cx.workers);
  const EntropyEstimate est = entropy_estimate(orbs, c.grids.eps, c.grids.n, 1.0, cx.workers);
  CsvTable t({"eps", "n", "count", "saturated"});
  PlotTable plot({"n", "log_count"});
  for (std::size_t e = 0; e < c.grids.eps.size(); ++e) {
    plot.block("eps " + fmt(c.grids.eps[e]));
    for (std::size_t k = 0; k < c.grids.n.size(); ++k) {
      const EntropyRow& r = est.table[e * c.grids.n.size() + k];
      t.row(r.eps, r.n, r.count, r.saturated);
      plot.row({static_cast<double>(r.n), std::log(static_cast<double>(r.count))});
    }
  }
  cx.out.write("entropy.csv", csv_with_hash(t, cx.hash));
  cx.out.write("plot_entropy.dat", plot_with_hash(plot, cx.hash));
  Json j = stamp("entropy-scan", cx.hash);
  j["samples"] = starts.size();
  j["eps"] = c.grids.eps;
  j["slope"] = est.slope;
  j["slope_valid"] = est.slope_valid;
  j["monotone_in_n"] = est.monotone_in_n;
  j["monotone_in_eps"] = est.monotone_in_eps;
  cx.out.write_json("entropy.json", j);
  std::vector<CheckLine> lines{{"counts monotone in n", est.monotone_in_n, ""}};
  if (c.map.variant == Variant::kNone) {
    bool ok = true;
    std::string d;
    for (std::size_t e = 0; e < est.slope.size(); ++e) {
      ok = ok && est.slope_valid[e] && est.slope[e] <= c.tol.zero_band;
      d += (d.empty() ? "" : ", ") + std::string("slope ") + fmt(est.slope[e]) + " at eps " + fmt(c.grids.eps[e]) +
           (est.slope_valid[e] ? "" : " (saturated)");
    }
    lines.push_back({"zero growth rate of f0", ok, d});
  }
  return lines;
}

inline std::vector<CheckLine> run_horseshoe(Context& cx) {
  const ExperimentConfig& c = cx.cfg;
  if (c.map.variant != Variant::kEntropy) throw ConfigError("horseshoe needs the entropy variant");
  const PerturbedMap f(c.map);
  const int n = c.map.schedule.n0;
  const auto cc = certificate_check(f, n, c.seed, cx.workers);
  const auto& cert = cc.certificate;
  Json pairs = Json::array();
  PlotTable cross({"j", "k", "found", "steps", "sup", "slope"});
  for (const auto& p : cert.pairs) {
    pairs.push_back({{"j", p.j}, {"k", p.k}, {"found", p.found}, {"steps", p.steps}, {"sup", p.sup},
                     {"slope", p.slope}, {"samples", p.samples}, {"reason", p.reason}});
    cross.row({static_cast<double>(p.j), static_cast<double>(p.k), p.found ? 1.0 : 0.0, static_cast<double>(p.steps),
               p.sup, p.slope});
  }
  Json j = stamp("horseshoe", cx.hash);
  const Params& b = c.map.base;
  j["n"] = cert.n;
  j["N"] = cert.N;
  j["T"] = cert.T;
  j["params"] = {{"K", b.K}, {"L", b.L}, {"Lambda", b.Lambda}, {"r", c.map.schedule.r}};
  j["pairs"] = pairs;
  j["pass"] = cert.pass;
  j["bound"] = cert.bound ? Json(*cert.bound) : Json(nullptr);
  j["expected_bound"] = cc.expected_bound;
  j["return_time"] = cert.return_time;
  j["separation"] = {{"checked", cert.separation_checked},
                     {"orbits", cert.separation_orbits},
                     {"min_distance", cert.separation_min},
                     {"eps", HorseshoeModel(f, n).separation_eps()},
                     {"pass", cert.separation_pass}};
  j["control_f0_pass"] = cc.control.pass;
  cx.out.write_json("certificate_n" + std::to_string(n) + ".json", j);
  cx.out.write("plot_crossings.dat", plot_with_hash(cross, cx.hash));

  const auto he = horseshoe_entropy_check(f, n, c.grids.horizons, cx.workers, c.tol.horseshoe_rel);
  CsvTable t({"eps", "n", "count", "saturated"});
  PlotTable plot({"n", "log_count"});
  for (const auto& r : he.counts) {
    t.row(r.eps, r.n, r.count, r.saturated);
    plot.row({static_cast<double>(r.n), std::log(static_cast<double>(r.count))});
  }
  cx.out.write("horseshoe_entropy.csv", csv_with_hash(t, cx.hash));
  cx.out.write("plot_horseshoe_entropy.dat", plot_with_hash(plot, cx.hash));
  return {{"horseshoe certificate", cc.pass,
           "pairs " + std::to_string(cert.pairs.size()) + ", bound " + (cert.bound ? fmt(*cert.bound) : "none") +
               ", separation " + fmt(cert.separation_min) + ", f0 control certified: " +
               (cc.control.pass ? "yes" : "no")},
          {"horseshoe separated-set slope", he.pass,
           "slope " + fmt(he.slope) + " vs " + fmt(he.target) + " (rel " + fmt(he.rel_error) + ")" +
               (he.saturated ? ", saturated" : "")}};
}

inline std::vector<CheckLine> run_remark13(Context& cx) {
  const ExperimentConfig& c = cx.cfg;
  const auto e = exponent_gap_check(c.grids.exponent_n, c.grids.exponent_T, c.grids.compare_n, c.grids.compare_r,
                                    c.map.base, c.tol.exponent_rel, cx.workers);
  CsvTable t({"variant", "n", "T", "x_star", "phi_star", "corner_steps", "transit_steps", "landing_error", "offset",
              "top_eigenvalue", "lambda_hat", "C", "deviation"});
  for (const auto& r : e.gbar) {
    const ReturnOrbit& o = r.orbit;
    t.row(std::string("exponent"), c.grids.exponent_n, r.T, o.x_star, o.phi_star, o.corner_steps, o.transit_steps,
          o.landing_error, o.offset, o.top_eigenvalue, o.lambda_hat, r.C, r.deviation);
  }
  const ReturnOrbit& g = e.g;
  t.row(std::string("entropy"), e.g_n, c.grids.exponent_T.front(), g.x_star, g.phi_star, g.corner_steps,
        g.transit_steps, g.landing_error, g.offset, g.top_eigenvalue, g.lambda_hat,
        std::numeric_limits<double>::quiet_NaN(), (g.lambda_hat - e.lambda) / e.lambda);
  cx.out.write("return_orbits.csv", csv_with_hash(t, cx.hash));
  Json j = stamp("remark13-exponent", cx.hash);
  j["lambda"] = e.lambda;
  j["lower_bound"] = e.lower_bound;
  j["gap"] = e.gap;
  j["compare_r"] = e.g_r;
  cx.out.write_json("exponent_gap.json", j);
  std::string d;
  for (const auto& r : e.gbar) d += "T=" + std::to_string(r.T) + " " + fmt(r.orbit.lambda_hat) + ", ";
  return {{"exponent variant near lambda", e.lower_bound, d + "lambda " + fmt(e.lambda)},
          {"exponent variant above entropy variant", e.gap,
           fmt(e.gbar.front().orbit.lambda_hat) + " > " + fmt(e.g.lambda_hat)}};
}

inline Json lipschitz_json(const LipschitzStudy& s) {
  Json cases = Json::array();
  for (const auto& k : s.bilip.cases) cases.push_back({{"lip", k.lip}, {"lip_inv", k.lip_inv}, {"pairs", k.pairs}});
  return {{"mode", to_string(s.mode)},
          {"bilip", s.bilip.bilip()},
          {"lip", s.bilip.lip},
          {"lip_inv", s.bilip.lip_inv},
          {"pairs", s.bilip.pairs},
          {"cases", cases},
          {"min_increment", s.min_increment},
          {"spread", s.spread},
          {"bilip_pass", s.bilip_pass},
          {"entropy_pass", s.entropy_pass},
          {"pass", s.pass}};
}

inline std::vector<CheckLine> run_lipschitz(Context& cx) {
  const ExperimentConfig& c = cx.cfg;
  const Grids& g = c.grids;
  const auto p = patch_check(g.bilip_pairs, c.seed, g.window, c.tol.patch, cx.workers, g.disks, g.shear_lo, g.shear_hi);
  CsvTable t({"mode", "disk", "shear", "count_lo", "count_hi", "slope", "saturated"});
  for (const LipschitzStudy* s : {&p.increasing, &p.constant}) {
    for (const auto& d : s->disks) t.row(to_string(s->mode), d.disk, d.shear, d.count_lo, d.count_hi, d.slope, d.saturated);
  }
  cx.out.write("disk_entropy.csv", csv_with_hash(t, cx.hash));
  Json j = stamp("lipschitz", cx.hash);
  j["h0"] = lipschitz_json(p.increasing);
  j["hinf"] = lipschitz_json(p.constant);
  cx.out.write_json("lipschitz.json", j);
  return {{"patched map h0", p.increasing.pass,
           "bi-Lip " + fmt(p.increasing.bilip.bilip()) + ", min increment " + fmt(p.increasing.min_increment)},
          {"patched map hinf", p.constant.pass,
           "bi-Lip " + fmt(p.constant.bilip.bilip()) + ", spread " + fmt(p.constant.spread)}};
}

}  // namespace detail

using ScenarioFn = std::function<std::vector<CheckLine>(detail::Context&)>;

[[nodiscard]] inline const std::map<std::string, ScenarioFn>& scenario_table() {
  static const std::map<std::string, ScenarioFn> table{
      {"verify-f0", detail::run_verify_f0},
      {"transition-scan", detail::run_transition_scan},
      {"perturbation-check", detail::run_perturbation_check},
      {"lyapunov-scan", detail::run_lyapunov_scan},
      {"segments", detail::run_segments},
      {"exponent-bound", detail::run_exponent_bound},
      {"entropy-scan", detail::run_entropy_scan},
      {"horseshoe", detail::run_horseshoe},
      {"remark13-exponent", detail::run_remark13},
      {"lipschitz", detail::run_lipschitz},
  };
  return table;
}

/// Runs one scenario into cfg.output_dir and writes manifest.json last.
/// The config is validated before any file is created.
[[nodiscard]] inline ScenarioResult run(const std::string& scenario, const ExperimentConfig& cfg, int workers) {
  const auto& table = scenario_table();
  const auto it = table.find(scenario);
  if (it == table.end()) throw ConfigError("unknown scenario '" + scenario + "'");
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentConfig c = cfg;
  c.scenario = scenario;
  ScenarioResult res;
  res.scenario = scenario;
  res.config_hash = content_hash(to_json(c));
  OutputDir out(c.output_dir);
  // A manifest left by an earlier run would mark this one complete.
  std::error_code ec;
  std::filesystem::remove(out.root() / "manifest.json", ec);
  out.write_json("config.json", to_json(c));
  detail::Context cx{c, out, res.config_hash, std::max(1, workers)};
  res.checks = it->second(cx);
  res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  Json m;
  m["config_hash"] = res.config_hash;
  m["version"] = HOMOCLINIC_VERSION;
  m["scenario"] = scenario;
  m["wall_clock_seconds"] = res.wall_seconds;
  Json summary = Json::array();
  for (const auto& ch : res.checks) summary.push_back({{"check", ch.name}, {"pass", ch.pass}, {"detail", ch.detail}});
  m["checks"] = summary;
  m["pass"] = res.pass();
  m["files"] = out.files();
  res.files = out.files();
  out.write_json("manifest.json", m);
  return res;
}

}  // namespace homoclinic
