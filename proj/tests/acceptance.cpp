// Acceptance run: one PASS/FAIL line per criterion, at full size.
//   acceptance [--workers N] [--scratch DIR] [--strict]
// Exit status is 0 once every criterion has been evaluated; with --strict any
// FAIL gives 1.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "homoclinic/checks.hpp"
#include "homoclinic/horseshoe_orbits.hpp"
#include "homoclinic/scenarios.hpp"

using namespace homoclinic;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 20240521;

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

struct Ledger {
  int failed{0};

  template <typename Fn>
  void criterion(int id, const std::string& name, Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
      std::tie(pass, detail) = fn();
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!pass) ++failed;
    std::printf("%s %2d %s: %s [%.1fs]\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str(), s);
    std::fflush(stdout);
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

/// Runs a scenario twice with different worker counts; returns the number of
/// data files compared and the first differing one.
std::pair<int, std::string> compare_runs(const std::string& scenario, ExperimentConfig cfg, const fs::path& base,
                                         int workers_a, int workers_b) {
  const fs::path a = base / (scenario + "_w" + std::to_string(workers_a));
  const fs::path b = base / (scenario + "_w" + std::to_string(workers_b));
  fs::remove_all(a);
  fs::remove_all(b);
  cfg.output_dir = a.string();
  const ScenarioResult ra = run(scenario, cfg, workers_a);
  cfg.output_dir = b.string();
  const ScenarioResult rb = run(scenario, cfg, workers_b);
  if (ra.files != rb.files) return {0, "file lists differ"};
  int n = 0;
  for (const auto& name : ra.files) {
    if (slurp(a / name) != slurp(b / name)) return {n, name};
    ++n;
  }
  return {n, ""};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int workers = 1;
  std::string scratch = "acceptance_runs";
  bool strict = false;
  app.add_option("--workers", workers)->check(CLI::PositiveNumber);
  app.add_option("--scratch", scratch);
  app.add_flag("--strict", strict);
  CLI11_PARSE(app, argc, argv);

  const Params prm;  // K = 50, L = 20
  const PerturbedMap f(surrogate_config());
  Ledger led;

  led.criterion(1, "affine corners", [&] {
    const auto r = affine_corner_check(prm, 50, 1e-9, 1e-7);
    return std::pair{r.pass, fmt("max error %.3g on a %dx%d grid (bound 1e-7)", r.max_error, r.grid, r.grid)};
  });

  led.criterion(2, "symmetry and boundary identity", [&] {
    const auto r = symmetry_check(prm, 1000, kSeed, 1e-7);
    return std::pair{r.pass, fmt("defect %.3g over %d points, %d/%d boundary mismatches", r.max_defect, r.samples,
                                 r.boundary_mismatches, r.boundary_samples)};
  });

  led.criterion(3, "fundamental-domain anchor", [&] {
    const auto r = anchor_check(prm, 1e-6);
    return std::pair{r.pass, fmt("map error %.3g, flow error %.3g", r.error, r.flow_error)};
  });

  led.criterion(4, "transition-time law", [&] {
    const auto r = transition_law(prm, {10, 20, 40, 80}, 8, workers, 0.99);
    std::string taus;
    for (const auto& row : r.rows) taus += fmt(" %g", row.mean_tau);
    return std::pair{r.pass, fmt("tau =%s, c1 %.4g, c2 %.4g, R2 %.5f", taus.c_str(), r.c1, r.c2, r.r2)};
  });

  led.criterion(5, "corner contraction", [&] {
    const auto r = contraction_study(prm, {20, 40}, {1e-1, 1e-2, 1e-3, 1e-4, 1e-5}, fundamental_heights(64), 0.05);
    return std::pair{r.pass, fmt("all ratios < 1: %s, u = %.4g, %.4g, L spread %.3f (max 0.05)",
                                 r.all_below_one ? "yes" : "no", r.u[0], r.u[1], r.spread)};
  });

  led.criterion(6, "zero-entropy base", [&] {
    const auto r = zero_entropy_check(prm, 100, 10000, kSeed, 1000, 0.05, {50, 100, 200}, 0.02, workers);
    return std::pair{r.pass, fmt("max |lambda| %.3g, %d/100 outside 0.02 (%d started in the square); slope %.3g%s",
                                 r.max_abs, r.outside_band, r.outside_band_square, r.slope,
                                 r.slope_valid ? "" : " (saturated)")};
  });

  led.criterion(7, "derivative bound", [&] {
    const auto r = majder_check(f, 2, 100000, kSeed);
    return std::pair{r.pass, fmt("max ratio %.4g over 1e5 samples (bound 1)", r.max_ratio)};
  });

  led.criterion(8, "tangent-cocycle oracle", [&] {
    const auto r = cocycle_oracle(f, 100, 20, kSeed, 1e-8);
    return std::pair{r.pass, fmt("max rel error %.3g over %d seeds (%d in wiggle boxes)", r.max_rel_error, r.seeds,
                                 r.in_region)};
  });

  led.criterion(9, "horseshoe certificate", [&] {
    const auto r = certificate_check(f, 2, kSeed, workers);
    const auto& c = r.certificate;
    return std::pair{r.pass, fmt("bound %.17g (exact %s), separation %.3g, f0 control certified %s, return time %d",
                                 c.bound.value_or(-1.0), r.bound_exact ? "yes" : "no", c.separation_min,
                                 r.control.pass ? "yes" : "no", c.return_time)};
  });

  led.criterion(10, "entropy lower bound", [&] {
    const auto r = horseshoe_entropy_check(f, 2, {40, 80}, workers, 0.15);
    std::string counts;
    for (const auto& row : r.counts) counts += fmt(" %lld", static_cast<long long>(row.count));
    return std::pair{r.pass, fmt("slope %.4g vs %.4g (rel %.3f), counts%s of %lld%s", r.slope, r.target, r.rel_error,
                                 counts.c_str(), static_cast<long long>(r.samples), r.saturated ? " saturated" : "")};
  });

  led.criterion(11, "exponent bound", [&] {
    const auto s = horseshoe_exponent_study(f, 2, 50, 10, kSeed, workers);
    auto cfg = surrogate_config();
    cfg.base.L = 160;
    cfg.schedule.n0 = 4;
    cfg.n_max = 4;
    cfg.schedule.T_explicit = {{4, 80}};
    const auto s2 = horseshoe_exponent_study(PerturbedMap(cfg), 4, 50, 10, kSeed, workers);
    const std::string why = violated_condition(s);
    return std::pair{s.pass, fmt("surrogate chi %.3g%s%s; L=160 n=4 T=80: chi %.3g, %s", s.chi,
                                 why.empty() ? "" : ", fails on ", why.c_str(), s2.chi, s2.pass ? "pass" : "fail")};
  });

  led.criterion(12, "block decomposition oracle", [&] {
    const auto r = block_oracle(200, 12, kSeed);
    return std::pair{r.pass, fmt("%d/%d sequences agree", r.agree, r.sequences)};
  });

  led.criterion(13, "exponent variant", [&] {
    const auto r = exponent_gap_check(4, {200, 400, 800}, 2, 2.0, {}, 0.10, workers);
    std::string rows;
    for (const auto& row : r.gbar) rows += fmt(" T=%d %.4g (C %.3g)", row.T, row.orbit.lambda_hat, row.C);
    return std::pair{r.pass, fmt("lambda %.4g;%s; entropy variant %.4g", r.lambda, rows.c_str(), r.g.lambda_hat)};
  });

  led.criterion(14, "patched map", [&] {
    const auto r = patch_check(100000, kSeed, {}, 0.03, workers);
    return std::pair{r.pass, fmt("bi-Lip %.4g / %.4g, min increment %.3g, spread %.3g",
                                 r.increasing.bilip.bilip(), r.constant.bilip.bilip(), r.increasing.min_increment,
                                 r.constant.spread)};
  });

  led.criterion(15, "reproducibility", [&] {
    const fs::path base = fs::absolute(scratch);
    ExperimentConfig cfg;
    cfg.map = surrogate_config();
    cfg.grids.horseshoe_orbits = 12;
    const auto [n1, d1] = compare_runs("exponent-bound", cfg, base, 1, 3);
    cfg.grids.bilip_pairs = 20000;
    cfg.grids.window.samples = 8000;
    const auto [n2, d2] = compare_runs("lipschitz", cfg, base, 1, 3);
    const bool ok = d1.empty() && d2.empty();
    return std::pair{ok, ok ? fmt("%d files byte-identical across 1 and 3 workers", n1 + n2)
                            : "differs: " + d1 + (d1.empty() || d2.empty() ? "" : ", ") + d2};
  });

  std::printf("%d of 15 criteria failed\n", led.failed);
  return strict && led.failed > 0 ? 1 : 0;
}
