#pragma once

// Experiment configuration: a YAML tree with sections params, perturbation,
// grids and tolerances.  Missing keys keep their defaults; unknown keys are
// rejected so that typos do not silently fall back to a default.

#include <yaml-cpp/yaml.h>

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "homoclinic/base_map.hpp"
#include "homoclinic/errors.hpp"
#include "homoclinic/io.hpp"
#include "homoclinic/lipschitz.hpp"
#include "homoclinic/perturbation.hpp"

namespace homoclinic {

struct Grids {
  // verify-f0
  int corner_grid{50};
  int symmetry_samples{1000};
  // transition-scan
  std::vector<double> L{10.0, 20.0, 40.0, 80.0};
  int transition_samples{8};
  std::vector<double> contraction_L{20.0, 40.0};
  std::vector<double> x1{1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
  int x2_count{16};
  // perturbation-check
  int majder_samples{100000};
  int oracle_seeds{100};
  int oracle_steps{20};
  int cr_grid{400};
  // lyapunov-scan, segments
  int orbits{100};
  std::int64_t steps{10000};
  int block_sequences{200};
  int block_max_segments{12};
  // entropy-scan
  std::vector<double> eps{0.05};
  std::vector<int> n{50, 100, 200};
  int entropy_samples{1000};
  // horseshoe, exponent-bound
  std::vector<int> horizons{40, 80};
  int horseshoe_orbits{50};
  int returns{10};
  double A{2.718281828459045};
  // remark13-exponent
  int exponent_n{4};
  std::vector<int> exponent_T{200, 400, 800};
  int compare_n{2};
  double compare_r{2.0};
  // lipschitz
  std::int64_t bilip_pairs{100000};
  int disks{4};
  double shear_lo{0.8};
  double shear_hi{1.5};
  EntropyWindow window{};
};

struct Tolerances {
  double affine{1e-7};
  double symmetry{1e-7};
  double anchor{1e-6};
  double transition_r2{0.99};
  double contraction_spread{0.05};
  double zero_band{0.02};
  double oracle{1e-8};
  double horseshoe_rel{0.15};
  double exponent_rel{0.10};
  double patch{0.03};
};

struct ExperimentConfig {
  std::string scenario;
  std::uint64_t seed{20240521};
  int workers{1};
  std::string output_dir{"results"};
  PerturbedMapConfig map{};
  Grids grids{};
  Tolerances tol{};

  /// Throws ConfigError when the map or schedule is invalid.
  void validate() const {
    map.base.validate();
    if (workers < 1) throw ConfigError("workers must be >= 1");
    if (map.variant != Variant::kNone) (void)PerturbedMap(map);
    if (grids.L.empty() || grids.n.empty() || grids.eps.empty() || grids.horizons.size() < 2) {
      throw ConfigError("grids: L, n and eps must be non-empty and horizons needs two entries");
    }
  }
};

namespace detail {

inline void check_keys(const YAML::Node& node, const std::string& where, const std::set<std::string>& allowed) {
  if (!node) return;
  if (!node.IsMap()) throw ConfigError(where + ": expected a mapping");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

template <typename T>
void read(const YAML::Node& node, const char* key, T& out) {
  if (node && node[key]) {
    try {
      out = node[key].as<T>();
    } catch (const YAML::Exception& e) {
      throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
    }
  }
}

}  // namespace detail

[[nodiscard]] inline ExperimentConfig parse_config(const YAML::Node& root) {
  using detail::read;
  ExperimentConfig c;
  detail::check_keys(root, "config",
                     {"scenario", "seed", "workers", "output_dir", "params", "perturbation", "grids", "tolerances"});
  read(root, "scenario", c.scenario);
  read(root, "seed", c.seed);
  read(root, "workers", c.workers);
  read(root, "output_dir", c.output_dir);

  const YAML::Node p = root["params"];
  detail::check_keys(p, "params", {"K", "L", "Lambda", "K_floor", "substeps", "inner_damping", "outer_damping"});
  Params& b = c.map.base;
  read(p, "K", b.K);
  read(p, "L", b.L);
  read(p, "Lambda", b.Lambda);
  read(p, "K_floor", b.K_floor);
  read(p, "substeps", b.substeps);
  read(p, "inner_damping", b.inner_damping);
  read(p, "outer_damping", b.outer_damping);

  const YAML::Node q = root["perturbation"];
  detail::check_keys(q, "perturbation", {"variant", "n0", "n_max", "r", "T0", "T"});
  std::string variant = to_string(c.map.variant);
  read(q, "variant", variant);
  c.map.variant = parse_variant(variant);
  read(q, "n0", c.map.schedule.n0);
  read(q, "n_max", c.map.n_max);
  read(q, "r", c.map.schedule.r);
  read(q, "T0", c.map.schedule.T0);
  if (q && q["T"]) {
    if (!q["T"].IsMap()) throw ConfigError("perturbation.T: expected a mapping n -> T_n");
    for (const auto& kv : q["T"]) c.map.schedule.T_explicit[kv.first.as<int>()] = kv.second.as<int>();
  }

  const YAML::Node g = root["grids"];
  detail::check_keys(g, "grids",
                     {"corner_grid", "symmetry_samples", "L", "transition_samples", "contraction_L", "x1", "x2_count",
                      "majder_samples", "oracle_seeds", "oracle_steps", "cr_grid", "orbits", "steps",
                      "block_sequences", "block_max_segments", "eps", "n", "entropy_samples", "horizons",
                      "horseshoe_orbits", "returns", "A", "exponent_n", "exponent_T", "compare_n", "compare_r",
                      "bilip_pairs", "disks", "shear_lo", "shear_hi", "window"});
  Grids& d = c.grids;
  read(g, "corner_grid", d.corner_grid);
  read(g, "symmetry_samples", d.symmetry_samples);
  read(g, "L", d.L);
  read(g, "transition_samples", d.transition_samples);
  read(g, "contraction_L", d.contraction_L);
  read(g, "x1", d.x1);
  read(g, "x2_count", d.x2_count);
  read(g, "majder_samples", d.majder_samples);
  read(g, "oracle_seeds", d.oracle_seeds);
  read(g, "oracle_steps", d.oracle_steps);
  read(g, "cr_grid", d.cr_grid);
  read(g, "orbits", d.orbits);
  read(g, "steps", d.steps);
  read(g, "block_sequences", d.block_sequences);
  read(g, "block_max_segments", d.block_max_segments);
  read(g, "eps", d.eps);
  read(g, "n", d.n);
  read(g, "entropy_samples", d.entropy_samples);
  read(g, "horizons", d.horizons);
  read(g, "horseshoe_orbits", d.horseshoe_orbits);
  read(g, "returns", d.returns);
  read(g, "A", d.A);
  read(g, "exponent_n", d.exponent_n);
  read(g, "exponent_T", d.exponent_T);
  read(g, "compare_n", d.compare_n);
  read(g, "compare_r", d.compare_r);
  read(g, "bilip_pairs", d.bilip_pairs);
  read(g, "disks", d.disks);
  read(g, "shear_lo", d.shear_lo);
  read(g, "shear_hi", d.shear_hi);
  if (g && g["window"]) {
    const YAML::Node w = g["window"];
    detail::check_keys(w, "grids.window", {"eps", "n_lo", "n_hi", "samples"});
    read(w, "eps", d.window.eps);
    read(w, "n_lo", d.window.n_lo);
    read(w, "n_hi", d.window.n_hi);
    read(w, "samples", d.window.samples);
  }

  const YAML::Node t = root["tolerances"];
  detail::check_keys(t, "tolerances",
                     {"affine", "symmetry", "anchor", "transition_r2", "contraction_spread", "zero_band", "oracle",
                      "horseshoe_rel", "exponent_rel", "patch"});
  Tolerances& o = c.tol;
  read(t, "affine", o.affine);
  read(t, "symmetry", o.symmetry);
  read(t, "anchor", o.anchor);
  read(t, "transition_r2", o.transition_r2);
  read(t, "contraction_spread", o.contraction_spread);
  read(t, "zero_band", o.zero_band);
  read(t, "oracle", o.oracle);
  read(t, "horseshoe_rel", o.horseshoe_rel);
  read(t, "exponent_rel", o.exponent_rel);
  read(t, "patch", o.patch);

  c.validate();
  return c;
}

[[nodiscard]] inline ExperimentConfig parse_config_text(const std::string& text) {
  try {
    return parse_config(YAML::Load(text));
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

[[nodiscard]] inline ExperimentConfig load_config(const std::filesystem::path& file) {
  if (!std::filesystem::exists(file)) throw IoError("config file not found: " + file.string());
  try {
    return parse_config(YAML::LoadFile(file.string()));
  } catch (const YAML::BadFile& e) {
    throw IoError("cannot read config " + file.string() + ": " + e.what());
  } catch (const YAML::Exception& e) {
    throw ConfigError("config " + file.string() + ": " + e.what());
  }
}

/// Everything that affects results; the hash is taken over this tree.
/// workers and output_dir are left out since they do not change the data.
[[nodiscard]] inline Json to_json(const ExperimentConfig& c) {
  const Params& b = c.map.base;
  const PerturbationSchedule& s = c.map.schedule;
  Json j;
  j["scenario"] = c.scenario;
  j["seed"] = c.seed;
  j["params"] = {{"K", b.K},
                 {"L", b.L},
                 {"Lambda", b.Lambda},
                 {"K_floor", b.K_floor},
                 {"substeps", b.substeps},
                 {"inner_damping", b.inner_damping},
                 {"outer_damping", b.outer_damping}};
  Json T = Json::object();
  for (const auto& [n, t] : s.T_explicit) T[std::to_string(n)] = t;
  j["perturbation"] = {{"variant", to_string(c.map.variant)}, {"n0", s.n0}, {"n_max", c.map.n_max},
                       {"r", s.r},  {"T0", s.T0}, {"T", T}};
  const Grids& d = c.grids;
  j["grids"] = {{"corner_grid", d.corner_grid},
                {"symmetry_samples", d.symmetry_samples},
                {"L", d.L},
                {"transition_samples", d.transition_samples},
                {"contraction_L", d.contraction_L},
                {"x1", d.x1},
                {"x2_count", d.x2_count},
                {"majder_samples", d.majder_samples},
                {"oracle_seeds", d.oracle_seeds},
                {"oracle_steps", d.oracle_steps},
                {"cr_grid", d.cr_grid},
                {"orbits", d.orbits},
                {"steps", d.steps},
                {"block_sequences", d.block_sequences},
                {"block_max_segments", d.block_max_segments},
                {"eps", d.eps},
                {"n", d.n},
                {"entropy_samples", d.entropy_samples},
                {"horizons", d.horizons},
                {"horseshoe_orbits", d.horseshoe_orbits},
                {"returns", d.returns},
                {"A", d.A},
                {"exponent_n", d.exponent_n},
                {"exponent_T", d.exponent_T},
                {"compare_n", d.compare_n},
                {"compare_r", d.compare_r},
                {"bilip_pairs", d.bilip_pairs},
                {"disks", d.disks},
                {"shear_lo", d.shear_lo},
                {"shear_hi", d.shear_hi},
                {"window",
                 {{"eps", d.window.eps}, {"n_lo", d.window.n_lo}, {"n_hi", d.window.n_hi}, {"samples", d.window.samples}}}};
  const Tolerances& o = c.tol;
  j["tolerances"] = {{"affine", o.affine},
                     {"symmetry", o.symmetry},
                     {"anchor", o.anchor},
                     {"transition_r2", o.transition_r2},
                     {"contraction_spread", o.contraction_spread},
                     {"zero_band", o.zero_band},
                     {"oracle", o.oracle},
                     {"horseshoe_rel", o.horseshoe_rel},
                     {"exponent_rel", o.exponent_rel},
                     {"patch", o.patch}};
  return j;
}

}  // namespace homoclinic
