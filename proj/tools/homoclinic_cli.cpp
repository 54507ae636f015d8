// Command-line entry point: homoclinic_cli <scenario> --config <file>
//   [--out <dir>] [--seed <u64>] [--workers <n>]
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 invalid config,
// 3 I/O error.

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "homoclinic/scenarios.hpp"

namespace {

int run_cli(int argc, char** argv) {
  CLI::App app{"Numerical experiments on a surface map with a homoclinic loop"};
  std::string scenario;
  std::string config_file;
  std::string out_dir;
  std::uint64_t seed = 0;
  int workers = 0;
  std::string names;
  for (const auto& [name, fn] : homoclinic::scenario_table()) names += (names.empty() ? "" : ", ") + name;
  app.add_option("scenario", scenario, "one of: " + names)->required();
  app.add_option("--config", config_file, "YAML config file")->required();
  auto* out_opt = app.add_option("--out", out_dir, "output directory (overrides output_dir)");
  auto* seed_opt = app.add_option("--seed", seed, "64-bit seed (overrides seed)");
  auto* workers_opt = app.add_option("--workers", workers, "worker threads (overrides workers)")->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    homoclinic::ExperimentConfig cfg = homoclinic::load_config(config_file);
    if (*out_opt) cfg.output_dir = out_dir;
    if (*seed_opt) cfg.seed = seed;
    if (*workers_opt) cfg.workers = workers;
    const homoclinic::ScenarioResult res = homoclinic::run(scenario, cfg, cfg.workers);
    for (const auto& c : res.checks) {
      std::cout << (c.pass ? "PASS " : "FAIL ") << c.name;
      if (!c.detail.empty()) std::cout << ": " << c.detail;
      std::cout << '\n';
    }
    std::cout << "config " << res.config_hash << ", " << res.files.size() + 1 << " files in " << cfg.output_dir << '\n';
    return res.pass() ? 0 : 1;
  } catch (const homoclinic::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const homoclinic::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 3;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) { return run_cli(argc, argv); }
