#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "homoclinic/config.hpp"
#include "homoclinic/io.hpp"
#include "homoclinic/scenarios.hpp"

using namespace homoclinic;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("homoclinic_test_io_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

int exit_code(const std::string& cmd) {
  const int st = std::system((cmd + " >/dev/null 2>&1").c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

}  // namespace

TEST(Format, SeventeenDigits) {
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(format_number(2.0), "2");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.33333333333333331");
}

TEST(Json, NonFiniteAsStrings) {
  Json j;
  j["a"] = std::numeric_limits<double>::infinity();
  j["b"] = 0.5;
  EXPECT_EQ(to_text(j, 0), R"({"a":"inf","b":0.5})");
}

TEST(Hash, MatchesGitBlob) {
  EXPECT_EQ(git_blob_sha1("hello\n"), "ce013625030ba8dba906f756967f9e9ca394464a");
  EXPECT_EQ(git_blob_sha1(""), "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
}

TEST(Hash, IndependentOfKeyOrder) {
  Json a;
  a["x"] = 1;
  a["y"] = {{"p", 2}, {"q", 3}};
  Json b;
  b["y"] = {{"q", 3}, {"p", 2}};
  b["x"] = 1;
  EXPECT_EQ(content_hash(a), content_hash(b));
  b["x"] = 2;
  EXPECT_NE(content_hash(a), content_hash(b));
}

TEST(Hash, IgnoresWorkersAndOutputDir) {
  ExperimentConfig a;
  ExperimentConfig b;
  b.workers = 7;
  b.output_dir = "elsewhere";
  EXPECT_EQ(content_hash(to_json(a)), content_hash(to_json(b)));
  b.seed = 1;
  EXPECT_NE(content_hash(to_json(a)), content_hash(to_json(b)));
}

TEST(Tables, CsvAndPlot) {
  CsvTable t({"n", "value", "ok"});
  t.row(3, 0.25, true);
  EXPECT_EQ(t.text(), "n,value,ok\n3,0.25,1\n");
  EXPECT_THROW(t.row(1, 2.0), DomainError);
  PlotTable p({"x", "y"});
  p.row({1.0, 0.5});
  p.block("eps 0.1");
  EXPECT_EQ(p.text(), "# x y\n1 0.5\n\n# eps 0.1\n");
}

TEST(Config, ParsesExampleFiles) {
  for (const char* name : {"default.yaml", "f0.yaml", "exponent.yaml", "regime.yaml", "lipschitz.yaml"}) {
    EXPECT_NO_THROW((void)load_config(fs::path(HOMOCLINIC_CONFIGS) / name)) << name;
  }
  const ExperimentConfig c = load_config(fs::path(HOMOCLINIC_CONFIGS) / "regime.yaml");
  EXPECT_EQ(c.map.base.L, 160.0);
  EXPECT_EQ(c.map.schedule.T_of(4), 80);
}

TEST(Config, Errors) {
  EXPECT_THROW((void)parse_config_text("bogus: 1\n"), ConfigError);
  EXPECT_THROW((void)parse_config_text("params: {K: 10}\n"), ConfigError);
  EXPECT_THROW((void)parse_config_text("params: {K: [1, 2]}\n"), ConfigError);
  EXPECT_THROW((void)parse_config_text("grids: {n: [}\n"), ConfigError);
  EXPECT_THROW((void)parse_config_text("perturbation: {variant: wavy}\n"), ConfigError);
  EXPECT_THROW((void)load_config("/nonexistent/config.yaml"), IoError);
}

TEST(Output, AtomicWrites) {
  const fs::path root = scratch("atomic");
  OutputDir out(root);
  out.write("a.txt", "alpha\n");
  out.write_json("b.json", Json{{"k", 1}});
  EXPECT_EQ(slurp(root / "a.txt"), "alpha\n");
  EXPECT_EQ(out.files(), (std::vector<std::string>{"a.txt", "b.json"}));
  for (const auto& e : fs::directory_iterator(root)) EXPECT_NE(e.path().extension(), ".partial");
  fs::remove_all(root);
}

TEST(Run, RejectsBadScheduleBeforeWriting) {
  const fs::path root = scratch("bad_schedule");
  ExperimentConfig c;
  c.output_dir = root.string();
  c.map.schedule.T_explicit[2] = 2;  // N_n < 2
  c.map.n_max = 2;
  EXPECT_THROW((void)run("verify-f0", c, 1), ConfigError);
  EXPECT_FALSE(fs::exists(root));
  EXPECT_THROW((void)run("no-such-scenario", ExperimentConfig{}, 1), ConfigError);
}

TEST(Run, ManifestAndHashStamps) {
  const fs::path root = scratch("remark");
  ExperimentConfig c = load_config(fs::path(HOMOCLINIC_CONFIGS) / "exponent.yaml");
  c.output_dir = root.string();
  const ScenarioResult r = run("remark13-exponent", c, 1);
  EXPECT_TRUE(r.pass());
  ASSERT_TRUE(fs::exists(root / "manifest.json"));
  const Json m = Json::parse(slurp(root / "manifest.json"));
  EXPECT_EQ(m["config_hash"], r.config_hash);
  EXPECT_EQ(r.config_hash, content_hash(Json::parse(slurp(root / "config.json"))));
  const std::string csv = slurp(root / "return_orbits.csv");
  EXPECT_EQ(csv.rfind("# config_hash " + r.config_hash, 0), 0u);
  fs::remove_all(root);
}

TEST(Cli, ExitCodes) {
  const std::string cli = HOMOCLINIC_CLI;
  const fs::path root = scratch("cli");
  fs::create_directories(root);
  {
    std::ofstream bad(root / "bad.yaml");
    bad << "params: {K: 5}\n";
  }
  EXPECT_EQ(exit_code(cli + " verify-f0 --config " + (root / "bad.yaml").string() + " --out " + (root / "o").string()), 2);
  EXPECT_EQ(exit_code(cli + " verify-f0 --config " + (root / "missing.yaml").string()), 3);
  EXPECT_EQ(exit_code(cli + " no-such --config " + std::string(HOMOCLINIC_CONFIGS) + "/default.yaml"), 2);
  EXPECT_EQ(exit_code(cli + " remark13-exponent --config " + std::string(HOMOCLINIC_CONFIGS) +
                      "/exponent.yaml --out " + (root / "ok").string()),
            0);
  EXPECT_TRUE(fs::exists(root / "ok" / "manifest.json"));
  fs::remove_all(root);
}
