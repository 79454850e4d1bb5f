#include <sys/wait.h>

#include <fstream>

#include "ahardy/pipeline.hpp"
#include "fixtures.hpp"

using namespace ahardy;
namespace fs = std::filesystem;

namespace {

const std::string kScenarios = AHARDY_SCENARIO_DIR;

int run_cli(const std::string& args) {
  const std::string cmd = std::string(AHARDY_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("ahardy_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

const char* kMinimal = R"({"presentation": {"generators": [{"shift": 0.5}]}, "t0": [0, 1]})";

TEST(Scenario, MinimalDefaults) {
  const Scenario s = load_scenario_text(kMinimal);
  EXPECT_EQ(s.presentation.rank(), 1u);
  EXPECT_EQ(s.presentation.generators[0].name, "g1");
  EXPECT_EQ(s.N, 2048u);
  EXPECT_EQ(s.M, 512u);
  EXPECT_EQ(s.beta.values.size(), 1u);
  EXPECT_EQ(s.tol.svd_threshold, 1e-8);
}

TEST(Scenario, BundledFilesLoad) {
  const Scenario c = load_scenario(kScenarios + "/cyclic.json");
  EXPECT_EQ(c.truncation, 10);
  EXPECT_NEAR(c.presentation.generators[0].map.a().real(), 1.1547005383792517, 1e-15);
  ahardy::testing::expect_near(c.beta.values[0], -1.0, 0.0);
  const Scenario t = load_scenario(kScenarios + "/trivial.json");
  EXPECT_EQ(t.presentation.rank(), 0u);
}

TEST(Scenario, Overrides) {
  const Scenario s = load_scenario_text(kMinimal, {"grid=512", "coeff=128", "tolerances.tol_id=0.05", "presentation.generators.0.shift=0.25",
                                                   "name=renamed"});
  EXPECT_EQ(s.N, 512u);
  EXPECT_EQ(s.M, 128u);
  EXPECT_EQ(s.tol.tol_id, 0.05);
  EXPECT_EQ(s.name, "renamed");
  EXPECT_LE(map_distance(s.presentation.generators[0].map, MoebiusMap::real_shift(0.25)), 1e-15);
  EXPECT_THROW(load_scenario_text(kMinimal, {"novalue"}), Error);
  EXPECT_THROW(load_scenario_text(kMinimal, {"presentation.generators.3.shift=0.1"}), Error);
}

void expect_config_error(const std::string& text, const std::string& fragment) {
  try {
    load_scenario_text(text);
    ADD_FAILURE() << "accepted: " << text;
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ConfigError);
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

TEST(Scenario, Validation) {
  expect_config_error("{\n  \"t0\": [1, 0],\n  oops\n}", "line 3");
  expect_config_error(R"({"t0": [1, 0]})", "presentation");
  expect_config_error(R"({"presentation": {"generators": []}, "t0": [2, 0]})", "t0");
  expect_config_error(R"({"presentation": {"generators": []}, "t0": [1, 0], "grid": 1000})", "grid");
  expect_config_error(R"({"presentation": {"generators": []}, "t0": [1, 0], "grid": 256, "coeff": 128})", "coeff");
  expect_config_error(R"({"presentation": {"generators": [{"a": [0.5, 0], "b": [0, 0]}]}, "t0": [1, 0]})", "generators[0]");
  expect_config_error(R"({"presentation": {"generators": [{"a": [0.8775825618903728, 0.479425538604203], "b": [0, 0]}]}, "t0": [1, 0]})",
                      "elliptic");
  expect_config_error(R"({"presentation": {"generators": []}, "t0": [1, 0], "tolerances": {"tol_bogus": 1}})", "tol_bogus");
  expect_config_error(R"({"presentation": {"generators": [{"shift": 0.5}]}, "t0": [0, 1], "beta": {"g7": [1, 0]}})", "g7");
  expect_config_error(R"({"presentation": {"generators": []}, "t0": [1, 0], "radii": {"k_min": 5, "k_max": 6}})", "radii");
}

TEST(Report, DeterministicText) {
  const json j = {{"b", 0.1}, {"a", {1.0, 2.5}}, {"c", {{"z", std::nan("")}}}};
  const std::string s = to_text(j);
  EXPECT_LT(s.find("\"a\""), s.find("\"b\""));
  EXPECT_NE(s.find("0.10000000000000001"), std::string::npos);
  EXPECT_NE(s.find("\"nan\""), std::string::npos);
  EXPECT_EQ(format_double(1.0), "1");
  CsvWriter csv({"x", "re", "im"});
  csv.cell(0.5).cell(cplx(1.0, -2.0));
  EXPECT_EQ(csv.text(), "x,re,im\n0.5,1,-2\n");
}

TEST(Report, StageCacheRoundTrip) {
  const fs::path d = fresh_dir("cache");
  StageCache c(d);
  EXPECT_FALSE(c.load("factor", "k1"));
  c.store("factor", "k1", json{{"v", 3}});
  ASSERT_TRUE(c.load("factor", "k1"));
  EXPECT_EQ((*c.load("factor", "k1"))["v"], 3);
  EXPECT_FALSE(c.load("factor", "k2"));
  fs::remove_all(d);
}

TEST(Cli, MalformedJsonExitsWithConfigCode) {
  const fs::path d = fresh_dir("bad");
  std::ofstream(d / "bad.json") << "{\"t0\": [1, 0],";
  EXPECT_EQ(run_cli("orbit --scenario " + (d / "bad.json").string() + " --out " + d.string()), 2);
  EXPECT_EQ(run_cli("orbit --scenario " + (d / "missing.json").string() + " --out " + d.string()), 2);
  EXPECT_EQ(run_cli("orbit --scenario " + kScenarios + "/cyclic.json --out " + d.string() + " --override grid=1000"), 2);
  EXPECT_EQ(run_cli("no-such-stage --scenario x --out y"), 2);
  EXPECT_EQ(run_cli("orbit --out " + d.string()), 2);
  fs::remove_all(d);
}

TEST(Cli, MartinOnCyclicScenario) {
  const fs::path d = fresh_dir("martin");
  ASSERT_EQ(run_cli("martin --scenario " + kScenarios + "/cyclic.json --out " + d.string()), 0);
  const std::string csv = slurp(d / "martin.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "r,z_re,z_im,m_re,m_im,mp_re,mp_im,mp_zeta_re,mp_zeta_im");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 64 + 12);
  const json j = json::parse(slurp(d / "martin.json"));
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_NEAR(j["tail_estimate"].get<double>(), 3.39e-5, 1e-6);
  EXPECT_NEAR(j["orbit_sum"]["value"].get<double>(), 2.861001984579193, 1e-12);
  EXPECT_LT(j["form_max_rel_dev"].get<double>(), 1e-8);
  fs::remove_all(d);
}

TEST(Cli, StagesOnTrivialScenarioAreDeterministic) {
  const fs::path a = fresh_dir("det_a"), b = fresh_dir("det_b");
  for (const char* stage : {"check-group", "orbit", "factor", "theta", "kernel", "np-bound", "cj", "verify-main", "dct"}) {
    EXPECT_EQ(run_cli(std::string(stage) + " --scenario " + kScenarios + "/trivial.json --out " + a.string()), 0) << stage;
    EXPECT_EQ(run_cli(std::string(stage) + " --scenario " + kScenarios + "/trivial.json --out " + b.string()), 0) << stage;
    const std::string name = std::string(stage) + ".json";
    EXPECT_EQ(slurp(a / name), slurp(b / name)) << stage;
  }
  EXPECT_TRUE(fs::exists(a / "elements.csv"));
  EXPECT_TRUE(fs::exists(a / "factor.csv"));
  EXPECT_TRUE(fs::exists(a / "slack.csv"));
  EXPECT_FALSE(fs::is_empty(a / "cache"));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Cli, CachedFactorizationReused) {
  const fs::path d = fresh_dir("reuse");
  const std::string args = "factor --scenario " + kScenarios + "/cyclic.json --out " + d.string();
  ASSERT_EQ(run_cli(args), 0);
  const std::string first = slurp(d / "factor.json");
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(d / "cache")) files += e.path().filename().string().rfind("factor-", 0) == 0;
  EXPECT_EQ(files, 1u);
  ASSERT_EQ(run_cli(args), 0);
  EXPECT_EQ(slurp(d / "factor.json"), first);
  ASSERT_EQ(run_cli(args + " --override truncation=8"), 0);
  files = 0;
  for (const auto& e : fs::directory_iterator(d / "cache")) files += e.path().filename().string().rfind("factor-", 0) == 0;
  EXPECT_EQ(files, 2u);
  fs::remove_all(d);
}

}  // namespace
