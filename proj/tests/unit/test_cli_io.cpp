#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "potluck/cli.hpp"
#include "potluck/config.hpp"
#include "potluck/report.hpp"
#include "potluck/simulation.hpp"

using namespace potluck;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "potluck");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("potluck_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

ConfigFileError::Kind error_kind(const std::string& text) {
  try {
    parse_config(text, "test.json");
  } catch (const ConfigFileError& e) {
    return e.kind();
  }
  FAIL("expected ConfigFileError");
  return ConfigFileError::Kind::kParse;
}

}  // namespace

TEST_CASE("minimal config takes documented defaults") {
  const ScenarioConfig c = parse_config(R"({"n_agents": 100, "n_rounds": 1000})");
  CHECK(c.n_agents == 100);
  CHECK(c.n_rounds == 1000);
  CHECK(c.beta == 0.5);
  CHECK(c.window == 10);
  CHECK(c.upsilon_max == 10.0);
  CHECK(c.ratio_floor == 1e-9);
  CHECK(c.seed == 0);
  CHECK(c.initial_weights == InitialWeights::kUniform);
  CHECK(c.population == PopulationRule{});
  CHECK(c.demand.tag == DemandTag::kUniformPerAgent);
  CHECK(c.predictor_pool == stock_predictor_pool(10, 50000.0));
  CHECK_FALSE(c.prior_demand.has_value());
}

TEST_CASE("invalid configs are rejected with distinct diagnostics") {
  try {
    parse_config(R"({"n_agents": 4, "beta": 1.5})", "cfg.json");
    FAIL("accepted beta = 1.5");
  } catch (const ConfigFileError& e) {
    CHECK(e.kind() == ConfigFileError::Kind::kInvariant);
    CHECK(std::string(e.what()) == "cfg.json: beta: beta must lie in (0,1)");
  }
  CHECK(error_kind(R"({"n_agents": 4, "colour": 1})") == ConfigFileError::Kind::kParse);
  CHECK(error_kind(R"({"demand": {"process": "fixed-total", "totl": 3}})") == ConfigFileError::Kind::kParse);
  CHECK(error_kind(R"({"n_agents": )") == ConfigFileError::Kind::kParse);
  CHECK(error_kind(R"({"n_agents": -3})") == ConfigFileError::Kind::kParse);
  CHECK(error_kind(R"({"predictors": [{"kind": "crystal-ball"}]})") == ConfigFileError::Kind::kParse);
  CHECK(error_kind(R"({"n_agents": 2, "population": {"k": 9}})") == ConfigFileError::Kind::kInvariant);
  try {
    load_config("/nonexistent/potluck.json");
    FAIL("loaded a missing file");
  } catch (const ConfigFileError& e) {
    CHECK(e.kind() == ConfigFileError::Kind::kMissingFile);
  }
}

TEST_CASE("config round-trips through its serialized form") {
  const ScenarioConfig defaults = parse_config(R"({"n_agents": 3, "n_rounds": 7})");
  CHECK(parse_config(dump_config(defaults)) == defaults);

  ScenarioConfig c = defaults;
  c.seed = 0xfedcba9876543210ULL;
  c.beta = 0.123456789012345;
  c.prior_demand = 17.25;
  c.initial_weights = InitialWeights::kRandom;
  c.agents = {AgentSpec{0, 3.5, {0.1, 0.2}, Learner::kRational, 1},
              AgentSpec{1, 4.0, {0, 9}, Learner::kWeightedMajority, 2},
              AgentSpec{2, 0.0, {1, 1}, Learner::kBinaryRational, 5}};
  c.demand = DemandProcess{DemandTag::kTimeVaryingTotal, true, 0, 100, 20, 24, 0.5};
  c.predictor_pool.push_back(PredictorKind{PredictorTag::kMeanWindow, 3});
  const std::string text = dump_config(c);
  CHECK(parse_config(text) == c);
  CHECK(dump_config(parse_config(text)) == text);

  const fs::path dir = scratch("config");
  write_text_file(dir / "c.json", text);
  CHECK(load_config(dir / "c.json") == c);
}

TEST_CASE("trace CSV") {
  ScenarioConfig c = parse_config(R"({"n_agents": 4, "n_rounds": 3, "seed": 2})");
  const SimulationResult r = run_simulation(c);
  const std::string csv = trace_csv(r);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  CHECK(csv.rfind("t,D,S,gap\n", 0) == 0);
  CHECK(trace_csv(run_simulation(c)) == csv);

  const PairedRuns paired = run_paired(c);
  const std::string pcsv = trace_csv(paired);
  CHECK(pcsv.rfind("t,D,S_rational,gap_rational,S_weighted_majority,gap_weighted_majority\n", 0) == 0);
  CHECK(std::count(pcsv.begin(), pcsv.end(), '\n') == 4);

  const fs::path dir = scratch("trace");
  write_trace(r, dir / "a.csv");
  write_trace(r, dir / "b.csv");
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  CHECK_THROWS_AS(write_trace(r, dir / "missing" / "x.csv"), IoError);

  CHECK(format_fixed(1.5) == "1.500000");
  CHECK(format_fixed(-1e-9) == "0.000000");
  CHECK(format_fixed(-2.25, 1) == "-2.2");
}

TEST_CASE("cli usage errors") {
  CliRun r = cli({});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("Usage") != std::string::npos);
  r = cli({"frobnicate"});
  CHECK(r.code == kExitUsage);
  r = cli({"run", "--bogus"});
  CHECK(r.code == kExitUsage);
  r = cli({"run", "--format", "xml"});
  CHECK(r.code == kExitUsage);
}

TEST_CASE("cli runtime errors use a single greppable line") {
  CliRun r = cli({"run", "--config", "/nonexistent/x.json"});
  CHECK(r.code == kExitRuntime);
  CHECK(r.err.rfind("potluck: error: ", 0) == 0);
  CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
  r = cli({"run", "--preset", "nope"});
  CHECK(r.code == kExitRuntime);
  r = cli({"oscillate", "--agents", "10", "--demand", "10"});
  CHECK(r.code == kExitRuntime);
}

TEST_CASE("cli oscillate") {
  const CliRun r = cli({"oscillate", "--agents", "100", "--demand", "60", "--format", "json"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["verdict"]["detected"] == true);
  CHECK(j["verdict"]["period"] == 2);
}

TEST_CASE("cli compare and run write outputs") {
  const fs::path dir = scratch("cli");
  CliRun r = cli({"compare", "--preset", "paper", "--seed", "1", "--format", "json", "--out-dir", dir.string()});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["comparison"].contains("outperform_fraction"));
  CHECK(j["comparison"].contains("mean_improvement"));
  CHECK(slurp(dir / "summary.json") == r.out);
  CHECK(fs::exists(dir / "trace.csv"));

  r = cli({"run", "--preset", "sfbp", "--format", "csv"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.rfind("t,D,S,gap\n", 0) == 0);

  const fs::path cfg = scratch("cli_cfg") / "s.json";
  write_text_file(cfg, R"({"n_agents": 5, "n_rounds": 4})");
  r = cli({"run", "--config", cfg.string(), "--seed", "3", "--learner", "rational", "--format", "json"});
  REQUIRE(r.code == kExitOk);
  CHECK(nlohmann::json::parse(r.out)["seed"] == 3);

  r = cli({"compare", "--seed", "1", "--seeds", "3", "--format", "json"});
  REQUIRE(r.code == kExitOk);
  CHECK(nlohmann::json::parse(r.out)["per_seed"].size() == 3);

  const fs::path env_dir = scratch("cli_env");
  ::setenv("POTLUCK_OUT_DIR", env_dir.string().c_str(), 1);
  r = cli({"oscillate"});
  ::unsetenv("POTLUCK_OUT_DIR");
  REQUIRE(r.code == kExitOk);
  CHECK(fs::exists(env_dir / "summary.json"));
}
