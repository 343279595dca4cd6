#include "potluck/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "potluck/config.hpp"
#include "potluck/metrics.hpp"
#include "potluck/report.hpp"
#include "potluck/scenarios.hpp"
#include "potluck/simulation.hpp"

namespace potluck {
namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr const char* kOutDirEnv = "POTLUCK_OUT_DIR";

struct OutputOptions {
  std::string out_dir;
  std::string format = "text";
};

struct Emitted {
  std::string csv;
  Json summary;
  std::string text;
};

std::string hex(std::uint64_t v) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << v;
  return s.str();
}

void emit(const Emitted& e, const OutputOptions& opts, std::ostream& out) {
  std::string dir = opts.out_dir;
  if (dir.empty())
    if (const char* env = std::getenv(kOutDirEnv)) dir = env;
  const std::string json = e.summary.dump(2) + "\n";
  if (!dir.empty()) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
    write_text_file(fs::path(dir) / "trace.csv", e.csv);
    write_text_file(fs::path(dir) / "summary.json", json);
  }
  if (opts.format == "json")
    out << json;
  else if (opts.format == "csv")
    out << e.csv;
  else
    out << e.text;
}

ScenarioConfig select_config(const std::string& preset, const std::string& config_path,
                             std::optional<std::uint64_t> seed) {
  ScenarioConfig config;
  if (!config_path.empty()) {
    config = load_config(config_path);
    if (seed) config.seed = *seed;
  } else {
    auto found = find_preset(preset, seed.value_or(0));
    if (!found) throw ConfigError("unknown preset '" + preset + "' (expected sfbp or paper)");
    config = std::move(found->config);
  }
  return config;
}

Emitted do_run(const ScenarioConfig& config, const std::string& source) {
  const SimulationResult result = run_simulation(config);
  const RunStats stats = run_stats(result);
  Emitted e;
  e.csv = trace_csv(result);
  e.summary = {{"command", "run"},
               {"source", source},
               {"seed", config.seed},
               {"config_digest", hex(result.config_digest)},
               {"stats", to_json(stats)},
               {"weight_resets", result.weight_resets.size()}};
  e.text = "run " + source + " (seed " + std::to_string(config.seed) + ")\n" + to_text(stats);
  return e;
}

Emitted do_compare(const ScenarioConfig& base, const std::string& source, std::size_t n_seeds) {
  const PairedRuns runs = run_paired(base);
  const ComparisonReport report = compare_runs(runs.weighted_majority, runs.rational);
  const RunStats rational = run_stats(runs.rational);
  const RunStats wm = run_stats(runs.weighted_majority);

  Emitted e;
  e.csv = trace_csv(runs);
  e.summary = {{"command", "compare"},
               {"source", source},
               {"seed", base.seed},
               {"config_digest", hex(config_digest(base))},
               {"learner_a", "weighted-majority"},
               {"learner_b", "rational"},
               {"rational", to_json(rational)},
               {"weighted_majority", to_json(wm)},
               {"comparison", to_json(report)}};
  e.text = "compare " + source + " (seed " + std::to_string(base.seed) +
           "): weighted-majority (A) vs rational (B)\n" + to_text(report) +
           "mean |S-D| rational " + format_fixed(rational.mean_abs_gap, 2) + ", weighted-majority " +
           format_fixed(wm.mean_abs_gap, 2) + "\n";

  if (n_seeds > 1) {
    std::vector<ComparisonReport> reports{report};
    Json per_seed = Json::array();
    per_seed.push_back({{"seed", base.seed},
                        {"outperform_fraction", report.outperform_fraction},
                        {"mean_improvement", report.mean_improvement},
                        {"best_improvement", report.best_improvement}});
    for (std::size_t s = 1; s < n_seeds; ++s) {
      ScenarioConfig config = base;
      config.seed = base.seed + s;
      const PairedRuns more = run_paired(config);
      const ComparisonReport r = compare_runs(more.weighted_majority, more.rational);
      per_seed.push_back({{"seed", config.seed},
                          {"outperform_fraction", r.outperform_fraction},
                          {"mean_improvement", r.mean_improvement},
                          {"best_improvement", r.best_improvement}});
      reports.push_back(r);
    }
    const SweepSummary sweep = summarize_sweep(reports);
    e.summary["sweep"] = to_json(sweep);
    e.summary["per_seed"] = std::move(per_seed);
    e.text += "over " + std::to_string(n_seeds) + " seeds: median outperform " +
              format_fixed(sweep.median_outperform_fraction, 4) + ", median mean improvement " +
              format_fixed(sweep.median_mean_improvement, 4) + ", best mean improvement " +
              format_fixed(sweep.best_mean_improvement, 4) + "\n";
  }
  return e;
}

Emitted do_oscillate(std::size_t n_agents, double demand, std::size_t rounds, std::size_t transient) {
  const SimulationResult result = scenario_sfbp_binary(n_agents, demand, rounds);
  const std::vector<Quantity> trace = supply_trace(result);
  const OscillationVerdict verdict = detect_oscillation(trace, transient);
  const RunStats stats = run_stats(result);
  Emitted e;
  e.csv = trace_csv(result);
  e.summary = {{"command", "oscillate"},
               {"n_agents", n_agents},
               {"fixed_demand", demand},
               {"rounds", rounds},
               {"verdict", to_json(verdict)},
               {"stats", to_json(stats)}};
  e.text = "oscillate N=" + std::to_string(n_agents) + " d=" + format_fixed(demand, 2) + ": " +
           (verdict.detected ? "oscillation, period " + std::to_string(*verdict.period)
                             : std::string("no oscillation")) +
           "\n" + to_text(stats);
  return e;
}

void add_output_options(CLI::App* cmd, OutputOptions& opts) {
  cmd->add_option("--out-dir", opts.out_dir,
                  std::string("write trace.csv and summary.json here (default: $") + kOutDirEnv + ")");
  cmd->add_option("--format", opts.format, "stdout format")
      ->check(CLI::IsMember({"text", "csv", "json"}));
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Potluck Problem simulator", "potluck"};
  app.require_subcommand(1);

  OutputOptions output;
  std::string preset;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string learner;
  std::size_t n_seeds = 1;
  std::size_t agents = 100;
  double demand = 60.0;
  std::size_t rounds = 50;
  std::size_t transient = 1;

  CLI::App* run = app.add_subcommand("run", "run one scenario and report parity statistics");
  auto* run_preset = run->add_option("--preset", preset, "sfbp | paper");
  auto* run_config = run->add_option("--config", config_path, "scenario file (JSON)");
  run_preset->excludes(run_config);
  run->add_option("--seed", seed, "override the scenario seed");
  run->add_option("--learner", learner, "override every agent's learner")
      ->check(CLI::IsMember({"rational", "weighted-majority"}));
  add_output_options(run, output);

  CLI::App* compare = app.add_subcommand("compare", "paired weighted-majority vs rational comparison");
  auto* cmp_preset = compare->add_option("--preset", preset, "paper");
  auto* cmp_config = compare->add_option("--config", config_path, "scenario file (JSON)");
  cmp_preset->excludes(cmp_config);
  compare->add_option("--seed", seed, "override the scenario seed");
  compare->add_option("--seeds", n_seeds, "also sweep seeds seed..seed+K-1")->check(CLI::PositiveNumber);
  add_output_options(compare, output);

  CLI::App* oscillate = app.add_subcommand("oscillate", "binary fixed-demand scenario and oscillation check");
  oscillate->add_option("--agents", agents, "number of agents")->check(CLI::PositiveNumber);
  oscillate->add_option("--demand", demand, "fixed total demand d, 0 < d < agents");
  oscillate->add_option("--rounds", rounds, "rounds to simulate")->check(CLI::PositiveNumber);
  oscillate->add_option("--transient", transient, "rounds skipped before the periodicity scan");
  add_output_options(oscillate, output);

  if (argc <= 1) {
    err << app.help();
    err << "potluck: error: a subcommand is required\n";
    return kExitUsage;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Emitted e;
    if (run->parsed()) {
      if (preset.empty() && config_path.empty()) preset = "paper";
      ScenarioConfig config = select_config(preset, config_path, seed);
      if (!learner.empty()) {
        const Learner l = learner == "rational" ? Learner::kRational : Learner::kWeightedMajority;
        config.population.learner = l;
        for (AgentSpec& a : config.agents) a.learner = l;
      }
      e = do_run(config, config_path.empty() ? "preset:" + preset : config_path);
    } else if (compare->parsed()) {
      if (preset.empty() && config_path.empty()) preset = "paper";
      const ScenarioConfig config = select_config(preset, config_path, seed);
      e = do_compare(config, config_path.empty() ? "preset:" + preset : config_path, n_seeds);
    } else {
      e = do_oscillate(agents, demand, rounds, transient);
    }
    emit(e, output, out);
  } catch (const std::exception& ex) {
    err << "potluck: error: " << ex.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace potluck
