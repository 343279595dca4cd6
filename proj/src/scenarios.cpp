#include "potluck/scenarios.hpp"

#include <string>

#include "potluck/simulation.hpp"

namespace potluck {

ScenarioPreset sfbp_preset(std::size_t n_agents, Quantity fixed_demand, std::size_t n_rounds) {
  if (!(fixed_demand > 0.0) || !(fixed_demand < static_cast<Quantity>(n_agents)))
    throw ConfigError("sfbp: fixed demand d must satisfy 0 < d < n_agents");
  ScenarioConfig config;
  config.n_agents = n_agents;
  config.n_rounds = n_rounds;
  config.demand.tag = DemandTag::kFixedTotal;
  config.demand.total = fixed_demand;
  config.prior_demand = fixed_demand;
  const Quantity share = fixed_demand / static_cast<Quantity>(n_agents);
  config.agents.resize(n_agents);
  for (std::size_t i = 0; i < n_agents; ++i) {
    AgentSpec& a = config.agents[i];
    a.id = i;
    a.max_supply = 1.0;
    a.demand_range = {share, share};
    a.learner = Learner::kBinaryRational;
  }
  return {"sfbp", std::move(config),
          {"supply takes values in {0, n_agents} after round 0",
           "oscillation with period 2",
           "|S_t - d| >= min(d, n_agents - d) every round"}};
}

ScenarioPreset paper_preset(std::uint64_t seed, Learner learner) {
  ScenarioConfig config;
  config.n_agents = 100;
  config.n_rounds = 1000;
  config.seed = seed;
  config.population.capacity_lo = 500.0;
  config.population.capacity_hi = 1000.0;
  config.population.demand_range = {0.0, 1000.0};
  config.population.learner = learner;
  config.population.predictor_pool_size = 5;
  config.demand.tag = DemandTag::kUniformPerAgent;
  config.predictor_pool = stock_predictor_pool(config.window, 100 * 500.0);
  return {"paper", std::move(config),
          {"mean total demand in [45000, 55000]",
           "weighted majority mean |S-D| below rational"}};
}

std::optional<ScenarioPreset> find_preset(const std::string& name, std::uint64_t seed) {
  if (name == "sfbp") {
    ScenarioPreset preset = sfbp_preset(100, 60.0);
    preset.config.seed = seed;
    return preset;
  }
  if (name == "paper") return paper_preset(seed);
  return std::nullopt;
}

SimulationResult scenario_sfbp_binary(std::size_t n_agents, Quantity fixed_demand,
                                      std::size_t n_rounds) {
  return run_simulation(sfbp_preset(n_agents, fixed_demand, n_rounds).config);
}

OscillationVerdict detect_oscillation(std::span<const Quantity> trace, std::size_t transient) {
  if (trace.size() <= transient + 4)
    throw StructuralError("detect_oscillation: trace must be longer than transient + 4");
  const std::span<const Quantity> tail = trace.subspan(transient);
  OscillationVerdict verdict;
  verdict.transient_length = transient;
  for (std::size_t p = 1; p <= tail.size() / 2; ++p) {
    bool periodic = true;
    for (std::size_t i = p; i < tail.size() && periodic; ++i) periodic = tail[i] == tail[i - p];
    if (periodic) {
      verdict.period = p;
      verdict.detected = p >= 2;
      return verdict;
    }
  }
  return verdict;
}

PairedRuns run_paired(const ScenarioConfig& base) {
  auto with_learner = [&base](Learner learner) {
    ScenarioConfig config = base;
    config.population.learner = learner;
    for (AgentSpec& a : config.agents) a.learner = learner;
    return config;
  };
  return {run_simulation(with_learner(Learner::kRational)),
          run_simulation(with_learner(Learner::kWeightedMajority))};
}

PairedRuns scenario_paper_replication(std::uint64_t seed) {
  return run_paired(paper_preset(seed).config);
}

std::vector<Quantity> supply_trace(const SimulationResult& result) {
  std::vector<Quantity> trace;
  trace.reserve(result.rounds.size());
  for (const RoundRecord& r : result.rounds) trace.push_back(r.total_supply);
  return trace;
}

}  // namespace potluck
