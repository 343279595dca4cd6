#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "potluck/learning.hpp"
#include "potluck/model.hpp"
#include "potluck/rng.hpp"

namespace potluck {

/// Mutable per-agent state carried across rounds. Only the owning agent's
/// step touches it.
struct AgentState {
  AgentSpec spec;
  std::optional<EnsembleState<double>> ensemble;  // weighted-majority agents only
  std::vector<Stream> predictor_streams;          // one per ensemble slot
  std::vector<std::size_t> collapsed_rounds;
};

/// Per-round constants shared by all agents.
struct StepParams {
  std::size_t n_agents = 1;
  Quantity prior_demand = 0.0;
  UpdateGuards<double> guards;
};

/// Throws ConfigError naming the first violated invariant.
void validate_config(const ScenarioConfig& config);

/// Explicit agents, or agents generated from the population rule. Capacities
/// come from the setup stream of `config.seed`.
std::vector<AgentSpec> resolve_agents(const ScenarioConfig& config);

/// The configured prior, or the sum of the agents' demand-range midpoints.
Quantity effective_prior_demand(const ScenarioConfig& config, std::span<const AgentSpec> agents);

/// Builds agent states: samples each weighted-majority agent's predictors and
/// initial weights from its own stream.
std::vector<AgentState> make_agent_states(const ScenarioConfig& config,
                                          std::span<const AgentSpec> agents);

/// Plays one round. Every agent predicts from `history` alone (the oracle
/// also sees this round's true total), chooses its supply, then after the
/// aggregates are known the weighted-majority agents update their weights.
/// `order` permutes the evaluation order of agents; it never changes the
/// record.
RoundRecord step_round(const History& history, std::span<AgentState> agents,
                       const QuantityVector& demand_draw, const StepParams& params,
                       std::span<const std::size_t> order = {});

SimulationResult run_simulation(const ScenarioConfig& config);

/// S_t - D_t: negative under starvation, positive under excess.
inline Quantity parity_gap(const RoundRecord& record) {
  return record.total_supply - record.total_demand;
}

/// Stable 64-bit digest of every field of the config.
std::uint64_t config_digest(const ScenarioConfig& config);

}  // namespace potluck
