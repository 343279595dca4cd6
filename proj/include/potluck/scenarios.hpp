#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "potluck/model.hpp"

namespace potluck {

struct ScenarioPreset {
  std::string name;
  ScenarioConfig config;
  std::vector<std::string> expected_properties;
};

/// All-rational agents with strategy set {0, 1} against a fixed total demand
/// `fixed_demand`. Requires 0 < fixed_demand < n_agents.
ScenarioPreset sfbp_preset(std::size_t n_agents, Quantity fixed_demand, std::size_t n_rounds = 50);

/// 100 agents, integer capacities in [500, 1000], demand U[0, 1000] per agent,
/// 1000 rounds, the five stock predictors with k = 5.
ScenarioPreset paper_preset(std::uint64_t seed, Learner learner = Learner::kWeightedMajority);

/// Looks up "sfbp" or "paper". Returns nullopt for unknown names.
std::optional<ScenarioPreset> find_preset(const std::string& name, std::uint64_t seed);

SimulationResult scenario_sfbp_binary(std::size_t n_agents, Quantity fixed_demand,
                                      std::size_t n_rounds = 50);

struct OscillationVerdict {
  bool detected = false;
  std::optional<std::size_t> period;
  std::size_t transient_length = 0;
};

/// Smallest p <= (trace.size() - transient) / 2 for which the post-transient
/// trace is exactly p-periodic. Period 1 is reported with detected = false.
/// Throws StructuralError unless trace.size() > transient + 4.
OscillationVerdict detect_oscillation(std::span<const Quantity> trace, std::size_t transient);

struct PairedRuns {
  SimulationResult rational;
  SimulationResult weighted_majority;
};

/// Runs `base` twice, once per learner, against the same demand stream.
PairedRuns run_paired(const ScenarioConfig& base);

PairedRuns scenario_paper_replication(std::uint64_t seed);

/// S_t series of a result.
std::vector<Quantity> supply_trace(const SimulationResult& result);

}  // namespace potluck
