#pragma once

// Domain types shared by every part of the simulator: agents, predictors,
// demand processes, scenario configuration and the per-round ledger.

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace potluck {

using Quantity = double;
using QuantityVector = Eigen::VectorXd;

/// Left-to-right sum of the coefficients. Unlike DenseBase::sum() the result
/// does not depend on the SIMD width, so aggregates are identical on every
/// platform.
template <typename Derived>
typename Derived::Scalar ordered_sum(const Eigen::DenseBase<Derived>& v) {
  typename Derived::Scalar total(0);
  for (Eigen::Index i = 0; i < v.size(); ++i) total += v.derived().coeff(i);
  return total;
}

/// Raised when a configuration violates one of its invariants. The message
/// names the violated invariant.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised on shape mismatches between arguments (lengths, round counts).
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when two runs cannot be compared because they are not paired.
class ComparisonError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Interval {
  Quantity lo = 0.0;
  Quantity hi = 0.0;

  Quantity midpoint() const { return lo + (hi - lo) / 2.0; }
  bool contains(Quantity q) const { return q >= lo && q <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class Learner {
  kRational,          // best reply: P = D_{t-1}, fair-share supply
  kWeightedMajority,  // predictor ensemble with multiplicative weights
  kBinaryRational,    // best reply restricted to the strategy set {0, 1}
};

struct AgentSpec {
  std::size_t id = 0;
  Quantity max_supply = 0.0;
  Interval demand_range;
  Learner learner = Learner::kRational;
  std::size_t predictor_pool_size = 5;

  friend bool operator==(const AgentSpec&, const AgentSpec&) = default;
};

enum class PredictorTag {
  kMeanWindow,
  kRandomWindow,
  kRational,
  kOracle,
  kTimeVarying,
};

/// One entry of the global predictor pool. `window` applies to the two window
/// predictors; `base`, `amplitude` and `period` to the time-varying one.
struct PredictorKind {
  PredictorTag tag = PredictorTag::kMeanWindow;
  std::size_t window = 10;
  Quantity base = 0.0;
  Quantity amplitude = 0.0;
  double period = 1.0;

  friend bool operator==(const PredictorKind&, const PredictorKind&) = default;
};

enum class DemandTag {
  kUniformPerAgent,   // d_{i,t} ~ U(agent i's demand_range)
  kFixedTotal,        // D_t = total for every t, split equally
  kTimeVaryingTotal,  // D_t follows a clamped sinusoid, per-agent jitter
};

struct DemandProcess {
  DemandTag tag = DemandTag::kUniformPerAgent;
  bool integer_draws = false;
  Quantity total = 0.0;
  Quantity base = 0.0;
  Quantity amplitude = 0.0;
  double period = 1.0;
  Quantity jitter = 0.0;

  friend bool operator==(const DemandProcess&, const DemandProcess&) = default;
};

enum class InitialWeights { kUniform, kRandom };

/// Rule for generating a homogeneous population when no explicit agent list
/// is given. Capacities are integer-uniform in [capacity_lo, capacity_hi].
struct PopulationRule {
  Quantity capacity_lo = 500.0;
  Quantity capacity_hi = 1000.0;
  Interval demand_range{0.0, 1000.0};
  Learner learner = Learner::kWeightedMajority;
  std::size_t predictor_pool_size = 5;

  friend bool operator==(const PopulationRule&, const PopulationRule&) = default;
};

struct ScenarioConfig {
  std::size_t n_agents = 1;
  std::size_t n_rounds = 1;
  std::uint64_t seed = 0;
  double beta = 0.5;
  std::size_t window = 10;
  double upsilon_max = 10.0;
  double ratio_floor = 1e-9;
  InitialWeights initial_weights = InitialWeights::kUniform;

  // Either an explicit agent list (size n_agents) or, when empty, the
  // population rule below.
  std::vector<AgentSpec> agents;
  PopulationRule population;

  DemandProcess demand;
  std::vector<PredictorKind> predictor_pool;

  // Output of every predictor while the history is empty. Defaults to the sum
  // of the agents' demand-range midpoints.
  std::optional<Quantity> prior_demand;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// The five stock predictors with the given window. The time-varying entry
/// oscillates ±10% around `level` with a 52-round period.
std::vector<PredictorKind> stock_predictor_pool(std::size_t window, Quantity level);

struct RoundRecord {
  std::size_t t = 0;
  QuantityVector demands;
  QuantityVector predictions;
  QuantityVector supplies;
  Quantity total_demand = 0.0;
  Quantity total_supply = 0.0;
};

/// Append-only ledger of completed rounds. Predictors read the aggregates
/// only; the per-agent vectors are kept for reporting.
class History {
 public:
  History() = default;

  /// Appends the next round. Throws StructuralError if `record.t` is not the
  /// next index.
  void append(RoundRecord record);

  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  Quantity total_demand(std::size_t t) const { return records_.at(t).total_demand; }
  Quantity total_supply(std::size_t t) const { return records_.at(t).total_supply; }

  /// D values of the last min(window, size()) rounds, oldest first.
  std::vector<Quantity> recent_demands(std::size_t window) const;

  const std::vector<RoundRecord>& records() const { return records_; }

 private:
  std::vector<RoundRecord> records_;
};

struct SimulationResult {
  ScenarioConfig config;
  std::uint64_t config_digest = 0;
  std::vector<RoundRecord> rounds;
  std::vector<std::vector<PredictorKind>> agent_predictors;
  std::vector<QuantityVector> final_weights;
  // Rounds in which some agent's ensemble weights collapsed and were reset to
  // uniform.
  std::vector<std::size_t> weight_resets;
};

std::string to_string(Learner learner);
std::string to_string(PredictorTag tag);
std::string to_string(DemandTag tag);
std::string to_string(InitialWeights mode);

}  // namespace potluck
