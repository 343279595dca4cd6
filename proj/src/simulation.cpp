#include "potluck/simulation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "potluck/demand.hpp"
#include "potluck/predictors.hpp"

namespace potluck {
namespace {

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

void validate_agent(const AgentSpec& spec, std::size_t pool_size) {
  const std::string who = "agent " + std::to_string(spec.id) + ": ";
  if (!finite_nonneg(spec.max_supply)) throw ConfigError(who + "max_supply must be >= 0");
  if (!finite_nonneg(spec.demand_range.lo) || !std::isfinite(spec.demand_range.hi) ||
      spec.demand_range.lo > spec.demand_range.hi)
    throw ConfigError(who + "demand_range must satisfy 0 <= lo <= hi");
  if (spec.learner == Learner::kWeightedMajority &&
      (spec.predictor_pool_size < 1 || spec.predictor_pool_size > pool_size))
    throw ConfigError(who + "predictor_pool_size k must satisfy 1 <= k <= " +
                      std::to_string(pool_size));
}

// FNV-1a over a canonical field sequence.
class Digest {
 public:
  void add(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h_ ^= (v >> (8 * i)) & 0xffU;
      h_ *= 0x100000001b3ULL;
    }
  }
  void add(double v) { add(std::bit_cast<std::uint64_t>(v)); }
  void add(bool v) { add(std::uint64_t{v}); }
  template <typename E>
    requires std::is_enum_v<E>
  void add(E e) { add(static_cast<std::uint64_t>(e)); }
  void add(const Interval& r) { add(r.lo); add(r.hi); }
  std::uint64_t value() const { return h_; }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

}  // namespace

void validate_config(const ScenarioConfig& config) {
  if (config.n_agents < 1) throw ConfigError("n_agents must be >= 1");
  if (config.n_rounds < 1) throw ConfigError("n_rounds must be >= 1");
  if (!(config.beta > 0.0 && config.beta < 1.0)) throw ConfigError("beta must lie in (0,1)");
  if (config.window < 1) throw ConfigError("window must be >= 1");
  if (!(config.upsilon_max >= 1.0) || !std::isfinite(config.upsilon_max))
    throw ConfigError("upsilon_max must be >= 1");
  if (!(config.ratio_floor > 0.0) || !std::isfinite(config.ratio_floor))
    throw ConfigError("ratio_floor must be > 0");
  if (config.prior_demand && !finite_nonneg(*config.prior_demand))
    throw ConfigError("prior_demand must be >= 0");

  for (const PredictorKind& kind : config.predictor_pool) validate_predictor(kind);
  validate_demand_process(config.demand);

  const std::size_t pool = config.predictor_pool.size();
  if (config.agents.empty()) {
    const PopulationRule& rule = config.population;
    if (!finite_nonneg(rule.capacity_lo) || !std::isfinite(rule.capacity_hi) ||
        rule.capacity_lo > rule.capacity_hi)
      throw ConfigError("population: capacity range must satisfy 0 <= lo <= hi");
    if (std::ceil(rule.capacity_lo) > std::floor(rule.capacity_hi))
      throw ConfigError("population: capacity range must contain an integer");
    AgentSpec probe;
    probe.demand_range = rule.demand_range;
    probe.learner = rule.learner;
    probe.predictor_pool_size = rule.predictor_pool_size;
    probe.max_supply = rule.capacity_lo;
    validate_agent(probe, pool);
  } else {
    if (config.agents.size() != config.n_agents)
      throw ConfigError("agents list must have exactly n_agents entries");
    for (std::size_t i = 0; i < config.agents.size(); ++i) {
      if (config.agents[i].id != i) throw ConfigError("agent ids must be 0..n_agents-1 in order");
      validate_agent(config.agents[i], pool);
    }
  }
}

std::vector<AgentSpec> resolve_agents(const ScenarioConfig& config) {
  if (!config.agents.empty()) return config.agents;
  const PopulationRule& rule = config.population;
  Stream setup = Stream::derive(config.seed, {streams::kSetup});
  const auto lo = static_cast<std::int64_t>(std::ceil(rule.capacity_lo));
  const auto hi = static_cast<std::int64_t>(std::floor(rule.capacity_hi));
  std::vector<AgentSpec> agents(config.n_agents);
  for (std::size_t i = 0; i < agents.size(); ++i) {
    agents[i].id = i;
    agents[i].max_supply = static_cast<Quantity>(setup.uniform_int(lo, hi));
    agents[i].demand_range = rule.demand_range;
    agents[i].learner = rule.learner;
    agents[i].predictor_pool_size = rule.predictor_pool_size;
  }
  return agents;
}

Quantity effective_prior_demand(const ScenarioConfig& config, std::span<const AgentSpec> agents) {
  if (config.prior_demand) return *config.prior_demand;
  Quantity prior = 0.0;
  for (const AgentSpec& a : agents) prior += a.demand_range.midpoint();
  return prior;
}

std::vector<AgentState> make_agent_states(const ScenarioConfig& config,
                                          std::span<const AgentSpec> agents) {
  std::vector<AgentState> states;
  states.reserve(agents.size());
  for (const AgentSpec& spec : agents) {
    AgentState state{spec, std::nullopt, {}, {}};
    if (spec.learner == Learner::kWeightedMajority) {
      Stream own = Stream::derive(config.seed, {streams::kAgent, spec.id});
      auto predictors = sample_predictor_set(config.predictor_pool, spec.predictor_pool_size, own);
      for (std::size_t p = 0; p < predictors.size(); ++p)
        state.predictor_streams.push_back(Stream::derive(config.seed, {streams::kPredictor, spec.id, p}));
      state.ensemble = make_ensemble<double>(std::move(predictors), config.beta, config.initial_weights, own);
    }
    states.push_back(std::move(state));
  }
  return states;
}

RoundRecord step_round(const History& history, std::span<AgentState> agents,
                       const QuantityVector& demand_draw, const StepParams& params,
                       std::span<const std::size_t> order) {
  const std::size_t n = agents.size();
  if (n != params.n_agents || static_cast<std::size_t>(demand_draw.size()) != n)
    throw StructuralError("step_round: expected " + std::to_string(params.n_agents) +
                          " agents and demands, got " + std::to_string(n) + " agents and " +
                          std::to_string(demand_draw.size()) + " demands");
  if (!demand_draw.allFinite() || (demand_draw.array() < 0.0).any())
    throw StructuralError("step_round: demands must be finite and >= 0");

  std::vector<std::size_t> sequence(order.begin(), order.end());
  if (sequence.empty()) {
    sequence.resize(n);
    std::iota(sequence.begin(), sequence.end(), std::size_t{0});
  } else {
    std::vector<std::size_t> sorted = sequence;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
      if (sorted.size() != n || sorted[i] != i)
        throw StructuralError("step_round: order must be a permutation of the agents");
  }

  RoundRecord record;
  record.t = history.size();
  record.demands = demand_draw;
  record.total_demand = ordered_sum(demand_draw);
  record.predictions.resize(static_cast<Eigen::Index>(n));
  record.supplies.resize(static_cast<Eigen::Index>(n));

  const PredictionContext context{history, record.t, params.prior_demand, record.total_demand};
  std::vector<QuantityVector> outputs(n);

  // Decisions: read-only over history and agent-local state.
  for (std::size_t i : sequence) {
    AgentState& agent = agents[i];
    const auto row = static_cast<Eigen::Index>(i);
    Quantity prediction = 0.0;
    Quantity supply = 0.0;
    switch (agent.spec.learner) {
      case Learner::kRational:
        prediction = rational_belief(history, params.prior_demand);
        supply = decide_supply(prediction, params.n_agents, agent.spec.max_supply);
        break;
      case Learner::kBinaryRational:
        prediction = rational_belief(history, params.prior_demand);
        supply = (!history.empty() && history.total_supply(history.size() - 1) < prediction) ? 1.0 : 0.0;
        supply = std::min(supply, agent.spec.max_supply);
        break;
      case Learner::kWeightedMajority: {
        EnsembleState<double>& ensemble = *agent.ensemble;
        QuantityVector& out = outputs[i];
        out.resize(static_cast<Eigen::Index>(ensemble.predictors.size()));
        for (std::size_t p = 0; p < ensemble.predictors.size(); ++p)
          out(static_cast<Eigen::Index>(p)) =
              evaluate_predictor(ensemble.predictors[p], context, agent.predictor_streams[p]);
        try {
          prediction = combine_weighted_majority(out, ensemble.weights);
        } catch (const DegenerateEnsembleError&) {
          ensemble.weights.setConstant(1.0 / static_cast<double>(ensemble.weights.size()));
          agent.collapsed_rounds.push_back(record.t);
          prediction = combine_weighted_majority(out, ensemble.weights);
        }
        supply = decide_supply(prediction, params.n_agents, agent.spec.max_supply);
        break;
      }
    }
    record.predictions(row) = prediction;
    record.supplies(row) = supply;
  }
  record.total_supply = ordered_sum(record.supplies);

  // Weight updates only once D_t is revealed.
  for (std::size_t i : sequence) {
    AgentState& agent = agents[i];
    if (!agent.ensemble) continue;
    auto update = update_and_normalize(std::move(*agent.ensemble), outputs[i], record.total_demand,
                                       params.guards);
    agent.ensemble = std::move(update.state);
    if (update.collapsed) agent.collapsed_rounds.push_back(record.t);
  }
  return record;
}

SimulationResult run_simulation(const ScenarioConfig& config) {
  validate_config(config);
  const std::vector<AgentSpec> specs = resolve_agents(config);
  std::vector<AgentState> agents = make_agent_states(config, specs);

  const StepParams params{config.n_agents, effective_prior_demand(config, specs),
                          UpdateGuards<double>{config.ratio_floor, config.upsilon_max}};
  Stream demand_stream = Stream::derive(config.seed, {streams::kDemand});

  History history;
  for (std::size_t t = 0; t < config.n_rounds; ++t) {
    QuantityVector demand = draw_demand(config.demand, specs, t, demand_stream);
    history.append(step_round(history, agents, demand, params));
  }

  SimulationResult result;
  result.config = config;
  result.config_digest = config_digest(config);
  result.rounds = history.records();
  for (const AgentState& agent : agents) {
    if (agent.ensemble) {
      result.agent_predictors.push_back(agent.ensemble->predictors);
      result.final_weights.push_back(agent.ensemble->weights);
    } else {
      result.agent_predictors.emplace_back();
      result.final_weights.emplace_back();
    }
    result.weight_resets.insert(result.weight_resets.end(), agent.collapsed_rounds.begin(),
                                agent.collapsed_rounds.end());
  }
  std::sort(result.weight_resets.begin(), result.weight_resets.end());
  result.weight_resets.erase(std::unique(result.weight_resets.begin(), result.weight_resets.end()),
                             result.weight_resets.end());
  return result;
}

std::uint64_t config_digest(const ScenarioConfig& config) {
  Digest d;
  d.add(std::uint64_t{config.n_agents});
  d.add(std::uint64_t{config.n_rounds});
  d.add(config.seed);
  d.add(config.beta);
  d.add(std::uint64_t{config.window});
  d.add(config.upsilon_max);
  d.add(config.ratio_floor);
  d.add(config.initial_weights);
  d.add(std::uint64_t{config.agents.size()});
  for (const AgentSpec& a : config.agents) {
    d.add(std::uint64_t{a.id});
    d.add(a.max_supply);
    d.add(a.demand_range);
    d.add(a.learner);
    d.add(std::uint64_t{a.predictor_pool_size});
  }
  const PopulationRule& rule = config.population;
  d.add(rule.capacity_lo);
  d.add(rule.capacity_hi);
  d.add(rule.demand_range);
  d.add(rule.learner);
  d.add(std::uint64_t{rule.predictor_pool_size});
  const DemandProcess& dp = config.demand;
  d.add(dp.tag);
  d.add(dp.integer_draws);
  d.add(dp.total);
  d.add(dp.base);
  d.add(dp.amplitude);
  d.add(dp.period);
  d.add(dp.jitter);
  d.add(std::uint64_t{config.predictor_pool.size()});
  for (const PredictorKind& k : config.predictor_pool) {
    d.add(k.tag);
    d.add(std::uint64_t{k.window});
    d.add(k.base);
    d.add(k.amplitude);
    d.add(k.period);
  }
  d.add(config.prior_demand.has_value());
  d.add(config.prior_demand.value_or(0.0));
  return d.value();
}

}  // namespace potluck
