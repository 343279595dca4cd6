#include "potluck/demand.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace potluck {
namespace {

Quantity draw_one(const Interval& range, Stream& rng, bool integer_draws) {
  if (integer_draws) {
    const auto lo = static_cast<std::int64_t>(std::ceil(range.lo));
    const auto hi = static_cast<std::int64_t>(std::floor(range.hi));
    if (lo > hi) return range.lo;  // no integer inside the range
    return static_cast<Quantity>(rng.uniform_int(lo, hi));
  }
  if (range.lo == range.hi) return range.lo;
  return rng.uniform(range.lo, range.hi);
}

}  // namespace

QuantityVector gen_uniform_demand(std::size_t n_agents, const Interval& range, Stream& rng,
                                  bool integer_draws) {
  QuantityVector out(static_cast<Eigen::Index>(n_agents));
  for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = draw_one(range, rng, integer_draws);
  return out;
}

QuantityVector gen_uniform_demand(std::span<const AgentSpec> agents, Stream& rng,
                                  bool integer_draws) {
  QuantityVector out(static_cast<Eigen::Index>(agents.size()));
  for (std::size_t i = 0; i < agents.size(); ++i)
    out(static_cast<Eigen::Index>(i)) = draw_one(agents[i].demand_range, rng, integer_draws);
  return out;
}

QuantityVector gen_fixed_demand(std::size_t n_agents, Quantity total) {
  const auto n = static_cast<Eigen::Index>(n_agents);
  QuantityVector out = QuantityVector::Constant(n, total / static_cast<Quantity>(n_agents));
  if (n > 1) out(n - 1) = std::max(Quantity(0), total - ordered_sum(out.head(n - 1)));
  return out;
}

QuantityVector gen_time_varying_demand(std::size_t t, std::size_t n_agents,
                                       const DemandProcess& process, Stream& rng) {
  const double phase = 2.0 * std::numbers::pi * static_cast<double>(t) / process.period;
  const Quantity total = std::max(Quantity(0), process.base + process.amplitude * std::sin(phase));
  QuantityVector out = gen_fixed_demand(n_agents, total);
  if (process.jitter > 0.0) {
    for (Eigen::Index i = 0; i < out.size(); ++i)
      out(i) = std::max(Quantity(0), out(i) + rng.uniform(-process.jitter, process.jitter));
  }
  return out;
}

QuantityVector draw_demand(const DemandProcess& process, std::span<const AgentSpec> agents,
                           std::size_t t, Stream& rng) {
  switch (process.tag) {
    case DemandTag::kUniformPerAgent:
      return gen_uniform_demand(agents, rng, process.integer_draws);
    case DemandTag::kFixedTotal:
      return gen_fixed_demand(agents.size(), process.total);
    case DemandTag::kTimeVaryingTotal:
      return gen_time_varying_demand(t, agents.size(), process, rng);
  }
  return QuantityVector::Zero(static_cast<Eigen::Index>(agents.size()));
}

void validate_demand_process(const DemandProcess& process) {
  auto finite_nonneg = [](double v) { return std::isfinite(v) && v >= 0.0; };
  switch (process.tag) {
    case DemandTag::kUniformPerAgent:
      break;
    case DemandTag::kFixedTotal:
      if (!finite_nonneg(process.total)) throw ConfigError("demand.total must be >= 0");
      break;
    case DemandTag::kTimeVaryingTotal:
      if (!(process.period > 0.0) || !std::isfinite(process.period))
        throw ConfigError("demand.period must be > 0");
      if (!finite_nonneg(process.base)) throw ConfigError("demand.base must be >= 0");
      if (!finite_nonneg(process.amplitude)) throw ConfigError("demand.amplitude must be >= 0");
      if (!finite_nonneg(process.jitter)) throw ConfigError("demand.jitter must be >= 0");
      break;
  }
}

}  // namespace potluck
