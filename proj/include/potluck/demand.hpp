#pragma once

#include <span>

#include "potluck/model.hpp"
#include "potluck/rng.hpp"

namespace potluck {

/// N independent draws from U[range.lo, range.hi]. With `integer_draws` the
/// draws are integer-uniform over the integers inside the range.
QuantityVector gen_uniform_demand(std::size_t n_agents, const Interval& range, Stream& rng,
                                  bool integer_draws = false);

/// One draw per agent from that agent's own demand range.
QuantityVector gen_uniform_demand(std::span<const AgentSpec> agents, Stream& rng,
                                  bool integer_draws = false);

/// Equal split of `total`; the last agent takes the rounding remainder so the
/// parts add back to `total`.
QuantityVector gen_fixed_demand(std::size_t n_agents, Quantity total);

/// Total demand max(0, base + amplitude*sin(2*pi*t/period)) split equally,
/// each share perturbed by U[-jitter, jitter] and clamped at zero.
QuantityVector gen_time_varying_demand(std::size_t t, std::size_t n_agents,
                                       const DemandProcess& process, Stream& rng);

/// Dispatches on `process.tag`.
QuantityVector draw_demand(const DemandProcess& process, std::span<const AgentSpec> agents,
                           std::size_t t, Stream& rng);

/// Throws ConfigError if the process parameters violate their invariants.
void validate_demand_process(const DemandProcess& process);

}  // namespace potluck
