#pragma once

#include <span>
#include <vector>

#include "potluck/model.hpp"
#include "potluck/rng.hpp"

namespace potluck {

// Each predictor forecasts next round's total demand D_t. With an empty
// history the window-based and rational predictors return `prior`.

/// Mean of the last min(window, history.size()) total demands.
Quantity predict_mean_window(const History& history, std::size_t window, Quantity prior);

/// One of the last min(window, history.size()) total demands, chosen
/// uniformly.
Quantity predict_random_window(const History& history, std::size_t window, Quantity prior,
                               Stream& rng);

/// D_{t-1}.
Quantity predict_rational(const History& history, Quantity prior);

/// The true demand of the round being predicted, supplied by the engine.
Quantity predict_oracle(Quantity upcoming_demand);

/// max(0, base + amplitude * sin(2*pi*t / period)).
Quantity predict_time_varying(std::size_t t, Quantity base, Quantity amplitude, double period);

/// What a predictor may see when forecasting round `t`. `upcoming_demand` is
/// read by the oracle alone.
struct PredictionContext {
  const History& history;
  std::size_t t = 0;
  Quantity prior = 0.0;
  Quantity upcoming_demand = 0.0;
};

Quantity evaluate_predictor(const PredictorKind& kind, const PredictionContext& context,
                            Stream& rng);

/// Throws ConfigError if the predictor's parameters are out of range.
void validate_predictor(const PredictorKind& kind);

/// k distinct pool entries, sampled without replacement. Throws ConfigError
/// unless 1 <= k <= pool.size().
std::vector<PredictorKind> sample_predictor_set(std::span<const PredictorKind> pool,
                                                std::size_t k, Stream& rng);

}  // namespace potluck
