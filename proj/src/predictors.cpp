#include "potluck/predictors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace potluck {

Quantity predict_mean_window(const History& history, std::size_t window, Quantity prior) {
  const std::vector<Quantity> recent = history.recent_demands(window);
  if (recent.empty()) return prior;
  const Quantity mean =
      std::accumulate(recent.begin(), recent.end(), Quantity(0)) / static_cast<Quantity>(recent.size());
  const auto [lo, hi] = std::minmax_element(recent.begin(), recent.end());
  return std::clamp(mean, *lo, *hi);
}

Quantity predict_random_window(const History& history, std::size_t window, Quantity prior,
                               Stream& rng) {
  const std::vector<Quantity> recent = history.recent_demands(window);
  if (recent.empty()) return prior;
  return recent[rng.index(recent.size())];
}

Quantity predict_rational(const History& history, Quantity prior) {
  if (history.empty()) return prior;
  return history.total_demand(history.size() - 1);
}

Quantity predict_oracle(Quantity upcoming_demand) { return upcoming_demand; }

Quantity predict_time_varying(std::size_t t, Quantity base, Quantity amplitude, double period) {
  const double phase = 2.0 * std::numbers::pi * static_cast<double>(t) / period;
  return std::max(Quantity(0), base + amplitude * std::sin(phase));
}

Quantity evaluate_predictor(const PredictorKind& kind, const PredictionContext& context,
                            Stream& rng) {
  switch (kind.tag) {
    case PredictorTag::kMeanWindow:
      return predict_mean_window(context.history, kind.window, context.prior);
    case PredictorTag::kRandomWindow:
      return predict_random_window(context.history, kind.window, context.prior, rng);
    case PredictorTag::kRational:
      return predict_rational(context.history, context.prior);
    case PredictorTag::kOracle:
      return predict_oracle(context.upcoming_demand);
    case PredictorTag::kTimeVarying:
      return predict_time_varying(context.t, kind.base, kind.amplitude, kind.period);
  }
  return context.prior;
}

void validate_predictor(const PredictorKind& kind) {
  const std::string name = to_string(kind.tag);
  switch (kind.tag) {
    case PredictorTag::kMeanWindow:
    case PredictorTag::kRandomWindow:
      if (kind.window < 1) throw ConfigError(name + ": window must be >= 1");
      break;
    case PredictorTag::kTimeVarying:
      if (!(kind.period > 0.0) || !std::isfinite(kind.period))
        throw ConfigError(name + ": period must be > 0");
      if (!(kind.amplitude >= 0.0) || !std::isfinite(kind.amplitude))
        throw ConfigError(name + ": amplitude must be >= 0");
      if (!(kind.base >= 0.0) || !std::isfinite(kind.base))
        throw ConfigError(name + ": base must be >= 0");
      break;
    case PredictorTag::kRational:
    case PredictorTag::kOracle:
      break;
  }
}

std::vector<PredictorKind> sample_predictor_set(std::span<const PredictorKind> pool,
                                                std::size_t k, Stream& rng) {
  if (k < 1 || k > pool.size())
    throw ConfigError("predictor_pool_size k must satisfy 1 <= k <= " + std::to_string(pool.size()) +
                      ", got " + std::to_string(k));
  // Partial Fisher-Yates over pool indices.
  std::vector<std::size_t> idx(pool.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::vector<PredictorKind> chosen;
  chosen.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.index(pool.size() - i);
    std::swap(idx[i], idx[j]);
    chosen.push_back(pool[idx[i]]);
  }
  return chosen;
}

}  // namespace potluck
