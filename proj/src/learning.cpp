#include "potluck/learning.hpp"

#include <cmath>

#include "potluck/predictors.hpp"

namespace potluck {

Quantity rational_belief(const History& history, Quantity prior) {
  return predict_rational(history, prior);
}

EpsilonCheck is_epsilon_predictive(std::span<const Quantity> predictions,
                                   std::span<const Quantity> actuals, double epsilon) {
  if (predictions.size() != actuals.size())
    throw StructuralError("is_epsilon_predictive: predictions and actuals differ in length");
  if (!(epsilon >= 0.0)) throw ConfigError("epsilon must be >= 0");
  EpsilonCheck check{epsilon, std::vector<bool>(predictions.size())};
  for (std::size_t t = 0; t < predictions.size(); ++t)
    check.satisfied[t] = std::abs(predictions[t] - actuals[t]) <= epsilon;
  return check;
}

}  // namespace potluck
