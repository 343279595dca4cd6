#pragma once

// Weighted-majority ensemble learning, the rational (best-reply) baseline,
// the supply decision rule and the epsilon-predictive check.
//
// The numeric kernels are templated on the scalar type and accept any Eigen
// dense expression, so callers can pass vectors, blocks or maps directly.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "potluck/model.hpp"
#include "potluck/rng.hpp"

namespace potluck {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Raised when an ensemble's weights sum to zero.
class DegenerateEnsembleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Weighted average sum(W*O) / sum(W), clamped into [min O, max O] so the
/// result is convex even under rounding.
template <typename DerivedO, typename DerivedW>
typename DerivedO::Scalar combine_weighted_majority(const Eigen::MatrixBase<DerivedO>& outputs,
                                                    const Eigen::MatrixBase<DerivedW>& weights) {
  using Scalar = typename DerivedO::Scalar;
  if (outputs.size() == 0 || outputs.size() != weights.size())
    throw StructuralError("combine_weighted_majority: outputs and weights must have equal nonzero length");
  if ((weights.array() < Scalar(0)).any())
    throw DegenerateEnsembleError("combine_weighted_majority: negative weight");
  const Scalar total = ordered_sum(weights);
  if (!(total > Scalar(0)))
    throw DegenerateEnsembleError("combine_weighted_majority: weights sum to zero");
  const Scalar value = ordered_sum(outputs.cwiseProduct(weights.template cast<Scalar>())) / total;
  return std::clamp(value, outputs.minCoeff(), outputs.maxCoeff());
}

template <typename Scalar>
struct UpdateFactor {
  Scalar upsilon;  // max(O/D, D/O), clamped to [1, upsilon_max]
  Scalar factor;   // beta^upsilon
};

/// Guards for the ratio O/D when either side is (near) zero.
template <typename Scalar>
struct UpdateGuards {
  Scalar ratio_floor = Scalar(1e-9);
  Scalar upsilon_max = Scalar(10);
};

/// Penalty for a predictor that forecast `prediction` when `actual` occurred.
/// Both sides are floored at `ratio_floor` before taking the ratio.
template <typename Scalar>
UpdateFactor<Scalar> weight_update_factor(Scalar prediction, Scalar actual, Scalar beta,
                                          const UpdateGuards<Scalar>& guards = {}) {
  const Scalar o = std::max(prediction, guards.ratio_floor);
  const Scalar d = std::max(actual, guards.ratio_floor);
  const Scalar ratio = o / d;
  Scalar upsilon = ratio > Scalar(1) ? ratio : d / o;
  upsilon = std::clamp(upsilon, Scalar(1), guards.upsilon_max);
  return {upsilon, std::pow(beta, upsilon)};
}

template <typename Scalar>
struct EnsembleState {
  std::vector<PredictorKind> predictors;
  Vector<Scalar> weights;
  Scalar beta = Scalar(0.5);
};

template <typename Scalar>
EnsembleState<Scalar> make_ensemble(std::vector<PredictorKind> predictors, Scalar beta,
                                    InitialWeights mode, Stream& rng) {
  const auto k = static_cast<Eigen::Index>(predictors.size());
  if (k == 0) throw ConfigError("ensemble needs at least one predictor");
  Vector<Scalar> weights(k);
  if (mode == InitialWeights::kUniform) {
    weights.setConstant(Scalar(1) / Scalar(k));
  } else {
    // Strictly positive: uniform on [1, 2) before normalization.
    for (Eigen::Index p = 0; p < k; ++p) weights(p) = Scalar(1) + Scalar(rng.uniform01());
    weights /= ordered_sum(weights);
  }
  return {std::move(predictors), std::move(weights), beta};
}

template <typename Scalar>
struct WeightUpdate {
  EnsembleState<Scalar> state;
  bool collapsed = false;  // unnormalized sum underflowed; reset to uniform
};

/// Multiplies each weight by beta^upsilon for its predictor, then divides by
/// the sum. Normalized weights are floored at the smallest normal value so
/// that no predictor is ever eliminated.
template <typename Scalar, typename DerivedO>
WeightUpdate<Scalar> update_and_normalize(EnsembleState<Scalar> state,
                                          const Eigen::MatrixBase<DerivedO>& outputs,
                                          Scalar actual,
                                          const UpdateGuards<Scalar>& guards = {}) {
  const Eigen::Index k = state.weights.size();
  if (outputs.size() != k)
    throw StructuralError("update_and_normalize: expected one output per predictor");

  for (Eigen::Index p = 0; p < k; ++p)
    state.weights(p) *= weight_update_factor<Scalar>(outputs(p), actual, state.beta, guards).factor;

  WeightUpdate<Scalar> result{std::move(state), false};
  Vector<Scalar>& w = result.state.weights;
  const Scalar total = ordered_sum(w);
  if (!(total > Scalar(0)) || !std::isfinite(total)) {
    w.setConstant(Scalar(1) / Scalar(k));
    result.collapsed = true;
    return result;
  }
  w /= total;
  const Scalar floor = std::numeric_limits<Scalar>::min();
  if ((w.array() < floor).any()) {
    w = w.cwiseMax(floor);
    w /= ordered_sum(w);
  }
  return result;
}

/// Fair share of the predicted demand, limited by the agent's capacity.
inline Quantity decide_supply(Quantity prediction, std::size_t n_agents, Quantity max_supply) {
  return std::clamp(prediction / static_cast<Quantity>(n_agents), Quantity(0), max_supply);
}

/// Best-reply belief: D_{t-1}, or `prior` before the first round.
Quantity rational_belief(const History& history, Quantity prior);

struct EpsilonCheck {
  double epsilon = 0.0;
  std::vector<bool> satisfied;

  bool holds() const { return std::all_of(satisfied.begin(), satisfied.end(), [](bool b) { return b; }); }
};

/// Per-round |P_t - D_t| <= epsilon. Throws StructuralError on length
/// mismatch and ConfigError for negative epsilon.
EpsilonCheck is_epsilon_predictive(std::span<const Quantity> predictions,
                                   std::span<const Quantity> actuals, double epsilon);

}  // namespace potluck
