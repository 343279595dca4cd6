#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "potluck/model.hpp"

namespace potluck {

struct RunStats {
  std::size_t rounds = 0;
  Quantity mean_total_demand = 0.0;
  Quantity mean_total_supply = 0.0;
  Quantity mean_abs_gap = 0.0;
  Quantity max_abs_gap = 0.0;
  std::size_t starvation_rounds = 0;
  std::size_t excess_rounds = 0;
  std::size_t equilibrium_rounds = 0;
};

/// Throws StructuralError for an empty result.
RunStats run_stats(const SimulationResult& result);
RunStats run_stats(std::span<const RoundRecord> rounds);

/// Paired comparison of learner A against learner B.
///
/// outperform_fraction counts rounds where |gap_A| < |gap_B| strictly.
/// mean_improvement is 1 - mean|gap_A| / mean|gap_B|. best_improvement is the
/// largest per-round 1 - |gap_A|/|gap_B| over rounds with gap_B != 0; those
/// zero rounds are counted in `excluded_rounds`.
struct ComparisonReport {
  std::size_t rounds = 0;
  std::size_t wins_a = 0;
  std::size_t wins_b = 0;
  std::size_t ties = 0;
  double outperform_fraction = 0.0;
  double mean_improvement = 0.0;
  double best_improvement = 0.0;
  std::size_t excluded_rounds = 0;
  std::vector<Quantity> gaps_a;
  std::vector<Quantity> gaps_b;
};

/// Throws StructuralError on round-count mismatch and ComparisonError when the
/// two runs did not see identical demand matrices.
ComparisonReport compare_runs(const SimulationResult& a, const SimulationResult& b);

/// Comparison from two signed gap series; used when demands are already
/// known to be paired.
ComparisonReport compare_gaps(std::span<const Quantity> gaps_a, std::span<const Quantity> gaps_b);

/// Summary over several paired seeds; `best_mean_improvement` is the
/// best-over-seeds reading of the "best case" statistic.
struct SweepSummary {
  std::size_t seeds = 0;
  double median_outperform_fraction = 0.0;
  double min_outperform_fraction = 0.0;
  double median_mean_improvement = 0.0;
  double best_mean_improvement = 0.0;
  double median_best_improvement = 0.0;
};

SweepSummary summarize_sweep(std::span<const ComparisonReport> reports);

double median(std::vector<double> values);

}  // namespace potluck
