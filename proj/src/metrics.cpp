#include "potluck/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "potluck/simulation.hpp"

namespace potluck {

RunStats run_stats(const SimulationResult& result) { return run_stats(result.rounds); }

RunStats run_stats(std::span<const RoundRecord> rounds) {
  if (rounds.empty()) throw StructuralError("run_stats: result has no rounds");
  RunStats s;
  s.rounds = rounds.size();
  Quantity demand = 0.0, supply = 0.0, abs_gap = 0.0;
  for (const RoundRecord& r : rounds) {
    const Quantity gap = parity_gap(r);
    demand += r.total_demand;
    supply += r.total_supply;
    abs_gap += std::abs(gap);
    s.max_abs_gap = std::max(s.max_abs_gap, std::abs(gap));
    if (gap < 0.0)
      ++s.starvation_rounds;
    else if (gap > 0.0)
      ++s.excess_rounds;
    else
      ++s.equilibrium_rounds;
  }
  const auto n = static_cast<Quantity>(rounds.size());
  s.mean_total_demand = demand / n;
  s.mean_total_supply = supply / n;
  s.mean_abs_gap = abs_gap / n;
  return s;
}

ComparisonReport compare_gaps(std::span<const Quantity> gaps_a, std::span<const Quantity> gaps_b) {
  if (gaps_a.size() != gaps_b.size())
    throw StructuralError("compare: runs have different round counts");
  ComparisonReport report;
  report.rounds = gaps_a.size();
  report.gaps_a.assign(gaps_a.begin(), gaps_a.end());
  report.gaps_b.assign(gaps_b.begin(), gaps_b.end());
  if (report.rounds == 0) return report;

  Quantity sum_a = 0.0, sum_b = 0.0;
  bool any_relative = false;
  double best = 0.0;
  for (std::size_t t = 0; t < report.rounds; ++t) {
    const Quantity a = std::abs(gaps_a[t]);
    const Quantity b = std::abs(gaps_b[t]);
    sum_a += a;
    sum_b += b;
    if (a < b)
      ++report.wins_a;
    else if (b < a)
      ++report.wins_b;
    else
      ++report.ties;
    if (b == 0.0) {
      ++report.excluded_rounds;
      continue;
    }
    const double improvement = 1.0 - a / b;
    best = any_relative ? std::max(best, improvement) : improvement;
    any_relative = true;
  }
  report.outperform_fraction = static_cast<double>(report.wins_a) / static_cast<double>(report.rounds);
  if (sum_b > 0.0)
    report.mean_improvement = 1.0 - sum_a / sum_b;
  else
    report.mean_improvement = sum_a > 0.0 ? -std::numeric_limits<double>::infinity() : 0.0;
  report.best_improvement = best;
  return report;
}

ComparisonReport compare_runs(const SimulationResult& a, const SimulationResult& b) {
  if (a.rounds.size() != b.rounds.size())
    throw StructuralError("compare: runs have different round counts");
  std::vector<Quantity> gaps_a, gaps_b;
  gaps_a.reserve(a.rounds.size());
  gaps_b.reserve(b.rounds.size());
  for (std::size_t t = 0; t < a.rounds.size(); ++t) {
    const RoundRecord& ra = a.rounds[t];
    const RoundRecord& rb = b.rounds[t];
    if (ra.demands.size() != rb.demands.size() || ra.demands != rb.demands)
      throw ComparisonError("compare: runs are not paired (demands differ at round " +
                            std::to_string(t) + ")");
    gaps_a.push_back(parity_gap(ra));
    gaps_b.push_back(parity_gap(rb));
  }
  return compare_gaps(gaps_a, gaps_b);
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : (values[mid - 1] + values[mid]) / 2.0;
}

SweepSummary summarize_sweep(std::span<const ComparisonReport> reports) {
  SweepSummary s;
  s.seeds = reports.size();
  if (reports.empty()) return s;
  std::vector<double> outperform, mean_imp, best_imp;
  for (const ComparisonReport& r : reports) {
    outperform.push_back(r.outperform_fraction);
    mean_imp.push_back(r.mean_improvement);
    best_imp.push_back(r.best_improvement);
  }
  s.min_outperform_fraction = *std::min_element(outperform.begin(), outperform.end());
  s.best_mean_improvement = *std::max_element(mean_imp.begin(), mean_imp.end());
  s.median_outperform_fraction = median(std::move(outperform));
  s.median_mean_improvement = median(std::move(mean_imp));
  s.median_best_improvement = median(std::move(best_imp));
  return s;
}

}  // namespace potluck
