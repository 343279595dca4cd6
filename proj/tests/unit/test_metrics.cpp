#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "potluck/metrics.hpp"
#include "potluck/rng.hpp"
#include "potluck/scenarios.hpp"

using namespace potluck;

namespace {

RoundRecord record(std::size_t t, Quantity supply, Quantity demand) {
  RoundRecord r;
  r.t = t;
  r.total_supply = supply;
  r.total_demand = demand;
  r.demands = QuantityVector::Constant(1, demand);
  r.supplies = QuantityVector::Constant(1, supply);
  r.predictions = QuantityVector::Zero(1);
  return r;
}

SimulationResult result_with_gaps(const std::vector<Quantity>& gaps) {
  SimulationResult r;
  for (std::size_t t = 0; t < gaps.size(); ++t) r.rounds.push_back(record(t, 100 + gaps[t], 100));
  return r;
}

}  // namespace

TEST_CASE("run_stats") {
  std::vector<RoundRecord> one{record(0, 7, 6)};
  RunStats s = run_stats(one);
  CHECK(s.mean_abs_gap == 1.0);
  CHECK(s.excess_rounds == 1);

  std::vector<RoundRecord> eq{record(0, 5, 5), record(1, 9, 9)};
  s = run_stats(eq);
  CHECK(s.mean_abs_gap == 0.0);
  CHECK(s.equilibrium_rounds == 2);

  s = run_stats(result_with_gaps({-2, 0, 4}));
  CHECK(s.mean_abs_gap == 2.0);
  CHECK(s.max_abs_gap == 4.0);
  CHECK(s.starvation_rounds == 1);
  CHECK(s.equilibrium_rounds == 1);
  CHECK(s.excess_rounds == 1);
  CHECK(s.mean_total_demand == 100.0);

  CHECK_THROWS_AS(run_stats(SimulationResult{}), StructuralError);
}

TEST_CASE("compare_runs") {
  ComparisonReport r = compare_runs(result_with_gaps({1, 1}), result_with_gaps({2, 2}));
  CHECK(r.outperform_fraction == 1.0);
  CHECK(r.mean_improvement == 0.5);
  CHECK(r.best_improvement == 0.5);

  r = compare_runs(result_with_gaps({1, -3}), result_with_gaps({2, 2}));
  CHECK(r.outperform_fraction == 0.5);
  CHECK(r.mean_improvement == 0.0);
  CHECK(r.best_improvement == 0.5);

  r = compare_runs(result_with_gaps({0, 5}), result_with_gaps({0, 10}));
  CHECK(r.excluded_rounds == 1);
  CHECK(r.best_improvement == 0.5);

  SimulationResult a = result_with_gaps({1, 2});
  SimulationResult b = result_with_gaps({1, 2});
  b.rounds[1].demands(0) = 7;
  CHECK_THROWS_AS(compare_runs(a, b), ComparisonError);
  CHECK_THROWS_AS(compare_runs(a, result_with_gaps({1})), StructuralError);
}

TEST_CASE("comparison properties on a real paired run") {
  const PairedRuns runs = run_paired([] {
    ScenarioConfig c = paper_preset(11).config;
    c.n_rounds = 200;
    return c;
  }());
  const ComparisonReport self = compare_runs(runs.rational, runs.rational);
  CHECK(self.outperform_fraction == 0.0);
  CHECK(self.mean_improvement == 0.0);
  CHECK(self.best_improvement == 0.0);

  const ComparisonReport ab = compare_runs(runs.weighted_majority, runs.rational);
  const ComparisonReport ba = compare_runs(runs.rational, runs.weighted_majority);
  CHECK(ab.wins_a == ba.wins_b);
  CHECK(ab.wins_b == ba.wins_a);
  CHECK(ab.wins_a + ab.wins_b + ab.ties == ab.rounds);
  CHECK(ab.outperform_fraction >= 0.0);
  CHECK(ab.outperform_fraction <= 1.0);
  CHECK(ab.gaps_a.size() == ab.gaps_b.size());
}

TEST_CASE("mean_abs_gap is zero only at equilibrium everywhere") {
  Stream gen(1);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Quantity> gaps;
    bool all_zero = true;
    for (int t = 0; t < 10; ++t) {
      const Quantity g = gen.uniform01() < 0.8 ? 0.0 : gen.uniform(-5, 5);
      all_zero = all_zero && g == 0.0;
      gaps.push_back(g);
    }
    const RunStats s = run_stats(result_with_gaps(gaps));
    CHECK(s.mean_abs_gap >= 0.0);
    CHECK((s.mean_abs_gap == 0.0) == all_zero);
    CHECK(s.starvation_rounds + s.excess_rounds + s.equilibrium_rounds == s.rounds);
  }
}

TEST_CASE("sweep summary") {
  CHECK(median({3, 1, 2}) == 2.0);
  CHECK(median({4, 1, 2, 3}) == 2.5);
  std::vector<ComparisonReport> reports(3);
  reports[0].outperform_fraction = 0.9;
  reports[1].outperform_fraction = 0.8;
  reports[2].outperform_fraction = 1.0;
  reports[0].mean_improvement = 0.1;
  reports[1].mean_improvement = 0.4;
  reports[2].mean_improvement = 0.2;
  const SweepSummary s = summarize_sweep(reports);
  CHECK(s.seeds == 3);
  CHECK(s.median_outperform_fraction == 0.9);
  CHECK(s.min_outperform_fraction == 0.8);
  CHECK(s.median_mean_improvement == 0.2);
  CHECK(s.best_mean_improvement == 0.4);
}
