#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "potluck/demand.hpp"

using namespace potluck;

TEST_CASE("uniform demand") {
  Stream rng(1);
  const QuantityVector flat = gen_uniform_demand(3, Interval{7, 7}, rng);
  CHECK((flat.array() == 7.0).all());

  // Grand mean of 100 x 1000 draws from U[0,1000]: 500 ± 15.
  double sum = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const QuantityVector d = gen_uniform_demand(100, Interval{0, 1000}, rng);
    CHECK((d.array() >= 0.0).all());
    CHECK((d.array() <= 1000.0).all());
    sum += d.sum();
  }
  CHECK(std::abs(sum / 1e5 - 500.0) <= 15.0);

  const QuantityVector ints = gen_uniform_demand(500, Interval{2.5, 9.5}, rng, true);
  for (double v : ints) {
    CHECK(v == std::floor(v));
    CHECK(v >= 3.0);
    CHECK(v <= 9.0);
  }
}

TEST_CASE("per-agent ranges") {
  std::vector<AgentSpec> agents(3);
  agents[0].demand_range = {0, 1};
  agents[1].demand_range = {100, 200};
  agents[2].demand_range = {5, 5};
  Stream rng(2);
  for (int t = 0; t < 100; ++t) {
    const QuantityVector d = gen_uniform_demand(agents, rng);
    for (std::size_t i = 0; i < agents.size(); ++i)
      CHECK(agents[i].demand_range.contains(d(static_cast<Eigen::Index>(i))));
  }
}

TEST_CASE("fixed demand") {
  const QuantityVector d = gen_fixed_demand(100, 60.0);
  CHECK(d(0) == 0.6);
  CHECK(ordered_sum(d) == 60.0);
  CHECK((gen_fixed_demand(5, 0.0).array() == 0.0).all());
  for (std::size_t n = 1; n < 200; n += 7)
    for (double total : {1.0, 60.0, 123.456, 48200.0}) CHECK(ordered_sum(gen_fixed_demand(n, total)) == total);
}

TEST_CASE("time-varying demand") {
  DemandProcess p;
  p.tag = DemandTag::kTimeVaryingTotal;
  p.base = 100;
  p.amplitude = 0;
  p.period = 4;
  Stream rng(3);
  for (std::size_t t = 0; t < 8; ++t)
    CHECK(gen_time_varying_demand(t, 10, p, rng).sum() == doctest::Approx(100.0).epsilon(1e-12));

  p.amplitude = 50;
  CHECK(gen_time_varying_demand(1, 10, p, rng).sum() == doctest::Approx(150.0).epsilon(1e-12));

  p.base = 10;
  p.jitter = 30;
  for (std::size_t t = 0; t < 50; ++t) CHECK((gen_time_varying_demand(t, 10, p, rng).array() >= 0.0).all());
}

TEST_CASE("demand draws are reproducible from the stream") {
  std::vector<AgentSpec> agents(20);
  for (auto& a : agents) a.demand_range = {0, 1000};
  DemandProcess p;
  Stream a(99), b(99);
  for (std::size_t t = 0; t < 10; ++t) CHECK(draw_demand(p, agents, t, a) == draw_demand(p, agents, t, b));
}

TEST_CASE("validate_demand_process") {
  DemandProcess p;
  p.tag = DemandTag::kFixedTotal;
  p.total = -1;
  CHECK_THROWS_AS(validate_demand_process(p), ConfigError);
  p.tag = DemandTag::kTimeVaryingTotal;
  p.period = 0;
  CHECK_THROWS_AS(validate_demand_process(p), ConfigError);
  p.period = 3;
  CHECK_NOTHROW(validate_demand_process(p));
}
