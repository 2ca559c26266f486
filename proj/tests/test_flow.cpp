#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kanon/flow.hpp"
#include "oracles.hpp"

using namespace kanon;

TEST_CASE("single arc with demand expressed as a lower bound") {
  FlowNetwork net;
  net.node_count = 2;
  net.source = 0;
  net.sink = 1;
  net.arcs.push_back({0, 1, 5, 5, 2});
  auto res = min_cost_feasible_flow(net);
  REQUIRE(res.feasible);
  CHECK(res.cost == doctest::Approx(10.0));

  // without the lower bound the cheapest feasible flow is empty
  net.arcs[0].lower = 0;
  CHECK(min_cost_feasible_flow(net).cost == doctest::Approx(0.0));
}

TEST_CASE("lower bound forces flow through the expensive arc") {
  // 0 -> 1 -> 3 is the cost-1 route; 0 -> 2 -> 3 carries a (1,1) bound on
  // its first leg and a cost-3 second leg.
  FlowNetwork net;
  net.node_count = 4;
  net.source = 0;
  net.sink = 3;
  net.arcs.push_back({0, 1, 0, 2, 0});
  net.arcs.push_back({1, 3, 0, 2, 1});
  net.arcs.push_back({0, 2, 1, 1, 0});
  net.arcs.push_back({2, 3, 0, 1, 3});
  auto res = min_cost_feasible_flow(net);
  REQUIRE(res.feasible);
  CHECK(res.cost == doctest::Approx(3.0));
  CHECK(res.cost == doctest::Approx(oracles::naive_min_cost_flow(net).cost));
}

TEST_CASE("unsatisfiable lower bound is reported infeasible") {
  FlowNetwork net;
  net.node_count = 3;
  net.source = 0;
  net.sink = 2;
  net.arcs.push_back({0, 1, 0, 1, 0});
  net.arcs.push_back({1, 2, 2, 3, 0});
  CHECK_FALSE(min_cost_feasible_flow(net).feasible);
}

TEST_CASE("negative cost cycles are exploited") {
  // A free-standing negative cycle off the source-sink path must be used.
  FlowNetwork net;
  net.node_count = 4;
  net.source = 0;
  net.sink = 1;
  net.arcs.push_back({0, 1, 0, 2, 1});
  net.arcs.push_back({2, 3, 0, 2, -3});
  net.arcs.push_back({3, 2, 0, 2, 1});
  auto res = min_cost_feasible_flow(net);
  REQUIRE(res.feasible);
  CHECK(res.cost == doctest::Approx(-4.0));
  CHECK(res.cost == doctest::Approx(oracles::naive_min_cost_flow(net).cost));
}

TEST_CASE("matches exhaustive search on random small networks") {
  std::mt19937_64 rng(314);
  int feasible_count = 0;
  for (int iter = 0; iter < 80; ++iter) {
    FlowNetwork net;
    net.node_count = 3 + static_cast<int>(rng() % 4);
    net.source = 0;
    net.sink = net.node_count - 1;
    const int arcs = 3 + static_cast<int>(rng() % 6);
    for (int a = 0; a < arcs; ++a) {
      int u = static_cast<int>(rng() % net.node_count);
      int v = static_cast<int>(rng() % net.node_count);
      if (u == v) continue;
      const double lower = rng() % 2;
      const double upper = lower + static_cast<double>(rng() % 3);
      const double cost = static_cast<double>(rng() % 11) - 5.0;
      net.arcs.push_back({u, v, lower, upper, cost});
    }
    const auto expected = oracles::naive_min_cost_flow(net);
    const auto actual = min_cost_feasible_flow(net);
    REQUIRE(actual.feasible == expected.feasible);
    if (!expected.feasible) continue;
    ++feasible_count;
    CHECK(actual.cost == doctest::Approx(expected.cost).epsilon(1e-9));
    // returned flow respects every bound and conservation
    std::vector<double> balance(net.node_count, 0.0);
    for (size_t a = 0; a < net.arcs.size(); ++a) {
      CHECK(actual.flow[a] >= net.arcs[a].lower - kTol);
      CHECK(actual.flow[a] <= net.arcs[a].upper + kTol);
      balance[net.arcs[a].from] -= actual.flow[a];
      balance[net.arcs[a].to] += actual.flow[a];
    }
    for (int v = 0; v < net.node_count; ++v) {
      if (v == net.source || v == net.sink) continue;
      CHECK(std::abs(balance[v]) < 1e-7);
    }
  }
  CHECK(feasible_count > 20);  // the sweep must actually exercise the solver
}

TEST_CASE("input validation") {
  FlowNetwork net;
  net.node_count = 2;
  net.source = 0;
  net.sink = 1;
  net.arcs.push_back({0, 5, 0, 1, 0});
  CHECK_THROWS_AS(min_cost_feasible_flow(net), std::invalid_argument);
  net.arcs[0] = {0, 1, 2, 1, 0};
  CHECK_THROWS_AS(min_cost_feasible_flow(net), std::invalid_argument);
}
