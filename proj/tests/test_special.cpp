#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kanon/exact.hpp"
#include "kanon/gen.hpp"
#include "kanon/special.hpp"
#include "oracles.hpp"

using namespace kanon;

namespace {

Instance make(int n, int m, int k, std::initializer_list<double> vals) {
  Instance inst;
  inst.n = n;
  inst.m = m;
  inst.k = k;
  inst.values.resize(n, m);
  int idx = 0;
  for (double v : vals) inst.values(idx / m, idx % m) = v, ++idx;
  return inst;
}

Instance random_structured(std::mt19937_64& rng, int n, int m, int k) {
  Instance inst;
  inst.n = n;
  inst.m = m;
  inst.k = k;
  StructuredValuation s;
  s.p.resize(n);
  s.q.resize(m);
  s.b.resize(n);
  for (int i = 0; i < n; ++i) s.p[i] = static_cast<double>(rng() % 6);
  for (int j = 0; j < m; ++j) s.q[j] = static_cast<double>(rng() % 6);
  for (int i = 0; i < n; ++i) s.b[i] = static_cast<double>(rng() % 6);
  inst.structured = s;
  inst.values = s.expand();
  return inst;
}

}  // namespace

TEST_CASE("solve_fixed_winners") {
  // greedy allocation already satisfies the lower bounds
  Instance a = make(2, 4, 2, {9, 9, 0, 0, 0, 0, 9, 9});
  auto sol = solve_fixed_winners(a, {0, 1}, 2);
  REQUIRE(sol);
  CHECK(sol->second.total == doctest::Approx(36.0));

  // the cheapest repair moves exactly one item at a loss of 1
  Instance b = make(2, 4, 2, {10, 10, 10, 0, 0, 0, 9, 8});
  auto solb = solve_fixed_winners(b, {0, 1}, 2);
  REQUIRE(solb);
  CHECK(solb->second.total == doctest::Approx(37.0));
  CHECK(solb->first.bundles == std::vector<std::vector<int>>{{0, 1}, {2, 3}});

  // a single winner takes the grand bundle
  auto solc = solve_fixed_winners(b, {1}, 2);
  REQUIRE(solc);
  CHECK(solc->first.bundles.size() == 1);

  // infeasible when c * k > m
  CHECK_FALSE(solve_fixed_winners(b, {0, 1}, 3));
}

TEST_CASE("solve_fixed_winners equals exhaustive allocation search") {
  std::mt19937_64 rng(2024);
  for (int iter = 0; iter < 40; ++iter) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const int m = 4 + static_cast<int>(rng() % 4);
    const int k = 2;
    const Instance inst = gen_random(n, m, k, rng(), 0, 9);
    const std::vector<int> winners{0, 1 + static_cast<int>(rng() % (n - 1))};

    // exhaustive: every assignment of items to the two winners with sizes >= k
    double best = -1.0;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
      const int c1 = __builtin_popcount(mask);
      if (c1 < k || m - c1 < k) continue;
      double value = 0.0;
      for (int j = 0; j < m; ++j) {
        value += inst.values((mask >> j) & 1 ? winners[0] : winners[1], j);
      }
      best = std::max(best, value);
    }

    auto sol = solve_fixed_winners(inst, winners, k);
    REQUIRE(sol);
    // the evaluator may promote a better bidder, so >= is the exact claim
    CHECK(sol->second.total >= best - kTol);
    double assigned = 0.0;
    for (size_t w = 0; w < winners.size(); ++w) {
      for (int j : sol->first.bundles[w]) assigned += inst.values(winners[w], j);
    }
    CHECK(assigned == doctest::Approx(best));
  }
}

TEST_CASE("solve_constant_signals") {
  Instance inst = gen_random(3, 6, 2, 9, 0, 9);
  auto [scheme1, eval1] = solve_constant_signals(inst, 1);
  CHECK(scheme1.bundles.size() == 1);
  CHECK(eval1.total == doctest::Approx(inst.values.rowwise().sum().maxCoeff()));

  CHECK_THROWS_AS(solve_constant_signals(inst, 5), std::invalid_argument);

  std::mt19937_64 rng(55);
  for (int iter = 0; iter < 40; ++iter) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const int m = 4 + static_cast<int>(rng() % 5);
    const Instance rnd = gen_random(n, m, 2, rng(), 0, 9);
    ExactConfig cfg;
    cfg.max_bundles = 2;
    CHECK(solve_constant_signals(rnd, 2).second.total ==
          doctest::Approx(solve_exact(rnd, cfg).second.total));
  }

  // gap family at K=2: the optimum uses two bundles
  Instance gap = gen_gap({2, 0.2});
  ExactConfig cfg;
  cfg.max_bundles = 2;
  CHECK(solve_constant_signals(gap, 2).second.total ==
        doctest::Approx(solve_exact(gap, cfg).second.total));
  CHECK(solve_constant_signals(gap, 2).second.total == doctest::Approx(3.8));
}

TEST_CASE("structured DP examples") {
  std::mt19937_64 rng(1);
  Instance solo = random_structured(rng, 1, 5, 2);
  auto [scheme, eval] = solve_structured_dp(solo, 2);
  CHECK(scheme.bundles.size() == 1);
  const auto& s = *solo.structured;
  CHECK(eval.total == doctest::Approx(5 * s.b[0] + s.p[0] * s.q.sum()));

  Instance two;
  two.n = 2;
  two.m = 4;
  two.k = 2;
  StructuredValuation sv{Vector{{0.0, 1.0}}, Vector{{1.0, 1.0, 5.0, 5.0}},
                         Vector{{3.0, 0.0}}};
  two.structured = sv;
  two.values = sv.expand();
  auto [scheme2, eval2] = solve_structured_dp(two, 2);
  CHECK(eval2.total == doctest::Approx(16.0));
  CHECK(check_k_anonymous(scheme2, 2, 4));
}

TEST_CASE("structured DP equals the exact oracle") {
  std::mt19937_64 rng(123);
  for (int iter = 0; iter < 60; ++iter) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const int k = 2 + static_cast<int>(rng() % 2);
    const int m = k + static_cast<int>(rng() % (9 - k + 1));
    const Instance inst = random_structured(rng, n, m, k);
    auto [scheme, eval] = solve_structured_dp(inst, k);
    CHECK(check_k_anonymous(scheme, k, m));
    CHECK(eval.total == doctest::Approx(solve_exact(inst).second.total));
  }
}

TEST_CASE("structured DP rearrangement property") {
  std::mt19937_64 rng(321);
  for (int iter = 0; iter < 40; ++iter) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const int k = 2;
    const int m = 4 + static_cast<int>(rng() % 5);
    const Instance inst = random_structured(rng, n, m, k);
    const auto& s = *inst.structured;
    auto [scheme, eval] = solve_structured_dp(inst, k);
    for (size_t a = 0; a < scheme.bundles.size(); ++a) {
      for (size_t b = 0; b < scheme.bundles.size(); ++b) {
        const int wa = eval.per_bundle[a].winner;
        const int wb = eval.per_bundle[b].winner;
        if (!(s.p[wa] < s.p[wb])) continue;
        for (int ja : scheme.bundles[a]) {
          for (int jb : scheme.bundles[b]) {
            CHECK(s.q[ja] <= s.q[jb] + kTol);
          }
        }
      }
    }
  }
}

TEST_CASE("structured DP input checks") {
  Instance plain = gen_random(2, 4, 2, 3, 0, 5);
  CHECK_THROWS_AS(solve_structured_dp(plain, 2), std::invalid_argument);
}
