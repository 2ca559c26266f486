#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "kanon/exact.hpp"
#include "kanon/gen.hpp"
#include "oracles.hpp"

using namespace kanon;

namespace {

int naive_count(int m, int k, std::optional<int> max_bundles = {}) {
  int count = 0;
  for (const auto& blocks : oracles::all_partitions(m)) {
    bool ok = !max_bundles || static_cast<int>(blocks.size()) <= *max_bundles;
    for (const auto& b : blocks) {
      if (static_cast<int>(b.size()) < k) ok = false;
    }
    if (ok) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("partition counts match an independent enumeration") {
  CHECK(enumerate_partitions(3, 1).size() == 5);  // Bell(3)
  CHECK(enumerate_partitions(4, 2).size() == 4);
  CHECK(enumerate_partitions(6, 3).size() == 11);  // 1 grand + C(6,3)/2
  CHECK(enumerate_partitions(6, 2).size() == 41);
  for (int m = 1; m <= 7; ++m) {
    for (int k = 1; k <= m; ++k) {
      CHECK(enumerate_partitions(m, k).size() ==
            static_cast<size_t>(naive_count(m, k)));
      CHECK(enumerate_partitions(m, k, 2).size() ==
            static_cast<size_t>(naive_count(m, k, 2)));
    }
  }
}

TEST_CASE("enumeration yields distinct feasible partitions") {
  std::set<std::vector<std::vector<int>>> seen;
  for (const auto& scheme : enumerate_partitions(6, 2)) {
    CHECK(check_k_anonymous(scheme, 2, 6));
    CHECK(seen.insert(scheme.bundles).second);
  }
  CHECK_THROWS_AS(enumerate_partitions(3, 4), InfeasibleError);
}

TEST_CASE("solve_exact on degenerate anonymity levels") {
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 20; ++iter) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const int m = 3 + static_cast<int>(rng() % 4);
    Instance inst = gen_random(n, m, m, rng(), 0, 9);

    // k = m: only the grand bundle is feasible
    auto [grand_scheme, grand_eval] = solve_exact(inst);
    CHECK(grand_scheme.bundles.size() == 1);
    CHECK(grand_eval.total ==
          doctest::Approx(inst.values.rowwise().sum().maxCoeff()));

    // k = 1: singleton bundles reach the sum of column maxima
    inst.k = 1;
    CHECK(solve_exact(inst).second.total ==
          doctest::Approx(inst.values.colwise().maxCoeff().sum()));

    // max_bundles = m with k = 1 gives the same optimum
    ExactConfig cfg;
    cfg.max_bundles = m;
    CHECK(solve_exact(inst, cfg).second.total ==
          doctest::Approx(inst.values.colwise().maxCoeff().sum()));
  }
}

TEST_CASE("solve_exact reproduces the gap family optimum") {
  Instance gap = gen_gap({2, 0.2});
  auto [scheme, eval] = solve_exact(gap);
  CHECK(eval.total == doctest::Approx(3.8).epsilon(1e-12));
  CHECK(check_k_anonymous(scheme, 2, 6));
}

TEST_CASE("oracle dominance over naive brute force") {
  std::mt19937_64 rng(77);
  for (int iter = 0; iter < 30; ++iter) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const int m = 4 + static_cast<int>(rng() % 4);
    const int k = 1 + static_cast<int>(rng() % 3);
    const Instance inst = gen_random(n, m, std::min(k, m), rng(), 0, 9);
    for (bool revenue : {false, true}) {
      ExactConfig cfg;
      cfg.objective = revenue ? Objective::revenue : Objective::welfare;
      CHECK(solve_exact(inst, cfg).second.total ==
            doctest::Approx(oracles::naive_best(inst, revenue)));
    }
  }
}

TEST_CASE("scale guard") {
  Instance inst = gen_random(2, 13, 2, 1, 0, 5);
  CHECK_THROWS_AS(solve_exact(inst), ScaleExceeded);
  ExactConfig cfg;
  cfg.limit_m = 13;
  CHECK_NOTHROW(solve_exact(gen_random(2, 8, 2, 1, 0, 5), cfg));
}

TEST_CASE("deterministic first optimum") {
  const Instance inst = gen_random(3, 6, 2, 11, 0, 3);
  auto a = solve_exact(inst);
  auto b = solve_exact(inst);
  CHECK(a.first.bundles == b.first.bundles);
}
