#pragma once

#include <functional>
#include <utility>

#include "kanon/model.hpp"

namespace kanon {

enum class CardinalityMethod { exact, greedy };

struct CardinalityConfig {
  int s = 1;  // max signal count
  CardinalityMethod method = CardinalityMethod::exact;
  int limit_m = 12;  // guard for the exact method
};

using WelfareSolver =
    std::function<std::pair<SignalingScheme, Evaluation>(const Instance&)>;

struct RevenueTransferConfig {
  double alpha = 1.0 / 3.0;
  double beta = 1.0 / 3.0;
  WelfareSolver welfare_solver;  // defaults to the exact oracle when empty
};

// Welfare maximization under a bundle-count cap S with no minimum size.
// exact: enumeration over <= S-block partitions. greedy: deterministic
// best-placement heuristic, no ratio claimed.
SignalingScheme solve_cardinality(const Instance& inst, const CardinalityConfig& cfg);

// Turns an arbitrary partition into a K-anonymous scheme keeping at least
// half its welfare (when the partition has at most floor(m/k) blocks):
// undersized bundles either fold into the largest feasible bundle or are
// filled with the cheapest items drained from feasible bundles.
SignalingScheme repair_to_k_anonymous(const Instance& inst,
                                      const SignalingScheme& partition, int k);

// Cardinality solve with S = floor(m/K), then repair. With the exact
// subsolver the result is within a factor 2 of the K-anonymous optimum.
std::pair<SignalingScheme, Evaluation> approx_welfare(const Instance& inst,
                                                      CardinalityMethod method);

// Merges bundles pairwise by winner (winners ordered by welfare contribution)
// so every merged bundle has a competing runner-up bidder.
SignalingScheme merge_pairwise(const Instance& inst, const SignalingScheme& scheme);

// Welfare-to-revenue transfer: pairwise-merged welfare scheme, the same on
// the instance minus its top contributor, and the grand bundle; every
// constructed candidate is scored by true revenue and the best is returned.
std::pair<SignalingScheme, Evaluation> transfer_revenue(
    const Instance& inst, const RevenueTransferConfig& cfg = {});

}  // namespace kanon
