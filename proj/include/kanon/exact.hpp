#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "kanon/model.hpp"

namespace kanon {

struct ExactConfig {
  std::optional<int> max_bundles;  // cap on bundle count, if any
  Objective objective = Objective::welfare;
  int limit_m = 12;  // enumeration scale guard
};

// Visits partitions of {0,...,m-1} with all block sizes >= k (and block count
// <= max_bundles when given), each exactly once, in restricted-growth order.
// Return false from the visitor to stop early.
using PartitionVisitor = std::function<bool(const std::vector<std::vector<int>>&)>;
void for_each_partition(int m, int k, std::optional<int> max_bundles,
                        const PartitionVisitor& visit);

// Materialized variant, for tests and small m.
std::vector<SignalingScheme> enumerate_partitions(int m, int k,
                                                  std::optional<int> max_bundles = {});

// Brute-force oracle: the objective-optimal feasible scheme, deterministic
// (first optimum in enumeration order).
std::pair<SignalingScheme, Evaluation> solve_exact(const Instance& inst,
                                                   const ExactConfig& cfg = {});

}  // namespace kanon
