#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "kanon/flow.hpp"
#include "kanon/model.hpp"

namespace kanon {

// A fixed choice of bundle winners plus the item -> winner assignment.
struct WinnerAssignment {
  std::vector<int> winners;     // distinct bidder indices
  std::vector<int> allocation;  // per category, position into winners
};

// Welfare-optimal allocation of all m categories to the given winners with
// every winner holding >= k categories: greedy start, then a min cost
// feasible flow reallocates the cheapest items to meet the lower bounds.
// nullopt when |winners| * k > m.
std::optional<std::pair<SignalingScheme, Evaluation>> solve_fixed_winners(
    const Instance& inst, const std::vector<int>& winners, int k);

// Welfare optimum among schemes with at most c bundles, by enumerating
// winner tuples (c <= 4 guard) and solving each with the flow subroutine.
std::pair<SignalingScheme, Evaluation> solve_constant_signals(const Instance& inst,
                                                              int c);

// Exact welfare solver for valuations V_ij = p_i * q_j + b_i: sort bidders by
// p and categories by q, then run the contiguous-block DP in O(n m^2).
std::pair<SignalingScheme, Evaluation> solve_structured_dp(const Instance& inst,
                                                           int k);

}  // namespace kanon
