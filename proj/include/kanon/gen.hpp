#pragma once

#include <cstdint>
#include <vector>

#include "kanon/model.hpp"

namespace kanon {

// Example gap family: m = k^2 + k categories, n = k + 2 bidders.
struct GapParams {
  int k = 2;
  double epsilon = 0.2;
};

// Size-constrained subset sum source: 2k-2 positive integers.
struct SspsParams {
  std::vector<long long> xs;

  int anonymity() const { return (static_cast<int>(xs.size()) + 2) / 2; }
  long long total() const;
};

// A cardinality-constrained signaling instance (bundle count <= s, no
// minimum size); values are the V matrix directly.
struct CardinalityInstance {
  int n = 0;
  int m = 0;
  int s = 1;
  Matrix values;
};

Instance gen_random(int n, int m, int k, std::uint64_t seed, int lo, int hi);

Instance gen_gap(const GapParams& params);

// Anonymity level K = ceil((m - s) / 2 + 1) used by the welfare reduction.
int reduction_anonymity(int m, int s);

// Pads the source with K*S - m + K - 1 new categories and single-minded new
// bidders valuing them at 1/S, yielding a K-anonymous instance whose optimum
// dominates the source's <= S-bundle optimum.
Instance gen_welfare_reduction(const CardinalityInstance& ci);

// 3 bidders, 2k categories: two W/2 anchor items plus the x_i items.
Instance gen_revenue_reduction(const SspsParams& params);

// Exhaustive check for an equal-size, equal-sum split of xs.
bool ssps_solvable(const std::vector<long long>& xs);

struct IffReport {
  bool ssps_ok = false;
  double best_revenue = 0.0;
  double w = 0.0;
  bool iff_holds = false;
};

// Dual-oracle check that optimal revenue equals W exactly when an SSPS
// solution exists (|xs| <= 8 guard).
IffReport verify_reduction_iff(const SspsParams& params);

}  // namespace kanon
