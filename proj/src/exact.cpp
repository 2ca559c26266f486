#include "kanon/exact.hpp"

#include <algorithm>
#include <string>

namespace kanon {

namespace {

// Restricted-growth recursion: item i may join any open block or open a new
// one. Branches that cannot reach all-blocks >= k with the items left are cut.
struct Enumerator {
  int m;
  int k;
  int max_bundles;  // m when uncapped
  const PartitionVisitor& visit;
  std::vector<int> label;       // block label per item
  std::vector<int> block_size;  // size per open block
  int deficit = 0;              // sum over blocks of max(0, k - size)
  bool stopped = false;

  bool emit() {
    std::vector<std::vector<int>> blocks(block_size.size());
    for (int i = 0; i < m; ++i) blocks[label[i]].push_back(i);
    return visit(blocks);
  }

  void recurse(int i) {
    if (stopped) return;
    if (i == m) {
      if (deficit == 0 && !emit()) stopped = true;
      return;
    }
    const int remaining = m - i;
    const int saved = deficit;
    for (int b = 0; b < static_cast<int>(block_size.size()); ++b) {
      const int d = saved - (block_size[b] < k ? 1 : 0);
      if (d > remaining - 1) continue;
      label[i] = b;
      ++block_size[b];
      deficit = d;
      recurse(i + 1);
      --block_size[b];
      deficit = saved;
      if (stopped) return;
    }
    if (static_cast<int>(block_size.size()) < max_bundles) {
      const int d = saved + k - 1;
      if (d <= remaining - 1) {
        label[i] = static_cast<int>(block_size.size());
        block_size.push_back(1);
        deficit = d;
        recurse(i + 1);
        block_size.pop_back();
        deficit = saved;
      }
    }
  }
};

}  // namespace

void for_each_partition(int m, int k, std::optional<int> max_bundles,
                        const PartitionVisitor& visit) {
  if (k < 1 || k > m) throw InfeasibleError("k must satisfy 1 <= k <= m");
  if (max_bundles && *max_bundles < 1) {
    throw std::invalid_argument("max_bundles must be >= 1");
  }
  Enumerator e{m, k, max_bundles ? *max_bundles : m, visit, {}, {}, 0, false};
  e.label.assign(m, 0);
  e.recurse(0);
}

std::vector<SignalingScheme> enumerate_partitions(int m, int k,
                                                  std::optional<int> max_bundles) {
  std::vector<SignalingScheme> out;
  for_each_partition(m, k, max_bundles, [&](const auto& blocks) {
    out.push_back(SignalingScheme{blocks});
    return true;
  });
  return out;
}

std::pair<SignalingScheme, Evaluation> solve_exact(const Instance& inst,
                                                   const ExactConfig& cfg) {
  auto report = validate_instance(inst);
  if (!report.ok()) {
    throw std::invalid_argument("invalid instance: " + report.violations.front());
  }
  if (inst.m > cfg.limit_m) {
    throw ScaleExceeded("oracle scale exceeded: m = " + std::to_string(inst.m) +
                        " > limit " + std::to_string(cfg.limit_m));
  }

  SignalingScheme best;
  Evaluation best_eval;
  bool found = false;
  for_each_partition(inst.m, inst.k, cfg.max_bundles, [&](const auto& blocks) {
    SignalingScheme scheme{blocks};
    Evaluation eval = cfg.objective == Objective::welfare
                          ? evaluate_welfare(inst, scheme)
                          : evaluate_revenue(inst, scheme);
    if (!found || eval.total > best_eval.total) {
      best = std::move(scheme);
      best_eval = std::move(eval);
      found = true;
    }
    return true;
  });
  if (!found) throw InfeasibleError("no feasible partition for given k");
  return {best, best_eval};
}

}  // namespace kanon
