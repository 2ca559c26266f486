#include "kanon/special.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace kanon {

namespace {

void require_valid(const Instance& inst) {
  auto report = validate_instance(inst);
  if (!report.ok()) {
    throw std::invalid_argument("invalid instance: " + report.violations.front());
  }
}

}  // namespace

std::optional<std::pair<SignalingScheme, Evaluation>> solve_fixed_winners(
    const Instance& inst, const std::vector<int>& winners, int k) {
  require_valid(inst);
  const int c = static_cast<int>(winners.size());
  if (c < 1) throw std::invalid_argument("winners must be non-empty");
  for (int w : winners) {
    if (w < 0 || w >= inst.n) throw std::invalid_argument("winner index out of range");
  }
  if (static_cast<long long>(c) * k > inst.m) return std::nullopt;

  const Matrix V = bundle_values(inst);
  const int m = inst.m;

  // Greedy start: each category to the winner valuing it most.
  std::vector<int> owner(m, 0);
  std::vector<int> count(c, 0);
  for (int j = 0; j < m; ++j) {
    int best = 0;
    for (int i = 1; i < c; ++i) {
      if (V(winners[i], j) > V(winners[best], j)) best = i;
    }
    owner[j] = best;
    ++count[best];
  }

  if (std::all_of(count.begin(), count.end(), [&](int s) { return s >= k; })) {
    // Lower bounds already met; zero flow cost.
  } else {
    // Nodes: st, w_i, w_i', item_j, end.
    const int node_st = 0;
    auto node_w = [&](int i) { return 1 + i; };
    auto node_wp = [&](int i) { return 1 + c + i; };
    auto node_item = [&](int j) { return 1 + 2 * c + j; };
    const int node_end = 1 + 2 * c + m;

    FlowNetwork net;
    net.node_count = node_end + 1;
    net.source = node_st;
    net.sink = node_end;
    for (int i = 0; i < c; ++i) {
      double ki = count[i];
      net.arcs.push_back({node_st, node_w(i), ki, ki, 0.0});
      net.arcs.push_back({node_w(i), node_wp(i), 0.0, double(m), 0.0});
      net.arcs.push_back({node_wp(i), node_end, double(k), double(m), 0.0});
    }
    std::vector<int> receive_arc(m * c, -1);
    for (int j = 0; j < m; ++j) {
      // Current owner may give the item away; anyone else may receive it.
      net.arcs.push_back({node_wp(owner[j]), node_item(j), 0.0, 1.0,
                          V(winners[owner[j]], j)});
      for (int i = 0; i < c; ++i) {
        if (i == owner[j]) continue;
        receive_arc[j * c + i] = static_cast<int>(net.arcs.size());
        net.arcs.push_back({node_item(j), node_w(i), 0.0, 1.0, -V(winners[i], j)});
      }
    }

    FlowResult res = min_cost_feasible_flow(net);
    if (!res.feasible) return std::nullopt;  // cannot happen when c*k <= m
    for (int j = 0; j < m; ++j) {
      for (int i = 0; i < c; ++i) {
        const int a = receive_arc[j * c + i];
        if (a >= 0 && res.flow[a] > 0.5) owner[j] = i;
      }
    }
  }

  SignalingScheme scheme;
  scheme.bundles.resize(c);
  for (int j = 0; j < m; ++j) scheme.bundles[owner[j]].push_back(j);
  return std::make_pair(scheme, evaluate_welfare(inst, scheme));
}

std::pair<SignalingScheme, Evaluation> solve_constant_signals(const Instance& inst,
                                                              int c) {
  require_valid(inst);
  if (c < 1 || c > 4) throw std::invalid_argument("signal count c must be in [1, 4]");

  std::optional<std::pair<SignalingScheme, Evaluation>> best;
  std::vector<int> winners;
  // Enumerate winner tuples of each size t <= c in lexicographic order.
  auto consider = [&](const std::vector<int>& ws) {
    auto sol = solve_fixed_winners(inst, ws, inst.k);
    if (sol && (!best || sol->second.total > best->second.total)) best = sol;
  };
  std::function<void(int, int, int)> choose = [&](int t, int start, int depth) {
    if (depth == t) {
      consider(winners);
      return;
    }
    for (int i = start; i < inst.n; ++i) {
      winners.push_back(i);
      choose(t, i + 1, depth + 1);
      winners.pop_back();
    }
  };
  for (int t = 1; t <= std::min(c, inst.n); ++t) choose(t, 0, 0);
  if (!best) throw InfeasibleError("no feasible winner assignment (k > m?)");
  return *best;
}

std::pair<SignalingScheme, Evaluation> solve_structured_dp(const Instance& inst,
                                                           int k) {
  require_valid(inst);
  if (!inst.structured) {
    throw std::invalid_argument("structured valuation required for the DP solver");
  }
  if (inst.priors) {
    throw std::invalid_argument("structured DP requires priors-absent instances");
  }
  const auto& s = *inst.structured;
  const int n = inst.n;
  const int m = inst.m;
  if (k > m) throw InfeasibleError("k > m");

  // Bidders ascending by p, categories ascending by q; larger p gets the
  // trailing (larger q) block in the recurrence.
  std::vector<int> bidder_order(n), cat_order(m);
  std::iota(bidder_order.begin(), bidder_order.end(), 0);
  std::iota(cat_order.begin(), cat_order.end(), 0);
  std::stable_sort(bidder_order.begin(), bidder_order.end(),
                   [&](int a, int b) { return s.p[a] < s.p[b]; });
  std::stable_sort(cat_order.begin(), cat_order.end(),
                   [&](int a, int b) { return s.q[a] < s.q[b]; });

  std::vector<double> qs(m + 1, 0.0);  // prefix sums of sorted q
  for (int j = 0; j < m; ++j) qs[j + 1] = qs[j] + s.q[cat_order[j]];

  // choice: -1 skip bidder, -2 skip category, otherwise the block length K1.
  std::vector<std::vector<double>> F(n + 1, std::vector<double>(m + 1, 0.0));
  std::vector<std::vector<int>> choice(n + 1, std::vector<int>(m + 1, -1));
  for (int i = 1; i <= n; ++i) {
    const double pi = s.p[bidder_order[i - 1]];
    const double bi = s.b[bidder_order[i - 1]];
    for (int j = 1; j <= m; ++j) {
      double best = F[i - 1][j];
      int pick = -1;
      if (F[i][j - 1] > best) {
        best = F[i][j - 1];
        pick = -2;
      }
      for (int K1 = k; K1 <= j; ++K1) {
        const double val = F[i - 1][j - K1] + K1 * bi + pi * (qs[j] - qs[j - K1]);
        if (val > best) {
          best = val;
          pick = K1;
        }
      }
      F[i][j] = best;
      choice[i][j] = pick;
    }
  }

  // Reconstruct contiguous blocks over sorted category positions.
  std::vector<std::pair<int, int>> blocks;  // [first, last] positions, ascending
  {
    int i = n, j = m;
    while (i > 0 && j > 0) {
      const int pick = choice[i][j];
      if (pick == -1) {
        --i;
      } else if (pick == -2) {
        --j;
      } else {
        blocks.push_back({j - pick, j - 1});
        j -= pick;
        --i;
      }
    }
  }
  std::reverse(blocks.begin(), blocks.end());

  SignalingScheme scheme;
  if (blocks.empty()) {
    std::vector<int> all(m);
    std::iota(all.begin(), all.end(), 0);
    scheme.bundles.push_back(all);
  } else {
    // Skipped positions join the nearest block below them (the block above
    // for a leading gap); never decreases welfare since V >= 0.
    std::vector<int> owner(m, -1);
    for (int b = 0; b < static_cast<int>(blocks.size()); ++b) {
      for (int pos = blocks[b].first; pos <= blocks[b].second; ++pos) owner[pos] = b;
    }
    int last = -1;
    for (int pos = 0; pos < m; ++pos) {
      if (owner[pos] >= 0) {
        last = owner[pos];
      } else {
        owner[pos] = last;  // -1 for a leading gap, fixed below
      }
    }
    for (int pos = 0; pos < m; ++pos) {
      if (owner[pos] < 0) owner[pos] = 0;
    }
    scheme.bundles.resize(blocks.size());
    for (int pos = 0; pos < m; ++pos) {
      scheme.bundles[owner[pos]].push_back(cat_order[pos]);
    }
    for (auto& bundle : scheme.bundles) std::sort(bundle.begin(), bundle.end());
  }
  return {scheme, evaluate_welfare(inst, scheme)};
}

}  // namespace kanon
