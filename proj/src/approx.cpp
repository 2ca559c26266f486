#include "kanon/approx.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "kanon/exact.hpp"

namespace kanon {

namespace {

void require_valid(const Instance& inst) {
  auto report = validate_instance(inst);
  if (!report.ok()) {
    throw std::invalid_argument("invalid instance: " + report.violations.front());
  }
}

SignalingScheme grand_bundle(int m) {
  SignalingScheme scheme;
  scheme.bundles.emplace_back(m);
  std::iota(scheme.bundles.back().begin(), scheme.bundles.back().end(), 0);
  return scheme;
}

SignalingScheme greedy_cardinality(const Instance& inst, int s) {
  const Matrix V = bundle_values(inst);
  const int n = inst.n;

  // Categories in decreasing order of their best single-item value.
  std::vector<int> order(inst.m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return V.col(a).maxCoeff() > V.col(b).maxCoeff();
  });

  std::vector<std::vector<int>> clusters(s);
  std::vector<Vector> sums(s, Vector::Zero(n));
  std::vector<double> value(s, 0.0);
  for (int j : order) {
    int pick = 0;
    double best_delta = -1.0;
    for (int c = 0; c < s; ++c) {
      const double delta = (sums[c] + V.col(j)).maxCoeff() - value[c];
      if (delta > best_delta) {
        best_delta = delta;
        pick = c;
      }
    }
    clusters[pick].push_back(j);
    sums[pick] += V.col(j);
    value[pick] = sums[pick].maxCoeff();
  }

  SignalingScheme scheme;
  for (auto& cluster : clusters) {
    if (cluster.empty()) continue;
    std::sort(cluster.begin(), cluster.end());
    scheme.bundles.push_back(std::move(cluster));
  }
  return scheme;
}

}  // namespace

SignalingScheme solve_cardinality(const Instance& inst, const CardinalityConfig& cfg) {
  require_valid(inst);
  if (cfg.s < 1) throw std::invalid_argument("signal cap s must be >= 1");
  if (cfg.method == CardinalityMethod::greedy) return greedy_cardinality(inst, cfg.s);

  if (inst.m > cfg.limit_m) {
    throw ScaleExceeded("exact cardinality solve exceeds enumeration limit");
  }
  SignalingScheme best;
  double best_value = -1.0;
  for_each_partition(inst.m, 1, cfg.s, [&](const auto& blocks) {
    SignalingScheme scheme{blocks};
    const double value = evaluate_welfare(inst, scheme).total;
    if (value > best_value) {
      best_value = value;
      best = std::move(scheme);
    }
    return true;
  });
  return best;
}

SignalingScheme repair_to_k_anonymous(const Instance& inst,
                                      const SignalingScheme& partition, int k) {
  require_valid(inst);
  if (k > inst.m) throw InfeasibleError("k > m");
  if (!is_partition(partition, inst.m)) {
    throw std::invalid_argument("input is not a partition of {0,...,m-1}");
  }

  const Evaluation eval = evaluate_welfare(inst, partition);
  const int t = static_cast<int>(partition.bundles.size());
  std::vector<int> small, large;  // bundle indices, A and B of the repair
  double welfare_large = 0.0;
  for (int b = 0; b < t; ++b) {
    if (static_cast<int>(partition.bundles[b].size()) < k) {
      small.push_back(b);
    } else {
      large.push_back(b);
      welfare_large += eval.per_bundle[b].winner_value;
    }
  }
  if (small.empty()) return partition;
  if (large.empty()) return grand_bundle(inst.m);

  if (2.0 * welfare_large >= eval.total) {
    // B-heavy: fold all undersized bundles into the largest feasible one.
    int target = large.front();
    for (int b : large) {
      if (partition.bundles[b].size() > partition.bundles[target].size()) target = b;
    }
    SignalingScheme out;
    std::vector<int> merged = partition.bundles[target];
    for (int b : small) {
      merged.insert(merged.end(), partition.bundles[b].begin(),
                    partition.bundles[b].end());
    }
    std::sort(merged.begin(), merged.end());
    for (int b : large) {
      out.bundles.push_back(b == target ? merged : partition.bundles[b]);
    }
    return out;
  }

  // A-heavy: fill each undersized bundle to size k with items drained from
  // feasible bundles, cheapest contribution first.
  const Matrix V = bundle_values(inst);
  long long need = 0;
  for (int b : small) need += k - static_cast<int>(partition.bundles[b].size());

  std::vector<int> drain_order = large;
  std::sort(drain_order.begin(), drain_order.end(), [&](int a, int b) {
    if (eval.per_bundle[a].winner_value != eval.per_bundle[b].winner_value) {
      return eval.per_bundle[a].winner_value < eval.per_bundle[b].winner_value;
    }
    return a < b;
  });

  std::vector<std::vector<int>> bundles(partition.bundles);
  std::vector<bool> drained(t, false);
  std::vector<int> pool;
  for (int b : drain_order) {
    if (need <= 0) break;
    auto& items = bundles[b];
    const int winner = eval.per_bundle[b].winner;
    std::stable_sort(items.begin(), items.end(),
                     [&](int a, int c) { return V(winner, a) < V(winner, c); });
    const int spare = static_cast<int>(items.size()) - k;
    const int take = static_cast<int>(std::min<long long>(need, spare));
    pool.insert(pool.end(), items.begin(), items.begin() + take);
    items.erase(items.begin(), items.begin() + take);
    need -= take;
    if (need > 0) {
      // Taking more would drop below k: drain the bundle entirely.
      pool.insert(pool.end(), items.begin(), items.end());
      need -= static_cast<long long>(items.size());
      items.clear();
      drained[b] = true;
    }
  }
  if (need > 0) return grand_bundle(inst.m);  // more than floor(m/k) blocks

  size_t next = 0;
  for (int b : small) {
    while (static_cast<int>(bundles[b].size()) < k) bundles[b].push_back(pool[next++]);
  }
  // Leftover drained items join the last filled undersized bundle.
  while (next < pool.size()) bundles[small.back()].push_back(pool[next++]);

  SignalingScheme out;
  for (int b = 0; b < t; ++b) {
    if (drained[b] || bundles[b].empty()) continue;
    std::sort(bundles[b].begin(), bundles[b].end());
    out.bundles.push_back(std::move(bundles[b]));
  }
  return out;
}

std::pair<SignalingScheme, Evaluation> approx_welfare(const Instance& inst,
                                                      CardinalityMethod method) {
  require_valid(inst);
  CardinalityConfig cfg;
  cfg.s = inst.m / inst.k;
  cfg.method = method;
  SignalingScheme partition = solve_cardinality(inst, cfg);
  SignalingScheme scheme = repair_to_k_anonymous(inst, partition, inst.k);
  return {scheme, evaluate_welfare(inst, scheme)};
}

SignalingScheme merge_pairwise(const Instance& inst, const SignalingScheme& scheme) {
  require_valid(inst);
  const Evaluation eval = evaluate_welfare(inst, scheme);

  std::map<int, std::vector<int>> items_by_winner;
  std::map<int, double> contribution;
  for (const auto& outcome : eval.per_bundle) {
    auto& items = items_by_winner[outcome.winner];
    const auto& bundle = scheme.bundles[outcome.bundle];
    items.insert(items.end(), bundle.begin(), bundle.end());
    contribution[outcome.winner] += outcome.winner_value;
  }

  std::vector<int> winners;
  for (const auto& [w, _] : items_by_winner) winners.push_back(w);
  std::stable_sort(winners.begin(), winners.end(), [&](int a, int b) {
    return contribution[a] > contribution[b];
  });

  SignalingScheme out;
  for (size_t i = 0; i + 1 < winners.size(); i += 2) {
    std::vector<int> merged = items_by_winner[winners[i]];
    const auto& other = items_by_winner[winners[i + 1]];
    merged.insert(merged.end(), other.begin(), other.end());
    out.bundles.push_back(std::move(merged));
  }
  if (winners.size() % 2 == 1) {
    const auto& trailing = items_by_winner[winners.back()];
    if (out.bundles.empty()) {
      out.bundles.push_back(trailing);  // single winner: one merged bundle
    } else {
      out.bundles.back().insert(out.bundles.back().end(), trailing.begin(),
                                trailing.end());
    }
  }
  for (auto& bundle : out.bundles) std::sort(bundle.begin(), bundle.end());
  return out;
}

namespace {

Instance remove_bidder(const Instance& inst, int bidder) {
  Instance out = inst;
  out.n = inst.n - 1;
  out.values.resize(out.n, inst.m);
  out.values.topRows(bidder) = inst.values.topRows(bidder);
  out.values.bottomRows(out.n - bidder) = inst.values.bottomRows(out.n - bidder);
  if (inst.structured) {
    StructuredValuation s;
    s.q = inst.structured->q;
    s.p.resize(out.n);
    s.b.resize(out.n);
    int r = 0;
    for (int i = 0; i < inst.n; ++i) {
      if (i == bidder) continue;
      s.p[r] = inst.structured->p[i];
      s.b[r] = inst.structured->b[i];
      ++r;
    }
    out.structured = s;
  }
  return out;
}

double top_contribution(const Evaluation& eval, int* top_bidder = nullptr) {
  std::map<int, double> contribution;
  for (const auto& outcome : eval.per_bundle) {
    contribution[outcome.winner] += outcome.winner_value;
  }
  double best = 0.0;
  int who = 0;
  for (const auto& [w, v] : contribution) {
    if (v > best) {
      best = v;
      who = w;
    }
  }
  if (top_bidder) *top_bidder = who;
  return best;
}

}  // namespace

std::pair<SignalingScheme, Evaluation> transfer_revenue(
    const Instance& inst, const RevenueTransferConfig& cfg) {
  require_valid(inst);
  WelfareSolver solver = cfg.welfare_solver;
  if (!solver) {
    solver = [](const Instance& i) {
      ExactConfig ec;
      ec.objective = Objective::welfare;
      return solve_exact(i, ec);
    };
  }

  const SignalingScheme grand = grand_bundle(inst.m);
  if (inst.n == 1) return {grand, evaluate_revenue(inst, grand)};

  std::vector<SignalingScheme> candidates;
  auto [scheme, eval] = solver(inst);
  int top = 0;
  const double v_star = top_contribution(eval, &top);
  if (v_star <= cfg.beta * eval.total + kTol) {
    candidates.push_back(merge_pairwise(inst, scheme));
  } else {
    const Instance reduced = remove_bidder(inst, top);
    auto [scheme2, eval2] = solver(reduced);
    if (top_contribution(eval2) <= cfg.alpha * eval2.total + kTol) {
      candidates.push_back(merge_pairwise(reduced, scheme2));
    }
  }
  candidates.push_back(grand);

  // True revenue on the full bidder set decides; first best wins ties.
  size_t pick = 0;
  Evaluation best_eval = evaluate_revenue(inst, candidates[0]);
  for (size_t c = 1; c < candidates.size(); ++c) {
    Evaluation e = evaluate_revenue(inst, candidates[c]);
    if (e.total > best_eval.total) {
      best_eval = std::move(e);
      pick = c;
    }
  }
  return {candidates[pick], best_eval};
}

}  // namespace kanon
