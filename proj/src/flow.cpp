#include "kanon/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace kanon {

namespace {

constexpr double kEps = 1e-9;

struct Residual {
  struct Edge {
    int to;
    double cap;
    double cost;
    int rev;  // index of the reverse edge in adj[to]
  };
  std::vector<std::vector<Edge>> adj;

  explicit Residual(int n) : adj(n) {}

  void add(int u, int v, double cap, double cost) {
    adj[u].push_back({v, cap, cost, static_cast<int>(adj[v].size())});
    adj[v].push_back({u, 0.0, -cost, static_cast<int>(adj[u].size()) - 1});
  }

  // Edmonds-Karp augmentation from s to t; returns total flow pushed.
  double max_flow(int s, int t) {
    double total = 0.0;
    for (;;) {
      std::vector<std::pair<int, int>> parent(adj.size(), {-1, -1});
      std::queue<int> q;
      q.push(s);
      parent[s] = {s, 0};
      while (!q.empty() && parent[t].first == -1) {
        int u = q.front();
        q.pop();
        for (int e = 0; e < static_cast<int>(adj[u].size()); ++e) {
          const Edge& edge = adj[u][e];
          if (edge.cap > kEps && parent[edge.to].first == -1) {
            parent[edge.to] = {u, e};
            q.push(edge.to);
          }
        }
      }
      if (parent[t].first == -1) break;
      double push = std::numeric_limits<double>::infinity();
      for (int v = t; v != s;) {
        auto [u, e] = parent[v];
        push = std::min(push, adj[u][e].cap);
        v = u;
      }
      for (int v = t; v != s;) {
        auto [u, e] = parent[v];
        adj[u][e].cap -= push;
        adj[adj[u][e].to][adj[u][e].rev].cap += push;
        v = u;
      }
      total += push;
    }
    return total;
  }

  // Cancels one residual cycle of negative total cost; false when none exists.
  bool cancel_negative_cycle() {
    const int n = static_cast<int>(adj.size());
    std::vector<double> dist(n, 0.0);
    std::vector<std::pair<int, int>> parent(n, {-1, -1});
    int updated = -1;
    for (int pass = 0; pass < n; ++pass) {
      updated = -1;
      for (int u = 0; u < n; ++u) {
        for (int e = 0; e < static_cast<int>(adj[u].size()); ++e) {
          const Edge& edge = adj[u][e];
          if (edge.cap > kEps && dist[u] + edge.cost < dist[edge.to] - kEps) {
            dist[edge.to] = dist[u] + edge.cost;
            parent[edge.to] = {u, e};
            updated = edge.to;
          }
        }
      }
      if (updated == -1) return false;
    }
    // Walk back n steps to guarantee landing on the cycle.
    int v = updated;
    for (int i = 0; i < n; ++i) v = parent[v].first;
    std::vector<std::pair<int, int>> cycle;
    double push = std::numeric_limits<double>::infinity();
    for (int u = v;;) {
      auto [p, e] = parent[u];
      cycle.push_back({p, e});
      push = std::min(push, adj[p][e].cap);
      u = p;
      if (u == v) break;
    }
    for (auto [u, e] : cycle) {
      adj[u][e].cap -= push;
      adj[adj[u][e].to][adj[u][e].rev].cap += push;
    }
    return true;
  }
};

}  // namespace

FlowResult min_cost_feasible_flow(const FlowNetwork& net) {
  for (const auto& arc : net.arcs) {
    if (arc.from < 0 || arc.from >= net.node_count || arc.to < 0 ||
        arc.to >= net.node_count) {
      throw std::invalid_argument("arc endpoint out of range");
    }
    if (arc.lower < 0.0 || arc.upper < arc.lower) {
      throw std::invalid_argument("arc requires 0 <= lower <= upper");
    }
  }
  if (net.source < 0 || net.source >= net.node_count || net.sink < 0 ||
      net.sink >= net.node_count) {
    throw std::invalid_argument("source/sink out of range");
  }

  const int super_source = net.node_count;
  const int super_sink = net.node_count + 1;
  Residual g(net.node_count + 2);

  double cap_sum = 0.0;
  for (const auto& arc : net.arcs) cap_sum += arc.upper;

  std::vector<double> excess(net.node_count, 0.0);
  std::vector<std::pair<int, int>> arc_edge;  // (node, edge index) per input arc
  for (const auto& arc : net.arcs) {
    arc_edge.push_back({arc.from, static_cast<int>(g.adj[arc.from].size())});
    g.add(arc.from, arc.to, arc.upper - arc.lower, arc.cost);
    excess[arc.to] += arc.lower;
    excess[arc.from] -= arc.lower;
  }
  // Free flow value: close the circulation through sink -> source.
  g.add(net.sink, net.source, cap_sum + 1.0, 0.0);

  double need = 0.0;
  for (int v = 0; v < net.node_count; ++v) {
    if (excess[v] > 0.0) {
      g.add(super_source, v, excess[v], 0.0);
      need += excess[v];
    } else if (excess[v] < 0.0) {
      g.add(v, super_sink, -excess[v], 0.0);
    }
  }

  FlowResult result;
  if (g.max_flow(super_source, super_sink) < need - kEps) {
    result.feasible = false;
    return result;
  }
  while (g.cancel_negative_cycle()) {
  }

  result.feasible = true;
  result.flow.resize(net.arcs.size());
  for (size_t i = 0; i < net.arcs.size(); ++i) {
    auto [u, e] = arc_edge[i];
    const double used = (net.arcs[i].upper - net.arcs[i].lower) - g.adj[u][e].cap;
    result.flow[i] = net.arcs[i].lower + used;
    result.cost += result.flow[i] * net.arcs[i].cost;
  }
  return result;
}

}  // namespace kanon
