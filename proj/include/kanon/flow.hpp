#pragma once

#include <vector>

#include "kanon/model.hpp"

namespace kanon {

// Arc with flow bounds (l, u) and per-unit cost c.
struct FlowArc {
  int from = 0;
  int to = 0;
  double lower = 0.0;
  double upper = 0.0;
  double cost = 0.0;
};

struct FlowNetwork {
  int node_count = 0;
  int source = 0;
  int sink = 0;
  std::vector<FlowArc> arcs;
};

struct FlowResult {
  bool feasible = false;
  std::vector<double> flow;  // per input arc, empty when infeasible
  double cost = 0.0;
};

// Minimum cost flow from source to sink subject to per-arc lower and upper
// bounds; flow value is free (>= 0). Lower bounds are eliminated by the
// standard excess transform, feasibility established by max flow from the
// excess supersource, cost minimized by residual negative-cycle canceling.
FlowResult min_cost_feasible_flow(const FlowNetwork& net);

}  // namespace kanon
