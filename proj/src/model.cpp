#include "kanon/model.hpp"

#include <algorithm>

namespace kanon {

ValidationReport validate_instance(const Instance& inst) {
  ValidationReport report;
  auto flag = [&](const std::string& msg) { report.violations.push_back(msg); };

  if (inst.n < 1) flag("n must be positive");
  if (inst.m < 1) flag("m must be positive");
  if (inst.k < 1) flag("k must be positive");
  if (inst.m >= 1 && inst.k > inst.m) flag("k > m: no feasible scheme exists");

  if (inst.values.rows() != inst.n || inst.values.cols() != inst.m) {
    flag("matrix shape: values must be n x m");
  } else if ((inst.values.array() < 0.0).any()) {
    flag("values must be non-negative");
  }

  if (inst.priors) {
    if (inst.priors->size() != inst.m) {
      flag("priors length must equal m");
    } else if ((inst.priors->array() < 0.0).any()) {
      flag("priors must be non-negative");
    } else if (inst.priors->sum() <= 0.0) {
      flag("priors must have positive sum");
    }
  }

  if (inst.structured) {
    const auto& s = *inst.structured;
    if (s.p.size() != inst.n || s.b.size() != inst.n || s.q.size() != inst.m) {
      flag("structured dimensions must match n and m");
    } else if (inst.values.rows() == inst.n && inst.values.cols() == inst.m &&
               ((s.expand() - inst.values).array().abs() > kTol).any()) {
      flag("structured valuation does not reproduce values");
    }
  }
  return report;
}

namespace {

void require_valid(const Instance& inst) {
  auto report = validate_instance(inst);
  if (!report.ok()) {
    throw std::invalid_argument("invalid instance: " + report.violations.front());
  }
}

}  // namespace

Matrix bundle_values(const Instance& inst) {
  require_valid(inst);
  if (!inst.priors) return inst.values;
  return inst.values * inst.priors->asDiagonal();
}

bool is_partition(const SignalingScheme& scheme, int m) {
  std::vector<int> seen(m, 0);
  for (const auto& bundle : scheme.bundles) {
    if (bundle.empty()) return false;
    for (int j : bundle) {
      if (j < 0 || j >= m || seen[j]) return false;
      seen[j] = 1;
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; });
}

bool check_k_anonymous(const SignalingScheme& scheme, int k, int m) {
  if (!is_partition(scheme, m)) {
    throw std::invalid_argument("scheme is not a partition of {0,...,m-1}");
  }
  return std::all_of(scheme.bundles.begin(), scheme.bundles.end(),
                     [&](const auto& b) { return static_cast<int>(b.size()) >= k; });
}

Vector bidder_bundle_values(const Matrix& V, const std::vector<int>& bundle) {
  Vector out = Vector::Zero(V.rows());
  for (int j : bundle) out += V.col(j);
  return out;
}

namespace {

Evaluation evaluate(const Instance& inst, const SignalingScheme& scheme,
                    Objective objective) {
  require_valid(inst);
  if (!is_partition(scheme, inst.m)) {
    throw std::invalid_argument("scheme is not a partition of {0,...,m-1}");
  }
  const Matrix V = bundle_values(inst);

  Evaluation eval;
  eval.objective = objective;
  for (int b = 0; b < static_cast<int>(scheme.bundles.size()); ++b) {
    const Vector vals = bidder_bundle_values(V, scheme.bundles[b]);
    int winner = 0;
    for (int i = 1; i < inst.n; ++i) {
      if (vals[i] > vals[winner]) winner = i;  // ties keep the lowest index
    }
    double second = 0.0;
    if (inst.n > 1) {
      bool first = true;
      for (int i = 0; i < inst.n; ++i) {
        if (i == winner) continue;
        if (first || vals[i] > second) second = vals[i];
        first = false;
      }
    }
    BundleOutcome outcome;
    outcome.bundle = b;
    outcome.winner = winner;
    outcome.winner_value = vals[winner];
    outcome.price = objective == Objective::revenue ? second : 0.0;
    eval.total += objective == Objective::revenue ? outcome.price : outcome.winner_value;
    eval.per_bundle.push_back(outcome);
  }
  return eval;
}

}  // namespace

Evaluation evaluate_welfare(const Instance& inst, const SignalingScheme& scheme) {
  return evaluate(inst, scheme, Objective::welfare);
}

Evaluation evaluate_revenue(const Instance& inst, const SignalingScheme& scheme) {
  return evaluate(inst, scheme, Objective::revenue);
}

}  // namespace kanon
