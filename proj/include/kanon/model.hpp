#pragma once

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kanon {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Comparison tolerance used throughout; instances built from integers stay
// exact well inside it.
inline constexpr double kTol = 1e-9;

// Raised when a requested computation is infeasible (k > m, c*k > m, ...).
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when an exact solve would exceed the enumeration scale guard.
struct ScaleExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Valuations of the form V_ij = p_i * q_j + b_i.
struct StructuredValuation {
  Vector p;  // per-bidder slope
  Vector q;  // per-category quality
  Vector b;  // per-bidder offset

  Matrix expand() const { return p * q.transpose() + b.replicate(1, q.size()); }
};

// One auction input: n bidders, m impression categories, anonymity level k,
// optional priors p_j and the raw valuation matrix v (n x m).
struct Instance {
  int n = 0;
  int m = 0;
  int k = 1;
  std::optional<Vector> priors;
  Matrix values;
  std::optional<StructuredValuation> structured;
};

// A deterministic signaling scheme: a partition of {0,...,m-1} into bundles.
// Bundle sizes are deliberately unconstrained here; K-anonymity is a separate
// check so that intermediate partitions can be represented during repair.
struct SignalingScheme {
  std::vector<std::vector<int>> bundles;
};

enum class Objective { welfare, revenue };

inline const char* to_string(Objective o) {
  return o == Objective::welfare ? "welfare" : "revenue";
}

struct BundleOutcome {
  int bundle = 0;
  int winner = 0;
  double winner_value = 0.0;
  double price = 0.0;  // 0 for welfare evaluations
};

struct Evaluation {
  Objective objective = Objective::welfare;
  double total = 0.0;
  std::vector<BundleOutcome> per_bundle;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Reports every violated Instance invariant; never throws.
ValidationReport validate_instance(const Instance& inst);

// Prior-weighted value matrix V_ij = v_ij * p_j (V = v when priors absent).
Matrix bundle_values(const Instance& inst);

// True iff the bundles are non-empty, pairwise disjoint and cover {0,...,m-1}.
bool is_partition(const SignalingScheme& scheme, int m);

// True iff every bundle has size >= k. Throws if scheme is not a partition.
bool check_k_anonymous(const SignalingScheme& scheme, int k, int m);

// Per-bidder value of one bundle: row sums of V over the bundle's columns.
Vector bidder_bundle_values(const Matrix& V, const std::vector<int>& bundle);

// Winner per bundle is argmax_i of the bundle value, ties to the lowest
// bidder index; total is the sum of winner values.
Evaluation evaluate_welfare(const Instance& inst, const SignalingScheme& scheme);

// Same winners as welfare; price per bundle is the second-highest bidder
// value (0 when n = 1); total is the sum of prices.
Evaluation evaluate_revenue(const Instance& inst, const SignalingScheme& scheme);

}  // namespace kanon
