#include "kanon/gen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "kanon/exact.hpp"

namespace kanon {

long long SspsParams::total() const {
  return std::accumulate(xs.begin(), xs.end(), 0LL);
}

Instance gen_random(int n, int m, int k, std::uint64_t seed, int lo, int hi) {
  if (n < 1 || m < 1 || k < 1 || k > m) throw std::invalid_argument("bad dimensions");
  if (lo < 0 || hi < lo) throw std::invalid_argument("bad value range");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(lo, hi);
  Instance inst;
  inst.n = n;
  inst.m = m;
  inst.k = k;
  inst.values.resize(n, m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) inst.values(i, j) = dist(rng);
  }
  return inst;
}

Instance gen_gap(const GapParams& params) {
  const int k = params.k;
  if (k < 2) throw std::invalid_argument("gap instance requires k >= 2");
  if (!(params.epsilon > 0.0 && params.epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0,1)");
  }
  Instance inst;
  inst.n = k + 2;
  inst.m = k * k + k;
  inst.k = k;
  inst.values = Matrix::Zero(inst.n, inst.m);
  for (int j = 0; j < k * k; ++j) inst.values(0, j) = 1.0 / k;  // bidder A
  for (int i = 1; i <= k; ++i) inst.values(i, k * k + i - 1) = 1.0;  // B_i
  for (int j = 0; j < k; ++j) {
    inst.values(k + 1, k * k + j) = 1.0 - params.epsilon / k;  // bidder C
  }
  return inst;
}

int reduction_anonymity(int m, int s) {
  // K = ceil((m - s) / 2 + 1) = ceil((m - s + 2) / 2)
  return (m - s + 2 + 1) / 2;
}

Instance gen_welfare_reduction(const CardinalityInstance& ci) {
  if (ci.n < 1 || ci.m < 1 || ci.s < 1 || ci.s > ci.m) {
    throw std::invalid_argument("bad source: need 1 <= s <= m, n >= 1");
  }
  if (ci.values.rows() != ci.n || ci.values.cols() != ci.m) {
    throw std::invalid_argument("source matrix shape mismatch");
  }
  const int K = reduction_anonymity(ci.m, ci.s);
  const int pad = K * ci.s - ci.m + K - 1;

  Instance inst;
  inst.n = ci.n + pad;
  inst.m = ci.m + pad;
  inst.k = K;
  inst.values = Matrix::Zero(inst.n, inst.m);
  inst.values.topLeftCorner(ci.n, ci.m) = ci.values;
  for (int i = 0; i < pad; ++i) {
    inst.values(ci.n + i, ci.m + i) = 1.0 / ci.s;
  }
  return inst;
}

Instance gen_revenue_reduction(const SspsParams& params) {
  const int cnt = static_cast<int>(params.xs.size());
  if (cnt < 2 || cnt % 2 != 0) throw std::invalid_argument("|xs| must be even, >= 2");
  for (long long x : params.xs) {
    if (x <= 0) throw std::invalid_argument("xs entries must be positive");
  }
  const int k = params.anonymity();
  const double w = static_cast<double>(params.total());

  Instance inst;
  inst.n = 3;
  inst.m = 2 * k;
  inst.k = k;
  inst.values = Matrix::Zero(3, inst.m);
  inst.values(0, 0) = w / 2.0;
  inst.values(1, 1) = w / 2.0;
  for (int i = 0; i < cnt; ++i) inst.values(2, 2 + i) = params.xs[i];
  return inst;
}

bool ssps_solvable(const std::vector<long long>& xs) {
  const int cnt = static_cast<int>(xs.size());
  const long long sum = std::accumulate(xs.begin(), xs.end(), 0LL);
  if (sum % 2 != 0) return false;
  const int half = cnt / 2;
  for (unsigned mask = 0; mask < (1u << cnt); ++mask) {
    if (__builtin_popcount(mask) != half) continue;
    long long s = 0;
    for (int i = 0; i < cnt; ++i) {
      if (mask & (1u << i)) s += xs[i];
    }
    if (2 * s == sum) return true;
  }
  return false;
}

IffReport verify_reduction_iff(const SspsParams& params) {
  if (params.xs.size() > 8) throw ScaleExceeded("iff verifier limited to |xs| <= 8");
  IffReport report;
  report.ssps_ok = ssps_solvable(params.xs);
  report.w = static_cast<double>(params.total());

  ExactConfig cfg;
  cfg.objective = Objective::revenue;
  report.best_revenue = solve_exact(gen_revenue_reduction(params), cfg).second.total;
  const bool hits_w = std::abs(report.best_revenue - report.w) <= kTol;
  report.iff_holds = hits_w == report.ssps_ok;
  return report;
}

}  // namespace kanon
