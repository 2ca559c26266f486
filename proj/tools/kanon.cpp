#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "kanon/approx.hpp"
#include "kanon/exact.hpp"
#include "kanon/gen.hpp"
#include "kanon/io.hpp"
#include "kanon/model.hpp"
#include "kanon/special.hpp"

using nlohmann::json;
using namespace kanon;

namespace {

int limit_m_from_env() {
  if (const char* env = std::getenv("KANON_LIMIT_M")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 12;
}

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch())
      .count();
}

struct RunRecord {
  std::string generator;
  std::string params;
  int n = 0;
  int m = 0;
  int k = 0;
  std::string algo;
  std::string objective;
  double value = 0.0;
  std::optional<double> oracle;
  std::optional<double> ratio;  // oracle / value
  double millis = 0.0;

  json to_json() const {
    json j{{"generator", generator}, {"params", params}, {"n", n},
           {"m", m},                 {"k", k},           {"algo", algo},
           {"objective", objective}, {"value", value},   {"millis", millis}};
    if (oracle) j["oracle"] = *oracle;
    if (ratio) j["ratio"] = *ratio;
    return j;
  }

  std::string csv_row() const {
    std::ostringstream out;
    out << generator << ',' << params << ',' << n << ',' << m << ',' << k << ','
        << algo << ',' << objective << ',' << value << ',';
    if (oracle) out << *oracle;
    out << ',';
    if (ratio) out << *ratio;
    out << ',' << millis;
    return out.str();
  }
};

constexpr const char* kCsvHeader =
    "generator,params,n,m,k,algo,objective,value,oracle,ratio,millis";

void write_instance(const Instance& inst, const std::string& generator,
                    const json& params, const std::string& out_path) {
  json j = to_json(inst);
  j["metadata"] = json{{"generator", generator}, {"params", params}};
  save_json(j, out_path);
}

std::pair<SignalingScheme, Evaluation> dispatch_solve(const Instance& inst,
                                                      const std::string& algo,
                                                      Objective objective,
                                                      const std::string& method,
                                                      int max_signals, int limit_m) {
  if (algo == "exact") {
    ExactConfig cfg;
    cfg.objective = objective;
    cfg.limit_m = limit_m;
    return solve_exact(inst, cfg);
  }
  if (algo == "approx") {
    if (objective != Objective::welfare) {
      throw std::invalid_argument("approx solves welfare; use revenue-transfer");
    }
    return approx_welfare(inst, method == "greedy" ? CardinalityMethod::greedy
                                                   : CardinalityMethod::exact);
  }
  if (algo == "constant-signals") {
    if (objective != Objective::welfare) {
      throw std::invalid_argument("constant-signals solves welfare only");
    }
    return solve_constant_signals(inst, max_signals);
  }
  if (algo == "dp") {
    if (objective != Objective::welfare) {
      throw std::invalid_argument("dp solves welfare only");
    }
    return solve_structured_dp(inst, inst.k);
  }
  if (algo == "revenue-transfer") {
    RevenueTransferConfig cfg;
    return transfer_revenue(inst, cfg);
  }
  throw CLI::ValidationError("unknown algorithm: " + algo);
}

Instance gap_instance(int k, double epsilon) { return gen_gap({k, epsilon}); }

SignalingScheme gap_named_scheme(int k) {
  SignalingScheme scheme;
  std::vector<int> first(k * k), last(k);
  std::iota(first.begin(), first.end(), 0);
  std::iota(last.begin(), last.end(), k * k);
  scheme.bundles = {first, last};
  return scheme;
}

void print_ratio_summary(const std::vector<RunRecord>& records) {
  double lo = 1e300, hi = -1e300, sum = 0.0;
  int cnt = 0;
  for (const auto& r : records) {
    if (!r.oracle || *r.oracle <= 0.0) continue;
    const double ratio = r.value / *r.oracle;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    sum += ratio;
    ++cnt;
  }
  if (cnt == 0) {
    std::cout << "no oracle ratios\n";
  } else {
    std::cout << "alg/opt ratio over " << cnt << " runs: min " << lo << " mean "
              << sum / cnt << " max " << hi << "\n";
  }
}

void run_bench(const std::string& suite, const std::string& out_path, int limit_m) {
  std::vector<RunRecord> records;

  auto timed = [&](auto&& fn) {
    const double t0 = now_ms();
    auto value = fn();
    return std::make_pair(value, now_ms() - t0);
  };

  if (suite == "ratio-welfare" || suite == "ratio-revenue") {
    const bool welfare = suite == "ratio-welfare";
    for (int i = 0; i < 200; ++i) {
      const std::uint64_t seed = 1000 + i;
      std::mt19937_64 rng(seed);
      const int n = 2 + static_cast<int>(rng() % 4);
      const int m = 4 + static_cast<int>(rng() % 5);
      const int k = welfare ? 2 + static_cast<int>(rng() % 2) : 2;
      const Instance inst = gen_random(n, m, k, seed, 0, 9);

      RunRecord rec;
      rec.generator = "random";
      rec.params = "seed=" + std::to_string(seed);
      rec.n = n;
      rec.m = m;
      rec.k = k;
      rec.objective = welfare ? "welfare" : "revenue";
      rec.algo = welfare ? "approx" : "revenue-transfer";
      auto [value, ms] = timed([&] {
        return welfare ? approx_welfare(inst, CardinalityMethod::exact).second.total
                       : transfer_revenue(inst).second.total;
      });
      rec.value = value;
      rec.millis = ms;
      ExactConfig cfg;
      cfg.objective = welfare ? Objective::welfare : Objective::revenue;
      cfg.limit_m = limit_m;
      rec.oracle = solve_exact(inst, cfg).second.total;
      if (rec.value > 0.0) rec.ratio = *rec.oracle / rec.value;
      records.push_back(rec);
    }
    print_ratio_summary(records);
  } else if (suite == "gap-family") {
    const double epsilon = 0.2;
    for (int k : {2, 3, 4}) {
      const Instance inst = gap_instance(k, epsilon);
      RunRecord named;
      named.generator = "gap";
      named.params = "k=" + std::to_string(k) + ";epsilon=0.2";
      named.n = inst.n;
      named.m = inst.m;
      named.k = k;
      named.objective = "welfare";
      named.algo = k == 2 ? "exact" : "closed-form";
      auto [opt, ms] = timed([&] {
        if (k == 2) {
          ExactConfig cfg;
          cfg.limit_m = limit_m;
          return solve_exact(inst, cfg).second.total;
        }
        return evaluate_welfare(inst, gap_named_scheme(k)).total;
      });
      named.value = opt;
      named.millis = ms;
      records.push_back(named);

      RunRecord approx = named;
      approx.algo = k >= 4 ? "approx-greedy" : "approx";
      auto [alg, ms2] = timed([&] {
        return approx_welfare(inst, k >= 4 ? CardinalityMethod::greedy
                                           : CardinalityMethod::exact)
            .second.total;
      });
      approx.value = alg;
      approx.millis = ms2;
      approx.oracle = opt;
      if (alg > 0.0) approx.ratio = opt / alg;
      records.push_back(approx);
      std::cout << "K=" << k << " OPT=" << opt << " ALG=" << alg
                << " (bound K+1=" << k + 1 << ")\n";
    }
  } else if (suite == "reduction-iff") {
    int failures = 0;
    auto sweep = [&](const std::vector<long long>& xs) {
      SspsParams params{xs};
      const double t0 = now_ms();
      const IffReport report = verify_reduction_iff(params);
      RunRecord rec;
      rec.generator = "revenue-reduction";
      std::ostringstream ps;
      ps << "xs=";
      for (size_t i = 0; i < xs.size(); ++i) ps << (i ? "|" : "") << xs[i];
      ps << ";iff=" << (report.iff_holds ? "true" : "false");
      rec.params = ps.str();
      rec.n = 3;
      rec.m = 2 * params.anonymity();
      rec.k = params.anonymity();
      rec.algo = "verify-iff";
      rec.objective = "revenue";
      rec.value = report.best_revenue;
      rec.oracle = report.w;
      rec.millis = now_ms() - t0;
      records.push_back(rec);
      if (!report.iff_holds) ++failures;
    };
    for (long long a = 1; a <= 4; ++a) {
      for (long long b = 1; b <= 4; ++b) sweep({a, b});
    }
    for (long long a = 1; a <= 4; ++a) {
      for (long long b = 1; b <= 4; ++b) {
        for (long long c = 1; c <= 4; ++c) {
          for (long long d = 1; d <= 4; ++d) sweep({a, b, c, d});
        }
      }
    }
    std::cout << "iff holds on " << records.size() - failures << "/" << records.size()
              << " cases\n";
  } else {
    throw CLI::ValidationError("unknown suite: " + suite);
  }

  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << kCsvHeader << "\n";
  for (const auto& r : records) out << r.csv_row() << "\n";
  std::cout << "wrote " << records.size() << " rows to " << out_path << "\n";
}

int run(int argc, char** argv) {
  CLI::App app{"K-anonymous signaling scheme solver"};
  app.require_subcommand(1);
  const int limit_m = limit_m_from_env();

  // ---- gen ----
  auto* gen = app.add_subcommand("gen", "generate instance files");
  gen->require_subcommand(1);
  std::string out_path;

  auto* gen_rand = gen->add_subcommand("random", "seeded random integer instance");
  int gn = 3, gm = 6, gk = 2, glo = 0, ghi = 9;
  std::uint64_t gseed = 1;
  gen_rand->add_option("--n", gn)->required();
  gen_rand->add_option("--m", gm)->required();
  gen_rand->add_option("--k", gk)->required();
  gen_rand->add_option("--seed", gseed);
  gen_rand->add_option("--lo", glo);
  gen_rand->add_option("--hi", ghi);
  gen_rand->add_option("-o,--out", out_path)->required();

  auto* gen_gap_cmd = gen->add_subcommand("gap", "approximation gap family");
  int gapk = 2;
  double gapeps = 0.2;
  gen_gap_cmd->add_option("--k", gapk)->required();
  gen_gap_cmd->add_option("--epsilon", gapeps);
  gen_gap_cmd->add_option("-o,--out", out_path)->required();

  auto* gen_wr = gen->add_subcommand("welfare-reduction",
                                     "pad a cardinality instance to K-anonymity");
  int wrn = 2, wrm = 3, wrs = 2, wrlo = 0, wrhi = 5;
  std::uint64_t wrseed = 1;
  std::string wr_source;
  gen_wr->add_option("--source", wr_source,
                     "instance JSON supplying the source values");
  gen_wr->add_option("--n", wrn);
  gen_wr->add_option("--m", wrm);
  gen_wr->add_option("--s", wrs)->required();
  gen_wr->add_option("--seed", wrseed);
  gen_wr->add_option("--lo", wrlo);
  gen_wr->add_option("--hi", wrhi);
  gen_wr->add_option("-o,--out", out_path)->required();

  auto* gen_rr = gen->add_subcommand("revenue-reduction", "SSPS table instance");
  std::vector<long long> xs;
  gen_rr->add_option("--xs", xs, "comma separated positive integers")
      ->required()
      ->delimiter(',');
  gen_rr->add_option("-o,--out", out_path)->required();

  // ---- solve ----
  auto* solve = app.add_subcommand("solve", "solve an instance file");
  std::string in_path, algo = "exact", objective = "welfare", method = "exact";
  std::string solve_out;
  int max_signals = 2;
  bool with_oracle = false;
  solve->add_option("instance", in_path)->required();
  solve->add_option("--algo", algo)
      ->check(CLI::IsMember(
          {"exact", "approx", "constant-signals", "dp", "revenue-transfer"}));
  solve->add_option("--objective", objective)
      ->check(CLI::IsMember({"welfare", "revenue"}));
  solve->add_option("--method", method)->check(CLI::IsMember({"exact", "greedy"}));
  solve->add_option("--max-signals", max_signals);
  solve->add_flag("--oracle", with_oracle, "also run the exact oracle");
  solve->add_option("-o,--out", solve_out);

  // ---- eval ----
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a scheme on an instance");
  std::string eval_instance, eval_scheme, eval_objective = "welfare", eval_out;
  eval_cmd->add_option("instance", eval_instance)->required();
  eval_cmd->add_option("scheme", eval_scheme)->required();
  eval_cmd->add_option("--objective", eval_objective)
      ->check(CLI::IsMember({"welfare", "revenue"}));
  eval_cmd->add_option("-o,--out", eval_out);

  // ---- bench ----
  auto* bench = app.add_subcommand("bench", "run a benchmark sweep, write CSV");
  std::string suite, bench_out = "bench.csv";
  bench->add_option("suite", suite)
      ->required()
      ->check(CLI::IsMember(
          {"ratio-welfare", "ratio-revenue", "gap-family", "reduction-iff"}));
  bench->add_option("-o,--out", bench_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (gen_rand->parsed()) {
    write_instance(gen_random(gn, gm, gk, gseed, glo, ghi), "random",
                   json{{"n", gn}, {"m", gm}, {"k", gk}, {"seed", gseed},
                        {"lo", glo}, {"hi", ghi}},
                   out_path);
  } else if (gen_gap_cmd->parsed()) {
    write_instance(gap_instance(gapk, gapeps), "gap",
                   json{{"k", gapk}, {"epsilon", gapeps}}, out_path);
  } else if (gen_wr->parsed()) {
    CardinalityInstance ci;
    json params;
    if (!wr_source.empty()) {
      const Instance src = load_instance(wr_source);
      ci = {src.n, src.m, wrs, src.values};
      params = json{{"source", wr_source}, {"s", wrs}};
    } else {
      const Instance src = gen_random(wrn, wrm, 1, wrseed, wrlo, wrhi);
      ci = {src.n, src.m, wrs, src.values};
      params = json{{"n", wrn}, {"m", wrm}, {"s", wrs}, {"seed", wrseed}};
    }
    write_instance(gen_welfare_reduction(ci), "welfare-reduction", params, out_path);
  } else if (gen_rr->parsed()) {
    write_instance(gen_revenue_reduction(SspsParams{xs}), "revenue-reduction",
                   json{{"xs", xs}}, out_path);
  } else if (solve->parsed()) {
    const Instance inst = load_instance(in_path);
    const Objective obj =
        objective == "revenue" ? Objective::revenue : Objective::welfare;
    const double t0 = now_ms();
    auto [scheme, eval] = dispatch_solve(inst, algo, obj, method, max_signals,
                                         limit_m);
    RunRecord rec;
    rec.generator = "file";
    rec.params = in_path;
    rec.n = inst.n;
    rec.m = inst.m;
    rec.k = inst.k;
    rec.algo = algo;
    rec.objective = objective;
    rec.value = eval.total;
    rec.millis = now_ms() - t0;
    if (with_oracle) {
      ExactConfig cfg;
      cfg.objective = obj;
      cfg.limit_m = limit_m;
      rec.oracle = solve_exact(inst, cfg).second.total;
      if (rec.value > 0.0) rec.ratio = *rec.oracle / rec.value;
    }
    json out{{"scheme", to_json(scheme)},
             {"evaluation", to_json(eval)},
             {"run", rec.to_json()}};
    if (!solve_out.empty()) save_json(out, solve_out);
    std::cout << algo << " " << objective << " total " << eval.total;
    if (rec.oracle) std::cout << " oracle " << *rec.oracle;
    std::cout << "\n";
  } else if (eval_cmd->parsed()) {
    const Instance inst = load_instance(eval_instance);
    const SignalingScheme scheme = load_scheme(eval_scheme);
    const Evaluation eval = eval_objective == "revenue"
                                ? evaluate_revenue(inst, scheme)
                                : evaluate_welfare(inst, scheme);
    if (!eval_out.empty()) save_json(to_json(eval), eval_out);
    std::cout << eval_objective << " total " << eval.total << "\n";
  } else if (bench->parsed()) {
    run_bench(suite, bench_out, limit_m);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::Error&) {
    return 1;
  } catch (const ScaleExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InfeasibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
