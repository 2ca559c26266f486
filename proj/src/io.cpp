#include "kanon/io.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

namespace kanon {

using nlohmann::json;

namespace {

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  const auto rows = j.size();
  const auto cols = rows == 0 ? 0 : j.at(0).size();
  Matrix m(rows, cols);
  for (size_t i = 0; i < rows; ++i) {
    if (j.at(i).size() != cols) throw std::invalid_argument("ragged values matrix");
    for (size_t c = 0; c < cols; ++c) m(i, c) = j.at(i).at(c).get<double>();
  }
  return m;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Vector vector_from_json(const json& j) {
  Vector v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v[i] = j.at(i).get<double>();
  return v;
}

}  // namespace

json to_json(const Instance& inst) {
  json j{{"n", inst.n}, {"m", inst.m}, {"k", inst.k},
         {"values", matrix_to_json(inst.values)}};
  if (inst.priors) j["priors"] = vector_to_json(*inst.priors);
  if (inst.structured) {
    j["structured"] = json{{"p", vector_to_json(inst.structured->p)},
                           {"q", vector_to_json(inst.structured->q)},
                           {"b", vector_to_json(inst.structured->b)}};
  }
  return j;
}

Instance instance_from_json(const json& j) {
  Instance inst;
  inst.n = j.at("n").get<int>();
  inst.m = j.at("m").get<int>();
  inst.k = j.at("k").get<int>();
  inst.values = matrix_from_json(j.at("values"));
  if (j.contains("priors") && !j.at("priors").is_null()) {
    inst.priors = vector_from_json(j.at("priors"));
  }
  if (j.contains("structured") && !j.at("structured").is_null()) {
    const auto& s = j.at("structured");
    inst.structured = StructuredValuation{vector_from_json(s.at("p")),
                                          vector_from_json(s.at("q")),
                                          vector_from_json(s.at("b"))};
  }
  return inst;
}

json to_json(const SignalingScheme& scheme) {
  return json{{"bundles", scheme.bundles}};
}

SignalingScheme scheme_from_json(const json& j) {
  SignalingScheme scheme;
  scheme.bundles = j.at("bundles").get<std::vector<std::vector<int>>>();
  return scheme;
}

json to_json(const Evaluation& eval) {
  json per_bundle = json::array();
  for (const auto& o : eval.per_bundle) {
    per_bundle.push_back(json{{"bundle", o.bundle},
                              {"winner", o.winner},
                              {"winner_value", o.winner_value},
                              {"price", o.price}});
  }
  return json{{"objective", to_string(eval.objective)},
              {"total", eval.total},
              {"per_bundle", std::move(per_bundle)}};
}

Evaluation evaluation_from_json(const json& j) {
  Evaluation eval;
  const auto obj = j.at("objective").get<std::string>();
  if (obj == "welfare") {
    eval.objective = Objective::welfare;
  } else if (obj == "revenue") {
    eval.objective = Objective::revenue;
  } else {
    throw std::invalid_argument("objective must be welfare or revenue");
  }
  eval.total = j.at("total").get<double>();
  for (const auto& o : j.at("per_bundle")) {
    eval.per_bundle.push_back({o.at("bundle").get<int>(), o.at("winner").get<int>(),
                               o.at("winner_value").get<double>(),
                               o.at("price").get<double>()});
  }
  return eval;
}

namespace {

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

}  // namespace

Instance load_instance(const std::string& path) {
  return instance_from_json(load_json(path));
}

SignalingScheme load_scheme(const std::string& path) {
  return scheme_from_json(load_json(path));
}

void save_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace kanon
