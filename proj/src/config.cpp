// Copyright 2026 The qtdsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qtdsim/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qtdsim/errors.hpp"

namespace qtdsim {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorKind::Config, what); }

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) config_error(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) config_error("unknown field '" + key + "' in " + where);
  }
}

const json& required(const json& obj, const std::string& key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) config_error("missing field '" + key + "' in " + where);
  return *it;
}

double number(const json& v, const std::string& what) {
  if (!v.is_number()) config_error(what + " must be a number");
  return v.get<double>();
}

long long integer(const json& v, const std::string& what) {
  if (!v.is_number_integer()) config_error(what + " must be an integer");
  return v.get<long long>();
}

Eigen::VectorXd real_vector(const json& v, const std::string& what) {
  if (!v.is_array()) config_error(what + " must be an array");
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = number(v[i], what);
  return out;
}

ComplexMatrix parse_matrix(const json& v, const std::string& where) {
  reject_unknown(v, {"dim", "data"}, where);
  const long long dim = integer(required(v, "dim", where), where + ".dim");
  if (dim < 1 || dim > 1024) config_error(where + ".dim out of range");
  const json& data = required(v, "data", where);
  if (!data.is_array() || data.size() != static_cast<std::size_t>(dim * dim)) {
    config_error(where + ".data must hold dim*dim [re, im] pairs");
  }
  ComplexMatrix m(dim, dim);
  for (std::size_t k = 0; k < data.size(); ++k) {
    const json& pair = data[k];
    if (!pair.is_array() || pair.size() != 2) config_error(where + ".data entries must be [re, im]");
    m(static_cast<Eigen::Index>(k) / dim, static_cast<Eigen::Index>(k) % dim) =
        Complex(number(pair[0], where), number(pair[1], where));
  }
  return m;
}

ButcherTableau parse_tableau(const json& v) {
  if (v.is_string()) return ButcherTableau::by_name(v.get<std::string>());
  reject_unknown(v, {"a", "b", "c", "order"}, "method.tableau");
  ButcherTableau t;
  t.name = "custom";
  const json& rows = required(v, "a", "method.tableau");
  t.b = real_vector(required(v, "b", "method.tableau"), "method.tableau.b");
  t.c = real_vector(required(v, "c", "method.tableau"), "method.tableau.c");
  t.stages = static_cast<int>(t.b.size());
  if (!rows.is_array() || rows.size() != static_cast<std::size_t>(t.b.size())) config_error("method.tableau.a must be s x s");
  t.a.resize(t.stages, t.stages);
  for (int j = 0; j < t.stages; ++j) {
    const Eigen::VectorXd row = real_vector(rows[static_cast<std::size_t>(j)], "method.tableau.a");
    if (row.size() != t.stages) config_error("method.tableau.a must be s x s");
    t.a.row(j) = row.transpose();
  }
  t.order = static_cast<int>(integer(required(v, "order", "method.tableau"), "method.tableau.order"));
  t.validate();
  return t;
}

MethodConfig parse_method(const json& v) {
  reject_unknown(v, {"kind", "tableau", "order"}, "method");
  const json& kind = required(v, "kind", "method");
  MethodConfig m;
  if (kind == "rk") {
    if (v.contains("order")) config_error("method.order applies to kind \"taylor\" only");
    m.kind = MethodConfig::Kind::Rk;
    m.tableau = parse_tableau(required(v, "tableau", "method"));
  } else if (kind == "taylor") {
    if (v.contains("tableau")) config_error("method.tableau applies to kind \"rk\" only");
    m.kind = MethodConfig::Kind::Taylor;
    const long long p = integer(required(v, "order", "method"), "method.order");
    if (p < 1 || p > 6) config_error("method.order must lie in 1..6");
    m.taylor_order = static_cast<int>(p);
  } else {
    config_error("method.kind must be \"rk\" or \"taylor\"");
  }
  return m;
}

TermConfig parse_term(const json& v, int qubits, std::size_t index) {
  const std::string where = "terms[" + std::to_string(index) + "]";
  reject_unknown(v, {"coeff", "paulis", "matrix"}, where);
  TermConfig term;
  const json& coeff = required(v, "coeff", where);
  if (!coeff.is_string()) config_error(where + ".coeff must be an expression string");
  term.coeff = coeff.get<std::string>();
  const bool has_paulis = v.contains("paulis");
  if (has_paulis == v.contains("matrix")) config_error(where + " needs exactly one of paulis, matrix");
  if (has_paulis) {
    const json& list = v.at("paulis");
    if (!list.is_array() || list.empty()) config_error(where + ".paulis must be a nonempty array");
    for (const json& p : list) {
      reject_unknown(p, {"string", "weight"}, where + ".paulis[]");
      const json& s = required(p, "string", where + ".paulis[]");
      if (!s.is_string()) config_error(where + ".paulis[].string must be a string");
      PauliWeight pw{s.get<std::string>(), number(required(p, "weight", where + ".paulis[]"), "weight")};
      if (static_cast<int>(pw.string.size()) != qubits) {
        config_error(where + ": Pauli string '" + pw.string + "' must have length " +
                     std::to_string(qubits));
      }
      term.paulis.push_back(std::move(pw));
    }
  } else {
    term.matrix = parse_matrix(v.at("matrix"), where + ".matrix");
    if (term.matrix->rows() != (Eigen::Index{1} << qubits)) {
      config_error(where + ".matrix.dim must equal 2^qubits");
    }
  }
  return term;
}

}  // namespace

std::string MethodConfig::label() const {
  if (kind == Kind::Taylor) return "taylor-" + std::to_string(taylor_order);
  return "rk-" + tableau.name;
}

std::size_t RunConfig::resolved_steps() const {
  return steps ? *steps : steps_for_accuracy(t_final, epsilon, method.order());
}

RunConfig parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    config_error(std::string("config is not valid JSON: ") + e.what());
  }
  reject_unknown(doc, {"qubits", "terms", "t_final", "method", "steps", "epsilon", "grid_points", "seed"},
                 "config");
  RunConfig cfg;
  const long long qubits = integer(required(doc, "qubits", "config"), "qubits");
  if (qubits < 1 || qubits > 10) config_error("qubits must lie in 1..10");
  cfg.qubits = static_cast<int>(qubits);

  const json& terms = required(doc, "terms", "config");
  if (!terms.is_array() || terms.empty()) config_error("terms must be a nonempty array");
  for (std::size_t i = 0; i < terms.size(); ++i) cfg.terms.push_back(parse_term(terms[i], cfg.qubits, i));

  cfg.t_final = number(required(doc, "t_final", "config"), "t_final");
  if (!(cfg.t_final > 0.0 && cfg.t_final <= 1.0)) config_error("t_final must lie in (0, 1]");

  cfg.method = parse_method(required(doc, "method", "config"));

  const json& steps = required(doc, "steps", "config");
  if (steps.is_string()) {
    if (steps != "auto") config_error("steps must be a positive integer or \"auto\"");
  } else {
    const long long n = integer(steps, "steps");
    if (n < 1) config_error("steps must be a positive integer or \"auto\"");
    cfg.steps = static_cast<std::size_t>(n);
  }

  cfg.epsilon = number(required(doc, "epsilon", "config"), "epsilon");
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 0.5)) config_error("epsilon must lie in (0, 0.5)");

  if (doc.contains("grid_points")) {
    const long long g = integer(doc.at("grid_points"), "grid_points");
    if (g < 2 || g > (1 << 20)) config_error("grid_points must lie in 2..2^20");
    cfg.grid_points = static_cast<int>(g);
  }
  if (doc.contains("seed")) {
    const long long s = integer(doc.at("seed"), "seed");
    if (s < 0) config_error("seed must be nonnegative");
    cfg.seed = static_cast<std::uint64_t>(s);
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) config_error("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

TimeDependentHamiltonian build_hamiltonian(const RunConfig& config) {
  std::vector<std::pair<CoefficientExpr, HamiltonianTerm>> terms;
  for (std::size_t i = 0; i < config.terms.size(); ++i) {
    const TermConfig& t = config.terms[i];
    CoefficientExpr coeff = CoefficientExpr::constant(0.0);
    try {
      coeff = parse_coefficient(t.coeff);
    } catch (const ParseError& e) {
      throw ParseError(e.offset(), "terms[" + std::to_string(i) + "].coeff: " + e.detail());
    }
    HamiltonianTerm term = t.matrix ? HamiltonianTerm::from_matrix(*t.matrix)
                                    : HamiltonianTerm::from_paulis(config.qubits, t.paulis);
    terms.emplace_back(std::move(coeff), std::move(term));
  }
  return TimeDependentHamiltonian(config.qubits, std::move(terms), config.grid_points);
}

RunConfig benchmark_config() {
  RunConfig cfg;
  cfg.qubits = 2;
  cfg.terms.push_back({"cos(t)", {{"XI", 0.4}}, std::nullopt});
  cfg.terms.push_back({"sin(t)", {{"ZZ", 0.4}}, std::nullopt});
  cfg.t_final = 1.0;
  cfg.method.kind = MethodConfig::Kind::Rk;
  cfg.method.tableau = ButcherTableau::rk4();
  cfg.steps = 16;
  cfg.epsilon = 1e-6;
  return cfg;
}

}  // namespace qtdsim
