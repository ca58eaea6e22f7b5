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

#include "qtdsim/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <future>

#include <json.hpp>

#include "qtdsim/costmodel.hpp"
#include "qtdsim/reference_oracle.hpp"
#include "qtdsim/taylor_propagator.hpp"

namespace qtdsim::cli {

namespace {

using nlohmann::ordered_json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ordered_json matrix_json(const ComplexMatrix& m) {
  ordered_json data = ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back({m(r, c).real(), m(r, c).imag()});
  }
  return {{"dim", m.rows()}, {"data", std::move(data)}};
}

ordered_json cost_json(const CostRecord& cost) {
  ordered_json queries = ordered_json::object();
  for (const auto& [term, n] : cost.queries) queries[std::to_string(term)] = to_decimal(n);
  return {{"depth_units", to_decimal(cost.depth_units)},
          {"queries", std::move(queries)},
          {"queries_total", to_decimal(cost.queries_total())},
          {"ancilla_high_water", cost.ancilla_high_water}};
}

double ratio(const Count& a, const Count& b) {
  if (a == b) return 1.0;
  return std::pow(10.0, log10_count(a) - log10_count(b));
}

}  // namespace

ExitCode exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config:
    case ErrorKind::Parse:
    case ErrorKind::NormAssumptionViolated:
    case ErrorKind::StencilOutOfRange:
      return kConfigError;
    case ErrorKind::AmplificationHeadroom:
    case ErrorKind::SubnormalizationViolated:
    case ErrorKind::ContractViolation:
      return kInvariantViolation;
    case ErrorKind::NumericalFailure:
    case ErrorKind::BranchAmbiguity:
    case ErrorKind::DegenerateDerivative:
    case ErrorKind::OracleFailure:
      return kNumericalFailure;
  }
  return kNumericalFailure;
}

Propagation run_method(const RunConfig& config, const TimeDependentHamiltonian& h,
                       std::size_t steps, bool keep_states) {
  if (config.method.kind == MethodConfig::Kind::Taylor) {
    return propagate_taylor(h, config.method.taylor_order, steps, config.t_final, config.epsilon,
                            keep_states);
  }
  return propagate(h, config.method.tableau, steps, config.t_final, config.epsilon, keep_states);
}

std::string simulate(const RunConfig& config, bool reference, bool timing) {
  const auto start = std::chrono::steady_clock::now();
  const TimeDependentHamiltonian h = build_hamiltonian(config);
  const std::size_t steps = config.resolved_steps();
  const Propagation run = run_method(config, h, steps);
  const BlockEncoding& enc = run.final_state().encoding;

  ordered_json out;
  out["method"] = config.method.label();
  out["t_final"] = config.t_final;
  out["steps"] = steps;
  out["steps_rule"] = config.steps ? "fixed" : "auto";
  out["dt"] = run.final_state().dt;
  out["epsilon"] = config.epsilon;
  out["alpha"] = enc.alpha();
  out["err"] = enc.err();
  out["ancillas"] = enc.ancillas();
  out["target"] = matrix_json(enc.target());
  out["cost"] = cost_json(enc.cost());
  if (reference) {
    const ComplexMatrix u = exact_propagator(h, config.t_final, kReferenceTol);
    out["reference_tol"] = kReferenceTol;
    out["global_error"] = global_error(enc.target(), u);
  }
  if (timing) {
    out["wall_time_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return out.dump(2) + "\n";
}

std::string converge(const RunConfig& config, const std::vector<std::size_t>& steps,
                     unsigned jobs) {
  if (steps.size() < 3) throw Error(ErrorKind::Config, "converge needs at least 3 step counts");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    for (std::size_t k = 0; k < i; ++k) {
      if (steps[i] == steps[k]) throw Error(ErrorKind::Config, "converge: step counts must be distinct");
    }
  }
  const TimeDependentHamiltonian h = build_hamiltonian(config);
  const ComplexMatrix u = exact_propagator(h, config.t_final, kReferenceTol);

  struct Row {
    double dt;
    double error;
    double alpha;
    Count depth;
    Count queries;
  };
  auto run_one = [&](std::size_t n) {
    const Propagation run = run_method(config, h, n);
    const BlockEncoding& enc = run.final_state().encoding;
    return Row{run.final_state().dt, global_error(enc.target(), u), enc.alpha(),
               enc.cost().depth_units, enc.cost().queries_total()};
  };

  // Bounded fan-out; rows are collected in input order.
  std::vector<Row> rows;
  rows.reserve(steps.size());
  const std::size_t width = std::max(1u, jobs);
  for (std::size_t begin = 0; begin < steps.size(); begin += width) {
    const std::size_t end = std::min(steps.size(), begin + width);
    std::vector<std::future<Row>> batch;
    for (std::size_t i = begin; i < end; ++i) {
      batch.push_back(std::async(width > 1 ? std::launch::async : std::launch::deferred, run_one, steps[i]));
    }
    for (auto& f : batch) rows.push_back(f.get());
  }

  std::string csv = "steps,dt,error,alpha,depth_units,queries_total\n";
  std::vector<ConvergencePoint> points;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& r = rows[i];
    csv += std::to_string(steps[i]) + "," + fmt17(r.dt) + "," + fmt17(r.error) + "," +
           fmt17(r.alpha) + "," + to_decimal(r.depth) + "," + to_decimal(r.queries) + "\n";
    points.push_back({r.dt, r.error});
  }
  csv += "# fitted_order=" + fmt17(fit_convergence_order(points).fitted_order) + "\n";
  return csv;
}

std::string resources(const RunConfig& config) {
  const TimeDependentHamiltonian h = build_hamiltonian(config);
  const std::size_t steps = config.resolved_steps();
  const Propagation run = run_method(config, h, steps);
  const CostRecord& measured = run.cost();
  const int p = config.method.order();
  const DerivativeBounds bounds = derivative_bounds(h, p, config.grid_points);
  const double t_max = costmodel::asymptotic_t_max(static_cast<double>(h.d_max()), h.max_entry(),
                                              config.epsilon);

  ordered_json out;
  out["method"] = config.method.label();
  out["steps"] = steps;
  out["epsilon"] = config.epsilon;
  out["m"] = h.size();
  out["d_max"] = h.d_max();
  out["h_max"] = h.max_entry();
  out["M"] = bounds.overall;
  out["M_j"] = bounds.per_order;
  out["measured"] = cost_json(measured);

  Count depth;
  Count per_term;
  ordered_json asymptotic;
  asymptotic["t_max"] = t_max;
  asymptotic["encode_h_depth"] = costmodel::asymptotic_encode_h_depth(h.size(), t_max, config.epsilon);
  if (config.method.kind == MethodConfig::Kind::Rk) {
    const RkPrediction pred = predicted_cost(config.method.tableau, h.size(), steps,
                                             config.epsilon, t_max);
    depth = pred.depth_units;
    per_term = pred.queries_per_term;
    asymptotic["rk_recursion_log10"] = std::log10(pred.asymptotic_recursion);
    asymptotic["rk_closed_form_log10"] = pred.asymptotic_total_log10;
  } else {
    const TaylorPrediction pred = predicted_cost_taylor(h, p, steps, config.epsilon);
    const TaylorPrediction word_conv =
        predicted_cost_taylor(h, p, steps, config.epsilon, WordConvention::Uniform);
    depth = pred.depth_units;
    per_term = pred.queries_per_term;
    asymptotic["taylor_total_log10"] = std::log10(pred.asymptotic_total);
    asymptotic["word_convention_depth_units"] = to_decimal(word_conv.depth_units);
    out["taylor_subnormalization"] = TaylorPlan::make(h, p).subnorm;
  }
  const Count queries_total = per_term * h.size();
  out["predicted"] = {{"depth_units", to_decimal(depth)},
                      {"queries_per_term", to_decimal(per_term)},
                      {"queries_total", to_decimal(queries_total)}};
  out["depth_ratio"] = ratio(measured.depth_units, depth);
  out["queries_ratio"] = ratio(measured.queries_total(), queries_total);
  out["exact_match"] = measured.depth_units == depth && measured.queries_total() == queries_total;
  out["measured_depth_log10"] = log10_count(measured.depth_units);
  out["asymptotic"] = std::move(asymptotic);
  return out.dump(2) + "\n";
}

std::vector<std::size_t> parse_steps_list(std::string_view text) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string item(text.substr(pos, comma - pos));
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size() || v == 0 || item.front() == '-') {
      throw Error(ErrorKind::Config, "--steps expects a comma-separated list of positive integers");
    }
    out.push_back(static_cast<std::size_t>(v));
    pos = comma + 1;
  }
  return out;
}

}  // namespace qtdsim::cli
