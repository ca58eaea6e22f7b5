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

#include "qtdsim/rk_propagator.hpp"

#include <cmath>

#include "qtdsim/costmodel.hpp"
#include "qtdsim/errors.hpp"

namespace qtdsim {

namespace {

constexpr double kTableauTol = 1e-12;
const Complex kMinusI{0.0, -1.0};

// Scale with a factor that must not exceed 1; a larger factor means the
// step is too long for the construction.
BlockEncoding scale_or_headroom(const BlockEncoding& x, double c, const char* what) {
  if (std::abs(c) > 1.0) {
    throw Error(ErrorKind::AmplificationHeadroom,
                std::string(what) + ": scaling factor " + std::to_string(c) +
                    " exceeds 1 (dt too large)");
  }
  return blockenc::scale(x, c);
}

ButcherTableau make(std::string name, int order, Eigen::MatrixXd a, Eigen::VectorXd b) {
  ButcherTableau t;
  t.name = std::move(name);
  t.stages = static_cast<int>(b.size());
  t.c = a.rowwise().sum();
  t.a = std::move(a);
  t.b = std::move(b);
  t.order = order;
  return t;
}

}  // namespace

ButcherTableau ButcherTableau::euler() {
  return make("euler", 1, Eigen::MatrixXd::Zero(1, 1), Eigen::VectorXd::Ones(1));
}

ButcherTableau ButcherTableau::midpoint() {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
  a(1, 0) = 0.5;
  Eigen::VectorXd b(2);
  b << 0.0, 1.0;
  return make("midpoint", 2, a, b);
}

ButcherTableau ButcherTableau::rk4() {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(4, 4);
  a(1, 0) = 0.5;
  a(2, 1) = 0.5;
  a(3, 2) = 1.0;
  Eigen::VectorXd b(4);
  b << 1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0;
  return make("rk4", 4, a, b);
}

ButcherTableau ButcherTableau::by_name(const std::string& name) {
  if (name == "euler") return euler();
  if (name == "midpoint") return midpoint();
  if (name == "rk4") return rk4();
  throw Error(ErrorKind::Config, "unknown tableau '" + name + "' (expected euler, midpoint or rk4)");
}

void ButcherTableau::validate() const {
  auto bad = [](const std::string& why) { throw Error(ErrorKind::Config, "tableau: " + why); };
  if (stages < 1) bad("needs at least one stage");
  if (order < 1) bad("order must be positive");
  if (a.rows() != stages || a.cols() != stages || b.size() != stages || c.size() != stages) {
    bad("array sizes do not match the stage count");
  }
  if (!a.allFinite() || !b.allFinite() || !c.allFinite()) bad("non-finite coefficient");
  for (int j = 0; j < stages; ++j) {
    for (int m = j; m < stages; ++m) {
      if (a(j, m) != 0.0) bad("a must be strictly lower triangular (explicit method)");
    }
    if (std::abs(c(j) - a.row(j).sum()) > kTableauTol) bad("c_j must equal the row sum of a");
    if (c(j) < 0.0 || c(j) > 1.0) bad("c_j must lie in [0, 1]");
  }
  if (std::abs(b.sum() - 1.0) > kTableauTol) bad("weights b must sum to 1");
}

PropagatorState init_state(double dt, Eigen::Index dim) {
  if (!(dt > 0.0 && dt <= 1.0)) throw Error(ErrorKind::ContractViolation, "init_state: dt must lie in (0, 1]");
  return PropagatorState{BlockEncoding::identity(dim), 0, dt, 0.0};
}

std::vector<BlockEncoding> rk_stages(const PropagatorState& state, const ButcherTableau& tableau,
                                     const TimeDependentHamiltonian& h, double eps) {
  const BlockEncoding& u = state.encoding;
  const double alpha_u = u.alpha();
  const double dt = state.dt;
  std::vector<BlockEncoding> stages;
  stages.reserve(static_cast<std::size_t>(tableau.stages));
  for (int j = 0; j < tableau.stages; ++j) {
    const double tj = std::min(1.0, state.t_now + tableau.c(j) * dt);
    const BlockEncoding hj = block_encode_H(h, tj, eps);
    if (j == 0) {
      stages.push_back(blockenc::phase(blockenc::multiply(hj, u), kMinusI));
      continue;
    }
    // Uniform combination of U and dt a_jm k_m, each presented at alpha(U):
    // k_m / (m alpha_U) scaled by m dt a_jm.
    std::vector<BlockEncoding> parts{u};
    for (int m = 0; m < j; ++m) {
      const double factor = static_cast<double>(m + 1) * dt * tableau.a(j, m);
      parts.push_back(blockenc::relabel(
          scale_or_headroom(stages[static_cast<std::size_t>(m)], factor, "rk stage"), alpha_u));
    }
    const std::vector<double> ones(parts.size(), 1.0);
    BlockEncoding inner = blockenc::linear_combine(parts, ones);
    stages.push_back(blockenc::phase(blockenc::multiply(hj, inner), kMinusI));
  }
  return stages;
}

PropagatorState rk_step(const PropagatorState& state, const ButcherTableau& tableau,
                        const TimeDependentHamiltonian& h, double eps) {
  const BlockEncoding& u = state.encoding;
  const double alpha_u = u.alpha();
  const std::vector<BlockEncoding> k = rk_stages(state, tableau, h, eps);

  std::vector<BlockEncoding> weighted;
  weighted.reserve(k.size());
  for (std::size_t j = 0; j < k.size(); ++j) {
    const double factor = state.dt * static_cast<double>(j + 1) * tableau.b(static_cast<Eigen::Index>(j));
    weighted.push_back(blockenc::relabel(scale_or_headroom(k[j], factor, "rk update"), alpha_u));
  }
  const std::vector<double> stage_weights(weighted.size(), 1.0);
  const BlockEncoding increment = blockenc::linear_combine(weighted, stage_weights);
  const std::vector<BlockEncoding> outer{u, increment};
  const std::vector<double> outer_weights{1.0, 1.0};
  const BlockEncoding combined = blockenc::linear_combine(outer, outer_weights);

  const double gamma = combined.alpha() / costmodel::kRkStateAlpha;
  BlockEncoding next = gamma > 1.0
                           ? blockenc::amplify(combined, gamma, costmodel::kRkDelta, eps)
                           : blockenc::scale_down(combined, 1.0 / gamma);
  next = blockenc::relabel(next, costmodel::kRkStateAlpha);
  return PropagatorState{std::move(next), state.step_index + 1, state.dt,
                         static_cast<double>(state.step_index + 1) * state.dt};
}

Propagation propagate(const TimeDependentHamiltonian& h, const ButcherTableau& tableau,
                      std::size_t steps, double t_final, double eps, bool keep_states) {
  tableau.validate();
  if (steps < 1) throw Error(ErrorKind::ContractViolation, "propagate: need at least one step");
  if (!(t_final > 0.0 && t_final <= 1.0)) {
    throw Error(ErrorKind::ContractViolation, "propagate: t_final must lie in (0, 1]");
  }
  Propagation out;
  out.states.push_back(init_state(t_final / static_cast<double>(steps), h.dim()));
  for (std::size_t n = 0; n < steps; ++n) {
    PropagatorState next = rk_step(out.states.back(), tableau, h, eps);
    if (keep_states) {
      out.states.push_back(std::move(next));
    } else {
      out.states.back() = std::move(next);
    }
  }
  return out;
}

RkPrediction predicted_cost(const ButcherTableau& tableau, std::size_t m, std::size_t steps,
                            double eps, double t_max) {
  const auto s = static_cast<std::size_t>(tableau.stages);
  const auto table = costmodel::emulated_rk(s, m, steps, eps);
  RkPrediction out{table.back().depth, table.back().queries_per_term};
  out.asymptotic_recursion = costmodel::asymptotic_rk_recursion(s, m, t_max, eps, steps);
  out.asymptotic_total_log10 = steps == 0 ? 0.0 : costmodel::asymptotic_rk_total_log10(s, m, t_max, eps, steps);
  return out;
}

std::size_t steps_for_accuracy(double t, double eps, int p) {
  if (!(eps > 0.0 && eps < 1.0) || !(t > 0.0 && t <= 1.0) || p < 1) {
    throw Error(ErrorKind::ContractViolation, "steps_for_accuracy: parameters out of range");
  }
  // Guard against eps^(1/p) landing a hair below an exact quotient.
  const double n = t / std::pow(eps, 1.0 / static_cast<double>(p));
  const double r = std::round(n);
  return static_cast<std::size_t>(std::abs(n - r) < 1e-9 * r ? r : std::ceil(n));
}

}  // namespace qtdsim
