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

#pragma once

// Runge-Kutta propagation of block encodings of U(n dt).

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "qtdsim/blockenc.hpp"
#include "qtdsim/cost.hpp"
#include "qtdsim/hamiltonian.hpp"

namespace qtdsim {

/// Explicit Runge-Kutta coefficients. Stage indices are 0-based here.
struct ButcherTableau {
  std::string name;
  int stages = 0;
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
  int order = 0;

  static ButcherTableau euler();
  static ButcherTableau midpoint();
  static ButcherTableau rk4();
  /// "euler", "midpoint" or "rk4".
  static ButcherTableau by_name(const std::string& name);

  /// Strictly lower-triangular a, sum b = 1, c_j = sum_m a_jm (1e-12).
  void validate() const;
};

struct PropagatorState {
  BlockEncoding encoding;
  std::size_t step_index = 0;
  double dt = 0.0;
  double t_now = 0.0;

  const CostRecord& cumulative_cost() const { return encoding.cost(); }
};

PropagatorState init_state(double dt, Eigen::Index dim);

struct Propagation {
  std::vector<PropagatorState> states;  ///< all states, or only the final one

  const PropagatorState& final_state() const { return states.back(); }
  const CostRecord& cost() const { return states.back().cumulative_cost(); }
};

/// Stage encodings e_j with target k_j and alpha j * alpha(U) (1-based j).
std::vector<BlockEncoding> rk_stages(const PropagatorState& state, const ButcherTableau& tableau,
                                     const TimeDependentHamiltonian& h, double eps);

/// One step: U + dt sum_j b_j k_j, renormalized to alpha kRkStateAlpha.
/// Throws AmplificationHeadroom when dt is too large for the construction.
PropagatorState rk_step(const PropagatorState& state, const ButcherTableau& tableau,
                        const TimeDependentHamiltonian& h, double eps);

Propagation propagate(const TimeDependentHamiltonian& h, const ButcherTableau& tableau,
                      std::size_t steps, double t_final, double eps, bool keep_states = false);

/// Closed-form cost of N steps under the emulator's conventions.
struct RkPrediction {
  Count depth_units;
  Count queries_per_term;
  /// Asymptotic recursion and closed form with unit constants.
  double asymptotic_recursion = 0.0;
  double asymptotic_total_log10 = 0.0;
};

RkPrediction predicted_cost(const ButcherTableau& tableau, std::size_t m, std::size_t steps,
                            double eps, double t_max);

/// ceil(t / eps^(1/p)).
std::size_t steps_for_accuracy(double t, double eps, int p);

}  // namespace qtdsim
