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

// Taylor-series propagation: the derivative operator polynomials f_j with
// d^j U/dt^j = f_j(H) U, their block encodings, and the Taylor step.

#include <cstddef>
#include <vector>

#include "qtdsim/blockenc.hpp"
#include "qtdsim/costmodel.hpp"
#include "qtdsim/hamiltonian.hpp"
#include "qtdsim/rk_propagator.hpp"

namespace qtdsim {

/// coefficient * H^(r_1) H^(r_2) ... H^(r_k), H^(r) = d^r H / dt^r.
struct OperatorWord {
  Complex coefficient;
  std::vector<int> symbols;
};

struct DerivativePolynomial {
  int order = 0;
  std::vector<OperatorWord> words;  ///< sorted by symbols, no duplicates
};

/// f_1 = -i H; f_{j+1} = d f_j + f_j (-i H).
DerivativePolynomial derivative_polynomial(int j);

ComplexMatrix evaluate_polynomial(const DerivativePolynomial& f, const TimeDependentHamiltonian& h,
                                  double t);

/// Words that survive encoding: those whose factors all have a nonvanishing
/// derivative.
std::vector<OperatorWord> encodable_words(const DerivativePolynomial& f,
                                          const TimeDependentHamiltonian& h);

/// Subnormalization encode_polynomial produces: sum |c| * max word alpha.
double polynomial_alpha(const DerivativePolynomial& f, const TimeDependentHamiltonian& h);

BlockEncoding encode_polynomial(const DerivativePolynomial& f, const TimeDependentHamiltonian& h,
                                double t, double eps);

/// Precomputed data shared by all steps of one run.
struct TaylorPlan {
  int order = 0;
  std::vector<DerivativePolynomial> polynomials;  ///< f_1 .. f_p
  double subnorm = 1.0;                           ///< A = max(1, max_j alpha(f_j))

  static TaylorPlan make(const TimeDependentHamiltonian& h, int order);
  costmodel::TaylorShape shape(const TimeDependentHamiltonian& h) const;
};

/// Target (I + sum_j dt^j f_j(t_n) / j!) U(t_n); state alpha grows by
/// (1 + kappa) per step.
PropagatorState taylor_step(const PropagatorState& state, const TimeDependentHamiltonian& h,
                            const TaylorPlan& plan, double eps);

Propagation propagate_taylor(const TimeDependentHamiltonian& h, int order, std::size_t steps,
                             double t_final, double eps, bool keep_states = false);

enum class WordConvention {
  Measured,  ///< actual merged word structure
  Uniform,   ///< j words of j factors H for f_j
};

struct TaylorPrediction {
  Count depth_units;
  Count queries_per_term;
  /// Asymptotic per-step bound times N, unit constants.
  double asymptotic_total = 0.0;
};

TaylorPrediction predicted_cost_taylor(const TimeDependentHamiltonian& h, int order,
                                       std::size_t steps, double eps,
                                       WordConvention convention = WordConvention::Measured);

}  // namespace qtdsim
