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

// Every complexity formula the emulator charges, in one place.
//
// Asymptotic O(.) statements are instantiated with constant 1 and ceilings:
//
//   transform_queries(eps)         ceil(log2(1/eps))             controlled-U uses
//   amp_repetitions(g, d, eps)     ceil((g/d) * ln(g/eps))       singular-value amplification
//   LCU over m encodings           m depth units (incl. alpha normalization)
//   tensor                         1 depth unit (swaps)
//   scale / scale_down             1 depth unit
//   diagonal encoding of 2^n amps  n depth units
//   coefficient transform          ceil(log2(1/eps)) depth units
//   multiply, phase, relabel       free (sum of the parts)
//
// The `emulated_*` functions evaluate, in closed form, exactly what the
// block-encoding algebra charges for the propagators built on top of it.
// The `asymptotic_*` functions are the asymptotic bounds evaluated
// with unit constants; they are reported for comparison only.

#include <cstddef>
#include <vector>

#include "qtdsim/cost.hpp"

namespace qtdsim::costmodel {

/// State subnormalization kept by the Runge-Kutta propagator: the block is
/// U / 2.5, i.e. "U up to a factor 1/2" with 25% norm headroom.
inline constexpr double kRkStateAlpha = 2.5;
inline constexpr double kRkDelta = 0.5;

/// Per-step subnormalization growth of the Taylor propagator state.
inline constexpr double kTaylorKappa = 1.0 / 16.0;
inline constexpr double kTaylorDelta = kTaylorKappa / (2.0 * (1.0 + kTaylorKappa));

/// Amplification delta used when the factor m is removed from H(t).
inline constexpr double kEncodeHDelta = 0.5;

Count transform_queries(double eps);
Count amp_repetitions(double gamma, double delta, double eps);

/// Depth and per-term query count of one encoding.
struct EncodingCost {
  Count depth = 0;
  Count queries_per_term = 0;

  bool operator==(const EncodingCost&) const = default;
};

EncodingCost emulated_encode_h(std::size_t m, double eps);
EncodingCost emulated_encode_h_derivative(std::size_t m, double eps);

/// Amplification factor of the RK step at step index n (0-based).
double rk_step_gamma(std::size_t stages, std::size_t step_index);

/// Depth and per-term queries of the RK state after each step: entry n is
/// the cost of the U(n dt) encoding, entry 0 the identity (zero).
std::vector<EncodingCost> emulated_rk(std::size_t stages, std::size_t m, std::size_t steps,
                                      double eps);

/// Symbol structure of the derivative polynomials f_1..f_p: for each order j,
/// one list of derivative orders per surviving word.
using TaylorShape = std::vector<std::vector<std::vector<int>>>;

double taylor_step_gamma(std::size_t order, double subnorm);

/// Cost of one Taylor step operator including its amplification.
EncodingCost emulated_taylor_step(const TaylorShape& shape, std::size_t m, double eps,
                                  double subnorm);

std::vector<EncodingCost> emulated_taylor(const TaylorShape& shape, std::size_t m,
                                          std::size_t steps, double eps, double subnorm);

// Asymptotic bounds with unit constants. Logarithms base 2.

double asymptotic_t_max(double d_max, double h_max, double eps);
double asymptotic_encode_h_depth(std::size_t m, double t_max, double eps);
/// T_n = (m^2 T_max log(1/eps) + s T_{n-1} + s^2) s, T_0 = 0.
double asymptotic_rk_recursion(std::size_t stages, std::size_t m, double t_max, double eps,
                          std::size_t steps);
/// Closed form (m^2 T_max log(1/eps) s + s^3) s^N, as log10.
double asymptotic_rk_total_log10(std::size_t stages, std::size_t m, double t_max, double eps,
                            std::size_t steps);
/// M p^3 d_max m^2 (d_max ||H||_max + log(1/eps)) log(1/eps), per step.
double asymptotic_taylor_per_step(double big_m, std::size_t order, std::size_t m, double d_max,
                             double h_max, double eps);

}  // namespace qtdsim::costmodel
