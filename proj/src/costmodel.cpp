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

#include "qtdsim/costmodel.hpp"

#include <cmath>
#include <stdexcept>

#include "qtdsim/errors.hpp"

namespace qtdsim::costmodel {

namespace {

Count ceil_count(double x) {
  if (!std::isfinite(x) || x < 0) {
    throw Error(ErrorKind::ContractViolation, "cost model: count is not a finite nonnegative value");
  }
  return Count(static_cast<unsigned long long>(std::ceil(x)));
}

}  // namespace

Count transform_queries(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw Error(ErrorKind::ContractViolation, "transform_queries: eps must lie in (0, 1)");
  }
  return ceil_count(std::log2(1.0 / eps));
}

Count amp_repetitions(double gamma, double delta, double eps) {
  if (!(gamma > 1.0) || !(delta > 0.0) || !(eps > 0.0)) {
    throw Error(ErrorKind::ContractViolation, "amp_repetitions: needs gamma > 1, delta > 0, eps > 0");
  }
  return ceil_count((gamma / delta) * std::log(gamma / eps));
}

EncodingCost emulated_encode_h_derivative(std::size_t m, double eps) {
  const Count l = transform_queries(eps);
  // Per term: exp-input encoding (l), scale_down pi/2 (1), diagonal encoding
  // of two amplitudes (1), coefficient transform (l), tensor (1).
  const Count per_term = 2 * l + 3;
  return {per_term * m + m, l};
}

EncodingCost emulated_encode_h(std::size_t m, double eps) {
  EncodingCost combined = emulated_encode_h_derivative(m, eps);
  if (m < 2) return combined;
  const Count amp = amp_repetitions(static_cast<double>(m), kEncodeHDelta, eps);
  return {amp * combined.depth + amp, amp * combined.queries_per_term};
}

double rk_step_gamma(std::size_t stages, std::size_t step_index) {
  const double alpha_in = step_index == 0 ? 1.0 : kRkStateAlpha;
  return 2.0 * static_cast<double>(stages) * alpha_in / kRkStateAlpha;
}

std::vector<EncodingCost> emulated_rk(std::size_t stages, std::size_t m, std::size_t steps,
                                      double eps) {
  const EncodingCost h = emulated_encode_h(m, eps);
  std::vector<EncodingCost> out{EncodingCost{}};
  out.reserve(steps + 1);
  for (std::size_t n = 0; n < steps; ++n) {
    const EncodingCost u = out.back();
    std::vector<EncodingCost> k(stages);
    for (std::size_t j = 0; j < stages; ++j) {
      k[j].depth = h.depth + u.depth;
      k[j].queries_per_term = h.queries_per_term + u.queries_per_term;
      if (j == 0) continue;
      for (std::size_t i = 0; i < j; ++i) {
        k[j].depth += k[i].depth + 1;
        k[j].queries_per_term += k[i].queries_per_term;
      }
      k[j].depth += j + 1;
    }
    EncodingCost step{u.depth + 2 + stages, u.queries_per_term};
    for (const auto& kj : k) {
      step.depth += kj.depth + 1;
      step.queries_per_term += kj.queries_per_term;
    }
    const double gamma = rk_step_gamma(stages, n);
    if (gamma > 1.0) {
      const Count amp = amp_repetitions(gamma, kRkDelta, eps);
      out.push_back({amp * step.depth + amp, amp * step.queries_per_term});
    } else {
      out.push_back({step.depth + 1, step.queries_per_term});
    }
  }
  return out;
}

double taylor_step_gamma(std::size_t order, double subnorm) {
  return static_cast<double>(order + 1) * subnorm / (1.0 + kTaylorKappa);
}

EncodingCost emulated_taylor_step(const TaylorShape& shape, std::size_t m, double eps,
                                  double subnorm) {
  const EncodingCost h = emulated_encode_h(m, eps);
  const EncodingCost dh = emulated_encode_h_derivative(m, eps);
  EncodingCost op;
  for (const auto& words : shape) {
    for (const auto& word : words) {
      for (int r : word) {
        const EncodingCost& f = r == 0 ? h : dh;
        op.depth += f.depth;
        op.queries_per_term += f.queries_per_term;
      }
    }
    op.depth += words.size() + 1;  // LCU over the words, then the dt^j/j! scaling
  }
  const std::size_t order = shape.size();
  op.depth += 1 + (order + 1);  // identity scaling, LCU over p + 1 operators
  const Count amp = amp_repetitions(taylor_step_gamma(order, subnorm), kTaylorDelta, eps);
  return {amp * op.depth + amp, amp * op.queries_per_term};
}

std::vector<EncodingCost> emulated_taylor(const TaylorShape& shape, std::size_t m,
                                          std::size_t steps, double eps, double subnorm) {
  const EncodingCost step = emulated_taylor_step(shape, m, eps, subnorm);
  std::vector<EncodingCost> out;
  out.reserve(steps + 1);
  for (std::size_t n = 0; n <= steps; ++n) {
    out.push_back({step.depth * n, step.queries_per_term * n});
  }
  return out;
}

double asymptotic_t_max(double d_max, double h_max, double eps) {
  return d_max * h_max + std::log2(1.0 / eps);
}

double asymptotic_encode_h_depth(std::size_t m, double t_max, double eps) {
  const double md = static_cast<double>(m);
  return md * md * t_max * std::log2(1.0 / eps);
}

double asymptotic_rk_recursion(std::size_t stages, std::size_t m, double t_max, double eps,
                          std::size_t steps) {
  const double s = static_cast<double>(stages);
  const double base = asymptotic_encode_h_depth(m, t_max, eps);
  double t = 0.0;
  for (std::size_t n = 0; n < steps; ++n) t = (base + s * t + s * s) * s;
  return t;
}

double asymptotic_rk_total_log10(std::size_t stages, std::size_t m, double t_max, double eps,
                            std::size_t steps) {
  const double s = static_cast<double>(stages);
  const double lead = asymptotic_encode_h_depth(m, t_max, eps) * s + s * s * s;
  return std::log10(lead) + static_cast<double>(steps) * std::log10(s);
}

double asymptotic_taylor_per_step(double big_m, std::size_t order, std::size_t m, double d_max,
                             double h_max, double eps) {
  const double p = static_cast<double>(order);
  const double md = static_cast<double>(m);
  const double l = std::log2(1.0 / eps);
  return big_m * p * p * p * d_max * md * md * (d_max * h_max + l) * l;
}

}  // namespace qtdsim::costmodel
