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

#include "qtdsim/taylor_propagator.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "qtdsim/errors.hpp"

namespace qtdsim {

namespace {

const Complex kMinusI{0.0, -1.0};

double factorial(int j) {
  double f = 1.0;
  for (int k = 2; k <= j; ++k) f *= k;
  return f;
}

double factor_alpha(const TimeDependentHamiltonian& h, int r) {
  return r == 0 ? 1.0 : static_cast<double>(h.size()) * h.coefficient_bound(r);
}

}  // namespace

DerivativePolynomial derivative_polynomial(int j) {
  if (j < 1) throw Error(ErrorKind::ContractViolation, "derivative_polynomial: order must be >= 1");
  std::map<std::vector<int>, Complex> words{{{0}, kMinusI}};
  for (int order = 1; order < j; ++order) {
    std::map<std::vector<int>, Complex> next;
    for (const auto& [symbols, c] : words) {
      // Product rule: differentiate each factor in turn.
      for (std::size_t k = 0; k < symbols.size(); ++k) {
        std::vector<int> d = symbols;
        ++d[k];
        next[d] += c;
      }
      std::vector<int> appended = symbols;
      appended.push_back(0);
      next[appended] += c * kMinusI;
    }
    words = std::move(next);
  }
  DerivativePolynomial f{j, {}};
  for (const auto& [symbols, c] : words) {
    if (c != Complex(0.0)) f.words.push_back({c, symbols});
  }
  return f;
}

ComplexMatrix evaluate_polynomial(const DerivativePolynomial& f, const TimeDependentHamiltonian& h,
                                  double t) {
  int max_r = 0;
  for (const auto& w : f.words) {
    for (int r : w.symbols) max_r = std::max(max_r, r);
  }
  std::vector<ComplexMatrix> factors;
  factors.push_back(evaluate(h, t));
  for (int r = 1; r <= max_r; ++r) factors.push_back(derivative(h, t, r));

  ComplexMatrix out = ComplexMatrix::Zero(h.dim(), h.dim());
  for (const auto& w : f.words) {
    ComplexMatrix prod = ComplexMatrix::Identity(h.dim(), h.dim());
    for (int r : w.symbols) prod = prod * factors[static_cast<std::size_t>(r)];
    out += w.coefficient * prod;
  }
  return out;
}

std::vector<OperatorWord> encodable_words(const DerivativePolynomial& f,
                                          const TimeDependentHamiltonian& h) {
  std::vector<OperatorWord> out;
  for (const auto& w : f.words) {
    const bool vanishes = std::any_of(w.symbols.begin(), w.symbols.end(),
                                      [&](int r) { return r > 0 && h.derivative_vanishes(r); });
    if (!vanishes) out.push_back(w);
  }
  return out;
}

double polynomial_alpha(const DerivativePolynomial& f, const TimeDependentHamiltonian& h) {
  double beta = 0.0;
  double widest = 0.0;
  for (const auto& w : encodable_words(f, h)) {
    double a = 1.0;
    for (int r : w.symbols) a *= factor_alpha(h, r);
    beta += std::abs(w.coefficient);
    widest = std::max(widest, a);
  }
  return beta * widest;
}

BlockEncoding encode_polynomial(const DerivativePolynomial& f, const TimeDependentHamiltonian& h,
                                double t, double eps) {
  const std::vector<OperatorWord> words = encodable_words(f, h);
  if (words.empty()) {
    throw Error(ErrorKind::DegenerateDerivative, "encode_polynomial: every word vanishes");
  }
  int max_r = 0;
  for (const auto& w : words) {
    for (int r : w.symbols) max_r = std::max(max_r, r);
  }
  // One encoding per factor order; each use is charged when multiplied in.
  std::vector<BlockEncoding> factors{block_encode_H(h, t, eps)};
  for (int r = 1; r <= max_r; ++r) {
    factors.push_back(h.derivative_vanishes(r)
                          ? factors.front()  // never referenced by a surviving word
                          : block_encode_H_derivative(h, t, r, eps));
  }

  std::vector<BlockEncoding> encoded;
  std::vector<double> weights;
  for (const auto& w : words) {
    BlockEncoding prod = factors[static_cast<std::size_t>(w.symbols.front())];
    for (std::size_t k = 1; k < w.symbols.size(); ++k) {
      prod = blockenc::multiply(prod, factors[static_cast<std::size_t>(w.symbols[k])]);
    }
    const double magnitude = std::abs(w.coefficient);
    encoded.push_back(blockenc::phase(prod, w.coefficient / magnitude));
    weights.push_back(magnitude);
  }
  return blockenc::linear_combine(encoded, weights);
}

TaylorPlan TaylorPlan::make(const TimeDependentHamiltonian& h, int order) {
  if (order < 1 || order > 6) throw Error(ErrorKind::Config, "taylor order must lie in 1..6");
  TaylorPlan plan;
  plan.order = order;
  for (int j = 1; j <= order; ++j) {
    plan.polynomials.push_back(derivative_polynomial(j));
    plan.subnorm = std::max(plan.subnorm, polynomial_alpha(plan.polynomials.back(), h));
  }
  return plan;
}

costmodel::TaylorShape TaylorPlan::shape(const TimeDependentHamiltonian& h) const {
  costmodel::TaylorShape out;
  for (const auto& f : polynomials) {
    std::vector<std::vector<int>> words;
    for (const auto& w : encodable_words(f, h)) words.push_back(w.symbols);
    out.push_back(std::move(words));
  }
  return out;
}

PropagatorState taylor_step(const PropagatorState& state, const TimeDependentHamiltonian& h,
                            const TaylorPlan& plan, double eps) {
  const double a = plan.subnorm;
  std::vector<BlockEncoding> terms;
  terms.push_back(blockenc::relabel(blockenc::scale(BlockEncoding::identity(h.dim()), 1.0 / a), a));
  double dt_power = 1.0;
  for (int j = 1; j <= plan.order; ++j) {
    dt_power *= state.dt;
    const BlockEncoding fj =
        encode_polynomial(plan.polynomials[static_cast<std::size_t>(j - 1)], h, state.t_now, eps);
    const double factor = dt_power * fj.alpha() / (factorial(j) * a);
    terms.push_back(blockenc::relabel(blockenc::scale(fj, factor), a));
  }
  const std::vector<double> ones(terms.size(), 1.0);
  const BlockEncoding step = blockenc::linear_combine(terms, ones);

  const double kappa = costmodel::kTaylorKappa;
  const double gamma = costmodel::taylor_step_gamma(static_cast<std::size_t>(plan.order), a);
  const BlockEncoding amplified = blockenc::relabel(
      blockenc::amplify(step, gamma, costmodel::kTaylorDelta, eps), 1.0 + kappa);
  BlockEncoding next = blockenc::multiply(amplified, state.encoding);
  return PropagatorState{std::move(next), state.step_index + 1, state.dt,
                         static_cast<double>(state.step_index + 1) * state.dt};
}

Propagation propagate_taylor(const TimeDependentHamiltonian& h, int order, std::size_t steps,
                             double t_final, double eps, bool keep_states) {
  if (steps < 1) throw Error(ErrorKind::ContractViolation, "propagate: need at least one step");
  if (!(t_final > 0.0 && t_final <= 1.0)) {
    throw Error(ErrorKind::ContractViolation, "propagate: t_final must lie in (0, 1]");
  }
  const TaylorPlan plan = TaylorPlan::make(h, order);
  Propagation out;
  out.states.push_back(init_state(t_final / static_cast<double>(steps), h.dim()));
  for (std::size_t n = 0; n < steps; ++n) {
    PropagatorState next = taylor_step(out.states.back(), h, plan, eps);
    if (keep_states) {
      out.states.push_back(std::move(next));
    } else {
      out.states.back() = std::move(next);
    }
  }
  return out;
}

TaylorPrediction predicted_cost_taylor(const TimeDependentHamiltonian& h, int order,
                                       std::size_t steps, double eps, WordConvention convention) {
  const TaylorPlan plan = TaylorPlan::make(h, order);
  costmodel::TaylorShape shape;
  if (convention == WordConvention::Measured) {
    shape = plan.shape(h);
  } else {
    for (int j = 1; j <= order; ++j) {
      shape.emplace_back(static_cast<std::size_t>(j), std::vector<int>(static_cast<std::size_t>(j), 0));
    }
  }
  const auto table = costmodel::emulated_taylor(shape, h.size(), steps, eps, plan.subnorm);
  TaylorPrediction out{table.back().depth, table.back().queries_per_term};
  const DerivativeBounds bounds = derivative_bounds(h, order, h.grid_points());
  out.asymptotic_total = costmodel::asymptotic_taylor_per_step(bounds.overall, static_cast<std::size_t>(order),
                                                     h.size(), static_cast<double>(h.d_max()),
                                                     h.max_entry(), eps) *
                    static_cast<double>(steps);
  return out;
}

}  // namespace qtdsim
