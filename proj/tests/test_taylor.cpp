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

#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qtdsim/config.hpp"
#include "qtdsim/costmodel.hpp"
#include "qtdsim/taylor_propagator.hpp"

using namespace qtdsim;

namespace {

TimeDependentHamiltonian benchmark() { return build_hamiltonian(benchmark_config()); }

TimeDependentHamiltonian constant_h() {
  std::vector<std::pair<CoefficientExpr, HamiltonianTerm>> terms;
  terms.emplace_back(parse_coefficient("1"), HamiltonianTerm::from_paulis(2, {{"XY", 0.25}, {"ZI", 0.15}}));
  return TimeDependentHamiltonian(2, std::move(terms), 64);
}

ComplexMatrix constant_matrix() { return 0.25 * oracle::pauli("XY") + 0.15 * oracle::pauli("ZI"); }

Complex coefficient_of(const DerivativePolynomial& f, std::vector<int> symbols) {
  for (const auto& w : f.words) {
    if (w.symbols == symbols) return w.coefficient;
  }
  return 0.0;
}

}  // namespace

TEST_SUITE("taylor") {

TEST_CASE("derivative polynomials for j = 1..3") {
  const Complex i(0.0, 1.0);
  const DerivativePolynomial f1 = derivative_polynomial(1);
  CHECK(f1.words.size() == 1);
  CHECK(coefficient_of(f1, {0}) == -i);

  const DerivativePolynomial f2 = derivative_polynomial(2);
  CHECK(f2.words.size() == 2);
  CHECK(coefficient_of(f2, {1}) == -i);
  CHECK(coefficient_of(f2, {0, 0}) == Complex(-1.0));

  // f3 = -i H'' - 2 H' H - H H' + i H^3
  const DerivativePolynomial f3 = derivative_polynomial(3);
  CHECK(f3.words.size() == 4);
  CHECK(coefficient_of(f3, {2}) == -i);
  CHECK(coefficient_of(f3, {1, 0}) == Complex(-2.0));
  CHECK(coefficient_of(f3, {0, 1}) == Complex(-1.0));
  CHECK(coefficient_of(f3, {0, 0, 0}) == i);

  CHECK_THROWS_AS(derivative_polynomial(0), Error);
}

TEST_CASE("polynomials agree with direct differentiation of the benchmark") {
  const TimeDependentHamiltonian h = benchmark();
  const Complex mi(0.0, -1.0);
  for (double t : {0.0, 0.3, 0.9}) {
    const ComplexMatrix H = oracle::benchmark_h(t);
    const ComplexMatrix H1 = oracle::benchmark_h(t, 1);
    const ComplexMatrix H2 = oracle::benchmark_h(t, 2);
    const ComplexMatrix f1 = mi * H;
    const ComplexMatrix f2 = mi * H1 + mi * H * f1;
    const Complex i(0.0, 1.0);
    const ComplexMatrix f3 = mi * H2 - 2.0 * H1 * H - H * H1 + i * H * H * H;
    CHECK(oracle::norm2(evaluate_polynomial(derivative_polynomial(1), h, t) - f1) < 1e-14);
    CHECK(oracle::norm2(evaluate_polynomial(derivative_polynomial(2), h, t) - f2) < 1e-14);
    CHECK(oracle::norm2(evaluate_polynomial(derivative_polynomial(3), h, t) - f3) < 1e-13);
  }
}

TEST_CASE("constant H gives powers of -iH") {
  const TimeDependentHamiltonian h = constant_h();
  const ComplexMatrix mih = Complex(0.0, -1.0) * constant_matrix();
  ComplexMatrix power = ComplexMatrix::Identity(4, 4);
  for (int j = 1; j <= 5; ++j) {
    power = power * mih;
    const DerivativePolynomial f = derivative_polynomial(j);
    CHECK(encodable_words(f, h).size() == 1);
    CHECK(oracle::norm2(evaluate_polynomial(f, h, 0.4) - power) < 1e-14);
  }
  CHECK(polynomial_alpha(derivative_polynomial(3), h) == 1.0);
}

TEST_CASE("commuting terms") {
  // [H(t), H'(t)] = 0 for a single Pauli direction, so U = exp(-i int H).
  std::vector<std::pair<CoefficientExpr, HamiltonianTerm>> terms;
  terms.emplace_back(parse_coefficient("cos(t)"), HamiltonianTerm::from_paulis(1, {{"Z", 0.5}}));
  const TimeDependentHamiltonian h(1, std::move(terms), 256);
  const Propagation p = propagate_taylor(h, 3, 16, 1.0, 1e-6);
  const ComplexMatrix exact = oracle::expm(Complex(0.0, -0.5 * std::sin(1.0)) * oracle::pauli("Z"));
  CHECK(oracle::norm2(p.final_state().encoding.target() - exact) < 1e-4);
  CHECK(p.final_state().encoding.target()(0, 1) == Complex(0.0));
}

TEST_CASE("constant H reproduces the truncated exponential for p = 1..3") {
  const TimeDependentHamiltonian h = constant_h();
  for (int order = 1; order <= 3; ++order) {
    const Propagation p = propagate_taylor(h, order, 8, 1.0, 1e-6);
    const ComplexMatrix step = oracle::truncated_exp(constant_matrix(), 0.125, order);
    ComplexMatrix want = ComplexMatrix::Identity(4, 4);
    for (int n = 0; n < 8; ++n) want = step * want;
    CHECK(oracle::norm2(p.final_state().encoding.target() - want) < 1e-12);
  }
}

TEST_CASE("order one coincides with Euler") {
  const TimeDependentHamiltonian h = benchmark();
  const Propagation taylor = propagate_taylor(h, 1, 8, 1.0, 1e-6);
  const Propagation euler = propagate(h, ButcherTableau::euler(), 8, 1.0, 1e-6);
  CHECK(oracle::norm2(taylor.final_state().encoding.target() - euler.final_state().encoding.target()) < 1e-12);
}

TEST_CASE("step alpha and subnormalization") {
  const TimeDependentHamiltonian h = benchmark();
  const TaylorPlan plan = TaylorPlan::make(h, 3);
  CHECK(plan.polynomials.size() == 3);
  CHECK(plan.subnorm >= 1.0);
  CHECK(plan.subnorm == doctest::Approx(std::max({1.0, polynomial_alpha(plan.polynomials[0], h),
                                                  polynomial_alpha(plan.polynomials[1], h),
                                                  polynomial_alpha(plan.polynomials[2], h)})));
  const Propagation p = propagate_taylor(h, 3, 4, 1.0, 1e-6, true);
  for (std::size_t n = 1; n < p.states.size(); ++n) {
    CHECK(p.states[n].encoding.alpha() == doctest::Approx(std::pow(1.0 + costmodel::kTaylorKappa, n)));
  }
  CHECK_THROWS_AS(TaylorPlan::make(h, 7), Error);
}

TEST_CASE("cost is linear in the step count") {
  const TimeDependentHamiltonian h = benchmark();
  for (int order = 1; order <= 3; ++order) {
    const Propagation p = propagate_taylor(h, order, 8, 1.0, 1e-6, true);
    const CostRecord& one = p.states[1].cumulative_cost();
    for (std::size_t n = 1; n <= 8; ++n) {
      const CostRecord& c = p.states[n].cumulative_cost();
      CHECK(c.depth_units == one.depth_units * n);
      CHECK(c.queries_total() == one.queries_total() * n);
    }
    const TaylorPrediction pred = predicted_cost_taylor(h, order, 8, 1e-6);
    CHECK(pred.depth_units == p.cost().depth_units);
    CHECK(pred.queries_per_term == p.cost().queries_for(0));
    CHECK(pred.queries_per_term == p.cost().queries_for(1));
  }
}

TEST_CASE("uniform word convention costs at least as much from order 3") {
  const TimeDependentHamiltonian h = benchmark();
  const TaylorPrediction measured = predicted_cost_taylor(h, 3, 1, 1e-6, WordConvention::Measured);
  const TaylorPrediction uniform = predicted_cost_taylor(h, 3, 1, 1e-6, WordConvention::Uniform);
  CHECK(uniform.depth_units > 0);
  CHECK(measured.depth_units > 0);
  CHECK(measured.asymptotic_total == uniform.asymptotic_total);
  CHECK(measured.asymptotic_total > 0.0);
}

}
