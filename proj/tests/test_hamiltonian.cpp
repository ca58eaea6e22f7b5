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
#include "qtdsim/hamiltonian.hpp"

using namespace qtdsim;

namespace {

TimeDependentHamiltonian benchmark(int grid = 4096) {
  RunConfig cfg = benchmark_config();
  cfg.grid_points = grid;
  return build_hamiltonian(cfg);
}

TimeDependentHamiltonian single(const char* coeff, const ComplexMatrix& m) {
  std::vector<std::pair<CoefficientExpr, HamiltonianTerm>> terms;
  terms.emplace_back(parse_coefficient(coeff), HamiltonianTerm::from_matrix(m));
  return TimeDependentHamiltonian(numerics::log2_dim(m.rows()), std::move(terms), 256);
}

}  // namespace

TEST_SUITE("hamiltonian") {

TEST_CASE("Pauli strings match the bit-rule oracle") {
  for (const char* s : {"X", "Y", "Z", "XI", "IZ", "XY", "ZZ", "YXZ", "IYI"}) {
    CHECK((pauli_matrix(s) - oracle::pauli(s)).norm() == 0.0);
  }
  CHECK_THROWS_AS(pauli_matrix("XQ"), Error);
}

TEST_CASE("terms record sparsity and norm") {
  const HamiltonianTerm t = HamiltonianTerm::from_paulis(2, {{"XI", 0.3}, {"ZZ", 0.1}});
  CHECK(t.sparsity == 2);
  CHECK(t.norm == doctest::Approx(oracle::norm2(0.3 * oracle::pauli("XI") + 0.1 * oracle::pauli("ZZ"))));
  CHECK(t.weight_spec.size() == 2);
  CHECK_THROWS_AS(HamiltonianTerm::from_paulis(2, {{"XII", 0.1}}), Error);
  ComplexMatrix not_hermitian = ComplexMatrix::Zero(2, 2);
  not_hermitian(0, 1) = 0.2;
  CHECK_THROWS_AS(HamiltonianTerm::from_matrix(not_hermitian), Error);
}

TEST_CASE("evaluate on the benchmark") {
  const TimeDependentHamiltonian h = benchmark();
  CHECK(h.size() == 2);
  CHECK((evaluate(h, 0.0) - 0.4 * oracle::pauli("XI")).norm() == 0.0);
  CHECK(oracle::norm2(evaluate(h, 0.5) - oracle::benchmark_h(0.5)) < 1e-15);
  CHECK(oracle::norm2(evaluate(h, 0.5)) == doctest::Approx(0.4).epsilon(1e-12));
  const TimeDependentHamiltonian zero = single("0*t", oracle::pauli("Z") * 0.3);
  CHECK(evaluate(zero, 0.4).norm() == 0.0);
}

TEST_CASE("derivatives") {
  const TimeDependentHamiltonian h = benchmark();
  CHECK(oracle::norm2(derivative(h, 0.0, 1) - 0.4 * oracle::pauli("ZZ")) < 1e-16);
  for (int j = 1; j <= 5; ++j) {
    CHECK(oracle::norm2(derivative(h, 0.7, j) - oracle::benchmark_h(0.7, j)) < 1e-14);
  }
  const double step = 1e-3;
  const ComplexMatrix fd = (evaluate(h, 0.3 + step) - 2.0 * evaluate(h, 0.3) + evaluate(h, 0.3 - step)) / (step * step);
  CHECK(oracle::norm2(derivative(h, 0.3, 2) - fd) < 1e-6);
  const ComplexMatrix d3 = derivative(h, 0.6, 3);
  CHECK(oracle::norm2(d3 - d3.adjoint()) == 0.0);

  const TimeDependentHamiltonian constant = single("0.8", oracle::pauli("X") * 0.5);
  for (int j = 1; j <= 4; ++j) CHECK(derivative(constant, 0.2, j).norm() == 0.0);
}

TEST_CASE("derivative bounds") {
  const TimeDependentHamiltonian h = benchmark();
  const DerivativeBounds b = derivative_bounds(h, 2, 4096);
  REQUIRE(b.per_order.size() == 3);
  // Anticommuting terms: ||a XI + b ZZ|| = sqrt(a^2 + b^2), so every M_j is 0.4.
  for (double m : b.per_order) CHECK(m == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(b.per_order[1] <= 0.4 * bound_abs(parse_coefficient("-sin(t)"), 4096) + 0.4 * 1.0);
  CHECK(b.overall == *std::max_element(b.per_order.begin(), b.per_order.end()));

  const DerivativeBounds fine = derivative_bounds(h, 2, 65536);
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(std::abs(fine.per_order[j] - b.per_order[j]) <= 0.005 * fine.per_order[j]);
  }

  const TimeDependentHamiltonian constant = single("0.8", oracle::pauli("X") * 0.5);
  const DerivativeBounds c = derivative_bounds(constant, 3, 64);
  CHECK(c.per_order[1] == 0.0);
  CHECK(c.per_order[2] == 0.0);
  CHECK(c.per_order[3] == 0.0);
  CHECK(c.overall == doctest::Approx(0.4));
}

TEST_CASE("coefficient normalizer bounds every derivative sample") {
  const TimeDependentHamiltonian h = benchmark(257);
  for (int r = 0; r < 4; ++r) {
    const double g = h.coefficient_bound(r);
    for (int k = 0; k <= 1000; ++k) {
      const double t = k / 1000.0;
      CHECK(std::abs(h.coefficient(0, r).eval(t)) <= g);
      CHECK(std::abs(h.coefficient(1, r).eval(t)) <= g);
    }
  }
}

TEST_CASE("block_encode_H target on a 64-point grid") {
  const TimeDependentHamiltonian h = benchmark();
  for (int k = 0; k < 64; ++k) {
    const double t = k / 63.0;
    const BlockEncoding e = block_encode_H(h, t, 1e-6);
    CHECK(e.alpha() == 1.0);
    CHECK(oracle::norm2(e.target() - oracle::benchmark_h(t)) < 1e-10);
    CHECK(e.err() >= 0.0);
  }
}

TEST_CASE("block_encode_H cost for m = 2") {
  const TimeDependentHamiltonian h = benchmark();
  const BlockEncoding e = block_encode_H(h, 0.5, 1e-6);
  const long long amp = static_cast<long long>(std::ceil((2 / 0.5) * std::log(2 * 1e6)));
  const long long l = 20;
  CHECK(e.cost().queries_total() == 2 * amp * l);
  CHECK(e.cost().queries_for(0) == amp * l);
  CHECK(e.cost().depth_units == amp * (2 * (2 * l + 3) + 2) + amp);
  CHECK(e.cost().depth_units == costmodel::emulated_encode_h(2, 1e-6).depth);
}

TEST_CASE("block_encode_H for a single constant term needs no amplification") {
  const TimeDependentHamiltonian h = single("1", oracle::pauli("Z") * 0.4);
  const BlockEncoding e = block_encode_H(h, 0.3, 1e-3);
  CHECK(e.alpha() == 1.0);
  CHECK(oracle::norm2(e.target() - 0.4 * oracle::pauli("Z")) < 1e-10);
  CHECK(e.cost().queries_total() == 10);
  CHECK(e.cost().depth_units == 2 * 10 + 3 + 1);
}

TEST_CASE("the encoding keeps the two-block structure before projection") {
  // Lower block sum_i sqrt(1 - gamma_i^2) H_i is what projection drops.
  const TimeDependentHamiltonian h = benchmark();
  const double t = 0.35;
  const ComplexMatrix upper = oracle::benchmark_h(t);
  const ComplexMatrix lower = std::sqrt(1 - std::pow(std::cos(t), 2)) * 0.4 * oracle::pauli("XI") +
                              std::sqrt(1 - std::pow(std::sin(t), 2)) * 0.4 * oracle::pauli("ZZ");
  const std::array<Complex, 2> a0{Complex(std::cos(t)), Complex(std::sin(t))};
  const std::array<Complex, 2> a1{Complex(std::sin(t)), Complex(std::cos(t))};
  const ComplexMatrix full = oracle::kron(ComplexMatrix(Eigen::Vector2cd(a0[0], a0[1]).asDiagonal()), 0.4 * oracle::pauli("XI")) +
                             oracle::kron(ComplexMatrix(Eigen::Vector2cd(a1[0], a1[1]).asDiagonal()), 0.4 * oracle::pauli("ZZ"));
  CHECK(oracle::norm2(full.topLeftCorner(4, 4) - upper) < 1e-15);
  CHECK(oracle::norm2(full.bottomRightCorner(4, 4) - lower) < 1e-15);
  CHECK(oracle::norm2(block_encode_H(h, t, 1e-6).target() - upper) < 1e-10);
}

TEST_CASE("block_encode_H_derivative") {
  const TimeDependentHamiltonian h = benchmark();
  const BlockEncoding e = block_encode_H_derivative(h, 0.0, 1, 1e-6);
  CHECK(oracle::norm2(e.target() - 0.4 * oracle::pauli("ZZ")) < 1e-10);
  CHECK(e.alpha() == 2.0 * h.coefficient_bound(1));
  const auto want = costmodel::emulated_encode_h_derivative(2, 1e-6);
  CHECK(e.cost().depth_units == want.depth);
  CHECK(e.cost().queries_for(1) == want.queries_per_term);

  // Rescaling to a common alpha M.
  const double big = 4.0 * e.alpha();
  const BlockEncoding s = blockenc::scale_down(e, big / e.alpha());
  CHECK(s.alpha() == doctest::Approx(big));

  const TimeDependentHamiltonian constant = single("0.5", oracle::pauli("X") * 0.5);
  const BlockEncoding z = block_encode_H_derivative(constant, 0.5, 1, 1e-6);
  CHECK(z.target().norm() == 0.0);
  CHECK(z.alpha() == 1.0);
  CHECK(z.cost().depth_units == 0);
}

TEST_CASE("load-time validation names the violated assumption") {
  auto message = [](RunConfig cfg) -> std::string {
    try {
      build_hamiltonian(cfg);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NormAssumptionViolated);
      return e.what();
    }
    return "";
  };
  RunConfig gamma = benchmark_config();
  gamma.terms[0].coeff = "1 + t";
  CHECK(message(gamma).find("|γ_i(t)| ≤ 1") != std::string::npos);

  RunConfig norm = benchmark_config();
  norm.terms[0].paulis = {{"XI", 0.3}, {"IX", 0.3}};
  CHECK(message(norm).find("norm at most 1/2") != std::string::npos);

  RunConfig sum = benchmark_config();
  sum.terms[1].paulis = {{"IX", 0.4}};
  CHECK(message(sum).find("norm at most 1/2") != std::string::npos);

  CHECK_NOTHROW(build_hamiltonian(benchmark_config()));
  CHECK_NOTHROW(benchmark().validate());
}

TEST_CASE("recovered terms match the inputs") {
  const TimeDependentHamiltonian h = benchmark();
  for (std::size_t i = 0; i < h.size(); ++i) {
    CHECK(oracle::norm2(h.recovered_term(i) - h.term(i).matrix) < 1e-12);
  }
  CHECK(h.d_max() == 1);
  CHECK(h.max_entry() == doctest::Approx(0.4));
}

}
