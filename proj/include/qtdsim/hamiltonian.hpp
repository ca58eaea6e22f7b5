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

// H(t) = sum_i gamma_i(t) H_i: evaluation, time derivatives, derivative
// bounds and the block encoding of H(t) and its derivatives.

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qtdsim/blockenc.hpp"
#include "qtdsim/coeffexpr.hpp"
#include "qtdsim/numerics.hpp"

namespace qtdsim {

struct PauliWeight {
  std::string string;
  double weight = 0.0;
};

/// Kronecker product of single-qubit Paulis; the leftmost character is the
/// most significant factor.
ComplexMatrix pauli_matrix(std::string_view paulis);

struct HamiltonianTerm {
  ComplexMatrix matrix;
  std::vector<PauliWeight> weight_spec;  ///< empty for dense input
  std::size_t sparsity = 0;              ///< max nonzeros per row
  double norm = 0.0;

  static HamiltonianTerm from_paulis(int qubits, std::vector<PauliWeight> spec);
  static HamiltonianTerm from_matrix(ComplexMatrix matrix);
};

struct DerivativeBounds {
  std::vector<double> per_order;  ///< M_0 .. M_p
  double overall = 0.0;           ///< max_j M_j
};

class TimeDependentHamiltonian {
 public:
  /// Highest coefficient derivative kept symbolically.
  static constexpr int kMaxOrder = 8;

  /// Validates the model assumptions (|gamma_i| <= 1, ||H_i|| <= 1/2,
  /// ||H(t)|| <= 1/2 on the grid) and throws NormAssumptionViolated with a
  /// message naming the violated assumption.
  TimeDependentHamiltonian(int qubits, std::vector<std::pair<CoefficientExpr, HamiltonianTerm>> terms,
                           int grid_points = 4096);

  int qubits() const { return qubits_; }
  Eigen::Index dim() const { return Eigen::Index{1} << qubits_; }
  std::size_t size() const { return terms_.size(); }
  int grid_points() const { return grid_points_; }

  const CoefficientExpr& coefficient(std::size_t i, int order = 0) const;
  const HamiltonianTerm& term(std::size_t i) const { return terms_.at(i).term; }
  /// i log exp(-i H_i): the term as recovered from its evolution operator.
  const ComplexMatrix& recovered_term(std::size_t i) const { return terms_.at(i).recovered; }

  /// True when every coefficient's order-th derivative is symbolically zero.
  bool derivative_vanishes(int order) const;

  /// Normalizer G_r >= max_i max_t |d^r gamma_i / dt^r|: grid maximum plus
  /// half a grid spacing times the grid maximum of the next derivative.
  double coefficient_bound(int order) const;

  std::size_t d_max() const;
  /// Largest entry magnitude over all H_i.
  double max_entry() const;

  /// Re-run the load-time checks.
  void validate() const;

 private:
  struct Entry {
    std::vector<CoefficientExpr> derivatives;  ///< orders 0..kMaxOrder
    HamiltonianTerm term;
    ComplexMatrix recovered;
  };

  int qubits_;
  int grid_points_;
  std::vector<Entry> terms_;
  std::vector<double> bounds_;
};

ComplexMatrix evaluate(const TimeDependentHamiltonian& h, double t);

/// d^j H / dt^j at t, j >= 1.
ComplexMatrix derivative(const TimeDependentHamiltonian& h, double t, int j);

DerivativeBounds derivative_bounds(const TimeDependentHamiltonian& h, int p, int gridpoints);

/// Encoding of H(t) with alpha 1: per-term coefficient rotations tensored
/// with exp-input encodings of H_i, combined, projected and amplified by m.
BlockEncoding block_encode_H(const TimeDependentHamiltonian& h, double t, double eps);

/// Encoding of d^j H/dt^j with alpha m * G_j (no amplification). When every
/// coefficient derivative vanishes identically, an exact zero encoding with
/// alpha 1 and no cost.
BlockEncoding block_encode_H_derivative(const TimeDependentHamiltonian& h, double t, int j,
                                        double eps);

}  // namespace qtdsim
