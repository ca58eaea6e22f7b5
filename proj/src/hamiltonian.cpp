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

#include "qtdsim/hamiltonian.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "qtdsim/costmodel.hpp"
#include "qtdsim/errors.hpp"

namespace qtdsim {

namespace {

constexpr double kNormTol = 1e-9;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double grid_t(int k, int gridpoints) {
  return static_cast<double>(k) / static_cast<double>(gridpoints - 1);
}

void require_t(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorKind::ContractViolation, "time must lie in [0, 1]");
}

}  // namespace

ComplexMatrix pauli_matrix(std::string_view paulis) {
  if (paulis.empty()) throw Error(ErrorKind::Config, "empty Pauli string");
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  const Complex i{0.0, 1.0};
  for (std::size_t pos = 0; pos < paulis.size(); ++pos) {
    ComplexMatrix p(2, 2);
    switch (paulis[pos]) {
      case 'I': p << 1, 0, 0, 1; break;
      case 'X': p << 0, 1, 1, 0; break;
      case 'Y': p << 0, -i, i, 0; break;
      case 'Z': p << 1, 0, 0, -1; break;
      default:
        throw Error(ErrorKind::Config, "Pauli string '" + std::string(paulis) +
                                           "' has invalid character at position " +
                                           std::to_string(pos));
    }
    out = numerics::kron(out, p);
  }
  return out;
}

HamiltonianTerm HamiltonianTerm::from_paulis(int qubits, std::vector<PauliWeight> spec) {
  if (spec.empty()) throw Error(ErrorKind::Config, "term has no Pauli strings");
  const Eigen::Index dim = Eigen::Index{1} << qubits;
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (const auto& pw : spec) {
    if (static_cast<int>(pw.string.size()) != qubits) {
      throw Error(ErrorKind::Config, "Pauli string '" + pw.string + "' has length " +
                                         std::to_string(pw.string.size()) + ", expected " +
                                         std::to_string(qubits));
    }
    if (!std::isfinite(pw.weight)) throw Error(ErrorKind::Config, "Pauli weight is not finite");
    m += pw.weight * pauli_matrix(pw.string);
  }
  HamiltonianTerm term = from_matrix(std::move(m));
  term.weight_spec = std::move(spec);
  return term;
}

HamiltonianTerm HamiltonianTerm::from_matrix(ComplexMatrix matrix) {
  numerics::require_square_pow2(matrix, "Hamiltonian term");
  numerics::require_finite(matrix, "Hamiltonian term");
  if (numerics::hermiticity_defect(matrix) > 1e-12) {
    throw Error(ErrorKind::Config, "Hamiltonian term is not Hermitian");
  }
  HamiltonianTerm term;
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    std::size_t nnz = 0;
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) nnz += matrix(r, c) != Complex(0.0) ? 1 : 0;
    term.sparsity = std::max(term.sparsity, nnz);
  }
  term.norm = numerics::spectral_norm(matrix);
  term.matrix = std::move(matrix);
  return term;
}

TimeDependentHamiltonian::TimeDependentHamiltonian(
    int qubits, std::vector<std::pair<CoefficientExpr, HamiltonianTerm>> terms, int grid_points)
    : qubits_(qubits), grid_points_(grid_points) {
  if (qubits < 1 || qubits > 10) throw Error(ErrorKind::Config, "qubits must lie in 1..10");
  if (grid_points < 2) throw Error(ErrorKind::Config, "grid_points must be at least 2");
  if (terms.empty()) throw Error(ErrorKind::Config, "Hamiltonian has no terms");
  for (auto& [coeff, term] : terms) {
    if (term.matrix.rows() != dim()) {
      throw Error(ErrorKind::Config, "term dimension does not match 2^qubits");
    }
    Entry e{{coeff}, std::move(term), {}};
    for (int r = 1; r <= kMaxOrder; ++r) e.derivatives.push_back(differentiate(e.derivatives.back(), 1));
    terms_.push_back(std::move(e));
  }
  validate();

  // Input model: each H_i is only available through exp(-i H_i).
  for (auto& e : terms_) {
    e.recovered = numerics::unitary_log(numerics::hermitian_exp(e.term.matrix, 1.0));
  }

  const double h = 1.0 / static_cast<double>(grid_points_ - 1);
  for (int r = 0; r < kMaxOrder; ++r) {
    double bound = 0.0;
    for (const auto& e : terms_) {
      bound = std::max(bound, bound_abs(e.derivatives[r], grid_points_) +
                                  0.5 * h * bound_abs(e.derivatives[r + 1], grid_points_));
    }
    bounds_.push_back(bound);
  }
}

void TimeDependentHamiltonian::validate() const {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const double g = bound_abs(terms_[i].derivatives[0], grid_points_);
    if (g > 1.0 + kNormTol) {
      throw Error(ErrorKind::NormAssumptionViolated,
                  "term " + std::to_string(i) + ": max |gamma_i(t)| = " + fmt(g) +
                      " violates the assumption |γ_i(t)| ≤ 1 for 0 ≤ t ≤ 1");
    }
  }
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& term = terms_[i].term;
    if (numerics::hermiticity_defect(term.matrix) > 1e-12) {
      throw Error(ErrorKind::Config, "term " + std::to_string(i) + ": H_i is not Hermitian");
    }
    if (term.norm > 0.5 + kNormTol) {
      throw Error(ErrorKind::NormAssumptionViolated,
                  "term " + std::to_string(i) + ": ||H_i|| = " + fmt(term.norm) +
                      " violates the assumption that each H_i has norm at most 1/2");
    }
  }
  for (int k = 0; k < grid_points_; ++k) {
    const double t = grid_t(k, grid_points_);
    const double n = numerics::spectral_norm(evaluate(*this, t));
    if (n > 0.5 + kNormTol) {
      throw Error(ErrorKind::NormAssumptionViolated,
                  "||H(t)|| = " + fmt(n) + " at t = " + fmt(t) +
                      " violates the assumption that H(t) has norm at most 1/2");
    }
  }
}

const CoefficientExpr& TimeDependentHamiltonian::coefficient(std::size_t i, int order) const {
  if (order < 0 || order > kMaxOrder) {
    throw Error(ErrorKind::ContractViolation, "coefficient derivative order out of range");
  }
  return terms_.at(i).derivatives[static_cast<std::size_t>(order)];
}

bool TimeDependentHamiltonian::derivative_vanishes(int order) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [&](const Entry& e) { return e.derivatives.at(static_cast<std::size_t>(order)).is_zero(); });
}

double TimeDependentHamiltonian::coefficient_bound(int order) const {
  if (order < 0 || order >= kMaxOrder) {
    throw Error(ErrorKind::ContractViolation, "coefficient bound order out of range");
  }
  return bounds_[static_cast<std::size_t>(order)];
}

std::size_t TimeDependentHamiltonian::d_max() const {
  std::size_t d = 0;
  for (const auto& e : terms_) d = std::max(d, e.term.sparsity);
  return d;
}

double TimeDependentHamiltonian::max_entry() const {
  double v = 0.0;
  for (const auto& e : terms_) v = std::max(v, e.term.matrix.cwiseAbs().maxCoeff());
  return v;
}

ComplexMatrix evaluate(const TimeDependentHamiltonian& h, double t) {
  require_t(t);
  ComplexMatrix out = ComplexMatrix::Zero(h.dim(), h.dim());
  for (std::size_t i = 0; i < h.size(); ++i) out += h.coefficient(i).eval(t) * h.term(i).matrix;
  return out;
}

ComplexMatrix derivative(const TimeDependentHamiltonian& h, double t, int j) {
  require_t(t);
  if (j < 1) throw Error(ErrorKind::ContractViolation, "derivative: order must be >= 1");
  ComplexMatrix out = ComplexMatrix::Zero(h.dim(), h.dim());
  for (std::size_t i = 0; i < h.size(); ++i) {
    const CoefficientExpr d =
        j <= TimeDependentHamiltonian::kMaxOrder ? h.coefficient(i, j) : differentiate(h.coefficient(i), j);
    if (!d.is_zero()) out += d.eval(t) * h.term(i).matrix;
  }
  return out;
}

DerivativeBounds derivative_bounds(const TimeDependentHamiltonian& h, int p, int gridpoints) {
  if (p < 1) throw Error(ErrorKind::ContractViolation, "derivative_bounds: p must be >= 1");
  if (gridpoints < 2) throw Error(ErrorKind::ContractViolation, "derivative_bounds: need 2 grid points");
  DerivativeBounds out;
  for (int j = 0; j <= p; ++j) {
    double m = 0.0;
    if (j == 0 || !h.derivative_vanishes(j)) {
      for (int k = 0; k < gridpoints; ++k) {
        const double t = grid_t(k, gridpoints);
        m = std::max(m, numerics::spectral_norm(j == 0 ? evaluate(h, t) : derivative(h, t, j)));
      }
    }
    out.per_order.push_back(m);
    out.overall = std::max(out.overall, m);
  }
  return out;
}

namespace {

// Combined per-term pipeline with coefficients c_i (|c_i| <= 1): the
// top-left block of the result is sum_i c_i H_i / m.
BlockEncoding encode_combination(const TimeDependentHamiltonian& h, const std::vector<double>& c,
                                 double eps) {
  const Count transform_depth = costmodel::transform_queries(eps);
  std::vector<BlockEncoding> parts;
  parts.reserve(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    BlockEncoding hi = blockenc::scale_down(blockenc::encode_from_log(h.recovered_term(i), eps, i),
                                            std::numbers::pi / 2.0);
    const double ci = std::clamp(c[i], -1.0, 1.0);
    const std::array<Complex, 2> amps{Complex(ci), Complex(std::sqrt(1.0 - ci * ci))};
    BlockEncoding coeff = blockenc::charge_depth(blockenc::encode_diagonal(amps), transform_depth);
    parts.push_back(blockenc::tensor(coeff, hi));
  }
  const std::vector<double> ones(h.size(), 1.0);
  return blockenc::project_top_left(blockenc::linear_combine(parts, ones), h.dim());
}

double checked_coefficient(double v, const char* what) {
  if (std::abs(v) > 1.0 + 1e-6) {
    throw Error(ErrorKind::NumericalFailure,
                std::string(what) + ": coefficient magnitude " + fmt(v) + " exceeds its bound");
  }
  return v;
}

}  // namespace

BlockEncoding block_encode_H(const TimeDependentHamiltonian& h, double t, double eps) {
  require_t(t);
  std::vector<double> c;
  for (std::size_t i = 0; i < h.size(); ++i) {
    c.push_back(checked_coefficient(h.coefficient(i).eval(t), "block_encode_H"));
  }
  BlockEncoding combined = encode_combination(h, c, eps);
  const double m = static_cast<double>(h.size());
  if (h.size() < 2) return blockenc::relabel(combined, 1.0);
  return blockenc::relabel(blockenc::amplify(combined, m, costmodel::kEncodeHDelta, eps), 1.0);
}

BlockEncoding block_encode_H_derivative(const TimeDependentHamiltonian& h, double t, int j,
                                        double eps) {
  require_t(t);
  if (j < 1) throw Error(ErrorKind::ContractViolation, "block_encode_H_derivative: order must be >= 1");
  if (h.derivative_vanishes(j)) {
    return BlockEncoding(ComplexMatrix::Zero(h.dim(), h.dim()), 1.0, 0, 0.0, CostRecord{});
  }
  const double g = h.coefficient_bound(j);
  if (!(g > 0.0)) {
    throw Error(ErrorKind::DegenerateDerivative,
                "block_encode_H_derivative: derivative bound is zero for a nonzero derivative");
  }
  std::vector<double> c;
  for (std::size_t i = 0; i < h.size(); ++i) {
    c.push_back(checked_coefficient(h.coefficient(i, j).eval(t) / g, "block_encode_H_derivative"));
  }
  return blockenc::relabel(encode_combination(h, c, eps), static_cast<double>(h.size()) * g);
}

}  // namespace qtdsim
