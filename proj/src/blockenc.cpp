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

#include "qtdsim/blockenc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <string>

#include "qtdsim/costmodel.hpp"

namespace qtdsim {

namespace {

[[noreturn]] void contract(const std::string& what) {
  throw Error(ErrorKind::ContractViolation, what);
}

CostRecord with_high_water(CostRecord cost, std::uint64_t ancillas) {
  cost.ancilla_high_water = std::max(cost.ancilla_high_water, ancillas);
  return cost;
}

std::uint64_t ceil_log2(std::size_t m) {
  std::uint64_t q = 0;
  while ((std::size_t{1} << q) < m) ++q;
  return q;
}

}  // namespace

BlockEncoding::BlockEncoding(ComplexMatrix target, double alpha, std::uint64_t ancillas,
                             double err, CostRecord cost)
    : target_(std::move(target)),
      alpha_(alpha),
      ancillas_(ancillas),
      err_(err),
      cost_(std::move(cost)) {
  if (!(alpha_ > 0.0) || !std::isfinite(alpha_)) contract("block encoding: alpha must be positive");
  if (!(err_ >= 0.0)) contract("block encoding: err must be nonnegative");
  if (target_.rows() != target_.cols()) contract("block encoding: target is not square");
  numerics::require_finite(target_, "block encoding");
  const double norm = numerics::spectral_norm(target_);
  if (norm / alpha_ > 1.0 + blockenc::kContractionTol) {
    throw Error(ErrorKind::SubnormalizationViolated,
                "block encoding: ||A||/alpha = " + std::to_string(norm / alpha_) + " > 1");
  }
  cost_.ancilla_high_water = std::max(cost_.ancilla_high_water, ancillas_);
}

BlockEncoding BlockEncoding::identity(Eigen::Index dim) {
  return BlockEncoding(ComplexMatrix::Identity(dim, dim), 1.0, 0, 0.0, CostRecord{});
}

namespace blockenc {

BlockEncoding encode_from_log(const ComplexMatrix& h, double eps, std::size_t term) {
  if (!(eps > 0.0 && eps <= 0.5)) contract("encode_from_unitary: eps must lie in (0, 1/2]");
  const double norm = numerics::spectral_norm(h);
  if (norm > 0.5 + kContractionTol) {
    throw Error(ErrorKind::NormAssumptionViolated,
                "encode_from_unitary: ||H|| = " + std::to_string(norm) +
                    " violates the assumption that each H_i has norm at most 1/2");
  }
  const Count l = costmodel::transform_queries(eps);
  CostRecord cost;
  cost.queries[term] = l;
  cost.depth_units = l;
  return BlockEncoding(h, 2.0 / std::numbers::pi, 2, eps, std::move(cost));
}

BlockEncoding encode_from_unitary(const ComplexMatrix& u, double eps, std::size_t term) {
  return encode_from_log(numerics::unitary_log(u), eps, term);
}

BlockEncoding encode_diagonal(std::span<const Complex> amplitudes) {
  const auto n = static_cast<Eigen::Index>(amplitudes.size());
  if (!numerics::is_power_of_two(n)) contract("encode_diagonal: length must be a power of two");
  double norm2 = 0.0;
  for (const auto& a : amplitudes) norm2 += std::norm(a);
  if (std::abs(norm2 - 1.0) > 1e-10) contract("encode_diagonal: amplitudes are not normalized");
  ComplexMatrix d = ComplexMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) d(k, k) = amplitudes[static_cast<std::size_t>(k)];
  const int qubits = numerics::log2_dim(n);
  CostRecord cost;
  cost.depth_units = qubits;
  return BlockEncoding(std::move(d), 1.0, static_cast<std::uint64_t>(qubits) + 3, 0.0,
                       std::move(cost));
}

BlockEncoding tensor(const BlockEncoding& x, const BlockEncoding& y) {
  CostRecord cost = x.cost() + y.cost();
  cost.depth_units += 1;
  const auto ancillas = x.ancillas() + y.ancillas();
  return BlockEncoding(numerics::kron(x.target(), y.target()), x.alpha() * y.alpha(), ancillas,
                       x.alpha() * y.err() + y.alpha() * x.err(),
                       with_high_water(std::move(cost), ancillas));
}

BlockEncoding linear_combine(std::span<const BlockEncoding> encodings,
                             std::span<const double> weights) {
  if (encodings.empty()) contract("linear_combine: no encodings");
  if (encodings.size() != weights.size()) contract("linear_combine: weight count mismatch");
  const auto dim = encodings.front().dim();
  double beta = 0.0;
  double alpha_max = 0.0;
  std::uint64_t ancillas = 0;
  for (std::size_t i = 0; i < encodings.size(); ++i) {
    if (encodings[i].dim() != dim) contract("linear_combine: dimension mismatch");
    if (!std::isfinite(weights[i])) contract("linear_combine: non-finite weight");
    beta += std::abs(weights[i]);
    alpha_max = std::max(alpha_max, encodings[i].alpha());
    ancillas = std::max(ancillas, encodings[i].ancillas());
  }
  if (beta == 0.0) contract("linear_combine: all weights are zero");
  ancillas += ceil_log2(encodings.size());

  ComplexMatrix target = ComplexMatrix::Zero(dim, dim);
  double err = 0.0;
  CostRecord cost;
  for (std::size_t i = 0; i < encodings.size(); ++i) {
    const auto& e = encodings[i];
    target += weights[i] * e.target();
    // Inputs are brought to alpha_max with scale_down, which inflates their
    // error by alpha_max / alpha_i.
    err += std::abs(weights[i]) * e.err() * (alpha_max / e.alpha());
    cost += e.cost();
  }
  cost.depth_units += encodings.size();
  const double inflation = fault::alpha_bookkeeping() ? 1.25 : 1.0;
  return BlockEncoding(std::move(target), beta * alpha_max * inflation, ancillas, err,
                       with_high_water(std::move(cost), ancillas));
}

BlockEncoding multiply(const BlockEncoding& x, const BlockEncoding& y) {
  if (x.dim() != y.dim()) contract("multiply: dimension mismatch");
  const auto ancillas = x.ancillas() + y.ancillas();
  return BlockEncoding(x.target() * y.target(), x.alpha() * y.alpha(), ancillas,
                       x.alpha() * y.err() + y.alpha() * x.err(),
                       with_high_water(x.cost() + y.cost(), ancillas));
}

BlockEncoding scale_down(const BlockEncoding& x, double p) {
  if (!(p > 1.0 + 1e-9) || !std::isfinite(p)) contract("scale_down: factor must exceed 1");
  CostRecord cost = x.cost();
  cost.depth_units += 1;
  return BlockEncoding(x.target(), x.alpha() * p, x.ancillas(), x.err() * p, std::move(cost));
}

BlockEncoding scale(const BlockEncoding& x, double c) {
  if (!(std::abs(c) <= 1.0)) {
    contract("scale: factor " + std::to_string(c) + " has magnitude above 1");
  }
  CostRecord cost = x.cost();
  cost.depth_units += 1;
  return BlockEncoding(c * x.target(), x.alpha(), x.ancillas(), std::abs(c) * x.err(),
                       std::move(cost));
}

BlockEncoding relabel(const BlockEncoding& x, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) contract("relabel: alpha must be positive");
  const double r = alpha / x.alpha();
  return BlockEncoding(r * x.target(), alpha, x.ancillas(), r * x.err(), x.cost());
}

BlockEncoding phase(const BlockEncoding& x, Complex z) {
  if (std::abs(std::abs(z) - 1.0) > 1e-12) contract("phase: factor is not unit modulus");
  return BlockEncoding(z * x.target(), x.alpha(), x.ancillas(), x.err(), x.cost());
}

BlockEncoding project_top_left(const BlockEncoding& x, Eigen::Index dim) {
  if (dim < 1 || x.dim() % dim != 0 || !numerics::is_power_of_two(x.dim() / dim)) {
    contract("project_top_left: block size must divide the dimension by a power of two");
  }
  const auto ancillas = x.ancillas() + static_cast<std::uint64_t>(numerics::log2_dim(x.dim() / dim));
  return BlockEncoding(x.target().topLeftCorner(dim, dim), x.alpha(), ancillas, x.err(),
                       with_high_water(x.cost(), ancillas));
}

BlockEncoding charge_depth(const BlockEncoding& x, const Count& units) {
  CostRecord cost = x.cost();
  cost.depth_units += units;
  return BlockEncoding(x.target(), x.alpha(), x.ancillas(), x.err(), std::move(cost));
}

BlockEncoding amplify(const BlockEncoding& x, double gamma, double delta, double eps) {
  if (!(gamma > 1.0) || !std::isfinite(gamma)) contract("amplify: gamma must exceed 1");
  if (!(delta > 0.0 && delta <= 0.5)) contract("amplify: delta must lie in (0, 1/2]");
  if (!(eps > 0.0 && eps < 0.5)) contract("amplify: eps must lie in (0, 1/2)");
  const double norm = numerics::spectral_norm(x.target());
  const double boosted = norm * gamma / x.alpha();
  if (boosted > 1.0 - delta + kContractionTol) {
    throw Error(ErrorKind::AmplificationHeadroom,
                "amplify: boosted block norm " + std::to_string(boosted) + " exceeds 1 - delta = " +
                    std::to_string(1.0 - delta));
  }
  const Count reps = costmodel::amp_repetitions(gamma, delta, eps);
  CostRecord cost = x.cost().repeated(reps);
  cost.depth_units += reps;
  const auto ancillas = x.ancillas() + 1;
  // Relative singular-value distortion eps on top of the incoming error.
  const double err = x.err() * (1.0 + eps) + eps * norm;
  return BlockEncoding(x.target(), x.alpha() / gamma, ancillas, err,
                       with_high_water(std::move(cost), ancillas));
}

ComplexMatrix materialize(const BlockEncoding& x) {
  return numerics::unitary_dilation(x.block(), kContractionTol);
}

namespace fault {

namespace {
std::atomic<bool> inflate_alpha{false};
}  // namespace

void set_alpha_bookkeeping(bool enabled) { inflate_alpha.store(enabled); }
bool alpha_bookkeeping() { return inflate_alpha.load(); }

}  // namespace fault

}  // namespace blockenc
}  // namespace qtdsim
