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

// Perturbation-injection model for block-encoding error bounds.
//
// Alongside each encoding we carry the block a concrete implementation would
// actually contain, with every leaf perturbed inside its declared error and
// every amplification distorting singular values by a relative factor within
// its eps. The tracked err must dominate || A - alpha * actual ||.

#include <random>

#include "oracles.hpp"
#include "qtdsim/blockenc.hpp"

namespace perturb {

using qtdsim::BlockEncoding;
using oracle::Matrix;
namespace be = qtdsim::blockenc;

struct Tracked {
  BlockEncoding enc;
  Matrix actual;

  /// || A - alpha * actual ||, the true deviation in target units.
  double deviation() const { return oracle::norm2(enc.target() - enc.alpha() * actual); }
};

inline Matrix unit_direction(std::mt19937_64& rng, Eigen::Index n) {
  const Matrix e = oracle::random_matrix(rng, n);
  return e / oracle::norm2(e);
}

inline Tracked leaf_from_log(std::mt19937_64& rng, const Matrix& h, double eps) {
  BlockEncoding enc = be::encode_from_log(h, eps, 0);
  std::uniform_real_distribution<double> u(0.5, 1.0);
  const Matrix e = unit_direction(rng, h.rows()) * (u(rng) * eps / enc.alpha());
  return {enc, enc.block() + e};
}

inline Tracked leaf_diagonal(std::mt19937_64& rng, Eigen::Index n) {
  const oracle::Vector v = oracle::random_matrix(rng, n).col(0).normalized();
  BlockEncoding enc = be::encode_diagonal({v.data(), static_cast<std::size_t>(n)});
  return {enc, enc.block()};
}

inline Tracked tensor(const Tracked& x, const Tracked& y) {
  return {be::tensor(x.enc, y.enc), oracle::kron(x.actual, y.actual)};
}

inline Tracked multiply(const Tracked& x, const Tracked& y) {
  return {be::multiply(x.enc, y.enc), x.actual * y.actual};
}

inline Tracked combine(const Tracked& x, const Tracked& y, double wx, double wy) {
  const std::vector<BlockEncoding> parts{x.enc, y.enc};
  const std::vector<double> w{wx, wy};
  const double amax = std::max(x.enc.alpha(), y.enc.alpha());
  const double beta = std::abs(wx) + std::abs(wy);
  const Matrix actual =
      (wx * (x.enc.alpha() / amax) * x.actual + wy * (y.enc.alpha() / amax) * y.actual) / beta;
  return {be::linear_combine(parts, w), actual};
}

inline Tracked scale(const Tracked& x, double c) { return {be::scale(x.enc, c), c * x.actual}; }

inline Tracked scale_down(const Tracked& x, double p) {
  return {be::scale_down(x.enc, p), x.actual / p};
}

inline Tracked amplify(std::mt19937_64& rng, const Tracked& x, double gamma, double delta,
                       double eps) {
  BlockEncoding enc = be::amplify(x.enc, gamma, delta, eps);
  Eigen::JacobiSVD<Matrix> svd(x.actual, Eigen::ComputeFullU | Eigen::ComputeFullV);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd s = svd.singularValues();
  for (Eigen::Index k = 0; k < s.size(); ++k) s(k) *= gamma * (1.0 + eps * u(rng));
  return {enc, svd.matrixU() * s.cast<oracle::Complex>().asDiagonal() * svd.matrixV().adjoint()};
}

/// Random composition of depth `depth` on 2-qubit (4 x 4) blocks.
inline Tracked random_composition(std::mt19937_64& rng, int depth, double eps = 1e-3) {
  std::uniform_int_distribution<int> pick(0, 4);
  std::uniform_real_distribution<double> u(0.2, 0.9);
  if (depth == 0) {
    switch (pick(rng) % 3) {
      case 0: return leaf_from_log(rng, oracle::random_hermitian(rng, 4, 0.5 * u(rng)), eps);
      case 1: return leaf_diagonal(rng, 4);
      default:
        return tensor(leaf_from_log(rng, oracle::random_hermitian(rng, 2, 0.4), eps),
                      leaf_diagonal(rng, 2));
    }
  }
  const Tracked a = random_composition(rng, depth - 1, eps);
  switch (pick(rng)) {
    case 0: return multiply(a, random_composition(rng, depth - 1, eps));
    case 1: return combine(a, random_composition(rng, depth - 1, eps), u(rng), -u(rng));
    case 2: return scale(a, -u(rng));
    case 3: return scale_down(a, 1.0 + u(rng));
    default: {
      const double norm = oracle::norm2(a.enc.target());
      const double room = norm > 0 ? 0.5 * a.enc.alpha() / norm : 2.0;
      if (room > 1.05) return amplify(rng, a, 1.0 + (room - 1.0) * u(rng), 0.5, eps);
      return scale_down(a, 2.0);
    }
  }
}

}  // namespace perturb
