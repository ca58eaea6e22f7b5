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

// Block-encoding algebra emulated at matrix level.
//
// An encoding is tracked as (target A, subnormalization alpha, ancilla count,
// error bound, cost): the implemented unitary would carry A / alpha in its
// top-left block up to err / alpha. Materialization into an explicit unitary
// happens only on demand (tests, selftest).
//
// Error bounds are in the units of A: err bounds ||A - alpha * block||.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qtdsim/cost.hpp"
#include "qtdsim/numerics.hpp"

namespace qtdsim {

class BlockEncoding {
 public:
  /// Validates alpha > 0, err >= 0 and ||target|| / alpha <= 1 + 1e-9.
  BlockEncoding(ComplexMatrix target, double alpha, std::uint64_t ancillas, double err,
                CostRecord cost);

  static BlockEncoding identity(Eigen::Index dim);

  const ComplexMatrix& target() const { return target_; }
  double alpha() const { return alpha_; }
  std::uint64_t ancillas() const { return ancillas_; }
  double err() const { return err_; }
  const CostRecord& cost() const { return cost_; }
  Eigen::Index dim() const { return target_.rows(); }

  /// The encoded block A / alpha.
  ComplexMatrix block() const { return target_ / alpha_; }

 private:
  ComplexMatrix target_;
  double alpha_;
  std::uint64_t ancillas_;
  double err_;
  CostRecord cost_;
};

namespace blockenc {

/// Tolerance on the contraction invariant ||A|| / alpha <= 1.
inline constexpr double kContractionTol = 1e-9;

/// (2/pi, 2, eps)-encoding of H = i log U from controlled uses of U; charges
/// ceil(log2(1/eps)) queries to `term`. Requires ||H|| <= 1/2.
BlockEncoding encode_from_unitary(const ComplexMatrix& u, double eps, std::size_t term);

/// Same as encode_from_unitary with H = i log U already available.
BlockEncoding encode_from_log(const ComplexMatrix& h, double eps, std::size_t term);

/// Exact encoding of diag(psi) from a normalized amplitude vector of length 2^n.
BlockEncoding encode_diagonal(std::span<const Complex> amplitudes);

BlockEncoding tensor(const BlockEncoding& x, const BlockEncoding& y);

/// sum_i w_i A_i with alpha = (sum |w_i|) * max_i alpha_i.
BlockEncoding linear_combine(std::span<const BlockEncoding> encodings,
                             std::span<const double> weights);

BlockEncoding multiply(const BlockEncoding& x, const BlockEncoding& y);

/// Same target, alpha * p. Requires p > 1 (with 1e-9 margin).
BlockEncoding scale_down(const BlockEncoding& x, double p);

/// Block multiplied by c, |c| <= 1: target c * A, same alpha.
BlockEncoding scale(const BlockEncoding& x, double c);

/// Same block, represented with a different alpha (target rescaled).
BlockEncoding relabel(const BlockEncoding& x, double alpha);

/// Unit-modulus scalar folded into the target; free.
BlockEncoding phase(const BlockEncoding& x, Complex z);

/// Keep the top-left dim x dim block; the dropped index becomes an ancilla.
BlockEncoding project_top_left(const BlockEncoding& x, Eigen::Index dim);

/// Extra depth for work that is emulated rather than composed.
BlockEncoding charge_depth(const BlockEncoding& x, const Count& units);

/// Singular-value amplification by gamma: alpha / gamma. Requires
/// ||A|| * gamma / alpha <= 1 - delta.
BlockEncoding amplify(const BlockEncoding& x, double gamma, double delta, double eps);

/// Explicit unitary dilation of target / alpha.
ComplexMatrix materialize(const BlockEncoding& x);

/// Fault injection for mutation testing of the self-test: when enabled,
/// linear_combine over-reports its alpha by 25%.
namespace fault {
void set_alpha_bookkeeping(bool enabled);
bool alpha_bookkeeping();
}  // namespace fault

}  // namespace blockenc
}  // namespace qtdsim
