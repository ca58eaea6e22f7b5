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

// Dense complex linear-algebra kernel. Everything here is a free function
// over Eigen expressions so callers can pass blocks, products or sums
// without materializing them first.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "qtdsim/errors.hpp"

namespace qtdsim {

template <typename Real>
using MatrixC = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using VectorC = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;
using ComplexMatrix = MatrixC<double>;
using ComplexVector = VectorC<double>;

namespace numerics {

template <typename Derived>
using PlainOf = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;

inline bool is_power_of_two(Eigen::Index n) { return n >= 1 && (n & (n - 1)) == 0; }

inline int log2_dim(Eigen::Index n) {
  int q = 0;
  while ((Eigen::Index{1} << q) < n) ++q;
  return q;
}

template <typename Derived>
void require_square_pow2(const Eigen::MatrixBase<Derived>& a, const char* what) {
  if (a.rows() != a.cols() || !is_power_of_two(a.rows())) {
    throw Error(ErrorKind::ContractViolation,
                std::string(what) + ": expected a square 2^q x 2^q matrix, got " +
                    std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& a, const char* what) {
  if (!a.allFinite()) {
    throw Error(ErrorKind::NumericalFailure, std::string(what) + ": non-finite entry");
  }
}

/// Largest singular value, from a full Jacobi SVD.
template <typename Derived>
typename Derived::RealScalar spectral_norm(const Eigen::MatrixBase<Derived>& a) {
  if (a.size() == 0) return 0;
  require_finite(a, "spectral_norm");
  Eigen::JacobiSVD<PlainOf<Derived>> svd(a.eval());
  if (svd.info() != Eigen::Success) {
    throw Error(ErrorKind::NumericalFailure, "spectral_norm: SVD did not converge");
  }
  return svd.singularValues()(0);
}

template <typename Derived>
typename Derived::RealScalar hermiticity_defect(const Eigen::MatrixBase<Derived>& a) {
  return spectral_norm(a - a.adjoint());
}

template <typename Derived>
typename Derived::RealScalar unitarity_defect(const Eigen::MatrixBase<Derived>& a) {
  const auto n = a.rows();
  return spectral_norm(a.adjoint() * a - PlainOf<Derived>::Identity(n, n));
}

template <typename DerivedA, typename DerivedB>
PlainOf<DerivedA> kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  PlainOf<DerivedA> out = Eigen::kroneckerProduct(a.eval(), b.eval()).eval();
  return out;
}

/// exp(-i theta H) for Hermitian H, via its eigendecomposition.
template <typename Derived>
PlainOf<Derived> hermitian_exp(const Eigen::MatrixBase<Derived>& h,
                               typename Derived::RealScalar theta) {
  using Real = typename Derived::RealScalar;
  if (h.rows() != h.cols()) {
    throw Error(ErrorKind::ContractViolation, "hermitian_exp: matrix is not square");
  }
  PlainOf<Derived> hm = h.eval();
  if (hermiticity_defect(hm) > Real(1e-12)) {
    throw Error(ErrorKind::ContractViolation, "hermitian_exp: input is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<PlainOf<Derived>> eig(hm);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorKind::NumericalFailure, "hermitian_exp: eigensolver failed");
  }
  const auto& lambda = eig.eigenvalues();
  VectorC<Real> phases(lambda.size());
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    phases(k) = std::polar(Real(1), -theta * lambda(k));
  }
  const auto& v = eig.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

/// Principal-branch Hermitian logarithm: returns H with exp(-iH) = U.
/// Eigenphases are taken in (-pi, pi]; phases within 1e-8 of pi are rejected.
template <typename Derived>
PlainOf<Derived> unitary_log(const Eigen::MatrixBase<Derived>& u) {
  using Real = typename Derived::RealScalar;
  if (u.rows() != u.cols()) {
    throw Error(ErrorKind::ContractViolation, "unitary_log: matrix is not square");
  }
  PlainOf<Derived> um = u.eval();
  require_finite(um, "unitary_log");
  if (unitarity_defect(um) > Real(1e-10)) {
    throw Error(ErrorKind::ContractViolation, "unitary_log: input is not unitary");
  }
  Eigen::ComplexSchur<PlainOf<Derived>> schur(um);
  if (schur.info() != Eigen::Success) {
    throw Error(ErrorKind::NumericalFailure, "unitary_log: Schur decomposition failed");
  }
  const auto& t = schur.matrixT();
  const auto& q = schur.matrixU();
  const Real pi = std::numbers::pi_v<Real>;
  Eigen::Matrix<Real, Eigen::Dynamic, 1> theta(t.rows());
  for (Eigen::Index k = 0; k < t.rows(); ++k) {
    Real phase = std::arg(t(k, k));
    if (pi - std::abs(phase) < Real(1e-8)) {
      throw Error(ErrorKind::BranchAmbiguity,
                  "unitary_log: eigenphase at the branch cut (+-pi)");
    }
    theta(k) = -phase;
  }
  PlainOf<Derived> h = q * theta.template cast<typename Derived::Scalar>().asDiagonal() *
                       q.adjoint();
  return (h + h.adjoint()) / Real(2);
}

/// Square root of a Hermitian positive-semidefinite matrix. Eigenvalues in
/// [-1e-12, 0] are clamped to zero; anything more negative is rejected.
template <typename Derived>
PlainOf<Derived> psd_sqrt(const Eigen::MatrixBase<Derived>& a) {
  using Real = typename Derived::RealScalar;
  PlainOf<Derived> am = a.eval();
  am = (am + am.adjoint()).eval() / Real(2);
  Eigen::SelfAdjointEigenSolver<PlainOf<Derived>> eig(am);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorKind::NumericalFailure, "psd_sqrt: eigensolver failed");
  }
  Eigen::Matrix<Real, Eigen::Dynamic, 1> root(eig.eigenvalues().size());
  for (Eigen::Index k = 0; k < root.size(); ++k) {
    Real lambda = eig.eigenvalues()(k);
    if (lambda < Real(-1e-12)) {
      throw Error(ErrorKind::NumericalFailure, "psd_sqrt: matrix is not positive semidefinite");
    }
    root(k) = lambda > 0 ? std::sqrt(lambda) : Real(0);
  }
  const auto& v = eig.eigenvectors();
  return v * root.template cast<typename Derived::Scalar>().asDiagonal() * v.adjoint();
}

/// Unitary completion [[B, sqrt(I - BB^+)], [sqrt(I - B^+B), -B^+]] of a
/// contraction B. B is clipped to unit norm when it exceeds 1 by at most tol.
/// Both defect roots come from one SVD so the off-diagonal products cancel
/// even when singular values sit at 1.
template <typename Derived>
PlainOf<Derived> unitary_dilation(const Eigen::MatrixBase<Derived>& b,
                                  typename Derived::RealScalar tol) {
  using Real = typename Derived::RealScalar;
  using Scalar = typename Derived::Scalar;
  if (b.rows() != b.cols()) {
    throw Error(ErrorKind::ContractViolation, "unitary_dilation: matrix is not square");
  }
  PlainOf<Derived> bm = b.eval();
  Eigen::JacobiSVD<PlainOf<Derived>> svd(bm, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const Real norm = sigma.size() > 0 ? sigma(0) : Real(0);
  if (norm > Real(1) + tol) {
    throw Error(ErrorKind::SubnormalizationViolated,
                "unitary_dilation: block norm " + std::to_string(norm) + " exceeds 1");
  }
  if (norm > Real(1)) bm /= norm;
  const auto n = bm.rows();
  Eigen::Matrix<Real, Eigen::Dynamic, 1> defect(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Real s = norm > Real(1) ? sigma(k) / norm : std::min(sigma(k), Real(1));
    defect(k) = std::sqrt((Real(1) - s) * (Real(1) + s));
  }
  const auto d = defect.template cast<Scalar>().asDiagonal();
  PlainOf<Derived> w(2 * n, 2 * n);
  w.topLeftCorner(n, n) = bm;
  w.topRightCorner(n, n) = svd.matrixU() * d * svd.matrixU().adjoint();
  w.bottomLeftCorner(n, n) = svd.matrixV() * d * svd.matrixV().adjoint();
  w.bottomRightCorner(n, n) = -bm.adjoint();
  return w;
}

}  // namespace numerics
}  // namespace qtdsim
