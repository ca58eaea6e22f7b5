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

#include "qtdsim/reference_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "qtdsim/errors.hpp"

namespace qtdsim {

namespace {

constexpr std::size_t kInitialSubsteps = 256;
constexpr std::size_t kMaxSubsteps = std::size_t{1} << 22;

// exp(-i dt H) for a Hermitian-by-construction H.
ComplexMatrix step_exp(const ComplexMatrix& hm, double dt) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(hm);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorKind::NumericalFailure, "reference: eigensolver failed");
  }
  ComplexVector phases(eig.eigenvalues().size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) {
    phases(k) = std::polar(1.0, -dt * eig.eigenvalues()(k));
  }
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

}  // namespace

ComplexMatrix midpoint_product(const TimeDependentHamiltonian& h, double t0, double t1,
                               std::size_t k) {
  if (k == 0) throw Error(ErrorKind::ContractViolation, "midpoint_product: need substeps");
  const double dt = (t1 - t0) / static_cast<double>(k);
  ComplexMatrix u = ComplexMatrix::Identity(h.dim(), h.dim());
  for (std::size_t n = 0; n < k; ++n) {
    const double mid = t0 + (static_cast<double>(n) + 0.5) * dt;
    u = step_exp(evaluate(h, mid), dt) * u;
  }
  return u;
}

ComplexMatrix interval_propagator(const TimeDependentHamiltonian& h, double t0, double t1,
                                  double tol) {
  if (!(t0 >= 0.0 && t1 <= 1.0 && t0 <= t1)) {
    throw Error(ErrorKind::ContractViolation, "interval_propagator: interval must lie in [0, 1]");
  }
  if (!(tol > 0.0)) throw Error(ErrorKind::ContractViolation, "interval_propagator: tol must be positive");
  if (t0 == t1) return ComplexMatrix::Identity(h.dim(), h.dim());

  // Romberg table: row l holds extrapolants from 256 * 2^l substeps.
  std::vector<ComplexMatrix> prev;
  for (std::size_t k = kInitialSubsteps; k <= kMaxSubsteps; k *= 2) {
    std::vector<ComplexMatrix> row{midpoint_product(h, t0, t1, k)};
    double factor = 1.0;
    for (std::size_t i = 1; i <= prev.size(); ++i) {
      factor *= 4.0;
      row.push_back(row[i - 1] + (row[i - 1] - prev[i - 1]) / (factor - 1.0));
    }
    if (!prev.empty() && numerics::spectral_norm(row.back() - prev.back()) < tol) {
      return row.back();
    }
    prev = std::move(row);
  }
  throw Error(ErrorKind::OracleFailure,
              "interval_propagator: no convergence within 2^22 substeps");
}

double global_error(const ComplexMatrix& approx, const ComplexMatrix& reference) {
  if (approx.rows() != reference.rows() || approx.cols() != reference.cols()) {
    throw Error(ErrorKind::ContractViolation, "global_error: dimension mismatch");
  }
  return numerics::spectral_norm(approx - reference);
}

ComplexMatrix finite_diff_derivative(const TimeDependentHamiltonian& h, double t, int j,
                                     double step, double tol) {
  if (j < 1 || j > 3) throw Error(ErrorKind::ContractViolation, "finite_diff_derivative: j must lie in 1..3");
  if (!(step > 0.0)) throw Error(ErrorKind::ContractViolation, "finite_diff_derivative: step must be positive");
  const int reach = j == 3 ? 2 : 1;
  if (t - reach * step < 0.0 || t + reach * step > 1.0) {
    throw Error(ErrorKind::StencilOutOfRange, "finite_diff_derivative: stencil leaves [0, 1]");
  }
  // Propagate outward from t so every sample shares the central value.
  const ComplexMatrix u0 = exact_propagator(h, t, tol);
  auto at = [&](int k) -> ComplexMatrix {
    const double s = t + k * step;
    if (k == 0) return u0;
    if (k > 0) return interval_propagator(h, t, s, tol) * u0;
    return interval_propagator(h, s, t, tol).adjoint() * u0;
  };
  switch (j) {
    case 1: return (at(1) - at(-1)) / (2.0 * step);
    case 2: return (at(1) - 2.0 * u0 + at(-1)) / (step * step);
    default: return (at(2) - 2.0 * at(1) + 2.0 * at(-1) - at(-2)) / (2.0 * step * step * step);
  }
}

ConvergenceReport fit_convergence_order(std::vector<ConvergencePoint> points) {
  std::sort(points.begin(), points.end(),
            [](const ConvergencePoint& a, const ConvergencePoint& b) { return a.dt > b.dt; });
  ConvergenceReport report;
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& p : points) {
    if (!(p.dt > 0.0)) throw Error(ErrorKind::ContractViolation, "fit_convergence_order: dt must be positive");
    if (p.error > 0.0 && std::isfinite(p.error)) {
      x.push_back(std::log(p.dt));
      y.push_back(std::log(p.error));
    } else {
      ++report.excluded;
    }
  }
  report.points = std::move(points);
  if (x.size() < 2) {
    throw Error(ErrorKind::ContractViolation, "fit_convergence_order: fewer than two usable points");
  }
  const auto n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw Error(ErrorKind::ContractViolation, "fit_convergence_order: dt values must be distinct");
  report.fitted_order = sxy / sxx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (my + report.fitted_order * (x[i] - mx));
    ss += r * r;
  }
  report.fit_residual = std::sqrt(ss / n);
  return report;
}

}  // namespace qtdsim
