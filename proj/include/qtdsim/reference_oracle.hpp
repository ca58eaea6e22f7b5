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

// Classical reference for the time-ordered propagator, error metrics and
// convergence fitting.

#include <cstddef>
#include <vector>

#include "qtdsim/hamiltonian.hpp"

namespace qtdsim {

inline constexpr double kReferenceTol = 1e-12;

/// Time-ordered exp(-i int_{t0}^{t1} H) from midpoint-exponential products
/// with 256 * 2^l substeps, Richardson-extrapolated in h^2. Stops once
/// successive extrapolants differ by less than tol; throws OracleFailure
/// past 2^22 substeps.
ComplexMatrix interval_propagator(const TimeDependentHamiltonian& h, double t0, double t1,
                                  double tol = kReferenceTol);

/// Propagator over [0, t_final].
inline ComplexMatrix exact_propagator(const TimeDependentHamiltonian& h, double t_final,
                                      double tol = kReferenceTol) {
  return interval_propagator(h, 0.0, t_final, tol);
}

/// Plain midpoint-exponential product with k substeps over [t0, t1].
ComplexMatrix midpoint_product(const TimeDependentHamiltonian& h, double t0, double t1,
                               std::size_t k);

/// Spectral distance, global phase included.
double global_error(const ComplexMatrix& approx, const ComplexMatrix& reference);

/// j-th central difference (j <= 3, second order in step) of t -> U(t).
ComplexMatrix finite_diff_derivative(const TimeDependentHamiltonian& h, double t, int j,
                                     double step, double tol = kReferenceTol);

struct ConvergencePoint {
  double dt = 0.0;
  double error = 0.0;
};

struct ConvergenceReport {
  std::vector<ConvergencePoint> points;  ///< sorted by dt descending
  double fitted_order = 0.0;
  double fit_residual = 0.0;  ///< RMS residual of the log-log fit
  std::size_t excluded = 0;   ///< nonpositive errors left out of the fit
};

ConvergenceReport fit_convergence_order(std::vector<ConvergencePoint> points);

}  // namespace qtdsim
