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

// Independent reference computations for the tests. Nothing here calls the
// library's numerics: norms come from power iteration, exponentials from
// scaled Taylor series, Kronecker products and Paulis from index loops.

#include <cmath>
#include <numbers>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline const Complex kI{0.0, 1.0};

/// Largest singular value by power iteration on A^+ A.
inline double norm2(const Matrix& a, int iterations = 3000) {
  if (a.size() == 0) return 0.0;
  const Matrix g = a.adjoint() * a;
  Vector v(a.cols());
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> n;
  for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = Complex(n(rng), n(rng));
  double lambda = 0.0;
  for (int k = 0; k < iterations; ++k) {
    Vector w = g * v;
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    v = w / nw;
    lambda = nw;
  }
  return std::sqrt(lambda);
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

/// Pauli string matrix from per-qubit bit rules; character 0 acts on the
/// most significant bit.
inline Matrix pauli(const std::string& s) {
  const auto q = static_cast<int>(s.size());
  const Eigen::Index dim = Eigen::Index{1} << q;
  Matrix m = Matrix::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    Eigen::Index row = col;
    Complex amp = 1.0;
    for (int k = 0; k < q; ++k) {
      const int bit = static_cast<int>((col >> (q - 1 - k)) & 1);
      switch (s[static_cast<std::size_t>(k)]) {
        case 'X': row ^= Eigen::Index{1} << (q - 1 - k); break;
        case 'Y': row ^= Eigen::Index{1} << (q - 1 - k); amp *= bit ? -kI : kI; break;
        case 'Z': amp *= bit ? -1.0 : 1.0; break;
        default: break;
      }
    }
    m(row, col) = amp;
  }
  return m;
}

/// exp(M) by scaling and squaring of a 30-term Taylor series.
inline Matrix expm(const Matrix& m) {
  int squarings = 0;
  double scale = m.cwiseAbs().rowwise().sum().maxCoeff();
  while (scale > 0.25) {
    scale /= 2.0;
    ++squarings;
  }
  const Matrix a = m / std::pow(2.0, squarings);
  Matrix sum = Matrix::Identity(m.rows(), m.cols());
  Matrix term = sum;
  for (int k = 1; k <= 30; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
  }
  for (int k = 0; k < squarings; ++k) sum = sum * sum;
  return sum;
}

/// sum_{k=0}^p (-i H dt)^k / k!.
inline Matrix truncated_exp(const Matrix& h, double dt, int p) {
  Matrix sum = Matrix::Identity(h.rows(), h.cols());
  Matrix term = sum;
  for (int k = 1; k <= p; ++k) {
    term = term * (-kI * dt * h) / static_cast<double>(k);
    sum += term;
  }
  return sum;
}

inline Matrix random_matrix(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  Matrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = Complex(g(rng), g(rng));
  return m;
}

inline Matrix random_hermitian(std::mt19937_64& rng, Eigen::Index n, double norm) {
  const Matrix a = random_matrix(rng, n);
  const Matrix h = (a + a.adjoint()) / 2.0;
  return h * (norm / norm2(h));
}

/// Benchmark H(t) = cos t 0.4 XI + sin t 0.4 ZZ and its derivatives.
inline Matrix benchmark_h(double t, int derivative = 0) {
  // d^j cos = cos(t + j pi/2), d^j sin = sin(t + j pi/2).
  const double shift = derivative * std::numbers::pi / 2.0;
  return 0.4 * std::cos(t + shift) * pauli("XI") + 0.4 * std::sin(t + shift) * pauli("ZZ");
}

/// Time-ordered propagator of the benchmark by a fourth-order commutator-free
/// Magnus scheme with k steps (independent of the library's oracle).
inline Matrix benchmark_propagator(double t0, double t1, int k) {
  const double c1 = 0.5 - std::sqrt(3.0) / 6.0;
  const double c2 = 0.5 + std::sqrt(3.0) / 6.0;
  const double a1 = 0.25 + std::sqrt(3.0) / 6.0;
  const double a2 = 0.25 - std::sqrt(3.0) / 6.0;
  const double h = (t1 - t0) / k;
  Matrix u = Matrix::Identity(4, 4);
  for (int n = 0; n < k; ++n) {
    const double t = t0 + n * h;
    const Matrix h1 = benchmark_h(t + c1 * h);
    const Matrix h2 = benchmark_h(t + c2 * h);
    u = expm(-kI * h * (a1 * h1 + a2 * h2)) * u;
    u = expm(-kI * h * (a2 * h1 + a1 * h2)) * u;
  }
  return u;
}

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]) / n;
    my += std::log(y[i]) / n;
  }
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
  }
  return sxy / sxx;
}

}  // namespace oracle
