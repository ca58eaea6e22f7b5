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
#include <random>

#include "qtdsim/config.hpp"
#include "qtdsim/costmodel.hpp"
#include "qtdsim/taylor_propagator.hpp"

using namespace qtdsim;
namespace cm = qtdsim::costmodel;

TEST_SUITE("costmodel") {

TEST_CASE("query and repetition counts") {
  CHECK(cm::transform_queries(1e-6) == 20);
  CHECK(cm::transform_queries(0.5) == 1);
  CHECK(cm::transform_queries(0.3) == 2);
  CHECK_THROWS_AS(cm::transform_queries(0.0), Error);
  CHECK(cm::amp_repetitions(2.0, 0.5, 1e-6) == static_cast<long long>(std::ceil(4.0 * std::log(2e6))));
  CHECK(cm::amp_repetitions(8.0, 0.25, 1e-3) == static_cast<long long>(std::ceil(32.0 * std::log(8e3))));
  CHECK_THROWS_AS(cm::amp_repetitions(1.0, 0.5, 1e-3), Error);
}

TEST_CASE("encoding costs") {
  const auto d = cm::emulated_encode_h_derivative(3, 1e-6);
  CHECK(d.depth == 3 * (2 * 20 + 3) + 3);
  CHECK(d.queries_per_term == 20);
  CHECK(cm::emulated_encode_h(1, 1e-6) == cm::emulated_encode_h_derivative(1, 1e-6));
  const auto h3 = cm::emulated_encode_h(3, 1e-6);
  const Count amp = cm::amp_repetitions(3.0, 0.5, 1e-6);
  CHECK(h3.depth == amp * d.depth + amp);
  CHECK(h3.queries_per_term == amp * 20);
}

TEST_CASE("costs are monotone in every parameter") {
  CHECK(cm::emulated_encode_h(3, 1e-6).depth > cm::emulated_encode_h(2, 1e-6).depth);
  CHECK(cm::emulated_encode_h(2, 1e-8).depth > cm::emulated_encode_h(2, 1e-4).depth);
  const auto rk = cm::emulated_rk(4, 2, 6, 1e-6);
  for (std::size_t n = 1; n < rk.size(); ++n) CHECK(rk[n].depth > rk[n - 1].depth);
  CHECK(cm::emulated_rk(4, 2, 3, 1e-6).back().depth > cm::emulated_rk(2, 2, 3, 1e-6).back().depth);
  CHECK(cm::emulated_rk(2, 2, 3, 1e-6).back().depth > cm::emulated_rk(1, 2, 3, 1e-6).back().depth);

  const TimeDependentHamiltonian h = build_hamiltonian(benchmark_config());
  Count previous = 0;
  for (int p = 1; p <= 4; ++p) {
    const TaylorPrediction t = predicted_cost_taylor(h, p, 1, 1e-6);
    CHECK(t.depth_units > previous);
    previous = t.depth_units;
  }
}

TEST_CASE("step gammas") {
  CHECK(cm::rk_step_gamma(4, 0) == doctest::Approx(8.0 / 2.5));
  CHECK(cm::rk_step_gamma(4, 3) == doctest::Approx(8.0));
  CHECK(cm::rk_step_gamma(1, 0) == doctest::Approx(0.8));
  CHECK(cm::taylor_step_gamma(3, 1.0) == doctest::Approx(4.0 / (1.0 + 1.0 / 16.0)));
  CHECK(cm::kTaylorDelta == doctest::Approx((1.0 / 16.0) / (2.0 * 17.0 / 16.0)));
}

TEST_CASE("Taylor table is linear") {
  const cm::TaylorShape shape{{{0}}, {{1}, {0, 0}}};
  const auto table = cm::emulated_taylor(shape, 2, 5, 1e-6, 1.0);
  for (std::size_t n = 0; n <= 5; ++n) CHECK(table[n].depth == table[1].depth * n);
  CHECK(table[0].depth == 0);
}

TEST_CASE("asymptotic closed forms") {
  CHECK(cm::asymptotic_t_max(2.0, 0.4, 1e-3) == doctest::Approx(0.8 + std::log2(1e3)));
  const double tm = cm::asymptotic_t_max(1.0, 0.4, 1e-6);
  CHECK(cm::asymptotic_encode_h_depth(2, tm, 1e-6) == doctest::Approx(4 * tm * std::log2(1e6)));
  // log10[(T_H s + s^3) s^N]
  const double th = cm::asymptotic_encode_h_depth(2, tm, 1e-6);
  CHECK(cm::asymptotic_rk_total_log10(4, 2, tm, 1e-6, 10) == doctest::Approx(std::log10(th * 4 + 64) + 10 * std::log10(4.0)));
  // Unrolled, the recursion grows by s^2 per step while the closed form grows
  // by s; both are reported as stated.
  const double r9 = std::log10(cm::asymptotic_rk_recursion(4, 2, tm, 1e-6, 9));
  const double r10 = std::log10(cm::asymptotic_rk_recursion(4, 2, tm, 1e-6, 10));
  CHECK(r10 - r9 == doctest::Approx(2 * std::log10(4.0)).epsilon(1e-6));
  CHECK(cm::asymptotic_rk_total_log10(4, 2, tm, 1e-6, 10) - cm::asymptotic_rk_total_log10(4, 2, tm, 1e-6, 9) ==
        doctest::Approx(std::log10(4.0)));
  const double l = std::log2(1e6);
  CHECK(cm::asymptotic_taylor_per_step(0.4, 3, 2, 1.0, 0.4, 1e-6) ==
        doctest::Approx(0.4 * 27 * 1.0 * 4 * (0.4 + l) * l));
  CHECK(cm::asymptotic_taylor_per_step(0.4, 4, 2, 1.0, 0.4, 1e-6) > cm::asymptotic_taylor_per_step(0.4, 3, 2, 1.0, 0.4, 1e-6));
}

TEST_CASE("closed-form evaluators are monotone over random parameter tuples") {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto eps_pair = [&] {
    const double a = std::pow(10.0, -1.0 - 9.0 * unit(rng));
    return std::pair{a, a * (0.1 + 0.8 * unit(rng))};  // loose, tight
  };
  for (int trial = 0; trial < 500; ++trial) {
    const auto [loose, tight] = eps_pair();
    const std::size_t m = 1 + rng() % 6;
    const std::size_t s = 1 + rng() % 4;
    const std::size_t n = rng() % 8;
    const std::size_t p = 1 + rng() % 5;
    const double tm = 1.0 + 40.0 * unit(rng);
    const double big_m = 0.1 + unit(rng);
    const double d = 1.0 + static_cast<double>(rng() % 8);
    const double hmax = 0.05 + 0.45 * unit(rng);
    const double gamma = 1.01 + 9.0 * unit(rng);
    const double delta = 0.05 + 0.45 * unit(rng);

    CHECK(cm::transform_queries(tight) >= cm::transform_queries(loose));
    CHECK(cm::amp_repetitions(gamma, delta, tight) >= cm::amp_repetitions(gamma, delta, loose));
    CHECK(cm::amp_repetitions(gamma + 0.5, delta, loose) >= cm::amp_repetitions(gamma, delta, loose));
    CHECK(cm::amp_repetitions(gamma, delta * 0.5, loose) >= cm::amp_repetitions(gamma, delta, loose));

    CHECK(cm::asymptotic_encode_h_depth(m, tm, tight) >= cm::asymptotic_encode_h_depth(m, tm, loose));
    CHECK(cm::asymptotic_encode_h_depth(m + 1, tm, loose) >= cm::asymptotic_encode_h_depth(m, tm, loose));
    CHECK(cm::asymptotic_encode_h_depth(m, tm + 1, loose) >= cm::asymptotic_encode_h_depth(m, tm, loose));

    const double rk = cm::asymptotic_rk_recursion(s, m, tm, loose, n);
    CHECK(cm::asymptotic_rk_recursion(s, m, tm, tight, n) >= rk);
    CHECK(cm::asymptotic_rk_recursion(s + 1, m, tm, loose, n) >= rk);
    CHECK(cm::asymptotic_rk_recursion(s, m + 1, tm, loose, n) >= rk);
    CHECK(cm::asymptotic_rk_recursion(s, m, tm + 1, loose, n) >= rk);
    CHECK(cm::asymptotic_rk_recursion(s, m, tm, loose, n + 1) >= rk);

    const double ty = cm::asymptotic_taylor_per_step(big_m, p, m, d, hmax, loose);
    CHECK(cm::asymptotic_taylor_per_step(big_m, p, m, d, hmax, tight) >= ty);
    CHECK(cm::asymptotic_taylor_per_step(big_m + 0.1, p, m, d, hmax, loose) >= ty);
    CHECK(cm::asymptotic_taylor_per_step(big_m, p + 1, m, d, hmax, loose) >= ty);
    CHECK(cm::asymptotic_taylor_per_step(big_m, p, m + 1, d, hmax, loose) >= ty);
    CHECK(cm::asymptotic_taylor_per_step(big_m, p, m, d + 1, hmax, loose) >= ty);
    CHECK(cm::asymptotic_taylor_per_step(big_m, p, m, d, hmax + 0.1, loose) >= ty);

    CHECK(cm::emulated_encode_h(m, tight).depth >= cm::emulated_encode_h(m, loose).depth);
  }
}

}
