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

#include "qtdsim/selftest.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "qtdsim/blockenc.hpp"
#include "qtdsim/coeffexpr.hpp"
#include "qtdsim/config.hpp"
#include "qtdsim/costmodel.hpp"
#include "qtdsim/hamiltonian.hpp"
#include "qtdsim/reference_oracle.hpp"
#include "qtdsim/rk_propagator.hpp"
#include "qtdsim/taylor_propagator.hpp"

namespace qtdsim::selftest {

namespace {

using Rng = std::mt19937_64;
namespace be = blockenc;

const Complex kI{0.0, 1.0};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Empty string on success, otherwise a diagnostic.
std::string expect_close(double got, double want, double tol, const char* what) {
  if (std::abs(got - want) <= tol) return {};
  return std::string(what) + ": got " + fmt(got) + ", want " + fmt(want);
}

ComplexMatrix random_matrix(Rng& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  ComplexMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = Complex(g(rng), g(rng));
  return m;
}

ComplexMatrix random_hermitian(Rng& rng, Eigen::Index n, double norm) {
  ComplexMatrix a = random_matrix(rng, n);
  ComplexMatrix h = (a + a.adjoint()) / 2.0;
  return h * (norm / numerics::spectral_norm(h));
}

ComplexMatrix truncated_exp(const ComplexMatrix& h, double dt, int p) {
  const auto n = h.rows();
  ComplexMatrix sum = ComplexMatrix::Identity(n, n);
  ComplexMatrix term = sum;
  for (int k = 1; k <= p; ++k) {
    term = term * (-kI * dt * h) / static_cast<double>(k);
    sum += term;
  }
  return sum;
}

TimeDependentHamiltonian benchmark() { return build_hamiltonian(benchmark_config()); }

TimeDependentHamiltonian constant_hamiltonian(const ComplexMatrix& m) {
  std::vector<std::pair<CoefficientExpr, HamiltonianTerm>> terms;
  terms.emplace_back(CoefficientExpr::constant(1.0), HamiltonianTerm::from_matrix(m));
  return TimeDependentHamiltonian(numerics::log2_dim(m.rows()), std::move(terms), 64);
}

// Random two-qubit encoding built from the algebra's operations.
BlockEncoding random_encoding(Rng& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, 5);
  std::uniform_real_distribution<double> u(0.2, 0.9);
  if (depth == 0) {
    switch (pick(rng) % 3) {
      case 0: return be::encode_from_log(random_hermitian(rng, 4, 0.5 * u(rng)), 1e-3, 0);
      case 1: {
        ComplexVector v = random_matrix(rng, 4).col(0).normalized();
        return be::encode_diagonal({v.data(), 4});
      }
      default:
        return be::tensor(be::encode_from_log(random_hermitian(rng, 2, 0.4), 1e-3, 1),
                          be::encode_from_log(random_hermitian(rng, 2, 0.3), 1e-3, 2));
    }
  }
  const BlockEncoding a = random_encoding(rng, depth - 1);
  switch (pick(rng)) {
    case 0: return be::multiply(a, random_encoding(rng, depth - 1));
    case 1: {
      const std::vector<BlockEncoding> parts{a, random_encoding(rng, depth - 1)};
      const std::vector<double> w{u(rng), -u(rng)};
      return be::linear_combine(parts, w);
    }
    case 2: return be::scale(a, -u(rng));
    case 3: return be::scale_down(a, 1.0 + u(rng));
    case 4: {
      const double room = 0.5 * a.alpha() / std::max(numerics::spectral_norm(a.target()), 1e-12);
      if (room > 1.05) return be::amplify(a, 1.0 + (room - 1.0) * u(rng), 0.5, 1e-3);
      return be::scale_down(a, 2.0);
    }
    default: return be::phase(a, std::polar(1.0, u(rng)));
  }
}

class Suite {
 public:
  void check(const std::string& name, const std::function<std::string()>& body) {
    CheckResult r{name, false, {}};
    try {
      r.detail = body();
      r.passed = r.detail.empty();
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    report_.checks.push_back(std::move(r));
  }
  Report take() { return std::move(report_); }

 private:
  Report report_;
};

void numerics_checks(Suite& s, Rng& rng) {
  s.check("numerics.spectral_norm.diagonal", [] {
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = 3.0;
    d(1, 1) = Complex(0.0, -4.0);
    return expect_close(numerics::spectral_norm(d), 4.0, 1e-14, "norm");
  });
  s.check("numerics.spectral_norm.power_iteration", [&] {
    const ComplexMatrix a = random_matrix(rng, 8);
    const ComplexMatrix g = a.adjoint() * a;
    ComplexVector v = ComplexVector::Ones(8);
    for (int k = 0; k < 2000; ++k) v = (g * v).normalized();
    const double lambda = std::sqrt((v.adjoint() * g * v)(0).real());
    return expect_close(numerics::spectral_norm(a), lambda, 1e-9 * lambda, "norm");
  });
  s.check("numerics.hermitian_exp.unitary", [&] {
    const ComplexMatrix u = numerics::hermitian_exp(random_hermitian(rng, 4, 2.0), 0.7);
    return expect_close(numerics::unitarity_defect(u), 0.0, 1e-13, "unitarity defect");
  });
  s.check("numerics.unitary_log.round_trip", [&] {
    const ComplexMatrix h = random_hermitian(rng, 4, 0.45);
    const ComplexMatrix back = numerics::unitary_log(numerics::hermitian_exp(h, 1.0));
    return expect_close(numerics::spectral_norm(back - h), 0.0, 1e-10, "recovered H");
  });
  s.check("numerics.unitary_log.branch_cut", [] {
    ComplexMatrix u = -ComplexMatrix::Identity(2, 2);
    try {
      numerics::unitary_log(u);
    } catch (const Error& e) {
      return e.kind() == ErrorKind::BranchAmbiguity ? std::string() : std::string("wrong kind");
    }
    return std::string("phase pi was accepted");
  });
  s.check("numerics.psd_sqrt.squares_back", [&] {
    const ComplexMatrix a = random_matrix(rng, 4);
    const ComplexMatrix p = a * a.adjoint();
    const ComplexMatrix r = numerics::psd_sqrt(p);
    return expect_close(numerics::spectral_norm(r * r - p), 0.0, 1e-10 * numerics::spectral_norm(p), "sqrt^2");
  });
  s.check("numerics.dilation.unitary_with_block", [&] {
    ComplexMatrix b = random_matrix(rng, 4);
    b /= 1.1 * numerics::spectral_norm(b);
    const ComplexMatrix w = numerics::unitary_dilation(b, 1e-9);
    std::string e = expect_close(numerics::unitarity_defect(w), 0.0, 1e-12, "unitarity");
    if (e.empty()) e = expect_close(numerics::spectral_norm(w.topLeftCorner(4, 4) - b), 0.0, 1e-15, "block");
    return e;
  });
  s.check("numerics.kron.layout", [] {
    const ComplexMatrix m = pauli_matrix("XZ");
    // X (x) Z: row 0 = (0, 0, 1, 0), row 2 = (1, 0, 0, 0).
    if (m(0, 2) != Complex(1.0) || m(2, 0) != Complex(1.0) || m(1, 3) != Complex(-1.0)) return std::string("entries");
    return std::string();
  });
}

void blockenc_checks(Suite& s, Rng& rng) {
  s.check("blockenc.encode_from_log.alpha_ancillas_queries", [&] {
    const BlockEncoding e = be::encode_from_log(random_hermitian(rng, 4, 0.3), 1e-6, 3);
    if (e.ancillas() != 2) return std::string("ancillas");
    if (e.cost().queries_for(3) != 20) return std::string("queries != ceil(log2 1e6) = 20");
    return expect_close(e.alpha(), 2.0 / std::numbers::pi, 1e-15, "alpha");
  });
  s.check("blockenc.encode_from_log.rejects_norm", [&] {
    try {
      be::encode_from_log(random_hermitian(rng, 4, 0.6), 1e-3, 0);
    } catch (const Error& e) {
      return e.kind() == ErrorKind::NormAssumptionViolated ? std::string() : std::string("wrong kind");
    }
    return std::string("norm 0.6 accepted");
  });
  s.check("blockenc.encode_diagonal.ancillas", [] {
    const std::vector<Complex> amps(8, Complex(1.0 / std::sqrt(8.0)));
    const BlockEncoding e = be::encode_diagonal(amps);
    return e.ancillas() == 6 && e.cost().depth_units == 3 ? std::string() : std::string("n + 3 ancillas, n depth");
  });
  s.check("blockenc.tensor.alpha_and_target", [&] {
    const BlockEncoding a = be::encode_from_log(random_hermitian(rng, 2, 0.4), 1e-3, 0);
    const BlockEncoding b = be::encode_from_log(random_hermitian(rng, 2, 0.2), 1e-3, 1);
    const BlockEncoding t = be::tensor(a, b);
    std::string e = expect_close(t.alpha(), a.alpha() * b.alpha(), 1e-15, "alpha");
    if (e.empty()) e = expect_close(numerics::spectral_norm(t.target() - numerics::kron(a.target(), b.target())), 0.0, 0.0, "target");
    return e;
  });
  s.check("blockenc.linear_combine.alpha_rule", [&] {
    const BlockEncoding a = be::encode_from_log(random_hermitian(rng, 4, 0.4), 1e-3, 0);
    const BlockEncoding b = be::scale_down(be::encode_from_log(random_hermitian(rng, 4, 0.4), 1e-3, 1), 3.0);
    const std::vector<BlockEncoding> parts{a, b};
    const std::vector<double> w{0.5, -0.25};
    const BlockEncoding c = be::linear_combine(parts, w);
    return expect_close(c.alpha(), 0.75 * b.alpha(), 1e-15, "alpha = sum|w| * max alpha");
  });
  s.check("blockenc.multiply.alpha_and_cost", [&] {
    const BlockEncoding a = be::encode_from_log(random_hermitian(rng, 4, 0.4), 1e-3, 0);
    const BlockEncoding b = be::encode_from_log(random_hermitian(rng, 4, 0.4), 1e-3, 1);
    const BlockEncoding m = be::multiply(a, b);
    if (m.cost().depth_units != a.cost().depth_units + b.cost().depth_units) return std::string("cost");
    return expect_close(m.alpha(), a.alpha() * b.alpha(), 1e-15, "alpha");
  });
  s.check("blockenc.scale_down.alpha_and_err", [&] {
    const BlockEncoding a = be::encode_from_log(random_hermitian(rng, 4, 0.4), 1e-3, 0);
    const BlockEncoding d = be::scale_down(a, 2.5);
    std::string e = expect_close(d.alpha(), 2.5 * a.alpha(), 1e-15, "alpha");
    if (e.empty()) e = expect_close(d.err(), 2.5 * a.err(), 1e-18, "err");
    return e;
  });
  s.check("blockenc.amplify.alpha_and_repetitions", [&] {
    const BlockEncoding a = be::scale_down(be::encode_from_log(random_hermitian(rng, 4, 0.2), 1e-3, 0), 4.0);
    const BlockEncoding b = be::amplify(a, 3.0, 0.5, 1e-3);
    const Count reps = costmodel::amp_repetitions(3.0, 0.5, 1e-3);
    if (b.cost().depth_units != reps * a.cost().depth_units + reps) return std::string("cost");
    return expect_close(b.alpha(), a.alpha() / 3.0, 1e-15, "alpha");
  });
  s.check("blockenc.amplify.headroom", [&] {
    const BlockEncoding a = be::encode_from_log(random_hermitian(rng, 4, 0.45), 1e-3, 0);
    try {
      be::amplify(a, 2.0, 0.5, 1e-3);
    } catch (const Error& e) {
      return e.kind() == ErrorKind::AmplificationHeadroom ? std::string() : std::string("wrong kind");
    }
    return std::string("headroom violation accepted");
  });
  s.check("blockenc.materialize.round_trip", [&] {
    for (int trial = 0; trial < 20; ++trial) {
      const BlockEncoding e = random_encoding(rng, 3);
      const ComplexMatrix w = be::materialize(e);
      const double dev = numerics::spectral_norm(w.topLeftCorner(e.dim(), e.dim()) - e.block());
      if (dev > 1e-10) return "trial " + std::to_string(trial) + ": block deviation " + fmt(dev);
      if (numerics::unitarity_defect(w) > 1e-10) return "trial " + std::to_string(trial) + ": not unitary";
    }
    return std::string();
  });
  s.check("blockenc.linear_combine.err_rule", [&] {
    const BlockEncoding a = be::encode_from_log(random_hermitian(rng, 4, 0.4), 1e-3, 0);
    const BlockEncoding b = be::scale_down(a, 2.0);
    const std::vector<BlockEncoding> parts{a, b};
    const std::vector<double> w{1.0, 1.0};
    const BlockEncoding c = be::linear_combine(parts, w);
    // a is brought to alpha(b) = 2 alpha(a): its err doubles.
    return expect_close(c.err(), 2.0 * a.err() + b.err(), 1e-18, "err");
  });
}

void coeffexpr_checks(Suite& s, Rng& rng) {
  s.check("coeffexpr.parse_eval", [] {
    return expect_close(parse_coefficient("sin(t)*cos(t)").eval(0.3), std::sin(0.3) * std::cos(0.3), 1e-16, "value");
  });
  s.check("coeffexpr.parse_error_offset", [] {
    try {
      parse_coefficient("0.5 * (t + ");
    } catch (const ParseError& e) {
      return e.offset() == 11 ? std::string() : "offset " + std::to_string(e.offset());
    }
    return std::string("accepted");
  });
  s.check("coeffexpr.unknown_identifier", [] {
    try {
      parse_coefficient("tan(t)");
    } catch (const ParseError& e) {
      return e.offset() == 0 ? std::string() : std::string("offset");
    }
    return std::string("accepted");
  });
  s.check("coeffexpr.derivative_vs_finite_difference", [&] {
    const char* exprs[] = {"t*t*0.3", "sin(2*t)*exp(-t)", "cos(t^3 - 0.5)", "(0.2 + t)^4 * sin(t)"};
    std::uniform_real_distribution<double> ut(0.1, 0.9);
    for (const char* text : exprs) {
      const CoefficientExpr e = parse_coefficient(text);
      const double t = ut(rng);
      const double h = 1e-3;
      const double fd1 = (e.eval(t + h) - e.eval(t - h)) / (2 * h);
      const double fd2 = (e.eval(t + h) - 2 * e.eval(t) + e.eval(t - h)) / (h * h);
      const double d1 = differentiate(e, 1).eval(t);
      const double d2 = differentiate(e, 2).eval(t);
      if (std::abs(d1 - fd1) > 1e-4 * std::max(1.0, std::abs(d1))) return std::string(text) + ": first derivative";
      if (std::abs(d2 - fd2) > 1e-4 * std::max(1.0, std::abs(d2))) return std::string(text) + ": second derivative";
    }
    return std::string();
  });
  s.check("coeffexpr.print_parse_round_trip", [] {
    for (const char* text : {"0.5*sin(t) + 0.5", "-t^2 - -3 * cos(exp(t))", "((t))*0.1e1 - 2"}) {
      const CoefficientExpr e = parse_coefficient(text);
      if (!(parse_coefficient(e.to_string()) == e)) return std::string(text);
    }
    return std::string();
  });
  s.check("coeffexpr.bound_abs", [] {
    return expect_close(bound_abs(parse_coefficient("sin(t)"), 4096), std::sin(1.0), 1e-15, "bound");
  });
}

void hamiltonian_checks(Suite& s) {
  const TimeDependentHamiltonian h = benchmark();
  s.check("hamiltonian.evaluate.t0", [&] {
    return expect_close(numerics::spectral_norm(evaluate(h, 0.0) - 0.4 * pauli_matrix("XI")), 0.0, 0.0, "H(0)");
  });
  s.check("hamiltonian.evaluate.norm", [&] {
    return expect_close(numerics::spectral_norm(evaluate(h, 0.5)), 0.4, 1e-14, "||H(0.5)||");
  });
  s.check("hamiltonian.derivative.finite_difference", [&] {
    const double step = 1e-3;
    const ComplexMatrix fd = (evaluate(h, 0.3 + step) - 2.0 * evaluate(h, 0.3) + evaluate(h, 0.3 - step)) / (step * step);
    return expect_close(numerics::spectral_norm(derivative(h, 0.3, 2) - fd), 0.0, 1e-6, "d2H");
  });
  s.check("hamiltonian.block_encode_H.target_grid", [&] {
    for (int k = 0; k < 16; ++k) {
      const double t = k / 15.0;
      const BlockEncoding e = block_encode_H(h, t, 1e-6);
      if (e.alpha() != 1.0) return std::string("alpha != 1");
      const double dev = numerics::spectral_norm(e.target() - evaluate(h, t));
      if (dev > 1e-10) return "deviation " + fmt(dev) + " at t = " + fmt(t);
    }
    return std::string();
  });
  s.check("hamiltonian.block_encode_H.cost", [&] {
    const BlockEncoding e = block_encode_H(h, 0.5, 1e-6);
    const Count amp = costmodel::amp_repetitions(2.0, 0.5, 1e-6);
    if (e.cost().queries_total() != 2 * amp * 20) return std::string("queries != 2 * amp * 20");
    return std::string();
  });
  s.check("hamiltonian.block_encode_H_derivative", [&] {
    const BlockEncoding e = block_encode_H_derivative(h, 0.0, 1, 1e-6);
    std::string r = expect_close(numerics::spectral_norm(e.target() - 0.4 * pauli_matrix("ZZ")), 0.0, 1e-10, "target");
    if (r.empty()) r = expect_close(e.alpha(), 2.0 * h.coefficient_bound(1), 1e-15, "alpha");
    return r;
  });
  s.check("hamiltonian.constant.derivative_vanishes", [] {
    const TimeDependentHamiltonian c = constant_hamiltonian(0.4 * pauli_matrix("Z"));
    const BlockEncoding e = block_encode_H_derivative(c, 0.3, 1, 1e-6);
    if (!c.derivative_vanishes(1) || e.target().norm() != 0.0 || e.alpha() != 1.0) return std::string("zero encoding");
    return derivative_bounds(c, 3, 64).per_order[3] == 0.0 ? std::string() : std::string("M_3 != 0");
  });
  s.check("hamiltonian.assumption.gamma", [] {
    RunConfig cfg = benchmark_config();
    cfg.terms[0].coeff = "1.5*cos(t)";
    try {
      build_hamiltonian(cfg);
    } catch (const Error& e) {
      const std::string what = e.what();
      return what.find("|γ_i(t)| ≤ 1") != std::string::npos ? std::string() : "message: " + what;
    }
    return std::string("accepted");
  });
  s.check("hamiltonian.assumption.norm", [] {
    RunConfig cfg = benchmark_config();
    cfg.terms[1].paulis[0].weight = 0.6;
    try {
      build_hamiltonian(cfg);
    } catch (const Error& e) {
      const std::string what = e.what();
      return what.find("norm at most 1/2") != std::string::npos ? std::string() : "message: " + what;
    }
    return std::string("accepted");
  });
}

void rk_checks(Suite& s, Rng& rng) {
  s.check("rk.tableaux.valid", [] {
    for (const auto& t : {ButcherTableau::euler(), ButcherTableau::midpoint(), ButcherTableau::rk4()}) t.validate();
    return std::string();
  });
  const ComplexMatrix hc = random_hermitian(rng, 4, 0.4);
  const TimeDependentHamiltonian constant = constant_hamiltonian(hc);
  s.check("rk.euler.one_step", [&] {
    const PropagatorState st = rk_step(init_state(0.1, 4), ButcherTableau::euler(), constant, 1e-6);
    return expect_close(numerics::spectral_norm(st.encoding.target() - truncated_exp(hc, 0.1, 1)), 0.0, 1e-14, "target");
  });
  s.check("rk.rk4.truncated_exponential", [&] {
    const PropagatorState st = rk_step(init_state(0.1, 4), ButcherTableau::rk4(), constant, 1e-6);
    return expect_close(numerics::spectral_norm(st.encoding.target() - truncated_exp(hc, 0.1, 4)), 0.0, 1e-12, "target");
  });
  s.check("rk.stage_alphas", [&] {
    const auto stages = rk_stages(init_state(0.1, 4), ButcherTableau::rk4(), constant, 1e-6);
    for (std::size_t j = 0; j < stages.size(); ++j) {
      if (stages[j].alpha() != static_cast<double>(j + 1)) return "stage " + std::to_string(j + 1) + " alpha " + fmt(stages[j].alpha());
    }
    return std::string();
  });
  s.check("rk.cost_matches_prediction", [] {
    const TimeDependentHamiltonian h = benchmark();
    for (std::size_t n : {1, 2, 3}) {
      const Propagation p = propagate(h, ButcherTableau::rk4(), n, 0.25, 1e-6);
      const RkPrediction pred = predicted_cost(ButcherTableau::rk4(), 2, n, 1e-6, 1.0);
      if (p.cost().depth_units != pred.depth_units || p.cost().queries_for(0) != pred.queries_per_term) {
        return "N = " + std::to_string(n);
      }
    }
    return std::string();
  });
  s.check("rk.steps_for_accuracy", [] {
    if (steps_for_accuracy(1.0, 1e-4, 4) != 10) return std::string("(1, 1e-4, 4)");
    if (steps_for_accuracy(1.0, 1e-2, 1) != 100) return std::string("(1, 1e-2, 1)");
    if (steps_for_accuracy(0.5, 1e-6, 2) != 500) return std::string("(0.5, 1e-6, 2)");
    return std::string();
  });
}

void taylor_checks(Suite& s, Rng& rng) {
  s.check("taylor.f3_words", [] {
    const DerivativePolynomial f = derivative_polynomial(3);
    // Canonical order: [0,0,0], [0,1], [1,0], [2].
    if (f.words.size() != 4) return std::string("word count");
    const std::vector<std::pair<std::vector<int>, Complex>> want{
        {{0, 0, 0}, kI}, {{0, 1}, -1.0}, {{1, 0}, -2.0}, {{2}, -kI}};
    for (std::size_t k = 0; k < 4; ++k) {
      if (f.words[k].symbols != want[k].first || std::abs(f.words[k].coefficient - want[k].second) > 1e-15) {
        return "word " + std::to_string(k);
      }
    }
    return std::string();
  });
  s.check("taylor.weight_conservation", [] {
    for (int j = 1; j <= 5; ++j) {
      for (const auto& w : derivative_polynomial(j).words) {
        int weight = 0;
        for (int r : w.symbols) weight += r + 1;
        if (weight != j) return "order " + std::to_string(j);
      }
    }
    return std::string();
  });
  const ComplexMatrix hc = random_hermitian(rng, 4, 0.4);
  const TimeDependentHamiltonian constant = constant_hamiltonian(hc);
  s.check("taylor.constant_powers", [&] {
    ComplexMatrix power = ComplexMatrix::Identity(4, 4);
    for (int j = 1; j <= 5; ++j) {
      power = power * (-kI * hc);
      const double dev = numerics::spectral_norm(evaluate_polynomial(derivative_polynomial(j), constant, 0.5) - power);
      if (dev > 1e-14) return "order " + std::to_string(j);
    }
    return std::string();
  });
  s.check("taylor.p1_equals_euler", [] {
    const TimeDependentHamiltonian h = benchmark();
    const Propagation a = propagate_taylor(h, 1, 4, 1.0, 1e-6);
    const Propagation b = propagate(h, ButcherTableau::euler(), 4, 1.0, 1e-6);
    return expect_close(numerics::spectral_norm(a.final_state().encoding.target() - b.final_state().encoding.target()), 0.0, 1e-14, "targets");
  });
  s.check("taylor.constant_step_truncated_exponential", [&] {
    for (int p = 1; p <= 3; ++p) {
      const PropagatorState st = taylor_step(init_state(0.1, 4), constant, TaylorPlan::make(constant, p), 1e-6);
      if (numerics::spectral_norm(st.encoding.target() - truncated_exp(hc, 0.1, p)) > 1e-12) return "p = " + std::to_string(p);
    }
    return std::string();
  });
  s.check("taylor.polynomial_alpha", [] {
    const TimeDependentHamiltonian h = benchmark();
    for (int j = 1; j <= 3; ++j) {
      const DerivativePolynomial f = derivative_polynomial(j);
      const BlockEncoding e = encode_polynomial(f, h, 0.4, 1e-6);
      if (e.alpha() != polynomial_alpha(f, h)) return "order " + std::to_string(j);
      if (numerics::spectral_norm(e.target() - evaluate_polynomial(f, h, 0.4)) > 1e-10) return "target " + std::to_string(j);
    }
    return std::string();
  });
  s.check("taylor.cost_linear_and_predicted", [] {
    const TimeDependentHamiltonian h = benchmark();
    Count first;
    for (std::size_t n : {1, 2, 4}) {
      const Propagation p = propagate_taylor(h, 2, n, 1.0, 1e-6);
      const TaylorPrediction pred = predicted_cost_taylor(h, 2, n, 1e-6);
      if (p.cost().depth_units != pred.depth_units) return "prediction at N = " + std::to_string(n);
      if (n == 1) first = p.cost().depth_units;
      if (p.cost().depth_units != first * n) return "not linear at N = " + std::to_string(n);
    }
    return std::string();
  });
}

void reference_checks(Suite& s, Rng& rng) {
  const TimeDependentHamiltonian h = benchmark();
  s.check("reference.constant_closed_form", [&] {
    const ComplexMatrix hc = random_hermitian(rng, 4, 0.4);
    const ComplexMatrix u = exact_propagator(constant_hamiltonian(hc), 1.0);
    return expect_close(numerics::spectral_norm(u - numerics::hermitian_exp(hc, 1.0)), 0.0, 1e-12, "propagator");
  });
  s.check("reference.unitary", [&] {
    return expect_close(numerics::unitarity_defect(exact_propagator(h, 1.0)), 0.0, 1e-10, "defect");
  });
  s.check("reference.composition", [&] {
    const ComplexMatrix a = exact_propagator(h, 0.4);
    const ComplexMatrix b = interval_propagator(h, 0.4, 1.0);
    return expect_close(numerics::spectral_norm(b * a - exact_propagator(h, 1.0)), 0.0, 2e-12, "U(1,0.4) U(0.4,0)");
  });
  s.check("reference.derivative_polynomials", [&] {
    const ComplexMatrix u = exact_propagator(h, 0.5);
    for (int j = 1; j <= 3; ++j) {
      const ComplexMatrix fu = evaluate_polynomial(derivative_polynomial(j), h, 0.5) * u;
      const double coarse = numerics::spectral_norm(fu - finite_diff_derivative(h, 0.5, j, 0.02));
      const double fine = numerics::spectral_norm(fu - finite_diff_derivative(h, 0.5, j, 0.01));
      if (!(std::log2(coarse / fine) >= 1.8)) return "order " + std::to_string(j) + ": ratio " + fmt(coarse / fine);
    }
    return std::string();
  });
  s.check("reference.fit_synthetic", [] {
    std::vector<ConvergencePoint> pts;
    for (double dt : {0.1, 0.05, 0.025, 0.0125}) pts.push_back({dt, dt * dt});
    return expect_close(fit_convergence_order(pts).fitted_order, 2.0, 1e-9, "order");
  });
  s.check("reference.rk4_order", [&] {
    const ComplexMatrix u = exact_propagator(h, 1.0);
    std::vector<ConvergencePoint> pts;
    for (std::size_t n : {8, 16, 32}) {
      const Propagation p = propagate(h, ButcherTableau::rk4(), n, 1.0, 1e-6);
      pts.push_back({1.0 / static_cast<double>(n), global_error(p.final_state().encoding.target(), u)});
    }
    return expect_close(fit_convergence_order(pts).fitted_order, 4.0, 0.4, "fitted order");
  });
}

void costmodel_checks(Suite& s, Rng& rng) {
  s.check("costmodel.monotone", [&] {
    std::uniform_real_distribution<double> ue(1e-8, 0.4);
    std::uniform_real_distribution<double> ug(1.1, 20.0);
    std::uniform_real_distribution<double> ud(0.01, 0.5);
    for (int k = 0; k < 200; ++k) {
      const double e1 = ue(rng);
      const double e2 = e1 * 0.5;
      const double g1 = ug(rng);
      const double d1 = ud(rng);
      if (costmodel::transform_queries(e2) < costmodel::transform_queries(e1)) return std::string("transform queries in eps");
      if (costmodel::amp_repetitions(g1, d1, e2) < costmodel::amp_repetitions(g1, d1, e1)) return std::string("amp in eps");
      if (costmodel::amp_repetitions(g1 + 1.0, d1, e1) < costmodel::amp_repetitions(g1, d1, e1)) return std::string("amp in gamma");
      if (costmodel::amp_repetitions(g1, d1 * 0.5, e1) < costmodel::amp_repetitions(g1, d1, e1)) return std::string("amp in delta");
    }
    return std::string();
  });
  s.check("costmodel.rk_geometric", [] {
    const auto table = costmodel::emulated_rk(4, 2, 6, 1e-6);
    const double r1 = std::pow(10.0, log10_count(table[5].depth) - log10_count(table[4].depth));
    const double r2 = std::pow(10.0, log10_count(table[6].depth) - log10_count(table[5].depth));
    return std::abs(r1 - r2) < 1e-3 * r1 && r1 > 100 ? std::string() : "ratios " + fmt(r1) + ", " + fmt(r2);
  });
}

}  // namespace

std::size_t Report::failures() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.passed ? 0 : 1;
  return n;
}

std::string Report::format() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.passed) out << ": " << c.detail;
    out << "\n";
  }
  out << "selftest: " << checks.size() << " checks, " << failures() << " failed\n";
  return out.str();
}

Report run(std::uint64_t seed) {
  Rng rng(seed);
  Suite s;
  numerics_checks(s, rng);
  blockenc_checks(s, rng);
  coeffexpr_checks(s, rng);
  hamiltonian_checks(s);
  rk_checks(s, rng);
  taylor_checks(s, rng);
  reference_checks(s, rng);
  costmodel_checks(s, rng);
  return s.take();
}

}  // namespace qtdsim::selftest
