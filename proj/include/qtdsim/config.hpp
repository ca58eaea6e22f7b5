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

// Run configuration: a single JSON document, unknown fields rejected.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qtdsim/hamiltonian.hpp"
#include "qtdsim/rk_propagator.hpp"

namespace qtdsim {

struct TermConfig {
  std::string coeff;
  std::vector<PauliWeight> paulis;
  std::optional<ComplexMatrix> matrix;  ///< dense escape hatch instead of paulis
};

struct MethodConfig {
  enum class Kind { Rk, Taylor };
  Kind kind = Kind::Rk;
  ButcherTableau tableau;  ///< Kind::Rk
  int taylor_order = 0;    ///< Kind::Taylor

  /// Global order p used by the step-count rule.
  int order() const { return kind == Kind::Rk ? tableau.order : taylor_order; }
  std::string label() const;
};

struct RunConfig {
  int qubits = 0;
  std::vector<TermConfig> terms;
  double t_final = 1.0;
  MethodConfig method;
  std::optional<std::size_t> steps;  ///< empty for "auto"
  double epsilon = 1e-6;
  int grid_points = 4096;
  std::uint64_t seed = 0;

  std::size_t resolved_steps() const;
};

RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::filesystem::path& path);

/// Builds and validates H(t); assumption violations surface here.
TimeDependentHamiltonian build_hamiltonian(const RunConfig& config);

/// cos(t) 0.4 XI + sin(t) 0.4 ZZ on [0, 1], RK4, 16 steps.
RunConfig benchmark_config();

}  // namespace qtdsim
