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

// The qtdsim subcommands as library functions returning their output text.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "qtdsim/config.hpp"
#include "qtdsim/errors.hpp"
#include "qtdsim/rk_propagator.hpp"

namespace qtdsim::cli {

enum ExitCode : int {
  kOk = 0,
  kSelftestFailed = 1,
  kConfigError = 2,
  kInvariantViolation = 3,
  kNumericalFailure = 4,
};

ExitCode exit_code(ErrorKind kind);

/// Runs the configured method for `steps` steps.
Propagation run_method(const RunConfig& config, const TimeDependentHamiltonian& h,
                       std::size_t steps, bool keep_states = false);

/// JSON document: final target, alpha, err, cost, optional reference error.
std::string simulate(const RunConfig& config, bool reference, bool timing);

/// CSV `steps,dt,error,alpha,depth_units,queries_total` plus a final
/// `# fitted_order=` line. Runs up to `jobs` step counts concurrently;
/// output is independent of `jobs`.
std::string converge(const RunConfig& config, const std::vector<std::size_t>& steps,
                     unsigned jobs);

/// JSON report of measured against predicted cost.
std::string resources(const RunConfig& config);

/// "8,16,32" -> {8, 16, 32}.
std::vector<std::size_t> parse_steps_list(std::string_view text);

}  // namespace qtdsim::cli
