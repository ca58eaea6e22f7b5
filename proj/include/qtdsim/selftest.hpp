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

// Built-in invariant checks across all modules, with a fixed seed.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qtdsim::selftest {

inline constexpr std::uint64_t kDefaultSeed = 20260101;

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Report {
  std::vector<CheckResult> checks;

  std::size_t failures() const;
  /// One "PASS name" / "FAIL name: detail" line per check and a summary.
  std::string format() const;
};

Report run(std::uint64_t seed = kDefaultSeed);

}  // namespace qtdsim::selftest
