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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qtdsim {

enum class ErrorKind {
  ContractViolation,
  NumericalFailure,
  NormAssumptionViolated,
  AmplificationHeadroom,
  SubnormalizationViolated,
  BranchAmbiguity,
  DegenerateDerivative,
  Parse,
  Config,
  OracleFailure,
  StencilOutOfRange,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& what)
      : Error(ErrorKind::Parse,
              what + " at byte offset " + std::to_string(offset)),
        offset_(offset),
        detail_(what) {}

  std::size_t offset() const noexcept { return offset_; }
  /// The message without the offset suffix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t offset_;
  std::string detail_;
};

inline const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ContractViolation: return "contract-violation";
    case ErrorKind::NumericalFailure: return "numerical-failure";
    case ErrorKind::NormAssumptionViolated: return "norm-assumption-violated";
    case ErrorKind::AmplificationHeadroom: return "amplification-headroom";
    case ErrorKind::SubnormalizationViolated: return "subnormalization-violated";
    case ErrorKind::BranchAmbiguity: return "branch-ambiguity";
    case ErrorKind::DegenerateDerivative: return "degenerate-derivative";
    case ErrorKind::Parse: return "parse-error";
    case ErrorKind::Config: return "config-error";
    case ErrorKind::OracleFailure: return "oracle-failure";
    case ErrorKind::StencilOutOfRange: return "stencil-out-of-range";
  }
  return "unknown";
}

}  // namespace qtdsim
