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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace qtdsim {

/// Exact resource counter. Costs compose multiplicatively under amplification,
/// so counts routinely exceed 64 bits.
using Count = boost::multiprecision::cpp_int;

/// Resource bookkeeping attached to every block encoding.
struct CostRecord {
  /// Uses of controlled-exp(-i H_i) (and its inverse), keyed by term index.
  std::map<std::size_t, Count> queries;
  Count depth_units = 0;
  std::uint64_t ancilla_high_water = 0;

  CostRecord& operator+=(const CostRecord& other) {
    for (const auto& [term, n] : other.queries) queries[term] += n;
    depth_units += other.depth_units;
    ancilla_high_water = std::max(ancilla_high_water, other.ancilla_high_water);
    return *this;
  }

  friend CostRecord operator+(CostRecord a, const CostRecord& b) { return a += b; }

  /// Cost of `k` sequential repetitions.
  CostRecord repeated(const Count& k) const {
    CostRecord out = *this;
    for (auto& [term, n] : out.queries) n *= k;
    out.depth_units *= k;
    return out;
  }

  Count queries_total() const {
    Count total = 0;
    for (const auto& [term, n] : queries) total += n;
    return total;
  }

  Count queries_for(std::size_t term) const {
    auto it = queries.find(term);
    return it == queries.end() ? Count(0) : it->second;
  }

  bool operator==(const CostRecord& other) const {
    // Zero entries are equivalent to absent ones.
    auto trimmed = [](const std::map<std::size_t, Count>& q) {
      std::map<std::size_t, Count> out;
      for (const auto& [k, v] : q)
        if (v != 0) out.emplace(k, v);
      return out;
    };
    return trimmed(queries) == trimmed(other.queries) && depth_units == other.depth_units &&
           ancilla_high_water == other.ancilla_high_water;
  }
};

inline std::string to_decimal(const Count& c) { return c.str(); }

/// log10 of a positive count without overflowing double; -inf for zero.
inline double log10_count(const Count& c) {
  if (c <= 0) return -std::numeric_limits<double>::infinity();
  const auto bits = boost::multiprecision::msb(c);
  if (bits < 60) return std::log10(c.convert_to<double>());
  const auto shift = static_cast<unsigned>(bits - 52);
  const Count top = c >> shift;
  return std::log10(top.convert_to<double>()) + shift * std::log10(2.0);
}

}  // namespace qtdsim
