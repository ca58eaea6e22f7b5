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

// Coefficient functions gamma(t): a small closed expression language with
// exact evaluation and symbolic differentiation.
//
// Grammar (whitespace-insensitive):
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' integer)?
//   primary := number | 't' | ('sin' | 'cos' | 'exp') '(' expr ')' | '(' expr ')'

#include <memory>
#include <string>
#include <string_view>

namespace qtdsim {

class CoefficientExpr {
 public:
  enum class Kind { Constant, Variable, Sum, Difference, Product, Negation, Power, Sin, Cos, Exp };

  static CoefficientExpr constant(double value);
  static CoefficientExpr variable();
  static CoefficientExpr sum(CoefficientExpr a, CoefficientExpr b);
  static CoefficientExpr difference(CoefficientExpr a, CoefficientExpr b);
  static CoefficientExpr product(CoefficientExpr a, CoefficientExpr b);
  static CoefficientExpr negation(CoefficientExpr a);
  static CoefficientExpr power(CoefficientExpr base, int exponent);
  static CoefficientExpr sin(CoefficientExpr a);
  static CoefficientExpr cos(CoefficientExpr a);
  static CoefficientExpr exp(CoefficientExpr a);

  Kind kind() const;
  /// Constant value; only meaningful for Kind::Constant.
  double value() const;
  /// Integer exponent; only meaningful for Kind::Power.
  int exponent() const;
  /// First operand (unary nodes, left side of binary nodes).
  const CoefficientExpr& lhs() const;
  /// Right operand of binary nodes.
  const CoefficientExpr& rhs() const;

  double eval(double t) const;

  bool is_zero() const { return kind() == Kind::Constant && value() == 0.0; }

  /// Fully parenthesized rendering that parses back to the same tree.
  std::string to_string() const;

  /// Structural equality.
  friend bool operator==(const CoefficientExpr& a, const CoefficientExpr& b);

  std::size_t node_count() const;

 private:
  struct Node;
  explicit CoefficientExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

CoefficientExpr parse_coefficient(std::string_view text);

/// j-fold symbolic derivative in t, with constant folding.
CoefficientExpr differentiate(const CoefficientExpr& e, int order);

/// Max of |e(t)| over `gridpoints` uniform samples of [0, 1]. A grid
/// estimate, not a certified bound.
double bound_abs(const CoefficientExpr& e, int gridpoints);

}  // namespace qtdsim
