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

#include "qtdsim/coeffexpr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <vector>

#include "qtdsim/errors.hpp"

namespace qtdsim {

struct CoefficientExpr::Node {
  Kind kind;
  double value = 0.0;
  int exponent = 0;
  std::vector<CoefficientExpr> kids;
};

namespace {

using Kind = CoefficientExpr::Kind;

}  // namespace

CoefficientExpr CoefficientExpr::constant(double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorKind::ContractViolation, "coefficient constant must be finite");
  }
  return CoefficientExpr(std::make_shared<const Node>(Node{Kind::Constant, value, 0, {}}));
}

CoefficientExpr CoefficientExpr::variable() {
  return CoefficientExpr(std::make_shared<const Node>(Node{Kind::Variable, 0.0, 0, {}}));
}

CoefficientExpr CoefficientExpr::sum(CoefficientExpr a, CoefficientExpr b) {
  return CoefficientExpr(
      std::make_shared<const Node>(Node{Kind::Sum, 0.0, 0, {std::move(a), std::move(b)}}));
}

CoefficientExpr CoefficientExpr::difference(CoefficientExpr a, CoefficientExpr b) {
  return CoefficientExpr(
      std::make_shared<const Node>(Node{Kind::Difference, 0.0, 0, {std::move(a), std::move(b)}}));
}

CoefficientExpr CoefficientExpr::product(CoefficientExpr a, CoefficientExpr b) {
  return CoefficientExpr(
      std::make_shared<const Node>(Node{Kind::Product, 0.0, 0, {std::move(a), std::move(b)}}));
}

CoefficientExpr CoefficientExpr::negation(CoefficientExpr a) {
  return CoefficientExpr(std::make_shared<const Node>(Node{Kind::Negation, 0.0, 0, {std::move(a)}}));
}

CoefficientExpr CoefficientExpr::power(CoefficientExpr base, int exponent) {
  if (exponent < 0) {
    throw Error(ErrorKind::ContractViolation, "coefficient power must be a nonnegative integer");
  }
  return CoefficientExpr(
      std::make_shared<const Node>(Node{Kind::Power, 0.0, exponent, {std::move(base)}}));
}

CoefficientExpr CoefficientExpr::sin(CoefficientExpr a) {
  return CoefficientExpr(std::make_shared<const Node>(Node{Kind::Sin, 0.0, 0, {std::move(a)}}));
}

CoefficientExpr CoefficientExpr::cos(CoefficientExpr a) {
  return CoefficientExpr(std::make_shared<const Node>(Node{Kind::Cos, 0.0, 0, {std::move(a)}}));
}

CoefficientExpr CoefficientExpr::exp(CoefficientExpr a) {
  return CoefficientExpr(std::make_shared<const Node>(Node{Kind::Exp, 0.0, 0, {std::move(a)}}));
}

CoefficientExpr::Kind CoefficientExpr::kind() const { return node_->kind; }
double CoefficientExpr::value() const { return node_->value; }
int CoefficientExpr::exponent() const { return node_->exponent; }
const CoefficientExpr& CoefficientExpr::lhs() const { return node_->kids.at(0); }
const CoefficientExpr& CoefficientExpr::rhs() const { return node_->kids.at(1); }

double CoefficientExpr::eval(double t) const {
  switch (kind()) {
    case Kind::Constant: return value();
    case Kind::Variable: return t;
    case Kind::Sum: return lhs().eval(t) + rhs().eval(t);
    case Kind::Difference: return lhs().eval(t) - rhs().eval(t);
    case Kind::Product: return lhs().eval(t) * rhs().eval(t);
    case Kind::Negation: return -lhs().eval(t);
    case Kind::Power: {
      const double base = lhs().eval(t);
      double out = 1.0;
      for (int k = 0; k < exponent(); ++k) out *= base;
      return out;
    }
    case Kind::Sin: return std::sin(lhs().eval(t));
    case Kind::Cos: return std::cos(lhs().eval(t));
    case Kind::Exp: return std::exp(lhs().eval(t));
  }
  return 0.0;
}

bool operator==(const CoefficientExpr& a, const CoefficientExpr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Kind::Constant: return a.value() == b.value();
    case Kind::Variable: return true;
    case Kind::Power: return a.exponent() == b.exponent() && a.lhs() == b.lhs();
    default: break;
  }
  const auto& ka = a.node_->kids;
  const auto& kb = b.node_->kids;
  return ka.size() == kb.size() && std::equal(ka.begin(), ka.end(), kb.begin());
}

std::size_t CoefficientExpr::node_count() const {
  std::size_t n = 1;
  for (const auto& k : node_->kids) n += k.node_count();
  return n;
}

namespace {

std::string format_number(double v) {
  char buf[64];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

}  // namespace

std::string CoefficientExpr::to_string() const {
  switch (kind()) {
    case Kind::Constant:
      return std::signbit(value()) ? "(-" + format_number(-value()) + ")" : format_number(value());
    case Kind::Variable: return "t";
    case Kind::Sum: return "(" + lhs().to_string() + " + " + rhs().to_string() + ")";
    case Kind::Difference: return "(" + lhs().to_string() + " - " + rhs().to_string() + ")";
    case Kind::Product: return "(" + lhs().to_string() + " * " + rhs().to_string() + ")";
    case Kind::Negation: return "(-" + lhs().to_string() + ")";
    case Kind::Power: return "(" + lhs().to_string() + "^" + std::to_string(exponent()) + ")";
    case Kind::Sin: return "sin(" + lhs().to_string() + ")";
    case Kind::Cos: return "cos(" + lhs().to_string() + ")";
    case Kind::Exp: return "exp(" + lhs().to_string() + ")";
  }
  return {};
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  CoefficientExpr parse() {
    skip_ws();
    if (pos_ == text_.size()) throw ParseError(pos_, "empty expression");
    CoefficientExpr e = expr();
    skip_ws();
    if (pos_ != text_.size()) {
      throw ParseError(pos_, std::string("unexpected '") + text_[pos_] + "'");
    }
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      throw ParseError(pos_, std::string("expected '") + c + "'");
    }
  }

  CoefficientExpr expr() {
    CoefficientExpr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = CoefficientExpr::sum(std::move(lhs), term());
      } else if (accept('-')) {
        lhs = CoefficientExpr::difference(std::move(lhs), term());
      } else {
        return lhs;
      }
    }
  }

  CoefficientExpr term() {
    CoefficientExpr lhs = unary();
    while (accept('*')) lhs = CoefficientExpr::product(std::move(lhs), unary());
    return lhs;
  }

  CoefficientExpr unary() {
    if (accept('-')) return CoefficientExpr::negation(unary());
    return power();
  }

  CoefficientExpr power() {
    CoefficientExpr base = primary();
    if (!accept('^')) return base;
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError(pos_, "expected a nonnegative integer exponent");
    int exponent = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, exponent);
    if (ec != std::errc{} || exponent > 64) throw ParseError(start, "exponent out of range");
    (void)ptr;
    return CoefficientExpr::power(std::move(base), exponent);
  }

  CoefficientExpr primary() {
    skip_ws();
    if (pos_ == text_.size()) throw ParseError(pos_, "unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      CoefficientExpr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    throw ParseError(pos_, std::string("unexpected '") + c + "'");
  }

  CoefficientExpr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t mantissa = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) throw ParseError(start, "malformed number");
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) throw ParseError(pos_, "malformed exponent");
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (ec != std::errc{} || ptr != text_.data() + pos_ || !std::isfinite(v)) {
      throw ParseError(start, "number out of range");
    }
    return CoefficientExpr::constant(v);
  }

  CoefficientExpr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "t") return CoefficientExpr::variable();
    if (name == "sin" || name == "cos" || name == "exp") {
      expect('(');
      CoefficientExpr arg = expr();
      expect(')');
      if (name == "sin") return CoefficientExpr::sin(std::move(arg));
      if (name == "cos") return CoefficientExpr::cos(std::move(arg));
      return CoefficientExpr::exp(std::move(arg));
    }
    throw ParseError(start, "unknown identifier '" + std::string(name) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Folding constructors used by the differentiator.

CoefficientExpr add(const CoefficientExpr& a, const CoefficientExpr& b) {
  if (a.kind() == Kind::Constant && b.kind() == Kind::Constant) {
    return CoefficientExpr::constant(a.value() + b.value());
  }
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return CoefficientExpr::sum(a, b);
}

CoefficientExpr neg(const CoefficientExpr& a) {
  if (a.kind() == Kind::Constant) return CoefficientExpr::constant(a.value() == 0.0 ? 0.0 : -a.value());
  if (a.kind() == Kind::Negation) return a.lhs();
  return CoefficientExpr::negation(a);
}

CoefficientExpr sub(const CoefficientExpr& a, const CoefficientExpr& b) {
  if (a.kind() == Kind::Constant && b.kind() == Kind::Constant) {
    return CoefficientExpr::constant(a.value() - b.value());
  }
  if (b.is_zero()) return a;
  if (a.is_zero()) return neg(b);
  return CoefficientExpr::difference(a, b);
}

CoefficientExpr mul(const CoefficientExpr& a, const CoefficientExpr& b) {
  if (a.is_zero() || b.is_zero()) return CoefficientExpr::constant(0.0);
  if (a.kind() == Kind::Constant && b.kind() == Kind::Constant) {
    return CoefficientExpr::constant(a.value() * b.value());
  }
  if (a.kind() == Kind::Constant && a.value() == 1.0) return b;
  if (b.kind() == Kind::Constant && b.value() == 1.0) return a;
  return CoefficientExpr::product(a, b);
}

CoefficientExpr pw(const CoefficientExpr& a, int n) {
  if (n == 0) return CoefficientExpr::constant(1.0);
  if (n == 1) return a;
  if (a.kind() == Kind::Constant) return CoefficientExpr::constant(CoefficientExpr::power(a, n).eval(0.0));
  return CoefficientExpr::power(a, n);
}

CoefficientExpr derive(const CoefficientExpr& e) {
  switch (e.kind()) {
    case Kind::Constant: return CoefficientExpr::constant(0.0);
    case Kind::Variable: return CoefficientExpr::constant(1.0);
    case Kind::Sum: return add(derive(e.lhs()), derive(e.rhs()));
    case Kind::Difference: return sub(derive(e.lhs()), derive(e.rhs()));
    case Kind::Product:
      return add(mul(derive(e.lhs()), e.rhs()), mul(e.lhs(), derive(e.rhs())));
    case Kind::Negation: return neg(derive(e.lhs()));
    case Kind::Power: {
      const int n = e.exponent();
      if (n == 0) return CoefficientExpr::constant(0.0);
      return mul(mul(CoefficientExpr::constant(n), pw(e.lhs(), n - 1)), derive(e.lhs()));
    }
    case Kind::Sin: return mul(CoefficientExpr::cos(e.lhs()), derive(e.lhs()));
    case Kind::Cos: return neg(mul(CoefficientExpr::sin(e.lhs()), derive(e.lhs())));
    case Kind::Exp: return mul(CoefficientExpr::exp(e.lhs()), derive(e.lhs()));
  }
  return CoefficientExpr::constant(0.0);
}

}  // namespace

CoefficientExpr parse_coefficient(std::string_view text) { return Parser(text).parse(); }

CoefficientExpr differentiate(const CoefficientExpr& e, int order) {
  if (order < 1) throw Error(ErrorKind::ContractViolation, "differentiate: order must be >= 1");
  CoefficientExpr out = e;
  for (int k = 0; k < order; ++k) out = derive(out);
  return out;
}

double bound_abs(const CoefficientExpr& e, int gridpoints) {
  if (gridpoints < 2) throw Error(ErrorKind::ContractViolation, "bound_abs: need at least 2 grid points");
  double best = 0.0;
  for (int k = 0; k < gridpoints; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(gridpoints - 1);
    best = std::max(best, std::abs(e.eval(t)));
  }
  return best;
}

}  // namespace qtdsim
