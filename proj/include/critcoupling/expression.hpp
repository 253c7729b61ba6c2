// Copyright 2026 The critcoupling Authors.
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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace crit {

/// A compiled arithmetic expression in the single variable `x`.
///
/// Grammar (see docs/expression_grammar.md):
///   expr    = term { ("+" | "-") term } ;
///   term    = unary { ("*" | "/") unary } ;
///   unary   = ("-" | "+") unary | power ;
///   power   = primary [ "^" unary ] ;
///   primary = number | "x" | func "(" expr ")" | "(" expr ")" ;
///   func    = "exp" | "ln" | "sqrt" | "cosh" | "sech" ;
///
/// Parsing throws SyntaxError carrying the byte offset of the offending token.
class Expression {
 public:
  static Expression parse(std::string_view source);

  double operator()(double x) const;
  const std::string& source() const noexcept { return source_; }

 private:
  enum class Op : std::uint8_t { constant, variable, add, sub, mul, div, pow, neg, exp, ln, sqrt, cosh, sech };
  struct Instr {
    Op op;
    double value;
  };

  friend class ExpressionParser;

  std::string source_;
  std::vector<Instr> program_;  // postfix
  int max_depth_ = 0;
};

}  // namespace crit
