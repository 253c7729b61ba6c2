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

#include "critcoupling/expression.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "critcoupling/error.hpp"

namespace crit {

class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view src) : src_(src) {}

  Expression run() {
    Expression e;
    e.source_ = std::string(src_);
    program_ = &e.program_;
    parse_expr();
    skip_space();
    if (pos_ != src_.size()) fail("unexpected trailing input");
    e.max_depth_ = max_depth_;
    return e;
  }

 private:
  using Op = Expression::Op;

  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, pos_); }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  void emit(Op op, double value = 0.0) {
    program_->push_back({op, value});
    switch (op) {
      case Op::constant:
      case Op::variable:
        ++depth_;
        break;
      case Op::add:
      case Op::sub:
      case Op::mul:
      case Op::div:
      case Op::pow:
        --depth_;
        break;
      default:
        break;
    }
    if (depth_ > max_depth_) max_depth_ = depth_;
  }

  void parse_expr() {
    parse_term();
    for (;;) {
      if (accept('+')) {
        parse_term();
        emit(Op::add);
      } else if (accept('-')) {
        parse_term();
        emit(Op::sub);
      } else {
        return;
      }
    }
  }

  void parse_term() {
    parse_unary();
    for (;;) {
      if (accept('*')) {
        parse_unary();
        emit(Op::mul);
      } else if (accept('/')) {
        parse_unary();
        emit(Op::div);
      } else {
        return;
      }
    }
  }

  void parse_unary() {
    if (accept('-')) {
      parse_unary();
      emit(Op::neg);
    } else if (accept('+')) {
      parse_unary();
    } else {
      parse_power();
    }
  }

  void parse_power() {
    parse_primary();
    if (accept('^')) {
      parse_unary();
      emit(Op::pow);
    }
  }

  void parse_primary() {
    skip_space();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double value = 0.0;
      const char* first = src_.data() + pos_;
      const char* last = src_.data() + src_.size();
      const auto [ptr, ec] = std::from_chars(first, last, value);
      if (ec != std::errc() || !std::isfinite(value)) fail("malformed number");
      pos_ += static_cast<std::size_t>(ptr - first);
      emit(Op::constant, value);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      const std::string_view name = src_.substr(start, pos_ - start);
      if (name == "x") {
        emit(Op::variable);
        return;
      }
      Op fn;
      if (name == "exp") {
        fn = Op::exp;
      } else if (name == "ln") {
        fn = Op::ln;
      } else if (name == "sqrt") {
        fn = Op::sqrt;
      } else if (name == "cosh") {
        fn = Op::cosh;
      } else if (name == "sech") {
        fn = Op::sech;
      } else {
        pos_ = start;
        fail("unknown identifier '" + std::string(name) + "'");
      }
      expect('(');
      parse_expr();
      expect(')');
      emit(fn);
      return;
    }
    if (accept('(')) {
      parse_expr();
      expect(')');
      return;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::vector<Expression::Instr>* program_ = nullptr;
  int depth_ = 0;
  int max_depth_ = 0;
};

Expression Expression::parse(std::string_view source) { return ExpressionParser(source).run(); }

double Expression::operator()(double x) const {
  constexpr int kInline = 32;
  std::array<double, kInline> small{};
  std::vector<double> large;
  double* stack = small.data();
  if (max_depth_ > kInline) {
    large.resize(max_depth_);
    stack = large.data();
  }
  int top = -1;
  for (const Instr& ins : program_) {
    switch (ins.op) {
      case Op::constant:
        stack[++top] = ins.value;
        break;
      case Op::variable:
        stack[++top] = x;
        break;
      case Op::add:
        stack[top - 1] += stack[top];
        --top;
        break;
      case Op::sub:
        stack[top - 1] -= stack[top];
        --top;
        break;
      case Op::mul:
        stack[top - 1] *= stack[top];
        --top;
        break;
      case Op::div:
        stack[top - 1] /= stack[top];
        --top;
        break;
      case Op::pow:
        stack[top - 1] = std::pow(stack[top - 1], stack[top]);
        --top;
        break;
      case Op::neg:
        stack[top] = -stack[top];
        break;
      case Op::exp:
        stack[top] = std::exp(stack[top]);
        break;
      case Op::ln:
        stack[top] = std::log(stack[top]);
        break;
      case Op::sqrt:
        stack[top] = std::sqrt(stack[top]);
        break;
      case Op::cosh:
        stack[top] = std::cosh(stack[top]);
        break;
      case Op::sech:
        stack[top] = 1.0 / std::cosh(stack[top]);
        break;
    }
  }
  return stack[0];
}

}  // namespace crit
