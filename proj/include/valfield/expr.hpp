/* Copyright (C) 2026 The valfield Authors
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License. See accompanying LICENSE file.
 */
#ifndef VALFIELD_EXPR_HPP
#define VALFIELD_EXPR_HPP

#include <valfield/error.hpp>

#include <cctype>
#include <cstdlib>
#include <string>
#include <string_view>

namespace valfield {

/// Recursive-descent parser for polynomial expressions with + - * / ^,
/// parentheses, integer literals, bracketed field elements `[c0,c1]`,
/// and identifiers. The Builder supplies the ring:
///   Value integer(long), element(std::string_view), symbol(std::string_view),
///   add, sub, mul, div, neg, pow(Value, long).
/// symbol() receives identifiers such as `t`, `X`, `X2`, `Y`.
template <class Builder>
class ExprParser {
public:
  using V = typename Builder::Value;

  ExprParser(Builder& b, std::string_view text) : b_(b), s_(text) {}

  V parse() {
    V v = expr();
    skip();
    if (pos_ != s_.size())
      fail("unexpected character");
    return v;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(Errc::parse, msg + " at position " + std::to_string(pos_) +
                                 " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  V expr() {
    skip();
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    V acc = term();
    if (neg)
      acc = b_.neg(acc);
    while (true) {
      if (eat('+'))
        acc = b_.add(acc, term());
      else if (eat('-'))
        acc = b_.sub(acc, term());
      else
        return acc;
    }
  }

  V term() {
    V acc = factor();
    while (true) {
      if (eat('*'))
        acc = b_.mul(acc, factor());
      else if (eat('/'))
        acc = b_.div(acc, factor());
      else
        return acc;
    }
  }

  V factor() {
    V base = primary();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+'))
        ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
        ++pos_;
      std::string digits(s_.substr(start, pos_ - start));
      if (digits.empty() || digits == "-" || digits == "+")
        fail("expected integer exponent");
      base = b_.pow(base, std::strtol(digits.c_str(), nullptr, 10));
    }
    return base;
  }

  V primary() {
    skip();
    if (pos_ >= s_.size())
      fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      V v = expr();
      if (!eat(')'))
        fail("expected ')'");
      return v;
    }
    if (c == '[') {
      auto close = s_.find(']', pos_);
      if (close == std::string_view::npos)
        fail("unterminated element");
      auto text = s_.substr(pos_, close - pos_ + 1);
      pos_ = close + 1;
      return b_.element(text);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
        ++pos_;
      return b_.integer(std::strtol(std::string(s_.substr(start, pos_ - start)).c_str(),
                                    nullptr, 10));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_])))
        ++pos_;
      auto name = s_.substr(start, pos_ - start);
      try {
        return b_.symbol(name);
      } catch (const Error& e) {
        pos_ = start;
        fail(e.what());
      }
    }
    fail("unexpected character");
  }

  Builder& b_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

/// Index of a polynomial variable name: X, Y, Z are 1, 2, 3; Xk is k.
/// Returns 0 when the name is not a variable.
inline int variable_index(std::string_view name) {
  if (name == "X")
    return 1;
  if (name == "Y")
    return 2;
  if (name == "Z")
    return 3;
  if (name.size() >= 2 && name[0] == 'X') {
    int k = 0;
    for (char c : name.substr(1)) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        return 0;
      k = k * 10 + (c - '0');
    }
    return k;
  }
  return 0;
}

} // namespace valfield

#endif
