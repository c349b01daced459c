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
#ifndef VALFIELD_VALUE_HPP
#define VALFIELD_VALUE_HPP

#include <gmpxx.h>

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <variant>

namespace valfield {

/// Element of a rank-1 (subgroup of Q) or rank-2 (lexicographic Q x Q) value
/// group, or the top element infinity. Rank is never coerced: combining a
/// rank-1 and a rank-2 value throws Errc::rank_mismatch.
class Value {
public:
  struct Rank1 {
    mpq_class q;
  };
  struct Rank2 {
    mpq_class w;
    mpq_class wbar;
  };
  struct Infinity {};

  Value() : rep_(Rank1{0}) {}
  static Value rank1(mpq_class q);
  static Value rank1(long num, long den = 1);
  static Value rank2(mpq_class w, mpq_class wbar);
  static Value infinity() { return Value(Infinity{}); }

  bool is_infinite() const noexcept {
    return std::holds_alternative<Infinity>(rep_);
  }
  bool is_rank1() const noexcept { return std::holds_alternative<Rank1>(rep_); }
  bool is_rank2() const noexcept { return std::holds_alternative<Rank2>(rep_); }

  /// Rank-1 payload; throws if the value is not rank 1.
  const mpq_class& q() const;
  const mpq_class& w() const;
  const mpq_class& wbar() const;

  friend Value operator+(const Value& a, const Value& b);
  /// Group inverse; infinity has none.
  Value operator-() const;
  friend Value operator-(const Value& a, const Value& b) { return a + (-b); }
  /// Integer multiple n*a (n >= 0 when a is infinite).
  friend Value operator*(long n, const Value& a);

  friend bool operator==(const Value& a, const Value& b);
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);

  std::string to_string() const;
  static Value parse(std::string_view text);

private:
  explicit Value(std::variant<Rank1, Rank2, Infinity> rep)
      : rep_(std::move(rep)) {}
  std::variant<Rank1, Rank2, Infinity> rep_;
};

Value value_add(const Value& a, const Value& b);

/// Least element of a nonempty, rank-uniform list.
Value value_min(std::span<const Value> values);

/// Finite-denominator stand-in for a divisible value group: (1/d)Z for rank 1,
/// or lexicographic pairs of such for rank 2.
struct ValueGroupDescriptor {
  int rank = 1;
  long denominator_bound = 1;

  ValueGroupDescriptor() = default;
  ValueGroupDescriptor(int rank, long denominator_bound);

  bool contains(const Value& v) const;
  /// Smallest positive element of the rank-1 group, 1/d.
  Value finest_grain() const;
};

/// Finite-precision shadow of a valuation: either the exact value or a lower
/// bound when the element is zero to the available precision.
class ValuationResult {
public:
  static ValuationResult exact(Value v) { return {true, std::move(v)}; }
  static ValuationResult at_least(Value v) { return {false, std::move(v)}; }

  bool is_exact() const noexcept { return exact_; }
  const Value& value() const noexcept { return value_; }

  /// Conservative comparison: true only when this is certainly larger.
  bool certainly_greater(const ValuationResult& other) const;

  friend bool operator==(const ValuationResult&, const ValuationResult&) = default;
  std::string to_string() const;

private:
  ValuationResult(bool exact, Value v) : exact_(exact), value_(std::move(v)) {}
  bool exact_;
  Value value_;
};

/// Maximum of a list of valuation results, following the truncated-search
/// convention: an AtLeast(k) that exceeds every exact value dominates.
/// Returns the index of the winner.
std::size_t max_valuation_index(std::span<const ValuationResult> results);

std::string rational_to_string(const mpq_class& q);
mpq_class parse_rational(std::string_view text);

} // namespace valfield

#endif
