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
#include <valfield/error.hpp>
#include <valfield/value.hpp>

#include <cctype>
#include <string>

namespace valfield {

const char* errc_name(Errc code) noexcept {
  switch (code) {
  case Errc::usage: return "usage";
  case Errc::parse: return "parse";
  case Errc::rank_mismatch: return "rank_mismatch";
  case Errc::empty_input: return "empty_input";
  case Errc::division_by_zero: return "division_by_zero";
  case Errc::descriptor_mismatch: return "descriptor_mismatch";
  case Errc::precision: return "precision";
  case Errc::hensel_condition: return "hensel_condition";
  case Errc::budget_exceeded: return "budget_exceeded";
  case Errc::precondition: return "precondition";
  case Errc::irreducibility: return "irreducibility";
  }
  return "unknown";
}

Value Value::rank1(mpq_class q) {
  q.canonicalize();
  return Value(Rank1{std::move(q)});
}

Value Value::rank1(long num, long den) {
  if (den == 0)
    throw Error(Errc::division_by_zero, "zero denominator in value");
  return rank1(mpq_class(num, den));
}

Value Value::rank2(mpq_class w, mpq_class wbar) {
  w.canonicalize();
  wbar.canonicalize();
  return Value(Rank2{std::move(w), std::move(wbar)});
}

const mpq_class& Value::q() const {
  if (auto* r = std::get_if<Rank1>(&rep_))
    return r->q;
  throw Error(Errc::rank_mismatch, "value " + to_string() + " is not rank 1");
}

const mpq_class& Value::w() const {
  if (auto* r = std::get_if<Rank2>(&rep_))
    return r->w;
  throw Error(Errc::rank_mismatch, "value " + to_string() + " is not rank 2");
}

const mpq_class& Value::wbar() const {
  if (auto* r = std::get_if<Rank2>(&rep_))
    return r->wbar;
  throw Error(Errc::rank_mismatch, "value " + to_string() + " is not rank 2");
}

static void require_same_rank(const Value& a, const Value& b) {
  if (a.is_infinite() || b.is_infinite())
    return;
  if (a.is_rank1() != b.is_rank1())
    throw Error(Errc::rank_mismatch,
                "cannot combine " + a.to_string() + " and " + b.to_string());
}

Value operator+(const Value& a, const Value& b) {
  require_same_rank(a, b);
  if (a.is_infinite() || b.is_infinite())
    return Value::infinity();
  if (a.is_rank1())
    return Value::rank1(a.q() + b.q());
  return Value::rank2(a.w() + b.w(), a.wbar() + b.wbar());
}

Value Value::operator-() const {
  if (is_infinite())
    throw Error(Errc::precondition, "infinity has no additive inverse");
  if (is_rank1())
    return rank1(-q());
  return rank2(-w(), -wbar());
}

Value operator*(long n, const Value& a) {
  if (a.is_infinite()) {
    if (n < 0)
      throw Error(Errc::precondition, "negative multiple of infinity");
    return n == 0 ? Value::rank1(0) : a;
  }
  if (a.is_rank1())
    return Value::rank1(a.q() * n);
  return Value::rank2(a.w() * n, a.wbar() * n);
}

bool operator==(const Value& a, const Value& b) {
  return (a <=> b) == std::strong_ordering::equal;
}

static std::strong_ordering cmp(const mpq_class& x, const mpq_class& y) {
  int c = ::cmp(x, y);
  if (c < 0)
    return std::strong_ordering::less;
  if (c > 0)
    return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  require_same_rank(a, b);
  if (a.is_infinite())
    return b.is_infinite() ? std::strong_ordering::equal
                           : std::strong_ordering::greater;
  if (b.is_infinite())
    return std::strong_ordering::less;
  if (a.is_rank1())
    return cmp(a.q(), b.q());
  auto first = cmp(a.w(), b.w());
  if (first != std::strong_ordering::equal)
    return first;
  return cmp(a.wbar(), b.wbar());
}

std::string rational_to_string(const mpq_class& q) {
  mpq_class c(q);
  c.canonicalize();
  return c.get_str();
}

mpq_class parse_rational(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch)))
      s.push_back(ch);
  if (s.empty())
    throw Error(Errc::parse, "empty rational");
  std::size_t pos = 0;
  if (s[pos] == '-' || s[pos] == '+')
    ++pos;
  bool seen_slash = false;
  bool digit_before = false, digit_after = false;
  for (; pos < s.size(); ++pos) {
    char ch = s[pos];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      (seen_slash ? digit_after : digit_before) = true;
    } else if (ch == '/' && !seen_slash) {
      seen_slash = true;
    } else {
      throw Error(Errc::parse, "bad rational '" + s + "' at position " +
                                   std::to_string(pos));
    }
  }
  if (!digit_before || (seen_slash && !digit_after))
    throw Error(Errc::parse, "bad rational '" + s + "'");
  if (s[0] == '+')
    s.erase(0, 1);
  mpq_class q(s, 10);
  if (q.get_den() == 0)
    throw Error(Errc::division_by_zero, "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

std::string Value::to_string() const {
  if (is_infinite())
    return "inf";
  if (is_rank1())
    return rational_to_string(q());
  return "(" + rational_to_string(w()) + "," + rational_to_string(wbar()) + ")";
}

Value Value::parse(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch)))
      s.push_back(ch);
  if (s == "inf")
    return infinity();
  if (!s.empty() && s.front() == '(') {
    if (s.back() != ')')
      throw Error(Errc::parse, "unterminated pair '" + s + "'");
    auto comma = s.find(',');
    if (comma == std::string::npos)
      throw Error(Errc::parse, "rank-2 value needs a comma: '" + s + "'");
    return rank2(parse_rational(std::string_view(s).substr(1, comma - 1)),
                 parse_rational(std::string_view(s).substr(
                     comma + 1, s.size() - comma - 2)));
  }
  return rank1(parse_rational(s));
}

Value value_add(const Value& a, const Value& b) { return a + b; }

Value value_min(std::span<const Value> values) {
  if (values.empty())
    throw Error(Errc::empty_input, "minimum of an empty list of values");
  const Value* best = &values[0];
  for (const auto& v : values.subspan(1))
    if (v < *best)
      best = &v;
  return *best;
}

ValueGroupDescriptor::ValueGroupDescriptor(int r, long d)
    : rank(r), denominator_bound(d) {
  if (r != 1 && r != 2)
    throw Error(Errc::precondition, "value group rank must be 1 or 2");
  if (d <= 0)
    throw Error(Errc::precondition, "denominator bound must be positive");
}

static bool divides_bound(const mpq_class& q, long d) {
  mpz_class r = mpz_class(d) % q.get_den();
  return r == 0;
}

bool ValueGroupDescriptor::contains(const Value& v) const {
  if (v.is_infinite())
    return true;
  if (v.is_rank1())
    return rank == 1 && divides_bound(v.q(), denominator_bound);
  return rank == 2 && divides_bound(v.w(), denominator_bound) &&
         divides_bound(v.wbar(), denominator_bound);
}

Value ValueGroupDescriptor::finest_grain() const {
  return Value::rank1(1, denominator_bound);
}

bool ValuationResult::certainly_greater(const ValuationResult& other) const {
  // this > other holds for sure when this's lower bound beats other's exact value.
  if (!other.exact_)
    return false;
  return value_ > other.value_;
}

std::string ValuationResult::to_string() const {
  return exact_ ? value_.to_string() : ">=" + value_.to_string();
}

std::size_t max_valuation_index(std::span<const ValuationResult> results) {
  if (results.empty())
    throw Error(Errc::empty_input, "maximum over an empty search");
  std::size_t best = 0;
  for (std::size_t i = 1; i < results.size(); ++i) {
    const auto& r = results[i];
    const auto& b = results[best];
    if (r.value() > b.value() ||
        (r.value() == b.value() && !r.is_exact() && b.is_exact()))
      best = i;
  }
  return best;
}

} // namespace valfield
