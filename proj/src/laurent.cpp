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
#include <valfield/laurent.hpp>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>

namespace valfield {

long add_precision(long a, long b) noexcept {
  if (a >= LaurentSeries::kExact || b >= LaurentSeries::kExact)
    return LaurentSeries::kExact;
  long s = a + b;
  return s >= LaurentSeries::kExact ? LaurentSeries::kExact : s;
}

static void require_same(const LaurentSeries& a, const LaurentSeries& b) {
  if (!a.field()->same_as(*b.field()))
    throw Error(Errc::descriptor_mismatch,
                "series over " + a.field()->to_string() + " and " +
                    b.field()->to_string());
}

LaurentSeries::LaurentSeries(FieldRef field) : field_(std::move(field)) {}

LaurentSeries::LaurentSeries(FieldRef field, long low, std::vector<Elt> coeffs,
                             long precision)
    : field_(std::move(field)), low_(low), coeffs_(std::move(coeffs)),
      prec_(std::min(precision, kExact)) {
  normalize();
}

LaurentSeries LaurentSeries::zero(FieldRef field, long precision) {
  return LaurentSeries(std::move(field), 0, {}, precision);
}

LaurentSeries LaurentSeries::constant(FieldRef field, Elt c) {
  return LaurentSeries(std::move(field), 0, {c});
}

LaurentSeries LaurentSeries::monomial(FieldRef field, Elt c, long exponent) {
  return LaurentSeries(std::move(field), exponent, {c});
}

void LaurentSeries::normalize() {
  if (!is_exact() && end() > prec_) {
    long keep = prec_ - low_;
    coeffs_.resize(keep > 0 ? static_cast<std::size_t>(keep) : 0);
  }
  while (!coeffs_.empty() && coeffs_.back() == 0)
    coeffs_.pop_back();
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead] == 0)
    ++lead;
  if (lead) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
    low_ += static_cast<long>(lead);
  }
  if (coeffs_.empty())
    low_ = 0;
}

Elt LaurentSeries::coeff(long e) const {
  if (e >= prec_)
    throw Error(Errc::precision, "coefficient of t^" + std::to_string(e) +
                                     " is beyond the error order " +
                                     std::to_string(prec_));
  if (e < low_ || e >= end())
    return 0;
  return coeffs_[static_cast<std::size_t>(e - low_)];
}

ValuationResult LaurentSeries::valuation() const {
  if (!coeffs_.empty())
    return ValuationResult::exact(Value::rank1(low_));
  if (is_exact())
    return ValuationResult::exact(Value::infinity());
  return ValuationResult::at_least(Value::rank1(prec_));
}

long LaurentSeries::valuation_lower_bound() const noexcept {
  return coeffs_.empty() ? prec_ : low_;
}

LaurentSeries LaurentSeries::truncate(long precision) const {
  LaurentSeries r = *this;
  r.prec_ = std::min(prec_, precision);
  r.normalize();
  return r;
}

LaurentSeries LaurentSeries::operator-() const {
  LaurentSeries r = *this;
  for (auto& c : r.coeffs_)
    c = field_->neg(c);
  return r;
}

LaurentSeries LaurentSeries::scale(Elt c) const {
  if (c == 0)
    return zero(field_);
  LaurentSeries r = *this;
  for (auto& x : r.coeffs_)
    x = field_->mul(x, c);
  return r;
}

LaurentSeries LaurentSeries::shift(long k) const {
  LaurentSeries r = *this;
  r.low_ += coeffs_.empty() ? 0 : k;
  if (!is_exact())
    r.prec_ += k;
  return r;
}

LaurentSeries LaurentSeries::frobenius(int k) const {
  long factor = 1;
  for (int i = 0; i < k; ++i)
    factor *= field_->p();
  if (coeffs_.empty()) {
    if (is_exact())
      return *this;
    return zero(field_, prec_ * factor);
  }
  std::vector<Elt> out(static_cast<std::size_t>((coeffs_.size() - 1) * factor + 1), 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    out[i * static_cast<std::size_t>(factor)] =
        field_->pow(coeffs_[i], static_cast<std::uint64_t>(factor));
  return LaurentSeries(field_, low_ * factor, std::move(out),
                       is_exact() ? kExact : prec_ * factor);
}

LaurentSeries LaurentSeries::pow(unsigned long n) const {
  LaurentSeries result = constant(field_, 1);
  LaurentSeries base = *this;
  while (n) {
    if (n & 1)
      result = result * base;
    n >>= 1;
    if (n)
      base = base * base;
  }
  return result;
}

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
  require_same(a, b);
  long prec = std::min(a.prec_, b.prec_);
  if (a.coeffs_.empty())
    return b.truncate(prec);
  if (b.coeffs_.empty())
    return a.truncate(prec);
  long low = std::min(a.low_, b.low_);
  long end = std::max(a.end(), b.end());
  if (prec < LaurentSeries::kExact)
    end = std::min(end, prec);
  if (end <= low)
    return LaurentSeries::zero(a.field_, prec);
  std::vector<Elt> out(static_cast<std::size_t>(end - low), 0);
  const auto& f = *a.field_;
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    long e = a.low_ + static_cast<long>(i);
    if (e < end)
      out[static_cast<std::size_t>(e - low)] = a.coeffs_[i];
  }
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) {
    long e = b.low_ + static_cast<long>(i);
    if (e < end) {
      auto& slot = out[static_cast<std::size_t>(e - low)];
      slot = f.add(slot, b.coeffs_[i]);
    }
  }
  return LaurentSeries(a.field_, low, std::move(out), prec);
}

LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) {
  return a + (-b);
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  require_same(a, b);
  if (a.is_exact_zero() || b.is_exact_zero())
    return LaurentSeries::zero(a.field_);
  long va = a.valuation_lower_bound();
  long vb = b.valuation_lower_bound();
  long prec = std::min(add_precision(a.prec_, vb), add_precision(b.prec_, va));
  if (a.coeffs_.empty() || b.coeffs_.empty())
    return LaurentSeries::zero(a.field_, prec);
  long low = a.low_ + b.low_;
  long end = a.end() + b.end() - 1;
  if (prec < LaurentSeries::kExact)
    end = std::min(end, prec);
  if (end <= low)
    return LaurentSeries::zero(a.field_, prec);
  std::size_t len = static_cast<std::size_t>(end - low);
  std::vector<Elt> out(len, 0);
  const auto& f = *a.field_;
  for (std::size_t i = 0; i < a.coeffs_.size() && i < len; ++i) {
    Elt ai = a.coeffs_[i];
    if (ai == 0)
      continue;
    std::size_t jmax = std::min(b.coeffs_.size(), len - i);
    for (std::size_t j = 0; j < jmax; ++j)
      if (b.coeffs_[j])
        out[i + j] = f.add(out[i + j], f.mul(ai, b.coeffs_[j]));
  }
  return LaurentSeries(a.field_, low, std::move(out), prec);
}

LaurentSeries LaurentSeries::divide(const LaurentSeries& b, long cap) const {
  require_same(*this, b);
  if (b.coeffs_.empty())
    throw Error(Errc::division_by_zero,
                "divisor has indeterminate valuation: " + b.to_string());
  long vb = b.low_;
  long va = valuation_lower_bound();
  long prec = std::min(prec_ >= kExact ? kExact : prec_ - vb,
                       b.is_exact() ? kExact : va + b.prec_ - 2 * vb);
  if (is_exact_zero())
    return zero(field_);
  prec = std::min(prec, cap);
  bool monomial = b.coeffs_.size() == 1;
  if (prec >= kExact && !monomial)
    throw Error(Errc::precision,
                "exact quotient by a non-monomial series needs a precision cap");
  if (coeffs_.empty())
    return zero(field_, prec);
  const auto& f = *field_;
  Elt lead_inv = f.inv(b.coeffs_[0]);
  if (monomial && prec >= kExact) {
    LaurentSeries r = scale(lead_inv).shift(-vb);
    r.prec_ = kExact;
    return r;
  }
  // Long division: quotient coefficients from t^(low - vb) up to prec.
  long qlow = low_ - vb;
  if (prec <= qlow)
    return zero(field_, prec);
  std::size_t len = static_cast<std::size_t>(prec - qlow);
  std::vector<Elt> rem(len, 0);
  for (std::size_t i = 0; i < coeffs_.size() && i < len; ++i)
    rem[i] = coeffs_[i];
  std::vector<Elt> quot(len, 0);
  for (std::size_t i = 0; i < len; ++i) {
    if (rem[i] == 0)
      continue;
    Elt c = f.mul(rem[i], lead_inv);
    quot[i] = c;
    for (std::size_t j = 0; j < b.coeffs_.size() && i + j < len; ++j)
      rem[i + j] = f.sub(rem[i + j], f.mul(c, b.coeffs_[j]));
  }
  return LaurentSeries(field_, qlow, std::move(quot), prec);
}

LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b) {
  return a.divide(b, LaurentSeries::kExact);
}

bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
  return a.field_->same_as(*b.field_) && a.prec_ == b.prec_ &&
         a.coeffs_ == b.coeffs_ && (a.coeffs_.empty() || a.low_ == b.low_);
}

LaurentSeries series_arith(const LaurentSeries& a, const LaurentSeries& b,
                           SeriesOp op) {
  switch (op) {
  case SeriesOp::add: return a + b;
  case SeriesOp::sub: return a - b;
  case SeriesOp::mul: return a * b;
  case SeriesOp::div: return a / b;
  }
  throw Error(Errc::usage, "unknown series operation");
}

std::string LaurentSeries::to_string(std::string_view var) const {
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    Elt c = coeffs_[i];
    if (c == 0)
      continue;
    if (!out.empty())
      out += " + ";
    if (c != 1)
      out += field_->format(c) + "*";
    out += std::string(var) + "^" + std::to_string(low_ + static_cast<long>(i));
  }
  if (!is_exact()) {
    if (!out.empty())
      out += " + ";
    out += "O(" + std::string(var) + "^" + std::to_string(prec_) + ")";
  }
  return out.empty() ? "0" : out;
}

namespace {

struct SeriesParser {
  const FieldRef& field;
  std::string_view var;
  std::string s;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(Errc::parse, msg + " at position " + std::to_string(pos) +
                                 " in '" + s + "'");
  }
  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }
  bool at_var() const { return s.compare(pos, var.size(), var) == 0; }
  long integer() {
    skip();
    std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+'))
      ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (start == pos || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
      fail("expected integer");
    return std::strtol(s.c_str() + start, nullptr, 10);
  }
  long exponent() {
    // after the variable name
    skip();
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      return integer();
    }
    return 1;
  }
};

} // namespace

LaurentSeries LaurentSeries::parse(const FieldRef& field, std::string_view text,
                                   std::string_view var) {
  SeriesParser ps{field, var, std::string(text)};
  std::map<long, Elt> terms;
  long prec = kExact;
  bool first = true;
  const auto& f = *field;
  while (true) {
    ps.skip();
    if (ps.pos >= ps.s.size()) {
      if (first)
        ps.fail("empty series");
      break;
    }
    bool negate = false;
    if (ps.s[ps.pos] == '+' || ps.s[ps.pos] == '-') {
      negate = ps.s[ps.pos] == '-';
      ++ps.pos;
      ps.skip();
    } else if (!first) {
      ps.fail("expected '+' or '-'");
    }
    first = false;
    if (ps.s.compare(ps.pos, 2, "O(") == 0) {
      ps.pos += 2;
      ps.skip();
      if (!ps.at_var())
        ps.fail("expected variable in O()");
      ps.pos += var.size();
      prec = ps.exponent();
      ps.skip();
      if (ps.pos >= ps.s.size() || ps.s[ps.pos] != ')')
        ps.fail("expected ')'");
      ++ps.pos;
      continue;
    }
    Elt c = 1;
    bool have_coeff = false;
    if (ps.pos < ps.s.size() && ps.s[ps.pos] == '[') {
      auto close = ps.s.find(']', ps.pos);
      if (close == std::string::npos)
        ps.fail("unterminated coefficient");
      c = f.parse_element(std::string_view(ps.s).substr(ps.pos, close - ps.pos + 1));
      ps.pos = close + 1;
      have_coeff = true;
    } else if (ps.pos < ps.s.size() &&
               std::isdigit(static_cast<unsigned char>(ps.s[ps.pos]))) {
      c = f.from_int(ps.integer());
      have_coeff = true;
    }
    long e = 0;
    ps.skip();
    if (have_coeff && ps.pos < ps.s.size() && ps.s[ps.pos] == '*') {
      ++ps.pos;
      ps.skip();
      if (!ps.at_var())
        ps.fail("expected variable after '*'");
    }
    if (ps.at_var()) {
      ps.pos += var.size();
      e = ps.exponent();
    } else if (!have_coeff) {
      ps.fail("expected term");
    }
    if (negate)
      c = f.neg(c);
    auto& slot = terms[e];
    slot = f.add(slot, c);
  }
  if (terms.empty())
    return zero(field, prec);
  long low = terms.begin()->first;
  long high = terms.rbegin()->first;
  std::vector<Elt> coeffs(static_cast<std::size_t>(high - low + 1), 0);
  for (auto [e, c] : terms)
    coeffs[static_cast<std::size_t>(e - low)] = c;
  return LaurentSeries(field, low, std::move(coeffs), prec);
}

LaurentSeries eval_series_poly(std::span<const LaurentSeries> f,
                               const LaurentSeries& x) {
  if (f.empty())
    return LaurentSeries::zero(x.field());
  LaurentSeries acc = f.back();
  for (std::size_t i = f.size() - 1; i-- > 0;)
    acc = acc * x + f[i];
  return acc;
}

SeriesPoly derivative(std::span<const LaurentSeries> f) {
  SeriesPoly out;
  for (std::size_t i = 1; i < f.size(); ++i)
    out.push_back(f[i].scale(f[i].field()->from_int(static_cast<long>(i % f[i].field()->p()))));
  return out;
}

static bool reaches(const ValuationResult& r, long target) {
  return r.value() >= Value::rank1(target);
}

LaurentSeries hensel_lift(std::span<const LaurentSeries> f,
                          const LaurentSeries& x0, long target) {
  if (f.size() < 2)
    throw Error(Errc::precondition, "Hensel lifting needs degree >= 1");
  SeriesPoly df = derivative(f);
  LaurentSeries fx = eval_series_poly(f, x0);
  if (reaches(fx.valuation(), target))
    return x0.truncate(std::max(target, x0.valuation_lower_bound() + 1));
  auto dv = eval_series_poly(df, x0).valuation();
  auto fv = fx.valuation();
  if (!dv.is_exact() || dv.value().is_infinite())
    throw Error(Errc::hensel_condition, "f'(x0) has no exact valuation");
  if (!fv.is_exact())
    throw Error(Errc::precision, "f(x0) known only as " + fv.to_string());
  long delta = dv.value().q().get_num().get_si();
  if (!(fv.value() > Value::rank1(2 * delta)))
    throw Error(Errc::hensel_condition,
                "v(f(x0)) = " + fv.to_string() + " is not > 2 v(f'(x0)) = " +
                    std::to_string(2 * delta));
  long work = target + 2 * std::labs(delta) + 2;
  LaurentSeries x = x0.truncate(work);
  for (int iter = 0; iter < 128; ++iter) {
    LaurentSeries r = eval_series_poly(f, x);
    if (reaches(r.valuation(), target)) {
      long keep = target + std::max(0L, -delta);
      LaurentSeries out = x.truncate(keep);
      if (reaches(eval_series_poly(f, out).valuation(), target))
        return out;
      return x;
    }
    if (r.is_zero_to_precision())
      break;
    LaurentSeries d = eval_series_poly(df, x);
    x = (x - r.divide(d, work)).truncate(work);
  }
  throw Error(Errc::precision, "Newton iteration did not reach t^" +
                                   std::to_string(target));
}

std::optional<LaurentSeries> artin_schreier_solve(const LaurentSeries& a,
                                                  long precision_cap) {
  const FieldRef& field = a.field();
  const auto& f = *field;
  long p = f.p();
  auto v = a.valuation();
  if (!v.is_exact())
    throw Error(Errc::precision, "Artin-Schreier input has indeterminate valuation");
  long prec = std::min(a.precision(), precision_cap);
  if (a.is_exact_zero())
    return LaurentSeries::zero(field);
  if (prec <= 0)
    throw Error(Errc::precision, "negative part of the input is not fully known");

  // Remove the polar part: most negative exponent first.
  std::map<long, Elt> polar;
  for (long e = a.low(); e < std::min(0L, a.end()); ++e)
    if (Elt c = a.coeff(e))
      polar[e] = c;
  std::map<long, Elt> y;
  while (!polar.empty()) {
    auto [e, c] = *polar.begin();
    polar.erase(polar.begin());
    if (e % p != 0)
      return std::nullopt;
    Elt d = f.frobenius_inverse(c);
    long ey = e / p;
    y[ey] = f.add(y[ey], d);
    Elt& slot = polar[ey];
    slot = f.add(slot, d);
    if (slot == 0)
      polar.erase(ey);
  }

  // Constant term: root of X^p - X - a_0 in the residue field.
  Elt a0 = a.low() <= 0 && a.end() > 0 ? a.coeff(0) : 0;
  std::optional<Elt> root;
  if (f.size() > 1000000)
    throw Error(Errc::budget_exceeded, "residue field too large for root scan");
  for (Elt r = 0; r < f.size(); ++r)
    if (f.sub(f.sub(f.frobenius(r), r), a0) == 0) {
      root = r;
      break;
    }
  if (!root)
    return std::nullopt;

  LaurentSeries x = LaurentSeries::constant(field, *root);
  for (auto [e, c] : y)
    x = x + LaurentSeries::monomial(field, c, e);

  // Positive part: x_+ = -(b + b^p + b^(p^2) + ...) with v(b) > 0.
  std::vector<Elt> pos;
  long start = std::max(1L, a.low());
  if (a.end() > start)
    for (long e = start; e < a.end(); ++e)
      pos.push_back(a.coeff(e));
  LaurentSeries b(field, start, std::move(pos), prec);
  LaurentSeries sum = LaurentSeries::zero(field, prec);
  LaurentSeries term = b;
  while (!term.is_zero_to_precision()) {
    sum = sum + term;
    term = term.frobenius().truncate(prec);
  }
  return (x - sum).truncate(prec);
}

} // namespace valfield
