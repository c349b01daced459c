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
#include <valfield/expr.hpp>
#include <valfield/extremality.hpp>

#include <algorithm>
#include <array>

namespace valfield {

std::string_view to_string(Verdict v) {
  return v == Verdict::max_attained ? "MaxAttained" : "Indeterminate";
}

std::string_view to_string(PushdownVerdict v) {
  switch (v) {
  case PushdownVerdict::confirmed:
    return "Confirmed";
  case PushdownVerdict::violated:
    return "Violated";
  default:
    return "Inconclusive";
  }
}

ExtremalResult extremal_search(const Polynomial& f, const Ball& s, long N,
                               std::uint64_t budget, long input_precision) {
  SearchResult r = brute_force_max(f, s, N, input_precision, budget);
  ExtremalResult out;
  out.witness = std::move(r.witness);
  out.value = r.value;
  out.verdict = r.value.is_exact() ? Verdict::max_attained : Verdict::indeterminate;
  out.evaluated = r.evaluated;
  return out;
}

Polynomial ball_transfer(const Polynomial& f, long alpha, const LaurentSeries& a, long beta,
                         const LaurentSeries& b, const LaurentSeries& c) {
  ValuationResult vc = c.valuation();
  if (!c.is_exact() || !vc.is_exact() || vc.value().is_infinite() ||
      vc.value() != Value::rank1(beta - alpha))
    throw Error(Errc::precondition, "scale must have valuation exactly " +
                                        std::to_string(beta - alpha) + ", got " +
                                        vc.to_string());
  const FieldRef& field = f.field();
  const int n = f.nvars();
  auto cst = [&](const LaurentSeries& x) { return Polynomial::constant(field, n, x); };
  std::vector<Polynomial> images;
  for (int i = 1; i <= n; ++i)
    images.push_back(cst(c) * (Polynomial::variable(field, n, i) - cst(a)) + cst(b));
  return f.substitute(images);
}

// CompositeSeries

CompositeSeries::CompositeSeries(FieldRef field) : field_(std::move(field)) {}

CompositeSeries::CompositeSeries(FieldRef field, long low, std::vector<LaurentSeries> coeffs,
                                 long precision)
    : field_(std::move(field)), low_(low), coeffs_(std::move(coeffs)), prec_(precision) {
  for (const auto& c : coeffs_)
    if (!c.field()->same_as(*field_))
      throw Error(Errc::descriptor_mismatch, "coefficient over a different field");
  normalize();
}

CompositeSeries CompositeSeries::constant(const LaurentSeries& c) {
  return CompositeSeries(c.field(), 0, {c});
}

CompositeSeries CompositeSeries::monomial(const LaurentSeries& c, long e) {
  return CompositeSeries(c.field(), e, {c});
}

void CompositeSeries::normalize() {
  // Coefficients at or past the error order carry no information.
  if (prec_ < kExact && end() > prec_)
    coeffs_.erase(coeffs_.begin() + std::max(0L, prec_ - low_), coeffs_.end());
  while (!coeffs_.empty() && coeffs_.back().is_exact_zero())
    coeffs_.pop_back();
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead].is_exact_zero())
    ++lead;
  coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
  low_ += static_cast<long>(lead);
  if (coeffs_.empty())
    low_ = std::min(low_, prec_);
}

LaurentSeries CompositeSeries::coeff(long e) const {
  if (e >= prec_)
    throw Error(Errc::precision, "coefficient of t^" + std::to_string(e) +
                                     " beyond O(t^" + std::to_string(prec_) + ")");
  if (e < low_ || e >= end())
    return LaurentSeries::zero(field_);
  return coeffs_[static_cast<std::size_t>(e - low_)];
}

ValuationResult CompositeSeries::valuation() const {
  for (long e = low_; e < end(); ++e) {
    const LaurentSeries& c = coeffs_[static_cast<std::size_t>(e - low_)];
    if (c.is_exact_zero())
      continue;
    if (c.is_zero_to_precision())
      return ValuationResult::at_least(Value::rank2(e, c.precision()));
    return ValuationResult::exact(Value::rank2(e, c.low()));
  }
  if (prec_ >= kExact)
    return ValuationResult::exact(Value::infinity());
  return ValuationResult::at_least(Value::rank2(prec_, 0));
}

namespace {

long t_lower_bound(const CompositeSeries& x) {
  return x.coeffs().empty() ? x.precision() : x.low();
}

} // namespace

CompositeSeries CompositeSeries::operator-() const {
  std::vector<LaurentSeries> c;
  for (const auto& x : coeffs_)
    c.push_back(-x);
  return CompositeSeries(field_, low_, std::move(c), prec_);
}

CompositeSeries operator+(const CompositeSeries& a, const CompositeSeries& b) {
  if (!a.field()->same_as(*b.field()))
    throw Error(Errc::descriptor_mismatch, "composite operands over different fields");
  long prec = std::min(a.precision(), b.precision());
  long low = std::min(t_lower_bound(a), t_lower_bound(b));
  long stop = std::min(prec, std::max(a.end(), b.end()));
  std::vector<LaurentSeries> c;
  for (long e = low; e < stop; ++e)
    c.push_back(a.coeff(e) + b.coeff(e));
  return CompositeSeries(a.field(), low, std::move(c), prec);
}

CompositeSeries operator-(const CompositeSeries& a, const CompositeSeries& b) { return a + (-b); }

CompositeSeries operator*(const CompositeSeries& a, const CompositeSeries& b) {
  if (!a.field()->same_as(*b.field()))
    throw Error(Errc::descriptor_mismatch, "composite operands over different fields");
  long prec = std::min(add_precision(a.precision(), t_lower_bound(b)),
                       add_precision(b.precision(), t_lower_bound(a)));
  if (a.coeffs().empty() || b.coeffs().empty())
    return CompositeSeries(a.field(), prec, {}, prec);
  long low = a.low() + b.low();
  long stop = std::min(prec, a.end() + b.end() - 1);
  std::vector<LaurentSeries> c;
  for (long e = low; e < stop; ++e) {
    LaurentSeries s = LaurentSeries::zero(a.field());
    for (long i = std::max(a.low(), e - b.end() + 1); i < std::min(a.end(), e - b.low() + 1); ++i)
      s = s + a.coeff(i) * b.coeff(e - i);
    c.push_back(std::move(s));
  }
  return CompositeSeries(a.field(), low, std::move(c), prec);
}

bool operator==(const CompositeSeries& a, const CompositeSeries& b) {
  return a.field()->same_as(*b.field()) && a.prec_ == b.prec_ && a.coeffs_ == b.coeffs_ &&
         (a.coeffs_.empty() || a.low_ == b.low_);
}

CompositeSeries CompositeSeries::pow(unsigned long n) const {
  CompositeSeries result = constant(LaurentSeries::constant(field_, field_->one()));
  CompositeSeries base = *this;
  while (n) {
    if (n & 1)
      result = result * base;
    n >>= 1;
    if (n)
      base = base * base;
  }
  return result;
}

std::string CompositeSeries::to_string() const {
  std::string out;
  for (long e = low_; e < end(); ++e) {
    const LaurentSeries& c = coeffs_[static_cast<std::size_t>(e - low_)];
    if (c.is_exact_zero())
      continue;
    if (!out.empty())
      out += " + ";
    out += "(" + c.to_string("u") + ")";
    if (e != 0)
      out += "*t^" + std::to_string(e);
  }
  if (prec_ < kExact)
    out += (out.empty() ? "" : " + ") + std::string("O(t^") + std::to_string(prec_) + ")";
  return out.empty() ? "0" : out;
}

namespace {

// Inverse of c t^e with c a single u-monomial; parse-time only.
CompositeSeries monomial_inverse(const CompositeSeries& x) {
  if (x.coeffs().size() == 1 && x.precision() >= CompositeSeries::kExact) {
    const LaurentSeries& c = x.coeffs()[0];
    if (c.is_exact() && c.coeffs().size() == 1)
      return CompositeSeries::monomial(LaurentSeries::constant(c.field(), c.field()->one()) / c,
                                       -x.low());
  }
  throw Error(Errc::parse, "negative exponent on a non-monomial");
}

struct CompositeBuilder {
  using Value = CompositeSeries;
  const FieldRef& field;

  CompositeSeries integer(long n) const {
    return CompositeSeries::constant(LaurentSeries::constant(field, field->from_int(n)));
  }
  CompositeSeries element(std::string_view text) const {
    return CompositeSeries::constant(LaurentSeries::constant(field, field->parse_element(text)));
  }
  CompositeSeries symbol(std::string_view name) const {
    if (name == "t")
      return CompositeSeries::monomial(LaurentSeries::constant(field, field->one()), 1);
    if (name == "u")
      return CompositeSeries::constant(LaurentSeries::monomial(field, field->one(), 1));
    throw Error(Errc::parse, "unknown symbol '" + std::string(name) + "'");
  }
  CompositeSeries add(const CompositeSeries& a, const CompositeSeries& b) const { return a + b; }
  CompositeSeries sub(const CompositeSeries& a, const CompositeSeries& b) const { return a - b; }
  CompositeSeries mul(const CompositeSeries& a, const CompositeSeries& b) const { return a * b; }
  CompositeSeries neg(const CompositeSeries& a) const { return -a; }
  CompositeSeries div(const CompositeSeries& a, const CompositeSeries& b) const {
    return a * monomial_inverse(b);
  }
  CompositeSeries pow(const CompositeSeries& a, long n) const {
    if (n >= 0)
      return a.pow(static_cast<unsigned long>(n));
    return monomial_inverse(a).pow(static_cast<unsigned long>(-n));
  }
};

} // namespace

CompositeSeries CompositeSeries::parse(const FieldRef& field, std::string_view text) {
  CompositeBuilder b{field};
  ExprParser<CompositeBuilder> parser(b, text);
  return parser.parse();
}

// CompositePolynomial

CompositePolynomial::CompositePolynomial(FieldRef field, int nvars)
    : field_(std::move(field)), nvars_(nvars) {
  if (nvars < 1)
    throw Error(Errc::usage, "a polynomial needs at least one variable");
}

CompositePolynomial CompositePolynomial::lift(const Polynomial& g) {
  CompositePolynomial f(g.field(), g.nvars());
  for (const auto& [e, c] : g.terms())
    f.add_term(e, CompositeSeries::constant(c));
  return f;
}

void CompositePolynomial::add_term(const Exponents& e, const CompositeSeries& c) {
  if (static_cast<int>(e.size()) != nvars_)
    throw Error(Errc::rank_mismatch, "monomial with the wrong number of exponents");
  auto it = terms_.find(e);
  CompositeSeries sum = it == terms_.end() ? c : it->second + c;
  if (sum.is_exact_zero()) {
    if (it != terms_.end())
      terms_.erase(it);
  } else if (it == terms_.end()) {
    terms_.emplace(e, std::move(sum));
  } else {
    it->second = std::move(sum);
  }
}

CompositeSeries CompositePolynomial::evaluate(std::span<const CompositeSeries> args) const {
  if (static_cast<int>(args.size()) != nvars_)
    throw Error(Errc::rank_mismatch, "polynomial in " + std::to_string(nvars_) +
                                         " variables evaluated at " +
                                         std::to_string(args.size()) + " arguments");
  CompositeSeries sum(field_);
  for (const auto& [e, c] : terms_) {
    CompositeSeries term = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i])
        term = term * args[i].pow(e[i]);
    sum = sum + term;
  }
  return sum;
}

std::string CompositePolynomial::to_string() const {
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i])
        continue;
      if (!mono.empty())
        mono += "*";
      mono += nvars_ == 1 ? "X" : "X" + std::to_string(i + 1);
      if (e[i] > 1)
        mono += "^" + std::to_string(e[i]);
    }
    if (!out.empty())
      out += " + ";
    out += "(" + c.to_string() + ")";
    if (!mono.empty())
      out += "*" + mono;
  }
  return out.empty() ? "0" : out;
}

namespace {

struct CompositePolyBuilder {
  using Value = CompositePolynomial;
  const FieldRef& field;
  int nvars;

  CompositePolynomial constant(const CompositeSeries& c) const {
    CompositePolynomial f(field, nvars);
    f.add_term(Polynomial::Exponents(static_cast<std::size_t>(nvars), 0), c);
    return f;
  }
  const CompositeSeries* as_constant(const CompositePolynomial& f) const {
    if (f.terms().size() == 1 &&
        f.terms().begin()->first == Polynomial::Exponents(static_cast<std::size_t>(nvars), 0))
      return &f.terms().begin()->second;
    return nullptr;
  }
  CompositePolynomial integer(long n) const { return constant(CompositeBuilder{field}.integer(n)); }
  CompositePolynomial element(std::string_view text) const {
    return constant(CompositeBuilder{field}.element(text));
  }
  CompositePolynomial symbol(std::string_view name) const {
    if (name == "t" || name == "u")
      return constant(CompositeBuilder{field}.symbol(name));
    int k = variable_index(name);
    if (k < 1 || k > nvars)
      throw Error(Errc::parse, "unknown symbol '" + std::string(name) + "'");
    Polynomial::Exponents e(static_cast<std::size_t>(nvars), 0);
    e[static_cast<std::size_t>(k - 1)] = 1;
    CompositePolynomial f(field, nvars);
    f.add_term(e, CompositeSeries::constant(LaurentSeries::constant(field, field->one())));
    return f;
  }
  CompositePolynomial add(const CompositePolynomial& a, const CompositePolynomial& b) const {
    CompositePolynomial out = a;
    for (const auto& [e, c] : b.terms())
      out.add_term(e, c);
    return out;
  }
  CompositePolynomial neg(const CompositePolynomial& a) const {
    CompositePolynomial out(field, nvars);
    for (const auto& [e, c] : a.terms())
      out.add_term(e, -c);
    return out;
  }
  CompositePolynomial sub(const CompositePolynomial& a, const CompositePolynomial& b) const {
    return add(a, neg(b));
  }
  CompositePolynomial mul(const CompositePolynomial& a, const CompositePolynomial& b) const {
    CompositePolynomial out(field, nvars);
    for (const auto& [ea, ca] : a.terms())
      for (const auto& [eb, cb] : b.terms()) {
        Polynomial::Exponents e = ea;
        for (std::size_t i = 0; i < e.size(); ++i)
          e[i] += eb[i];
        out.add_term(e, ca * cb);
      }
    return out;
  }
  CompositePolynomial div(const CompositePolynomial& a, const CompositePolynomial& b) const {
    return mul(a, pow(b, -1));
  }
  CompositePolynomial pow(const CompositePolynomial& a, long n) const {
    if (n < 0) {
      const CompositeSeries* c = as_constant(a);
      if (!c)
        throw Error(Errc::parse, "negative exponent on a non-monomial");
      return constant(CompositeBuilder{field}.pow(*c, n));
    }
    CompositePolynomial result = integer(1);
    for (long i = 0; i < n; ++i)
      result = mul(result, a);
    return result;
  }
};

int max_variable(std::string_view text) {
  int best = 0;
  for (std::size_t i = 0; i < text.size();) {
    if (std::isalpha(static_cast<unsigned char>(text[i]))) {
      std::size_t j = i;
      while (j < text.size() && std::isalnum(static_cast<unsigned char>(text[j])))
        ++j;
      best = std::max(best, variable_index(text.substr(i, j - i)));
      i = j;
    } else {
      ++i;
    }
  }
  return best;
}

} // namespace

CompositePolynomial CompositePolynomial::parse(const FieldRef& field, std::string_view text,
                                               int nvars) {
  if (nvars == 0)
    nvars = std::max(1, max_variable(text));
  CompositePolyBuilder b{field, nvars};
  ExprParser<CompositePolyBuilder> parser(b, text);
  return parser.parse();
}

Coarsening coarsen(const CompositeSeries& x) {
  ValuationResult v = x.valuation();
  if (!v.is_exact())
    throw Error(Errc::precision, "outer valuation not determined: " + v.to_string());
  if (v.value().is_infinite())
    throw Error(Errc::precondition, "zero has no coarsening");
  long w = v.value().w().get_num().get_si();
  return {w, x.coeff(w)};
}

CompositeSearchResult composite_extremal_search(const CompositePolynomial& f,
                                                const CompositeTruncation& tr,
                                                std::uint64_t budget) {
  if (tr.t_precision < 1 || tr.u_precision < 1 || tr.u_floor > 0)
    throw Error(Errc::usage, "composite truncation needs t_precision >= 1, u_precision >= 1, "
                             "u_floor <= 0");
  const FieldRef& field = f.field();
  const int n = f.nvars();
  // Digit slots per variable: c_0 over [0, Nu), c_e over [u_floor, Nu).
  std::vector<long> slot_low;
  for (long e = 0; e < tr.t_precision; ++e)
    for (long k = e == 0 ? 0 : tr.u_floor; k < tr.u_precision; ++k)
      slot_low.push_back(e);
  const std::size_t per_var = slot_low.size();
  const auto q = static_cast<std::uint64_t>(field->size());
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < per_var * static_cast<std::size_t>(n); ++i) {
    if (count > budget / q)
      throw Error(Errc::budget_exceeded, "more than " + std::to_string(budget) +
                                             " composite representatives");
    count *= q;
  }

  std::vector<Elt> digits(per_var * static_cast<std::size_t>(n), 0);
  auto build = [&](int var) {
    std::vector<LaurentSeries> coeffs;
    std::size_t pos = per_var * static_cast<std::size_t>(var);
    for (long e = 0; e < tr.t_precision; ++e) {
      long lo = e == 0 ? 0 : tr.u_floor;
      std::vector<Elt> c(digits.begin() + static_cast<std::ptrdiff_t>(pos),
                         digits.begin() + static_cast<std::ptrdiff_t>(pos + static_cast<std::size_t>(tr.u_precision - lo)));
      pos += static_cast<std::size_t>(tr.u_precision - lo);
      coeffs.emplace_back(field, lo, std::move(c), tr.u_precision);
    }
    return CompositeSeries(field, 0, std::move(coeffs), tr.t_precision);
  };

  CompositeSearchResult best;
  bool first = true;
  while (true) {
    std::vector<CompositeSeries> args;
    for (int i = 0; i < n; ++i)
      args.push_back(build(i));
    ValuationResult v = f.evaluate(args).valuation();
    ++best.evaluated;
    std::array<ValuationResult, 2> pair{best.value, v};
    if (first || max_valuation_index(pair) == 1) {
      best.value = v;
      best.witness = std::move(args);
      first = false;
    }
    std::size_t pos = 0;
    while (pos < digits.size() && ++digits[pos] == static_cast<Elt>(q))
      digits[pos++] = 0;
    if (pos == digits.size())
      break;
  }
  best.verdict = best.value.is_exact() ? Verdict::max_attained : Verdict::indeterminate;
  return best;
}

PushdownReport check_vexbarwex(const Polynomial& g, const CompositeTruncation& tr,
                               std::uint64_t budget) {
  PushdownReport r;
  r.residue = extremal_search(g, Ball{LaurentSeries::zero(g.field()), 0}, tr.u_precision, budget);
  r.composite = composite_extremal_search(CompositePolynomial::lift(g), tr, budget);
  std::vector<LaurentSeries> bw;
  for (const auto& b : r.composite.witness)
    bw.push_back(b.coeff(0));
  r.pushed_down = g.evaluate(bw).valuation();
  if (r.composite.verdict != Verdict::max_attained || r.residue.verdict != Verdict::max_attained ||
      !r.pushed_down.is_exact()) {
    r.verdict = PushdownVerdict::inconclusive;
    return r;
  }
  r.verdict = r.residue.value.value() > r.pushed_down.value() ? PushdownVerdict::violated
                                                              : PushdownVerdict::confirmed;
  return r;
}

} // namespace valfield
