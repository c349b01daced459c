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
#include <valfield/polynomial.hpp>

#include <algorithm>

namespace valfield {

Polynomial::Polynomial(FieldRef field, int nvars)
    : field_(std::move(field)), nvars_(nvars) {
  if (nvars < 0)
    throw Error(Errc::precondition, "negative variable count");
}

Polynomial Polynomial::constant(FieldRef field, int nvars, const LaurentSeries& c) {
  Polynomial p(std::move(field), nvars);
  p.add_term(Exponents(static_cast<std::size_t>(nvars), 0), c);
  return p;
}

Polynomial Polynomial::variable(FieldRef field, int nvars, int i) {
  if (i < 1 || i > nvars)
    throw Error(Errc::precondition, "variable index out of range");
  Polynomial p(field, nvars);
  Exponents e(static_cast<std::size_t>(nvars), 0);
  e[static_cast<std::size_t>(i - 1)] = 1;
  p.add_term(e, LaurentSeries::constant(field, 1));
  return p;
}

unsigned Polynomial::total_degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) {
    unsigned s = 0;
    for (auto x : e)
      s += x;
    d = std::max(d, s);
  }
  return d;
}

LaurentSeries Polynomial::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? LaurentSeries::zero(field_) : it->second;
}

void Polynomial::add_term(const Exponents& e, const LaurentSeries& c) {
  if (static_cast<int>(e.size()) != nvars_)
    throw Error(Errc::precondition, "monomial has the wrong number of variables");
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    if (!c.is_exact_zero())
      terms_.emplace(e, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_exact_zero())
    terms_.erase(it);
}

Polynomial Polynomial::widen(int nvars) const {
  if (nvars < nvars_)
    throw Error(Errc::precondition, "cannot drop variables");
  Polynomial out(field_, nvars);
  for (const auto& [e, c] : terms_) {
    Exponents w = e;
    w.resize(static_cast<std::size_t>(nvars), 0);
    out.add_term(w, c);
  }
  return out;
}

static void require_compatible(const Polynomial& a, const Polynomial& b) {
  if (a.nvars() != b.nvars())
    throw Error(Errc::precondition, "polynomials in different numbers of variables");
  if (!a.field()->same_as(*b.field()))
    throw Error(Errc::descriptor_mismatch, "polynomials over different fields");
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  require_compatible(a, b);
  Polynomial out = a;
  for (const auto& [e, c] : b.terms_)
    out.add_term(e, c);
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [e, c] : out.terms_)
    c = -c;
  return out;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_compatible(a, b);
  Polynomial out(a.field_, a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Polynomial::Exponents e = ea;
      for (std::size_t i = 0; i < e.size(); ++i)
        e[i] += eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

Polynomial Polynomial::pow(unsigned n) const {
  Polynomial result = constant(field_, nvars_, LaurentSeries::constant(field_, 1));
  Polynomial base = *this;
  while (n) {
    if (n & 1)
      result = result * base;
    n >>= 1;
    if (n)
      base = base * base;
  }
  return result;
}

LaurentSeries Polynomial::evaluate(std::span<const LaurentSeries> args) const {
  if (static_cast<int>(args.size()) != nvars_)
    throw Error(Errc::precondition, "arity mismatch: expected " +
                                        std::to_string(nvars_) + " arguments");
  // Cache powers per variable.
  std::vector<std::vector<LaurentSeries>> powers(args.size());
  for (std::size_t i = 0; i < args.size(); ++i)
    powers[i].push_back(LaurentSeries::constant(field_, 1));
  LaurentSeries acc = LaurentSeries::zero(field_);
  for (const auto& [e, c] : terms_) {
    LaurentSeries term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0)
        continue;
      auto& pw = powers[i];
      while (pw.size() <= e[i])
        pw.push_back(pw.back() * args[i]);
      term = term * pw[e[i]];
    }
    acc = acc + term;
  }
  return acc;
}

Polynomial Polynomial::substitute(std::span<const Polynomial> images) const {
  if (static_cast<int>(images.size()) != nvars_)
    throw Error(Errc::precondition, "substitution arity mismatch");
  if (images.empty())
    return *this;
  int m = images[0].nvars();
  Polynomial acc(field_, m);
  for (const auto& [e, c] : terms_) {
    Polynomial term = constant(field_, m, c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i])
        term = term * images[i].pow(e[i]);
    acc = acc + term;
  }
  return acc;
}

std::string Polynomial::to_string(std::string_view var) const {
  if (terms_.empty())
    return "0";
  std::string out;
  // Highest total degree first, then the map order.
  std::vector<const std::pair<const Exponents, LaurentSeries>*> order;
  for (const auto& t : terms_)
    order.push_back(&t);
  auto deg = [](const Exponents& e) {
    unsigned s = 0;
    for (auto x : e)
      s += x;
    return s;
  };
  std::stable_sort(order.begin(), order.end(), [&](auto* a, auto* b) {
    return deg(a->first) > deg(b->first);
  });
  for (auto* t : order) {
    const auto& [e, c] = *t;
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
    std::string coef = c.to_string(var);
    bool unit = coef == std::string(var) + "^0";
    bool single = c.coeffs().size() == 1 || c.is_exact_zero();
    if (!c.is_exact() || !single)
      coef = "(" + coef + ")";
    if (!out.empty())
      out += " + ";
    if (mono.empty())
      out += coef;
    else if (unit)
      out += mono;
    else
      out += coef + "*" + mono;
  }
  return out;
}

namespace {

struct PolyBuilder {
  using Value = Polynomial;
  const FieldRef& field;
  int nvars;
  std::string_view var;

  Polynomial constant(const LaurentSeries& c) const {
    return Polynomial::constant(field, nvars, c);
  }
  Polynomial integer(long n) const {
    return constant(LaurentSeries::constant(field, field->from_int(n)));
  }
  Polynomial element(std::string_view text) const {
    return constant(LaurentSeries::constant(field, field->parse_element(text)));
  }
  Polynomial symbol(std::string_view name) const {
    if (name == var)
      return constant(LaurentSeries::monomial(field, 1, 1));
    if (name == "O")
      throw Error(Errc::parse, "error terms belong in series, not polynomials");
    int k = variable_index(name);
    if (k < 1 || k > nvars)
      throw Error(Errc::parse, "unknown symbol '" + std::string(name) + "'");
    return Polynomial::variable(field, nvars, k);
  }
  Polynomial add(const Polynomial& a, const Polynomial& b) const { return a + b; }
  Polynomial sub(const Polynomial& a, const Polynomial& b) const { return a - b; }
  Polynomial mul(const Polynomial& a, const Polynomial& b) const { return a * b; }
  Polynomial neg(const Polynomial& a) const { return -a; }
  Polynomial div(const Polynomial& a, const Polynomial& b) const {
    return a * pow(b, -1);
  }
  Polynomial pow(const Polynomial& a, long n) const {
    if (n >= 0)
      return a.pow(static_cast<unsigned>(n));
    // Negative powers only for constant monomials c*t^k.
    if (a.terms().size() == 1 && a.terms().begin()->first ==
                                     Polynomial::Exponents(static_cast<std::size_t>(nvars), 0)) {
      const auto& c = a.terms().begin()->second;
      if (c.is_exact() && c.coeffs().size() == 1) {
        auto inv = LaurentSeries::constant(field, 1) / c;
        return constant(inv.pow(static_cast<unsigned long>(-n)));
      }
    }
    throw Error(Errc::parse, "negative exponent on a non-monomial");
  }
};

int max_variable_index(std::string_view text) {
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

Polynomial Polynomial::parse(const FieldRef& field, std::string_view text, int nvars,
                             std::string_view var) {
  if (nvars == 0)
    nvars = std::max(1, max_variable_index(text));
  PolyBuilder b{field, nvars, var};
  ExprParser<PolyBuilder> parser(b, text);
  return parser.parse();
}

} // namespace valfield
