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
#include <valfield/finite_field.hpp>

#include <algorithm>
#include <cctype>
#include <string>
#include <utility>

namespace valfield {

namespace {

constexpr std::uint64_t kTableLimit = 1u << 20;
constexpr std::uint64_t kScanLimit = 1000000;

long mod(long a, long p) {
  long r = a % p;
  return r < 0 ? r + p : r;
}

long inv_mod(long a, long p) {
  long t = 0, nt = 1, r = p, nr = mod(a, p);
  while (nr != 0) {
    long qt = r / nr;
    t = std::exchange(nt, t - qt * nt);
    r = std::exchange(nr, r - qt * nr);
  }
  if (r != 1)
    throw Error(Errc::division_by_zero, "inverse of zero");
  return mod(t, p);
}

// Polynomials over F_p as coefficient vectors, low degree first.
using ModPoly = std::vector<long>;

void trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0)
    a.pop_back();
}

ModPoly poly_rem(ModPoly a, const ModPoly& m, long p) {
  trim(a);
  long lead_inv = inv_mod(m.back(), p);
  while (a.size() >= m.size()) {
    long c = mod(a.back() * lead_inv, p);
    std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i)
      a[shift + i] = mod(a[shift + i] - c * m[i], p);
    trim(a);
  }
  return a;
}

bool irreducible_mod_p(const ModPoly& f, long p) {
  int deg = static_cast<int>(f.size()) - 1;
  if (deg < 1)
    return false;
  for (int d = 1; 2 * d <= deg; ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i)
      count *= static_cast<std::uint64_t>(p);
    for (std::uint64_t code = 0; code < count; ++code) {
      ModPoly g(d + 1);
      std::uint64_t c = code;
      for (int i = 0; i < d; ++i) {
        g[i] = static_cast<long>(c % p);
        c /= p;
      }
      g[d] = 1;
      if (poly_rem(f, g, p).empty())
        return false;
    }
  }
  return true;
}

} // namespace

bool is_prime(long n) noexcept {
  if (n < 2)
    return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

FiniteField::FiniteField(long p, int k, std::vector<long> modulus)
    : p_(p), k_(k), q_(1), modulus_(std::move(modulus)) {
  for (int i = 0; i < k; ++i)
    q_ *= static_cast<std::uint64_t>(p);
  build_tables();
}

FieldRef FiniteField::prime(long p) { return create(p, 1); }

FieldRef FiniteField::create(long p, int k,
                             std::optional<std::vector<long>> modulus) {
  if (!is_prime(p))
    throw Error(Errc::precondition, std::to_string(p) + " is not prime");
  if (k < 1 || k > 8)
    throw Error(Errc::precondition, "extension degree must be in 1..8");
  ModPoly m;
  if (modulus) {
    m = *modulus;
    for (auto& c : m)
      c = mod(c, p);
    if (static_cast<int>(m.size()) != k + 1 || m.back() != 1)
      throw Error(Errc::precondition, "modulus must be monic of degree k");
    if (!irreducible_mod_p(m, p))
      throw Error(Errc::irreducibility, "modulus is reducible over F_" +
                                            std::to_string(p));
  } else if (k == 1) {
    m = {0, 1};
  } else {
    std::uint64_t count = 1;
    for (int i = 0; i < k; ++i)
      count *= static_cast<std::uint64_t>(p);
    for (std::uint64_t code = 0; code < count; ++code) {
      ModPoly g(k + 1);
      std::uint64_t c = code;
      for (int i = 0; i < k; ++i) {
        g[i] = static_cast<long>(c % p);
        c /= p;
      }
      g[k] = 1;
      if (irreducible_mod_p(g, p)) {
        m = g;
        break;
      }
    }
  }
  return FieldRef(new FiniteField(p, k, std::move(m)));
}

FieldRef FiniteField::parse(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch)))
      s.push_back(ch);
  if (s.size() < 4 || s.rfind("F(", 0) != 0 || s.back() != ')')
    throw Error(Errc::parse, "field must look like F(p) or F(p^k; modulus=[...]): '" +
                                 std::string(text) + "'");
  std::string body = s.substr(2, s.size() - 3);
  std::optional<std::vector<long>> modulus;
  auto semi = body.find(';');
  if (semi != std::string::npos) {
    std::string rest = body.substr(semi + 1);
    body = body.substr(0, semi);
    const std::string key = "modulus=[";
    if (rest.rfind(key, 0) != 0 || rest.back() != ']')
      throw Error(Errc::parse, "expected modulus=[c0,...,ck] in '" + s + "'");
    std::vector<long> m;
    std::string list = rest.substr(key.size(), rest.size() - key.size() - 1);
    std::size_t pos = 0;
    while (pos <= list.size()) {
      auto comma = list.find(',', pos);
      std::string item = list.substr(pos, comma == std::string::npos
                                              ? std::string::npos
                                              : comma - pos);
      try {
        m.push_back(std::stol(item));
      } catch (const std::exception&) {
        throw Error(Errc::parse, "bad modulus coefficient '" + item + "'");
      }
      if (comma == std::string::npos)
        break;
      pos = comma + 1;
    }
    modulus = std::move(m);
  }
  long p = 0;
  int k = 1;
  try {
    auto caret = body.find('^');
    p = std::stol(body.substr(0, caret));
    if (caret != std::string::npos)
      k = std::stoi(body.substr(caret + 1));
  } catch (const std::exception&) {
    throw Error(Errc::parse, "bad field size in '" + s + "'");
  }
  return create(p, k, std::move(modulus));
}

bool FiniteField::same_as(const FiniteField& other) const noexcept {
  return this == &other || (p_ == other.p_ && k_ == other.k_ &&
                            modulus_ == other.modulus_);
}

std::string FiniteField::to_string() const {
  if (k_ == 1)
    return "F(" + std::to_string(p_) + ")";
  std::string s = "F(" + std::to_string(p_) + "^" + std::to_string(k_) +
                  "; modulus=[";
  for (std::size_t i = 0; i < modulus_.size(); ++i)
    s += (i ? "," : "") + std::to_string(modulus_[i]);
  return s + "])";
}

Elt FiniteField::from_int(long n) const noexcept {
  return static_cast<Elt>(mod(n, p_));
}

Elt FiniteField::from_coeffs(std::span<const long> coeffs) const {
  if (static_cast<int>(coeffs.size()) > k_)
    throw Error(Errc::parse, "too many coefficients for " + to_string());
  Elt code = 0, place = 1;
  for (long c : coeffs) {
    code += static_cast<Elt>(mod(c, p_)) * place;
    place *= static_cast<Elt>(p_);
  }
  return code;
}

std::vector<long> FiniteField::coeffs(Elt a) const {
  std::vector<long> out(k_);
  for (int i = 0; i < k_; ++i) {
    out[i] = static_cast<long>(a % p_);
    a /= p_;
  }
  return out;
}

Elt FiniteField::add(Elt a, Elt b) const noexcept {
  if (k_ == 1)
    return (a + b) % p_;
  Elt out = 0, place = 1;
  for (int i = 0; i < k_; ++i) {
    out += ((a % p_ + b % p_) % p_) * place;
    a /= p_;
    b /= p_;
    place *= p_;
  }
  return out;
}

Elt FiniteField::neg(Elt a) const noexcept {
  if (k_ == 1)
    return a == 0 ? 0 : p_ - a;
  Elt out = 0, place = 1;
  for (int i = 0; i < k_; ++i) {
    Elt d = a % p_;
    out += (d == 0 ? 0 : p_ - d) * place;
    a /= p_;
    place *= p_;
  }
  return out;
}

Elt FiniteField::sub(Elt a, Elt b) const noexcept { return add(a, neg(b)); }

Elt FiniteField::mul_slow(Elt a, Elt b) const noexcept {
  if (k_ == 1)
    return (a * b) % p_;
  auto ca = coeffs(a), cb = coeffs(b);
  ModPoly prod(2 * k_ - 1, 0);
  for (int i = 0; i < k_; ++i)
    for (int j = 0; j < k_; ++j)
      prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
  auto r = poly_rem(prod, modulus_, p_);
  return from_coeffs(r);
}

void FiniteField::build_tables() {
  if (q_ > kTableLimit || q_ == 2)
    return;
  // Find a primitive element by brute force over the multiplicative group.
  std::uint64_t order = q_ - 1;
  std::vector<std::uint64_t> prime_factors;
  std::uint64_t n = order;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      prime_factors.push_back(d);
      while (n % d == 0)
        n /= d;
    }
  if (n > 1)
    prime_factors.push_back(n);
  auto slow_pow = [&](Elt a, std::uint64_t e) {
    Elt r = 1;
    while (e) {
      if (e & 1)
        r = mul_slow(r, a);
      a = mul_slow(a, a);
      e >>= 1;
    }
    return r;
  };
  Elt g = 0;
  for (Elt cand = 2; cand < q_; ++cand) {
    bool primitive = true;
    for (auto f : prime_factors)
      if (slow_pow(cand, order / f) == 1) {
        primitive = false;
        break;
      }
    if (primitive) {
      g = cand;
      break;
    }
  }
  exp_.resize(2 * order);
  log_.assign(q_, 0);
  Elt x = 1;
  for (std::uint64_t i = 0; i < order; ++i) {
    exp_[i] = x;
    exp_[i + order] = x;
    log_[x] = static_cast<std::uint32_t>(i);
    x = mul_slow(x, g);
  }
}

Elt FiniteField::mul(Elt a, Elt b) const noexcept {
  if (a == 0 || b == 0)
    return 0;
  if (!exp_.empty())
    return exp_[log_[a] + log_[b]];
  return mul_slow(a, b);
}

Elt FiniteField::pow(Elt a, std::uint64_t e) const noexcept {
  Elt r = 1;
  while (e) {
    if (e & 1)
      r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Elt FiniteField::inv(Elt a) const {
  if (a == 0)
    throw Error(Errc::division_by_zero, "inverse of zero in " + to_string());
  if (k_ == 1)
    return static_cast<Elt>(inv_mod(static_cast<long>(a), p_));
  if (!exp_.empty())
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  return pow(a, q_ - 2);
}

std::string FiniteField::format(Elt a) const {
  if (k_ == 1)
    return std::to_string(a);
  auto c = coeffs(a);
  std::string s = "[";
  for (int i = 0; i < k_; ++i)
    s += (i ? "," : "") + std::to_string(c[i]);
  return s + "]";
}

Elt FiniteField::parse_element(std::string_view text) const {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch)))
      s.push_back(ch);
  try {
    if (!s.empty() && s.front() == '[') {
      if (s.back() != ']')
        throw Error(Errc::parse, "unterminated element '" + s + "'");
      std::vector<long> c;
      std::string body = s.substr(1, s.size() - 2);
      std::size_t pos = 0;
      while (!body.empty()) {
        auto comma = body.find(',', pos);
        c.push_back(std::stol(body.substr(pos, comma == std::string::npos
                                                   ? std::string::npos
                                                   : comma - pos)));
        if (comma == std::string::npos)
          break;
        pos = comma + 1;
      }
      return from_coeffs(c);
    }
    std::size_t used = 0;
    long n = std::stol(s, &used);
    if (used != s.size())
      throw Error(Errc::parse, "bad element '" + s + "'");
    return from_int(n);
  } catch (const std::logic_error&) {
    throw Error(Errc::parse, "bad element '" + s + "'");
  }
}

static void require_same(const FFElement& a, const FFElement& b) {
  if (!a.field()->same_as(*b.field()))
    throw Error(Errc::descriptor_mismatch, "elements of " +
                                               a.field()->to_string() + " and " +
                                               b.field()->to_string());
}

FFElement operator+(const FFElement& a, const FFElement& b) {
  require_same(a, b);
  return {a.field_, a.field_->add(a.code_, b.code_)};
}
FFElement operator-(const FFElement& a, const FFElement& b) {
  require_same(a, b);
  return {a.field_, a.field_->sub(a.code_, b.code_)};
}
FFElement operator*(const FFElement& a, const FFElement& b) {
  require_same(a, b);
  return {a.field_, a.field_->mul(a.code_, b.code_)};
}
FFElement operator/(const FFElement& a, const FFElement& b) {
  require_same(a, b);
  return {a.field_, a.field_->div(a.code_, b.code_)};
}
bool operator==(const FFElement& a, const FFElement& b) {
  return a.field_->same_as(*b.field_) && a.code_ == b.code_;
}

FFElement ff_arith(const FFElement& a, const FFElement& b, FFOp op) {
  switch (op) {
  case FFOp::add: return a + b;
  case FFOp::sub: return a - b;
  case FFOp::mul: return a * b;
  case FFOp::div: return a / b;
  }
  throw Error(Errc::usage, "unknown finite field operation");
}

Elt ff_poly_eval(const FiniteField& f, std::span<const Elt> poly, Elt x) {
  Elt acc = 0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it)
    acc = f.add(f.mul(acc, x), *it);
  return acc;
}

std::optional<FFElement> has_root(std::span<const FFElement> poly) {
  std::size_t deg = poly.size();
  while (deg > 0 && poly[deg - 1].is_zero())
    --deg;
  if (deg < 2)
    throw Error(Errc::precondition, "root search needs degree >= 1");
  const FieldRef& field = poly[0].field();
  for (const auto& c : poly)
    require_same(poly[0], c);
  if (field->size() > kScanLimit)
    throw Error(Errc::budget_exceeded, "field too large for exhaustive root scan");
  std::vector<Elt> codes;
  for (std::size_t i = 0; i < deg; ++i)
    codes.push_back(poly[i].code());
  for (Elt x = 0; x < field->size(); ++x)
    if (ff_poly_eval(*field, codes, x) == 0)
      return FFElement(field, x);
  return std::nullopt;
}

bool artin_schreier_irreducible(const FFElement& c) {
  const auto& field = c.field();
  if (field->k() != 1)
    throw Error(Errc::precondition,
                "Artin-Schreier criterion is only provided over prime fields");
  long p = field->p();
  std::vector<FFElement> poly(static_cast<std::size_t>(p) + 1,
                              FFElement(field, 0));
  poly[0] = -c;
  poly[1] = FFElement::from_int(field, -1);
  poly[static_cast<std::size_t>(p)] = FFElement(field, 1);
  return !has_root(poly).has_value();
}

bool ff_poly_irreducible(const FiniteField& f, std::span<const Elt> poly) {
  std::vector<Elt> a(poly.begin(), poly.end());
  while (!a.empty() && a.back() == 0)
    a.pop_back();
  int deg = static_cast<int>(a.size()) - 1;
  if (deg < 1)
    return false;
  auto rem_is_zero = [&](const std::vector<Elt>& g) {
    std::vector<Elt> r = a;
    while (r.size() >= g.size()) {
      Elt c = r.back(); // g is monic
      std::size_t shift = r.size() - g.size();
      for (std::size_t i = 0; i < g.size(); ++i)
        r[shift + i] = f.sub(r[shift + i], f.mul(c, g[i]));
      while (!r.empty() && r.back() == 0)
        r.pop_back();
    }
    return r.empty();
  };
  for (int d = 1; 2 * d <= deg; ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) {
      count *= f.size();
      if (count > 50'000'000)
        throw Error(Errc::budget_exceeded, "irreducibility test too large");
    }
    for (std::uint64_t code = 0; code < count; ++code) {
      std::vector<Elt> g(d + 1);
      std::uint64_t c = code;
      for (int i = 0; i < d; ++i) {
        g[i] = c % f.size();
        c /= f.size();
      }
      g[d] = 1;
      if (rem_is_zero(g))
        return false;
    }
  }
  return true;
}

} // namespace valfield
