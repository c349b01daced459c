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
#include <valfield/finite_field.hpp>
#include <valfield/padic.hpp>

#include <algorithm>
#include <optional>
#include <regex>

namespace valfield {

namespace {

mpz_class ppow(long p, long k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p),
                static_cast<unsigned long>(std::max(0L, k)));
  return r;
}

// Strips factors of p from n (n != 0), returning their count.
long strip(mpz_class& n, long p) {
  long k = 0;
  mpz_class pp(p);
  while (mpz_divisible_p(n.get_mpz_t(), pp.get_mpz_t())) {
    n /= pp;
    ++k;
  }
  return k;
}

mpz_class mod_pos(const mpz_class& a, const mpz_class& m) {
  mpz_class r = a % m;
  if (r < 0)
    r += m;
  return r;
}

mpz_class inv_mod(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw Error(Errc::division_by_zero, "non-invertible p-adic unit");
  return r;
}

void require_same_prime(const PAdicNumber& a, const PAdicNumber& b) {
  if (a.p() != b.p())
    throw Error(Errc::descriptor_mismatch, "p-adic numbers for different primes");
}

} // namespace

long padic_valuation(const mpz_class& n, long p) {
  if (n == 0)
    throw Error(Errc::precondition, "valuation of zero integer");
  mpz_class m = n;
  return strip(m, p);
}

long binomial_valuation(long n, long k, long p) {
  auto legendre = [p](long m) {
    long s = 0;
    for (long q = p; q <= m; q *= p)
      s += m / q;
    return s;
  };
  return legendre(n) - legendre(k) - legendre(n - k);
}

PAdicNumber::PAdicNumber(long p) : p_(p) {}

PAdicNumber::PAdicNumber(long p, long val, mpz_class unit, long prec)
    : p_(p), val_(val), unit_(std::move(unit)), prec_(prec) {
  if (unit_ == 0 || prec_ - val_ <= 0) {
    unit_ = 0;
    val_ = 0;
    return;
  }
  if (prec_ >= kExact)
    throw Error(Errc::precondition, "nonzero p-adic numbers carry finite precision");
  val_ += strip(unit_, p_);
  if (prec_ - val_ <= 0) {
    unit_ = 0;
    val_ = 0;
    return;
  }
  unit_ = mod_pos(unit_, ppow(p_, prec_ - val_));
}

PAdicNumber PAdicNumber::zero(long p, long precision) {
  return PAdicNumber(p, 0, 0, precision);
}

PAdicNumber PAdicNumber::from_rational(long p, const mpq_class& q, long precision) {
  if (q == 0)
    return zero(p, precision);
  mpz_class num = q.get_num(), den = q.get_den();
  long v = strip(num, p) - strip(den, p);
  if (precision - v <= 0)
    return zero(p, precision);
  mpz_class m = ppow(p, precision - v);
  return PAdicNumber(p, v, num * inv_mod(den, m), precision);
}

long PAdicNumber::valuation_lower_bound() const noexcept {
  return unit_ == 0 ? prec_ : val_;
}

ValuationResult PAdicNumber::valuation() const {
  if (is_exact_zero())
    return ValuationResult::exact(Value::infinity());
  if (unit_ == 0)
    return ValuationResult::at_least(Value::rank1(prec_));
  return ValuationResult::exact(Value::rank1(val_));
}

std::vector<long> PAdicNumber::unit_digits() const {
  std::vector<long> out;
  mpz_class u = unit_;
  for (long i = 0; i < prec_ - val_ && u != 0; ++i) {
    mpz_class d = u % p_;
    out.push_back(d.get_si());
    u /= p_;
  }
  return out;
}

mpq_class PAdicNumber::representative() const {
  if (unit_ == 0)
    return 0;
  mpq_class r(unit_);
  if (val_ >= 0)
    r *= mpq_class(ppow(p_, val_));
  else
    r /= mpq_class(ppow(p_, -val_));
  r.canonicalize();
  return r;
}

PAdicNumber PAdicNumber::operator-() const {
  if (unit_ == 0)
    return *this;
  return PAdicNumber(p_, val_, -unit_, prec_);
}

PAdicNumber PAdicNumber::truncate(long precision) const {
  if (precision >= prec_)
    return *this;
  return PAdicNumber(p_, val_, unit_, precision);
}

PAdicNumber operator+(const PAdicNumber& a, const PAdicNumber& b) {
  require_same_prime(a, b);
  if (a.is_exact_zero())
    return b;
  if (b.is_exact_zero())
    return a;
  long prec = std::min(a.prec_, b.prec_);
  if (a.unit_ == 0)
    return b.truncate(prec);
  if (b.unit_ == 0)
    return a.truncate(prec);
  long v = std::min(a.val_, b.val_);
  mpz_class s = a.unit_ * ppow(a.p_, a.val_ - v) + b.unit_ * ppow(a.p_, b.val_ - v);
  return PAdicNumber(a.p_, v, s, prec);
}

PAdicNumber operator-(const PAdicNumber& a, const PAdicNumber& b) { return a + (-b); }

PAdicNumber operator*(const PAdicNumber& a, const PAdicNumber& b) {
  require_same_prime(a, b);
  if (a.is_exact_zero() || b.is_exact_zero())
    return PAdicNumber(a.p_);
  long va = a.valuation_lower_bound(), vb = b.valuation_lower_bound();
  long prec = std::min(a.prec_ + vb, b.prec_ + va);
  if (a.unit_ == 0 || b.unit_ == 0)
    return PAdicNumber::zero(a.p_, prec);
  return PAdicNumber(a.p_, va + vb, a.unit_ * b.unit_, prec);
}

PAdicNumber operator/(const PAdicNumber& a, const PAdicNumber& b) {
  require_same_prime(a, b);
  if (b.unit_ == 0)
    throw Error(Errc::division_by_zero, "p-adic divisor vanishes to precision");
  if (a.is_exact_zero())
    return a;
  long vb = b.val_;
  long va = a.valuation_lower_bound();
  long prec = std::min(a.prec_ - vb, va + b.prec_ - 2 * vb);
  if (a.unit_ == 0)
    return PAdicNumber::zero(a.p_, prec);
  long val = va - vb;
  if (prec - val <= 0)
    return PAdicNumber::zero(a.p_, prec);
  mpz_class m = ppow(a.p_, prec - val);
  return PAdicNumber(a.p_, val, a.unit_ * inv_mod(b.unit_, m), prec);
}

bool PAdicNumber::equals_at_precision(const PAdicNumber& other) const {
  return (*this - other).is_zero_to_precision();
}

std::string PAdicNumber::to_string() const {
  if (is_exact_zero())
    return "0";
  std::string s = unit_ == 0 ? "" : rational_to_string(representative()) + " + ";
  return s + "O(" + std::to_string(p_) + "^" + std::to_string(prec_) + ")";
}

namespace {

struct RationalPolyBuilder {
  using Value = RationalPoly;
  static void trim(RationalPoly& f) {
    while (!f.empty() && f.back() == 0)
      f.pop_back();
  }
  RationalPoly integer(long n) const { return n == 0 ? RationalPoly{} : RationalPoly{mpq_class(n)}; }
  RationalPoly element(std::string_view) const {
    throw Error(Errc::parse, "bracketed elements are not rational numbers");
  }
  RationalPoly symbol(std::string_view name) const {
    if (name == "X")
      return {0, 1};
    throw Error(Errc::parse, "unknown symbol '" + std::string(name) + "'");
  }
  RationalPoly add(const RationalPoly& a, const RationalPoly& b) const {
    RationalPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
      r[i] += b[i];
    trim(r);
    return r;
  }
  RationalPoly neg(const RationalPoly& a) const {
    RationalPoly r = a;
    for (auto& c : r)
      c = -c;
    return r;
  }
  RationalPoly sub(const RationalPoly& a, const RationalPoly& b) const { return add(a, neg(b)); }
  RationalPoly mul(const RationalPoly& a, const RationalPoly& b) const {
    if (a.empty() || b.empty())
      return {};
    RationalPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j)
        r[i + j] += a[i] * b[j];
    trim(r);
    return r;
  }
  RationalPoly div(const RationalPoly& a, const RationalPoly& b) const {
    if (b.size() != 1)
      throw Error(Errc::parse, "division only by nonzero constants");
    RationalPoly r = a;
    for (auto& c : r)
      c /= b[0];
    return r;
  }
  RationalPoly pow(const RationalPoly& a, long n) const {
    if (n < 0)
      throw Error(Errc::parse, "negative exponent");
    RationalPoly r{1};
    for (long i = 0; i < n; ++i)
      r = mul(r, a);
    return r;
  }
};

} // namespace

RationalPoly parse_rational_poly(std::string_view text, long* p, long* prec) {
  std::string s(text);
  static const std::regex suffix(R"(\(\s*over\s+Q_(\d+)\s*(?:,\s*prec\s*=\s*(\d+)\s*)?\)\s*$)");
  std::smatch m;
  if (std::regex_search(s, m, suffix)) {
    if (p)
      *p = std::stol(m[1].str());
    if (prec && m[2].matched)
      *prec = std::stol(m[2].str());
    s = s.substr(0, static_cast<std::size_t>(m.position(0)));
  }
  RationalPolyBuilder b;
  ExprParser<RationalPolyBuilder> parser(b, s);
  return parser.parse();
}

std::string format_rational_poly(const RationalPoly& f) {
  std::string out;
  for (std::size_t k = f.size(); k-- > 0;) {
    mpq_class c = f[k];
    if (c == 0)
      continue;
    bool neg = c < 0;
    if (neg)
      c = -c;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    std::string mono = k == 0 ? "" : (k == 1 ? "X" : "X^" + std::to_string(k));
    if (mono.empty())
      out += rational_to_string(c);
    else if (c == 1)
      out += mono;
    else
      out += rational_to_string(c) + "*" + mono;
  }
  return out.empty() ? "0" : out;
}

std::string format_rational_poly(const RationalPoly& f, long p, long prec) {
  return format_rational_poly(f) + " (over Q_" + std::to_string(p) +
         ", prec=" + std::to_string(prec) + ")";
}

PAdicPoly to_padic(const RationalPoly& f, long p, long precision) {
  PAdicPoly out;
  for (const auto& c : f)
    out.push_back(c == 0 ? PAdicNumber(p) : PAdicNumber::from_rational(p, c, precision));
  return out;
}

NewtonPolygon newton_polygon(const PAdicPoly& f) {
  std::vector<CoefficientValuation> pts;
  for (std::size_t i = 0; i < f.size(); ++i)
    pts.push_back({static_cast<long>(i), f[i].valuation()});
  return newton_polygon(pts);
}

PAdicNumber padic_determinant(std::vector<std::vector<PAdicNumber>> m) {
  std::size_t n = m.size();
  if (n == 0)
    throw Error(Errc::precondition, "empty matrix");
  long p = m[0][0].p();
  std::optional<PAdicNumber> det;
  bool negate = false;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = n;
    for (std::size_t r = c; r < n; ++r) {
      if (m[r][c].is_zero_to_precision())
        continue;
      if (pivot == n || m[r][c].valuation_lower_bound() < m[pivot][c].valuation_lower_bound())
        pivot = r;
    }
    if (pivot == n) {
      // Remaining block vanishes to precision: bound det by column minima.
      long bound = det ? det->valuation_lower_bound() : 0;
      for (std::size_t cc = c; cc < n; ++cc) {
        long mn = PAdicNumber::kExact;
        for (std::size_t r = c; r < n; ++r)
          mn = std::min(mn, m[r][cc].valuation_lower_bound());
        bound = mn >= PAdicNumber::kExact ? PAdicNumber::kExact : bound + mn;
        if (bound >= PAdicNumber::kExact)
          return PAdicNumber(p);
      }
      return PAdicNumber::zero(p, bound);
    }
    if (pivot != c) {
      std::swap(m[pivot], m[c]);
      negate = !negate;
    }
    det = det ? *det * m[c][c] : m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c].is_exact_zero())
        continue;
      PAdicNumber factor = m[r][c] / m[c][c];
      for (std::size_t cc = c; cc < n; ++cc)
        m[r][cc] = m[r][cc] - factor * m[c][cc];
    }
  }
  return negate ? -*det : *det;
}

PAdicNumber resultant(const PAdicPoly& f_in, const PAdicPoly& g_in) {
  auto trimmed = [](PAdicPoly f) {
    while (!f.empty() && f.back().is_zero_to_precision())
      f.pop_back();
    return f;
  };
  PAdicPoly f = trimmed(f_in), g = trimmed(g_in);
  if (f.empty())
    throw Error(Errc::precondition, "resultant with the zero polynomial");
  long p = f[0].p();
  if (g.empty())
    return PAdicNumber(p);
  std::size_t n = f.size() - 1, m = g.size() - 1;
  std::size_t dim = n + m;
  if (dim == 0)
    return PAdicNumber::from_rational(p, 1, f[0].precision());
  std::vector<std::vector<PAdicNumber>> s(dim, std::vector<PAdicNumber>(dim, PAdicNumber(p)));
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t i = 0; i <= n; ++i)
      s[r][r + i] = f[n - i];
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j <= m; ++j)
      s[m + r][r + j] = g[m - j];
  return padic_determinant(std::move(s));
}

std::shared_ptr<const PAdicExtension>
PAdicExtension::create(long p, const RationalPoly& f, long precision,
                       bool asserted_irreducible) {
  if (!is_prime(p))
    throw Error(Errc::precondition, std::to_string(p) + " is not prime");
  if (f.size() < 2)
    throw Error(Errc::precondition, "defining polynomial must have degree >= 1");
  std::shared_ptr<PAdicExtension> ext(new PAdicExtension());
  ext->p_ = p;
  ext->prec_ = precision;
  ext->defining_ = f;
  RationalPoly monic = f;
  for (auto& c : monic)
    c /= f.back();
  ext->monic_ = to_padic(monic, p, precision);
  try {
    ext->cert_ = fundamental_equality_data(p, f, precision, asserted_irreducible);
  } catch (const Error& e) {
    if (e.code() != Errc::irreducibility)
      throw;
  }
  return ext;
}

PAdicExtElement::PAdicExtElement(ExtRef ext, PAdicPoly coeffs)
    : ext_(std::move(ext)), coeffs_(std::move(coeffs)) {
  std::size_t n = static_cast<std::size_t>(ext_->degree());
  long p = ext_->p();
  const auto& f = ext_->monic();
  for (std::size_t d = coeffs_.size(); d-- > n;) {
    PAdicNumber c = coeffs_[d];
    if (!c.is_exact_zero())
      for (std::size_t i = 0; i < n; ++i)
        coeffs_[d - n + i] = coeffs_[d - n + i] - c * f[i];
    coeffs_.pop_back();
  }
  coeffs_.resize(n, PAdicNumber(p));
}

PAdicExtElement PAdicExtElement::from_rational_poly(ExtRef ext, const RationalPoly& g) {
  auto coeffs = to_padic(g, ext->p(), ext->precision());
  return PAdicExtElement(std::move(ext), std::move(coeffs));
}

PAdicExtElement PAdicExtElement::generator(ExtRef ext) {
  return from_rational_poly(std::move(ext), {0, 1});
}

PAdicExtElement PAdicExtElement::constant(ExtRef ext, const mpq_class& c) {
  return from_rational_poly(std::move(ext), {c});
}

static void require_same_ext(const PAdicExtElement& a, const PAdicExtElement& b) {
  if (a.extension() != b.extension() &&
      (a.extension()->p() != b.extension()->p() ||
       a.extension()->defining() != b.extension()->defining()))
    throw Error(Errc::descriptor_mismatch, "elements of different extensions");
}

PAdicExtElement operator+(const PAdicExtElement& a, const PAdicExtElement& b) {
  require_same_ext(a, b);
  PAdicPoly c = a.coeffs_;
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = c[i] + b.coeffs_[i];
  return PAdicExtElement(a.ext_, std::move(c));
}

PAdicExtElement operator-(const PAdicExtElement& a, const PAdicExtElement& b) {
  require_same_ext(a, b);
  PAdicPoly c = a.coeffs_;
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = c[i] - b.coeffs_[i];
  return PAdicExtElement(a.ext_, std::move(c));
}

PAdicExtElement operator*(const PAdicExtElement& a, const PAdicExtElement& b) {
  require_same_ext(a, b);
  std::size_t n = a.coeffs_.size();
  PAdicPoly prod(2 * n - 1, PAdicNumber(a.ext_->p()));
  for (std::size_t i = 0; i < n; ++i) {
    if (a.coeffs_[i].is_exact_zero())
      continue;
    for (std::size_t j = 0; j < n; ++j)
      if (!b.coeffs_[j].is_exact_zero())
        prod[i + j] = prod[i + j] + a.coeffs_[i] * b.coeffs_[j];
  }
  return PAdicExtElement(a.ext_, std::move(prod));
}

PAdicExtElement PAdicExtElement::pow(unsigned n) const {
  PAdicExtElement result = constant(ext_, 1);
  PAdicExtElement base = *this;
  while (n) {
    if (n & 1)
      result = result * base;
    n >>= 1;
    if (n)
      base = base * base;
  }
  return result;
}

std::vector<std::vector<PAdicNumber>> PAdicExtElement::multiplication_matrix() const {
  std::size_t n = coeffs_.size();
  std::vector<std::vector<PAdicNumber>> m(n, std::vector<PAdicNumber>(n, PAdicNumber(ext_->p())));
  PAdicExtElement col = *this;
  PAdicExtElement eta = generator(ext_);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i)
      m[i][j] = col.coeffs_[i];
    if (j + 1 < n)
      col = col * eta;
  }
  return m;
}

PAdicNumber PAdicExtElement::norm() const {
  return padic_determinant(multiplication_matrix());
}

PAdicExtElement PAdicExtElement::inverse() const {
  auto m = multiplication_matrix();
  std::size_t n = m.size();
  long p = ext_->p();
  std::vector<PAdicNumber> rhs(n, PAdicNumber(p));
  rhs[0] = PAdicNumber::from_rational(p, 1, ext_->precision());
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i)
    perm[i] = i;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = n;
    for (std::size_t r = c; r < n; ++r)
      if (!m[r][c].is_zero_to_precision() &&
          (pivot == n || m[r][c].valuation_lower_bound() < m[pivot][c].valuation_lower_bound()))
        pivot = r;
    if (pivot == n)
      throw Error(Errc::precision, "element is not invertible at working precision");
    std::swap(m[pivot], m[c]);
    std::swap(rhs[pivot], rhs[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c].is_exact_zero())
        continue;
      PAdicNumber factor = m[r][c] / m[c][c];
      for (std::size_t cc = c; cc < n; ++cc)
        m[r][cc] = m[r][cc] - factor * m[c][cc];
      rhs[r] = rhs[r] - factor * rhs[c];
    }
  }
  PAdicPoly x(n, PAdicNumber(p));
  for (std::size_t i = 0; i < n; ++i)
    x[i] = rhs[i] / m[i][i];
  return PAdicExtElement(ext_, std::move(x));
}

PAdicExtElement operator/(const PAdicExtElement& a, const PAdicExtElement& b) {
  require_same_ext(a, b);
  return a * b.inverse();
}

PAdicExtElement ext_arith(const PAdicExtElement& a, const PAdicExtElement& b, ExtOp op) {
  switch (op) {
  case ExtOp::add: return a + b;
  case ExtOp::sub: return a - b;
  case ExtOp::mul: return a * b;
  case ExtOp::div: return a / b;
  }
  throw Error(Errc::usage, "unknown extension operation");
}

bool PAdicExtElement::equals_at_precision(const PAdicExtElement& other) const {
  auto d = *this - other;
  for (const auto& c : d.coeffs_)
    if (!c.is_zero_to_precision())
      return false;
  return true;
}

std::string PAdicExtElement::to_string() const {
  std::string s;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    if (coeffs_[i].is_exact_zero())
      continue;
    if (!s.empty())
      s += " + ";
    s += "(" + coeffs_[i].to_string() + ")";
    if (i > 0)
      s += i == 1 ? "*eta" : "*eta^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

Value ext_valuation(const PAdicExtElement& a) {
  const auto& ext = *a.extension();
  if (!ext.certification())
    throw Error(Errc::irreducibility,
                "defining polynomial is not certified irreducible over Q_p");
  bool all_zero = std::all_of(a.coeffs().begin(), a.coeffs().end(),
                              [](const PAdicNumber& c) { return c.is_exact_zero(); });
  if (all_zero)
    return Value::infinity();
  PAdicNumber r = resultant(ext.monic(), a.coeffs());
  auto v = r.valuation();
  if (!v.is_exact())
    throw Error(Errc::precision, "resultant valuation indeterminate: " + v.to_string());
  return Value::rank1(v.value().q() / ext.degree());
}

Value ext_valuation(long p, const RationalPoly& f, const RationalPoly& g,
                    long denominator_bound, bool asserted_irreducible) {
  long n = static_cast<long>(f.size()) - 1;
  long prec = 4 * n * std::max(1L, denominator_bound);
  for (int attempt = 0; attempt < 3; ++attempt, prec *= 2) {
    auto ext = PAdicExtension::create(p, f, prec, asserted_irreducible);
    try {
      return ext_valuation(PAdicExtElement::from_rational_poly(ext, g));
    } catch (const Error& e) {
      if (e.code() != Errc::precision)
        throw;
    }
  }
  throw Error(Errc::precision, "resultant still indeterminate after three precision raises");
}

FundamentalData fundamental_equality_data(long p, const RationalPoly& f, long precision,
                                          bool asserted_irreducible) {
  long n = static_cast<long>(f.size()) - 1;
  if (n < 1)
    throw Error(Errc::precondition, "defining polynomial must have degree >= 1");
  if (precision <= 0)
    precision = 4 * n * n;
  PAdicPoly fp = to_padic(f, p, precision);
  NewtonPolygon polygon = newton_polygon(fp);
  std::optional<bool> reduction;
  bool integral = std::all_of(fp.begin(), fp.end(), [](const PAdicNumber& c) {
    return c.valuation_lower_bound() >= 0;
  });
  if (integral && fp.back().valuation_lower_bound() == 0) {
    auto field = FiniteField::prime(p);
    std::vector<Elt> red;
    for (const auto& c : f) {
      mpq_class q = c;
      mpz_class m(p);
      mpz_class num = q.get_num() % m, den = q.get_den() % m;
      mpz_class r = num * inv_mod(den, m);
      red.push_back(field->from_int(mod_pos(r, m).get_si()));
    }
    reduction = ff_poly_irreducible(*field, red);
  }
  return deduce_fundamental_data(polygon, n, reduction, asserted_irreducible);
}

} // namespace valfield
