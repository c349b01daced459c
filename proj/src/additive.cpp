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
#include <valfield/additive.hpp>
#include <valfield/error.hpp>

#include <algorithm>
#include <array>
#include <climits>
#include <numeric>
#include <regex>
#include <sstream>

namespace valfield {

namespace {

// k with p^k == e, if any.
std::optional<int> frobenius_power(unsigned e, long p) {
  int k = 0;
  unsigned long x = 1;
  while (x < e) {
    x *= static_cast<unsigned long>(p);
    ++k;
  }
  if (x == e)
    return k;
  return std::nullopt;
}

long ipow(long p, int k) {
  long r = 1;
  for (int i = 0; i < k; ++i)
    r *= p;
  return r;
}

long floor_div(long a, long b) {
  long q = a / b;
  return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

long ceil_div(long a, long b) { return -floor_div(-a, b); }

void require_field(const FieldRef& a, const FieldRef& b) {
  if (!a->same_as(*b))
    throw Error(Errc::descriptor_mismatch, "polynomials over different fields");
}

} // namespace

AdditivePolynomial::AdditivePolynomial(FieldRef field, int nvars)
    : field_(std::move(field)), nvars_(nvars) {
  if (nvars < 0)
    throw Error(Errc::precondition, "negative variable count");
}

AdditivePolynomial AdditivePolynomial::monomial(FieldRef field, int nvars, int var, int k,
                                                const LaurentSeries& c) {
  AdditivePolynomial f(std::move(field), nvars);
  f.add_term(var, k, c);
  return f;
}

void AdditivePolynomial::add_term(int var, int k, const LaurentSeries& c) {
  if (var < 0 || var >= nvars_ || k < 0)
    throw Error(Errc::precondition, "additive term out of range");
  require_field(field_, c.field());
  Key key{var, k};
  auto it = terms_.find(key);
  LaurentSeries sum = it == terms_.end() ? c : it->second + c;
  if (sum.is_exact_zero()) {
    if (it != terms_.end())
      terms_.erase(it);
  } else {
    terms_.insert_or_assign(key, std::move(sum));
  }
}

LaurentSeries AdditivePolynomial::coefficient(int var, int k) const {
  auto it = terms_.find({var, k});
  return it == terms_.end() ? LaurentSeries::zero(field_) : it->second;
}

std::optional<int> AdditivePolynomial::degree(int var) const {
  std::optional<int> d;
  for (const auto& [key, c] : terms_)
    if (key.first == var && !c.is_zero_to_precision())
      d = key.second;
  return d;
}

AdditivePolynomial AdditivePolynomial::without_vanishing_terms() const {
  AdditivePolynomial r(field_, nvars_);
  for (const auto& [key, c] : terms_)
    if (!c.is_zero_to_precision())
      r.terms_.emplace(key, c);
  return r;
}

AdditivePolynomial AdditivePolynomial::part(int var) const {
  AdditivePolynomial r(field_, 1);
  for (const auto& [key, c] : terms_)
    if (key.first == var)
      r.terms_.emplace(Key{0, key.second}, c);
  return r;
}

AdditivePolynomial operator+(const AdditivePolynomial& a, const AdditivePolynomial& b) {
  require_field(a.field_, b.field_);
  AdditivePolynomial r(a.field_, std::max(a.nvars_, b.nvars_));
  r.terms_ = a.terms_;
  for (const auto& [key, c] : b.terms_)
    r.add_term(key.first, key.second, c);
  return r;
}

AdditivePolynomial AdditivePolynomial::operator-() const {
  AdditivePolynomial r(field_, nvars_);
  for (const auto& [key, c] : terms_)
    r.terms_.emplace(key, -c);
  return r;
}

AdditivePolynomial operator-(const AdditivePolynomial& a, const AdditivePolynomial& b) {
  return a + (-b);
}

LaurentSeries AdditivePolynomial::evaluate(std::span<const LaurentSeries> args) const {
  if (static_cast<int>(args.size()) != nvars_)
    throw Error(Errc::precondition, "arity mismatch: expected " + std::to_string(nvars_) +
                                        " arguments, got " + std::to_string(args.size()));
  LaurentSeries sum = LaurentSeries::zero(field_);
  for (const auto& [key, c] : terms_)
    sum = sum + c * args[static_cast<std::size_t>(key.first)].frobenius(key.second);
  return sum;
}

AdditivePolynomial AdditivePolynomial::compose(std::span<const AdditivePolynomial> images) const {
  if (static_cast<int>(images.size()) != nvars_)
    throw Error(Errc::precondition, "composition arity mismatch");
  int m = images.empty() ? 0 : images[0].nvars_;
  AdditivePolynomial r(field_, m);
  for (const auto& [key, c] : terms_) {
    const auto& img = images[static_cast<std::size_t>(key.first)];
    if (img.nvars_ != m)
      throw Error(Errc::precondition, "composition images differ in variable count");
    for (const auto& [ik, a] : img.terms_)
      r.add_term(ik.first, ik.second + key.second, c * a.frobenius(key.second));
  }
  return r;
}

Polynomial AdditivePolynomial::to_polynomial() const {
  Polynomial f(field_, nvars_);
  for (const auto& [key, c] : terms_) {
    Polynomial::Exponents e(static_cast<std::size_t>(nvars_), 0);
    e[static_cast<std::size_t>(key.first)] = static_cast<unsigned>(ipow(p(), key.second));
    f.add_term(e, c);
  }
  return f;
}

std::string AdditivePolynomial::to_string() const { return to_polynomial().to_string(); }

AdditivePolynomial AdditivePolynomial::from_polynomial(const Polynomial& f) {
  AdditivePolynomial r(f.field(), f.nvars());
  for (const auto& [e, c] : f.terms()) {
    int var = -1;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0)
        continue;
      if (var >= 0)
        throw Error(Errc::parse, "mixed monomial in an additive polynomial");
      var = static_cast<int>(i);
    }
    if (var < 0)
      throw Error(Errc::parse, "constant term in an additive polynomial");
    auto k = frobenius_power(e[static_cast<std::size_t>(var)], f.field()->p());
    if (!k)
      throw Error(Errc::parse, "exponent " + std::to_string(e[static_cast<std::size_t>(var)]) +
                                   " is not a power of " + std::to_string(f.field()->p()));
    r.add_term(var, *k, c);
  }
  return r;
}

AdditivePolynomial AdditivePolynomial::parse(const FieldRef& field, std::string_view text,
                                             int nvars) {
  return from_polynomial(Polynomial::parse(field, text, nvars));
}

LaurentSeries PPolynomial::evaluate(std::span<const LaurentSeries> args) const {
  LaurentSeries v = additive.evaluate(args);
  return constant ? v + *constant : v;
}

std::string PPolynomial::to_string() const {
  Polynomial f = additive.to_polynomial();
  if (constant)
    f = f + Polynomial::constant(additive.field(), additive.nvars(), *constant);
  return f.to_string();
}

PPolynomial PPolynomial::parse(const FieldRef& field, std::string_view text, int nvars) {
  Polynomial f = Polynomial::parse(field, text, nvars);
  Polynomial::Exponents zero(static_cast<std::size_t>(f.nvars()), 0);
  LaurentSeries c = f.coefficient(zero);
  std::optional<LaurentSeries> constant;
  if (!c.is_exact_zero()) {
    constant = c;
    f = f - Polynomial::constant(field, f.nvars(), c);
  }
  return {AdditivePolynomial::from_polynomial(f), constant};
}

namespace {

// Univariate pieces of a decomposition in progress. cols[r] is the
// contribution of this piece's variable to original variable r.
struct Piece {
  AdditivePolynomial g;
  std::vector<AdditivePolynomial> cols;
  long birth = 0;

  void substitute(const AdditivePolynomial& image) {
    std::array<AdditivePolynomial, 1> arg{image};
    g = g.compose(arg).without_vanishing_terms();
    for (auto& c : cols)
      c = c.compose(arg);
  }
};

constexpr long kMergeCap = 10000;

// Coordinates of b in the basis t^l over K^{p^nu}: b = sum t^l beta_l^{p^nu}.
std::vector<LaurentSeries> lead_coordinates(const LaurentSeries& b, int nu, long q_nu) {
  const FieldRef& field = b.field();
  std::vector<LaurentSeries> beta;
  long stop = std::min(b.end(), b.precision());
  for (long l = 0; l < q_nu; ++l) {
    long e0 = ceil_div(b.low() - l, q_nu);
    std::vector<Elt> coeffs;
    for (long e = e0; l + e * q_nu < stop; ++e) {
      Elt c = b.coeff(l + e * q_nu);
      for (int k = 0; k < nu; ++k)
        c = field->frobenius_inverse(c);
      coeffs.push_back(c);
    }
    long prec = b.is_exact() ? LaurentSeries::kExact : ceil_div(b.precision() - l, q_nu);
    beta.emplace_back(field, e0, std::move(coeffs), prec);
  }
  return beta;
}

LaurentSeries exact_part(const LaurentSeries& x) {
  return LaurentSeries(x.field(), x.low(), {x.coeffs().begin(), x.coeffs().end()});
}

// A row (visited newest first) whose lead coordinates depend on the rows
// before it, with coefficients d (d[row] = 1) such that sum d_i^{p^nu} b_i
// vanishes to relative order `work` in the coordinates.
std::optional<std::pair<std::size_t, std::vector<LaurentSeries>>>
find_dependency(const std::vector<std::vector<LaurentSeries>>& beta,
                const std::vector<std::size_t>& order, long work) {
  struct Pivot {
    std::vector<LaurentSeries> row, comb;
    std::size_t col;
  };
  const std::size_t m = beta.size();
  const FieldRef& field = beta[0][0].field();
  std::vector<Pivot> pivots;
  std::vector<bool> used(beta[0].size(), false);
  for (std::size_t r : order) {
    std::vector<LaurentSeries> row = beta[r];
    std::vector<LaurentSeries> comb(m, LaurentSeries::zero(field));
    comb[r] = LaurentSeries::constant(field, field->one());
    long scale = LaurentSeries::kExact;
    for (const auto& x : row)
      scale = std::min(scale, x.valuation_lower_bound());
    for (const auto& pv : pivots) {
      const LaurentSeries& x = row[pv.col];
      if (x.is_zero_to_precision())
        continue;
      const LaurentSeries& y = pv.row[pv.col];
      LaurentSeries q = exact_part(x.divide(y, x.low() - y.low() + work));
      for (std::size_t c = 0; c < row.size(); ++c)
        row[c] = row[c] - q * pv.row[c];
      for (std::size_t i = 0; i < m; ++i)
        comb[i] = comb[i] - q * pv.comb[i];
    }
    std::size_t best = row.size();
    for (std::size_t c = 0; c < row.size(); ++c)
      if (!used[c] && (best == row.size() ||
                       row[c].valuation_lower_bound() < row[best].valuation_lower_bound()))
        best = c;
    if (best == row.size() || row[best].valuation_lower_bound() >= scale + work / 2) {
      for (auto& c : comb)
        c = exact_part(c);
      return std::pair{r, std::move(comb)};
    }
    used[best] = true;
    pivots.push_back({std::move(row), std::move(comb), best});
  }
  return std::nullopt;
}

} // namespace

static Decomposition decompose_at(const AdditivePolynomial& f_in, long work_precision) {
  const AdditivePolynomial f = f_in.without_vanishing_terms();
  const FieldRef& field = f.field();
  const long p = field->p();
  const int n = f.nvars();
  auto one = LaurentSeries::constant(field, field->one());
  auto identity = AdditivePolynomial::monomial(field, 1, 0, 0, one);

  std::vector<Piece> pieces;
  long births = 0;
  for (int r = 0; r < n; ++r) {
    AdditivePolynomial g = f.part(r);
    if (g.is_zero())
      continue;
    Piece piece{g, std::vector<AdditivePolynomial>(static_cast<std::size_t>(n),
                                                    AdditivePolynomial(field, 1))};
    piece.cols[static_cast<std::size_t>(r)] = identity;
    piece.birth = births++;
    pieces.push_back(std::move(piece));
  }
  Decomposition d;
  auto lead_of = [](const Piece& piece) { return piece.g.coefficient(0, *piece.g.degree(0)); };
  // Adds sum_i pieces[i](coef_i Z^{p^shift}) to `target` and drops the
  // resulting lead when it has cancelled to working precision.
  auto absorb = [&](Piece& target, const std::vector<std::size_t>& rows,
                    const std::vector<LaurentSeries>& coef, int shift) {
    const int top = *target.g.degree(0);
    const long vb = target.g.coefficient(0, top).low();
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (coef[k].is_exact_zero())
        continue;
      std::array<AdditivePolynomial, 1> arg{
          AdditivePolynomial::monomial(field, 1, 0, shift, coef[k])};
      const Piece& src = pieces[rows[k]];
      target.g = target.g + src.g.compose(arg);
      for (std::size_t c = 0; c < target.cols.size(); ++c)
        target.cols[c] = target.cols[c] + src.cols[c].compose(arg);
    }
    LaurentSeries lead = target.g.coefficient(0, top);
    if (lead.valuation_lower_bound() >= vb + work_precision / 2)
      target.g.add_term(0, top, -lead);
    target.g = target.g.without_vanishing_terms();
    ++d.merges;
  };

  long iterations = 0;
  int nu = 0;
  while (true) {
    if (++iterations > kMergeCap)
      throw Error(Errc::budget_exceeded, "decomposition did not settle");
    std::erase_if(pieces, [](const Piece& piece) { return piece.g.is_zero(); });
    if (pieces.empty())
      break;
    nu = *pieces[0].g.degree(0);
    for (const auto& piece : pieces)
      nu = std::min(nu, *piece.g.degree(0));
    const long q_nu = ipow(p, nu);
    std::vector<std::size_t> low, high;
    for (std::size_t i = 0; i < pieces.size(); ++i)
      (*pieces[i].g.degree(0) == nu ? low : high).push_back(i);
    std::sort(low.begin(), low.end(), [&](std::size_t a, std::size_t b) {
      return pieces[a].birth > pieces[b].birth;
    });
    std::vector<std::vector<LaurentSeries>> beta;
    for (std::size_t i : low)
      beta.push_back(lead_coordinates(lead_of(pieces[i]), nu, q_nu));
    std::vector<std::size_t> order(low.size());
    std::iota(order.begin(), order.end(), 0);

    // Lowest-degree leads linearly dependent over K^{p^nu}: the substitution
    // Y_i = Y_i' + d_i Y_r gives piece r the vanishing lead sum d_i^{p^nu} b_i.
    if (low.size() > 1) {
      if (auto dep = find_dependency(beta, order, work_precision)) {
        auto [r, coef] = std::move(*dep);
        std::vector<std::size_t> rows;
        std::vector<LaurentSeries> cs;
        for (std::size_t k = 0; k < low.size(); ++k)
          if (k != r) {
            rows.push_back(low[k]);
            cs.push_back(coef[k]);
          }
        absorb(pieces[low[r]], rows, cs, 0);
        continue;
      }
    }

    // Equal lead classes mod p^nu: Y_i = Y_i' - c0 Y_j with c0 the p^nu-th
    // root of the class-0 part of b_j / b_i raises v(b_j). The lower lead
    // valuation reduces, ties go to the older piece.
    auto lead_class = [&](std::size_t i) {
      long w = lead_of(pieces[i]).low();
      return ((w % q_nu) + q_nu) % q_nu;
    };
    std::size_t ti = pieces.size(), tj = pieces.size();
    for (std::size_t a = 0; a < low.size() && ti == pieces.size(); ++a)
      for (std::size_t b = a + 1; b < low.size(); ++b)
        if (lead_class(low[a]) == lead_class(low[b])) {
          ti = low[a];
          tj = low[b];
          break;
        }
    if (ti != pieces.size()) {
      auto key = [&](std::size_t i) { return std::pair{lead_of(pieces[i]).low(), pieces[i].birth}; };
      if (key(tj) < key(ti))
        std::swap(ti, tj);
      const LaurentSeries bi = lead_of(pieces[ti]);
      const LaurentSeries bj = lead_of(pieces[tj]);
      LaurentSeries r = bj.divide(bi, bj.low() - bi.low() + work_precision);
      long rend = std::min(r.precision(), r.end());
      std::vector<Elt> c0;
      long c0_low = ceil_div(r.low(), q_nu);
      for (long e = c0_low * q_nu; e < rend; e += q_nu) {
        Elt c = r.coeff(e);
        for (int k = 0; k < nu; ++k)
          c = field->frobenius_inverse(c);
        c0.push_back(c);
      }
      absorb(pieces[tj], {ti}, {-LaurentSeries(field, c0_low, std::move(c0))}, 0);
      continue;
    }

    // A higher lead in the span of the lowest leads: right division
    // Y_i = Y_i' + d_i Z^{p^{kappa - nu}} lowers the degree of that piece.
    bool reduced = false;
    for (std::size_t h : high) {
      const int kappa = *pieces[h].g.degree(0);
      auto rows = beta;
      rows.push_back(lead_coordinates(lead_of(pieces[h]), nu, q_nu));
      auto ord = order;
      ord.push_back(low.size());
      auto dep = find_dependency(rows, ord, work_precision);
      if (!dep || dep->first != low.size())
        continue;
      dep->second.pop_back();
      absorb(pieces[h], low, dep->second, kappa - nu);
      reduced = true;
      break;
    }
    if (reduced)
      continue;
    if (high.empty())
      break;

    // Raise the lowest pieces to the next degree via Y = sum t^j Y_j^{p^s}.
    int next = *pieces[high[0]].g.degree(0);
    for (std::size_t h : high)
      next = std::min(next, *pieces[h].g.degree(0));
    std::vector<Piece> raised;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      if (*pieces[i].g.degree(0) != nu) {
        raised.push_back(std::move(pieces[i]));
        continue;
      }
      for (long j = 0; j < ipow(p, next - nu); ++j) {
        Piece copy = pieces[i];
        copy.substitute(AdditivePolynomial::monomial(
            field, 1, 0, next - nu, LaurentSeries::monomial(field, field->one(), j)));
        copy.birth = births++;
        raised.push_back(std::move(copy));
      }
    }
    pieces = std::move(raised);
  }
  d.nu = nu;
  const long q_nu = ipow(p, nu);


  // Lead valuations into [0, p^nu) via Y -> t^{-s} Y.
  for (auto& piece : pieces) {
    long s = floor_div(piece.g.coefficient(0, nu).low(), q_nu);
    if (s != 0)
      piece.substitute(AdditivePolynomial::monomial(
          field, 1, 0, 0, LaurentSeries::monomial(field, field->one(), -s)));
  }

  const int m = static_cast<int>(pieces.size());
  d.phi.assign(static_cast<std::size_t>(n), AdditivePolynomial(field, m));
  for (int i = 0; i < m; ++i) {
    const Piece& piece = pieces[static_cast<std::size_t>(i)];
    d.g.push_back(piece.g);
    d.leading.push_back(piece.g.coefficient(0, nu));
    for (int r = 0; r < n; ++r)
      for (const auto& [key, c] : piece.cols[static_cast<std::size_t>(r)].terms())
        d.phi[static_cast<std::size_t>(r)].add_term(i, key.second, c);
  }

  // f(phi) - sum g_i(Y_i), coefficientwise.
  AdditivePolynomial diff = f.compose(d.phi);
  for (int i = 0; i < m; ++i)
    for (const auto& [key, c] : d.g[static_cast<std::size_t>(i)].terms())
      diff.add_term(i, key.second, -c);
  for (const auto& [key, c] : diff.terms())
    d.identity_precision = std::min(d.identity_precision, c.valuation_lower_bound());
  return d;
}

LaurentSeries Decomposition::evaluate(std::span<const LaurentSeries> y) const {
  if (y.size() != g.size())
    throw Error(Errc::precondition, "decomposition arity mismatch");
  if (g.empty())
    throw Error(Errc::precondition, "empty decomposition has no field context");
  LaurentSeries sum = LaurentSeries::zero(g[0].field());
  for (std::size_t i = 0; i < g.size(); ++i)
    sum = sum + g[i].evaluate(y.subspan(i, 1));
  return sum;
}

std::vector<LaurentSeries> Decomposition::pull_back(std::span<const LaurentSeries> y) const {
  std::vector<LaurentSeries> out;
  for (const auto& ph : phi)
    out.push_back(ph.evaluate(y));
  return out;
}

std::string Decomposition::to_string() const {
  std::ostringstream os;
  os << "nu = " << nu << "\n";
  for (std::size_t i = 0; i < g.size(); ++i)
    os << "g" << i + 1 << " = " << g[i].to_string() << "\n";
  os << "b = (";
  for (std::size_t i = 0; i < leading.size(); ++i)
    os << (i ? ", " : "") << leading[i].to_string();
  os << ")\n";
  for (std::size_t r = 0; r < phi.size(); ++r)
    os << "X" << r + 1 << " = " << phi[r].to_string() << "\n";
  return os.str();
}

bool leading_valuations_independent(const Decomposition& d) {
  if (d.leading.empty())
    return true;
  long q_nu = ipow(d.leading[0].field()->p(), d.nu);
  std::vector<long> classes;
  for (const auto& b : d.leading) {
    auto v = b.valuation();
    if (!v.is_exact())
      return false;
    long w = v.value().q().get_num().get_si();
    classes.push_back(((w % q_nu) + q_nu) % q_nu);
  }
  std::sort(classes.begin(), classes.end());
  return std::adjacent_find(classes.begin(), classes.end()) == classes.end();
}

bool sampled_valuation_independence(const Decomposition& d, Rng& rng, int samples) {
  if (d.leading.empty())
    return true;
  const FieldRef& field = d.leading[0].field();
  for (int s = 0; s < samples; ++s) {
    LaurentSeries sum = LaurentSeries::zero(field);
    std::vector<ValuationResult> parts;
    for (const auto& b : d.leading) {
      if (rng.coin())
        continue;
      std::vector<Elt> coeffs;
      for (int i = 0; i < 3; ++i)
        coeffs.push_back(static_cast<Elt>(rng.range(0, static_cast<long>(field->size()) - 1)));
      LaurentSeries di(field, rng.range(-3, 3), std::move(coeffs));
      if (di.is_exact_zero())
        continue;
      LaurentSeries term = di.frobenius(d.nu) * b;
      parts.push_back(term.valuation());
      sum = sum + term;
    }
    if (parts.empty())
      continue;
    std::vector<Value> vals;
    for (const auto& v : parts)
      vals.push_back(v.value());
    Value mn = value_min(vals);
    auto got = sum.valuation();
    if (!got.is_exact() || got.value() != mn)
      return false;
  }
  return true;
}

long alpha_bound_integer(const std::optional<LaurentSeries>& constant, const Decomposition& d) {
  long best = 0;
  for (std::size_t i = 0; i < d.g.size(); ++i) {
    auto vb = d.leading[i].valuation();
    if (!vb.is_exact())
      throw Error(Errc::precision, "leading coefficient valuation indeterminate");
    long b = vb.value().q().get_num().get_si();
    if (constant) {
      if (constant->is_zero_to_precision() && !constant->is_exact())
        throw Error(Errc::precision, "constant valuation indeterminate");
      if (!constant->is_exact_zero())
        best = std::min(best, constant->low() - b);
    }
    for (const auto& [key, c] : d.g[i].terms())
      if (key.second < d.nu)
        best = std::min(best, c.valuation_lower_bound() - b);
  }
  return best - 1;
}

Value alpha_bound(const PPolynomial& h, const Decomposition& d) {
  return Value::rank1(alpha_bound_integer(h.constant, d));
}

TruncatedSubspace::TruncatedSubspace(FieldRef field, long low, long N, int ntags)
    : field_(std::move(field)), low_(low), N_(N), ntags_(ntags) {
  if (N < low)
    throw Error(Errc::precondition, "subspace window is empty");
}

std::vector<long> TruncatedSubspace::coordinates(const LaurentSeries& x) const {
  const std::size_t k = static_cast<std::size_t>(field_->k());
  std::vector<long> v(static_cast<std::size_t>(N_ - low_) * k, 0);
  if (x.precision() < N_)
    throw Error(Errc::precision, "series known only to " + std::to_string(x.precision()) +
                                     ", need " + std::to_string(N_));
  for (long e = x.low(); e < std::min(x.end(), N_); ++e) {
    Elt c = x.coeff(e);
    if (c == 0)
      continue;
    if (e < low_)
      throw Error(Errc::precondition, "series extends below the subspace window");
    auto digits = field_->coeffs(c);
    for (std::size_t j = 0; j < k && j < digits.size(); ++j)
      v[static_cast<std::size_t>(e - low_) * k + j] = digits[j];
  }
  return v;
}

LaurentSeries TruncatedSubspace::series(const std::vector<long>& v) const {
  const std::size_t k = static_cast<std::size_t>(field_->k());
  std::vector<Elt> coeffs;
  for (std::size_t e = 0; e * k < v.size(); ++e)
    coeffs.push_back(field_->from_coeffs(std::span<const long>(v.data() + e * k, k)));
  return LaurentSeries(field_, low_, std::move(coeffs), N_);
}

namespace {

std::size_t first_nonzero(const std::vector<long>& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0)
      return i;
  return v.size();
}

// a -= s * b over F_p, tags alongside.
void axpy(std::vector<long>& a, long s, const std::vector<long>& b, long p) {
  for (std::size_t i = 0; i < a.size(); ++i)
    a[i] = ((a[i] - s * b[i]) % p + p) % p;
}

long inv_mod_p(long a, long p) {
  long r = 1, e = p - 2, b = a % p;
  while (e) {
    if (e & 1)
      r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

void tag_axpy(std::vector<LaurentSeries>& a, long s, const std::vector<LaurentSeries>& b,
              const FieldRef& field) {
  Elt c = field->from_int(s);
  for (std::size_t i = 0; i < a.size(); ++i)
    a[i] = a[i] - b[i].scale(c);
}

} // namespace

bool TruncatedSubspace::insert(const LaurentSeries& x, std::vector<LaurentSeries> tags) {
  if (static_cast<int>(tags.size()) != ntags_)
    throw Error(Errc::precondition, "tag count mismatch");
  const long p = field_->p();
  std::vector<long> v = coordinates(x);
  for (const auto& row : rows_)
    if (long s = v[row.pivot]; s != 0) {
      axpy(v, s, row.v, p);
      tag_axpy(tags, s, row.tags, field_);
    }
  std::size_t piv = first_nonzero(v);
  if (piv == v.size())
    return false;
  long inv = inv_mod_p(v[piv], p);
  for (auto& c : v)
    c = c * inv % p;
  for (auto& t : tags)
    t = t.scale(field_->from_int(inv));
  for (auto& row : rows_)
    if (long s = row.v[piv]; s != 0) {
      axpy(row.v, s, v, p);
      tag_axpy(row.tags, s, tags, field_);
    }
  Row row{std::move(v), piv, std::move(tags)};
  auto it = std::lower_bound(rows_.begin(), rows_.end(), piv,
                             [](const Row& r, std::size_t q) { return r.pivot < q; });
  rows_.insert(it, std::move(row));
  return true;
}

LaurentSeries TruncatedSubspace::reduce(const LaurentSeries& z,
                                        std::vector<LaurentSeries>* combination) const {
  const long p = field_->p();
  std::vector<long> v = coordinates(z);
  std::vector<LaurentSeries> tags(static_cast<std::size_t>(ntags_), LaurentSeries::zero(field_));
  for (const auto& row : rows_)
    if (long s = v[row.pivot]; s != 0) {
      axpy(v, s, row.v, p);
      // tags accumulate the subtracted element, so they add with +s.
      tag_axpy(tags, p - s, row.tags, field_);
    }
  if (combination)
    *combination = std::move(tags);
  return series(v);
}

TruncatedSubspace TruncatedSubspace::integral_part() const {
  TruncatedSubspace out(field_, 0, N_, 0);
  const std::size_t k = static_cast<std::size_t>(field_->k());
  const std::size_t offset = low_ < 0 ? static_cast<std::size_t>(-low_) * k : 0;
  if (low_ > 0)
    throw Error(Errc::precondition, "window starts above zero");
  for (const auto& row : rows_)
    if (row.pivot >= offset) {
      Row r{std::vector<long>(row.v.begin() + static_cast<std::ptrdiff_t>(offset), row.v.end()),
            row.pivot - offset, {}};
      out.rows_.push_back(std::move(r));
    }
  return out;
}

std::vector<std::vector<long>> TruncatedSubspace::canonical() const {
  std::vector<std::vector<long>> m;
  for (const auto& row : rows_)
    m.push_back(row.v);
  return m;
}

std::vector<LaurentSeries> TruncatedSubspace::basis() const {
  std::vector<LaurentSeries> out;
  for (const auto& row : rows_)
    out.push_back(series(row.v));
  return out;
}

std::vector<LaurentSeries> TruncatedSubspace::elements(std::size_t max_dimension) const {
  if (rows_.size() > max_dimension)
    throw Error(Errc::budget_exceeded, "subspace too large to list");
  const long p = field_->p();
  std::vector<LaurentSeries> out;
  std::vector<long> coef(rows_.size(), 0);
  while (true) {
    std::vector<long> v(static_cast<std::size_t>(N_ - low_) * static_cast<std::size_t>(field_->k()), 0);
    for (std::size_t r = 0; r < rows_.size(); ++r)
      if (coef[r])
        axpy(v, p - coef[r], rows_[r].v, p);
    out.push_back(series(v));
    std::size_t pos = 0;
    while (pos < coef.size() && ++coef[pos] == p)
      coef[pos++] = 0;
    if (pos == coef.size())
      return out;
  }
}

bool operator==(const TruncatedSubspace& a, const TruncatedSubspace& b) {
  return a.low_ == b.low_ && a.N_ == b.N_ && a.canonical() == b.canonical();
}

long stability_horizon(const AdditivePolynomial& f, long N) {
  long h = LONG_MIN / 4;
  for (const auto& [key, c] : f.terms()) {
    if (c.is_zero_to_precision())
      continue;
    h = std::max(h, ceil_div(N - c.valuation_lower_bound(), ipow(f.p(), key.second)));
  }
  return h == LONG_MIN / 4 ? N : h;
}

namespace {

// Lowest output exponent of f on B_low(0)^n.
long lowest_output(const AdditivePolynomial& f, long low) {
  long v = 0;
  for (const auto& [key, c] : f.terms())
    if (!c.is_zero_to_precision())
      v = std::min(v, c.valuation_lower_bound() + ipow(f.p(), key.second) * low);
  return v;
}

// F_p-basis of F_q as codes.
std::vector<Elt> prime_basis(const FiniteField& field) {
  std::vector<Elt> basis;
  Elt b = 1;
  for (int c = 0; c < field.k(); ++c, b *= static_cast<Elt>(field.p()))
    basis.push_back(b);
  return basis;
}

} // namespace

TruncatedSubspace image_subspace(const AdditivePolynomial& f, long low, long N) {
  const FieldRef& field = f.field();
  TruncatedSubspace s(field, std::min(lowest_output(f, low), N), N);
  long high = stability_horizon(f, N);
  auto basis = prime_basis(*field);
  for (int i = 0; i < f.nvars(); ++i) {
    AdditivePolynomial part = f.part(i);
    for (long e = low; e < high; ++e)
      for (Elt lam : basis) {
        std::array<LaurentSeries, 1> x{LaurentSeries::monomial(field, lam, e)};
        s.insert(part.evaluate(x).truncate(N));
      }
  }
  return s;
}

long pullback_radius(const Decomposition& d, long alpha) {
  long l = alpha;
  for (const auto& ph : d.phi)
    for (const auto& [key, c] : ph.terms())
      if (!c.is_zero_to_precision())
        l = std::min(l, c.valuation_lower_bound() + ipow(ph.p(), key.second) * alpha);
  return l;
}

Decomposition decompose(const AdditivePolynomial& f, long work_precision) {
  // Truncated quotients can be amplified by later substitutions.
  Decomposition d;
  for (int attempt = 0; attempt < 4; ++attempt) {
    d = decompose_at(f, work_precision << attempt);
    if (d.identity_precision >= work_precision / 2)
      break;
  }
  return d;
}

OapResult oap_solve(const AdditivePolynomial& f, const LaurentSeries& z, long N,
                    std::uint64_t budget) {
  const FieldRef& field = f.field();
  OapResult out{{}, ValuationResult::at_least(Value::rank1(N)), 0, decompose(f)};
  const Decomposition& d = out.decomposition;
  const int m = static_cast<int>(d.g.size());
  std::optional<LaurentSeries> c;
  if (!z.is_exact_zero())
    c = -z;
  out.alpha = alpha_bound_integer(c, d);

  long high = out.alpha;
  long low_out = z.is_zero_to_precision() ? 0 : std::min(0L, z.low());
  for (const auto& g : d.g) {
    high = std::max(high, stability_horizon(g, N));
    low_out = std::min(low_out, lowest_output(g, out.alpha));
  }
  low_out = std::min(low_out, N);
  const auto k = static_cast<std::uint64_t>(field->k());
  std::uint64_t rows = static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(high - out.alpha) * k;
  std::uint64_t cols = static_cast<std::uint64_t>(N - low_out) * k;
  if (rows * cols > budget)
    throw Error(Errc::budget_exceeded, "search needs " + std::to_string(rows * cols) +
                                           " cells, budget " + std::to_string(budget));

  TruncatedSubspace s(field, low_out, N, m);
  auto basis = prime_basis(*field);
  for (int i = 0; i < m; ++i)
    for (long e = out.alpha; e < high; ++e)
      for (Elt lam : basis) {
        std::vector<LaurentSeries> tags(static_cast<std::size_t>(m), LaurentSeries::zero(field));
        tags[static_cast<std::size_t>(i)] = LaurentSeries::monomial(field, lam, e);
        std::array<LaurentSeries, 1> x{tags[static_cast<std::size_t>(i)]};
        s.insert(d.g[static_cast<std::size_t>(i)].evaluate(x).truncate(N), std::move(tags));
      }

  std::vector<LaurentSeries> y;
  LaurentSeries residual = s.reduce(z.truncate(N), &y);
  out.value = residual.is_zero_to_precision()
                  ? ValuationResult::at_least(Value::rank1(N))
                  : ValuationResult::exact(Value::rank1(residual.low()));
  out.input = m == 0 ? std::vector<LaurentSeries>(static_cast<std::size_t>(f.nvars()),
                                                  LaurentSeries::zero(field))
                     : d.pull_back(y);

  LaurentSeries direct = z - f.evaluate(out.input);
  bool ok = out.value.is_exact()
                ? direct.precision() > residual.low() && !direct.is_zero_to_precision() &&
                      direct.low() == residual.low()
                : direct.valuation_lower_bound() >= N;
  if (!ok)
    throw Error(Errc::precision, "pulled-back input does not reproduce the optimum; raise "
                                 "the working precision");
  return out;
}

bool Ball::contains(const LaurentSeries& x) const {
  return (x - center).valuation_lower_bound() >= radius;
}

std::string Ball::to_string() const {
  return "v>=" + std::to_string(radius) + " around " + center.to_string();
}

Ball Ball::parse(const FieldRef& field, std::string_view text) {
  static const std::regex re(R"(^\s*v\s*>=\s*(-?\d+)\s+around\s+(.+?)\s*$)");
  std::string s(text);
  std::smatch m;
  if (!std::regex_match(s, m, re))
    throw Error(Errc::parse, "ball must read 'v>=R around C', got '" + s + "'");
  return {LaurentSeries::parse(field, m[2].str()), std::stol(m[1].str())};
}

std::uint64_t ball_representative_count(const Ball& s, int nvars, long input_precision,
                                        std::uint64_t cap) {
  long digits = std::max(0L, input_precision - s.radius) * nvars;
  std::uint64_t count = 1;
  for (long i = 0; i < digits; ++i) {
    count *= s.center.field()->size();
    if (count > cap)
      return cap + 1;
  }
  return count;
}

SearchResult brute_force_max(const Polynomial& f, const Ball& s, long N, long input_precision,
                             std::uint64_t budget) {
  if (input_precision <= 0)
    input_precision = N;
  std::uint64_t count = ball_representative_count(s, f.nvars(), input_precision, budget);
  if (count > budget)
    throw Error(Errc::budget_exceeded, "more than " + std::to_string(budget) +
                                           " representatives to enumerate");
  SearchResult best{{}, ValuationResult::at_least(Value::rank1(0)), 0};
  bool first = true;
  for_each_representative(s, f.nvars(), input_precision,
                          [&](const std::vector<LaurentSeries>& rep) {
    // Each representative is evaluated as the exact element it names.
    std::vector<LaurentSeries> a;
    for (const auto& x : rep)
      a.push_back(exact_part(x));
    LaurentSeries y = f.evaluate(a);
    long cap = std::min(y.precision(), N);
    long lb = y.valuation_lower_bound();
    ValuationResult v = lb < cap ? ValuationResult::exact(Value::rank1(lb))
                                 : ValuationResult::at_least(Value::rank1(cap));
    ++best.evaluated;
    std::array<ValuationResult, 2> pair{best.value, v};
    if (first || max_valuation_index(pair) == 1) {
      best.value = v;
      best.witness = a;
      first = false;
    }
  });
  return best;
}

} // namespace valfield
