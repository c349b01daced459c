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
#include <valfield/certificates.hpp>
#include <valfield/error.hpp>
#include <valfield/finite_field.hpp>

#include <json.hpp>

#include <algorithm>

namespace valfield {

using json = nlohmann::ordered_json;

std::string_view to_string(CertVerdict v) {
  switch (v) {
  case CertVerdict::pass:
    return "pass";
  case CertVerdict::fail:
    return "fail";
  default:
    return "inconclusive";
  }
}

namespace {

std::string q_str(const mpq_class& q) { return rational_to_string(q); }
std::string b_str(bool b) { return b ? "true" : "false"; }

json fields_to_json(const Fields& f) {
  json out = json::object();
  for (const auto& [k, v] : f)
    out[k] = v;
  return out;
}

Fields fields_from_json(const json& j) {
  Fields out;
  for (const auto& [k, v] : j.items())
    out.emplace_back(k, v.get<std::string>());
  return out;
}

CertVerdict verdict_from_string(const std::string& s) {
  if (s == "pass")
    return CertVerdict::pass;
  if (s == "fail")
    return CertVerdict::fail;
  if (s == "inconclusive")
    return CertVerdict::inconclusive;
  throw Error(Errc::parse, "unknown verdict '" + s + "'");
}

// p (X^p - X)^2 - 1, low degree first.
RationalPoly tmcne_polynomial(long p) {
  RationalPoly f(static_cast<std::size_t>(2 * p + 1), 0);
  f[0] = -1;
  f[2] += p;
  f[static_cast<std::size_t>(p + 1)] += -2 * p;
  f[static_cast<std::size_t>(2 * p)] += p;
  return f;
}

CertificateStep step_polygon(long p, const RationalPoly& f) {
  CertificateStep s;
  s.name = "S1 newton polygon";
  s.inputs = {{"polynomial", format_rational_poly(f)}, {"p", std::to_string(p)}};
  NewtonPolygon np = newton_polygon(to_padic(f, p, 4 * (2 * p) * (2 * p)));
  mpq_class slope(1, 2 * p);
  bool single = np.segments().size() == 1;
  s.computed = {{"polygon", np.to_string()},
                {"segments", std::to_string(np.segments().size())},
                {"v(eta)", single ? q_str(-np.segments()[0].slope) : "undetermined"}};
  s.expected = {{"segments", "1"}, {"slope", q_str(slope)}, {"v(eta)", q_str(-slope)}};
  s.pass = single && np.segments()[0].slope == slope && np.segments()[0].length == 2 * p;
  return s;
}

CertificateStep step_fundamental(long p, const RationalPoly& f) {
  CertificateStep s;
  s.name = "S2 irreducibility and fundamental equality";
  s.inputs = {{"polynomial", format_rational_poly(f)}, {"p", std::to_string(p)}};
  FundamentalData d = fundamental_equality_data(p, f);
  s.computed = {{"criterion", d.criterion},
                {"n", std::to_string(d.n)},
                {"e", std::to_string(d.e)},
                {"f", std::to_string(d.f_res)}};
  s.expected = {{"criterion", "newton-polygon"},
                {"n", std::to_string(2 * p)},
                {"e", std::to_string(2 * p)},
                {"f", "1"}};
  s.pass = d.resolved && d.criterion == "newton-polygon" && d.n == 2 * p && d.e == 2 * p &&
           d.f_res == 1;
  return s;
}

CertificateStep step_identity(long p, const RationalPoly& f, Value* v_s) {
  CertificateStep s;
  s.name = "S3 ring identity and valuation of s";
  s.inputs = {{"polynomial", format_rational_poly(f)}, {"s", "eta^" + std::to_string(p) + " - eta"}};
  const long prec = 4 * (2 * p) * (2 * p);
  ExtRef ext = PAdicExtension::create(p, f, prec);
  auto eta = PAdicExtElement::generator(ext);
  auto sv = eta.pow(static_cast<unsigned>(p)) - eta;
  auto lhs = PAdicExtElement::constant(ext, p) * sv * sv;
  bool identity = lhs.equals_at_precision(PAdicExtElement::constant(ext, 1));
  RationalPoly g(static_cast<std::size_t>(p + 1), 0);
  g[1] = -1;
  g[static_cast<std::size_t>(p)] = 1;
  *v_s = ext_valuation(p, f, g, 2 * p);
  s.computed = {{"p*s^2 == 1", b_str(identity)}, {"v(s)", v_s->to_string()}};
  s.expected = {{"p*s^2 == 1", "true"}, {"v(s)", "-1/2"}};
  s.pass = identity && *v_s == Value::rank1(-1, 2);
  return s;
}

CertificateStep step_ledger(long p, const Value& v_s) {
  CertificateStep s;
  s.name = "S4 valuation ledger";
  const mpq_class va(-1, 2 * p);
  s.inputs = {{"v(a)", q_str(va)}, {"v(b)", q_str(va)}};
  mpq_class min_binom = 0, min_term = 0;
  bool first = true;
  for (long i = 1; i < p; ++i) {
    long vb = binomial_valuation(p, i, p);
    mpq_class term = vb + i * va + (p - i) * va;
    if (first || vb < min_binom)
      min_binom = vb;
    if (first || term < min_term)
      min_term = term;
    first = false;
  }
  // s = eta^p - eta has p v(eta) < v(eta), so v(s) = p v(eta).
  mpq_class ledger_vs = p * va;
  bool routes_agree = v_s == Value::rank1(ledger_vs);
  s.computed = {{"min v(binom(p,i))", q_str(min_binom)},
                {"min cross-term valuation", q_str(min_term)},
                {"cross terms in valuation ideal", b_str(min_term > 0)},
                {"v(s) by ledger", q_str(ledger_vs)},
                {"v(s) routes agree", b_str(routes_agree)}};
  s.expected = {{"min v(binom(p,i))", "1"},
                {"min cross-term valuation", "1/2"},
                {"cross terms in valuation ideal", "true"},
                {"v(s) by ledger", "-1/2"},
                {"v(s) routes agree", "true"}};
  s.pass = min_binom >= 1 && min_term == mpq_class(1, 2) && routes_agree;
  return s;
}

CertificateStep step_residue(long p) {
  CertificateStep s;
  s.name = "S5 residue polynomial has no root";
  s.inputs = {{"polynomial", "X^" + std::to_string(p) + " - X - 1"}, {"field", "F_" + std::to_string(p)}};
  auto field = FiniteField::prime(p);
  std::vector<Elt> poly(static_cast<std::size_t>(p + 1), 0);
  poly[0] = field->from_int(-1);
  poly[1] = field->from_int(-1);
  poly[static_cast<std::size_t>(p)] = 1;
  std::string values;
  bool root = false;
  for (long x = 0; x < p; ++x) {
    Elt y = ff_poly_eval(*field, poly, field->from_int(x));
    root = root || y == 0;
    values += (values.empty() ? "" : ",") + std::to_string(y);
  }
  bool irreducible = ff_poly_irreducible(*field, poly);
  s.computed = {{"values at 0..p-1", values},
                {"has root", b_str(root)},
                {"irreducible", b_str(irreducible)}};
  s.expected = {{"has root", "false"}, {"irreducible", "true"}};
  s.pass = !root && irreducible;
  return s;
}

} // namespace

TmcneCertificate verify_tmcne(long p) {
  if (p % 2 == 0 || !is_prime(p))
    throw Error(Errc::usage, "p must be an odd prime, got " + std::to_string(p));
  if (p > 7)
    throw Error(Errc::usage, "p must be at most 7, got " + std::to_string(p));
  TmcneCertificate cert;
  cert.p = p;
  const RationalPoly f = tmcne_polynomial(p);
  Value v_s;
  try {
    cert.steps.push_back(step_polygon(p, f));
    cert.steps.push_back(step_fundamental(p, f));
    cert.steps.push_back(step_identity(p, f, &v_s));
    cert.steps.push_back(step_ledger(p, v_s));
    cert.steps.push_back(step_residue(p));
  } catch (const Error& e) {
    if (e.code() != Errc::precision && e.code() != Errc::irreducibility)
      throw;
    cert.verdict = CertVerdict::inconclusive;
    return cert;
  }
  bool all = std::all_of(cert.steps.begin(), cert.steps.end(),
                         [](const CertificateStep& s) { return s.pass; });
  cert.verdict = all ? CertVerdict::pass : CertVerdict::fail;
  return cert;
}

std::string TmcneCertificate::to_json() const {
  json j;
  j["p"] = p;
  j["steps"] = json::array();
  for (const auto& s : steps)
    j["steps"].push_back({{"name", s.name},
                          {"inputs", fields_to_json(s.inputs)},
                          {"computed", fields_to_json(s.computed)},
                          {"expected", fields_to_json(s.expected)},
                          {"pass", s.pass}});
  j["verdict"] = std::string(to_string(verdict));
  return j.dump(2);
}

TmcneCertificate TmcneCertificate::from_json(std::string_view text) {
  try {
    json j = json::parse(text);
    TmcneCertificate c;
    c.p = j.at("p").get<long>();
    for (const auto& s : j.at("steps"))
      c.steps.push_back({s.at("name").get<std::string>(), fields_from_json(s.at("inputs")),
                         fields_from_json(s.at("computed")), fields_from_json(s.at("expected")),
                         s.at("pass").get<bool>()});
    c.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    return c;
  } catch (const json::exception& e) {
    throw Error(Errc::parse, std::string("certificate JSON: ") + e.what());
  }
}

std::string FundEqCertificate::to_json() const {
  json j;
  j["polynomial"] = polynomial;
  j["base"] = base;
  j["n"] = n;
  j["e"] = e;
  j["f"] = f_res;
  j["criterion"] = criterion;
  j["equality"] = equality;
  return j.dump(2);
}

namespace {

FundEqCertificate from_data(std::string poly, std::string base, const FundamentalData& d) {
  FundEqCertificate c;
  c.polynomial = std::move(poly);
  c.base = std::move(base);
  c.n = d.n;
  c.e = d.e;
  c.f_res = d.f_res;
  c.criterion = d.criterion;
  c.equality = d.resolved && d.n == d.e * d.f_res;
  return c;
}

} // namespace

FundEqCertificate verify_fundamental_equality(long p, const RationalPoly& f, long precision,
                                              bool asserted_irreducible) {
  if (!is_prime(p))
    throw Error(Errc::usage, "Q_p needs a prime p, got " + std::to_string(p));
  FundamentalData d = fundamental_equality_data(p, f, precision, asserted_irreducible);
  return from_data(format_rational_poly(f), "Q_" + std::to_string(p), d);
}

FundEqCertificate verify_fundamental_equality(const Polynomial& f, bool asserted_irreducible) {
  if (f.nvars() != 1)
    throw Error(Errc::rank_mismatch, "defining polynomial must be univariate");
  const FieldRef& field = f.field();
  long degree = static_cast<long>(f.total_degree());
  if (degree < 1)
    throw Error(Errc::precondition, "defining polynomial must have degree >= 1");
  std::vector<CoefficientValuation> cv;
  bool integral = true;
  for (long i = 0; i <= degree; ++i) {
    LaurentSeries c = f.coefficient({static_cast<unsigned>(i)});
    if (!c.is_exact())
      throw Error(Errc::precision, "coefficients must be exact");
    cv.push_back({i, c.valuation()});
    if (!c.is_exact_zero() && c.low() < 0)
      integral = false;
  }
  NewtonPolygon polygon = newton_polygon(cv);
  std::optional<bool> reduction;
  LaurentSeries lead = f.coefficient({static_cast<unsigned>(degree)});
  if (integral && lead.low() == 0) {
    std::vector<Elt> red;
    for (long i = 0; i <= degree; ++i) {
      LaurentSeries c = f.coefficient({static_cast<unsigned>(i)});
      red.push_back(c.is_exact_zero() || c.low() > 0 ? 0 : c.coeff(0));
    }
    reduction = ff_poly_irreducible(*field, red);
  }
  FundamentalData d = deduce_fundamental_data(polygon, degree, reduction, asserted_irreducible);
  return from_data(f.to_string(), field->to_string() + "((t))", d);
}

} // namespace valfield
