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
#include <valfield/certificates.hpp>
#include <valfield/commands.hpp>
#include <valfield/error.hpp>
#include <valfield/extremality.hpp>
#include <valfield/padic.hpp>
#include <valfield/selftest.hpp>

#include <json.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace valfield {

namespace {

using json = nlohmann::ordered_json;

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\n");
  if (b == std::string_view::npos)
    return {};
  auto e = s.find_last_not_of(" \t\n");
  return std::string(s.substr(b, e - b + 1));
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

FieldRef laurent_field(std::string_view text) {
  auto spec = FieldSpec::parse(text);
  if (spec.kind != FieldSpec::Kind::laurent)
    throw Error(Errc::usage, "expected a field F(q)((t)), got '" + std::string(text) + "'");
  return spec.field;
}

void require_positive(long x, std::string_view what) {
  if (x < 1)
    throw Error(Errc::usage, std::string(what) + " must be at least 1");
}

std::string var_name(std::size_t i, std::size_t n) {
  return n == 1 ? "X" : "X" + std::to_string(i + 1);
}

json series_list(std::span<const LaurentSeries> xs) {
  json out = json::array();
  for (const auto& x : xs)
    out.push_back(x.to_string());
  return out;
}

std::string assignment(std::span<const LaurentSeries> xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i)
    s += (i ? ", " : "") + var_name(i, xs.size()) + " = " + xs[i].to_string();
  return s.empty() ? "(no variables)" : s;
}

Report finish(std::string text, const json& j, Outcome outcome) {
  return {std::move(text), j.dump(2), outcome};
}

using Digits = std::vector<Elt>;

// Digits at t^0..t^{N-1} when x lies in O modulo t^N.
std::optional<Digits> integral_digits(const LaurentSeries& x, long N) {
  Digits d(static_cast<std::size_t>(N), 0);
  for (long e = x.low(); e < std::min(x.end(), N); ++e) {
    Elt c = x.coeff(e);
    if (c == 0)
      continue;
    if (e < 0)
      return std::nullopt;
    d[static_cast<std::size_t>(e)] = c;
  }
  return d;
}

LaurentSeries exact_representative(const LaurentSeries& x) {
  return LaurentSeries(x.field(), x.low(), {x.coeffs().begin(), x.coeffs().end()});
}

// {y(a) mod t^N : a in (t^low O / t^high O)^n, y(a) in O}, enumerated.
template <class Eval>
std::set<Digits> enumerated_image(const FieldRef& field, int n, long low, long high, long N,
                                  std::uint64_t budget, Eval&& eval) {
  Ball ball{LaurentSeries::zero(field), low};
  if (ball_representative_count(ball, n, high, budget) > budget)
    throw Error(Errc::budget_exceeded, "image enumeration exceeds the budget");
  std::set<Digits> out;
  for_each_representative(ball, n, high, [&](const std::vector<LaurentSeries>& a) {
    std::vector<LaurentSeries> exact;
    for (const auto& x : a)
      exact.push_back(exact_representative(x));
    if (auto d = integral_digits(eval(exact), N))
      out.insert(*d);
  });
  return out;
}

} // namespace

FieldSpec FieldSpec::parse(std::string_view text) {
  std::string s = trim(text);
  FieldSpec spec;
  if (s.rfind("Q_", 0) == 0) {
    spec.kind = Kind::padic;
    try {
      std::size_t used = 0;
      spec.p = std::stol(s.substr(2), &used);
      if (used + 2 != s.size())
        throw Error(Errc::parse, "trailing text");
    } catch (const std::logic_error&) {
      throw Error(Errc::parse, "bad p-adic field '" + s + "'");
    }
    spec.field = FiniteField::prime(spec.p);
    return spec;
  }
  if (ends_with(s, "((u))((t))")) {
    spec.kind = Kind::composite;
    s = trim(s.substr(0, s.size() - 10));
  } else if (ends_with(s, "((t))")) {
    s = trim(s.substr(0, s.size() - 5));
  }
  spec.field = FiniteField::parse(s);
  spec.p = spec.field->p();
  return spec;
}

int exit_code(Errc code) noexcept {
  switch (code) {
  case Errc::precision:
  case Errc::hensel_condition:
  case Errc::irreducibility:
    return 3;
  case Errc::budget_exceeded:
    return 4;
  default:
    return 1;
  }
}

Report cmd_oap(const OapArgs& a) {
  FieldRef field = laurent_field(a.field);
  require_positive(a.precision, "precision");
  auto f = AdditivePolynomial::parse(field, a.poly);
  auto z = LaurentSeries::parse(field, a.target);
  auto r = oap_solve(f, z, a.precision, a.budget);

  json j;
  j["field"] = trim(a.field);
  j["poly"] = f.to_string();
  j["target"] = z.to_string();
  j["precision"] = a.precision;
  j["value"] = r.value.to_string();
  j["exact"] = r.value.is_exact();
  j["witness"] = series_list(r.input);
  j["alpha"] = r.alpha;
  std::string text = "max v(z - f(X)) = " + r.value.to_string() +
                     (r.value.is_exact() ? "" : " (at the precision bound)") + "\n" +
                     "witness: " + assignment(r.input) + "\n";
  Outcome outcome = Outcome::pass;
  if (a.oracle) {
    long low = -2;
    for (const auto& x : r.input)
      if (!x.is_zero_to_precision())
        low = std::min(low, x.low());
    long high = std::max(stability_horizon(f, a.precision), low + 1);
    Ball ball{LaurentSeries::zero(field), low};
    int n = f.nvars();
    if (ball_representative_count(ball, n, high, a.budget) > a.budget)
      throw Error(Errc::budget_exceeded, "oracle enumeration exceeds the budget");
    auto poly = Polynomial::constant(field, n, z) - f.to_polynomial();
    auto b = brute_force_max(poly, ball, a.precision, high, a.budget);
    bool agree = b.value == r.value;
    j["oracle"] = {{"ball", ball.to_string()},
                   {"value", b.value.to_string()},
                   {"evaluated", b.evaluated},
                   {"agrees", agree}};
    text += "oracle over " + ball.to_string() + ": " + b.value.to_string() + " (" +
            std::to_string(b.evaluated) + " inputs), " + (agree ? "agrees" : "DISAGREES") + "\n";
    if (!agree)
      outcome = Outcome::check_failed;
  }
  return finish(std::move(text), j, outcome);
}

Report cmd_decompose(const DecomposeArgs& a) {
  FieldRef field = laurent_field(a.field);
  require_positive(a.work_precision, "work precision");
  auto f = AdditivePolynomial::parse(field, a.poly);
  auto d = decompose(f, a.work_precision);
  bool independent = leading_valuations_independent(d);

  json j;
  j["field"] = trim(a.field);
  j["poly"] = f.to_string();
  j["nu"] = d.nu;
  json pieces = json::array();
  for (std::size_t i = 0; i < d.g.size(); ++i)
    pieces.push_back({{"g", d.g[i].to_string()}, {"leading", d.leading[i].to_string()}});
  j["pieces"] = pieces;
  json phi = json::array();
  for (const auto& x : d.phi)
    phi.push_back(x.to_string());
  j["phi"] = phi;
  const bool exact_identity = d.identity_precision >= LaurentSeries::kExact;
  if (exact_identity)
    j["identity_precision"] = "exact";
  else
    j["identity_precision"] = d.identity_precision;
  j["merges"] = d.merges;
  j["leading_valuations_independent"] = independent;
  std::string text = d.to_string() + "\nidentity holds " +
                     (exact_identity ? std::string("exactly")
                                     : "modulo t^" + std::to_string(d.identity_precision)) +
                     "\nleading valuations independent: " +
                     (independent ? "yes" : "no") + "\n";
  Outcome outcome = independent ? Outcome::pass : Outcome::check_failed;

  if (a.oracle_precision > 0) {
    const long N = a.oracle_precision;
    long alpha = alpha_bound_integer(std::nullopt, d);
    long low = pullback_radius(d, alpha);
    auto image_f = enumerated_image(field, f.nvars(), low, stability_horizon(f, N), N, a.budget,
                                    [&](auto& x) { return f.evaluate(x); });
    long high_g = alpha + 1;
    for (const auto& g : d.g)
      high_g = std::max(high_g, stability_horizon(g, N));
    int m = static_cast<int>(d.g.size());
    auto image_g = enumerated_image(field, m, alpha, high_g, N, a.budget,
                                    [&](auto& y) { return d.evaluate(y); });
    bool agree = image_f == image_g;
    j["oracle"] = {{"precision", N},
                   {"image_size_f", image_f.size()},
                   {"image_size_decomposition", image_g.size()},
                   {"agrees", agree}};
    text += "image sets modulo t^" + std::to_string(N) + ": " + std::to_string(image_f.size()) +
            " vs " + std::to_string(image_g.size()) + ", " + (agree ? "equal" : "DIFFERENT") + "\n";
    if (!agree)
      outcome = Outcome::check_failed;
  }
  return finish(std::move(text), j, outcome);
}

namespace {

// Exact element t^e (1 + random higher digits).
LaurentSeries random_unit_at(Rng& rng, const FieldRef& field, long e, int digits) {
  std::vector<Elt> c{1};
  for (int j = 0; j < digits; ++j)
    c.push_back(static_cast<Elt>(rng.range(0, field->p() - 1)));
  return LaurentSeries(field, e, c);
}

long valuation_or(const LaurentSeries& x, long infinity) {
  return x.is_exact_zero() ? infinity : x.valuation_lower_bound();
}

} // namespace

Report cmd_alpha(const AlphaArgs& a) {
  FieldRef field = laurent_field(a.field);
  auto h = PPolynomial::parse(field, a.poly);
  auto d = decompose(h.additive);
  Value alpha = alpha_bound(h, d);

  json j;
  j["field"] = trim(a.field);
  j["poly"] = h.to_string();
  j["alpha"] = alpha.to_string();
  j["nu"] = d.nu;
  std::string text = "alpha = " + alpha.to_string() + "\n";
  Outcome outcome = Outcome::pass;
  if (a.samples > 0 && !d.g.empty()) {
    const long al = alpha_bound_integer(h.constant, d);
    long pnu = 1;
    for (int k = 0; k < d.nu; ++k)
      pnu *= field->p();
    const long inf = LaurentSeries::kExact;
    Rng rng(a.seed);
    long violations = 0, outside_max = -inf, inside_min = inf;
    const std::size_t m = d.g.size();
    for (long s = 0; s < a.samples; ++s) {
      std::vector<LaurentSeries> y;
      bool inside = true;
      for (std::size_t i = 0; i < m; ++i) {
        if (rng.range(0, 3) == 0) {
          y.push_back(LaurentSeries::zero(field));
          continue;
        }
        long e = rng.range(al - 4, al + 4);
        inside = inside && e >= al;
        y.push_back(random_unit_at(rng, field, e, 4));
        std::array<LaurentSeries, 1> arg{y.back()};
        long vg = valuation_or(d.g[i].evaluate(arg), inf);
        long vb = d.leading[i].low();
        if (e <= al && (vg != vb + pnu * e || (h.constant && vg >= valuation_or(*h.constant, inf))))
          ++violations;
        if (e >= al && vg < vb + pnu * al)
          ++violations;
      }
      auto hy = d.evaluate(y);
      if (h.constant)
        hy = hy + *h.constant;
      long vh = valuation_or(hy, inf);
      if (inside)
        inside_min = std::min(inside_min, vh);
      else
        outside_max = std::max(outside_max, vh);
    }
    bool separated = outside_max < inside_min;
    j["check"] = {{"samples", a.samples},
                  {"seed", a.seed},
                  {"inequality_violations", violations},
                  {"separated", separated}};
    text += "sampled " + std::to_string(a.samples) + " inputs: " + std::to_string(violations) +
            " inequality violations, separation " + (separated ? "holds" : "FAILS") + "\n";
    if (violations > 0 || !separated)
      outcome = Outcome::check_failed;
  }
  return finish(std::move(text), j, outcome);
}

namespace {

Report extremal_laurent(const ExtremalArgs& a, const FieldRef& field) {
  require_positive(a.precision, "precision");
  auto f = Polynomial::parse(field, a.poly);
  auto ball = Ball::parse(field, a.ball);
  auto r = extremal_search(f, ball, a.precision, a.budget);
  json j;
  j["field"] = trim(a.field);
  j["poly"] = f.to_string();
  j["ball"] = ball.to_string();
  j["precision"] = a.precision;
  j["witness"] = series_list(r.witness);
  j["value"] = r.value.to_string();
  j["verdict"] = std::string(to_string(r.verdict));
  j["evaluated"] = r.evaluated;
  std::string text = "max v(f) over " + ball.to_string() + " = " + r.value.to_string() + "\n" +
                     "witness: " + assignment(r.witness) + "\nverdict: " +
                     std::string(to_string(r.verdict)) + "\n";
  return finish(std::move(text), j,
                r.verdict == Verdict::max_attained ? Outcome::pass : Outcome::inconclusive);
}

json composite_list(std::span<const CompositeSeries> xs) {
  json out = json::array();
  for (const auto& x : xs)
    out.push_back(x.to_string());
  return out;
}

std::string composite_assignment(std::span<const CompositeSeries> xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i)
    s += (i ? ", " : "") + var_name(i, xs.size()) + " = " + xs[i].to_string();
  return s.empty() ? "(no variables)" : s;
}

Report extremal_composite(const ExtremalArgs& a, const FieldRef& field) {
  require_positive(a.t_precision, "t precision");
  require_positive(a.u_precision, "u precision");
  CompositeTruncation tr{a.t_precision, a.u_precision, a.u_floor};
  json j;
  j["field"] = trim(a.field);
  j["truncation"] = {{"t_precision", tr.t_precision},
                     {"u_precision", tr.u_precision},
                     {"u_floor", tr.u_floor}};
  if (!a.pushdown) {
    auto f = CompositePolynomial::parse(field, a.poly);
    auto r = composite_extremal_search(f, tr, a.budget);
    j["poly"] = f.to_string();
    j["witness"] = composite_list(r.witness);
    j["value"] = r.value.to_string();
    j["verdict"] = std::string(to_string(r.verdict));
    j["evaluated"] = r.evaluated;
    std::string text = "max v(f) over O_v = " + r.value.to_string() + "\nwitness: " +
                       composite_assignment(r.witness) + "\nverdict: " +
                       std::string(to_string(r.verdict)) + "\n";
    return finish(std::move(text), j,
                  r.verdict == Verdict::max_attained ? Outcome::pass : Outcome::inconclusive);
  }
  auto g = Polynomial::parse(field, a.poly, 0, "u");
  auto r = check_vexbarwex(g, tr, a.budget);
  j["poly"] = g.to_string("u");
  j["composite"] = {{"witness", composite_list(r.composite.witness)},
                    {"value", r.composite.value.to_string()},
                    {"verdict", std::string(to_string(r.composite.verdict))}};
  j["residue"] = {{"value", r.residue.value.to_string()},
                  {"verdict", std::string(to_string(r.residue.verdict))}};
  j["pushed_down"] = r.pushed_down.to_string();
  j["verdict"] = std::string(to_string(r.verdict));
  std::string text = "composite max = " + r.composite.value.to_string() + " at " +
                     composite_assignment(r.composite.witness) + "\n" +
                     "pushed-down value = " + r.pushed_down.to_string() + "\n" +
                     "residue max = " + r.residue.value.to_string() + "\n" +
                     "verdict: " + std::string(to_string(r.verdict)) + "\n";
  Outcome outcome = r.verdict == PushdownVerdict::confirmed  ? Outcome::pass
                    : r.verdict == PushdownVerdict::violated ? Outcome::check_failed
                                                             : Outcome::inconclusive;
  return finish(std::move(text), j, outcome);
}

} // namespace

Report cmd_extremal(const ExtremalArgs& a) {
  auto spec = FieldSpec::parse(a.field);
  switch (spec.kind) {
  case FieldSpec::Kind::laurent:
    if (a.pushdown)
      throw Error(Errc::usage, "--pushdown needs a composite field F(q)((u))((t))");
    return extremal_laurent(a, spec.field);
  case FieldSpec::Kind::composite:
    return extremal_composite(a, spec.field);
  default:
    throw Error(Errc::usage, "extremal search needs F(q)((t)) or F(q)((u))((t))");
  }
}

namespace {

// Valuations of f over representatives of the ball modulo t^M, capped.
std::map<long, long> value_multiset(const Polynomial& f, const Ball& ball, long M, long cap,
                                    std::uint64_t budget) {
  if (ball_representative_count(ball, f.nvars(), M, budget) > budget)
    throw Error(Errc::budget_exceeded, "multiset enumeration exceeds the budget");
  std::map<long, long> out;
  for_each_representative(ball, f.nvars(), M, [&](const std::vector<LaurentSeries>& rep) {
    std::vector<LaurentSeries> x;
    for (const auto& r : rep)
      x.push_back(exact_representative(r));
    ++out[std::min(cap, valuation_or(f.evaluate(x), cap))];
  });
  return out;
}

// Valuations below this bound are unchanged by perturbing inputs of
// valuation >= floor by terms of order `perturbation`.
long perturbation_cap(const Polynomial& f, long perturbation, long floor) {
  long bound = LaurentSeries::kExact;
  for (const auto& [e, c] : f.terms()) {
    long deg = 0;
    for (auto x : e)
      deg += x;
    if (deg > 0)
      bound = std::min(bound, perturbation + c.low() + (deg - 1) * std::min(0L, floor));
  }
  return bound;
}

json multiset_json(const std::map<long, long>& m, long cap) {
  json out = json::array();
  for (const auto& [v, k] : m)
    out.push_back({{"value", (v >= cap ? ">=" : "") + std::to_string(v)}, {"count", k}});
  return out;
}

} // namespace

Report cmd_transfer(const TransferArgs& a) {
  FieldRef field = laurent_field(a.field);
  auto f = Polynomial::parse(field, a.poly);
  auto pa = LaurentSeries::parse(field, a.a);
  auto pb = LaurentSeries::parse(field, a.b);
  auto pc = LaurentSeries::parse(field, a.c);
  auto g = ball_transfer(f, a.alpha, pa, a.beta, pb, pc);
  json j;
  j["field"] = trim(a.field);
  j["f"] = f.to_string();
  j["g"] = g.to_string();
  j["source_ball"] = Ball{pa, a.alpha}.to_string();
  j["target_ball"] = Ball{pb, a.beta}.to_string();
  std::string text = "g = " + g.to_string() + "\ng(" + Ball{pa, a.alpha}.to_string() +
                     ") = f(" + Ball{pb, a.beta}.to_string() + ")\n";
  Outcome outcome = Outcome::pass;
  if (a.check_precision > 0) {
    const long M = a.check_precision;
    const long Mf = M + a.beta - a.alpha;
    long floor_f = pb.is_zero_to_precision() ? a.beta : std::min(a.beta, pb.low());
    long floor_g = pa.is_zero_to_precision() ? a.alpha : std::min(a.alpha, pa.low());
    long cap = std::min(perturbation_cap(f, Mf, floor_f), perturbation_cap(g, M, floor_g));
    auto mf = value_multiset(f, {pb, a.beta}, Mf, cap, a.budget);
    auto mg = value_multiset(g, {pa, a.alpha}, M, cap, a.budget);
    bool agree = mf == mg;
    j["check"] = {{"precision", M},
                  {"cap", cap},
                  {"f_multiset", multiset_json(mf, cap)},
                  {"g_multiset", multiset_json(mg, cap)},
                  {"agrees", agree}};
    text += "value multisets modulo t^" + std::to_string(M) + " (capped at " +
            std::to_string(cap) + "): " + (agree ? "equal" : "DIFFERENT") + "\n";
    if (!agree)
      outcome = Outcome::check_failed;
  }
  return finish(std::move(text), j, outcome);
}

Report cmd_compose(const ComposeArgs& a) {
  FieldRef field = laurent_field(a.field);
  auto f = AdditivePolynomial::parse(field, a.poly);
  if (a.images.size() != static_cast<std::size_t>(f.nvars()))
    throw Error(Errc::usage, "compose needs one image per variable of f (" +
                                 std::to_string(f.nvars()) + ")");
  // Images share the largest variable count among them.
  int m = 1;
  for (const auto& s : a.images)
    m = std::max(m, AdditivePolynomial::parse(field, s).nvars());
  std::vector<AdditivePolynomial> images;
  for (const auto& s : a.images)
    images.push_back(AdditivePolynomial::parse(field, s, m));
  auto h = f.compose(images);
  json j;
  j["field"] = trim(a.field);
  j["f"] = f.to_string();
  json im = json::array();
  for (const auto& x : images)
    im.push_back(x.to_string());
  j["images"] = im;
  j["composition"] = h.to_string();
  return finish(h.to_string() + "\n", j, Outcome::pass);
}

namespace {

std::string fields_text(const Fields& fs) {
  std::string s;
  for (const auto& [k, v] : fs)
    s += (s.empty() ? "" : ", ") + k + " = " + v;
  return s;
}

Outcome outcome_of(CertVerdict v) {
  switch (v) {
  case CertVerdict::pass:
    return Outcome::pass;
  case CertVerdict::fail:
    return Outcome::check_failed;
  default:
    return Outcome::inconclusive;
  }
}

} // namespace

Report cmd_tmcne(long p) {
  auto cert = verify_tmcne(p);
  std::string text;
  for (const auto& s : cert.steps) {
    text += s.name + ": " + (s.pass ? "pass" : "FAIL") +
            "\n    " + fields_text(s.computed) + "\n";
  }
  text += "verdict: " + std::string(to_string(cert.verdict)) + "\n";
  return {std::move(text), cert.to_json(), outcome_of(cert.verdict)};
}

Report cmd_fundeq(const FundEqArgs& a) {
  auto spec = FieldSpec::parse(a.field);
  FundEqCertificate cert;
  if (spec.kind == FieldSpec::Kind::padic) {
    long p = 0, prec = 0;
    auto f = parse_rational_poly(a.poly, &p, &prec);
    if (p != 0 && p != spec.p)
      throw Error(Errc::descriptor_mismatch, "polynomial suffix names Q_" + std::to_string(p));
    cert = verify_fundamental_equality(spec.p, f, a.precision > 0 ? a.precision : prec,
                                       a.asserted_irreducible);
  } else if (spec.kind == FieldSpec::Kind::laurent) {
    cert = verify_fundamental_equality(Polynomial::parse(spec.field, a.poly),
                                       a.asserted_irreducible);
  } else {
    throw Error(Errc::usage, "fundeq needs Q_p or F(q)((t))");
  }
  std::string text = "f = " + cert.polynomial + " over " + cert.base + "\n" +
                     "n = " + std::to_string(cert.n) + ", e = " + std::to_string(cert.e) +
                     ", f_res = " + std::to_string(cert.f_res) + " (" + cert.criterion + ")\n" +
                     "n = e * f_res: " + (cert.equality ? "holds" : "FAILS") + "\n";
  return {std::move(text), cert.to_json(), cert.equality ? Outcome::pass : Outcome::check_failed};
}

Report cmd_selftest(std::uint64_t seed, long samples) {
  require_positive(samples, "samples");
  auto suites = run_selftest(seed, samples);
  json j;
  j["seed"] = seed;
  json arr = json::array();
  std::string text;
  bool clean = true;
  for (const auto& s : suites) {
    arr.push_back({{"name", s.name},
                   {"samples", s.samples},
                   {"violations", s.violations},
                   {"first_violation", s.first_violation}});
    text += s.name + ": " + std::to_string(s.samples) + " samples, " +
            std::to_string(s.violations) + " violations\n";
    if (s.violations > 0) {
      clean = false;
      text += "    first: " + s.first_violation + "\n";
    }
  }
  j["suites"] = arr;
  return finish(std::move(text), j, clean ? Outcome::pass : Outcome::check_failed);
}

} // namespace valfield
