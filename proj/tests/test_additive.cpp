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
#include "rng.hpp"

#include <valfield/additive.hpp>
#include <valfield/error.hpp>

#include <doctest.h>

#include <set>

using namespace valfield;

namespace {

const FieldRef F2 = FiniteField::prime(2);
const FieldRef F3 = FiniteField::prime(3);

LaurentSeries S(const FieldRef& f, std::string_view text) { return LaurentSeries::parse(f, text); }

using Digits = std::vector<Elt>;

// Coefficients at t^0..t^{N-1} of x if x lies in O modulo t^N.
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

// Independent first-exponent bound: v(c a^{p^k}) >= N once v(a) >= H.
long horizon(const AdditivePolynomial& f, long N) {
  long h = -1000;
  for (const auto& [key, c] : f.terms()) {
    long pk = 1;
    for (int i = 0; i < key.second; ++i)
      pk *= f.p();
    long need = N - c.low();
    long q = need >= 0 ? (need + pk - 1) / pk : -((-need) / pk);
    h = std::max(h, q);
  }
  return h;
}

// {y(a) mod t^N : a in (t^low O / t^high O)^n, y(a) in O}, by enumeration.
template <class Eval>
std::set<Digits> literal_image(const FieldRef& field, int n, long low, long high, long N,
                               Eval&& eval) {
  std::set<Digits> out;
  Ball ball{LaurentSeries::zero(field), low};
  for_each_representative(ball, n, high, [&](const std::vector<LaurentSeries>& a) {
    std::vector<LaurentSeries> exact;
    for (const auto& x : a)
      exact.push_back(LaurentSeries(field, x.low(), {x.coeffs().begin(), x.coeffs().end()}));
    auto y = eval(exact);
    REQUIRE(y.precision() >= N);
    if (auto d = integral_digits(y, N))
      out.insert(*d);
  });
  return out;
}

std::set<Digits> listed(const TruncatedSubspace& s) {
  std::set<Digits> out;
  for (const auto& x : s.elements(20))
    out.insert(*integral_digits(x, s.precision()));
  return out;
}

AdditivePolynomial random_additive(testing::Rng& rng, const FieldRef& field, int n, int max_k) {
  AdditivePolynomial f(field, n);
  while (f.is_zero())
    for (int i = 0; i < n; ++i)
      for (int k = 0; k <= max_k; ++k)
        if (rng.range(0, 2) == 0)
          f.add_term(i, k, LaurentSeries::monomial(field, 1 + static_cast<Elt>(rng.range(0, field->p() - 2)),
                                                   rng.range(-2, 2)) +
                               (rng.coin() ? LaurentSeries::monomial(field, 1, rng.range(-2, 2))
                                           : LaurentSeries::zero(field)));
  return f;
}

} // namespace

TEST_CASE("evaluation") {
  auto sq = AdditivePolynomial::parse(F2, "X^2");
  std::array<LaurentSeries, 1> t{S(F2, "t")};
  CHECK(sq.evaluate(t) == S(F2, "t^2"));
  auto as = AdditivePolynomial::parse(F3, "X^3 - X");
  std::array<LaurentSeries, 1> one{S(F3, "1")};
  CHECK(as.evaluate(one).is_exact_zero());
  CHECK_THROWS_AS(AdditivePolynomial::parse(F3, "X^2"), Error);
  CHECK_THROWS_AS(AdditivePolynomial::parse(F3, "X*Y"), Error);
  CHECK_THROWS_AS(AdditivePolynomial::parse(F3, "X + 1"), Error);
  auto h = PPolynomial::parse(F2, "t*X1^4 + X2^2 + t^-3");
  REQUIRE(h.constant.has_value());
  CHECK(*h.constant == S(F2, "t^-3"));
  CHECK(h.additive.nvars() == 2);
  CHECK(PPolynomial::parse(F2, h.to_string()).to_string() == h.to_string());
}

TEST_CASE("additivity") {
  testing::Rng rng(testing::kSeed);
  auto f = AdditivePolynomial::parse(F3, "t*X^9 + X^3");
  for (int i = 0; i < 200; ++i) {
    auto rnd = [&] {
      std::vector<Elt> c;
      for (int j = 0; j < 5; ++j)
        c.push_back(static_cast<Elt>(rng.range(0, 2)));
      return LaurentSeries(F3, rng.range(-3, 3), c, 12);
    };
    std::array<LaurentSeries, 1> x{rnd()}, y{rnd()}, s{x[0] + y[0]};
    auto lhs = f.evaluate(s), rhs = f.evaluate(x) + f.evaluate(y);
    long prec = std::min(lhs.precision(), rhs.precision());
    CHECK((lhs - rhs).truncate(prec).is_zero_to_precision());
  }
}

TEST_CASE("composition") {
  auto f = AdditivePolynomial::parse(F2, "X1^2 + t*X2");
  std::vector<AdditivePolynomial> images{AdditivePolynomial::parse(F2, "X1 + X2^2", 2),
                                         AdditivePolynomial::parse(F2, "t*X2", 2)};
  auto g = f.compose(images);
  CHECK(g == AdditivePolynomial::parse(F2, "X1^2 + X2^4 + t^2*X2", 2));
}

TEST_CASE("decomposition examples") {
  auto d1 = decompose(AdditivePolynomial::parse(F2, "X^2 + t*Y^2"));
  CHECK(d1.nu == 1);
  REQUIRE(d1.g.size() == 2);
  CHECK(d1.leading[0] == S(F2, "1"));
  CHECK(d1.leading[1] == S(F2, "t"));
  CHECK(d1.merges == 0);

  auto d2 = decompose(AdditivePolynomial::parse(F2, "X^2 + (1+t)*Y^2"));
  REQUIRE(d2.g.size() == 2);
  CHECK(d2.g[0] == AdditivePolynomial::parse(F2, "X^2"));
  CHECK(d2.g[1] == AdditivePolynomial::parse(F2, "t*X^2"));
  CHECK(d2.identity_precision == LaurentSeries::kExact);

  auto d3 = decompose(AdditivePolynomial::parse(F3, "X^9 + X^3"));
  CHECK(d3.nu == 2);
  REQUIRE(d3.g.size() == 1);
  CHECK(d3.g[0] == AdditivePolynomial::parse(F3, "X^9 + X^3"));

  auto d4 = decompose(AdditivePolynomial::parse(F3, "X + t*Y"));
  CHECK(d4.nu == 0);
  CHECK(d4.g.size() == 1);

  auto d0 = decompose(AdditivePolynomial(F3, 2));
  CHECK(d0.g.empty());
}

TEST_CASE("decomposition image equals the literal image") {
  // u^2 + v^2 + t v^2 = (u+v)^2 + t v^2.
  auto f = AdditivePolynomial::parse(F2, "X^2 + (1+t)*Y^2");
  auto lit_f = literal_image(F2, 2, 0, 4, 4, [&](auto& a) { return f.evaluate(a); });
  auto g = AdditivePolynomial::parse(F2, "X^2 + t*Y^2");
  auto lit_g = literal_image(F2, 2, 0, 4, 4, [&](auto& a) { return g.evaluate(a); });
  CHECK(lit_f == lit_g);
  CHECK(lit_f == listed(image_subspace(f, 0, 4).integral_part()));
}

TEST_CASE("decomposition properties on random instances") {
  testing::Rng rng(testing::kSeed);
  const long N = 3;
  int literal_checked = 0;
  for (const FieldRef& field : {F2, F3}) {
    for (int trial = 0; trial < 30; ++trial) {
      int n = static_cast<int>(rng.range(1, 2));
      auto f = random_additive(rng, field, n, field->p() == 2 ? 2 : 1);
      CAPTURE(f.to_string());
      auto d = decompose(f);
      CHECK(d.identity_precision >= 40);
      CHECK(leading_valuations_independent(d));
      CHECK(sampled_valuation_independence(d, rng, 20));
      for (const auto& g : d.g)
        CHECK(g.degree(0) == d.nu);
      long alpha = alpha_bound_integer(std::nullopt, d);
      long low = pullback_radius(d, alpha);
      auto image_f = image_subspace(f, low, N).integral_part();
      // Sum of the g_i images through one joint subspace.
      long lo = 0;
      for (const auto& g : d.g)
        lo = std::min(lo, image_subspace(g, alpha, N).low());
      TruncatedSubspace joint(field, lo, N);
      for (const auto& g : d.g)
        for (const auto& x : image_subspace(g, alpha, N).basis())
          joint.insert(x);
      CHECK(image_f == joint.integral_part());

      // Literal enumeration when the window is small.
      long hf = horizon(f, N);
      std::uint64_t count = ball_representative_count({LaurentSeries::zero(field), low}, n, hf, 1u << 16);
      if (count <= (1u << 16)) {
        auto lit = literal_image(field, n, low, hf, N, [&](auto& a) { return f.evaluate(a); });
        CHECK(lit == listed(image_f));
        ++literal_checked;
      }
    }
  }
  CHECK(literal_checked > 5);
}

namespace {

// Exact elements t^e (1 + random higher digits).
LaurentSeries random_at(testing::Rng& rng, const FieldRef& field, long e, int digits) {
  std::vector<Elt> c{1};
  for (int j = 0; j < digits; ++j)
    c.push_back(static_cast<Elt>(rng.range(0, field->p() - 1)));
  return LaurentSeries(field, e, c);
}

// Lead equality below alpha, lower bound above it, and the separation.
void check_alpha(const FieldRef& field, std::string_view text, long expected) {
  CAPTURE(text);
  auto h = PPolynomial::parse(field, text);
  auto d = decompose(h.additive);
  Value alpha = alpha_bound(h, d);
  CHECK(alpha == Value::rank1(expected));
  REQUIRE(d.g.size() == 1);
  const auto& g = d.g[0];
  const long vb = d.leading[0].low();
  long pnu = 1;
  for (int k = 0; k < d.nu; ++k)
    pnu *= field->p();
  testing::Rng rng(testing::kSeed);
  long outside_max = -1000000, inside_min = 1000000;
  for (int s = 0; s < 300; ++s) {
    long e = rng.range(expected - 4, expected + 4);
    std::array<LaurentSeries, 1> a{random_at(rng, field, e, 4)};
    auto y = g.evaluate(a);
    long vy = y.valuation_lower_bound();
    auto hy = h.constant ? y + *h.constant : y;
    long vh = hy.is_exact_zero() ? 1000000 : hy.valuation_lower_bound();
    if (e <= expected) {
      CHECK(vy == vb + pnu * e);
      if (h.constant)
        CHECK(vy < h.constant->low());
    }
    if (e >= expected)
      CHECK(vy >= vb + pnu * expected);
    if (e < expected)
      outside_max = std::max(outside_max, vh);
    else
      inside_min = std::min(inside_min, vh);
  }
  CHECK(outside_max < inside_min);
}

} // namespace

TEST_CASE("alpha bound examples") {
  check_alpha(F2, "t*X^2 + t^-3", -5);
  check_alpha(F2, "X^2", -1);
  check_alpha(F3, "X^9 + t*X^3 + t^2*X", -1);
  auto d = decompose(AdditivePolynomial::parse(F2, "X^2"));
  CHECK(alpha_bound_integer(S(F2, "t^3"), d) == -1);
}

TEST_CASE("oap examples") {
  auto as = AdditivePolynomial::parse(F3, "X^3 - X");
  auto r = oap_solve(as, S(F3, "t^-1"), 6);
  CHECK(r.value == ValuationResult::exact(Value::rank1(-1)));
  auto r2 = oap_solve(as, S(F3, "t"), 6);
  CHECK(r2.value == ValuationResult::at_least(Value::rank1(6)));
  REQUIRE(r2.input.size() == 1);
  auto resid = S(F3, "t") - as.evaluate(r2.input);
  CHECK(resid.valuation_lower_bound() >= 6);
  auto r3 = oap_solve(AdditivePolynomial(F3, 1), S(F3, "t^2"), 6);
  CHECK(r3.value == ValuationResult::exact(Value::rank1(2)));

  // Brute force over (t^-2 O)/t^3 confirms the first example.
  auto poly = Polynomial::parse(F3, "t^-1 - X^3 + X");
  auto b = brute_force_max(poly, {LaurentSeries::zero(F3), -2}, 6, 3);
  CHECK(b.value == ValuationResult::exact(Value::rank1(-1)));
}

TEST_CASE("brute force examples") {
  auto b1 = brute_force_max(Polynomial::parse(F2, "X^2 + t"), {LaurentSeries::zero(F2), 0}, 3);
  CHECK(b1.value == ValuationResult::exact(Value::rank1(1)));
  CHECK(b1.evaluated == 8);
  auto b2 = brute_force_max(Polynomial::parse(F2, "X"), {LaurentSeries::zero(F2), 0}, 2);
  CHECK(b2.value == ValuationResult::at_least(Value::rank1(2)));
  auto b3 = brute_force_max(Polynomial::parse(F2, "t*X"), {LaurentSeries::zero(F2), 1}, 3);
  CHECK(b3.value == ValuationResult::at_least(Value::rank1(3)));
  CHECK_THROWS_AS(brute_force_max(Polynomial::parse(F2, "X1 + X2"), {LaurentSeries::zero(F2), -10}, 10,
                                  0, 1000),
                  Error);
}

TEST_CASE("oap agrees with brute force") {
  testing::Rng rng(testing::kSeed + 7);
  const long N = 4;
  int compared = 0;
  for (const FieldRef& field : {F2, F3}) {
    for (int trial = 0; trial < 25; ++trial) {
      int n = static_cast<int>(rng.range(1, 2));
      auto f = random_additive(rng, field, n, 1);
      auto z = LaurentSeries::monomial(field, 1, rng.range(-2, 2)) +
               LaurentSeries::monomial(field, 1, rng.range(-2, 2));
      CAPTURE(f.to_string());
      CAPTURE(z.to_string());
      auto r = oap_solve(f, z, N);
      // The witness attains the reported value.
      auto resid = z - f.evaluate(r.input);
      if (r.value.is_exact())
        CHECK(Value::rank1(resid.valuation_lower_bound()) == r.value.value());
      else
        CHECK(resid.valuation_lower_bound() >= N);
      // Exhaustive search over a ball holding the witness.
      long low = -2;
      for (const auto& a : r.input)
        if (!a.is_zero_to_precision())
          low = std::min(low, a.low());
      long high = std::max(horizon(f, N), low + 1);
      Ball ball{LaurentSeries::zero(field), low};
      if (ball_representative_count(ball, n, high, 1u << 18) > (1u << 18))
        continue;
      auto poly = Polynomial::constant(field, n, z) - f.to_polynomial();
      auto b = brute_force_max(poly, ball, N, high);
      CHECK(b.value == r.value);
      ++compared;
    }
  }
  CHECK(compared > 20);
}
