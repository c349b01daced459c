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
#include <doctest.h>

#include <valfield/error.hpp>
#include <valfield/laurent.hpp>

#include "rng.hpp"

#include <set>
#include <vector>

using namespace valfield;

namespace {

LaurentSeries S(const FieldRef& f, const char* text) {
  return LaurentSeries::parse(f, text);
}

LaurentSeries random_series(testing::Rng& rng, const FieldRef& f, long prec) {
  long low = rng.range(-4, 4);
  std::vector<Elt> c(static_cast<std::size_t>(rng.range(1, 6)));
  for (auto& x : c)
    x = static_cast<Elt>(rng.range(0, static_cast<long>(f->size()) - 1));
  c[0] = c[0] ? c[0] : 1;
  return LaurentSeries(f, low, c, prec);
}

} // namespace

TEST_CASE("series_arith examples") {
  auto f2 = FiniteField::prime(2);
  auto f3 = FiniteField::prime(3);
  auto sum = S(f3, "t^-1 + 1*t^0 + O(t^5)") + S(f3, "-t^-1");
  CHECK(sum.to_string() == "t^0 + O(t^5)");
  CHECK(sum.valuation() == ValuationResult::exact(Value::rank1(0)));

  CHECK((S(f3, "t") * S(f3, "t^-1")).to_string() == "t^0");

  // 1/(1 - t) at N = 4, checked by multiplying back.
  auto inv = S(f2, "1") / S(f2, "1 - t + O(t^4)");
  CHECK((inv * S(f2, "1 - t + O(t^4)")).to_string() == "t^0 + O(t^4)");
  CHECK(inv.to_string() == "t^0 + t^1 + t^2 + t^3 + O(t^4)");
}

TEST_CASE("division errors") {
  auto f2 = FiniteField::prime(2);
  CHECK_THROWS_AS(S(f2, "1") / S(f2, "O(t^3)"), Error);
  // Exact division by a non-monomial has no finite answer.
  CHECK_THROWS_AS(S(f2, "1") / S(f2, "1 + t"), Error);
  CHECK(S(f2, "1").divide(S(f2, "1 + t"), 3).to_string() ==
        "t^0 + t^1 + t^2 + O(t^3)");
}

TEST_CASE("valuation examples") {
  auto f5 = FiniteField::prime(5);
  CHECK(S(f5, "t^3 + t^7").valuation() == ValuationResult::exact(Value::rank1(3)));
  CHECK(S(f5, "O(t^6)").valuation() == ValuationResult::at_least(Value::rank1(6)));
  CHECK((S(f5, "t^-2") * S(f5, "t^-2")).valuation() ==
        ValuationResult::exact(Value::rank1(-4)));
  CHECK(LaurentSeries::zero(f5).valuation().value().is_infinite());
}

TEST_CASE("error orders propagate through products") {
  auto f3 = FiniteField::prime(3);
  auto a = S(f3, "t^1 + O(t^4)");  // N_a = 4, v(a) = 1
  auto b = S(f3, "t^-2 + O(t^2)"); // N_b = 2, v(b) = -2
  CHECK((a * b).precision() == std::min(4 - 2, 2 + 1));
  CHECK(a.frobenius().precision() == 12);
}

TEST_CASE("text format round trips") {
  auto f5 = FiniteField::prime(5);
  const char* corpus[] = {"t^-2 + 3*t^0 + t^5 + O(t^8)", "O(t^8)", "0",
                          "4*t^1", "t^-7 + 2*t^-3 + O(t^-1)"};
  for (const char* s : corpus)
    CHECK(S(f5, s).to_string() == s);
  auto f9 = FiniteField::create(3, 2);
  auto x = LaurentSeries::parse(f9, "[0,1]*t^3 + t^4 + O(t^6)");
  CHECK(x.to_string() == "[0,1]*t^3 + t^4 + O(t^6)");
  CHECK(LaurentSeries::parse(f9, x.to_string()) == x);
  CHECK_THROWS_AS(S(f5, "t^ + 1"), Error);
  CHECK_THROWS_AS(S(f5, "t^1 t^2"), Error);
  CHECK_THROWS_AS(S(f5, ""), Error);

  testing::Rng rng;
  for (int i = 0; i < 200; ++i) {
    auto y = random_series(rng, f5, rng.coin() ? LaurentSeries::kExact : rng.range(3, 12));
    CHECK(S(f5, y.to_string().c_str()) == y);
  }
}

TEST_CASE("valuation axioms on seeded samples") {
  testing::Rng rng;
  MESSAGE("seed " << testing::kSeed);
  for (auto f : {FiniteField::prime(2), FiniteField::prime(3), FiniteField::create(2, 2)}) {
    for (int i = 0; i < 300; ++i) {
      auto x = random_series(rng, f, 20);
      auto y = random_series(rng, f, 20);
      auto vx = x.valuation(), vy = y.valuation();
      auto vxy = (x * y).valuation();
      REQUIRE(vxy.is_exact());
      CHECK(vxy.value() == vx.value() + vy.value());
      auto vs = (x + y).valuation();
      CHECK(vs.value() >= std::min(vx.value(), vy.value()));
      if (vx.value() != vy.value())
        CHECK(vs == ValuationResult::exact(std::min(vx.value(), vy.value())));
    }
  }
}

TEST_CASE("hensel_lift examples") {
  auto f2 = FiniteField::prime(2);
  // X^2 + X + t
  std::vector<LaurentSeries> f{S(f2, "t"), S(f2, "1"), S(f2, "1")};
  auto x = hensel_lift(f, LaurentSeries::zero(f2), 3);
  CHECK(x.to_string() == "t^1 + t^2 + O(t^3)");
  CHECK(eval_series_poly(f, x).valuation().value() >= Value::rank1(3));

  // X - c with v(x0 - c) > 0 lifts to c.
  auto c = S(f2, "1 + t^2 + t^3");
  std::vector<LaurentSeries> lin{-c, S(f2, "1")};
  auto root = hensel_lift(lin, S(f2, "1 + t"), 6);
  CHECK(root == c.truncate(6));

  // X^3 - X - t over F_3: back-substitute to t^9.
  auto f3 = FiniteField::prime(3);
  std::vector<LaurentSeries> as{S(f3, "-t"), S(f3, "-1"), S(f3, "0"), S(f3, "1")};
  auto r = hensel_lift(as, LaurentSeries::zero(f3), 9);
  CHECK(r.valuation() == ValuationResult::exact(Value::rank1(1)));
  auto residual = eval_series_poly(as, r);
  CHECK(residual.valuation().value() >= Value::rank1(9));
}

TEST_CASE("hensel_lift rejects inputs failing the Hensel condition") {
  auto f2 = FiniteField::prime(2);
  // X^2 + t at 0: f' = 0 identically in characteristic 2.
  std::vector<LaurentSeries> f{S(f2, "t"), S(f2, "0"), S(f2, "1")};
  try {
    (void)hensel_lift(f, LaurentSeries::zero(f2), 4);
    FAIL("expected Hensel failure");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::hensel_condition);
  }
  auto f3 = FiniteField::prime(3);
  // X^2 - 2 at x0 = 0: v(f(0)) = 0, not > 2 v(f'(0)) = 2 v(0) ... f'(0) = 0.
  std::vector<LaurentSeries> g{S(f3, "1"), S(f3, "0"), S(f3, "1")};
  CHECK_THROWS_AS(hensel_lift(g, S(f3, "1"), 4), Error);
}

TEST_CASE("artin_schreier_solve examples") {
  auto f3 = FiniteField::prime(3);
  auto a = S(f3, "t");
  auto x = artin_schreier_solve(a, 10);
  REQUIRE(x.has_value());
  CHECK((x->frobenius() - *x - a).valuation().value() >= Value::rank1(10));

  for (long p : {2L, 3L, 5L}) {
    auto f = FiniteField::prime(p);
    CHECK_FALSE(artin_schreier_solve(S(f, "t^-1")).has_value());
  }
  auto zero = artin_schreier_solve(LaurentSeries::zero(f3));
  REQUIRE(zero.has_value());
  CHECK(zero->is_exact_zero());

  // Polar part with exponent divisible by p: t^-3 = y^3 - y with y = t^-1 + ...
  auto polar = artin_schreier_solve(S(f3, "t^-3 + 2*t^-1 + t"), 12);
  REQUIRE(polar.has_value());
  CHECK((polar->frobenius() - *polar - S(f3, "t^-3 + 2*t^-1 + t")).valuation().value() >=
        Value::rank1(12));
  // Residue equation X^3 - X - 1 has no root over F_3.
  CHECK_FALSE(artin_schreier_solve(S(f3, "1 + t")).has_value());
  CHECK_THROWS_AS(artin_schreier_solve(S(f3, "O(t^4)")), Error);
}

TEST_CASE("artin_schreier_solve agrees with exhaustive search over O/t^N") {
  for (long p : {2L, 3L}) {
    auto f = FiniteField::prime(p);
    for (long n = 1; n <= 4; ++n) {
      long count = 1;
      for (long i = 0; i < n; ++i)
        count *= p;
      // Image of x -> x^p - x on O/t^N, by enumeration.
      std::set<std::vector<Elt>> image;
      auto digits = [&](long code) {
        std::vector<Elt> d(static_cast<std::size_t>(n));
        for (auto& x : d) {
          x = static_cast<Elt>(code % p);
          code /= p;
        }
        return d;
      };
      auto as_key = [&](const LaurentSeries& s) {
        std::vector<Elt> key(static_cast<std::size_t>(n));
        for (long e = 0; e < n; ++e)
          key[static_cast<std::size_t>(e)] = s.coeff(e);
        return key;
      };
      for (long code = 0; code < count; ++code) {
        LaurentSeries x(f, 0, digits(code), n);
        image.insert(as_key(x.frobenius() - x));
      }
      for (long code = 0; code < count; ++code) {
        LaurentSeries a(f, 0, digits(code), n);
        if (a.is_zero_to_precision())
          continue;
        bool solvable = artin_schreier_solve(a).has_value();
        CHECK(solvable == (image.count(as_key(a)) == 1));
      }
    }
  }
}
