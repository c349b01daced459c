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
#include <valfield/extremality.hpp>
#include <valfield/padic.hpp>
#include <valfield/rng.hpp>
#include <valfield/selftest.hpp>

#include <algorithm>
#include <array>
#include <functional>

namespace valfield {

namespace {

class Suite {
public:
  Suite(std::string name, long samples) : r_{std::move(name), samples, 0, {}} {}
  void check(bool ok, const std::function<std::string()>& describe) {
    if (ok)
      return;
    if (r_.violations++ == 0)
      r_.first_violation = describe();
  }
  SuiteResult result() && { return std::move(r_); }

private:
  SuiteResult r_;
};

mpq_class random_rational(Rng& rng) {
  mpq_class q(rng.range(-30, 30), rng.range(1, 6));
  q.canonicalize();
  return q;
}

SuiteResult value_suite(Rng& rng, long samples, int rank) {
  Suite s(rank == 1 ? "value group rank 1" : "value group rank 2", samples);
  auto draw = [&] {
    return rank == 1 ? Value::rank1(random_rational(rng))
                     : Value::rank2(random_rational(rng), random_rational(rng));
  };
  const Value zero = rank == 1 ? Value::rank1(0) : Value::rank2(0, 0);
  for (long i = 0; i < samples; ++i) {
    Value a = draw(), b = draw(), c = draw();
    auto show = [&] { return a.to_string() + ", " + b.to_string() + ", " + c.to_string(); };
    s.check((a + b) + c == a + (b + c), show);
    s.check(a + b == b + a, show);
    s.check(a + zero == a, show);
    s.check(a + (-a) == zero, show);
    s.check(!(a <= b) || a + c <= b + c, show);
    s.check(a <= b || b <= a, show);
    s.check(Value::parse(a.to_string()) == a, show);
  }
  return std::move(s).result();
}

LaurentSeries random_series(Rng& rng, const FieldRef& field, long lo, long hi, int len) {
  std::vector<Elt> c;
  for (int i = 0; i < len; ++i)
    c.push_back(static_cast<Elt>(rng.range(0, static_cast<long>(field->size()) - 1)));
  if (c.front() == 0)
    c.front() = 1;
  return LaurentSeries(field, rng.range(lo, hi), c);
}

SuiteResult laurent_suite(Rng& rng, long samples) {
  Suite s("laurent valuation", samples);
  const std::array<FieldRef, 3> fields{FiniteField::prime(2), FiniteField::prime(3),
                                       FiniteField::create(2, 2)};
  for (long i = 0; i < samples; ++i) {
    const FieldRef& field = fields[static_cast<std::size_t>(i % 3)];
    auto x = random_series(rng, field, -3, 3, 4), y = random_series(rng, field, -3, 3, 4);
    auto show = [&] { return x.to_string() + ", " + y.to_string(); };
    long vx = x.low(), vy = y.low();
    s.check((x * y).valuation() == ValuationResult::exact(Value::rank1(vx + vy)), show);
    auto sum = x + y;
    if (!sum.is_exact_zero()) {
      s.check(sum.low() >= std::min(vx, vy), show);
      if (vx != vy)
        s.check(sum.low() == std::min(vx, vy), show);
    }
    s.check(LaurentSeries::parse(field, x.to_string()) == x, show);
  }
  return std::move(s).result();
}

SuiteResult padic_suite(Rng& rng, long samples) {
  Suite s("p-adic valuation", samples);
  const std::array<long, 3> primes{2, 3, 5};
  auto draw = [&] {
    mpq_class q(rng.range(-500, 500), rng.range(1, 500));
    q.canonicalize();
    if (q == 0)
      q = 1;
    return q;
  };
  for (long i = 0; i < samples; ++i) {
    long p = primes[static_cast<std::size_t>(i % 3)];
    mpq_class a = draw(), b = draw();
    auto show = [&] { return "p=" + std::to_string(p) + " " + a.get_str() + ", " + b.get_str(); };
    auto exact_v = [&](const mpq_class& q) {
      return padic_valuation(q.get_num(), p) - padic_valuation(q.get_den(), p);
    };
    auto x = PAdicNumber::from_rational(p, a, 30), y = PAdicNumber::from_rational(p, b, 30);
    s.check(x.valuation() == ValuationResult::exact(Value::rank1(exact_v(a))), show);
    s.check((x * y).valuation() == ValuationResult::exact(Value::rank1(exact_v(a) + exact_v(b))),
            show);
    auto sum = x + y;
    long lo = std::min(exact_v(a), exact_v(b));
    s.check(sum.valuation_lower_bound() >= lo, show);
    if (exact_v(a) != exact_v(b))
      s.check(sum.valuation() == ValuationResult::exact(Value::rank1(lo)), show);
  }
  return std::move(s).result();
}

SuiteResult composite_suite(Rng& rng, long samples) {
  Suite s("composite valuation", samples);
  auto field = FiniteField::prime(2);
  auto draw = [&] {
    std::vector<LaurentSeries> c;
    for (int e = 0; e < 3; ++e)
      c.push_back(random_series(rng, field, -2, 2, 3));
    return CompositeSeries(field, rng.range(-2, 2), c);
  };
  for (long i = 0; i < samples; ++i) {
    auto x = draw(), y = draw();
    auto show = [&] { return x.to_string() + ", " + y.to_string(); };
    Value vx = x.valuation().value(), vy = y.valuation().value();
    s.check((x * y).valuation() == ValuationResult::exact(vx + vy), show);
    auto vs = (x + y).valuation();
    s.check(vs.value() >= std::min(vx, vy), show);
    if (vx != vy)
      s.check(vs == ValuationResult::exact(std::min(vx, vy)), show);
  }
  return std::move(s).result();
}

AdditivePolynomial random_additive(Rng& rng, const FieldRef& field, int n, int max_k) {
  AdditivePolynomial f(field, n);
  while (f.is_zero())
    for (int i = 0; i < n; ++i)
      for (int k = 0; k <= max_k; ++k)
        if (rng.range(0, 2) == 0)
          f.add_term(i, k, LaurentSeries::monomial(field, 1, rng.range(-2, 2)) +
                               (rng.coin() ? LaurentSeries::monomial(field, 1, rng.range(-2, 2))
                                           : LaurentSeries::zero(field)));
  return f;
}

SuiteResult additivity_suite(Rng& rng, long samples) {
  Suite s("additivity", samples);
  for (long i = 0; i < samples; ++i) {
    auto field = FiniteField::prime(i % 2 ? 3 : 2);
    auto f = random_additive(rng, field, 1, 2);
    std::array<LaurentSeries, 1> x{random_series(rng, field, -2, 2, 3)};
    std::array<LaurentSeries, 1> y{random_series(rng, field, -2, 2, 3)};
    std::array<LaurentSeries, 1> xy{x[0] + y[0]};
    s.check(f.evaluate(xy) == f.evaluate(x) + f.evaluate(y),
            [&] { return f.to_string() + " at " + x[0].to_string() + ", " + y[0].to_string(); });
  }
  return std::move(s).result();
}

SuiteResult decomposition_suite(Rng& rng, long samples) {
  Suite s("decomposition", samples);
  for (long i = 0; i < samples; ++i) {
    auto field = FiniteField::prime(i % 2 ? 3 : 2);
    auto f = random_additive(rng, field, static_cast<int>(rng.range(1, 2)), 2);
    auto d = decompose(f);
    auto show = [&] { return f.to_string(); };
    s.check(d.identity_precision >= 40, show);
    s.check(leading_valuations_independent(d), show);
    s.check(sampled_valuation_independence(d, rng, 10), show);
    for (const auto& g : d.g)
      s.check(g.degree(0) == d.nu, show);
  }
  return std::move(s).result();
}

} // namespace

std::vector<SuiteResult> run_selftest(std::uint64_t seed, long samples) {
  Rng rng(seed);
  std::vector<SuiteResult> out;
  out.push_back(value_suite(rng, samples, 1));
  out.push_back(value_suite(rng, samples, 2));
  out.push_back(laurent_suite(rng, samples));
  out.push_back(padic_suite(rng, samples));
  out.push_back(composite_suite(rng, samples));
  out.push_back(additivity_suite(rng, samples));
  out.push_back(decomposition_suite(rng, std::max(1L, samples / 20)));
  return out;
}

} // namespace valfield
