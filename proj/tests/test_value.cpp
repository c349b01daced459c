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
#include <valfield/value.hpp>

#include "rng.hpp"

#include <vector>

using namespace valfield;

TEST_CASE("value_add examples") {
  CHECK(Value::rank1(1, 2) + Value::rank1(1, 2) == Value::rank1(1));
  CHECK(Value::rank1(3) + Value::infinity() == Value::infinity());
  CHECK(Value::rank2(0, 1) + Value::rank2(1, -1) == Value::rank2(1, 0));
}

TEST_CASE("value_min examples") {
  std::vector<Value> a{Value::rank1(2), Value::rank1(-1, 3), Value::infinity()};
  CHECK(value_min(a) == Value::rank1(-1, 3));
  std::vector<Value> b{Value::rank2(0, 5), Value::rank2(0, -1)};
  CHECK(value_min(b) == Value::rank2(0, -1));
  std::vector<Value> c{Value::infinity()};
  CHECK(value_min(c).is_infinite());
}

TEST_CASE("errors: empty min and rank mixing") {
  std::vector<Value> empty;
  CHECK_THROWS_AS(value_min(empty), Error);
  try {
    (void)(Value::rank1(1) + Value::rank2(0, 1));
    FAIL("expected rank mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::rank_mismatch);
  }
  std::vector<Value> mixed{Value::rank1(0), Value::rank2(0, 0)};
  CHECK_THROWS_AS(value_min(mixed), Error);
  CHECK_THROWS_AS((void)(Value::rank1(0) < Value::rank2(0, 0)), Error);
}

TEST_CASE("infinity is the top element") {
  CHECK(Value::rank1(1000000) < Value::infinity());
  CHECK(Value::rank2(99, 99) < Value::infinity());
  CHECK_THROWS_AS(-Value::infinity(), Error);
}

TEST_CASE("text form round trips") {
  for (const char* s : {"-1/6", "0", "7", "(1,-1/2)", "inf", "(0,0)"})
    CHECK(Value::parse(s).to_string() == s);
  CHECK(Value::parse(" ( 2 , 4/2 ) ") == Value::rank2(2, 2));
  CHECK_THROWS_AS(Value::parse("1/0"), Error);
  CHECK_THROWS_AS(Value::parse("abc"), Error);
  CHECK_THROWS_AS(Value::parse("(1,2"), Error);
}

TEST_CASE("descriptor membership and grain") {
  ValueGroupDescriptor g(1, 6);
  CHECK(g.contains(Value::rank1(-1, 6)));
  CHECK(g.contains(Value::rank1(1, 2)));
  CHECK_FALSE(g.contains(Value::rank1(1, 4)));
  CHECK_FALSE(g.contains(Value::rank2(0, 0)));
  CHECK(g.finest_grain() == Value::rank1(1, 6));
  CHECK_THROWS_AS(ValueGroupDescriptor(3, 1), Error);
  CHECK_THROWS_AS(ValueGroupDescriptor(1, 0), Error);
}

TEST_CASE("ordered group axioms on seeded samples") {
  testing::Rng rng;
  MESSAGE("seed " << testing::kSeed);
  auto r1 = [&] { return Value::rank1(rng.range(-20, 20), rng.range(1, 6)); };
  auto r2 = [&] {
    return Value::rank2(mpq_class(rng.range(-3, 3), rng.range(1, 3)),
                        mpq_class(rng.range(-5, 5), rng.range(1, 4)));
  };
  for (int i = 0; i < 500; ++i) {
    for (int rank : {1, 2}) {
      auto gen = [&] { return rank == 1 ? r1() : r2(); };
      Value a = gen(), b = gen(), c = gen();
      Value zero = rank == 1 ? Value::rank1(0) : Value::rank2(0, 0);
      CHECK((a + b) + c == a + (b + c));
      CHECK(a + b == b + a);
      CHECK(a + zero == a);
      CHECK(a - a == zero);
      if (a < b)
        CHECK(a + c < b + c);
      CHECK(((a < b) + (a == b) + (b < a)) == 1);
    }
  }
}

TEST_CASE("maximum of valuation results prefers dominating lower bounds") {
  std::vector<ValuationResult> r{ValuationResult::exact(Value::rank1(1)),
                                 ValuationResult::at_least(Value::rank1(4)),
                                 ValuationResult::exact(Value::rank1(3))};
  CHECK(max_valuation_index(r) == 1);
  std::vector<ValuationResult> tie{ValuationResult::exact(Value::rank1(4)),
                                   ValuationResult::at_least(Value::rank1(4))};
  CHECK(max_valuation_index(tie) == 1);
}
