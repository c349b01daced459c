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
#include <valfield/commands.hpp>

#include <doctest.h>
#include <json.hpp>

using namespace valfield;
using json = nlohmann::json;

TEST_CASE("field descriptors") {
  auto a = FieldSpec::parse("F(3)((t))");
  CHECK(a.kind == FieldSpec::Kind::laurent);
  CHECK(a.p == 3);
  CHECK(FieldSpec::parse("F(2)").kind == FieldSpec::Kind::laurent);
  auto c = FieldSpec::parse(" F(2)((u))((t)) ");
  CHECK(c.kind == FieldSpec::Kind::composite);
  auto q = FieldSpec::parse("Q_5");
  CHECK(q.kind == FieldSpec::Kind::padic);
  CHECK(q.p == 5);
  CHECK_THROWS_AS(FieldSpec::parse("Q_x"), Error);
  CHECK_THROWS_AS(FieldSpec::parse("Q_4"), Error);
  CHECK_THROWS_AS(FieldSpec::parse("G(2)((t))"), Error);
}

TEST_CASE("error codes map to exit codes") {
  CHECK(exit_code(Errc::usage) == 1);
  CHECK(exit_code(Errc::parse) == 1);
  CHECK(exit_code(Errc::precondition) == 1);
  CHECK(exit_code(Errc::precision) == 3);
  CHECK(exit_code(Errc::irreducibility) == 3);
  CHECK(exit_code(Errc::budget_exceeded) == 4);
}

TEST_CASE("oap report with oracle") {
  OapArgs a{"F(3)((t))", "X^3 - X", "t^-1", 6, true, 10'000'000};
  auto r = cmd_oap(a);
  CHECK(r.outcome == Outcome::pass);
  auto j = json::parse(r.json);
  CHECK(j["value"] == "-1");
  CHECK(j["exact"] == true);
  CHECK(j["oracle"]["agrees"] == true);
  CHECK(j["oracle"]["value"] == "-1");
  // Identical invocations give identical reports.
  auto again = cmd_oap(a);
  CHECK(again.json == r.json);
  CHECK(again.text == r.text);
  a.budget = 10;
  CHECK_THROWS_AS(cmd_oap(a), Error);
}

TEST_CASE("decompose and alpha reports") {
  auto d = cmd_decompose({"F(2)((t))", "X^2 + (1+t)*Y^2", 128, 4, 10'000'000});
  CHECK(d.outcome == Outcome::pass);
  auto j = json::parse(d.json);
  CHECK(j["nu"] == 1);
  CHECK(j["pieces"].size() == 2);
  CHECK(j["oracle"]["agrees"] == true);

  auto al = cmd_alpha({"F(2)((t))", "t*X^2 + t^-3", 300, 0});
  CHECK(al.outcome == Outcome::pass);
  CHECK(json::parse(al.json)["alpha"] == "-5");
  CHECK_THROWS_AS(cmd_alpha({"Q_3", "X", 0, 0}), Error);
}

TEST_CASE("extremal and transfer reports") {
  ExtremalArgs e;
  e.field = "F(2)((t))";
  e.poly = "X^2 + X + t^-1";
  auto r = cmd_extremal(e);
  CHECK(r.outcome == Outcome::pass);
  CHECK(json::parse(r.json)["value"] == "-1");

  e.field = "F(2)((u))((t))";
  e.poly = "X^2 + u";
  e.pushdown = true;
  auto p = cmd_extremal(e);
  CHECK(p.outcome == Outcome::pass);
  CHECK(json::parse(p.json)["verdict"] == "Confirmed");
  e.poly = "X";
  CHECK(cmd_extremal(e).outcome == Outcome::inconclusive);

  TransferArgs t;
  t.field = "F(2)((t))";
  t.poly = "X^2 + t*X";
  t.alpha = 0;
  t.beta = 1;
  t.c = "t";
  t.check_precision = 4;
  auto tr = cmd_transfer(t);
  CHECK(tr.outcome == Outcome::pass);
  CHECK(json::parse(tr.json)["g"] == "t^2*X^2 + t^2*X");
  t.c = "1";
  CHECK_THROWS_AS(cmd_transfer(t), Error);
}

TEST_CASE("compose report") {
  auto r = cmd_compose({"F(2)((t))", "X^2 + t*Y", {"X + Y", "X^2"}});
  CHECK(json::parse(r.json)["composition"] == "X2^2 + (t^0 + t^1)*X1^2");
  CHECK_THROWS_AS(cmd_compose({"F(2)((t))", "X^2 + t*Y", {"X"}}), Error);
}

TEST_CASE("certificate reports") {
  auto r = cmd_tmcne(3);
  CHECK(r.outcome == Outcome::pass);
  auto j = json::parse(r.json);
  CHECK(j["p"] == 3);
  CHECK(j["steps"].size() == 5);
  CHECK(j["verdict"] == "pass");

  auto f = cmd_fundeq({"Q_5", "5*X^10 - 10*X^6 + 5*X^2 - 1", 0, false});
  CHECK(f.outcome == Outcome::pass);
  auto jf = json::parse(f.json);
  CHECK(jf["n"] == 10);
  CHECK(jf["e"] == 10);
  CHECK(jf["f"] == 1);
  CHECK_THROWS_AS(cmd_fundeq({"Q_5", "X^2 - 1 (over Q_3, prec=20)", 0, false}), Error);
}

TEST_CASE("selftest report") {
  auto r = cmd_selftest(0, 100);
  CHECK(r.outcome == Outcome::pass);
  CHECK(json::parse(r.json)["suites"].size() == 7);
  CHECK_THROWS_AS(cmd_selftest(0, 0), Error);
}
