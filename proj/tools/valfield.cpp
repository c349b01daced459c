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
#include <valfield/valfield.h>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

namespace {

// Prints the report, writes JSON when asked, and maps the outcome to an
// exit code.
int emit(vf_status status, vf_report* report, const std::string& json_path) {
  if (status != VF_OK) {
    std::cerr << "error (" << vf_status_name(status) << "): " << vf_last_error() << "\n";
    return vf_exit_code(status);
  }
  std::cout << vf_report_text(report);
  int code = static_cast<int>(vf_report_outcome(report));
  if (json_path == "-") {
    std::cout << vf_report_json(report) << "\n";
  } else if (!json_path.empty()) {
    std::ofstream out(json_path);
    out << vf_report_json(report) << "\n";
    if (!out) {
      std::cerr << "error: cannot write " << json_path << "\n";
      code = 1;
    }
  }
  vf_report_free(report);
  return code;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Valued-field computations over F_q((t)), F_q((u))((t)) and Q_p"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(vf_version()));
  std::string json_path;
  std::function<int()> run;

  auto add_json = [&](CLI::App* sub) {
    sub->add_option("--json", json_path, "Write the JSON report to a file, or - for stdout");
  };
  auto positive = CLI::PositiveNumber;

  vf_oap_args oap;
  vf_oap_args_init(&oap);
  std::string oap_field, oap_poly, oap_target;
  auto* s_oap = app.add_subcommand("oap", "Optimal approximation for an additive polynomial");
  s_oap->add_option("--field", oap_field, "Field such as F(3)((t))")->required();
  s_oap->add_option("--poly", oap_poly, "Additive polynomial")->required();
  s_oap->add_option("--target", oap_target, "Element z")->required();
  s_oap->add_option("--prec", oap.precision, "Precision N")->check(positive)->capture_default_str();
  s_oap->add_flag("--oracle", oap.oracle, "Cross-check against brute force");
  s_oap->add_option("--budget", oap.budget, "Enumeration budget")->check(positive)->capture_default_str();
  add_json(s_oap);
  s_oap->callback([&] {
    run = [&] {
      oap.field = oap_field.c_str();
      oap.poly = oap_poly.c_str();
      oap.target = oap_target.c_str();
      vf_report* r = nullptr;
      auto s = vf_oap(&oap, &r);
      return emit(s, r, json_path);
    };
  });

  vf_decompose_args dec;
  vf_decompose_args_init(&dec);
  std::string dec_field, dec_poly;
  auto* s_dec = app.add_subcommand("decompose", "Decompose an additive polynomial");
  s_dec->add_option("--field", dec_field, "Field such as F(2)((t))")->required();
  s_dec->add_option("--poly", dec_poly, "Additive polynomial")->required();
  s_dec->add_option("--work-prec", dec.work_precision, "Working precision")->check(positive)->capture_default_str();
  s_dec->add_option("--oracle", dec.oracle_precision, "Compare image sets modulo t^N")->check(positive);
  s_dec->add_option("--budget", dec.budget, "Enumeration budget")->check(positive)->capture_default_str();
  add_json(s_dec);
  s_dec->callback([&] {
    run = [&] {
      dec.field = dec_field.c_str();
      dec.poly = dec_poly.c_str();
      vf_report* r = nullptr;
      auto s = vf_decompose(&dec, &r);
      return emit(s, r, json_path);
    };
  });

  vf_alpha_args al;
  vf_alpha_args_init(&al);
  std::string al_field, al_poly;
  auto* s_al = app.add_subcommand("alpha", "Separation radius of a p-polynomial");
  s_al->add_option("--field", al_field, "Field such as F(2)((t))")->required();
  s_al->add_option("--poly", al_poly, "p-polynomial with optional constant")->required();
  s_al->add_option("--check", al.samples, "Sample the inequalities this many times")->check(positive);
  s_al->add_option("--seed", al.seed, "Sampling seed")->capture_default_str();
  add_json(s_al);
  s_al->callback([&] {
    run = [&] {
      al.field = al_field.c_str();
      al.poly = al_poly.c_str();
      vf_report* r = nullptr;
      auto s = vf_alpha(&al, &r);
      return emit(s, r, json_path);
    };
  });

  vf_extremal_args ex;
  vf_extremal_args_init(&ex);
  std::string ex_field, ex_poly, ex_ball = "v>=0 around 0";
  auto* s_ex = app.add_subcommand("extremal", "Maximal valuation of a polynomial on a ball");
  s_ex->add_option("--field", ex_field, "F(q)((t)) or F(q)((u))((t))")->required();
  s_ex->add_option("--poly", ex_poly, "Polynomial")->required();
  s_ex->add_option("--ball", ex_ball, "Ball such as 'v>=0 around 0'")->capture_default_str();
  s_ex->add_option("--prec", ex.precision, "Precision N")->check(positive)->capture_default_str();
  s_ex->add_option("--t-prec", ex.t_precision, "Composite t precision")->check(positive)->capture_default_str();
  s_ex->add_option("--u-prec", ex.u_precision, "Composite u precision")->check(positive)->capture_default_str();
  s_ex->add_option("--u-floor", ex.u_floor, "Lowest u power above t^0")->capture_default_str();
  s_ex->add_flag("--pushdown", ex.pushdown, "Compare with the residue-level search");
  s_ex->add_option("--budget", ex.budget, "Enumeration budget")->check(positive)->capture_default_str();
  add_json(s_ex);
  s_ex->callback([&] {
    run = [&] {
      ex.field = ex_field.c_str();
      ex.poly = ex_poly.c_str();
      ex.ball = ex_ball.c_str();
      vf_report* r = nullptr;
      auto s = vf_extremal(&ex, &r);
      return emit(s, r, json_path);
    };
  });

  vf_transfer_args tr;
  vf_transfer_args_init(&tr);
  std::string tr_field, tr_poly, tr_a = "0", tr_b = "0", tr_c = "1";
  auto* s_tr = app.add_subcommand("transfer", "Move a polynomial between balls");
  s_tr->add_option("--field", tr_field, "Field such as F(2)((t))")->required();
  s_tr->add_option("--poly", tr_poly, "Polynomial f")->required();
  s_tr->add_option("--alpha", tr.alpha, "Radius of the source ball")->required();
  s_tr->add_option("-a,--center-a", tr_a, "Center of the source ball")->capture_default_str();
  s_tr->add_option("--beta", tr.beta, "Radius of the target ball")->required();
  s_tr->add_option("-b,--center-b", tr_b, "Center of the target ball")->capture_default_str();
  s_tr->add_option("-c,--scale", tr_c, "Scale with v(c) = beta - alpha")->capture_default_str();
  s_tr->add_option("--check", tr.check_precision, "Compare value multisets modulo t^M")->check(positive);
  s_tr->add_option("--budget", tr.budget, "Enumeration budget")->check(positive)->capture_default_str();
  add_json(s_tr);
  s_tr->callback([&] {
    run = [&] {
      tr.field = tr_field.c_str();
      tr.poly = tr_poly.c_str();
      tr.a = tr_a.c_str();
      tr.b = tr_b.c_str();
      tr.c = tr_c.c_str();
      vf_report* r = nullptr;
      auto s = vf_transfer(&tr, &r);
      return emit(s, r, json_path);
    };
  });

  std::string co_field, co_poly;
  std::vector<std::string> co_images;
  auto* s_co = app.add_subcommand("compose", "Compose additive polynomials");
  s_co->add_option("--field", co_field, "Field such as F(2)((t))")->required();
  s_co->add_option("--poly", co_poly, "Outer additive polynomial")->required();
  s_co->add_option("--with", co_images, "Image of each variable, in order")->required();
  add_json(s_co);
  s_co->callback([&] {
    run = [&] {
      std::vector<const char*> ptrs;
      for (const auto& s : co_images)
        ptrs.push_back(s.c_str());
      vf_compose_args co;
      vf_compose_args_init(&co);
      co.field = co_field.c_str();
      co.poly = co_poly.c_str();
      co.images = ptrs.data();
      co.image_count = ptrs.size();
      vf_report* r = nullptr;
      auto s = vf_compose(&co, &r);
      return emit(s, r, json_path);
    };
  });

  long tm_p = 3;
  auto* s_tm = app.add_subcommand("tmcne", "Certificate for the two non-equivalent valued fields");
  s_tm->add_option("-p", tm_p, "Odd prime p <= 7")->required();
  add_json(s_tm);
  s_tm->callback([&] {
    run = [&] {
      vf_report* r = nullptr;
      auto s = vf_tmcne(tm_p, &r);
      return emit(s, r, json_path);
    };
  });

  vf_fundeq_args fe;
  vf_fundeq_args_init(&fe);
  std::string fe_field, fe_poly;
  auto* s_fe = app.add_subcommand("fundeq", "Check n = e f for an irreducible polynomial");
  s_fe->add_option("--field", fe_field, "Q_p or F(q)((t))")->required();
  s_fe->add_option("--poly", fe_poly, "Polynomial")->required();
  s_fe->add_option("--prec", fe.precision, "p-adic precision")->check(positive);
  s_fe->add_flag("--assert-irreducible", fe.asserted_irreducible, "Trust irreducibility");
  add_json(s_fe);
  s_fe->callback([&] {
    run = [&] {
      fe.field = fe_field.c_str();
      fe.poly = fe_poly.c_str();
      vf_report* r = nullptr;
      auto s = vf_fundeq(&fe, &r);
      return emit(s, r, json_path);
    };
  });

  std::uint64_t st_seed = 0;
  long st_samples = 1000;
  auto* s_st = app.add_subcommand("selftest", "Run the seeded invariant suites");
  s_st->add_option("--seed", st_seed, "Seed")->capture_default_str();
  s_st->add_option("--samples", st_samples, "Samples per suite")->check(positive)->capture_default_str();
  add_json(s_st);
  s_st->callback([&] {
    run = [&] {
      vf_report* r = nullptr;
      auto s = vf_selftest(st_seed, st_samples, &r);
      return emit(s, r, json_path);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  return run ? run() : 1;
}
