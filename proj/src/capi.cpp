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
#include <valfield/laurent.hpp>
#include <valfield/valfield.h>

#include <new>
#include <string>

struct vf_report {
  valfield::Report report;
};

struct vf_series {
  valfield::LaurentSeries value;
  std::string text;
};

namespace {

thread_local std::string last_error;

// vf_status mirrors Errc shifted by one.
static_assert(static_cast<int>(valfield::Errc::usage) + 1 == VF_ERR_USAGE);
static_assert(static_cast<int>(valfield::Errc::irreducibility) + 1 == VF_ERR_IRREDUCIBILITY);

vf_status to_status(valfield::Errc code) {
  return static_cast<vf_status>(static_cast<int>(code) + 1);
}

// Runs body, translating exceptions into a status and the last error.
template <class Body>
vf_status guarded(Body&& body) {
  try {
    body();
    last_error.clear();
    return VF_OK;
  } catch (const valfield::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return VF_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return VF_ERR_INTERNAL;
  }
}

std::string str(const char* s) { return s ? s : ""; }

vf_status require(const void* p, const char* what) {
  if (p)
    return VF_OK;
  last_error = std::string(what) + " is null";
  return VF_ERR_USAGE;
}

template <class Run>
vf_status run_command(vf_report** out, Run&& run) {
  if (auto s = require(out, "output pointer"); s != VF_OK)
    return s;
  return guarded([&] { *out = new vf_report{run()}; });
}

} // namespace

extern "C" {

const char* vf_version(void) { return VALFIELD_VERSION; }

const char* vf_status_name(vf_status status) {
  if (status == VF_OK)
    return "ok";
  if (status == VF_ERR_INTERNAL)
    return "internal";
  if (status > VF_OK && status < VF_ERR_INTERNAL)
    return valfield::errc_name(static_cast<valfield::Errc>(status - 1));
  return "unknown";
}

const char* vf_last_error(void) { return last_error.c_str(); }

int vf_exit_code(vf_status status) {
  if (status == VF_OK)
    return 0;
  if (status > VF_OK && status < VF_ERR_INTERNAL)
    return valfield::exit_code(static_cast<valfield::Errc>(status - 1));
  return 1;
}

const char* vf_report_text(const vf_report* r) { return r ? r->report.text.c_str() : ""; }
const char* vf_report_json(const vf_report* r) { return r ? r->report.json.c_str() : ""; }
vf_outcome vf_report_outcome(const vf_report* r) {
  return r ? static_cast<vf_outcome>(r->report.outcome) : VF_INCONCLUSIVE;
}
void vf_report_free(vf_report* r) { delete r; }

void vf_oap_args_init(vf_oap_args* a) {
  valfield::OapArgs d;
  *a = {nullptr, nullptr, nullptr, d.precision, 0, d.budget};
}

void vf_decompose_args_init(vf_decompose_args* a) {
  valfield::DecomposeArgs d;
  *a = {nullptr, nullptr, d.work_precision, d.oracle_precision, d.budget};
}

void vf_alpha_args_init(vf_alpha_args* a) { *a = {nullptr, nullptr, 0, 0}; }

void vf_extremal_args_init(vf_extremal_args* a) {
  valfield::ExtremalArgs d;
  *a = {nullptr, nullptr, nullptr, d.precision, d.t_precision, d.u_precision, d.u_floor, 0,
        d.budget};
}

void vf_transfer_args_init(vf_transfer_args* a) {
  valfield::TransferArgs d;
  *a = {nullptr, nullptr, 0, 0, nullptr, nullptr, nullptr, 0, d.budget};
}

void vf_compose_args_init(vf_compose_args* a) { *a = {nullptr, nullptr, nullptr, 0}; }

void vf_fundeq_args_init(vf_fundeq_args* a) { *a = {nullptr, nullptr, 0, 0}; }

vf_status vf_oap(const vf_oap_args* a, vf_report** out) {
  if (auto s = require(a, "args"); s != VF_OK)
    return s;
  return run_command(out, [&] {
    return valfield::cmd_oap(
        {str(a->field), str(a->poly), str(a->target), a->precision, a->oracle != 0, a->budget});
  });
}

vf_status vf_decompose(const vf_decompose_args* a, vf_report** out) {
  if (auto s = require(a, "args"); s != VF_OK)
    return s;
  return run_command(out, [&] {
    return valfield::cmd_decompose(
        {str(a->field), str(a->poly), a->work_precision, a->oracle_precision, a->budget});
  });
}

vf_status vf_alpha(const vf_alpha_args* a, vf_report** out) {
  if (auto s = require(a, "args"); s != VF_OK)
    return s;
  return run_command(out, [&] {
    return valfield::cmd_alpha({str(a->field), str(a->poly), a->samples, a->seed});
  });
}

vf_status vf_extremal(const vf_extremal_args* a, vf_report** out) {
  if (auto s = require(a, "args"); s != VF_OK)
    return s;
  return run_command(out, [&] {
    valfield::ExtremalArgs x;
    x.field = str(a->field);
    x.poly = str(a->poly);
    if (a->ball)
      x.ball = a->ball;
    x.precision = a->precision;
    x.t_precision = a->t_precision;
    x.u_precision = a->u_precision;
    x.u_floor = a->u_floor;
    x.pushdown = a->pushdown != 0;
    x.budget = a->budget;
    return valfield::cmd_extremal(x);
  });
}

vf_status vf_transfer(const vf_transfer_args* a, vf_report** out) {
  if (auto s = require(a, "args"); s != VF_OK)
    return s;
  return run_command(out, [&] {
    valfield::TransferArgs x;
    x.field = str(a->field);
    x.poly = str(a->poly);
    x.alpha = a->alpha;
    x.beta = a->beta;
    if (a->a)
      x.a = a->a;
    if (a->b)
      x.b = a->b;
    if (a->c)
      x.c = a->c;
    x.check_precision = a->check_precision;
    x.budget = a->budget;
    return valfield::cmd_transfer(x);
  });
}

vf_status vf_compose(const vf_compose_args* a, vf_report** out) {
  if (auto s = require(a, "args"); s != VF_OK)
    return s;
  if (a->image_count > 0)
    if (auto s = require(a->images, "images"); s != VF_OK)
      return s;
  return run_command(out, [&] {
    valfield::ComposeArgs x{str(a->field), str(a->poly), {}};
    for (size_t i = 0; i < a->image_count; ++i)
      x.images.push_back(str(a->images[i]));
    return valfield::cmd_compose(x);
  });
}

vf_status vf_tmcne(long p, vf_report** out) {
  return run_command(out, [&] { return valfield::cmd_tmcne(p); });
}

vf_status vf_fundeq(const vf_fundeq_args* a, vf_report** out) {
  if (auto s = require(a, "args"); s != VF_OK)
    return s;
  return run_command(out, [&] {
    return valfield::cmd_fundeq(
        {str(a->field), str(a->poly), a->precision, a->asserted_irreducible != 0});
  });
}

vf_status vf_selftest(uint64_t seed, long samples, vf_report** out) {
  return run_command(out, [&] { return valfield::cmd_selftest(seed, samples); });
}

vf_status vf_series_parse(const char* field, const char* text, vf_series** out) {
  if (auto s = require(out, "output pointer"); s != VF_OK)
    return s;
  return guarded([&] {
    auto spec = valfield::FieldSpec::parse(str(field));
    if (spec.kind != valfield::FieldSpec::Kind::laurent)
      throw valfield::Error(valfield::Errc::usage, "series need a field F(q)((t))");
    *out = new vf_series{valfield::LaurentSeries::parse(spec.field, str(text)), {}};
  });
}

vf_status vf_series_add(const vf_series* a, const vf_series* b, vf_series** out) {
  if (!a || !b || !out)
    return require(nullptr, "argument");
  return guarded([&] { *out = new vf_series{a->value + b->value, {}}; });
}

vf_status vf_series_mul(const vf_series* a, const vf_series* b, vf_series** out) {
  if (!a || !b || !out)
    return require(nullptr, "argument");
  return guarded([&] { *out = new vf_series{a->value * b->value, {}}; });
}

vf_status vf_series_valuation(const vf_series* s, long* value, int* exact) {
  if (!s || !value || !exact)
    return require(nullptr, "argument");
  return guarded([&] {
    auto r = s->value.valuation();
    if (r.value().is_infinite())
      throw valfield::Error(valfield::Errc::precondition, "valuation of the exact zero");
    *value = r.value().q().get_num().get_si();
    *exact = r.is_exact() ? 1 : 0;
  });
}

const char* vf_series_to_string(vf_series* s) {
  if (!s)
    return "";
  s->text = s->value.to_string();
  return s->text.c_str();
}

void vf_series_free(vf_series* s) { delete s; }

} // extern "C"
