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
#ifndef VALFIELD_VALFIELD_H
#define VALFIELD_VALFIELD_H

#include <stddef.h>
#include <stdint.h>

#if defined(VALFIELD_BUILDING)
#define VF_API __attribute__((visibility("default")))
#else
#define VF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every function returning vf_status leaves its out-parameters untouched on
 * failure; vf_last_error then describes the failure for the calling thread. */
typedef enum vf_status {
  VF_OK = 0,
  VF_ERR_USAGE,
  VF_ERR_PARSE,
  VF_ERR_RANK_MISMATCH,
  VF_ERR_EMPTY_INPUT,
  VF_ERR_DIVISION_BY_ZERO,
  VF_ERR_DESCRIPTOR_MISMATCH,
  VF_ERR_PRECISION,
  VF_ERR_HENSEL_CONDITION,
  VF_ERR_BUDGET_EXCEEDED,
  VF_ERR_PRECONDITION,
  VF_ERR_IRREDUCIBILITY,
  VF_ERR_INTERNAL
} vf_status;

typedef enum vf_outcome {
  VF_PASS = 0,
  VF_CHECK_FAILED = 2,
  VF_INCONCLUSIVE = 3
} vf_outcome;

VF_API const char* vf_version(void);
VF_API const char* vf_status_name(vf_status status);
VF_API const char* vf_last_error(void);
/* 1 usage, 3 inconclusive, 4 budget exceeded; 0 for VF_OK. */
VF_API int vf_exit_code(vf_status status);

/* Result of a command: human-readable text, JSON and an outcome. */
typedef struct vf_report vf_report;

VF_API const char* vf_report_text(const vf_report* report);
VF_API const char* vf_report_json(const vf_report* report);
VF_API vf_outcome vf_report_outcome(const vf_report* report);
VF_API void vf_report_free(vf_report* report);

/* Argument structs; call the matching *_init before filling them. Strings
 * are borrowed for the duration of the call. */
typedef struct vf_oap_args {
  const char* field;
  const char* poly;
  const char* target;
  long precision;
  int oracle;
  uint64_t budget;
} vf_oap_args;

typedef struct vf_decompose_args {
  const char* field;
  const char* poly;
  long work_precision;
  long oracle_precision; /* 0 disables the image comparison */
  uint64_t budget;
} vf_decompose_args;

typedef struct vf_alpha_args {
  const char* field;
  const char* poly;
  long samples; /* 0 disables the sampled check */
  uint64_t seed;
} vf_alpha_args;

typedef struct vf_extremal_args {
  const char* field;
  const char* poly;
  const char* ball;
  long precision;
  long t_precision;
  long u_precision;
  long u_floor;
  int pushdown;
  uint64_t budget;
} vf_extremal_args;

typedef struct vf_transfer_args {
  const char* field;
  const char* poly;
  long alpha;
  long beta;
  const char* a;
  const char* b;
  const char* c;
  long check_precision; /* 0 disables the multiset comparison */
  uint64_t budget;
} vf_transfer_args;

typedef struct vf_compose_args {
  const char* field;
  const char* poly;
  const char* const* images;
  size_t image_count;
} vf_compose_args;

typedef struct vf_fundeq_args {
  const char* field;
  const char* poly;
  long precision; /* 0 takes the polynomial suffix or the default */
  int asserted_irreducible;
} vf_fundeq_args;

VF_API void vf_oap_args_init(vf_oap_args* args);
VF_API void vf_decompose_args_init(vf_decompose_args* args);
VF_API void vf_alpha_args_init(vf_alpha_args* args);
VF_API void vf_extremal_args_init(vf_extremal_args* args);
VF_API void vf_transfer_args_init(vf_transfer_args* args);
VF_API void vf_compose_args_init(vf_compose_args* args);
VF_API void vf_fundeq_args_init(vf_fundeq_args* args);

VF_API vf_status vf_oap(const vf_oap_args* args, vf_report** out);
VF_API vf_status vf_decompose(const vf_decompose_args* args, vf_report** out);
VF_API vf_status vf_alpha(const vf_alpha_args* args, vf_report** out);
VF_API vf_status vf_extremal(const vf_extremal_args* args, vf_report** out);
VF_API vf_status vf_transfer(const vf_transfer_args* args, vf_report** out);
VF_API vf_status vf_compose(const vf_compose_args* args, vf_report** out);
VF_API vf_status vf_tmcne(long p, vf_report** out);
VF_API vf_status vf_fundeq(const vf_fundeq_args* args, vf_report** out);
VF_API vf_status vf_selftest(uint64_t seed, long samples, vf_report** out);

/* Truncated Laurent series over a field descriptor such as "F(3)((t))". */
typedef struct vf_series vf_series;

VF_API vf_status vf_series_parse(const char* field, const char* text, vf_series** out);
VF_API vf_status vf_series_add(const vf_series* a, const vf_series* b, vf_series** out);
VF_API vf_status vf_series_mul(const vf_series* a, const vf_series* b, vf_series** out);
/* Writes v and whether it is exact; an exact zero reports VF_ERR_PRECONDITION. */
VF_API vf_status vf_series_valuation(const vf_series* s, long* value, int* exact);
/* The string lives until the next call on s or vf_series_free. */
VF_API const char* vf_series_to_string(vf_series* s);
VF_API void vf_series_free(vf_series* s);

#ifdef __cplusplus
}
#endif

#endif
