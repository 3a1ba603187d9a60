// SPDX-License-Identifier: Apache-2.0
//
// mwrelay: signal alignment for the symmetric MIMO multiway relay channel
// Copyright (C) 2026 The mwrelay Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

/* C interface of the mwrelay shared library. All functions are thread-safe
 * with respect to distinct handles; the last error message is per thread. */

#ifndef MWRELAY_H
#define MWRELAY_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(MWRELAY_BUILDING)
#    define MWR_API __declspec(dllexport)
#  else
#    define MWR_API __declspec(dllimport)
#  endif
#else
#  define MWR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mwr_status {
    MWR_OK = 0,
    MWR_INVALID_ARGUMENT = 1,
    MWR_INVALID_MATRIX = 2,
    MWR_SHAPE_MISMATCH = 3,
    MWR_INVALID_PATTERN_ORDER = 4,
    MWR_INVALID_DEACTIVATION = 5,
    MWR_SUPPLY_EXHAUSTED = 6,
    MWR_ALIGNMENT_DEGENERATE = 7,
    MWR_EXTENSION_OVERFLOW = 8,
    MWR_INTERNAL_PLAN_ERROR = 9,
    MWR_INDEPENDENCE_VIOLATION = 10,
    MWR_PROJECTOR_COLLAPSE = 11,
    MWR_INVALID_SWEEP = 12,
    MWR_INVALID_LEMMA_PARAMS = 13,
    MWR_OUT_OF_MEMORY = 14,
    MWR_INTERNAL = 15
} mwr_status;

typedef enum mwr_mode {
    MWR_MODE_OUTER = 0,
    MWR_MODE_BASIC = 1,
    MWR_MODE_IMPROVED = 2
} mwr_mode;

typedef struct mwr_rational {
    int64_t num;
    int64_t den; /* always positive */
} mwr_rational;

MWR_API const char* mwr_version(void);
/* Stable identifier such as "EXTENSION_OVERFLOW". */
MWR_API const char* mwr_status_string(mwr_status status);
/* Message of the last failing call on this thread; "" if none. */
MWR_API const char* mwr_last_error(void);
/* Releases strings returned through char** out-parameters. */
MWR_API void mwr_free_string(char* s);

MWR_API mwr_status mwr_parse_rational(const char* text, mwr_rational* out);

/* Normalized curve value at ratio = M/N. For k >= 3 the value is d_user/N;
 * k == 0 selects the many-user limit and the value is d_sum/N. */
MWR_API mwr_status mwr_curve_point(int k, mwr_rational ratio, mwr_mode mode, mwr_rational* value,
                                   int* capacity_tight);
MWR_API mwr_status mwr_dof_user(int m, int n, int k, mwr_mode mode, mwr_rational* d_user);

typedef struct mwr_scenario mwr_scenario;

typedef struct mwr_scenario_options {
    int m;
    int n;
    int k;
    uint64_t seed;
    int improved;         /* nonzero: plan with relay antenna deactivation */
    int identical_blocks; /* nonzero: repeat one channel draw over the extension */
    double rank_rel;
    double leakage_abs;
} mwr_scenario_options;

MWR_API void mwr_scenario_options_init(mwr_scenario_options* opt);
/* Plans, samples, builds and verifies. On failure *out is NULL. */
MWR_API mwr_status mwr_scenario_build(const mwr_scenario_options* opt, mwr_scenario** out);
MWR_API void mwr_scenario_destroy(mwr_scenario* s);

MWR_API int mwr_scenario_pass(const mwr_scenario* s);
MWR_API int mwr_scenario_extension(const mwr_scenario* s);
/* Verified streams per channel use. */
MWR_API mwr_status mwr_scenario_d_sum(const mwr_scenario* s, mwr_rational* d_sum);
MWR_API mwr_status mwr_scenario_predicted_d_user(const mwr_scenario* s, mwr_rational* d_user);
MWR_API mwr_status mwr_scenario_to_json(const mwr_scenario* s, int with_channels, char** json);
MWR_API mwr_status mwr_scenario_estimate_slope(const mwr_scenario* s, const double* snr_db, size_t count,
                                               double* slope);

/* Runs the default lemma battery; config_json (may be NULL) overrides its grids. */
MWR_API mwr_status mwr_lemma_battery(int trials, uint64_t seed, const char* config_json, char** json,
                                     int* failures);

#ifdef __cplusplus
}
#endif

#endif /* MWRELAY_H */
