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

#include "mwrelay/mwrelay.h"

#include "mwrelay/dof.hpp"
#include "mwrelay/error.hpp"
#include "mwrelay/lemmas.hpp"
#include "mwrelay/scenario.hpp"
#include "mwrelay/serialize.hpp"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

struct mwr_scenario {
    mwrelay::Scenario scenario;
};

namespace {

thread_local std::string g_last_error;

mwr_status status_of(mwrelay::ErrorCode code)
{
    using mwrelay::ErrorCode;
    switch (code) {
    case ErrorCode::InvalidArgument:
        return MWR_INVALID_ARGUMENT;
    case ErrorCode::InvalidMatrix:
        return MWR_INVALID_MATRIX;
    case ErrorCode::ShapeMismatch:
        return MWR_SHAPE_MISMATCH;
    case ErrorCode::InvalidPatternOrder:
        return MWR_INVALID_PATTERN_ORDER;
    case ErrorCode::InvalidDeactivation:
        return MWR_INVALID_DEACTIVATION;
    case ErrorCode::SupplyExhausted:
        return MWR_SUPPLY_EXHAUSTED;
    case ErrorCode::AlignmentDegenerate:
        return MWR_ALIGNMENT_DEGENERATE;
    case ErrorCode::ExtensionOverflow:
        return MWR_EXTENSION_OVERFLOW;
    case ErrorCode::InternalPlanError:
        return MWR_INTERNAL_PLAN_ERROR;
    case ErrorCode::IndependenceViolation:
        return MWR_INDEPENDENCE_VIOLATION;
    case ErrorCode::ProjectorCollapse:
        return MWR_PROJECTOR_COLLAPSE;
    case ErrorCode::InvalidSweep:
        return MWR_INVALID_SWEEP;
    case ErrorCode::InvalidLemmaParams:
        return MWR_INVALID_LEMMA_PARAMS;
    }
    return MWR_INTERNAL;
}

mwr_status fail(mwr_status status, const std::string& message)
{
    g_last_error = message;
    return status;
}

/// Runs fn, translating exceptions into status codes.
template <class Fn>
mwr_status guard(Fn&& fn) noexcept
{
    try {
        g_last_error.clear();
        fn();
        return MWR_OK;
    } catch (const mwrelay::Error& e) {
        return fail(status_of(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(MWR_OUT_OF_MEMORY, "out of memory");
    } catch (const std::exception& e) {
        return fail(MWR_INTERNAL, e.what());
    } catch (...) {
        return fail(MWR_INTERNAL, "unknown failure");
    }
}

mwr_rational to_c(const mwrelay::Rational& r)
{
    return {r.numerator(), r.denominator()};
}

char* copy_string(const std::string& s)
{
    auto* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr)
        throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void require(bool ok, const char* what)
{
    if (!ok)
        throw mwrelay::Error(mwrelay::ErrorCode::InvalidArgument, what);
}

} // namespace

extern "C" {

const char* mwr_version(void)
{
    return "0.1.0";
}

const char* mwr_status_string(mwr_status status)
{
    switch (status) {
    case MWR_OK:
        return "OK";
    case MWR_INVALID_ARGUMENT:
        return "INVALID_ARGUMENT";
    case MWR_INVALID_MATRIX:
        return "INVALID_MATRIX";
    case MWR_SHAPE_MISMATCH:
        return "SHAPE_MISMATCH";
    case MWR_INVALID_PATTERN_ORDER:
        return "INVALID_PATTERN_ORDER";
    case MWR_INVALID_DEACTIVATION:
        return "INVALID_DEACTIVATION";
    case MWR_SUPPLY_EXHAUSTED:
        return "SUPPLY_EXHAUSTED";
    case MWR_ALIGNMENT_DEGENERATE:
        return "ALIGNMENT_DEGENERATE";
    case MWR_EXTENSION_OVERFLOW:
        return "EXTENSION_OVERFLOW";
    case MWR_INTERNAL_PLAN_ERROR:
        return "INTERNAL_PLAN_ERROR";
    case MWR_INDEPENDENCE_VIOLATION:
        return "INDEPENDENCE_VIOLATION";
    case MWR_PROJECTOR_COLLAPSE:
        return "PROJECTOR_COLLAPSE";
    case MWR_INVALID_SWEEP:
        return "INVALID_SWEEP";
    case MWR_INVALID_LEMMA_PARAMS:
        return "INVALID_LEMMA_PARAMS";
    case MWR_OUT_OF_MEMORY:
        return "OUT_OF_MEMORY";
    case MWR_INTERNAL:
        return "INTERNAL";
    }
    return "UNKNOWN";
}

const char* mwr_last_error(void)
{
    return g_last_error.c_str();
}

void mwr_free_string(char* s)
{
    std::free(s);
}

mwr_status mwr_parse_rational(const char* text, mwr_rational* out)
{
    return guard([&] {
        require(text != nullptr && out != nullptr, "null argument");
        *out = to_c(mwrelay::parse_rational(text));
    });
}

mwr_status mwr_curve_point(int k, mwr_rational ratio, mwr_mode mode, mwr_rational* value, int* capacity_tight)
{
    namespace dof = mwrelay::dof;
    using mwrelay::Rational;
    return guard([&] {
        require(value != nullptr, "null output");
        require(ratio.den != 0, "zero denominator");
        const Rational r(ratio.num, ratio.den);
        require(r > 0, "ratio must be positive");
        require(mode == MWR_MODE_OUTER || mode == MWR_MODE_BASIC || mode == MWR_MODE_IMPROVED, "unknown mode");
        Rational v;
        bool tight = false;
        if (k == 0) {
            tight = r > Rational(1, 2);
            v = mode == MWR_MODE_OUTER ? Rational(2) : dof::asymptotic_dof(r, mode == MWR_MODE_IMPROVED);
        } else {
            require(k >= 3, "K must be 0 (unbounded) or at least 3");
            // Values are normalized by N, so evaluate at (M, N) = (r, 1).
            dof::DofResult res;
            if (mode == MWR_MODE_OUTER)
                res = dof::outer_bound_per_user(r, Rational(1), k);
            else if (mode == MWR_MODE_BASIC)
                res = dof::achievable_basic(r, Rational(1), k);
            else
                res = dof::achievable_improved(r, Rational(1), k);
            v = res.d_user;
            tight = dof::achievable_basic(r, Rational(1), k).capacity_tight;
        }
        *value = to_c(v);
        if (capacity_tight != nullptr)
            *capacity_tight = tight ? 1 : 0;
    });
}

mwr_status mwr_dof_user(int m, int n, int k, mwr_mode mode, mwr_rational* d_user)
{
    namespace dof = mwrelay::dof;
    using mwrelay::Rational;
    return guard([&] {
        require(d_user != nullptr, "null output");
        switch (mode) {
        case MWR_MODE_OUTER:
            *d_user = to_c(dof::outer_bound_per_user(Rational(m), Rational(n), k).d_user);
            return;
        case MWR_MODE_BASIC:
            *d_user = to_c(dof::achievable_basic(Rational(m), Rational(n), k).d_user);
            return;
        case MWR_MODE_IMPROVED:
            *d_user = to_c(dof::achievable_improved(Rational(m), Rational(n), k).d_user);
            return;
        }
        require(false, "unknown mode");
    });
}

void mwr_scenario_options_init(mwr_scenario_options* opt)
{
    if (opt == nullptr)
        return;
    const mwrelay::Tolerance tol{};
    *opt = mwr_scenario_options{1, 1, 3, 0, 0, 0, tol.rank_rel, tol.leakage_abs};
}

mwr_status mwr_scenario_build(const mwr_scenario_options* opt, mwr_scenario** out)
{
    if (out != nullptr)
        *out = nullptr;
    return guard([&] {
        require(opt != nullptr && out != nullptr, "null argument");
        mwrelay::ScenarioOptions o;
        o.m = opt->m;
        o.n = opt->n;
        o.k = opt->k;
        o.seed = opt->seed;
        o.improved = opt->improved != 0;
        o.extension_mode = opt->identical_blocks != 0 ? mwrelay::ExtensionMode::Identical
                                                      : mwrelay::ExtensionMode::Independent;
        o.tol.rank_rel = opt->rank_rel;
        o.tol.leakage_abs = opt->leakage_abs;
        auto handle = std::make_unique<mwr_scenario>();
        handle->scenario = mwrelay::build_scenario(o);
        *out = handle.release();
    });
}

void mwr_scenario_destroy(mwr_scenario* s)
{
    delete s;
}

int mwr_scenario_pass(const mwr_scenario* s)
{
    return s != nullptr && s->scenario.report.pass ? 1 : 0;
}

int mwr_scenario_extension(const mwr_scenario* s)
{
    return s == nullptr ? 0 : s->scenario.plan.extension;
}

mwr_status mwr_scenario_d_sum(const mwr_scenario* s, mwr_rational* d_sum)
{
    return guard([&] {
        require(s != nullptr && d_sum != nullptr, "null argument");
        *d_sum = to_c(s->scenario.report.counted_d_sum);
    });
}

mwr_status mwr_scenario_predicted_d_user(const mwr_scenario* s, mwr_rational* d_user)
{
    return guard([&] {
        require(s != nullptr && d_user != nullptr, "null argument");
        *d_user = to_c(s->scenario.plan.predicted_d_user);
    });
}

mwr_status mwr_scenario_to_json(const mwr_scenario* s, int with_channels, char** json)
{
    if (json != nullptr)
        *json = nullptr;
    return guard([&] {
        require(s != nullptr && json != nullptr, "null argument");
        *json = copy_string(mwrelay::io::to_json(s->scenario, with_channels != 0).dump());
    });
}

mwr_status mwr_scenario_estimate_slope(const mwr_scenario* s, const double* snr_db, size_t count, double* slope)
{
    return guard([&] {
        require(s != nullptr && slope != nullptr && (snr_db != nullptr || count == 0), "null argument");
        *slope = mwrelay::scenario_slope(s->scenario, std::vector<double>(snr_db, snr_db + count));
    });
}

mwr_status mwr_lemma_battery(int trials, uint64_t seed, const char* config_json, char** json, int* failures)
{
    if (json != nullptr)
        *json = nullptr;
    return guard([&] {
        require(json != nullptr, "null output");
        auto battery = mwrelay::default_lemma_battery();
        if (config_json != nullptr && *config_json != '\0') {
            const auto parsed = mwrelay::io::Json::parse(config_json, nullptr, false);
            if (parsed.is_discarded())
                throw mwrelay::Error(mwrelay::ErrorCode::InvalidLemmaParams, "lemma config is not valid JSON");
            battery = mwrelay::io::lemma_battery_from(parsed, battery);
        }
        const auto results = mwrelay::run_lemma_battery(battery, trials, seed);
        mwrelay::io::Json rows = mwrelay::io::Json::array();
        int total = 0;
        for (const auto& r : results) {
            rows.push_back(mwrelay::io::to_json(r));
            total += r.failures;
        }
        const mwrelay::io::Json doc{{"trials", trials}, {"seed", seed}, {"failures", total}, {"results", rows}};
        *json = copy_string(doc.dump());
        if (failures != nullptr)
            *failures = total;
    });
}

} // extern "C"
