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

#include "cli.hpp"

#include "mwrelay/mwrelay.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace mwrelay::cli {

namespace {

using Json = nlohmann::json;

/// Invalid flag values found after parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A library call failed; carries the diagnostic already formatted.
struct LibraryFailure : std::runtime_error {
    mwr_status status;
    LibraryFailure(mwr_status s, const std::string& what) : std::runtime_error(what), status(s) {}
};

void check(mwr_status s)
{
    if (s != MWR_OK)
        throw LibraryFailure(s, mwr_last_error());
}

struct Fraction {
    std::int64_t num = 0;
    std::int64_t den = 1;

    bool operator<(const Fraction& o) const
    {
        return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
    }
    bool operator==(const Fraction& o) const { return num == o.num && den == o.den; }
    [[nodiscard]] double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

Fraction reduce(std::int64_t num, std::int64_t den)
{
    const std::int64_t g = std::gcd(num, den);
    return {num / g, den / g};
}

Json rational_json(const mwr_rational& r)
{
    return {{"num", r.num}, {"den", r.den}};
}

std::string rational_text(const mwr_rational& r)
{
    return r.den == 1 ? std::to_string(r.num) : std::to_string(r.num) + "/" + std::to_string(r.den);
}

std::string decimal(double v)
{
    std::ostringstream s;
    s << std::setprecision(12) << v;
    return s.str();
}

/// "grid:Q" or a comma-separated list of exact ratios.
std::vector<Fraction> parse_ratios(const std::string& spec)
{
    std::vector<Fraction> out;
    if (spec.rfind("grid:", 0) == 0) {
        std::int64_t qmax = 0;
        try {
            qmax = std::stoll(spec.substr(5));
        } catch (const std::exception&) {
            throw UsageError("bad grid size in '" + spec + "'");
        }
        if (qmax < 1 || qmax > 1000)
            throw UsageError("grid size must lie in [1, 1000]");
        for (std::int64_t q = 1; q <= qmax; ++q)
            for (std::int64_t p = 1; p <= q; ++p)
                if (std::gcd(p, q) == 1)
                    out.push_back({p, q});
    } else {
        std::stringstream ss(spec);
        std::string item;
        while (std::getline(ss, item, ',')) {
            mwr_rational r{};
            if (mwr_parse_rational(item.c_str(), &r) != MWR_OK)
                throw UsageError("bad ratio '" + item + "': " + mwr_last_error());
            if (r.num <= 0)
                throw UsageError("ratios must be positive: '" + item + "'");
            out.push_back(reduce(r.num, r.den));
        }
        if (out.empty())
            throw UsageError("no ratios given");
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::ostream& open_output(const std::string& path, std::ofstream& file, std::ostream& fallback)
{
    if (path.empty() || path == "-")
        return fallback;
    file.open(path);
    if (!file)
        throw UsageError("cannot open '" + path + "' for writing");
    return file;
}

struct CurveArgs {
    std::string k = "3";
    std::string mode = "basic";
    std::string ratios = "grid:48";
    std::string out;
    bool half_duplex = false;
};

int cmd_curve(const CurveArgs& a, std::ostream& out)
{
    int k = 0;
    if (a.k != "inf") {
        try {
            std::size_t used = 0;
            k = std::stoi(a.k, &used);
            if (used != a.k.size())
                throw std::invalid_argument(a.k);
        } catch (const std::exception&) {
            throw UsageError("--k must be an integer or 'inf'");
        }
        if (k < 3)
            throw UsageError("--k must be at least 3");
    }
    const mwr_mode mode = a.mode == "outer" ? MWR_MODE_OUTER : a.mode == "improved" ? MWR_MODE_IMPROVED : MWR_MODE_BASIC;
    std::string tag = a.mode;
    if (k == 0 && mode != MWR_MODE_OUTER)
        tag = "asymptotic-" + a.mode;
    const auto ratios = parse_ratios(a.ratios);

    std::ofstream file;
    std::ostream& os = open_output(a.out, file, out);
    os << "ratio_num,ratio_den,ratio,value_num,value_den,value,mode,capacity_tight\n";
    for (const auto& r : ratios) {
        mwr_rational v{};
        int tight = 0;
        check(mwr_curve_point(k, mwr_rational{r.num, r.den}, mode, &v, &tight));
        Fraction value = reduce(v.num, v.den);
        if (a.half_duplex)
            value = value.num % 2 == 0 ? Fraction{value.num / 2, value.den} : reduce(value.num, value.den * 2);
        os << r.num << ',' << r.den << ',' << decimal(r.value()) << ',' << value.num << ',' << value.den << ','
           << decimal(value.value()) << ',' << tag << ',' << (tight ? "true" : "false") << '\n';
    }
    return kExitOk;
}

struct BuildArgs {
    int m = 0;
    int n = 0;
    int k = 0;
    std::uint64_t seed = 0;
    bool improved = false;
    bool identical_blocks = false;
    bool with_channels = false;
    std::string out;
    int seeds = 1;
    bool snr_sweep = false;
    std::vector<double> snr{40.0, 50.0, 60.0};
};

mwr_scenario_options options_of(const BuildArgs& a, std::uint64_t seed)
{
    mwr_scenario_options o;
    mwr_scenario_options_init(&o);
    o.m = a.m;
    o.n = a.n;
    o.k = a.k;
    o.seed = seed;
    o.improved = a.improved ? 1 : 0;
    o.identical_blocks = a.identical_blocks ? 1 : 0;
    return o;
}

void check_system(const BuildArgs& a)
{
    if (a.k < 3)
        throw UsageError("--k must be at least 3");
    if (a.m < 1 || a.n < 1)
        throw UsageError("--m and --n must be positive");
}

using ScenarioPtr = std::unique_ptr<mwr_scenario, decltype(&mwr_scenario_destroy)>;

ScenarioPtr build(const BuildArgs& a, std::uint64_t seed)
{
    const auto o = options_of(a, seed);
    mwr_scenario* s = nullptr;
    check(mwr_scenario_build(&o, &s));
    return {s, &mwr_scenario_destroy};
}

/// Verified d_sum per channel use equals K times the formula d_user.
bool matches_formula(const mwr_scenario* s, int k)
{
    mwr_rational got{};
    mwr_rational want{};
    check(mwr_scenario_d_sum(s, &got));
    check(mwr_scenario_predicted_d_user(s, &want));
    return static_cast<__int128>(got.num) * want.den == static_cast<__int128>(want.num) * k * got.den;
}

int cmd_build(const BuildArgs& a, std::ostream& out)
{
    check_system(a);
    std::ofstream file;
    std::ostream& os = open_output(a.out, file, out);
    try {
        const auto s = build(a, a.seed);
        char* text = nullptr;
        check(mwr_scenario_to_json(s.get(), a.with_channels ? 1 : 0, &text));
        Json doc = Json::parse(text);
        mwr_free_string(text);
        const bool ok = mwr_scenario_pass(s.get()) != 0 && matches_formula(s.get(), a.k);
        doc["status"] = ok ? "ok" : "verification_failed";
        os << doc.dump(2) << '\n';
        return ok ? kExitOk : kExitFailure;
    } catch (const LibraryFailure& f) {
        os << Json{{"status", mwr_status_string(f.status)}, {"error", f.what()}}.dump(2) << '\n';
        return kExitFailure;
    }
}

int cmd_verify(const BuildArgs& a, std::ostream& out)
{
    check_system(a);
    if (a.seeds < 1)
        throw UsageError("--seeds must be at least 1");
    if (a.snr_sweep && a.snr.size() < 2)
        throw UsageError("--snr needs at least two values");
    int passed = 0;
    int slope_ok = 0;
    Json runs = Json::array();
    std::optional<mwr_rational> per_use;
    for (int i = 0; i < a.seeds; ++i) {
        const std::uint64_t seed = a.seed + static_cast<std::uint64_t>(i);
        Json run{{"seed", seed}};
        try {
            const auto s = build(a, seed);
            mwr_rational d{};
            check(mwr_scenario_d_sum(s.get(), &d));
            const bool ok = mwr_scenario_pass(s.get()) != 0 && matches_formula(s.get(), a.k);
            passed += ok ? 1 : 0;
            per_use = d;
            run["pass"] = ok;
            run["d_sum_per_use"] = rational_json(d);
            run["extension"] = mwr_scenario_extension(s.get());
            if (a.snr_sweep) {
                double slope = 0.0;
                check(mwr_scenario_estimate_slope(s.get(), a.snr.data(), a.snr.size(), &slope));
                const double target = static_cast<double>(d.num) / static_cast<double>(d.den);
                const bool close = std::abs(slope - target) <= 0.05 * target;
                slope_ok += close ? 1 : 0;
                run["slope"] = slope;
                run["slope_within_5pct"] = close;
            }
        } catch (const LibraryFailure& f) {
            run["pass"] = false;
            run["status"] = mwr_status_string(f.status);
            run["error"] = f.what();
        }
        runs.push_back(run);
    }
    mwr_rational predicted{};
    check(mwr_dof_user(a.m, a.n, a.k, a.improved ? MWR_MODE_IMPROVED : MWR_MODE_BASIC, &predicted));
    Json summary{{"m", a.m},
                 {"n", a.n},
                 {"k", a.k},
                 {"improved", a.improved},
                 {"runs", a.seeds},
                 {"passed", passed},
                 {"d_user", rational_json(predicted)},
                 {"d_user_text", rational_text(predicted)},
                 {"seeds", runs}};
    if (per_use)
        summary["d_sum_per_use"] = rational_json(*per_use);
    if (a.snr_sweep)
        summary["slope_within_5pct"] = slope_ok;
    std::ofstream file;
    open_output(a.out, file, out) << summary.dump(2) << '\n';
    return passed == a.seeds ? kExitOk : kExitFailure;
}

struct LemmaArgs {
    int trials = 100;
    std::uint64_t seed = 0;
    std::string config;
    std::string out;
};

int cmd_lemmas(const LemmaArgs& a, std::ostream& out)
{
    if (a.trials < 1)
        throw UsageError("--trials must be at least 1");
    std::string config;
    if (!a.config.empty()) {
        std::ifstream in(a.config);
        if (!in)
            throw UsageError("cannot read '" + a.config + "'");
        config.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    char* text = nullptr;
    int failures = 0;
    const mwr_status s = mwr_lemma_battery(a.trials, a.seed, config.empty() ? nullptr : config.c_str(), &text, &failures);
    if (s == MWR_INVALID_LEMMA_PARAMS || s == MWR_INVALID_ARGUMENT)
        throw UsageError(mwr_last_error());
    check(s);
    const Json doc = Json::parse(text);
    mwr_free_string(text);
    std::ofstream file;
    open_output(a.out, file, out) << doc.dump(2) << '\n';
    return failures == 0 ? kExitOk : kExitFailure;
}

void add_system_flags(CLI::App* cmd, BuildArgs& a)
{
    cmd->add_option("--m", a.m, "antennas per user")->required();
    cmd->add_option("--n", a.n, "relay antennas")->required();
    cmd->add_option("--k", a.k, "number of users")->required();
    cmd->add_flag("--improved", a.improved, "deactivate relay antennas where it helps");
    cmd->add_flag("--identical-blocks", a.identical_blocks, "repeat one channel draw over the symbol extension");
    cmd->add_option("--out", a.out, "output path (default stdout)");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Signal alignment for the MIMO multiway relay channel", "mwrelay-cli"};
    app.require_subcommand(1);
    app.set_version_flag("--version", mwr_version());

    CurveArgs curve;
    auto* c = app.add_subcommand("curve", "emit a DoF curve as CSV");
    c->add_option("--k", curve.k, "number of users, or 'inf'");
    c->add_option("--mode", curve.mode, "outer, basic or improved")
        ->check(CLI::IsMember({"outer", "basic", "improved"}));
    c->add_option("--ratios", curve.ratios, "comma-separated M/N values or grid:Q (default grid:48)");
    c->add_option("--out", curve.out, "output path (default stdout)");
    c->add_flag("--half-duplex", curve.half_duplex, "halve every value");

    BuildArgs single;
    auto* b = app.add_subcommand("build", "construct and verify one channel draw");
    add_system_flags(b, single);
    b->add_option("--seed", single.seed, "channel seed");
    b->add_flag("--with-channels", single.with_channels, "include channel matrices in the JSON");

    BuildArgs sweep;
    auto* v = app.add_subcommand("verify", "construct and verify over many seeds");
    add_system_flags(v, sweep);
    v->add_option("--seeds", sweep.seeds, "number of seeds")->required();
    v->add_option("--seed", sweep.seed, "first seed");
    v->add_flag("--snr-sweep", sweep.snr_sweep, "also estimate the high-SNR rate slope");
    v->add_option("--snr", sweep.snr, "SNR points in dB for the slope (default 40 50 60)")->delimiter(',');

    LemmaArgs lemmas;
    auto* l = app.add_subcommand("lemmas", "Monte Carlo check of the rank lemmas");
    l->add_option("--trials", lemmas.trials, "trials per configuration");
    l->add_option("--seed", lemmas.seed, "master seed");
    l->add_option("--config", lemmas.config, "JSON file overriding the parameter grids");
    l->add_option("--out", lemmas.out, "output path (default stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (c->parsed())
            return cmd_curve(curve, out);
        if (b->parsed())
            return cmd_build(single, out);
        if (v->parsed())
            return cmd_verify(sweep, out);
        return cmd_lemmas(lemmas, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const LibraryFailure& f) {
        err << "error: " << mwr_status_string(f.status) << ": " << f.what() << '\n';
        return kExitFailure;
    }
}

} // namespace mwrelay::cli
