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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "cli.hpp"
#include "mwrelay/dof.hpp"
#include "mwrelay/lemmas.hpp"
#include "mwrelay/relay.hpp"
#include "mwrelay/scenario.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace mwrelay;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;
};

Rational R(std::int64_t p, std::int64_t q = 1)
{
    return {p, q};
}

std::vector<Rational> reduced_grid(std::int64_t qmax)
{
    std::set<Rational> s;
    for (std::int64_t q = 1; q <= qmax; ++q)
        for (std::int64_t p = 1; p <= q; ++p)
            s.insert(R(p, q));
    return {s.begin(), s.end()};
}

// Criterion 1: three users, closed form min(M, 2N/3).
Verdict three_user_formula()
{
    std::vector<Rational> ratios;
    for (std::int64_t i = 1; i <= 50; ++i)
        ratios.push_back(R(i, 50));
    int bad = 0;
    for (const auto& r : ratios) {
        const Rational m = R(r.numerator());
        const Rational n = R(r.denominator());
        const Rational want = r < R(2, 3) ? m : R(2) * n / R(3);
        bad += dof::achievable_basic(m, n, 3).d_user == want ? 0 : 1;
    }
    const bool corner = dof::achievable_basic(R(2), R(3), 3).d_user == R(2)
                        && dof::achievable_basic(R(20), R(30), 3).d_user == R(20);
    std::ostringstream d;
    d << ratios.size() << " ratios, " << bad << " mismatches, value at 2/3 " << (corner ? "2N/3" : "wrong");
    return {bad == 0 && corner, d.str()};
}

// Criterion 2: four users, all branches and the breakpoint set.
Verdict four_user_formula()
{
    const auto grid = reduced_grid(48);
    int bad = 0;
    int strict_wrong = 0;
    std::vector<Rational> basic_vals;
    std::vector<Rational> improved_vals;
    for (const auto& r : grid) {
        Rational basic;
        Rational improved;
        if (r <= R(3, 8)) {
            basic = improved = r;
        } else if (r <= R(1, 2)) {
            basic = R(3, 8);
            improved = r <= R(7, 16) ? basic : R(6, 7) * r;
        } else if (r <= R(7, 12)) {
            basic = R(3, 2) * r - R(3, 8);
            improved = R(6, 7) * r;
        } else {
            basic = improved = R(1, 2);
        }
        const Rational m = R(r.numerator());
        const Rational n = R(r.denominator());
        const auto b = dof::achievable_basic(m, n, 4).d_user / n;
        const auto im = dof::achievable_improved(m, n, 4).d_user / n;
        bad += (b == basic ? 0 : 1) + (im == improved ? 0 : 1);
        strict_wrong += ((im > b) == (r > R(7, 16) && r < R(7, 12))) ? 0 : 1;
        basic_vals.push_back(b);
        improved_vals.push_back(im);
    }
    // Kinks of the two piecewise-linear curves on the grid.
    std::set<Rational> kinks;
    for (const auto* vals : {&basic_vals, &improved_vals})
        for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
            const Rational left = ((*vals)[i] - (*vals)[i - 1]) / (grid[i] - grid[i - 1]);
            const Rational right = ((*vals)[i + 1] - (*vals)[i]) / (grid[i + 1] - grid[i]);
            if (left != right)
                kinks.insert(grid[i]);
        }
    const std::set<Rational> want{R(3, 8), R(7, 16), R(1, 2), R(7, 12)};
    const bool edges = dof::capacity_lower_edge(4) == R(3, 8) && dof::capacity_upper_edge(4) == R(7, 12)
                       && dof::improved_breakpoint(4, 2) == R(7, 16);
    std::ostringstream d;
    d << grid.size() << " ratios, " << bad << " value mismatches, " << strict_wrong
      << " improvement mismatches, kinks {";
    for (const auto& k : kinks)
        d << (k == *kinks.begin() ? "" : ", ") << to_string(k);
    d << "}";
    return {bad == 0 && strict_wrong == 0 && kinks == want && edges, d.str()};
}

// Criterion 3: outer bound and capacity ranges for K = 3..8.
Verdict general_k()
{
    auto grid = reduced_grid(48);
    grid.push_back(R(3, 2));
    grid.push_back(R(2));
    int over = 0;
    int tight_wrong = 0;
    int points = 0;
    for (int k = 3; k <= 8; ++k) {
        const Rational lo = R(k - 1, k * (k - 2));
        const Rational hi = R(1, k * (k - 1)) + R(1, 2);
        for (const auto& r : grid) {
            const Rational m = R(r.numerator());
            const Rational n = R(r.denominator());
            const Rational bound = std::min(m, R(2) * n / R(k));
            const auto b = dof::achievable_basic(m, n, k);
            const auto im = dof::achievable_improved(m, n, k);
            over += (b.d_user > bound ? 1 : 0) + (im.d_user > bound ? 1 : 0);
            const bool tight = r <= lo || r >= hi;
            tight_wrong += b.capacity_tight == tight ? 0 : 1;
            tight_wrong += tight == (b.d_user == bound) ? 0 : 1;
            tight_wrong += tight == (im.d_user == bound) ? 0 : 1;
            ++points;
        }
    }
    std::ostringstream d;
    d << points << " (K, ratio) points, " << over << " above the bound, " << tight_wrong << " capacity-range mismatches";
    return {over == 0 && tight_wrong == 0, d.str()};
}

// Criterion 4: many-user curves.
Verdict asymptotic()
{
    auto grid = reduced_grid(25); // 200 ratios, all 1/t for t <= 10 included
    const std::size_t base = grid.size();
    for (std::int64_t t = 2; t <= 10; ++t)
        grid.push_back(R((t + 1) * (t - 1), t * t * t));
    int bad = 0;
    int outside = 0;
    for (const auto& r : grid) {
        Rational basic = R(2);
        Rational improved = R(2);
        if (r <= R(1, 2)) {
            std::int64_t t = 2;
            while (!(r > R(1, t)))
                ++t; // r in (1/t, 1/(t-1)]
            basic = R(t, t - 1);
            const std::int64_t s = t - 1; // r in (1/(s+1), 1/s]
            improved = r <= R((s + 1) * (s - 1), s * s * s) ? R(s + 1, s) : r * R(s * s, s - 1);
        }
        bad += (dof::asymptotic_dof(r, false) == basic ? 0 : 1) + (dof::asymptotic_dof(r, true) == improved ? 0 : 1);
        if (r < R(1))
            outside += (basic >= R(1) + r && basic <= R(1) / (R(1) - r)) ? 0 : 1;
    }
    int jumps = 0;
    for (std::int64_t t = 2; t <= 10; ++t) {
        const Rational right = R(1, t) + R(1, 1000000);
        jumps += dof::asymptotic_dof(R(1, t), false) == R(t + 1, t) && dof::asymptotic_dof(right, false) == R(t, t - 1)
                     ? 0
                     : 1;
    }
    std::ostringstream d;
    d << base << " grid ratios + " << grid.size() - base << " knees, " << bad << " mismatches, " << jumps
      << " wrong jumps, " << outside << " outside the [1 + r, 1/(1 - r)] band";
    return {base == 200 && bad == 0 && jumps == 0 && outside == 0, d.str()};
}

struct Config {
    int k;
    int m;
    int n;
};

const std::vector<Config> kConstructive{{3, 2, 3}, {3, 3, 5}, {3, 2, 5}, {3, 1, 4}, {4, 3, 8},
                                        {4, 7, 12}, {4, 1, 2}, {4, 7, 16}, {5, 2, 5}, {5, 3, 4}};

// Criterion 5: the build command verifies K times the formula d_user.
Verdict constructive()
{
    int runs = 0;
    int passed = 0;
    std::string first_failure;
    for (const auto& c : kConstructive) {
        const auto basic = dof::achievable_basic(R(c.m), R(c.n), c.k).d_user;
        const auto improved = dof::achievable_improved(R(c.m), R(c.n), c.k).d_user;
        // The improved scheme is used wherever it helps.
        const bool use_improved = improved > basic;
        const Rational want = R(c.k) * improved;
        for (int seed = 0; seed < 20; ++seed) {
            std::vector<std::string> args{"build", "--m", std::to_string(c.m), "--n", std::to_string(c.n),
                                          "--k", std::to_string(c.k), "--seed", std::to_string(seed)};
            if (use_improved)
                args.emplace_back("--improved");
            std::ostringstream out;
            std::ostringstream err;
            const int code = cli::run(args, out, err);
            bool ok = code == cli::kExitOk;
            if (ok) {
                const auto j = nlohmann::json::parse(out.str());
                const Rational got(j["report"]["d_sum_per_use"]["num"].get<std::int64_t>(),
                                   j["report"]["d_sum_per_use"]["den"].get<std::int64_t>());
                ok = j["report"]["pass"].get<bool>() && got == want;
            }
            ++runs;
            passed += ok ? 1 : 0;
            if (!ok && first_failure.empty())
                first_failure = "K=" + std::to_string(c.k) + " (" + std::to_string(c.m) + "," + std::to_string(c.n)
                                + ") seed " + std::to_string(seed);
        }
    }
    std::ostringstream d;
    d << passed << "/" << runs << " builds verified";
    if (!first_failure.empty())
        d << ", first failure " << first_failure;
    return {passed == runs, d.str()};
}

// Criterion 6: the three rank lemmas, 100 trials each.
Verdict lemma_battery()
{
    LemmaBattery b = default_lemma_battery();
    b.scaling_users.clear();
    const auto results = run_lemma_battery(b, 100, 42);
    int failures = 0;
    int trials = 0;
    for (const auto& r : results) {
        failures += r.failures;
        trials += r.trials;
    }
    std::ostringstream d;
    d << results.size() << " configurations, " << trials << " trials, " << failures << " failures";
    return {failures == 0 && results.size() == 9, d.str()};
}

// Criterion 7: scaling property.
Verdict scaling()
{
    std::vector<std::pair<int, int>> grid;
    for (int m = 1; m <= 8; ++m)
        for (int n = 1; n <= 16; ++n)
            grid.emplace_back(m, n);
    int failures = 0;
    int trials = 0;
    for (int k = 3; k <= 6; ++k) {
        const auto r = check_scaling(k, grid, {2, 3, 5, 7});
        failures += r.failures;
        trials += r.trials;
    }
    std::ostringstream d;
    d << trials << " checks, " << failures << " failures";
    return {failures == 0, d.str()};
}

// Criterion 8: rate slope at 40, 50, 60 dB within 5% for at least 18/20 seeds.
Verdict slope()
{
    bool pass = true;
    std::ostringstream d;
    for (const auto& c : std::vector<Config>{{3, 2, 3}, {4, 7, 12}}) {
        int close = 0;
        double lo = 1e300;
        double hi = -1e300;
        double target = 0.0;
        for (int seed = 0; seed < 20; ++seed) {
            ScenarioOptions o;
            o.m = c.m;
            o.n = c.n;
            o.k = c.k;
            o.seed = static_cast<std::uint64_t>(seed);
            const auto s = build_scenario(o);
            target = to_double(s.report.counted_d_sum);
            const double v = scenario_slope(s, {40.0, 50.0, 60.0});
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            close += std::abs(v - target) <= 0.05 * target ? 1 : 0;
        }
        pass = pass && close >= 18;
        char buf[160];
        std::snprintf(buf, sizeof buf, "%sK=%d (%d,%d): %d/20 within 5%% of %g, slopes %.3f..%.3f",
                      c.k == 3 ? "" : "; ", c.k, c.m, c.n, close, target, lo, hi);
        d << buf;
    }
    return {pass, d.str()};
}

// Criterion 9: a corrupted beamformer is detected.
Verdict negative_control()
{
    ScenarioOptions o;
    o.m = 2;
    o.n = 3;
    o.k = 3;
    o.seed = 1;
    auto s = build_scenario(o);
    const bool clean = s.report.pass;
    s.uplink[0].streams[0].vector(0) += 1.0;
    const auto rep = verify_end_to_end(s.channels, s.uplink, s.downlink, s.relay, o.tol);
    double worst = 0.0;
    for (const auto& r : rep.streams)
        worst = std::max(worst, r.leakage);
    char buf[160];
    std::snprintf(buf, sizeof buf, "clean build pass=%s, corrupted pass=%s, worst leakage %.3e (tolerance %.0e)",
                  clean ? "true" : "false", rep.pass ? "true" : "false", worst, o.tol.leakage_abs);
    return {clean && !rep.pass && worst > o.tol.leakage_abs, buf};
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
        {"three-user formula", three_user_formula},
        {"four-user formula and breakpoints", four_user_formula},
        {"general-K bound and capacity ranges", general_k},
        {"many-user curves", asymptotic},
        {"constructive agreement", constructive},
        {"lemma battery", lemma_battery},
        {"scaling property", scaling},
        {"rate slope", slope},
        {"negative control", negative_control},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %zu %s: %s | %s | %.2fs\n", i + 1, v.pass ? "PASS" : "FAIL", criteria[i].first,
                    v.detail.c_str(), secs);
        std::fflush(stdout);
        failed += v.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
