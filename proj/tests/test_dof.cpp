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

#include "mwrelay/dof.hpp"
#include "mwrelay/error.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

using namespace mwrelay;
using namespace mwrelay::dof;

namespace {

Rational R(std::int64_t p, std::int64_t q = 1)
{
    return {p, q};
}

/// All reduced p/q in (0, 1] with q <= qmax.
std::vector<Rational> ratio_grid(std::int64_t qmax)
{
    std::set<Rational> s;
    for (std::int64_t q = 1; q <= qmax; ++q)
        for (std::int64_t p = 1; p <= q; ++p)
            s.insert(R(p, q));
    return {s.begin(), s.end()};
}

double binom(int n, int r)
{
    return std::tgamma(n + 1.0) / (std::tgamma(r + 1.0) * std::tgamma(n - r + 1.0));
}

/// Floating-point transcription of the general achievable formula, N = 1.
double basic_float(double r, int k)
{
    r = std::min(r, 1.0);
    if (r <= 1.0 / k + 1e-15)
        return r;
    const int t = static_cast<int>(std::floor(1.0 / r + 1e-12)) + 1; // r in (1/t, 1/(t-1)]
    const double a_t = binom(k - 1, t - 1) * (t - 1);
    const double b_t = binom(k, t) * (t - 1) * (t - 1);
    const double a_n = t == k ? k - 1.0 : binom(k - 1, t) * t;
    const double b_n = t == k ? k * (k - 1.0) : binom(k, t + 1) * t * t;
    const double c = (t * r - 1.0) / (t - 1);
    return std::min(a_t * c + a_n * (1.0 - b_t * c) / b_n, a_t / b_t);
}

} // namespace

TEST_CASE("binomials and pattern coefficients")
{
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(8, 0) == 1);
    CHECK(binomial(3, 4) == 0);
    CHECK(alpha_beta(4, 2) == std::pair<std::int64_t, std::int64_t>{3, 6});
    CHECK(alpha_beta(4, 3) == std::pair<std::int64_t, std::int64_t>{6, 16});
    CHECK(alpha_beta(3, 3) == std::pair<std::int64_t, std::int64_t>{2, 4});
    CHECK(alpha_beta_ext(4, 5) == std::pair<std::int64_t, std::int64_t>{3, 12});
    CHECK_THROWS_AS(alpha_beta(4, 5), Error);
    CHECK_THROWS_AS(alpha_beta(4, 1), Error);
}

TEST_CASE("three users: capacity M below 2/3, 2N/3 above")
{
    for (const auto& r : ratio_grid(24)) {
        const Rational n = R(r.denominator());
        const Rational m = R(r.numerator());
        const auto got = achievable_basic(m, n, 3);
        const Rational expected = r < R(2, 3) ? m : R(2) * n / R(3);
        CAPTURE(to_string(r));
        CHECK(got.d_user == expected);
        CHECK(got.capacity_tight);
        CHECK(got.d_sum == R(3) * expected);
        CHECK(got.d_relay == R(3) * expected / n);
        CHECK(achievable_improved(m, n, 3).d_user == expected);
    }
    CHECK(achievable_basic(R(2), R(3), 3).d_user == R(2));
    CHECK(achievable_basic(R(5), R(3), 3).d_user == R(2));
}

TEST_CASE("four users: basic and improved closed forms")
{
    for (const auto& r : ratio_grid(48)) {
        const Rational m = R(r.numerator());
        const Rational n = R(r.denominator());
        Rational basic;
        Rational improved;
        if (r <= R(3, 8)) {
            basic = improved = m;
        } else if (r <= R(1, 2)) {
            basic = R(3) * n / R(8);
            improved = r <= R(7, 16) ? basic : R(6) * m / R(7);
        } else if (r <= R(7, 12)) {
            basic = R(3) * m / R(2) - R(3) * n / R(8);
            improved = R(6) * m / R(7);
        } else {
            basic = improved = n / R(2);
        }
        CAPTURE(to_string(r));
        CHECK(achievable_basic(m, n, 4).d_user == basic);
        CHECK(achievable_improved(m, n, 4).d_user == improved);
        const bool strictly_better = achievable_improved(m, n, 4).d_user > achievable_basic(m, n, 4).d_user;
        CHECK(strictly_better == (r > R(7, 16) && r < R(7, 12)));
    }
}

TEST_CASE("four-user breakpoints")
{
    CHECK(capacity_lower_edge(4) == R(3, 8));
    CHECK(capacity_upper_edge(4) == R(7, 12));
    CHECK(corner_ratio(4, 2) == R(7, 12));
    CHECK(corner_ratio(4, 3) == R(3, 8));
    CHECK(improved_breakpoint(4, 2) == R(7, 16));
    CHECK_THROWS_AS(improved_breakpoint(4, 3), Error);
    CHECK(achievable_improved(R(7), R(16), 4).d_user == R(6));
    CHECK(achievable_improved(R(1), R(2), 4).d_user == R(6, 7));
    CHECK(achievable_basic(R(1), R(2), 4).d_user == R(3, 4));
    CHECK(achievable_basic(R(7), R(12), 4).d_user == R(6));
    CHECK(achievable_basic(R(3), R(8), 4).d_user == R(3));
}

TEST_CASE("pattern coefficients at a four-user point")
{
    const auto c = gamma_theta_tau(R(1), R(2), 4, 2);
    CHECK(c.alpha_t == R(3));
    CHECK(c.beta_t == R(6));
    CHECK(c.gamma_t1 == R(3, 4) + R(0)); // order-2 saturates before the fill matters
    CHECK(c.gamma_t2 == R(1));
    CHECK(c.theta_t == R(7, 12));
    REQUIRE(c.tau_t.has_value());
    CHECK(*c.tau_t == R(7, 16));
    CHECK_FALSE(gamma_theta_tau(R(1), R(2), 4, 3).tau_t.has_value());
    CHECK_THROWS_AS(gamma_theta_tau(R(1), R(2), 4, 4), Error);
    // At a corner the two candidates coincide.
    for (int k = 4; k <= 8; ++k)
        for (int t = 2; t < k; ++t) {
            const Rational th = corner_ratio(k, t);
            const auto cc = gamma_theta_tau(th, R(1), k, t);
            CHECK(cc.gamma_t1 == cc.gamma_t2);
        }
}

TEST_CASE("general K: formula matches a floating-point transcription")
{
    for (int k = 3; k <= 8; ++k)
        for (const auto& r : ratio_grid(30)) {
            const double got = to_double(achievable_basic(r, R(1), k).d_user);
            CAPTURE(k);
            CAPTURE(to_string(r));
            CHECK(got == doctest::Approx(basic_float(to_double(r), k)).epsilon(1e-12));
        }
}

TEST_CASE("general K: outer bound, capacity ranges, improvement")
{
    for (int k = 3; k <= 8; ++k) {
        const Rational lo = capacity_lower_edge(k);
        const Rational hi = capacity_upper_edge(k);
        CHECK(lo == R(k - 1, k * (k - 2)));
        CHECK(hi == R(1, k * (k - 1)) + R(1, 2));
        for (const auto& r : ratio_grid(48)) {
            const Rational m = R(r.numerator());
            const Rational n = R(r.denominator());
            const auto bound = outer_bound_per_user(m, n, k).d_user;
            const auto b = achievable_basic(m, n, k);
            const auto im = achievable_improved(m, n, k);
            CAPTURE(k);
            CAPTURE(to_string(r));
            CHECK(b.d_user <= bound);
            CHECK(im.d_user <= bound);
            CHECK(im.d_user >= b.d_user);
            const bool in_tight = r <= lo || r >= hi;
            CHECK(b.capacity_tight == in_tight);
            if (in_tight) {
                CHECK(b.d_user == bound);
                CHECK(im.d_user == bound);
            } else {
                CHECK(im.d_user < bound);
            }
        }
        // Above one the relay is the bottleneck.
        CHECK(achievable_basic(R(9), R(4), k).d_user == R(8, k));
    }
}

TEST_CASE("corners bracket the gap")
{
    for (int k = 4; k <= 8; ++k) {
        CHECK(corner_ratio(k, k - 1) == capacity_lower_edge(k));
        CHECK(corner_ratio(k, 2) == capacity_upper_edge(k));
        for (int t = 2; t <= k - 2; ++t) {
            CHECK(corner_ratio(k, t + 1) < improved_breakpoint(k, t));
            CHECK(improved_breakpoint(k, t) < corner_ratio(k, t));
        }
    }
}

TEST_CASE("asymptotic curves")
{
    for (std::int64_t t = 2; t <= 10; ++t) {
        // Basic: jump at 1/t from t/(t-1) (right) to (t+1)/t (left).
        CHECK(asymptotic_dof(R(1, t), false) == R(t + 1, t));
        CHECK(asymptotic_dof(R(1, t) + R(1, 100000), false) == R(t, t - 1));
        const Rational knee = R((t + 1) * (t - 1), t * t * t);
        CHECK(asymptotic_dof(knee, true) == R(t + 1, t));
        CHECK(asymptotic_dof(R(1, t), true) == R(t, t - 1));
    }
    CHECK(asymptotic_dof(R(3, 5), false) == R(2));
    CHECK(asymptotic_dof(R(2, 5), false) == R(3, 2));
    CHECK(asymptotic_dof(R(3, 10), true) == R(27, 20));
    CHECK(asymptotic_dof(R(1, 2), true) == R(2));
    for (const auto& r : ratio_grid(40)) {
        if (r >= R(1))
            continue;
        const Rational basic = asymptotic_dof(r, false);
        CHECK(basic >= R(1) + r);
        CHECK(basic <= R(1) / (R(1) - r));
        CHECK(asymptotic_dof(r, true) >= basic);
    }
    CHECK_THROWS_AS(asymptotic_dof(R(0), false), Error);
}

TEST_CASE("scaling by a common factor scales the DoF")
{
    for (int k = 3; k <= 6; ++k)
        for (int m = 1; m <= 8; ++m)
            for (int n = 1; n <= 16; ++n)
                for (std::int64_t s : {1, 2, 3, 5, 7})
                    CHECK(scaling_check(R(m), R(n), s, k));
    CHECK_THROWS_AS(scaling_check(R(1), R(2), 0, 3), Error);
}

TEST_CASE("regime index")
{
    CHECK(regime_index(R(1), R(2)) == 3);
    CHECK(regime_index(R(3), R(5)) == 2);
    CHECK(regime_index(R(2), R(5)) == 3);
    CHECK(regime_index(R(1), R(3)) == 4);
    CHECK(regime_index(R(1), R(1)) == 2);
    CHECK(regime_index(R(3), R(8)) == 3);
    CHECK(regime_index(R(5), R(3)) == 2);
    CHECK_THROWS_AS(regime_index(R(0), R(3)), Error);
}

TEST_CASE("rational parsing")
{
    CHECK(parse_rational("7/16") == R(7, 16));
    CHECK(parse_rational("3") == R(3));
    CHECK(parse_rational("0.3") == R(3, 10));
    CHECK(parse_rational(".25") == R(1, 4));
    CHECK(parse_rational("-1.5") == R(-3, 2));
    CHECK(to_string(R(6, 7)) == "6/7");
    CHECK(to_string(R(4, 2)) == "2");
    for (const char* bad : {"1/0", "abc", "1/x", "", "1.2.3"})
        CHECK_THROWS_AS(parse_rational(bad), Error);
}

TEST_CASE("invalid arguments")
{
    CHECK_THROWS_AS(achievable_basic(R(0), R(3), 3), Error);
    CHECK_THROWS_AS(achievable_basic(R(1), R(3), 2), Error);
    CHECK_THROWS_AS(achievable_improved(R(1), R(-3), 4), Error);
}
