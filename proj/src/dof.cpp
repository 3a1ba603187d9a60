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

#include <algorithm>
#include <charconv>
#include <cmath>

namespace mwrelay {

std::string to_string(const Rational& r)
{
    if (r.denominator() == 1)
        return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double to_double(const Rational& r)
{
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

namespace {

std::int64_t parse_int(std::string_view s)
{
    std::int64_t v = 0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    if (first != last && *first == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || first == last)
        throw Error(ErrorCode::InvalidArgument, "not an integer: '" + std::string(s) + "'");
    return v;
}

} // namespace

Rational parse_rational(const std::string& text)
{
    if (const auto slash = text.find('/'); slash != std::string::npos) {
        const auto den = parse_int(std::string_view(text).substr(slash + 1));
        if (den == 0)
            throw Error(ErrorCode::InvalidArgument, "zero denominator in '" + text + "'");
        return {parse_int(std::string_view(text).substr(0, slash)), den};
    }
    if (const auto dot = text.find('.'); dot != std::string::npos) {
        const std::string_view whole = std::string_view(text).substr(0, dot);
        const std::string_view frac = std::string_view(text).substr(dot + 1);
        if (frac.size() > 15)
            throw Error(ErrorCode::InvalidArgument, "too many decimals in '" + text + "'");
        std::int64_t scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i)
            scale *= 10;
        const bool negative = !whole.empty() && whole.front() == '-';
        const std::int64_t w = (whole.empty() || whole == "-" || whole == "+") ? 0 : parse_int(whole);
        const std::int64_t f = frac.empty() ? 0 : parse_int(frac);
        const Rational magnitude = Rational(negative ? -w : w) + Rational(f, scale);
        return negative ? -magnitude : magnitude;
    }
    return {parse_int(text), 1};
}

namespace dof {

std::int64_t binomial(int n, int r)
{
    if (r < 0 || r > n)
        return 0;
    r = std::min(r, n - r);
    std::int64_t c = 1;
    for (int i = 1; i <= r; ++i)
        c = c * (n - r + i) / i;
    return c;
}

std::pair<std::int64_t, std::int64_t> alpha_beta(int k, int t)
{
    if (k < 3 || t < 2 || t > k)
        throw Error(ErrorCode::InvalidPatternOrder,
                    "pattern order t=" + std::to_string(t) + " outside [2, " + std::to_string(k) + "]");
    const std::int64_t tm1 = t - 1;
    return {binomial(k - 1, t - 1) * tm1, binomial(k, t) * tm1 * tm1};
}

std::pair<std::int64_t, std::int64_t> alpha_beta_ext(int k, int t)
{
    if (t == k + 1)
        return {k - 1, static_cast<std::int64_t>(k) * (k - 1)};
    return alpha_beta(k, t);
}

static DofResult make_result(const Rational& d_user, const Rational& n, int k, bool tight)
{
    DofResult r;
    r.d_user = d_user;
    r.d_sum = d_user * Rational(k);
    r.d_relay = r.d_sum / n;
    r.capacity_tight = tight;
    return r;
}

namespace {

void require_positive(const Rational& m, const Rational& n, int k)
{
    if (m <= 0 || n <= 0)
        throw Error(ErrorCode::InvalidArgument, "antenna counts must be positive");
    if (k < 3)
        throw Error(ErrorCode::InvalidArgument, "K must be at least 3");
}

bool tight_at(const Rational& ratio, int k)
{
    return ratio <= capacity_lower_edge(k) || ratio >= capacity_upper_edge(k);
}

Rational gamma_1(const Rational& m, const Rational& n, int k, int t)
{
    const auto [a_t, b_t] = alpha_beta(k, t);
    const auto [a_next, b_next] = alpha_beta_ext(k, t + 1);
    const Rational excess = Rational(t) * m - n; // nullity per group and channel use
    const Rational order_t_units = excess / Rational(t - 1);
    return Rational(a_t) * order_t_units + Rational(a_next) * (n - Rational(b_t) * order_t_units) / Rational(b_next);
}

Rational gamma_2(const Rational& n, int k, int t)
{
    const auto [a_t, b_t] = alpha_beta(k, t);
    return Rational(a_t) * n / Rational(b_t);
}

} // namespace

DofResult outer_bound_per_user(const Rational& m, const Rational& n, int k)
{
    require_positive(m, n, k);
    return make_result(std::min(m, Rational(2) * n / Rational(k)), n, k, false);
}

int regime_index(const Rational& m, const Rational& n)
{
    if (m <= 0 || n <= 0)
        throw Error(ErrorCode::InvalidArgument, "antenna counts must be positive");
    if (m >= n)
        return 2;
    const Rational q = n / m;
    return static_cast<int>(q.numerator() / q.denominator()) + 1;
}

Rational capacity_lower_edge(int k)
{
    return {k - 1, static_cast<std::int64_t>(k) * (k - 2)};
}

Rational capacity_upper_edge(int k)
{
    return Rational(1, static_cast<std::int64_t>(k) * (k - 1)) + Rational(1, 2);
}

DofResult achievable_basic(const Rational& m, const Rational& n, int k)
{
    require_positive(m, n, k);
    const bool tight = tight_at(m / n, k);
    const Rational me = std::min(m, n);
    if (me / n <= Rational(1, k))
        return make_result(me, n, k, tight);
    const int t = regime_index(me, n);
    const Rational d = std::min(gamma_1(me, n, k, t), gamma_2(n, k, t));
    return make_result(d, n, k, tight);
}

Rational corner_ratio(int k, int t)
{
    const auto [a, b] = alpha_beta(k, t);
    (void)a;
    return Rational(t - 1, t * b) + Rational(1, t);
}

Rational improved_breakpoint(int k, int t)
{
    if (t > k - 2)
        throw Error(ErrorCode::InvalidPatternOrder, "tau_t is defined for t <= K-2 only");
    const auto [a_t, b_t] = alpha_beta(k, t);
    const auto [a_next, b_next] = alpha_beta(k, t + 1);
    return Rational(a_next * (t - 1 + b_t), t * a_t * b_next);
}

PatternCoefficients gamma_theta_tau(const Rational& m, const Rational& n, int k, int t)
{
    require_positive(m, n, k);
    if (t < 2 || t > k - 1)
        throw Error(ErrorCode::InvalidPatternOrder,
                    "pattern order t=" + std::to_string(t) + " outside [2, " + std::to_string(k - 1) + "]");
    PatternCoefficients c;
    c.t = t;
    const auto [a, b] = alpha_beta(k, t);
    c.alpha_t = a;
    c.beta_t = b;
    c.gamma_t1 = gamma_1(m, n, k, t);
    c.gamma_t2 = gamma_2(n, k, t);
    c.theta_t = corner_ratio(k, t);
    if (t <= k - 2)
        c.tau_t = improved_breakpoint(k, t);
    return c;
}

DofResult achievable_improved(const Rational& m, const Rational& n, int k)
{
    require_positive(m, n, k);
    if (k == 3)
        return achievable_basic(m, n, k);
    const Rational ratio = m / n;
    const bool tight = tight_at(ratio, k);
    if (ratio <= capacity_lower_edge(k))
        return make_result(m, n, k, tight);
    if (ratio >= capacity_upper_edge(k))
        return make_result(Rational(2) * n / Rational(k), n, k, tight);
    for (int t = 2; t <= k - 2; ++t) {
        if (ratio > corner_ratio(k, t + 1) && ratio <= corner_ratio(k, t)) {
            if (ratio <= improved_breakpoint(k, t)) {
                const auto [a_next, b_next] = alpha_beta(k, t + 1);
                return make_result(n * Rational(a_next) / Rational(b_next), n, k, tight);
            }
            const auto [a_t, b_t] = alpha_beta(k, t);
            return make_result(m * Rational(t * a_t) / Rational(t - 1 + b_t), n, k, tight);
        }
    }
    throw Error(ErrorCode::InternalPlanError, "ratio " + to_string(ratio) + " not covered by corner intervals");
}

Rational asymptotic_dof(const Rational& ratio, bool improved)
{
    if (ratio <= 0)
        throw Error(ErrorCode::InvalidArgument, "ratio must be positive");
    if (ratio > Rational(1, 2))
        return 2;
    const Rational inv = Rational(1) / ratio;
    const std::int64_t fl = inv.numerator() / inv.denominator();
    if (!improved) {
        const std::int64_t t = fl + 1; // ratio in (1/t, 1/(t-1)]
        return {t, t - 1};
    }
    const std::int64_t t = fl; // ratio in (1/(t+1), 1/t]
    if (ratio <= Rational((t + 1) * (t - 1), t * t * t))
        return {t + 1, t};
    return ratio * Rational(t * t, t - 1);
}

bool scaling_check(const Rational& m, const Rational& n, std::int64_t sigma, int k)
{
    if (sigma < 1)
        throw Error(ErrorCode::InvalidArgument, "sigma must be positive");
    const Rational s(sigma);
    return achievable_basic(s * m, s * n, k).d_user == s * achievable_basic(m, n, k).d_user;
}

} // namespace dof
} // namespace mwrelay
