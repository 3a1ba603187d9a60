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

#include "mwrelay/lemmas.hpp"

#include "mwrelay/dof.hpp"
#include "mwrelay/error.hpp"
#include "mwrelay/rng.hpp"

#include <algorithm>
#include <string>

namespace mwrelay {

namespace {

constexpr std::size_t kKeptSeeds = 8;

ComplexMatrix draw(Rng& rng, int rows, int cols, int sigma)
{
    ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(rows) * sigma, static_cast<Eigen::Index>(cols) * sigma);
    for (int s = 0; s < sigma; ++s)
        out.block(s * rows, s * cols, rows, cols) = rng.gaussian_matrix(rows, cols);
    return out;
}

void record(LemmaTrialResult& r, int observed, std::uint64_t trial_seed, const std::vector<ComplexMatrix>& sample)
{
    ++r.trials;
    ++r.observed[observed];
    if (observed == r.expected_value)
        return;
    ++r.failures;
    if (r.failing_seeds.size() < kKeptSeeds)
        r.failing_seeds.push_back(trial_seed);
    if (r.first_failure.empty())
        r.first_failure = sample;
}

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw Error(ErrorCode::InvalidLemmaParams, what);
}

/// [A_1 U_1, ..., A_t U_t] for the nullspace U of [A_1, ..., A_t].
ComplexMatrix aligned_span(const std::vector<ComplexMatrix>& a, const Tolerance& tol)
{
    const ComplexMatrix u = linalg::nullspace_basis(linalg::hstack(a), tol);
    std::vector<ComplexMatrix> parts;
    Eigen::Index row = 0;
    for (const auto& ai : a) {
        parts.emplace_back(ai * u.middleRows(row, ai.cols()));
        row += ai.cols();
    }
    return linalg::hstack(parts);
}

std::vector<std::vector<int>> subsets(int k, int t)
{
    std::vector<std::vector<int>> out;
    std::vector<bool> pick(static_cast<std::size_t>(k), false);
    std::fill(pick.begin(), pick.begin() + t, true);
    do {
        std::vector<int> g;
        for (int i = 0; i < k; ++i)
            if (pick[static_cast<std::size_t>(i)])
                g.push_back(i);
        out.push_back(std::move(g));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
}

} // namespace

const char* to_string(LemmaId id) noexcept
{
    switch (id) {
    case LemmaId::Intersection:
        return "INTERSECTION";
    case LemmaId::StackedRank:
        return "STACKED_RANK";
    case LemmaId::DirectSum:
        return "DIRECT_SUM";
    case LemmaId::Scaling:
        return "SCALING";
    }
    return "UNKNOWN";
}

LemmaTrialResult check_intersection(int m, int n, int trials, std::uint64_t seed, const Tolerance& tol)
{
    require(m >= 1 && n >= 1 && m <= n, "intersection lemma needs 1 <= M <= N");
    require(trials >= 0, "trial count must be non-negative");
    LemmaTrialResult r;
    r.lemma = LemmaId::Intersection;
    r.params.m = m;
    r.params.n = n;
    r.expected_value = std::max(2 * m - n, 0);
    for (int i = 0; i < trials; ++i) {
        const auto s = split_seed(seed, static_cast<std::uint64_t>(i));
        Rng rng(s);
        const ComplexMatrix a = rng.gaussian_matrix(n, m);
        const ComplexMatrix b = rng.gaussian_matrix(n, m);
        record(r, static_cast<int>(linalg::intersection_basis(a, b, tol).cols()), s, {a, b});
    }
    return r;
}

LemmaTrialResult check_stacked_rank(int k, int m, int n, int trials, std::uint64_t seed, const Tolerance& tol)
{
    require(k >= 2 && m >= 1 && n >= 1, "stacked-rank lemma needs K >= 2 and positive M, N");
    require(m <= n, "stacked-rank lemma needs M <= N");
    require(k * m > n, "stacked-rank lemma needs KM > N");
    require(trials >= 0, "trial count must be non-negative");
    LemmaTrialResult r;
    r.lemma = LemmaId::StackedRank;
    r.params.k = k;
    r.params.m = m;
    r.params.n = n;
    r.expected_value = std::min((k - 1) * (k * m - n), n);
    for (int i = 0; i < trials; ++i) {
        const auto s = split_seed(seed, static_cast<std::uint64_t>(i));
        Rng rng(s);
        std::vector<ComplexMatrix> a;
        for (int j = 0; j < k; ++j)
            a.push_back(rng.gaussian_matrix(n, m));
        record(r, static_cast<int>(linalg::numerical_rank(aligned_span(a, tol), tol)), s, a);
    }
    return r;
}

LemmaTrialResult check_direct_sum(int k, int t, int m, int n, int trials, std::uint64_t seed, int sigma,
                                  const Tolerance& tol)
{
    require(t >= 2 && t <= k, "direct-sum lemma needs 2 <= t <= K");
    require(m >= 1 && n >= 1 && t * m > n, "direct-sum lemma needs positive M, N and tM > N");
    require(sigma >= 1, "extension factor must be positive");
    require(trials >= 0, "trial count must be non-negative");
    LemmaTrialResult r;
    r.lemma = LemmaId::DirectSum;
    r.params.k = k;
    r.params.t = t;
    r.params.m = m;
    r.params.n = n;
    r.params.sigma = sigma;
    const auto groups = subsets(k, t);
    const long per_group = static_cast<long>(t - 1) * (t * m - n) * sigma;
    r.expected_value = static_cast<int>(std::min(static_cast<long>(groups.size()) * per_group, static_cast<long>(n) * sigma));
    for (int i = 0; i < trials; ++i) {
        const auto s = split_seed(seed, static_cast<std::uint64_t>(i));
        Rng rng(s);
        std::vector<ComplexMatrix> a;
        for (int j = 0; j < k; ++j)
            a.push_back(draw(rng, n, m, sigma));
        std::vector<ComplexMatrix> spans;
        for (const auto& g : groups) {
            std::vector<ComplexMatrix> members;
            for (int u : g)
                members.push_back(a[static_cast<std::size_t>(u)]);
            spans.push_back(aligned_span(members, tol));
        }
        record(r, static_cast<int>(linalg::union_span_dim(spans, tol)), s, a);
    }
    return r;
}

LemmaTrialResult check_scaling(int k, const std::vector<std::pair<int, int>>& grid, const std::vector<int>& sigmas)
{
    require(k >= 3, "scaling check needs K >= 3");
    LemmaTrialResult r;
    r.lemma = LemmaId::Scaling;
    r.params.k = k;
    r.expected_value = 1;
    for (const auto& [m, n] : grid)
        for (int s : sigmas) {
            require(m >= 1 && n >= 1 && s >= 1, "scaling grid entries must be positive");
            const bool ok = dof::scaling_check(Rational(m), Rational(n), s, k);
            record(r, ok ? 1 : 0, static_cast<std::uint64_t>(s), {});
        }
    return r;
}

LemmaBattery default_lemma_battery()
{
    LemmaBattery b;
    b.intersection = {{3, 5}, {2, 5}, {4, 4}};
    b.stacked_rank = {{3, 2, 4}, {3, 3, 4}, {4, 2, 7}};
    b.direct_sum = {{4, 3, 3, 8, 1}, {4, 3, 7, 20, 1}, {3, 3, 2, 5, 2}};
    return b;
}

std::vector<LemmaTrialResult> run_lemma_battery(const LemmaBattery& battery, int trials, std::uint64_t seed,
                                                const Tolerance& tol)
{
    require(trials >= 1, "at least one trial is needed");
    std::vector<LemmaTrialResult> out;
    std::uint64_t index = 0;
    for (const auto& [m, n] : battery.intersection)
        out.push_back(check_intersection(m, n, trials, split_seed(seed, index++), tol));
    for (const auto& [k, m, n] : battery.stacked_rank)
        out.push_back(check_stacked_rank(k, m, n, trials, split_seed(seed, index++), tol));
    for (const auto& [k, t, m, n, s] : battery.direct_sum)
        out.push_back(check_direct_sum(k, t, m, n, trials, split_seed(seed, index++), s, tol));
    std::vector<std::pair<int, int>> grid;
    for (int m = 1; m <= battery.scaling_m_max; ++m)
        for (int n = 1; n <= battery.scaling_n_max; ++n)
            grid.emplace_back(m, n);
    for (int k : battery.scaling_users)
        out.push_back(check_scaling(k, grid, battery.scaling_sigmas));
    return out;
}

} // namespace mwrelay
