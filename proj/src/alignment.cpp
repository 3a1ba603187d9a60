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

#include "mwrelay/alignment.hpp"

#include "mwrelay/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

namespace mwrelay {

namespace {

constexpr double kSurvivalRel = 1e-6;
constexpr int kMaxExtension = 64;

std::string group_text(const std::vector<int>& group)
{
    std::string s = "{";
    for (std::size_t i = 0; i < group.size(); ++i)
        s += (i ? "," : "") + std::to_string(group[i] + 1);
    return s + "}";
}

void check_channels(std::span<const ComplexMatrix> channels)
{
    if (channels.empty())
        throw Error(ErrorCode::ShapeMismatch, "no channel matrices");
    for (const auto& h : channels) {
        if (h.rows() != channels[0].rows() || h.cols() != channels[0].cols())
            throw Error(ErrorCode::ShapeMismatch, "channel matrices differ in shape");
        linalg::require_finite(h);
    }
}

void check_group(const std::vector<int>& group, std::size_t users)
{
    if (group.size() < 2 || group.size() > users)
        throw Error(ErrorCode::InvalidPatternOrder, "group size " + std::to_string(group.size()) + " outside [2, "
                                                        + std::to_string(users) + "]");
    if (!std::is_sorted(group.begin(), group.end())
        || std::adjacent_find(group.begin(), group.end()) != group.end())
        throw Error(ErrorCode::InvalidArgument, "group must be strictly ascending: " + group_text(group));
    if (group.front() < 0 || group.back() >= static_cast<int>(users))
        throw Error(ErrorCode::InvalidArgument, "user index out of range in " + group_text(group));
}

/// Fills `equivalent` from `vector` after normalizing the latter.
void finish_stream(Stream& s, const ComplexMatrix& h, double scale)
{
    const double norm = s.vector.norm();
    if (!(norm > 1e-12 * scale))
        throw Error(ErrorCode::AlignmentDegenerate,
                    "vanishing beamformer for pair (" + std::to_string(s.from + 1) + "," + std::to_string(s.to + 1) + ")");
    s.vector /= norm;
    s.equivalent = h * s.vector;
}

std::vector<std::vector<int>> combinations(int k, int t)
{
    std::vector<std::vector<int>> out;
    std::vector<int> idx(static_cast<std::size_t>(t));
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        out.push_back(idx);
        int i = t - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == k - t + i)
            --i;
        if (i < 0)
            break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < t; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

std::int64_t as_integer(const Rational& r)
{
    return r.numerator() / r.denominator();
}

struct Shape {
    int order = kRandomOrder;
    Rational per_group; // units per group and channel use
};

/// Unit mix of the basic scheme on an (m, n) system with m <= n.
std::vector<Shape> basic_shape(const Rational& m, const Rational& n, int k)
{
    const auto random_beta = static_cast<std::int64_t>(k) * (k - 1);
    if (m / n <= Rational(1, k))
        return {{kRandomOrder, m / Rational(k - 1)}};
    const int t = dof::regime_index(m, n);
    const auto [a_t, b_t] = dof::alpha_beta(k, t);
    (void)a_t;
    const Rational c = (Rational(t) * m - n) / Rational(t - 1);
    if (Rational(b_t) * c >= n)
        return {{t, n / Rational(b_t)}};
    const int next = t == k ? kRandomOrder : t + 1;
    const std::int64_t b_next = t == k ? random_beta : dof::alpha_beta(k, t + 1).second;
    std::vector<Shape> out;
    if (c > 0)
        out.push_back({t, c});
    out.push_back({next, (n - Rational(b_t) * c) / Rational(b_next)});
    return out;
}

int streams_per_user(int order, int k)
{
    return order == kRandomOrder ? k - 1 : order - 1;
}

int span_of(int order, int k)
{
    return order == kRandomOrder ? k * (k - 1) : (order - 1) * (order - 1);
}

void check_plan(const AlignmentPlan& plan)
{
    const int sigma = plan.extension;
    if (plan.dims_used > plan.active_relay)
        throw Error(ErrorCode::InternalPlanError, "plan uses " + std::to_string(plan.dims_used) + " of "
                                                      + std::to_string(plan.active_relay) + " relay dimensions");
    std::vector<int> per_user(static_cast<std::size_t>(plan.k), 0);
    for (const auto& a : plan.allocations) {
        for (int u : a.group)
            per_user[static_cast<std::size_t>(u)] += a.count * streams_per_user(a.order, plan.k);
        if (a.order != kRandomOrder) {
            const int nullity = a.order * plan.m * sigma - plan.active_relay;
            if (a.count * (a.order - 1) > nullity)
                throw Error(ErrorCode::InternalPlanError, "group " + group_text(a.group) + " needs "
                                                              + std::to_string(a.count * (a.order - 1))
                                                              + " nullspace columns, only "
                                                              + std::to_string(std::max(nullity, 0)) + " exist");
        }
    }
    for (int u = 0; u < plan.k; ++u)
        if (per_user[static_cast<std::size_t>(u)] > plan.m * sigma)
            throw Error(ErrorCode::InternalPlanError, "user " + std::to_string(u + 1) + " exceeds its stream budget");
}

} // namespace

int Unit::expected_span() const
{
    const int g = static_cast<int>(group.size());
    return is_random() ? g * (g - 1) : (order - 1) * (order - 1);
}

const Stream& Unit::stream(int from, int to) const
{
    for (const auto& s : streams)
        if (s.from == from && s.to == to)
            return s;
    throw Error(ErrorCode::InvalidArgument,
                "no stream (" + std::to_string(from + 1) + "," + std::to_string(to + 1) + ") in unit " + group_text(group));
}

ComplexMatrix Unit::equivalent_matrix() const
{
    if (streams.empty())
        return {};
    ComplexMatrix e(streams.front().equivalent.size(), static_cast<Eigen::Index>(streams.size()));
    for (std::size_t i = 0; i < streams.size(); ++i)
        e.col(static_cast<Eigen::Index>(i)) = streams[i].equivalent;
    return e;
}

int AlignmentPlan::total_streams() const
{
    int total = 0;
    for (const auto& a : allocations) {
        const int g = static_cast<int>(a.group.size());
        total += a.count * g * (g - 1);
    }
    return total;
}

GroupNullspace group_nullspace(std::span<const ComplexMatrix> channels, std::vector<int> group, const Tolerance& tol,
                               Rng* mixer)
{
    check_channels(channels);
    check_group(group, channels.size());
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(group.size());
    for (int u : group)
        blocks.push_back(channels[static_cast<std::size_t>(u)]);
    GroupNullspace ns;
    ns.basis = linalg::nullspace_basis(linalg::hstack(blocks), tol);
    if (mixer != nullptr && ns.basis.cols() > 1)
        ns.basis = ns.basis * mixer->haar_unitary(ns.basis.cols());
    ns.group = std::move(group);
    return ns;
}

Unit build_random_unit(std::span<const ComplexMatrix> channels, Rng& rng, const Tolerance& tol)
{
    check_channels(channels);
    const int k = static_cast<int>(channels.size());
    Unit unit;
    unit.order = kRandomOrder;
    unit.group.resize(channels.size());
    std::iota(unit.group.begin(), unit.group.end(), 0);
    const Eigen::Index dims = channels[0].cols();
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            if (a == b)
                continue;
            Stream s{a, b, rng.gaussian_matrix(dims, 1).col(0), {}};
            finish_stream(s, channels[static_cast<std::size_t>(a)], 1.0);
            unit.streams.push_back(std::move(s));
        }
    const auto span = static_cast<int>(linalg::numerical_rank(unit.equivalent_matrix(), tol));
    if (span != unit.expected_span())
        throw Error(ErrorCode::AlignmentDegenerate, "random unit spans " + std::to_string(span) + " dimensions, expected "
                                                        + std::to_string(unit.expected_span()));
    return unit;
}

Unit build_random_unit(const ChannelSet& ch, Rng& rng)
{
    return build_random_unit(ch.uplink, rng, Tolerance{});
}

Unit build_aligned_unit(std::span<const ComplexMatrix> channels, const GroupNullspace& ns, int column_block,
                        const Tolerance& tol)
{
    check_channels(channels);
    check_group(ns.group, channels.size());
    const int t = static_cast<int>(ns.group.size());
    const Eigen::Index d = channels[0].cols();
    if (ns.basis.rows() != t * d)
        throw Error(ErrorCode::ShapeMismatch, "nullspace basis does not match the group channels");
    if (column_block < 0)
        throw Error(ErrorCode::InvalidArgument, "negative column block");
    const Eigen::Index first = static_cast<Eigen::Index>(column_block) * (t - 1);
    if (first + (t - 1) > ns.basis.cols())
        throw Error(ErrorCode::SupplyExhausted, "group " + group_text(ns.group) + " nullspace has "
                                                    + std::to_string(ns.basis.cols()) + " columns, block "
                                                    + std::to_string(column_block) + " needs "
                                                    + std::to_string(first + t - 1));

    // segment(j, m): part of column j belonging to local user m.
    auto segment = [&](int j, int m) -> ComplexVector { return ns.basis.col(first + j).segment(m * d, d); };
    auto sign = [](int i, int j) { return (i == 0 || j == 0) ? 1.0 : -1.0; };

    // u[m][j]: local user m's beamformer towards local user j.
    std::vector<std::vector<ComplexVector>> u(static_cast<std::size_t>(t), std::vector<ComplexVector>(static_cast<std::size_t>(t)));
    for (int j = 0; j < t - 1; ++j)
        for (int m = 0; m < t; ++m)
            if (m != j)
                u[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] = segment(j, m);
    const int last = t - 1;
    for (int j = 0; j < t - 1; ++j) {
        ComplexVector rest = segment(j, j);
        for (int i = 0; i < t - 1; ++i)
            if (i != j)
                rest -= sign(j, i) * u[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        u[static_cast<std::size_t>(j)][static_cast<std::size_t>(last)] = rest / sign(j, last);
    }

    Unit unit;
    unit.order = t;
    unit.group = ns.group;
    const double scale = ns.basis.col(first).norm();
    for (int a = 0; a < t; ++a)
        for (int b = 0; b < t; ++b) {
            if (a == b)
                continue;
            const int ua = ns.group[static_cast<std::size_t>(a)];
            Stream s{ua, ns.group[static_cast<std::size_t>(b)], u[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)], {}};
            finish_stream(s, channels[static_cast<std::size_t>(ua)], scale);
            unit.streams.push_back(std::move(s));
        }

    const ComplexMatrix e = unit.equivalent_matrix();
    const auto span = static_cast<int>(linalg::numerical_rank(e, tol));
    if (span != unit.expected_span())
        throw Error(ErrorCode::AlignmentDegenerate, "order-" + std::to_string(t) + " unit on " + group_text(ns.group)
                                                        + " spans " + std::to_string(span) + " dimensions, expected "
                                                        + std::to_string(unit.expected_span()));
    const auto count = static_cast<Eigen::Index>(unit.streams.size());
    for (Eigen::Index i = 0; i < count; ++i) {
        const Stream& s = unit.streams[static_cast<std::size_t>(i)];
        if (s.from > s.to)
            continue;
        Eigen::Index partner = 0;
        for (Eigen::Index j = 0; j < count; ++j)
            if (unit.streams[static_cast<std::size_t>(j)].from == s.to && unit.streams[static_cast<std::size_t>(j)].to == s.from)
                partner = j;
        ComplexMatrix others(e.rows(), count - 2);
        Eigen::Index c = 0;
        for (Eigen::Index j = 0; j < count; ++j)
            if (j != i && j != partner)
                others.col(c++) = e.col(j);
        const ComplexMatrix p = linalg::complement_projector(others, tol);
        for (Eigen::Index v : {i, partner})
            if ((p * e.col(v)).norm() < kSurvivalRel * e.col(v).norm())
                throw Error(ErrorCode::AlignmentDegenerate,
                            "pair (" + std::to_string(s.from + 1) + "," + std::to_string(s.to + 1)
                                + ") does not survive projection in unit " + group_text(ns.group));
    }
    return unit;
}

Unit build_aligned_unit(const ChannelSet& ch, std::vector<int> group, int column_block, const Tolerance& tol)
{
    const auto ns = group_nullspace(ch.uplink, std::move(group), tol);
    return build_aligned_unit(ch.uplink, ns, column_block, tol);
}

AlignmentPlan plan_alignment(int m, int n, int k, bool improved)
{
    if (k < 3)
        throw Error(ErrorCode::InvalidArgument, "K must be at least 3");
    if (m < 1 || n < 1)
        throw Error(ErrorCode::InvalidArgument, "antenna counts must be positive");
    const Rational mr(m);
    const Rational nr(n);
    const Rational me = std::min(mr, nr);
    Rational active = nr;
    std::vector<Shape> shape;
    const Rational ratio = mr / nr;
    bool gap = false;
    if (improved && k >= 4 && ratio > dof::capacity_lower_edge(k) && ratio < dof::capacity_upper_edge(k)) {
        for (int t = 2; t <= k - 2 && !gap; ++t) {
            if (!(ratio > dof::corner_ratio(k, t + 1) && ratio <= dof::corner_ratio(k, t)))
                continue;
            gap = true;
            if (ratio > dof::improved_breakpoint(k, t)) {
                active = mr / dof::corner_ratio(k, t);
                shape = basic_shape(mr, active, k);
            } else {
                shape = {{t + 1, nr / Rational(dof::alpha_beta(k, t + 1).second)}};
            }
        }
    }
    if (!gap)
        shape = basic_shape(me, nr, k);

    int sigma = 0;
    for (int s = 1; s <= kMaxExtension && sigma == 0; ++s) {
        bool ok = (active * Rational(s)).denominator() == 1;
        for (const auto& sh : shape)
            ok = ok && (sh.per_group * Rational(s)).denominator() == 1;
        if (ok)
            sigma = s;
    }
    if (sigma == 0)
        throw Error(ErrorCode::ExtensionOverflow, "no symbol extension up to " + std::to_string(kMaxExtension)
                                                      + " makes the unit counts integral for M=" + std::to_string(m)
                                                      + ", N=" + std::to_string(n) + ", K=" + std::to_string(k));

    AlignmentPlan plan;
    plan.m = m;
    plan.n = n;
    plan.k = k;
    plan.improved = improved;
    plan.extension = sigma;
    plan.active_relay = static_cast<int>(as_integer(active * Rational(sigma)));
    for (const auto& sh : shape) {
        const auto count = static_cast<int>(as_integer(sh.per_group * Rational(sigma)));
        if (count == 0)
            continue;
        if (sh.order == kRandomOrder) {
            Allocation a;
            a.group.resize(static_cast<std::size_t>(k));
            std::iota(a.group.begin(), a.group.end(), 0);
            a.order = kRandomOrder;
            a.count = count;
            plan.allocations.push_back(std::move(a));
        } else {
            for (auto& g : combinations(k, sh.order))
                plan.allocations.push_back({std::move(g), sh.order, count});
        }
    }
    for (const auto& a : plan.allocations)
        plan.dims_used += a.count * span_of(a.order, k);
    check_plan(plan);
    plan.predicted_d_user = Rational(plan.total_streams(), static_cast<std::int64_t>(k) * sigma);
    const Rational expected = improved ? dof::achievable_improved(mr, nr, k).d_user : dof::achievable_basic(mr, nr, k).d_user;
    if (plan.predicted_d_user != expected)
        throw Error(ErrorCode::InternalPlanError, "plan delivers d_user=" + to_string(plan.predicted_d_user)
                                                      + " but the formula gives " + to_string(expected));
    return plan;
}

std::vector<Unit> execute_plan(const AlignmentPlan& plan, std::span<const ComplexMatrix> channels, const Tolerance& tol,
                               std::uint64_t seed)
{
    tol.validate();
    std::vector<Unit> units;
    if (plan.allocations.empty())
        return units;
    check_channels(channels);
    if (static_cast<int>(channels.size()) != plan.k)
        throw Error(ErrorCode::ShapeMismatch, "plan is for " + std::to_string(plan.k) + " users, got "
                                                  + std::to_string(channels.size()) + " channels");
    if (channels[0].rows() != plan.active_relay || channels[0].cols() != static_cast<Eigen::Index>(plan.m) * plan.extension)
        throw Error(ErrorCode::ShapeMismatch, "channels are " + std::to_string(channels[0].rows()) + "x"
                                                  + std::to_string(channels[0].cols()) + ", plan expects "
                                                  + std::to_string(plan.active_relay) + "x"
                                                  + std::to_string(plan.m * plan.extension));
    for (std::size_t i = 0; i < plan.allocations.size(); ++i) {
        const Allocation& a = plan.allocations[i];
        Rng rng(split_seed(seed, i));
        if (a.order == kRandomOrder) {
            for (int c = 0; c < a.count; ++c)
                units.push_back(build_random_unit(channels, rng, tol));
            continue;
        }
        if (static_cast<int>(a.group.size()) != a.order)
            throw Error(ErrorCode::InvalidPatternOrder, "allocation order does not match its group size");
        const auto ns = group_nullspace(channels, a.group, tol, &rng);
        for (int c = 0; c < a.count; ++c)
            units.push_back(build_aligned_unit(channels, ns, c, tol));
    }

    const auto span = static_cast<int>(spanned_dimension(units, tol));
    if (span != plan.dims_used)
        throw Error(ErrorCode::IndependenceViolation, "units span " + std::to_string(span) + " relay dimensions, plan uses "
                                                          + std::to_string(plan.dims_used));
    for (int user = 0; user < plan.k; ++user) {
        std::vector<ComplexMatrix> cols;
        for (const auto& unit : units)
            for (const auto& s : unit.streams)
                if (s.from == user)
                    cols.emplace_back(s.vector);
        if (cols.empty())
            continue;
        const auto rank = linalg::numerical_rank(linalg::hstack(cols), tol);
        if (rank != cols.size())
            throw Error(ErrorCode::IndependenceViolation, "user " + std::to_string(user + 1) + " beamformers have rank "
                                                              + std::to_string(rank) + " for " + std::to_string(cols.size())
                                                              + " streams");
    }
    return units;
}

std::vector<Unit> execute_plan(const AlignmentPlan& plan, const ChannelSet& ch, std::uint64_t seed)
{
    if (ch.extension != plan.extension || ch.active_relay != plan.active_relay)
        throw Error(ErrorCode::ShapeMismatch, "channel set does not match the plan's extension or active relay size");
    return execute_plan(plan, ch.uplink, Tolerance{}, seed);
}

std::size_t spanned_dimension(std::span<const Unit> units, const Tolerance& tol)
{
    std::vector<ComplexMatrix> blocks;
    for (const auto& u : units)
        if (!u.streams.empty())
            blocks.push_back(u.equivalent_matrix());
    if (blocks.empty())
        return 0;
    return linalg::numerical_rank(linalg::hstack(blocks), tol);
}

} // namespace mwrelay
