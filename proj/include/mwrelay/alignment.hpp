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

#pragma once

#include "mwrelay/channel.hpp"
#include "mwrelay/dof.hpp"
#include "mwrelay/linalg.hpp"
#include "mwrelay/rng.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace mwrelay {

/// Pattern order of a unit whose beamformers are drawn at random (no
/// alignment, every stream occupies its own relay dimension).
inline constexpr int kRandomOrder = 0;

/// One spatial stream s^(from,to) of a unit: transmit beamformer u and the
/// direction h = H_from u it occupies at the relay. The same type describes
/// the downlink, where `vector` is the receive vector v and `equivalent` is
/// g = G_from^T v.
struct Stream {
    int from = 0;
    int to = 0;
    ComplexVector vector;
    ComplexVector equivalent;
};

struct Unit {
    int order = kRandomOrder; // t, or kRandomOrder
    std::vector<int> group;   // ascending user indices (0-based)
    std::vector<Stream> streams; // every ordered pair of the group, lexicographic

    [[nodiscard]] bool is_random() const { return order == kRandomOrder; }
    /// (t-1)^2 for aligned units, g(g-1) for random units of group size g.
    [[nodiscard]] int expected_span() const;
    [[nodiscard]] const Stream& stream(int from, int to) const;
    [[nodiscard]] ComplexMatrix equivalent_matrix() const;
};

struct Allocation {
    std::vector<int> group;
    int order = kRandomOrder;
    int count = 0; // units per extended block
};

struct AlignmentPlan {
    int m = 0;
    int n = 0;
    int k = 0;
    bool improved = false;
    int extension = 1;
    int active_relay = 0; // relay dimensions kept, per extended block
    std::vector<Allocation> allocations;
    Rational predicted_d_user;
    int dims_used = 0;

    [[nodiscard]] bool deactivates() const { return active_relay < n * extension; }
    [[nodiscard]] Rational active_relay_per_use() const { return {active_relay, extension}; }
    [[nodiscard]] int total_streams() const;
};

/// Orthonormal basis of null([H_{g1}, ..., H_{gt}]) for one user group. When a
/// mixer is given, the basis is rotated by a Haar unitary so that sequential
/// column blocks are in general position even for block-diagonal channels.
struct GroupNullspace {
    std::vector<int> group;
    ComplexMatrix basis; // (t * user_dims) x nullity
};

GroupNullspace group_nullspace(std::span<const ComplexMatrix> channels, std::vector<int> group,
                               const Tolerance& tol, Rng* mixer = nullptr);

/// Random unit over all users of `channels`.
Unit build_random_unit(std::span<const ComplexMatrix> channels, Rng& rng, const Tolerance& tol);
Unit build_random_unit(const ChannelSet& ch, Rng& rng);

/// Aligned unit of order t = group size from columns
/// [(t-1) block, (t-1) (block + 1)) of the group nullspace.
Unit build_aligned_unit(std::span<const ComplexMatrix> channels, const GroupNullspace& ns, int column_block,
                        const Tolerance& tol);
Unit build_aligned_unit(const ChannelSet& ch, std::vector<int> group, int column_block, const Tolerance& tol);

AlignmentPlan plan_alignment(int m, int n, int k, bool improved);

/// Builds every unit of the plan on `channels` (relay dims x user dims each).
/// Throws AlignmentDegenerate, SupplyExhausted or IndependenceViolation.
std::vector<Unit> execute_plan(const AlignmentPlan& plan, std::span<const ComplexMatrix> channels,
                               const Tolerance& tol, std::uint64_t seed);
std::vector<Unit> execute_plan(const AlignmentPlan& plan, const ChannelSet& ch, std::uint64_t seed);

/// Dimension of the span of every equivalent vector of the given units.
std::size_t spanned_dimension(std::span<const Unit> units, const Tolerance& tol);

} // namespace mwrelay
