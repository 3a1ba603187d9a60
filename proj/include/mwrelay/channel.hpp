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

#include "mwrelay/linalg.hpp"
#include "mwrelay/rng.hpp"

#include <cstdint>
#include <vector>

namespace mwrelay {

enum class ExtensionMode {
    Independent, // time-varying channel: fresh draw per slot
    Identical,   // invariant channel: the same block repeated
};

struct SystemConfig {
    int m = 1;         // antennas per user
    int n = 1;         // relay antennas
    int k = 3;         // users
    int extension = 1; // symbol-extension factor
    std::uint64_t seed = 0;
    Tolerance tol{};
    ExtensionMode extension_mode = ExtensionMode::Independent;

    void validate() const;
};

/// Uplink H_k is (n*ext) x (m*ext), downlink G_k is (m*ext) x (n*ext). After
/// deactivation only the first active_relay relay rows/columns remain.
struct ChannelSet {
    int m = 0;
    int n = 0;
    int k = 0;
    int extension = 1;
    int active_relay = 0;
    std::vector<ComplexMatrix> uplink;
    std::vector<ComplexMatrix> downlink;

    [[nodiscard]] int user_dims() const { return m * extension; }
};

/// Uplink matrices are drawn first (user by user, slot by slot, row-major),
/// then downlink, from a single Rng seeded with cfg.seed.
ChannelSet sample_channel_set(const SystemConfig& cfg);

/// Keeps the first n_active relay rows of every H_k and columns of every G_k.
ChannelSet deactivate_relay_antennas(const ChannelSet& ch, int n_active);

/// Applies a unitary change of basis q to the relay's (active) signal space:
/// H_k -> q H_k, G_k -> G_k q^H.
ChannelSet rotate_relay_space(const ChannelSet& ch, const ComplexMatrix& q);

} // namespace mwrelay
