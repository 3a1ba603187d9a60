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

#include "mwrelay/alignment.hpp"
#include "mwrelay/channel.hpp"
#include "mwrelay/dof.hpp"
#include "mwrelay/linalg.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace mwrelay {

/// Projector serving the unordered pair {a, b} (a < b) of unit `unit`.
struct PairProjector {
    int unit = 0;
    int a = 0;
    int b = 0;
    ComplexMatrix matrix;
    int rank = 0;
};

/// Receive vectors v (Stream::vector) and downlink equivalents g = G^T v
/// (Stream::equivalent), one downlink unit per uplink unit, plus the
/// downlink projectors W.
struct DownlinkDesign {
    std::vector<Unit> units;
    std::vector<PairProjector> projectors;
};

struct RelayProcessor {
    std::vector<PairProjector> uplink_projectors;
    std::vector<PairProjector> downlink_projectors;
    ComplexMatrix combiner; // sum of W P over all units and pairs
    ComplexMatrix forward;  // alpha * combiner
    double alpha = 0.0;
    double relay_power = 1.0;  // per channel use
    double stream_power = 1.0; // per stream and extended block
};

struct StreamRecord {
    int unit = 0;
    int receiver = 0; // user k decoding the message of `source`
    int source = 0;
    double desired = 0.0;
    double partner = 0.0; // own-signal coefficient, removed before decoding
    double leakage = 0.0;
    bool counted = false;
};

struct VerificationReport {
    std::vector<StreamRecord> streams;
    int counted_streams = 0; // per extended block
    int extension = 1;
    Rational counted_d_sum; // per channel use
    bool pass = false;
};

/// P for every (unit, pair): complement of all uplink equivalents except the pair's two.
std::vector<PairProjector> build_uplink_projectors(std::span<const Unit> units, const Tolerance& tol);

/// Repeats the uplink construction on the transposed downlink channels.
DownlinkDesign design_downlink(std::span<const Unit> uplink_units, const ChannelSet& ch, const Tolerance& tol,
                               std::uint64_t seed);

/// Scales the combiner so that the relay spends `relay_power` per channel use
/// with unit-variance noise and `stream_power` per stream.
RelayProcessor assemble_forward_matrix(std::vector<PairProjector> uplink, std::vector<PairProjector> downlink,
                                       std::span<const Unit> uplink_units, int extension, double relay_power,
                                       double stream_power = 1.0);

/// Coefficients are recomputed from the channels and the stored vectors, so a
/// beamformer that no longer matches its unit shows up as leakage.
VerificationReport verify_end_to_end(const ChannelSet& ch, std::span<const Unit> uplink_units,
                                     const DownlinkDesign& downlink, const RelayProcessor& relay, const Tolerance& tol);

/// Least-squares slope of the sum rate per channel use against log2(SNR).
double estimate_dof_slope(const ChannelSet& ch, std::span<const Unit> uplink_units, const DownlinkDesign& downlink,
                          const RelayProcessor& relay, std::span<const double> snr_db);

} // namespace mwrelay
