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
#include "mwrelay/relay.hpp"

#include <cstdint>
#include <vector>

namespace mwrelay {

struct ScenarioOptions {
    int m = 1;
    int n = 1;
    int k = 3;
    std::uint64_t seed = 0;
    bool improved = false;
    ExtensionMode extension_mode = ExtensionMode::Independent;
    Tolerance tol{};
    double relay_power = 1.0;
};

/// Everything produced by one end-to-end construction.
struct Scenario {
    ScenarioOptions options;
    AlignmentPlan plan;
    ChannelSet channels; // after relay-space reduction, as used by the units
    std::vector<Unit> uplink;
    DownlinkDesign downlink;
    RelayProcessor relay;
    VerificationReport report;
};

/// Plans, samples channels with the plan's extension, reduces the relay space
/// when the plan deactivates part of it, builds both link directions, the
/// relay matrix and the verification report. Sub-seeds: channels 0, relay
/// rotation 1, uplink 2, downlink 3.
Scenario build_scenario(const ScenarioOptions& opt);

/// High-SNR slope of the scenario's sum rate (default sweep 40, 50, 60 dB).
double scenario_slope(const Scenario& s, const std::vector<double>& snr_db = {40.0, 50.0, 60.0});

} // namespace mwrelay
