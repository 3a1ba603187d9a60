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
#include "mwrelay/lemmas.hpp"
#include "mwrelay/relay.hpp"
#include "mwrelay/scenario.hpp"

#include <json.hpp>

namespace mwrelay::io {

using Json = nlohmann::json;

/// {"num": p, "den": q}
Json rational(const Rational& r);
/// [[re, im], ...]
Json vector(const ComplexVector& v);
/// Row-major list of rows of [re, im] pairs.
Json matrix(const ComplexMatrix& m);
ComplexMatrix matrix_from(const Json& j);

Json to_json(const ChannelSet& ch);
ChannelSet channel_set_from(const Json& j);
Json to_json(const Unit& u);
Json to_json(const AlignmentPlan& p);
Json to_json(const VerificationReport& r);
Json to_json(const LemmaTrialResult& r);
/// Plan, uplink and downlink units, and report; channels only on request.
Json to_json(const Scenario& s, bool with_channels = false);

/// Overrides the lists present in `j` (keys intersection, stacked_rank,
/// direct_sum, scaling) on top of `base`.
LemmaBattery lemma_battery_from(const Json& j, LemmaBattery base);

} // namespace mwrelay::io
