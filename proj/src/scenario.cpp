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

#include "mwrelay/scenario.hpp"

#include "mwrelay/rng.hpp"

namespace mwrelay {

Scenario build_scenario(const ScenarioOptions& opt)
{
    opt.tol.validate();
    Scenario s;
    s.options = opt;
    s.plan = plan_alignment(opt.m, opt.n, opt.k, opt.improved);

    SystemConfig cfg;
    cfg.m = opt.m;
    cfg.n = opt.n;
    cfg.k = opt.k;
    cfg.extension = s.plan.extension;
    cfg.seed = split_seed(opt.seed, 0);
    cfg.tol = opt.tol;
    cfg.extension_mode = opt.extension_mode;
    s.channels = sample_channel_set(cfg);
    if (s.plan.deactivates()) {
        // Block-diagonal channels would lose whole slots to a prefix cut, so
        // the kept subspace is a random one.
        Rng rng(split_seed(opt.seed, 1));
        s.channels = rotate_relay_space(s.channels, rng.haar_unitary(s.channels.active_relay));
        s.channels = deactivate_relay_antennas(s.channels, s.plan.active_relay);
    }

    s.uplink = execute_plan(s.plan, s.channels.uplink, opt.tol, split_seed(opt.seed, 2));
    s.downlink = design_downlink(s.uplink, s.channels, opt.tol, split_seed(opt.seed, 3));
    int busiest = 0;
    for (int u = 0; u < opt.k; ++u) {
        int count = 0;
        for (const auto& unit : s.uplink)
            for (const auto& st : unit.streams)
                count += st.from == u ? 1 : 0;
        busiest = std::max(busiest, count);
    }
    const double stream_power = busiest > 0 ? opt.relay_power * s.plan.extension / busiest : opt.relay_power;
    s.relay = assemble_forward_matrix(build_uplink_projectors(s.uplink, opt.tol), s.downlink.projectors, s.uplink,
                                      s.plan.extension, opt.relay_power, stream_power);
    s.report = verify_end_to_end(s.channels, s.uplink, s.downlink, s.relay, opt.tol);
    return s;
}

double scenario_slope(const Scenario& s, const std::vector<double>& snr_db)
{
    return estimate_dof_slope(s.channels, s.uplink, s.downlink, s.relay, snr_db);
}

} // namespace mwrelay
