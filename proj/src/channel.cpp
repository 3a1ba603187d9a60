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

#include "mwrelay/channel.hpp"

#include "mwrelay/error.hpp"

#include <string>

namespace mwrelay {

void SystemConfig::validate() const
{
    if (k < 3)
        throw Error(ErrorCode::InvalidArgument, "K must be at least 3");
    if (m < 1 || n < 1)
        throw Error(ErrorCode::InvalidArgument, "M and N must be positive");
    if (extension < 1)
        throw Error(ErrorCode::InvalidArgument, "extension factor must be positive");
    tol.validate();
}

namespace {

ComplexMatrix extended(Rng& rng, Eigen::Index rows, Eigen::Index cols, int ext, ExtensionMode mode)
{
    ComplexMatrix out = ComplexMatrix::Zero(rows * ext, cols * ext);
    ComplexMatrix block;
    for (int s = 0; s < ext; ++s) {
        if (s == 0 || mode == ExtensionMode::Independent)
            block = rng.gaussian_matrix(rows, cols);
        out.block(s * rows, s * cols, rows, cols) = block;
    }
    return out;
}

} // namespace

ChannelSet sample_channel_set(const SystemConfig& cfg)
{
    cfg.validate();
    Rng rng(cfg.seed);
    ChannelSet ch;
    ch.m = cfg.m;
    ch.n = cfg.n;
    ch.k = cfg.k;
    ch.extension = cfg.extension;
    ch.active_relay = cfg.n * cfg.extension;
    ch.uplink.reserve(static_cast<std::size_t>(cfg.k));
    ch.downlink.reserve(static_cast<std::size_t>(cfg.k));
    for (int u = 0; u < cfg.k; ++u)
        ch.uplink.push_back(extended(rng, cfg.n, cfg.m, cfg.extension, cfg.extension_mode));
    for (int u = 0; u < cfg.k; ++u)
        ch.downlink.push_back(extended(rng, cfg.m, cfg.n, cfg.extension, cfg.extension_mode));
    return ch;
}

ChannelSet deactivate_relay_antennas(const ChannelSet& ch, int n_active)
{
    if (n_active < 1 || n_active > ch.active_relay)
        throw Error(ErrorCode::InvalidDeactivation, "cannot keep " + std::to_string(n_active) + " of " +
                                                        std::to_string(ch.active_relay) + " active relay dimensions");
    ChannelSet out = ch;
    out.active_relay = n_active;
    for (auto& h : out.uplink)
        h = ComplexMatrix(h.topRows(n_active));
    for (auto& g : out.downlink)
        g = ComplexMatrix(g.leftCols(n_active));
    return out;
}

ChannelSet rotate_relay_space(const ChannelSet& ch, const ComplexMatrix& q)
{
    if (q.rows() != ch.active_relay || q.cols() != ch.active_relay)
        throw Error(ErrorCode::ShapeMismatch, "relay rotation must be active_relay x active_relay");
    ChannelSet out = ch;
    for (auto& h : out.uplink)
        h = q * h;
    for (auto& g : out.downlink)
        g = g * q.adjoint();
    return out;
}

} // namespace mwrelay
