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

#include "mwrelay/relay.hpp"

#include "mwrelay/error.hpp"
#include "mwrelay/rng.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mwrelay {

namespace {

constexpr double kCoefficientFloor = 1e-6;

struct PairRef {
    int unit;
    int a;
    int b;
};

std::vector<PairRef> pairs_of(std::span<const Unit> units)
{
    std::vector<PairRef> out;
    for (std::size_t l = 0; l < units.size(); ++l) {
        const auto& g = units[l].group;
        for (std::size_t i = 0; i < g.size(); ++i)
            for (std::size_t j = i + 1; j < g.size(); ++j)
                out.push_back({static_cast<int>(l), g[i], g[j]});
    }
    return out;
}

/// All equivalents as columns, with (unit, from, to) per column.
struct Columns {
    ComplexMatrix matrix;
    std::vector<PairRef> owner; // a = from, b = to
};

Columns collect(std::span<const Unit> units)
{
    Columns c;
    Eigen::Index rows = 0;
    std::size_t count = 0;
    for (const auto& u : units) {
        for (const auto& s : u.streams)
            rows = std::max(rows, s.equivalent.size());
        count += u.streams.size();
    }
    c.matrix.resize(rows, static_cast<Eigen::Index>(count));
    Eigen::Index at = 0;
    for (std::size_t l = 0; l < units.size(); ++l)
        for (const auto& s : units[l].streams) {
            if (s.equivalent.size() != rows)
                throw Error(ErrorCode::ShapeMismatch, "equivalent vectors differ in length");
            c.matrix.col(at++) = s.equivalent;
            c.owner.push_back({static_cast<int>(l), s.from, s.to});
        }
    return c;
}

bool in_pair(const PairRef& col, const PairRef& pair)
{
    return col.unit == pair.unit && ((col.a == pair.a && col.b == pair.b) || (col.a == pair.b && col.b == pair.a));
}

std::vector<PairProjector> pair_projectors(std::span<const Unit> units, const Tolerance& tol, bool conjugate,
                                           const char* side)
{
    std::vector<PairProjector> out;
    if (units.empty())
        return out;
    const Columns cols = collect(units);
    const Eigen::Index n = cols.matrix.rows();
    for (const auto& pair : pairs_of(units)) {
        ComplexMatrix others(n, cols.matrix.cols());
        Eigen::Index kept = 0;
        for (Eigen::Index j = 0; j < cols.matrix.cols(); ++j)
            if (!in_pair(cols.owner[static_cast<std::size_t>(j)], pair))
                others.col(kept++) = cols.matrix.col(j);
        others.conservativeResize(Eigen::NoChange, kept);
        PairProjector p{pair.unit, pair.a, pair.b, linalg::complement_projector(others, tol), 0};
        p.rank = static_cast<int>(std::lround(p.matrix.trace().real()));
        if (p.rank < 1)
            throw Error(ErrorCode::ProjectorCollapse, std::string(side) + " projector of pair (" + std::to_string(pair.a + 1)
                                                          + "," + std::to_string(pair.b + 1) + ") in unit "
                                                          + std::to_string(pair.unit) + " has rank zero");
        if (conjugate)
            p.matrix = p.matrix.conjugate().eval();
        out.push_back(std::move(p));
    }
    return out;
}

const Stream* find_stream(const Unit& u, int from, int to)
{
    for (const auto& s : u.streams)
        if (s.from == from && s.to == to)
            return &s;
    return nullptr;
}

int max_streams_per_user(std::span<const Unit> units)
{
    std::vector<int> count;
    for (const auto& u : units)
        for (const auto& s : u.streams) {
            if (s.from >= static_cast<int>(count.size()))
                count.resize(static_cast<std::size_t>(s.from) + 1, 0);
            ++count[static_cast<std::size_t>(s.from)];
        }
    return count.empty() ? 0 : *std::max_element(count.begin(), count.end());
}

/// Stream coefficients g^T F0 h for every receive stream, recomputed from the channels.
struct Chain {
    ComplexMatrix uplink;   // recomputed h, one column per uplink stream
    std::vector<PairRef> owner;
    std::vector<PairRef> receivers; // (unit, receiver k, partner k')
    ComplexMatrix rows;     // g^T F0, one row per receiver
};

Chain build_chain(const ChannelSet& ch, std::span<const Unit> up, const DownlinkDesign& down, const ComplexMatrix& combiner)
{
    if (down.units.size() != up.size())
        throw Error(ErrorCode::ShapeMismatch, "downlink design does not mirror the uplink units");
    Chain c;
    std::size_t count = 0;
    for (const auto& u : up)
        count += u.streams.size();
    const Eigen::Index n = ch.active_relay;
    if (combiner.rows() != n && count > 0)
        throw Error(ErrorCode::ShapeMismatch, "relay matrix does not match the active relay dimension");
    c.uplink.resize(n, static_cast<Eigen::Index>(count));
    c.rows.resize(static_cast<Eigen::Index>(count), n);
    Eigen::Index at = 0;
    for (std::size_t l = 0; l < up.size(); ++l) {
        for (const auto& s : up[l].streams) {
            c.uplink.col(at) = ch.uplink.at(static_cast<std::size_t>(s.from)) * s.vector;
            c.owner.push_back({static_cast<int>(l), s.from, s.to});
            const Stream* rx = find_stream(down.units[l], s.from, s.to);
            if (rx == nullptr)
                throw Error(ErrorCode::ShapeMismatch, "downlink unit lacks a receive vector");
            const ComplexVector g = ch.downlink.at(static_cast<std::size_t>(s.from)).transpose() * rx->vector;
            c.rows.row(at) = g.transpose() * combiner;
            c.receivers.push_back({static_cast<int>(l), s.from, s.to});
            ++at;
        }
    }
    return c;
}

} // namespace

std::vector<PairProjector> build_uplink_projectors(std::span<const Unit> units, const Tolerance& tol)
{
    return pair_projectors(units, tol, false, "uplink");
}

DownlinkDesign design_downlink(std::span<const Unit> uplink_units, const ChannelSet& ch, const Tolerance& tol,
                               std::uint64_t seed)
{
    DownlinkDesign d;
    if (uplink_units.empty())
        return d;
    std::vector<ComplexMatrix> transposed;
    transposed.reserve(ch.downlink.size());
    for (const auto& g : ch.downlink)
        transposed.emplace_back(g.transpose());

    std::size_t block = 0;
    for (std::size_t i = 0; i < uplink_units.size();) {
        const Unit& first = uplink_units[i];
        std::size_t j = i;
        while (j < uplink_units.size() && uplink_units[j].order == first.order && uplink_units[j].group == first.group)
            ++j;
        Rng rng(split_seed(seed, block++));
        if (first.is_random()) {
            for (std::size_t c = i; c < j; ++c)
                d.units.push_back(build_random_unit(transposed, rng, tol));
        } else {
            const auto ns = group_nullspace(transposed, first.group, tol, &rng);
            for (std::size_t c = i; c < j; ++c)
                d.units.push_back(build_aligned_unit(transposed, ns, static_cast<int>(c - i), tol));
        }
        i = j;
    }

    std::size_t expected = 0;
    for (const auto& u : uplink_units)
        expected += static_cast<std::size_t>(u.expected_span());
    const auto span = spanned_dimension(d.units, tol);
    if (span != expected)
        throw Error(ErrorCode::IndependenceViolation, "downlink units span " + std::to_string(span) + " dimensions, expected "
                                                          + std::to_string(expected));
    d.projectors = pair_projectors(d.units, tol, true, "downlink");
    return d;
}

RelayProcessor assemble_forward_matrix(std::vector<PairProjector> uplink, std::vector<PairProjector> downlink,
                                       std::span<const Unit> uplink_units, int extension, double relay_power,
                                       double stream_power)
{
    if (uplink.size() != downlink.size())
        throw Error(ErrorCode::ShapeMismatch, "uplink and downlink projector maps differ in size");
    if (!(relay_power > 0.0) || !(stream_power > 0.0) || extension < 1)
        throw Error(ErrorCode::InvalidArgument, "powers and extension must be positive");
    RelayProcessor r;
    r.relay_power = relay_power;
    r.stream_power = stream_power;
    const Eigen::Index n = uplink.empty() ? 0 : uplink.front().matrix.rows();
    r.combiner = ComplexMatrix::Zero(n, n);
    for (std::size_t i = 0; i < uplink.size(); ++i) {
        const auto& p = uplink[i];
        const auto& w = downlink[i];
        if (p.unit != w.unit || p.a != w.a || p.b != w.b || p.matrix.rows() != n || w.matrix.rows() != n)
            throw Error(ErrorCode::ShapeMismatch, "uplink and downlink projectors do not correspond");
        r.combiner.noalias() += w.matrix * p.matrix;
    }
    r.uplink_projectors = std::move(uplink);
    r.downlink_projectors = std::move(downlink);
    if (n == 0) {
        r.forward = r.combiner;
        return r;
    }
    // E[y y^H] per extended block with unit-variance noise.
    ComplexMatrix cov = ComplexMatrix::Identity(n, n);
    for (const auto& u : uplink_units)
        for (const auto& s : u.streams) {
            if (s.equivalent.size() != n)
                throw Error(ErrorCode::ShapeMismatch, "unit does not match the projector dimension");
            cov.noalias() += stream_power * s.equivalent * s.equivalent.adjoint();
        }
    const double spent = (r.combiner * cov * r.combiner.adjoint()).trace().real();
    r.alpha = std::sqrt(relay_power * extension / spent);
    r.forward = r.alpha * r.combiner;
    return r;
}

VerificationReport verify_end_to_end(const ChannelSet& ch, std::span<const Unit> uplink_units,
                                     const DownlinkDesign& downlink, const RelayProcessor& relay, const Tolerance& tol)
{
    VerificationReport rep;
    rep.extension = ch.extension;
    const Chain chain = build_chain(ch, uplink_units, downlink, relay.combiner);
    const ComplexMatrix coeff = chain.rows * chain.uplink; // receiver x source
    rep.pass = true;
    for (Eigen::Index r = 0; r < coeff.rows(); ++r) {
        const PairRef& rx = chain.receivers[static_cast<std::size_t>(r)];
        StreamRecord rec;
        rec.unit = rx.unit;
        rec.receiver = rx.a;
        rec.source = rx.b;
        for (Eigen::Index c = 0; c < coeff.cols(); ++c) {
            const PairRef& src = chain.owner[static_cast<std::size_t>(c)];
            const double mag = std::abs(coeff(r, c));
            if (src.unit == rx.unit && src.a == rx.b && src.b == rx.a)
                rec.desired = mag;
            else if (src.unit == rx.unit && src.a == rx.a && src.b == rx.b)
                rec.partner = mag;
            else
                rec.leakage = std::max(rec.leakage, mag);
        }
        rec.counted = rec.desired > kCoefficientFloor && rec.partner > kCoefficientFloor && rec.leakage <= tol.leakage_abs;
        rep.counted_streams += rec.counted ? 1 : 0;
        rep.pass = rep.pass && rec.counted;
        rep.streams.push_back(rec);
    }
    rep.counted_d_sum = Rational(rep.counted_streams, rep.extension);
    return rep;
}

double estimate_dof_slope(const ChannelSet& ch, std::span<const Unit> uplink_units, const DownlinkDesign& downlink,
                          const RelayProcessor& relay, std::span<const double> snr_db)
{
    if (snr_db.size() < 2)
        throw Error(ErrorCode::InvalidSweep, "at least two SNR points are needed");
    for (std::size_t i = 0; i < snr_db.size(); ++i) {
        if (!std::isfinite(snr_db[i]) || snr_db[i] < 30.0)
            throw Error(ErrorCode::InvalidSweep, "SNR points must be finite and at least 30 dB");
        if (i > 0 && !(snr_db[i] > snr_db[i - 1]))
            throw Error(ErrorCode::InvalidSweep, "SNR points must be strictly ascending");
    }
    if (uplink_units.empty())
        return 0.0;

    const Chain chain = build_chain(ch, uplink_units, downlink, relay.combiner);
    const ComplexMatrix coeff = chain.rows * chain.uplink;
    const Eigen::Index n = chain.uplink.rows();
    const double sigma = ch.extension;
    const int busiest = max_streams_per_user(uplink_units);
    ComplexMatrix signal = ComplexMatrix::Zero(n, n);
    for (Eigen::Index c = 0; c < chain.uplink.cols(); ++c)
        signal.noalias() += chain.uplink.col(c) * chain.uplink.col(c).adjoint();
    const double signal_power = (relay.combiner * signal * relay.combiner.adjoint()).trace().real();
    const double noise_power = relay.combiner.squaredNorm();

    std::vector<double> x;
    std::vector<double> y;
    for (double db : snr_db) {
        const double snr = std::pow(10.0, db / 10.0);
        const double p = snr * sigma / busiest;
        const double alpha2 = snr * sigma / (p * signal_power + noise_power);
        double rate = 0.0;
        for (Eigen::Index r = 0; r < coeff.rows(); ++r) {
            const PairRef& rx = chain.receivers[static_cast<std::size_t>(r)];
            double desired = 0.0;
            double interference = 0.0;
            for (Eigen::Index c = 0; c < coeff.cols(); ++c) {
                const PairRef& src = chain.owner[static_cast<std::size_t>(c)];
                const double mag2 = std::norm(coeff(r, c));
                if (src.unit == rx.unit && src.a == rx.b && src.b == rx.a)
                    desired = mag2;
                else if (!(src.unit == rx.unit && src.a == rx.a && src.b == rx.b))
                    interference += mag2;
            }
            const double relay_noise = chain.rows.row(r).squaredNorm();
            const double sinr = alpha2 * p * desired / (alpha2 * p * interference + alpha2 * relay_noise + 1.0);
            rate += std::log2(1.0 + sinr);
        }
        x.push_back(std::log2(snr));
        y.push_back(rate / sigma);
    }
    const double n_pts = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n_pts * sxy - sx * sy) / (n_pts * sxx - sx * sx);
}

} // namespace mwrelay
