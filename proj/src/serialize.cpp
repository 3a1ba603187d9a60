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

#include "mwrelay/serialize.hpp"

#include "mwrelay/error.hpp"

#include <string>

namespace mwrelay::io {

namespace {

Json user_list(const std::vector<int>& users)
{
    Json a = Json::array();
    for (int u : users)
        a.push_back(u + 1);
    return a;
}

Json optional_int(const std::optional<int>& v)
{
    return v ? Json(*v) : Json(nullptr);
}

template <class Fn>
auto guarded(const char* what, Fn&& fn)
{
    try {
        return fn();
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, std::string(what) + ": " + e.what());
    }
}

} // namespace

Json rational(const Rational& r)
{
    return {{"num", r.numerator()}, {"den", r.denominator()}};
}

Json vector(const ComplexVector& v)
{
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        a.push_back({v(i).real(), v(i).imag()});
    return a;
}

Json matrix(const ComplexMatrix& m)
{
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        rows.push_back(vector(m.row(r).transpose()));
    return rows;
}

ComplexMatrix matrix_from(const Json& j)
{
    return guarded("matrix", [&] {
        if (!j.is_array())
            throw Error(ErrorCode::InvalidArgument, "matrix must be an array of rows");
        const auto rows = static_cast<Eigen::Index>(j.size());
        const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(j.at(0).size());
        ComplexMatrix m(rows, cols);
        for (Eigen::Index r = 0; r < rows; ++r) {
            const Json& row = j.at(static_cast<std::size_t>(r));
            if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
                throw Error(ErrorCode::ShapeMismatch, "ragged matrix rows");
            for (Eigen::Index c = 0; c < cols; ++c) {
                const Json& e = row.at(static_cast<std::size_t>(c));
                if (!e.is_array() || e.size() != 2)
                    throw Error(ErrorCode::InvalidArgument, "matrix entries must be [re, im] pairs");
                m(r, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
            }
        }
        linalg::require_finite(m);
        return m;
    });
}

Json to_json(const ChannelSet& ch)
{
    Json up = Json::array();
    Json down = Json::array();
    for (const auto& h : ch.uplink)
        up.push_back(matrix(h));
    for (const auto& g : ch.downlink)
        down.push_back(matrix(g));
    return {{"m", ch.m},
            {"n", ch.n},
            {"k", ch.k},
            {"extension", ch.extension},
            {"active_relay", ch.active_relay},
            {"uplink", up},
            {"downlink", down}};
}

ChannelSet channel_set_from(const Json& j)
{
    return guarded("channel set", [&] {
        ChannelSet ch;
        ch.m = j.at("m").get<int>();
        ch.n = j.at("n").get<int>();
        ch.k = j.at("k").get<int>();
        ch.extension = j.value("extension", 1);
        ch.active_relay = j.value("active_relay", ch.n * ch.extension);
        for (const auto& h : j.at("uplink"))
            ch.uplink.push_back(matrix_from(h));
        for (const auto& g : j.at("downlink"))
            ch.downlink.push_back(matrix_from(g));
        if (ch.k < 1 || static_cast<int>(ch.uplink.size()) != ch.k || static_cast<int>(ch.downlink.size()) != ch.k)
            throw Error(ErrorCode::ShapeMismatch, "channel set must hold K uplink and K downlink matrices");
        for (int u = 0; u < ch.k; ++u) {
            const auto& h = ch.uplink[static_cast<std::size_t>(u)];
            const auto& g = ch.downlink[static_cast<std::size_t>(u)];
            if (h.rows() != ch.active_relay || h.cols() != ch.user_dims() || g.rows() != ch.user_dims()
                || g.cols() != ch.active_relay)
                throw Error(ErrorCode::ShapeMismatch, "channel matrix of user " + std::to_string(u + 1)
                                                          + " does not match m, n, extension");
        }
        return ch;
    });
}

Json to_json(const Unit& u)
{
    Json streams = Json::array();
    for (const auto& s : u.streams)
        streams.push_back({{"pair", {s.from + 1, s.to + 1}}, {"vector", vector(s.vector)}, {"equivalent", vector(s.equivalent)}});
    return {{"order", u.is_random() ? Json("RANDOM") : Json(u.order)}, {"group", user_list(u.group)}, {"streams", streams}};
}

Json to_json(const AlignmentPlan& p)
{
    Json alloc = Json::array();
    for (const auto& a : p.allocations)
        alloc.push_back({{"group", user_list(a.group)},
                         {"order", a.order == kRandomOrder ? Json("RANDOM") : Json(a.order)},
                         {"count", a.count}});
    return {{"m", p.m},
            {"n", p.n},
            {"k", p.k},
            {"improved", p.improved},
            {"extension", p.extension},
            {"active_relay", p.active_relay},
            {"active_relay_per_use", rational(p.active_relay_per_use())},
            {"dims_used", p.dims_used},
            {"predicted_d_user", rational(p.predicted_d_user)},
            {"allocations", alloc}};
}

Json to_json(const VerificationReport& r)
{
    Json streams = Json::array();
    for (const auto& s : r.streams)
        streams.push_back({{"unit", s.unit},
                           {"pair", {s.receiver + 1, s.source + 1}},
                           {"desired", s.desired},
                           {"partner", s.partner},
                           {"leakage", s.leakage},
                           {"counted", s.counted}});
    return {{"pass", r.pass},
            {"d_sum", r.counted_streams},
            {"extension", r.extension},
            {"d_sum_per_use", rational(r.counted_d_sum)},
            {"streams", streams}};
}

Json to_json(const LemmaTrialResult& r)
{
    Json hist = Json::object();
    for (const auto& [value, count] : r.observed)
        hist[std::to_string(value)] = count;
    Json j{{"lemma", to_string(r.lemma)},
           {"params",
            {{"K", optional_int(r.params.k)},
             {"t", optional_int(r.params.t)},
             {"M", optional_int(r.params.m)},
             {"N", optional_int(r.params.n)},
             {"sigma", optional_int(r.params.sigma)}}},
           {"trials", r.trials},
           {"failures", r.failures},
           {"expected_value", r.expected_value},
           {"observed", hist}};
    if (r.failures > 0) {
        j["failing_seeds"] = r.failing_seeds;
        Json mats = Json::array();
        for (const auto& m : r.first_failure)
            mats.push_back(matrix(m));
        j["first_failure"] = mats;
    }
    return j;
}

Json to_json(const Scenario& s, bool with_channels)
{
    Json up = Json::array();
    Json down = Json::array();
    for (const auto& u : s.uplink)
        up.push_back(to_json(u));
    for (const auto& u : s.downlink.units)
        down.push_back(to_json(u));
    const int k = s.options.k;
    Json j{{"config",
            {{"m", s.options.m},
             {"n", s.options.n},
             {"k", k},
             {"seed", s.options.seed},
             {"improved", s.options.improved},
             {"identical_blocks", s.options.extension_mode == ExtensionMode::Identical}}},
           {"plan", to_json(s.plan)},
           {"uplink_units", up},
           {"downlink_units", down},
           {"alpha", s.relay.alpha},
           {"report", to_json(s.report)},
           {"d_user_per_use", rational(s.report.counted_d_sum / Rational(k))}};
    if (with_channels)
        j["channels"] = to_json(s.channels);
    return j;
}

LemmaBattery lemma_battery_from(const Json& j, LemmaBattery base)
{
    return guarded("lemma config", [&] {
        if (!j.is_object())
            throw Error(ErrorCode::InvalidLemmaParams, "lemma config must be a JSON object");
        if (j.contains("intersection")) {
            base.intersection.clear();
            for (const auto& e : j.at("intersection"))
                base.intersection.emplace_back(e.at("m").get<int>(), e.at("n").get<int>());
        }
        if (j.contains("stacked_rank")) {
            base.stacked_rank.clear();
            for (const auto& e : j.at("stacked_rank"))
                base.stacked_rank.push_back({e.at("k").get<int>(), e.at("m").get<int>(), e.at("n").get<int>()});
        }
        if (j.contains("direct_sum")) {
            base.direct_sum.clear();
            for (const auto& e : j.at("direct_sum"))
                base.direct_sum.push_back({e.at("k").get<int>(), e.at("t").get<int>(), e.at("m").get<int>(),
                                           e.at("n").get<int>(), e.value("sigma", 1)});
        }
        if (j.contains("scaling")) {
            const Json& s = j.at("scaling");
            base.scaling_users = s.value("k", base.scaling_users);
            base.scaling_m_max = s.value("m_max", base.scaling_m_max);
            base.scaling_n_max = s.value("n_max", base.scaling_n_max);
            base.scaling_sigmas = s.value("sigmas", base.scaling_sigmas);
        }
        return base;
    });
}

} // namespace mwrelay::io
