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

#include "mwrelay/error.hpp"
#include "mwrelay/serialize.hpp"

#include <doctest.h>

using namespace mwrelay;
using io::Json;

TEST_CASE("matrix and channel set round trip exactly")
{
    SystemConfig cfg;
    cfg.m = 2;
    cfg.n = 3;
    cfg.k = 4;
    cfg.extension = 2;
    cfg.seed = 19;
    const auto ch = sample_channel_set(cfg);
    const Json j = io::to_json(ch);
    // Through text as well, to exercise number formatting.
    const auto back = io::channel_set_from(Json::parse(j.dump()));
    CHECK(back.m == 2);
    CHECK(back.n == 3);
    CHECK(back.k == 4);
    CHECK(back.extension == 2);
    CHECK(back.active_relay == 6);
    REQUIRE(back.uplink.size() == 4);
    for (std::size_t u = 0; u < 4; ++u) {
        CHECK(back.uplink[u] == ch.uplink[u]);
        CHECK(back.downlink[u] == ch.downlink[u]);
    }

    const ComplexMatrix m = ch.uplink[0];
    CHECK(io::matrix_from(io::matrix(m)) == m);
    CHECK(io::matrix(m).size() == static_cast<std::size_t>(m.rows()));
}

TEST_CASE("malformed channel sets are rejected")
{
    SystemConfig cfg;
    Json j = io::to_json(sample_channel_set(cfg));
    SUBCASE("missing key")
    {
        j.erase("uplink");
        CHECK_THROWS_AS(io::channel_set_from(j), Error);
    }
    SUBCASE("wrong user count")
    {
        j["k"] = 4;
        try {
            (void)io::channel_set_from(j);
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ShapeMismatch);
        }
    }
    SUBCASE("ragged matrix")
    {
        j["uplink"][0][0].push_back(Json::array({0.0, 0.0}));
        CHECK_THROWS_AS(io::channel_set_from(j), Error);
    }
    SUBCASE("entry is not a pair")
    {
        j["uplink"][0][0][0] = "x";
        CHECK_THROWS_AS(io::channel_set_from(j), Error);
    }
}

TEST_CASE("rationals")
{
    const Json r = io::rational(Rational(-6, 4));
    CHECK(r["num"] == -3);
    CHECK(r["den"] == 2);
}

TEST_CASE("scenario document")
{
    ScenarioOptions o;
    o.m = 1;
    o.n = 2;
    o.k = 4;
    o.seed = 1;
    o.improved = true;
    const auto s = build_scenario(o);
    const Json j = io::to_json(s);
    CHECK(j["config"]["k"] == 4);
    CHECK(j["plan"]["extension"] == 7);
    CHECK(j["plan"]["active_relay"] == 12);
    CHECK(j["plan"]["predicted_d_user"] == Json({{"num", 6}, {"den", 7}}));
    CHECK(j["d_user_per_use"] == Json({{"num", 6}, {"den", 7}}));
    CHECK(j["report"]["pass"] == true);
    CHECK(j["report"]["d_sum"] == 24);
    CHECK(j["report"]["d_sum_per_use"] == Json({{"num", 24}, {"den", 7}}));
    CHECK(j["uplink_units"].size() == s.uplink.size());
    CHECK(j["downlink_units"].size() == s.downlink.units.size());
    CHECK_FALSE(j.contains("channels"));
    for (const auto& st : j["report"]["streams"]) {
        const int a = st["pair"][0];
        const int b = st["pair"][1];
        CHECK(a >= 1);
        CHECK(b <= 4);
        CHECK(a != b);
    }

    const Json full = io::to_json(s, true);
    const auto ch = io::channel_set_from(full["channels"]);
    CHECK(ch.active_relay == 12);
    CHECK(ch.uplink[3] == s.channels.uplink[3]);
}

TEST_CASE("lemma results and configs")
{
    const auto r = check_intersection(3, 5, 4, 1);
    const Json j = io::to_json(r);
    CHECK(j["lemma"] == "INTERSECTION");
    CHECK(j["params"]["M"] == 3);
    CHECK(j["params"]["K"].is_null());
    CHECK(j["observed"]["1"] == 4);
    CHECK_FALSE(j.contains("failing_seeds"));

    const Json cfg = Json::parse(R"({"intersection": [{"m": 2, "n": 3}],
                                     "direct_sum": [{"k": 3, "t": 2, "m": 2, "n": 3}],
                                     "scaling": {"k": [3], "sigmas": [2]}})");
    const auto b = io::lemma_battery_from(cfg, default_lemma_battery());
    REQUIRE(b.intersection.size() == 1);
    CHECK(b.intersection[0] == std::pair{2, 3});
    CHECK(b.stacked_rank.size() == 3); // untouched
    REQUIRE(b.direct_sum.size() == 1);
    CHECK(b.direct_sum[0][4] == 1);
    CHECK(b.scaling_users == std::vector<int>{3});
    CHECK(b.scaling_m_max == 8);
    CHECK_THROWS_AS(io::lemma_battery_from(Json::array(), {}), Error);
    CHECK_THROWS_AS(io::lemma_battery_from(Json::parse(R"({"intersection": [{"m": 2}]})"), {}), Error);
}
