// SPDX-License-Identifier: Apache-2.0
//
// rbf-lab: multi-cell MIMO random beamforming laboratory
// Copyright (C) 2026 The rbf-lab Authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rbf/network.hpp"

#include <cmath>

using namespace rbf;

TEST_CASE("decibel conversion")
{
    CHECK(db_to_linear(0.0) == 1.0);
    CHECK(db_to_linear(20.0) == doctest::Approx(100.0).epsilon(1e-14));
    CHECK(db_to_linear(-3.0) == doctest::Approx(0.50119).epsilon(1e-5));
    CHECK(linear_to_db(100.0) == doctest::Approx(20.0));
}

TEST_CASE("derived gains follow the per-beam formulas")
{
    auto cfg = single_cell_config(4, 2, 8, 4, 100.0);
    auto g = derive_gains(cfg);
    CHECK(g.rho == 100.0);
    CHECK(*g.per_beam_snr(0) == 25.0);

    NetworkConfig two = symmetric_config(2, 4, 2, 4, 2, 0.5, 100.0);
    two.cells[0].beams = 4;
    two.validate();
    g = derive_gains(two);
    CHECK(*g.per_beam_inr(1, 0) == doctest::Approx(25.0));
    CHECK(*g.per_beam_inr(0, 1) == doctest::Approx(12.5));
    CHECK_FALSE(g.per_beam_inr(0, 0).has_value());

    const auto again = derive_gains(two);
    CHECK(again.rho == g.rho);
    CHECK(*again.per_beam_inr(1, 0) == *g.per_beam_inr(1, 0));
}

TEST_CASE("silent cells have no per-beam snr and inject no interference")
{
    NetworkConfig cfg = symmetric_config(2, 4, 2, 4, 2, 0.5, 10.0);
    cfg.cells[1].beams = 0;
    cfg.validate();
    const auto g = derive_gains(cfg);
    CHECK_FALSE(g.per_beam_snr(1).has_value());
    CHECK_FALSE(g.per_beam_inr(1, 0).has_value());
    CHECK(g.per_beam_inr(0, 1).has_value());
}

TEST_CASE("observed-cell setup stores linear gains")
{
    const std::vector<double> inr{0.0, db_to_linear(0.0), db_to_linear(-3.0), db_to_linear(3.0)};
    const auto cfg = observed_cell_config(0, db_to_linear(20.0), inr, {3, 3, 2, 4}, 4, 3);
    const auto g = derive_gains(cfg);
    CHECK(*g.per_beam_snr(0) == doctest::Approx(100.0));
    CHECK(*g.per_beam_inr(1, 0) == doctest::Approx(1.0));
    CHECK(*g.per_beam_inr(2, 0) == doctest::Approx(0.501187).epsilon(1e-5));
    CHECK(*g.per_beam_inr(3, 0) == doctest::Approx(1.995262).epsilon(1e-5));
}

TEST_CASE("config validation")
{
    auto ok = symmetric_config(2, 4, 2, 4, 2, 0.5, 10.0);
    CHECK_NOTHROW(ok.validate());

    auto bad = ok;
    bad.cells[0].beams = 5;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = ok;
    bad.cells[0].users = 1;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = ok;
    bad.cross_gain(0, 1) = 1.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = ok;
    bad.cross_gain(1, 1) = 0.9;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = ok;
    bad.total_power = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = ok;
    bad.noise_power = -1.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = ok;
    bad.cells.clear();
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("minimal realization")
{
    const auto cfg = single_cell_config(1, 1, 1, 1, 1.0);
    const auto real = draw_realization(cfg, RngStream(3));
    REQUIRE(real.beams.size() == 1);
    CHECK(real.beams[0].size() == 1);
    CHECK(real.channel(0, 0, 0).rows() == 1);
    CHECK(real.channel(0, 0, 0).cols() == 1);
}

TEST_CASE("realization covers every user and source cell")
{
    NetworkConfig cfg = symmetric_config(3, 4, 2, 5, 3, 0.4, 10.0);
    cfg.cells[2].beams = 0;
    cfg.validate();
    const auto real = draw_realization(cfg, RngStream(4));
    for (int c = 0; c < 3; ++c) {
        REQUIRE(real.users[static_cast<std::size_t>(c)].size() == 5);
        for (int k = 0; k < 5; ++k) {
            for (int l = 0; l < 3; ++l) {
                const auto &h = real.channel(l, c, k);
                CHECK(h.rows() == 2);
                CHECK(h.cols() == cfg.beams(l));
            }
        }
    }
    const auto again = draw_realization(cfg, RngStream(4));
    CHECK(again.channel(1, 0, 4) == real.channel(1, 0, 4));
    CHECK(again.beams[1].vectors == real.beams[1].vectors);
}

TEST_CASE("beam and user counts share the underlying fading")
{
    const auto small = single_cell_config(4, 2, 3, 2, 10.0);
    const auto large = single_cell_config(4, 2, 6, 4, 10.0);
    const auto a = draw_realization(small, RngStream(8));
    const auto b = draw_realization(large, RngStream(8));
    for (int k = 0; k < 3; ++k) {
        CHECK(a.channel(0, 0, k) == b.channel(0, 0, k).leftCols(2));
    }
}

TEST_CASE("channel entries have unit power")
{
    const auto cfg = single_cell_config(4, 4, 4, 4, 1.0);
    const auto users = draw_users(cfg, 0, 62500, RngStream(12));
    double power = 0.0;
    for (const auto &u : users) {
        power += u.from_cell[0].cwiseAbs2().sum();
    }
    CHECK(power / 1e6 == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("config file parsing")
{
    const auto doc = nlohmann::json::parse(R"({
        "nt": 4, "nr": 2, "power_db": 10, "noise_db": 0,
        "cells": [{"users": 20, "beams": 2}, {"users": 10, "beams": 3}],
        "cross_gain": [1, 0.5, 0.25, 1]
    })");
    const auto cfg = parse_config(doc);
    CHECK(cfg.num_cells() == 2);
    CHECK(cfg.users(1) == 10);
    CHECK(cfg.beams(1) == 3);
    CHECK(cfg.total_power == doctest::Approx(10.0));
    CHECK(cfg.cross_gain(0, 1) == 0.5);
    CHECK(cfg.cross_gain(1, 0) == 0.25);

    const auto echo = parse_config(config_to_json(cfg));
    CHECK(echo.cross_gain == cfg.cross_gain);
    CHECK(echo.total_power == doctest::Approx(cfg.total_power));

    auto missing = doc;
    missing.erase("cross_gain");
    CHECK_THROWS_AS(parse_config(missing), ConfigError);
    auto wrong = doc;
    wrong["cross_gain"] = {1, 0.5, 1};
    CHECK_THROWS_AS(parse_config(wrong), ConfigError);
    auto no_nr = doc;
    no_nr.erase("nr");
    CHECK_THROWS_AS(parse_config(no_nr), ConfigError);

    const auto single = nlohmann::json::parse(R"({"nt": 2, "nr": 1, "power_db": 0, "noise_db": 0,
                                                  "cells": [{"users": 2, "beams": 2}]})");
    CHECK(parse_config(single).cross_gain(0, 0) == 1.0);
}
