// SPDX-License-Identifier: Apache-2.0
//
// mrc-bounds  C++ library for capacity bounds and relay placement in Gaussian multicast relay channels
// Copyright (C) 2026 The mrc-bounds authors
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

#include <sstream>
#include <string>

#include <json.hpp>

#include "mrc/scenario.hpp"
#include "mrc/sweep_csv.hpp"

using namespace mrc;
using nlohmann::json;

namespace {

json base_config() {
    return json::parse(R"({
        "nodes": [
            {"id": "s", "role": "source", "pos": [0.0]},
            {"id": "r", "role": "relay", "pos": [0.5]},
            {"id": "d1", "role": "destination", "pos": [1.0]}
        ],
        "alpha": 2.0,
        "xi_default": 1.0,
        "p_s": 1.0,
        "p_r": 1.0,
        "mode": "low_snr",
        "bound": "df",
        "rho": 0.0,
        "box": {"lower": [0.05], "upper": [0.95]},
        "resolution": [101],
        "tol": 1e-6,
        "seed": 1
    })");
}

std::string field_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const config_error& e) {
        return e.field();
    }
    return "";
}

}  // namespace

TEST_CASE("config document round trip") {
    const ScenarioConfig cfg = parse_config(base_config());
    CHECK(cfg.nodes.size() == 3);
    CHECK(cfg.alpha == 2.0);
    CHECK(cfg.mode == RateMode::low_snr);
    CHECK(cfg.bound == BoundKind::df);
    CHECK(*cfg.rho == 0.0);
    CHECK(cfg.box->lower[0] == 0.05);
    CHECK(cfg.resolution == std::vector<int>{101});

    const NodeLayout layout = cfg.layout();
    CHECK(layout.relay()[0] == 0.5);
    CHECK(layout.n_dest() == 1);

    const Terminals t = cfg.terminals();
    CHECK(t.source[0] == 0.0);
    CHECK(t.destinations[0][0] == 1.0);
}

TEST_CASE("rho accepts the optimize keyword") {
    json j = base_config();
    j["rho"] = "optimize";
    const ScenarioConfig cfg = parse_config(j);
    CHECK(!cfg.rho.has_value());

    j["rho"] = "meow";
    CHECK_THROWS_AS(parse_config(j), config_error);
}

TEST_CASE("xi overrides resolve node ids") {
    json j = base_config();
    j["xi_overrides"] = json::array({json{{"from", "s"}, {"to", "d1"}, {"value", 2.0}}});
    const ScenarioConfig cfg = parse_config(j);
    const ChannelParams p = cfg.params();
    CHECK(p.xi(NodeRef::src(), NodeRef::dest(0)) == 2.0);
    CHECK(p.xi(NodeRef::src(), NodeRef::rel()) == 1.0);

    j["xi_overrides"][0]["from"] = "nope";
    CHECK(field_of([&] { parse_config(j); }) == "xi_overrides");
}

TEST_CASE("validation names the failing field") {
    auto expect_field = [](const char* key, const json& value, const std::string& want) {
        json j = base_config();
        j[key] = value;
        CHECK(field_of([&] { parse_config(j); }) == want);
    };

    expect_field("rho", 1.5, "rho");
    expect_field("rho", -0.2, "rho");
    expect_field("alpha", 0.5, "alpha");
    expect_field("p_s", -1.0, "p_s");
    expect_field("p_r", -0.25, "p_r");
    expect_field("xi_default", 0.0, "xi_default");
    expect_field("bound", "nope", "bound");
    expect_field("mode", "fast", "mode");
    expect_field("tol", 0.0, "tol");
    expect_field("resolution", json::array({1}), "resolution");

    // coincident nodes
    json j = base_config();
    j["nodes"][1]["pos"] = json::array({1.0});
    CHECK(field_of([&] { parse_config(j); }) == "nodes");

    // duplicate ids
    j = base_config();
    j["nodes"][1]["id"] = "s";
    CHECK(field_of([&] { parse_config(j); }) == "nodes");

    // mixed dimensions
    j = base_config();
    j["nodes"][2]["pos"] = json::array({1.0, 1.0});
    CHECK(field_of([&] { parse_config(j); }) == "nodes");

    // missing source
    j = base_config();
    j["nodes"][0]["role"] = "destination";
    CHECK(field_of([&] { parse_config(j); }) == "nodes");

    // box dimension mismatch
    j = base_config();
    j["box"] = json{{"lower", {0.0, 0.0}}, {"upper", {1.0, 1.0}}};
    CHECK(field_of([&] { parse_config(j); }) == "box");
}

TEST_CASE("a relay node is required for rate evaluation only") {
    json j = base_config();
    j["nodes"].erase(1);
    const ScenarioConfig cfg = parse_config(j);
    CHECK(!cfg.relay().has_value());
    CHECK_THROWS_AS(cfg.layout(), config_error);
    CHECK_NOTHROW(cfg.terminals());
}

TEST_CASE("presets") {
    const auto names = preset_descriptions();
    REQUIRE(names.size() == 3);
    CHECK(names[0].first == "one_d_relay");
    CHECK(names[1].first == "square_2d");
    CHECK(names[2].first == "poly_3d");

    const ScenarioConfig one = preset("one_d_relay");
    CHECK(one.layout().relay()[0] == 0.5);
    CHECK(one.terminals().n_dest() == 1);
    CHECK(one.mode == RateMode::low_snr);
    CHECK(one.p_s == 1.0);
    CHECK(one.alpha == 2.0);

    const ScenarioConfig sq = preset("square_2d");
    CHECK(sq.terminals().n_dest() == 5);
    CHECK(sq.terminals().source[0] == 0.0);
    CHECK(sq.terminals().dim() == 2);
    CHECK(sq.resolution == std::vector<int>{51, 51});
    // documented square geometry
    CHECK(sq.terminals().destinations[0] == Position{10.0, 0.0});
    CHECK(sq.terminals().destinations[4] == Position{-10.0, -10.0});

    const ScenarioConfig poly = preset("poly_3d");
    CHECK(poly.terminals().n_dest() == 5);
    CHECK(poly.terminals().dim() == 3);

    CHECK_THROWS_AS(preset("missing"), config_error);
}

TEST_CASE("poly_3d interior destinations receive at least the worst vertex rate") {
    const ScenarioConfig cfg = preset("poly_3d");
    const Terminals t = cfg.terminals();
    const ChannelParams p = cfg.params();
    const OptResult opt =
        optimize_relay(RelayBound::df_noncoherent, t, p, *cfg.box, RateMode::low_snr);
    const Position r_star{std::span<const double>(opt.argmax)};
    const double base =
        rate_df(Correlation(0.0), snr_vector(t.with_relay(r_star), p), RateMode::low_snr).value;

    std::mt19937_64 g = trial_rng(51, 0);
    for (int k = 0; k < 50; ++k) {
        double weights[5], total = 0.0;
        for (double& w : weights) {
            w = uniform(g, 0.0, 1.0);
            total += w;
        }
        std::vector<double> point(3, 0.0);
        for (int v = 0; v < 5; ++v)
            for (int a = 0; a < 3; ++a) point[a] += (weights[v] / total) * t.destinations[v][a];

        std::vector<Position> augmented = t.destinations;
        augmented.emplace_back(point);
        const Terminals aug(t.source, std::move(augmented));
        const double with_interior =
            rate_df(Correlation(0.0), snr_vector(aug.with_relay(r_star), p), RateMode::low_snr).value;
        CHECK(std::abs(with_interior - base) <= 1e-12);
    }
}

TEST_CASE("sweep csv format") {
    const SweepGrid g = tabulate_grid(SearchBox({0.0}, {1.0}), {3}, [](std::span<const double> x) {
        if (x[0] == 0.5) throw singularity_error(NodeRef::src(), NodeRef::rel());
        return x[0] * 2.0;
    });
    std::ostringstream out;
    write_sweep_csv(out, g);
    CHECK(out.str() ==
          "x,value,status\n"
          "0,0,ok\n"
          "0.5,nan,invalid\n"
          "1,2,ok\n");
}

TEST_CASE("sweep csv uses 12 significant digits and is reproducible") {
    const Terminals t(Position{0.0}, {Position{1.0}});
    const ChannelParams p(2.0, 1.0, 1.0);
    const SweepGrid g = sweep_grid(RelayBound::df_noncoherent, t, p, SearchBox({0.05}, {0.95}), {17},
                                   RateMode::low_snr);
    std::ostringstream a, b;
    write_sweep_csv(a, g);
    const SweepGrid g2 = sweep_grid(RelayBound::df_noncoherent, t, p, SearchBox({0.05}, {0.95}), {17},
                                    RateMode::low_snr);
    write_sweep_csv(b, g2);
    CHECK(a.str() == b.str());
    CHECK(format_sig12(0.123456789012345) == "0.123456789012");
    const double v1 =
        rate_df(Correlation(0.0), snr_vector(t.with_relay(Position{g.cell_position(1)[0]}), p),
                RateMode::low_snr)
            .value;
    CHECK(a.str().find(format_sig12(v1) + ",ok") != std::string::npos);
    CHECK(a.str().find('\r') == std::string::npos);  // LF endings only

    // header for a 2-D grid
    const SweepGrid g3 = tabulate_grid(SearchBox({0.0, 0.0}, {1.0, 1.0}), {2, 2},
                                       [](std::span<const double>) { return 1.0; });
    std::ostringstream c;
    write_sweep_csv(c, g3);
    CHECK(c.str().rfind("x,y,value,status\n", 0) == 0);
}
