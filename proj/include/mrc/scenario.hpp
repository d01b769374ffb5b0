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
//
// Scenario configuration: built-in presets and the JSON config document
// consumed by the command-line tool. Validation happens before dispatch and
// every rejection names the failing field.
//
// Presets (P_s = P_r = 1, alpha = 2, xi = 1, low-SNR mode):
//   one_d_relay  source at 0, one destination at 1; default relay 0.5,
//                sweep box [0.05, 0.95], resolution 101.
//   square_2d    source at the origin, five destinations on the boundary of
//                the square [-10,10]^2: (10,0), (0,10), (10,10), (-10,10),
//                (-10,-10); box [-12,12]^2, resolution 51x51.
//   poly_3d      source at the origin, five destinations spanning a pyramid:
//                (10,0,0), (-10,0,0), (0,10,0), (0,-10,0), (0,0,10);
//                box [-12,12]^3, resolution 17^3.

#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mrc/geometry.hpp"
#include "mrc/optimize.hpp"
#include "mrc/rates.hpp"

namespace mrc {

// Rejected configuration input; the message names the failing field.
class config_error : public std::invalid_argument {
public:
    config_error(const std::string& field, const std::string& reason)
        : std::invalid_argument("config field '" + field + "': " + reason), field_(field) {}

    const std::string& field() const { return field_; }

private:
    std::string field_;
};

enum class BoundKind { cs, dt, df, qf, rdf, two_hop };

inline std::string to_string(BoundKind b) {
    switch (b) {
        case BoundKind::cs: return "cs";
        case BoundKind::dt: return "dt";
        case BoundKind::df: return "df";
        case BoundKind::qf: return "qf";
        case BoundKind::rdf: return "rdf";
        default: return "2h";
    }
}

inline BoundKind parse_bound(const std::string& s) {
    if (s == "cs") return BoundKind::cs;
    if (s == "dt") return BoundKind::dt;
    if (s == "df") return BoundKind::df;
    if (s == "qf") return BoundKind::qf;
    if (s == "rdf") return BoundKind::rdf;
    if (s == "2h") return BoundKind::two_hop;
    throw config_error("bound", "expected one of cs, dt, df, qf, rdf, 2h");
}

inline RateMode parse_mode(const std::string& s) {
    if (s == "exact") return RateMode::exact;
    if (s == "low_snr") return RateMode::low_snr;
    throw config_error("mode", "expected exact or low_snr");
}

struct NodeSpec {
    std::string id;
    NodeRole role = NodeRole::destination;
    std::vector<double> pos;
};

struct XiOverride {
    std::string from;
    std::string to;
    double value = 1.0;
};

struct ScenarioConfig {
    std::string name = "custom";
    std::vector<NodeSpec> nodes;
    double alpha = 2.0;
    double xi_default = 1.0;
    std::vector<XiOverride> xi_overrides;
    double p_s = 1.0;
    double p_r = 1.0;
    RateMode mode = RateMode::low_snr;
    BoundKind bound = BoundKind::df;
    std::optional<double> rho = 0.0;  // empty means "optimize"
    std::optional<SearchBox> box;
    std::vector<int> resolution;
    double tol = 1e-6;
    std::uint64_t seed = 1;

    const NodeSpec* find_role(NodeRole role) const {
        for (const NodeSpec& n : nodes)
            if (n.role == role) return &n;
        return nullptr;
    }

    NodeRef node_ref(const std::string& id, const char* field) const {
        int dest = 0;
        for (const NodeSpec& n : nodes) {
            if (n.id == id) {
                switch (n.role) {
                    case NodeRole::source: return NodeRef::src();
                    case NodeRole::relay: return NodeRef::rel();
                    default: return NodeRef::dest(dest);
                }
            }
            if (n.role == NodeRole::destination) ++dest;
        }
        throw config_error(field, "unknown node id '" + id + "'");
    }

    void validate() const {
        if (nodes.empty()) throw config_error("nodes", "at least a source and one destination required");
        int sources = 0, relays = 0, dests = 0;
        std::size_t dim = 0;
        std::map<std::string, int> ids;
        for (const NodeSpec& n : nodes) {
            if (n.id.empty()) throw config_error("nodes", "every node needs a non-empty id");
            if (++ids[n.id] > 1) throw config_error("nodes", "duplicate node id '" + n.id + "'");
            if (n.pos.empty() || n.pos.size() > 3)
                throw config_error("nodes", "node '" + n.id + "' position must have 1 to 3 coordinates");
            if (dim == 0) dim = n.pos.size();
            if (n.pos.size() != dim)
                throw config_error("nodes", "node '" + n.id + "' dimension differs from the others");
            switch (n.role) {
                case NodeRole::source: ++sources; break;
                case NodeRole::relay: ++relays; break;
                default: ++dests; break;
            }
        }
        if (sources != 1) throw config_error("nodes", "exactly one source required");
        if (relays > 1) throw config_error("nodes", "at most one relay allowed");
        if (dests < 1) throw config_error("nodes", "at least one destination required");
        for (std::size_t i = 0; i < nodes.size(); ++i)
            for (std::size_t j = i + 1; j < nodes.size(); ++j)
                if (nodes[i].pos == nodes[j].pos)
                    throw config_error("nodes", "nodes '" + nodes[i].id + "' and '" + nodes[j].id +
                                                    "' coincide");
        if (!(alpha >= 1.0)) throw config_error("alpha", "must be >= 1");
        if (!(xi_default > 0.0)) throw config_error("xi_default", "must be > 0");
        for (const XiOverride& o : xi_overrides) {
            node_ref(o.from, "xi_overrides");
            node_ref(o.to, "xi_overrides");
            if (!(o.value > 0.0)) throw config_error("xi_overrides", "value must be > 0");
        }
        if (!(p_s >= 0.0)) throw config_error("p_s", "must be >= 0");
        if (!(p_r >= 0.0)) throw config_error("p_r", "must be >= 0");
        if (rho && !(*rho >= 0.0 && *rho <= 1.0)) throw config_error("rho", "must lie in [0, 1]");
        if (box) {
            if (box->dim() != static_cast<int>(dim))
                throw config_error("box", "dimension differs from the node positions");
            if (!resolution.empty() && resolution.size() != dim)
                throw config_error("resolution", "length differs from the box dimension");
        }
        for (int r : resolution)
            if (r < 2) throw config_error("resolution", "must be >= 2 per axis");
        if (!(tol > 0.0)) throw config_error("tol", "must be > 0");
    }

    Terminals terminals() const {
        const NodeSpec* src = find_role(NodeRole::source);
        if (!src) throw config_error("nodes", "source missing");
        std::vector<Position> dests;
        for (const NodeSpec& n : nodes)
            if (n.role == NodeRole::destination) dests.emplace_back(n.pos);
        return Terminals(Position(src->pos), std::move(dests));
    }

    std::optional<Position> relay() const {
        const NodeSpec* r = find_role(NodeRole::relay);
        if (!r) return std::nullopt;
        return Position(r->pos);
    }

    NodeLayout layout() const {
        const std::optional<Position> r = relay();
        if (!r) throw config_error("nodes", "a relay node is required for rate evaluation");
        const Terminals t = terminals();
        return t.with_relay(*r);
    }

    ChannelParams params() const {
        ChannelParams p(alpha, p_s, p_r, xi_default);
        for (const XiOverride& o : xi_overrides)
            p.set_xi(node_ref(o.from, "xi_overrides"), node_ref(o.to, "xi_overrides"), o.value);
        return p;
    }
};

// ---------------------------------------------------------------------------
// JSON parsing
// ---------------------------------------------------------------------------

namespace detail {

inline double json_number(const nlohmann::json& j, const std::string& field) {
    if (!j.is_number()) throw config_error(field, "expected a number");
    return j.get<double>();
}

}  // namespace detail

inline ScenarioConfig parse_config(const nlohmann::json& j) {
    if (!j.is_object()) throw config_error("(root)", "expected a JSON object");
    ScenarioConfig cfg;

    if (!j.contains("nodes") || !j["nodes"].is_array())
        throw config_error("nodes", "required array missing");
    for (const auto& jn : j["nodes"]) {
        NodeSpec n;
        if (!jn.contains("id") || !jn["id"].is_string()) throw config_error("nodes", "node id missing");
        n.id = jn["id"].get<std::string>();
        const std::string role =
            jn.contains("role") && jn["role"].is_string() ? jn["role"].get<std::string>() : "";
        if (role == "source")
            n.role = NodeRole::source;
        else if (role == "relay")
            n.role = NodeRole::relay;
        else if (role == "destination")
            n.role = NodeRole::destination;
        else
            throw config_error("nodes", "node '" + n.id + "' role must be source, relay, or destination");
        if (!jn.contains("pos") || !jn["pos"].is_array())
            throw config_error("nodes", "node '" + n.id + "' pos must be an array");
        for (const auto& c : jn["pos"]) n.pos.push_back(detail::json_number(c, "nodes"));
        cfg.nodes.push_back(std::move(n));
    }

    if (j.contains("alpha")) cfg.alpha = detail::json_number(j["alpha"], "alpha");
    if (j.contains("xi_default")) cfg.xi_default = detail::json_number(j["xi_default"], "xi_default");
    if (j.contains("xi_overrides")) {
        if (!j["xi_overrides"].is_array()) throw config_error("xi_overrides", "expected an array");
        for (const auto& jo : j["xi_overrides"]) {
            XiOverride o;
            if (!jo.contains("from") || !jo.contains("to") || !jo.contains("value") ||
                !jo["from"].is_string() || !jo["to"].is_string())
                throw config_error("xi_overrides", "entries need from, to (strings), and value");
            o.from = jo["from"].get<std::string>();
            o.to = jo["to"].get<std::string>();
            o.value = detail::json_number(jo["value"], "xi_overrides");
            cfg.xi_overrides.push_back(std::move(o));
        }
    }
    if (j.contains("p_s")) cfg.p_s = detail::json_number(j["p_s"], "p_s");
    if (j.contains("p_r")) cfg.p_r = detail::json_number(j["p_r"], "p_r");
    if (j.contains("mode")) {
        if (!j["mode"].is_string()) throw config_error("mode", "expected a string");
        cfg.mode = parse_mode(j["mode"].get<std::string>());
    }
    if (j.contains("bound")) {
        if (!j["bound"].is_string()) throw config_error("bound", "expected a string");
        cfg.bound = parse_bound(j["bound"].get<std::string>());
    }
    if (j.contains("rho")) {
        if (j["rho"].is_string()) {
            if (j["rho"].get<std::string>() != "optimize")
                throw config_error("rho", "expected a number or \"optimize\"");
            cfg.rho = std::nullopt;
        } else {
            cfg.rho = detail::json_number(j["rho"], "rho");
        }
    }
    if (j.contains("box")) {
        const auto& jb = j["box"];
        if (!jb.is_object() || !jb.contains("lower") || !jb.contains("upper"))
            throw config_error("box", "expected an object with lower and upper arrays");
        std::vector<double> lo, hi;
        for (const auto& c : jb["lower"]) lo.push_back(detail::json_number(c, "box"));
        for (const auto& c : jb["upper"]) hi.push_back(detail::json_number(c, "box"));
        try {
            cfg.box.emplace(std::move(lo), std::move(hi));
        } catch (const std::invalid_argument& e) {
            throw config_error("box", e.what());
        }
    }
    if (j.contains("resolution")) {
        if (!j["resolution"].is_array()) throw config_error("resolution", "expected an array");
        for (const auto& c : j["resolution"]) {
            if (!c.is_number_integer()) throw config_error("resolution", "expected integers");
            cfg.resolution.push_back(c.get<int>());
        }
    }
    if (j.contains("tol")) cfg.tol = detail::json_number(j["tol"], "tol");
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
            throw config_error("seed", "expected an integer");
        cfg.seed = j["seed"].get<std::uint64_t>();
    }

    cfg.validate();
    return cfg;
}

inline ScenarioConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw config_error("(json)", e.what());
    }
    ScenarioConfig cfg = parse_config(j);
    cfg.name = path;
    return cfg;
}

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

inline std::vector<std::pair<std::string, std::string>> preset_descriptions() {
    return {
        {"one_d_relay", "1-D relay channel: source at 0, destination at 1, default relay at 0.5"},
        {"square_2d",
         "2-D multicast: source at the origin, 5 destinations on the square [-10,10]^2 at "
         "(10,0), (0,10), (10,10), (-10,10), (-10,-10)"},
        {"poly_3d",
         "3-D multicast: source at the origin, 5 destinations on a pyramid at (10,0,0), "
         "(-10,0,0), (0,10,0), (0,-10,0), (0,0,10)"},
    };
}

inline ScenarioConfig preset(const std::string& name) {
    ScenarioConfig cfg;
    cfg.name = name;
    cfg.alpha = 2.0;
    cfg.xi_default = 1.0;
    cfg.p_s = 1.0;
    cfg.p_r = 1.0;
    cfg.mode = RateMode::low_snr;
    cfg.bound = BoundKind::df;
    cfg.rho = 0.0;

    if (name == "one_d_relay") {
        cfg.nodes = {{"s", NodeRole::source, {0.0}},
                     {"r", NodeRole::relay, {0.5}},
                     {"d1", NodeRole::destination, {1.0}}};
        cfg.box.emplace(std::vector<double>{0.05}, std::vector<double>{0.95});
        cfg.resolution = {101};
    } else if (name == "square_2d") {
        cfg.nodes = {{"s", NodeRole::source, {0.0, 0.0}},
                     {"r", NodeRole::relay, {1.0, 0.0}},
                     {"d1", NodeRole::destination, {10.0, 0.0}},
                     {"d2", NodeRole::destination, {0.0, 10.0}},
                     {"d3", NodeRole::destination, {10.0, 10.0}},
                     {"d4", NodeRole::destination, {-10.0, 10.0}},
                     {"d5", NodeRole::destination, {-10.0, -10.0}}};
        cfg.box.emplace(std::vector<double>{-12.0, -12.0}, std::vector<double>{12.0, 12.0});
        cfg.resolution = {51, 51};
    } else if (name == "poly_3d") {
        cfg.nodes = {{"s", NodeRole::source, {0.0, 0.0, 0.0}},
                     {"r", NodeRole::relay, {0.0, 0.0, 1.0}},
                     {"d1", NodeRole::destination, {10.0, 0.0, 0.0}},
                     {"d2", NodeRole::destination, {-10.0, 0.0, 0.0}},
                     {"d3", NodeRole::destination, {0.0, 10.0, 0.0}},
                     {"d4", NodeRole::destination, {0.0, -10.0, 0.0}},
                     {"d5", NodeRole::destination, {0.0, 0.0, 10.0}}};
        cfg.box.emplace(std::vector<double>{-12.0, -12.0, -12.0}, std::vector<double>{12.0, 12.0, 12.0});
        cfg.resolution = {17, 17, 17};
    } else {
        throw config_error("preset", "unknown preset '" + name + "' (see `preset list`)");
    }
    cfg.validate();
    return cfg;
}

}  // namespace mrc
