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
// Node geometry and the path-loss channel model: positions, per-pair fading
// gains, transmit powers, and the mapping to receiver SNRs. Gains follow
// a = sqrt(xi) / D^(alpha/2), so SNR(u,v) = xi * P_u / D^alpha.

#pragma once

#include <array>
#include <cmath>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mrc {

// Point in 1-, 2-, or 3-dimensional Euclidean space. Coordinates are in
// abstract (normalized) distance units; all entries must be finite.
class Position {
public:
    Position(std::initializer_list<double> coords) : Position(std::span(coords.begin(), coords.size())) {}

    explicit Position(std::span<const double> coords) {
        if (coords.size() < 1 || coords.size() > 3)
            throw std::invalid_argument("Position: dimension must be 1, 2, or 3");
        dim_ = static_cast<int>(coords.size());
        for (int i = 0; i < dim_; ++i) {
            if (!std::isfinite(coords[i]))
                throw std::invalid_argument("Position: coordinates must be finite");
            c_[i] = coords[i];
        }
    }

    explicit Position(const std::vector<double>& coords)
        : Position(std::span<const double>(coords.data(), coords.size())) {}

    int dim() const { return dim_; }
    double operator[](int i) const { return c_[i]; }
    std::span<const double> coords() const { return {c_.data(), static_cast<std::size_t>(dim_)}; }

    bool operator==(const Position& other) const {
        if (dim_ != other.dim_) return false;
        for (int i = 0; i < dim_; ++i)
            if (c_[i] != other.c_[i]) return false;
        return true;
    }

private:
    std::array<double, 3> c_{};
    int dim_ = 0;
};

inline double distance(const Position& a, const Position& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("distance: dimension mismatch");
    double sq = 0.0;
    for (int i = 0; i < a.dim(); ++i) {
        const double d = a[i] - b[i];
        sq += d * d;
    }
    return std::sqrt(sq);
}

enum class NodeRole { source, relay, destination };

// Identifies one node of a layout: the source, the relay, or destination j.
struct NodeRef {
    NodeRole role = NodeRole::source;
    int index = 0;  // destination index (0-based); 0 for source/relay

    static NodeRef src() { return {NodeRole::source, 0}; }
    static NodeRef rel() { return {NodeRole::relay, 0}; }
    static NodeRef dest(int j) { return {NodeRole::destination, j}; }

    auto operator<=>(const NodeRef&) const = default;
};

inline std::string to_string(NodeRef n) {
    switch (n.role) {
        case NodeRole::source: return "source";
        case NodeRole::relay: return "relay";
        default: return "destination " + std::to_string(n.index);
    }
}

// Raised when a node pair sits at zero (or numerically degenerate) distance,
// where the path-loss gain has no finite value.
class singularity_error : public std::domain_error {
public:
    singularity_error(NodeRef from, NodeRef to)
        : std::domain_error("singular channel: zero or degenerate distance between " + to_string(from) +
                            " and " + to_string(to)),
          from_(from),
          to_(to) {}

    NodeRef from() const { return from_; }
    NodeRef to() const { return to_; }

private:
    NodeRef from_;
    NodeRef to_;
};

// Source, relay, and N >= 1 destinations, all in the same dimension.
// Destinations may not coincide with the source or the relay.
class NodeLayout {
public:
    NodeLayout(Position source, Position relay, std::vector<Position> destinations)
        : source_(source), relay_(relay), destinations_(std::move(destinations)) {
        if (destinations_.empty()) throw std::invalid_argument("NodeLayout: at least one destination required");
        if (relay_.dim() != source_.dim())
            throw std::invalid_argument("NodeLayout: relay dimension differs from source");
        for (std::size_t j = 0; j < destinations_.size(); ++j) {
            const Position& d = destinations_[j];
            if (d.dim() != source_.dim())
                throw std::invalid_argument("NodeLayout: destination dimension differs from source");
            if (distance(d, source_) <= 0.0)
                throw singularity_error(NodeRef::src(), NodeRef::dest(static_cast<int>(j)));
            if (distance(d, relay_) <= 0.0)
                throw singularity_error(NodeRef::rel(), NodeRef::dest(static_cast<int>(j)));
        }
    }

    const Position& source() const { return source_; }
    const Position& relay() const { return relay_; }
    const std::vector<Position>& destinations() const { return destinations_; }
    int n_dest() const { return static_cast<int>(destinations_.size()); }
    int dim() const { return source_.dim(); }

    const Position& position(NodeRef n) const {
        switch (n.role) {
            case NodeRole::source: return source_;
            case NodeRole::relay: return relay_;
            default:
                if (n.index < 0 || n.index >= n_dest())
                    throw std::invalid_argument("NodeLayout: destination index out of range");
                return destinations_[n.index];
        }
    }

private:
    Position source_;
    Position relay_;
    std::vector<Position> destinations_;
};

// Path-loss exponent, per-pair fading gains, and transmit powers. Fading
// gains default to a global value (1.0 matches the normalized setting) and
// can be overridden per ordered node pair.
class ChannelParams {
public:
    ChannelParams(double alpha, double p_s, double p_r, double xi_default = 1.0)
        : alpha_(alpha), p_s_(p_s), p_r_(p_r), xi_default_(xi_default) {
        if (!(alpha >= 1.0)) throw std::invalid_argument("ChannelParams: alpha must be >= 1");
        if (!(p_s >= 0.0)) throw std::invalid_argument("ChannelParams: source power must be >= 0");
        if (!(p_r >= 0.0)) throw std::invalid_argument("ChannelParams: relay power must be >= 0");
        if (!(xi_default > 0.0)) throw std::invalid_argument("ChannelParams: fading gain must be > 0");
    }

    void set_xi(NodeRef from, NodeRef to, double xi) {
        if (!(xi > 0.0)) throw std::invalid_argument("ChannelParams: fading gain must be > 0");
        xi_[{from, to}] = xi;
    }

    double xi(NodeRef from, NodeRef to) const {
        auto it = xi_.find({from, to});
        return it == xi_.end() ? xi_default_ : it->second;
    }

    double alpha() const { return alpha_; }
    double source_power() const { return p_s_; }
    double relay_power() const { return p_r_; }

    double power(NodeRef n) const {
        switch (n.role) {
            case NodeRole::source: return p_s_;
            case NodeRole::relay: return p_r_;
            default: throw std::invalid_argument("ChannelParams: destinations have no transmit power");
        }
    }

private:
    double alpha_;
    double p_s_;
    double p_r_;
    double xi_default_;
    std::map<std::pair<NodeRef, NodeRef>, double> xi_;
};

// Receiver SNRs consumed by every rate bound: the source->relay entry plus
// the source->destination and relay->destination entries in layout order.
struct SnrVector {
    double snr_sr = 0.0;
    std::vector<double> snr_s;  // source -> destination j
    std::vector<double> snr_r;  // relay  -> destination j

    int n_dest() const { return static_cast<int>(snr_s.size()); }

    void validate() const {
        if (snr_s.empty() || snr_s.size() != snr_r.size())
            throw std::invalid_argument("SnrVector: per-destination lists empty or of different length");
        auto ok = [](double v) { return std::isfinite(v) && v >= 0.0; };
        if (!ok(snr_sr)) throw std::invalid_argument("SnrVector: snr_sr must be finite and >= 0");
        for (double v : snr_s)
            if (!ok(v)) throw std::invalid_argument("SnrVector: snr_s entries must be finite and >= 0");
        for (double v : snr_r)
            if (!ok(v)) throw std::invalid_argument("SnrVector: snr_r entries must be finite and >= 0");
    }
};

// a(u,v) = sqrt(xi) / D^(alpha/2)
inline double channel_gain(NodeRef from, NodeRef to, const NodeLayout& layout, const ChannelParams& params) {
    const double d = distance(layout.position(from), layout.position(to));
    if (d <= 0.0) throw singularity_error(from, to);
    const double gain = std::sqrt(params.xi(from, to)) / std::pow(d, params.alpha() / 2.0);
    if (!std::isfinite(gain)) throw singularity_error(from, to);
    return gain;
}

// SNR(u,v) = xi * P_u / D^alpha
inline double snr(NodeRef from, NodeRef to, const NodeLayout& layout, const ChannelParams& params) {
    const double d = distance(layout.position(from), layout.position(to));
    if (d <= 0.0) throw singularity_error(from, to);
    const double value = params.xi(from, to) * params.power(from) / std::pow(d, params.alpha());
    if (!std::isfinite(value)) throw singularity_error(from, to);
    return value;
}

inline SnrVector snr_vector(const NodeLayout& layout, const ChannelParams& params) {
    SnrVector s;
    s.snr_sr = snr(NodeRef::src(), NodeRef::rel(), layout, params);
    s.snr_s.reserve(layout.n_dest());
    s.snr_r.reserve(layout.n_dest());
    for (int j = 0; j < layout.n_dest(); ++j) {
        s.snr_s.push_back(snr(NodeRef::src(), NodeRef::dest(j), layout, params));
        s.snr_r.push_back(snr(NodeRef::rel(), NodeRef::dest(j), layout, params));
    }
    s.validate();
    return s;
}

// Per-pair amplitude gains in the same order as SnrVector.
struct ChannelGains {
    double a_sr = 0.0;
    std::vector<double> a_s;
    std::vector<double> a_r;

    int n_dest() const { return static_cast<int>(a_s.size()); }
};

inline ChannelGains channel_gains(const NodeLayout& layout, const ChannelParams& params) {
    ChannelGains g;
    g.a_sr = channel_gain(NodeRef::src(), NodeRef::rel(), layout, params);
    g.a_s.reserve(layout.n_dest());
    g.a_r.reserve(layout.n_dest());
    for (int j = 0; j < layout.n_dest(); ++j) {
        g.a_s.push_back(channel_gain(NodeRef::src(), NodeRef::dest(j), layout, params));
        g.a_r.push_back(channel_gain(NodeRef::rel(), NodeRef::dest(j), layout, params));
    }
    return g;
}

}  // namespace mrc
