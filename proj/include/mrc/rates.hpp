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
// Rate bounds for the AWGN multicast relay channel. Every bound is the
// minimum over destinations of per-cut link capacities:
//
//   cut-set:          min_j min( C(f_j), C(g_j) )
//   decode-forward:   min_j min( C(f_j), C(g*)  )
//   direct:           min_j C(snr_s(j))
//   quantize-forward: min_j C(h_j)
//
// with f_j the coherently combined receive SNR at destination j, g_j the
// multiple-access-side cut term, g* the relay-decode constraint, and h_j
// the effective SNR under Gaussian quantization at the relay. All values
// are in nats per channel use; the low-SNR mode drops every logarithm,
// replacing C(x) = 0.5*log(1+x) by 0.5*x uniformly.

#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mrc/geometry.hpp"
#include "mrc/linalg.hpp"

namespace mrc {

enum class RateMode { exact, low_snr };

inline std::string to_string(RateMode m) { return m == RateMode::exact ? "exact" : "low_snr"; }

// Transmit correlation coefficient between the source and relay symbols,
// restricted to [0, 1] (negative values never help any bound here).
class Correlation {
public:
    explicit Correlation(double rho) : rho_(rho) {
        if (!(rho >= 0.0 && rho <= 1.0))
            throw std::invalid_argument("Correlation: rho must lie in [0, 1]");
    }

    double value() const { return rho_; }

private:
    double rho_;
};

// Link capacity in nats/use. Exact: 0.5*ln(1+snr). Low-SNR: 0.5*snr.
inline double capacity(double snr, RateMode mode) {
    if (!(snr >= 0.0)) throw std::invalid_argument("capacity: snr must be >= 0");
    return mode == RateMode::exact ? 0.5 * std::log1p(snr) : 0.5 * snr;
}

inline double nats_to_bits(double nats) { return nats / std::log(2.0); }

namespace detail {
inline void check_dest(const SnrVector& s, int j, const char* who) {
    if (j < 0 || j >= s.n_dest()) throw std::invalid_argument(std::string(who) + ": destination index out of range");
}
}  // namespace detail

// f_j: combined receive SNR at destination j with coherent combining,
// snr_s + snr_r + 2*rho*sqrt(snr_s*snr_r).
inline double broadcast_cut_snr(Correlation rho, const SnrVector& s, int j) {
    detail::check_dest(s, j, "broadcast_cut_snr");
    return s.snr_s[j] + s.snr_r[j] + 2.0 * rho.value() * std::sqrt(s.snr_s[j] * s.snr_r[j]);
}

// g_j: multiple-access-side cut term, (1-rho^2)*(snr_s + snr_sr).
inline double mac_cut_snr(Correlation rho, const SnrVector& s, int j) {
    detail::check_dest(s, j, "mac_cut_snr");
    return (1.0 - rho.value() * rho.value()) * (s.snr_s[j] + s.snr_sr);
}

// g*: relay-decode constraint, (1-rho^2)*snr_sr.
inline double relay_decode_snr(Correlation rho, const SnrVector& s) {
    return (1.0 - rho.value() * rho.value()) * s.snr_sr;
}

// h_j: effective SNR with Gaussian quantization at the relay,
// snr_s + snr_r*snr_sr / (snr_s + snr_r + snr_sr + 1).
inline double qf_effective_snr(const SnrVector& s, int j) {
    detail::check_dest(s, j, "qf_effective_snr");
    return s.snr_s[j] + s.snr_r[j] * s.snr_sr / (s.snr_s[j] + s.snr_r[j] + s.snr_sr + 1.0);
}

enum class Cut { broadcast, multiple_access };

inline std::string to_string(Cut c) { return c == Cut::broadcast ? "broadcast" : "multiple_access"; }

// Per-destination cut values; a bound that has no term on one side leaves
// that side empty (direct transmission and quantize-forward have a single
// term, routing decode-forward reports its maximized value only).
struct CutTerms {
    int dest = 0;
    std::optional<double> broadcast;
    std::optional<double> multiple_access;
};

struct RateReport {
    double value = 0.0;  // nats/use
    std::vector<CutTerms> per_dest;
    int bottleneck_dest = 0;
    Cut bottleneck_cut = Cut::broadcast;
    std::optional<double> rho_used;
    std::optional<double> beta_used;
};

namespace detail {

// min over all present terms; ties resolve to the lowest destination index,
// broadcast before multiple-access.
inline RateReport finalize_report(std::vector<CutTerms> rows) {
    RateReport rep;
    bool found = false;
    for (const CutTerms& row : rows) {
        if (row.broadcast && (!found || *row.broadcast < rep.value)) {
            rep.value = *row.broadcast;
            rep.bottleneck_dest = row.dest;
            rep.bottleneck_cut = Cut::broadcast;
            found = true;
        }
        if (row.multiple_access && (!found || *row.multiple_access < rep.value)) {
            rep.value = *row.multiple_access;
            rep.bottleneck_dest = row.dest;
            rep.bottleneck_cut = Cut::multiple_access;
            found = true;
        }
    }
    if (!found) throw std::invalid_argument("RateReport: no cut terms");
    rep.per_dest = std::move(rows);
    return rep;
}

}  // namespace detail

// Cut-set upper bound at a fixed correlation coefficient.
inline RateReport rate_cs(Correlation rho, const SnrVector& s, RateMode mode) {
    s.validate();
    std::vector<CutTerms> rows;
    rows.reserve(s.n_dest());
    for (int j = 0; j < s.n_dest(); ++j)
        rows.push_back({j, capacity(broadcast_cut_snr(rho, s, j), mode),
                        capacity(mac_cut_snr(rho, s, j), mode)});
    RateReport rep = detail::finalize_report(std::move(rows));
    rep.rho_used = rho.value();
    return rep;
}

// 2x2 transmit covariance with the diagonal pinned to the power constraints.
class CovMatrix2 {
public:
    CovMatrix2(double q11, double q22, double q12) : q11_(q11), q22_(q22), q12_(q12) {
        if (!(q11 >= 0.0) || !(q22 >= 0.0))
            throw std::invalid_argument("CovMatrix2: diagonal entries must be >= 0");
        // PSD check with a relative slack for rank-1 matrices built in floating point
        if (!(q12 * q12 <= q11 * q22 * (1.0 + 1e-12)))
            throw std::invalid_argument("CovMatrix2: not positive semidefinite (q12^2 > q11*q22)");
    }

    static CovMatrix2 from_rho(double p_s, double p_r, Correlation rho) {
        return CovMatrix2(p_s, p_r, rho.value() * std::sqrt(p_s * p_r));
    }

    double q11() const { return q11_; }
    double q22() const { return q22_; }
    double q12() const { return q12_; }

    std::optional<double> rho() const {
        if (q11_ * q22_ <= 0.0) return std::nullopt;
        return q12_ / std::sqrt(q11_ * q22_);
    }

private:
    double q11_;
    double q22_;
    double q12_;
};

// Cut-set bound in covariance form: per destination j,
//
//   min( 0.5*log(a_j' Q a_j + 1), 0.5*log(det Q_(Yr,Yj,Xr) / P_r) )
//
// where Q_(Yr,Yj,Xr) is the joint covariance of the two receive symbols and
// the relay transmit symbol. Matches rate_cs evaluated at
// rho = q12/sqrt(q11*q22).
inline RateReport rate_cs_cov(const CovMatrix2& q, const ChannelGains& gains,
                              RateMode mode = RateMode::exact) {
    if (gains.n_dest() < 1 || gains.a_s.size() != gains.a_r.size())
        throw std::invalid_argument("rate_cs_cov: gain lists empty or of different length");
    const double p_s = q.q11(), p_r = q.q22(), q12 = q.q12();
    if (p_r <= 0.0) throw std::domain_error("rate_cs_cov: relay power is zero, covariance ratio undefined");

    std::vector<CutTerms> rows;
    rows.reserve(gains.n_dest());
    for (int j = 0; j < gains.n_dest(); ++j) {
        const double a_sr = gains.a_sr, a_sj = gains.a_s[j], a_rj = gains.a_r[j];

        // quadratic form a_j' Q a_j with a_j = (a_sj, a_rj)
        double quad = a_sj * a_sj * p_s + 2.0 * a_sj * a_rj * q12 + a_rj * a_rj * p_r;
        quad = std::max(quad, 0.0);

        // covariance of (Y_r, Y_j, X_r): A~ Q A~' plus unit noise on the receive entries
        Matrix cov(3, 3);
        cov(0, 0) = a_sr * a_sr * p_s + 1.0;
        cov(0, 1) = a_sr * (p_s * a_sj + q12 * a_rj);
        cov(0, 2) = a_sr * q12;
        cov(1, 0) = cov(0, 1);
        cov(1, 1) = quad + 1.0;
        cov(1, 2) = a_sj * q12 + a_rj * p_r;
        cov(2, 0) = cov(0, 2);
        cov(2, 1) = cov(1, 2);
        cov(2, 2) = p_r;

        const double ratio = cov.determinant() / p_r;
        const double mac_snr = std::max(ratio - 1.0, 0.0);

        rows.push_back({j, capacity(quad, mode), capacity(mac_snr, mode)});
    }
    RateReport rep = detail::finalize_report(std::move(rows));
    rep.rho_used = q.rho();
    return rep;
}

// Direct transmission: the relay stays silent.
inline RateReport rate_dt(const SnrVector& s, RateMode mode) {
    s.validate();
    std::vector<CutTerms> rows;
    rows.reserve(s.n_dest());
    for (int j = 0; j < s.n_dest(); ++j)
        rows.push_back({j, capacity(s.snr_s[j], mode), std::nullopt});
    return detail::finalize_report(std::move(rows));
}

// Decode-forward lower bound at a fixed correlation coefficient.
inline RateReport rate_df(Correlation rho, const SnrVector& s, RateMode mode) {
    s.validate();
    const double decode = capacity(relay_decode_snr(rho, s), mode);
    std::vector<CutTerms> rows;
    rows.reserve(s.n_dest());
    for (int j = 0; j < s.n_dest(); ++j)
        rows.push_back({j, capacity(broadcast_cut_snr(rho, s, j), mode), decode});
    RateReport rep = detail::finalize_report(std::move(rows));
    rep.rho_used = rho.value();
    return rep;
}

// Quantize-forward lower bound with Gaussian signaling and quantization.
inline RateReport rate_qf(const SnrVector& s, RateMode mode) {
    s.validate();
    std::vector<CutTerms> rows;
    rows.reserve(s.n_dest());
    for (int j = 0; j < s.n_dest(); ++j)
        rows.push_back({j, capacity(qf_effective_snr(s, j), mode), std::nullopt});
    return detail::finalize_report(std::move(rows));
}

// Routing decode-forward for the single-destination channel in the low-SNR
// regime: the source splits its effort, a fraction beta feeding the relay
// route and the rest the direct route,
//
//   0.5 * ( min(snr_r1, beta*snr_sr) + (1-beta)*snr_s1 ).
//
// The objective is piecewise linear in beta, so the optimum is the kink
// beta = snr_r1/snr_sr (capped at 1) whenever the relay route is the
// stronger one, and beta = 0 otherwise.
inline RateReport rate_rdf(const NodeLayout& layout, const ChannelParams& params,
                           std::optional<double> beta = std::nullopt) {
    if (layout.n_dest() != 1)
        throw std::invalid_argument("rate_rdf: exactly one destination supported");
    const SnrVector s = snr_vector(layout, params);

    double b;
    if (beta) {
        if (!(*beta >= 0.0 && *beta <= 1.0))
            throw std::invalid_argument("rate_rdf: beta must lie in [0, 1]");
        b = *beta;
    } else {
        b = (s.snr_sr > 0.0 && s.snr_sr >= s.snr_s[0]) ? std::min(1.0, s.snr_r[0] / s.snr_sr) : 0.0;
    }

    const double value = 0.5 * (std::min(s.snr_r[0], b * s.snr_sr) + (1.0 - b) * s.snr_s[0]);
    RateReport rep;
    rep.value = value;
    rep.per_dest = {{0, value, std::nullopt}};
    rep.bottleneck_dest = 0;
    rep.bottleneck_cut = Cut::broadcast;
    rep.beta_used = b;
    return rep;
}

// Two-hop rate in the low-SNR regime: per destination, the weaker of the
// source->relay and relay->destination links.
inline RateReport rate_2h(const NodeLayout& layout, const ChannelParams& params) {
    const SnrVector s = snr_vector(layout, params);
    const double hop1 = capacity(s.snr_sr, RateMode::low_snr);
    std::vector<CutTerms> rows;
    rows.reserve(s.n_dest());
    for (int j = 0; j < s.n_dest(); ++j)
        rows.push_back({j, capacity(s.snr_r[j], RateMode::low_snr), hop1});
    return detail::finalize_report(std::move(rows));
}

}  // namespace mrc
