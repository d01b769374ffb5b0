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
// Named curvature claims about the rate bounds, certified by randomized
// mixture tests. Each claim draws its own context per trial (SNR vectors,
// powers, node layouts) and checks the concavity or quasi-concavity mixture
// inequality in both rate modes. One claim is a deliberate counterexample:
// the multiple-access cut term as a function of (rho^2, D^alpha) is
// quasi-convex, and the sampler is expected to find a violating triple.

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mrc/geometry.hpp"
#include "mrc/optimize.hpp"
#include "mrc/qc_verify.hpp"
#include "mrc/rates.hpp"
#include "mrc/rng.hpp"

namespace mrc {

struct Claim {
    std::string name;
    std::string statement;
    bool expect_violation = false;  // true for the counterexample claim
};

namespace claims_detail {

inline SnrVector random_snr(std::mt19937_64& g, int n_dest, double hi = 10.0) {
    SnrVector s;
    s.snr_sr = uniform(g, 0.0, hi);
    for (int j = 0; j < n_dest; ++j) {
        s.snr_s.push_back(uniform(g, 0.0, hi));
        s.snr_r.push_back(uniform(g, 0.0, hi));
    }
    return s;
}

inline SnrVector mix_snr(const SnrVector& a, const SnrVector& b, double l) {
    SnrVector m;
    const double lb = 1.0 - l;
    m.snr_sr = l * a.snr_sr + lb * b.snr_sr;
    for (int j = 0; j < a.n_dest(); ++j) {
        m.snr_s.push_back(l * a.snr_s[j] + lb * b.snr_s[j]);
        m.snr_r.push_back(l * a.snr_r[j] + lb * b.snr_r[j]);
    }
    return m;
}

inline double rate_value(bool cut_set, double rho, const SnrVector& s, RateMode mode) {
    const Correlation c(std::min(rho, 1.0));
    return cut_set ? rate_cs(c, s, mode).value : rate_df(c, s, mode).value;
}

// checker signature: one trial under one rate mode; returns the amount by
// which the inequality failed (<= 0 means it held)
using TrialFn = std::function<double(std::mt19937_64&, RateMode, Violation&)>;

inline CertResult run_trials(const TrialFn& trial, long trials, std::uint64_t seed, double tol) {
    CertResult res;
    res.trials = trials;
    for (long t = 0; t < trials; ++t) {
        for (RateMode mode : {RateMode::exact, RateMode::low_snr}) {
            std::mt19937_64 g =
                trial_rng(seed ^ (mode == RateMode::exact ? 0x0ULL : 0x517cc1b727220a95ULL),
                          static_cast<std::uint64_t>(t));
            Violation v;
            const double miss = trial(g, mode, v);
            if (miss > tol) {
                res.verdict = Verdict::fail;
                v.amount = miss;
                v.quantity += mode == RateMode::exact ? " (exact)" : " (low_snr)";
                mrc::detail::record(res, v);
            }
        }
    }
    return res;
}

// random layout with well-separated nodes; positions in [-5, 5]^dim
inline Terminals random_terminals(std::mt19937_64& g, int dim, int n_dest) {
    auto draw = [&]() {
        std::vector<double> c(dim);
        for (int i = 0; i < dim; ++i) c[i] = uniform(g, -5.0, 5.0);
        return Position(c);
    };
    for (int attempt = 0; attempt < 100; ++attempt) {
        const Position src = draw();
        std::vector<Position> dests;
        bool ok = true;
        for (int j = 0; j < n_dest && ok; ++j) {
            const Position d = draw();
            if (distance(d, src) < 0.2) ok = false;
            for (const Position& e : dests)
                if (distance(d, e) < 0.2) ok = false;
            if (ok) dests.push_back(d);
        }
        if (ok) return Terminals(src, std::move(dests));
    }
    throw std::runtime_error("random_terminals: separation not achieved");
}

inline Position random_relay(std::mt19937_64& g, const Terminals& t) {
    for (int attempt = 0; attempt < 100; ++attempt) {
        std::vector<double> c(t.dim());
        for (int i = 0; i < t.dim(); ++i) c[i] = uniform(g, -6.0, 6.0);
        const Position r(c);
        bool ok = distance(r, t.source) >= 0.1;
        for (const Position& d : t.destinations)
            if (distance(r, d) < 0.1) ok = false;
        if (ok) return r;
    }
    throw std::runtime_error("random_relay: separation not achieved");
}

}  // namespace claims_detail

inline const std::vector<Claim>& claim_list() {
    static const std::vector<Claim> claims = {
        {"cs-concave-rho", "cut-set bound is concave in rho at fixed SNRs"},
        {"df-concave-rho", "decode-forward rate is concave in rho at fixed SNRs"},
        {"cs-concave-snr", "cut-set bound is concave in the SNR vector at fixed rho"},
        {"df-concave-snr", "decode-forward rate is concave in the SNR vector at fixed rho"},
        {"cs-quasiconcave-rho2-snr", "cut-set bound is quasi-concave in (rho^2, SNRs)"},
        {"df-quasiconcave-rho2-snr", "decode-forward rate is quasi-concave in (rho^2, SNRs)"},
        {"cs-quasiconcave-rho2-power", "cut-set bound is quasi-concave in (rho^2, powers)"},
        {"df-quasiconcave-rho2-power", "decode-forward rate is quasi-concave in (rho^2, powers)"},
        {"qf-quasiconcave-snr",
         "quantize-forward rate is quasi-concave in the relay-side SNRs at fixed direct SNRs"},
        {"cs-quasiconcave-position", "cut-set bound at fixed rho is quasi-concave in the relay position"},
        {"df-quasiconcave-rho2-position",
         "decode-forward rate is quasi-concave jointly in (rho^2, relay position)"},
        {"df-quasiconcave-position-coherent",
         "decode-forward rate with rho maximized out is quasi-concave in the relay position"},
        {"mac-cut-distance",
         "counterexample: the multiple-access cut term is quasi-convex, not quasi-concave, in "
         "(rho^2, D^alpha)",
         true},
    };
    return claims;
}

inline const Claim& find_claim(const std::string& name) {
    for (const Claim& c : claim_list())
        if (c.name == name) return c;
    throw std::invalid_argument("unknown claim: " + name);
}

// Run one named claim. Results are deterministic in (name, trials, seed).
inline CertResult run_claim(const std::string& name, long trials, std::uint64_t seed,
                            double tol = 1e-9) {
    using namespace claims_detail;
    find_claim(name);

    auto n_dest = [](std::mt19937_64& g) { return 1 + static_cast<int>(g() % 3); };

    if (name == "cs-concave-rho" || name == "df-concave-rho") {
        const bool cs = name[0] == 'c';
        return run_trials(
            [&, cs](std::mt19937_64& g, RateMode mode, Violation& v) {
                const SnrVector s = random_snr(g, n_dest(g));
                const double r1 = uniform(g, 0.0, 1.0), r2 = uniform(g, 0.0, 1.0);
                const double l = uniform(g, 0.0, 1.0);
                const double bound = l * rate_value(cs, r1, s, mode) + (1.0 - l) * rate_value(cs, r2, s, mode);
                const double got = rate_value(cs, l * r1 + (1.0 - l) * r2, s, mode);
                v = {{r1}, {r2}, l, "concavity in rho", 0.0};
                return bound - got;
            },
            trials, seed, tol);
    }

    if (name == "cs-concave-snr" || name == "df-concave-snr") {
        const bool cs = name[0] == 'c';
        return run_trials(
            [&, cs](std::mt19937_64& g, RateMode mode, Violation& v) {
                const int n = n_dest(g);
                const double rho = uniform(g, 0.0, 1.0);
                const SnrVector s1 = random_snr(g, n), s2 = random_snr(g, n);
                const double l = uniform(g, 0.0, 1.0);
                const double bound = l * rate_value(cs, rho, s1, mode) + (1.0 - l) * rate_value(cs, rho, s2, mode);
                const double got = rate_value(cs, rho, mix_snr(s1, s2, l), mode);
                v = {{rho}, {}, l, "concavity in the SNR vector", 0.0};
                return bound - got;
            },
            trials, seed, tol);
    }

    if (name == "cs-quasiconcave-rho2-snr" || name == "df-quasiconcave-rho2-snr") {
        const bool cs = name[0] == 'c';
        return run_trials(
            [&, cs](std::mt19937_64& g, RateMode mode, Violation& v) {
                const int n = n_dest(g);
                const double u1 = uniform(g, 0.0, 1.0), u2 = uniform(g, 0.0, 1.0);  // rho^2
                const SnrVector s1 = random_snr(g, n), s2 = random_snr(g, n);
                const double l = uniform(g, 0.0, 1.0);
                const double bound =
                    std::min(rate_value(cs, std::sqrt(u1), s1, mode), rate_value(cs, std::sqrt(u2), s2, mode));
                const double got =
                    rate_value(cs, std::sqrt(l * u1 + (1.0 - l) * u2), mix_snr(s1, s2, l), mode);
                v = {{u1}, {u2}, l, "quasi-concavity in (rho^2, SNRs)", 0.0};
                return bound - got;
            },
            trials, seed, tol);
    }

    if (name == "cs-quasiconcave-rho2-power" || name == "df-quasiconcave-rho2-power") {
        const bool cs = name[0] == 'c';
        return run_trials(
            [&, cs](std::mt19937_64& g, RateMode mode, Violation& v) {
                const int n = n_dest(g);
                // fixed squared gains for the trial
                const double gsr = uniform(g, 0.01, 4.0);
                std::vector<double> gs(n), gr(n);
                for (int j = 0; j < n; ++j) {
                    gs[j] = uniform(g, 0.01, 4.0);
                    gr[j] = uniform(g, 0.01, 4.0);
                }
                auto snr_of = [&](double ps, double pr) {
                    SnrVector s;
                    s.snr_sr = gsr * ps;
                    for (int j = 0; j < n; ++j) {
                        s.snr_s.push_back(gs[j] * ps);
                        s.snr_r.push_back(gr[j] * pr);
                    }
                    return s;
                };
                const double u1 = uniform(g, 0.0, 1.0), u2 = uniform(g, 0.0, 1.0);
                const double ps1 = uniform(g, 0.0, 10.0), pr1 = uniform(g, 0.0, 10.0);
                const double ps2 = uniform(g, 0.0, 10.0), pr2 = uniform(g, 0.0, 10.0);
                const double l = uniform(g, 0.0, 1.0), lb = 1.0 - l;
                const double bound = std::min(rate_value(cs, std::sqrt(u1), snr_of(ps1, pr1), mode),
                                              rate_value(cs, std::sqrt(u2), snr_of(ps2, pr2), mode));
                const double got = rate_value(cs, std::sqrt(l * u1 + lb * u2),
                                              snr_of(l * ps1 + lb * ps2, l * pr1 + lb * pr2), mode);
                v = {{u1, ps1, pr1}, {u2, ps2, pr2}, l, "quasi-concavity in (rho^2, powers)", 0.0};
                return bound - got;
            },
            trials, seed, tol);
    }

    if (name == "qf-quasiconcave-snr") {
        return run_trials(
            [&](std::mt19937_64& g, RateMode mode, Violation& v) {
                const int n = n_dest(g);
                std::vector<double> fixed_s(n);
                for (int j = 0; j < n; ++j) fixed_s[j] = uniform(g, 0.0, 10.0);
                auto snr_of = [&](double sr, const std::vector<double>& r) {
                    SnrVector s;
                    s.snr_sr = sr;
                    s.snr_s = fixed_s;
                    s.snr_r = r;
                    return s;
                };
                const double sr1 = uniform(g, 0.0, 10.0), sr2 = uniform(g, 0.0, 10.0);
                std::vector<double> r1(n), r2(n), rm(n);
                for (int j = 0; j < n; ++j) {
                    r1[j] = uniform(g, 0.0, 10.0);
                    r2[j] = uniform(g, 0.0, 10.0);
                }
                const double l = uniform(g, 0.0, 1.0), lb = 1.0 - l;
                for (int j = 0; j < n; ++j) rm[j] = l * r1[j] + lb * r2[j];
                const double bound = std::min(rate_qf(snr_of(sr1, r1), mode).value,
                                              rate_qf(snr_of(sr2, r2), mode).value);
                const double got = rate_qf(snr_of(l * sr1 + lb * sr2, rm), mode).value;
                v = {{sr1}, {sr2}, l, "quasi-concavity in the relay-side SNRs", 0.0};
                return bound - got;
            },
            trials, seed, tol);
    }

    if (name == "cs-quasiconcave-position" || name == "df-quasiconcave-rho2-position" ||
        name == "df-quasiconcave-position-coherent") {
        return run_trials(
            [&, name](std::mt19937_64& g, RateMode mode, Violation& v) {
                const int dim = 1 + static_cast<int>(g() % 2);
                const Terminals t = random_terminals(g, dim, 1 + static_cast<int>(g() % 2));
                const ChannelParams params(2.0, 1.0, 1.0);
                const Position r1 = random_relay(g, t), r2 = random_relay(g, t);
                const double l = uniform(g, 0.0, 1.0), lb = 1.0 - l;
                std::vector<double> rm(dim);
                for (int i = 0; i < dim; ++i) rm[i] = l * r1[i] + lb * r2[i];

                auto value = [&](const Position& r, double rho_sq) {
                    const SnrVector s = snr_vector(t.with_relay(r), params);
                    if (name == "cs-quasiconcave-position")
                        return rate_cs(Correlation(std::sqrt(rho_sq)), s, mode).value;
                    if (name == "df-quasiconcave-rho2-position")
                        return rate_df(Correlation(std::sqrt(rho_sq)), s, mode).value;
                    // inner maximization tight enough for a 1e-9 margin check
                    return maximize_rho(RhoObjective::decode_forward, s, mode, 1e-12).value;
                };

                double u1 = 0.0, u2 = 0.0, um = 0.0;
                if (name == "cs-quasiconcave-position") {
                    u1 = u2 = um = uniform(g, 0.0, 1.0);  // fixed rho
                } else if (name == "df-quasiconcave-rho2-position") {
                    u1 = uniform(g, 0.0, 1.0);
                    u2 = uniform(g, 0.0, 1.0);
                    um = l * u1 + lb * u2;
                }
                try {
                    const double bound = std::min(value(r1, u1), value(r2, u2));
                    const double got = value(Position(rm), um);
                    v = {std::vector<double>(r1.coords().begin(), r1.coords().end()),
                         std::vector<double>(r2.coords().begin(), r2.coords().end()), l,
                         "quasi-concavity in the relay position", 0.0};
                    return bound - got;
                } catch (const singularity_error&) {
                    return 0.0;  // mixture landed on a node; vacuous trial
                }
            },
            trials, seed, tol);
    }

    if (name == "mac-cut-distance") {
        // (1-b)*(k1 + k2/a) over (a, b) = (D^alpha, rho^2): quasi-convex
        const double k1 = 1.0, k2 = 1.0;
        const ScalarFn gtilde = [&](std::span<const double> x) {
            return (1.0 - x[1]) * (k1 + k2 / x[0]);
        };
        return quasiconcavity_sample_test(gtilde, DomainBox({1e-2, 0.0}, {10.0, 1.0}), trials, seed, tol);
    }

    throw std::invalid_argument("unknown claim: " + name);
}

}  // namespace mrc
