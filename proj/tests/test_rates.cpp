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

#include <cmath>

#include "mrc/geometry.hpp"
#include "mrc/optimize.hpp"
#include "mrc/rates.hpp"
#include "mrc/rng.hpp"

using namespace mrc;

namespace {

SnrVector make_snr(double sr, std::vector<double> s, std::vector<double> r) {
    SnrVector v;
    v.snr_sr = sr;
    v.snr_s = std::move(s);
    v.snr_r = std::move(r);
    return v;
}

SnrVector random_snr(std::mt19937_64& g, int n, double hi = 10.0) {
    SnrVector v;
    v.snr_sr = uniform(g, 0.0, hi);
    for (int j = 0; j < n; ++j) {
        v.snr_s.push_back(uniform(g, 0.0, hi));
        v.snr_r.push_back(uniform(g, 0.0, hi));
    }
    return v;
}

ChannelGains random_gains_for(std::mt19937_64& g, int n, double& p_s, double& p_r, SnrVector& s) {
    ChannelGains gains;
    p_s = uniform(g, 0.1, 10.0);
    p_r = uniform(g, 0.1, 10.0);
    gains.a_sr = uniform(g, 0.1, 2.0);
    s = SnrVector{};
    s.snr_sr = gains.a_sr * gains.a_sr * p_s;
    for (int j = 0; j < n; ++j) {
        gains.a_s.push_back(uniform(g, 0.1, 2.0));
        gains.a_r.push_back(uniform(g, 0.1, 2.0));
        s.snr_s.push_back(gains.a_s[j] * gains.a_s[j] * p_s);
        s.snr_r.push_back(gains.a_r[j] * gains.a_r[j] * p_r);
    }
    return gains;
}

const NodeLayout kLine(Position{0.0}, Position{0.5}, {Position{1.0}});
const ChannelParams kUnit(2.0, 1.0, 1.0);

}  // namespace

TEST_CASE("capacity in both modes") {
    CHECK(capacity(0.0, RateMode::exact) == 0.0);
    CHECK(capacity(std::exp(1.0) - 1.0, RateMode::exact) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(capacity(4.0, RateMode::low_snr) == doctest::Approx(2.0));
    CHECK_THROWS_AS(capacity(-0.1, RateMode::exact), std::invalid_argument);
    CHECK(nats_to_bits(std::log(2.0)) == doctest::Approx(1.0));
}

TEST_CASE("correlation bounds") {
    CHECK(Correlation(0.0).value() == 0.0);
    CHECK(Correlation(1.0).value() == 1.0);
    CHECK_THROWS_AS(Correlation(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(Correlation(1.1), std::invalid_argument);
    CHECK_THROWS_AS(Correlation(std::nan("")), std::invalid_argument);
}

TEST_CASE("cut snr terms") {
    const SnrVector s14 = make_snr(24.0, {1.0}, {4.0});

    SUBCASE("combined receive snr") {
        CHECK(broadcast_cut_snr(Correlation(0.0), s14, 0) == doctest::Approx(5.0));
        CHECK(broadcast_cut_snr(Correlation(1.0), s14, 0) == doctest::Approx(9.0));  // (1+2)^2
        const SnrVector s11 = make_snr(0.0, {1.0}, {1.0});
        CHECK(broadcast_cut_snr(Correlation(0.5), s11, 0) == doctest::Approx(3.0));
    }

    SUBCASE("multiple-access side term") {
        CHECK(mac_cut_snr(Correlation(0.0), s14, 0) == doctest::Approx(25.0));
        CHECK(mac_cut_snr(Correlation(1.0), s14, 0) == doctest::Approx(0.0));
        const SnrVector s = make_snr(4.0, {1.0}, {0.0});
        CHECK(mac_cut_snr(Correlation(0.6), s, 0) == doctest::Approx(3.2));
    }

    SUBCASE("relay decode term") {
        CHECK(relay_decode_snr(Correlation(0.0), make_snr(4.0, {0.0}, {0.0})) == doctest::Approx(4.0));
        CHECK(relay_decode_snr(Correlation(1.0), s14) == doctest::Approx(0.0));
        CHECK(relay_decode_snr(Correlation(0.5), make_snr(8.0, {0.0}, {0.0})) == doctest::Approx(6.0));
    }

    SUBCASE("quantize-forward effective snr") {
        CHECK(qf_effective_snr(make_snr(1.0, {0.0}, {1.0}), 0) == doctest::Approx(1.0 / 3.0));
        CHECK(qf_effective_snr(make_snr(5.0, {2.0}, {0.0}), 0) == doctest::Approx(2.0));  // relay silent
        CHECK(qf_effective_snr(make_snr(3.0, {1.0}, {2.0}), 0) == doctest::Approx(1.0 + 6.0 / 7.0));
    }

    SUBCASE("index checks") {
        CHECK_THROWS_AS(broadcast_cut_snr(Correlation(0.0), s14, 1), std::invalid_argument);
        CHECK_THROWS_AS(qf_effective_snr(s14, -1), std::invalid_argument);
    }
}

TEST_CASE("cut-set bound") {
    // midpoint relay on the unit segment: f = g = 5, value 2.5, tie resolves
    // to the broadcast cut of destination 0
    const SnrVector s = snr_vector(kLine, kUnit);
    const RateReport rep = rate_cs(Correlation(0.0), s, RateMode::low_snr);
    CHECK(rep.value == doctest::Approx(2.5));
    CHECK(rep.bottleneck_dest == 0);
    CHECK(rep.bottleneck_cut == Cut::broadcast);
    CHECK(*rep.rho_used == 0.0);

    std::mt19937_64 g = trial_rng(20, 0);
    CHECK(rate_cs(Correlation(1.0), random_snr(g, 2), RateMode::exact).value == doctest::Approx(0.0));

    // with a dead relay link the direct term is the bottleneck
    const SnrVector dead = make_snr(7.0, {3.0}, {0.0});
    CHECK(rate_cs(Correlation(0.0), dead, RateMode::exact).value ==
          doctest::Approx(capacity(3.0, RateMode::exact)));
}

TEST_CASE("report value equals the minimum over per-destination terms") {
    std::mt19937_64 g = trial_rng(21, 0);
    for (int t = 0; t < 200; ++t) {
        const SnrVector s = random_snr(g, 1 + static_cast<int>(g() % 3));
        const double rho = uniform(g, 0.0, 1.0);
        const RateReport rep = rate_cs(Correlation(rho), s, RateMode::exact);
        double lo = std::numeric_limits<double>::infinity();
        for (const CutTerms& row : rep.per_dest) {
            if (row.broadcast) lo = std::min(lo, *row.broadcast);
            if (row.multiple_access) lo = std::min(lo, *row.multiple_access);
        }
        CHECK(rep.value == doctest::Approx(lo).epsilon(1e-12));
    }
}

TEST_CASE("covariance form of the cut-set bound") {
    SUBCASE("diagonal covariance matches the rho form at rho = 0") {
        ChannelGains gains{1.0, {1.0}, {1.0}};
        const RateReport cov = rate_cs_cov(CovMatrix2(1.0, 1.0, 0.0), gains);
        const RateReport rho = rate_cs(Correlation(0.0), make_snr(1.0, {1.0}, {1.0}), RateMode::exact);
        CHECK(cov.value == doctest::Approx(rho.value).epsilon(1e-12));
    }

    SUBCASE("rank-1 covariance collapses the multiple-access term") {
        ChannelGains gains{1.0, {1.0}, {1.0}};
        const RateReport cov = rate_cs_cov(CovMatrix2(2.0, 3.0, std::sqrt(6.0)), gains);
        CHECK(*cov.per_dest[0].multiple_access == doctest::Approx(0.0));
        CHECK(cov.value == doctest::Approx(0.0));
    }

    SUBCASE("equivalence oracle over 1000 random draws") {
        std::mt19937_64 g = trial_rng(22, 0);
        double worst = 0.0;
        for (int t = 0; t < 1000; ++t) {
            const int n = 1 + static_cast<int>(g() % 3);
            double p_s, p_r;
            SnrVector s;
            const ChannelGains gains = random_gains_for(g, n, p_s, p_r, s);
            const double rho = uniform(g, 0.0, 1.0);
            for (RateMode mode : {RateMode::exact, RateMode::low_snr}) {
                const RateReport a = rate_cs(Correlation(rho), s, mode);
                const RateReport b =
                    rate_cs_cov(CovMatrix2::from_rho(p_s, p_r, Correlation(rho)), gains, mode);
                worst = std::max(worst, std::abs(a.value - b.value));
            }
        }
        CHECK(worst < 1e-9);
    }

    SUBCASE("rejections") {
        ChannelGains gains{1.0, {1.0}, {1.0}};
        CHECK_THROWS_AS(CovMatrix2(1.0, 1.0, 1.5), std::invalid_argument);  // not PSD
        CHECK_THROWS_AS(rate_cs_cov(CovMatrix2(1.0, 0.0, 0.0), gains), std::domain_error);  // P_r = 0
    }
}

TEST_CASE("direct transmission") {
    CHECK(rate_dt(make_snr(0.0, {1.0, 4.0}, {0.0, 0.0}), RateMode::exact).value ==
          doctest::Approx(0.5 * std::log(2.0)));
    CHECK(rate_dt(make_snr(0.0, {0.0, 5.0}, {0.0, 0.0}), RateMode::exact).value == 0.0);
    const RateReport rep = rate_dt(make_snr(0.0, {3.0}, {0.0}), RateMode::low_snr);
    CHECK(rep.value == doctest::Approx(1.5));
    CHECK(!rep.rho_used.has_value());
}

TEST_CASE("decode-forward") {
    const SnrVector s = snr_vector(kLine, kUnit);
    CHECK(rate_df(Correlation(0.0), s, RateMode::low_snr).value == doctest::Approx(2.0));
    CHECK(rate_df(Correlation(1.0), s, RateMode::low_snr).value == doctest::Approx(0.0));
    CHECK(rate_df(Correlation(0.0), make_snr(25.0, {1.0}, {4.0}), RateMode::low_snr).value ==
          doctest::Approx(2.5));
}

TEST_CASE("quantize-forward") {
    // useless relay link reduces to direct transmission
    const SnrVector dead = make_snr(6.0, {1.0, 2.0}, {0.0, 0.0});
    CHECK(rate_qf(dead, RateMode::exact).value == doctest::Approx(rate_dt(dead, RateMode::exact).value));

    CHECK(rate_qf(make_snr(1.0, {0.0}, {1.0}), RateMode::exact).value ==
          doctest::Approx(0.5 * std::log(4.0 / 3.0)));

    // h_j approaches snr_s + snr_r monotonically as snr_sr grows
    double prev = -1.0;
    for (int k = 0; k <= 9; ++k) {
        const double h = qf_effective_snr(make_snr(std::pow(10.0, k), {1.0}, {2.0}), 0);
        CHECK(h > prev);
        prev = h;
    }
    CHECK(prev == doctest::Approx(3.0).epsilon(1e-6));
    CHECK(!rate_qf(dead, RateMode::exact).rho_used.has_value());
}

TEST_CASE("routing decode-forward") {
    SUBCASE("midpoint relay transfers everything through the relay route") {
        const RateReport rep = rate_rdf(kLine, kUnit);
        CHECK(rep.value == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(*rep.beta_used == 1.0);
    }

    SUBCASE("forced beta = 0 reduces to direct transmission") {
        const RateReport rep = rate_rdf(kLine, kUnit, 0.0);
        CHECK(rep.value == doctest::Approx(0.5));
        CHECK(*rep.beta_used == 0.0);
    }

    SUBCASE("closed-form split agrees with a beta-grid oracle at r = 0.25") {
        const NodeLayout l(Position{0.0}, Position{0.25}, {Position{1.0}});
        const RateReport rep = rate_rdf(l, kUnit);
        CHECK(*rep.beta_used == doctest::Approx(1.0 / 9.0).epsilon(1e-12));
        CHECK(rep.value == doctest::Approx(4.0 / 3.0).epsilon(1e-12));

        double best = -1.0;
        for (int k = 0; k <= 10000; ++k) {
            const double beta = k * 1e-4;
            best = std::max(best, rate_rdf(l, kUnit, beta).value);
        }
        CHECK(rep.value >= best - 1e-12);
        CHECK(rep.value == doctest::Approx(best).epsilon(1e-3));
    }

    SUBCASE("topology and argument checks") {
        const NodeLayout two(Position{0.0}, Position{0.5}, {Position{1.0}, Position{2.0}});
        CHECK_THROWS_AS(rate_rdf(two, kUnit), std::invalid_argument);
        CHECK_THROWS_AS(rate_rdf(kLine, kUnit, 1.5), std::invalid_argument);
    }
}

TEST_CASE("two-hop rate") {
    CHECK(rate_2h(kLine, kUnit).value == doctest::Approx(2.0));

    const NodeLayout near(Position{0.0}, Position{0.1}, {Position{1.0}});
    CHECK(rate_2h(near, kUnit).value == doctest::Approx(0.5 * std::min(100.0, 1.0 / 0.81)));

    // the farther destination is the bottleneck
    const NodeLayout sym(Position{0.0, 0.0}, Position{0.5, 0.0},
                         {Position{1.0, 0.0}, Position{3.0, 0.0}});
    const RateReport rep = rate_2h(sym, kUnit);
    CHECK(rep.bottleneck_dest == 1);
    CHECK(rep.value == doctest::Approx(0.5 / (2.5 * 2.5)));
}

TEST_CASE("bound ordering over random SNR vectors") {
    std::mt19937_64 g = trial_rng(23, 0);
    for (int t = 0; t < 1000; ++t) {
        const int n = 1 + static_cast<int>(g() % 3);
        const SnrVector s = random_snr(g, n);
        const double rho = uniform(g, 0.0, 1.0);
        for (RateMode mode : {RateMode::exact, RateMode::low_snr}) {
            const double cs_at_rho = rate_cs(Correlation(rho), s, mode).value;
            const double cs_best = maximize_rho(RhoObjective::cut_set, s, mode, 1e-9).value;
            CHECK(rate_df(Correlation(rho), s, mode).value <= cs_at_rho);
            CHECK(rate_dt(s, mode).value <= cs_best + 1e-9);
            CHECK(rate_qf(s, mode).value <= cs_best + 1e-9);
        }
    }
}

TEST_CASE("decode-forward dominates the two-hop rate pointwise") {
    std::mt19937_64 g = trial_rng(24, 0);
    const ChannelParams p(2.0, 1.0, 1.0);
    for (int t = 0; t < 300; ++t) {
        const double r = uniform(g, 0.02, 0.98);
        const NodeLayout l(Position{0.0, 0.0}, Position{r, uniform(g, -1.0, 1.0)},
                           {Position{1.0, 0.0}, Position{0.0, 1.0}});
        CHECK(rate_df(Correlation(0.0), snr_vector(l, p), RateMode::low_snr).value >=
              rate_2h(l, p).value);
    }
}

TEST_CASE("bounds are nondecreasing in each SNR component at rho = 0") {
    std::mt19937_64 g = trial_rng(25, 0);
    const double delta = 0.25;
    for (int t = 0; t < 200; ++t) {
        const int n = 1 + static_cast<int>(g() % 2);
        const SnrVector s = random_snr(g, n);
        auto bumped = [&](int which) {
            SnrVector b = s;
            if (which == 0)
                b.snr_sr += delta;
            else if (which <= n)
                b.snr_s[which - 1] += delta;
            else
                b.snr_r[which - 1 - n] += delta;
            return b;
        };
        for (int which = 0; which < 2 * n + 1; ++which) {
            const SnrVector b = bumped(which);
            CHECK(rate_cs(Correlation(0.0), b, RateMode::exact).value + 1e-12 >=
                  rate_cs(Correlation(0.0), s, RateMode::exact).value);
            CHECK(rate_df(Correlation(0.0), b, RateMode::exact).value + 1e-12 >=
                  rate_df(Correlation(0.0), s, RateMode::exact).value);
            CHECK(rate_qf(b, RateMode::exact).value + 1e-12 >= rate_qf(s, RateMode::exact).value);
        }
    }
}

TEST_CASE("low-snr mode linearizes every term uniformly") {
    const SnrVector s = make_snr(4.0, {1.0}, {4.0});
    const RateReport rep = rate_cs(Correlation(0.0), s, RateMode::low_snr);
    CHECK(*rep.per_dest[0].broadcast == doctest::Approx(2.5));
    CHECK(*rep.per_dest[0].multiple_access == doctest::Approx(2.5));
}
