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
// Command-line front end: rate evaluation, relay-position optimization,
// grid sweeps to CSV, and the certification suites.
//
// Exit codes: 0 success/pass, 1 check failure, 2 invalid input, 3 I/O error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mrc/mrc.hpp"

using namespace mrc;
using nlohmann::json;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string preset_name;
    std::string bound;
    std::string rho;
    std::string mode;
    std::string relay;
    std::string resolution;
    double tol = -1.0;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_search_opts) {
    cmd->add_option("--config", o.config_path, "JSON config file");
    cmd->add_option("--preset", o.preset_name, "built-in scenario (see `preset list`)");
    cmd->add_option("--bound", o.bound, "bound to evaluate: cs, dt, df, qf, rdf, 2h");
    cmd->add_option("--rho", o.rho, "correlation coefficient in [0,1], or 'optimize'");
    cmd->add_option("--mode", o.mode, "rate mode: exact or low_snr");
    cmd->add_option("--relay", o.relay, "relay position, comma-separated coordinates");
    if (with_search_opts) {
        cmd->add_option("--resolution", o.resolution, "grid resolution per axis, comma-separated");
        cmd->add_option("--tol", o.tol, "optimizer stopping tolerance");
    }
}

std::vector<double> parse_csv_doubles(const std::string& s, const char* field) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw config_error(field, "expected comma-separated numbers");
        }
    }
    if (out.empty()) throw config_error(field, "expected comma-separated numbers");
    return out;
}

ScenarioConfig resolve_config(const CommonOpts& o) {
    if (!o.config_path.empty() && !o.preset_name.empty())
        throw config_error("--config", "give either --config or --preset, not both");
    ScenarioConfig cfg;
    if (!o.config_path.empty())
        cfg = load_config_file(o.config_path);
    else if (!o.preset_name.empty())
        cfg = preset(o.preset_name);
    else
        throw config_error("--preset", "either --preset or --config is required");

    if (!o.bound.empty()) cfg.bound = parse_bound(o.bound);
    if (!o.mode.empty()) cfg.mode = parse_mode(o.mode);
    if (!o.rho.empty()) {
        if (o.rho == "optimize") {
            cfg.rho = std::nullopt;
        } else {
            try {
                cfg.rho = std::stod(o.rho);
            } catch (const std::exception&) {
                throw config_error("rho", "expected a number or 'optimize'");
            }
        }
    }
    if (!o.relay.empty()) {
        const std::vector<double> pos = parse_csv_doubles(o.relay, "relay");
        bool replaced = false;
        for (NodeSpec& n : cfg.nodes)
            if (n.role == NodeRole::relay) {
                n.pos = pos;
                replaced = true;
            }
        if (!replaced) cfg.nodes.push_back({"r", NodeRole::relay, pos});
    }
    if (!o.resolution.empty()) {
        cfg.resolution.clear();
        for (double v : parse_csv_doubles(o.resolution, "resolution"))
            cfg.resolution.push_back(static_cast<int>(v));
    }
    if (o.tol > 0.0) cfg.tol = o.tol;
    cfg.validate();
    return cfg;
}

json report_to_json(const RateReport& rep, BoundKind bound, RateMode mode, bool bits) {
    json per = json::array();
    for (const CutTerms& row : rep.per_dest) {
        json r;
        r["dest"] = row.dest;
        r["broadcast"] = row.broadcast ? json(*row.broadcast) : json(nullptr);
        r["multiple_access"] = row.multiple_access ? json(*row.multiple_access) : json(nullptr);
        per.push_back(r);
    }
    json out;
    out["bound"] = to_string(bound);
    out["mode"] = to_string(mode);
    out["value_nats"] = rep.value;
    if (bits) out["value_bits"] = nats_to_bits(rep.value);
    out["rho_used"] = rep.rho_used ? json(*rep.rho_used) : json(nullptr);
    out["beta_used"] = rep.beta_used ? json(*rep.beta_used) : json(nullptr);
    out["per_dest"] = per;
    out["bottleneck"] = {{"dest", rep.bottleneck_dest}, {"cut", to_string(rep.bottleneck_cut)}};
    return out;
}

int cmd_rate(const CommonOpts& o, bool bits) {
    const ScenarioConfig cfg = resolve_config(o);
    const NodeLayout layout = cfg.layout();
    const ChannelParams params = cfg.params();

    RateReport rep;
    switch (cfg.bound) {
        case BoundKind::dt:
            rep = rate_dt(snr_vector(layout, params), cfg.mode);
            break;
        case BoundKind::qf:
            rep = rate_qf(snr_vector(layout, params), cfg.mode);
            break;
        case BoundKind::rdf:
            if (cfg.mode != RateMode::low_snr) throw config_error("mode", "bound rdf is low-SNR only");
            rep = rate_rdf(layout, params);
            break;
        case BoundKind::two_hop:
            if (cfg.mode != RateMode::low_snr) throw config_error("mode", "bound 2h is low-SNR only");
            rep = rate_2h(layout, params);
            break;
        case BoundKind::cs:
        case BoundKind::df: {
            const SnrVector s = snr_vector(layout, params);
            const RhoObjective which =
                cfg.bound == BoundKind::cs ? RhoObjective::cut_set : RhoObjective::decode_forward;
            if (cfg.rho) {
                rep = cfg.bound == BoundKind::cs ? rate_cs(Correlation(*cfg.rho), s, cfg.mode)
                                                 : rate_df(Correlation(*cfg.rho), s, cfg.mode);
            } else {
                const OptResult best = maximize_rho(which, s, cfg.mode, cfg.tol);
                const Correlation rho(best.argmax[0]);
                rep = cfg.bound == BoundKind::cs ? rate_cs(rho, s, cfg.mode)
                                                 : rate_df(rho, s, cfg.mode);
            }
            break;
        }
    }
    std::cout << report_to_json(rep, cfg.bound, cfg.mode, bits).dump(2) << "\n";
    return 0;
}

RelayBound relay_bound_of(const ScenarioConfig& cfg, RelayOptOptions& opt) {
    switch (cfg.bound) {
        case BoundKind::df:
            if (!cfg.rho) return RelayBound::df_coherent;
            if (*cfg.rho == 0.0) return RelayBound::df_noncoherent;
            throw config_error("rho", "bound df over the relay position supports rho 0 or 'optimize'");
        case BoundKind::cs:
            if (!cfg.rho) return RelayBound::cs_coherent;
            opt.fixed_rho = *cfg.rho;
            return RelayBound::cs_fixed_rho;
        case BoundKind::rdf:
            return RelayBound::rdf;
        case BoundKind::two_hop:
            return RelayBound::two_hop;
        default:
            throw config_error("bound", "bound dt does not depend on the relay position");
    }
}

int cmd_optimize(const CommonOpts& o) {
    const ScenarioConfig cfg = resolve_config(o);
    if (!cfg.box) throw config_error("box", "required for optimize");
    RelayOptOptions opt;
    opt.tol = cfg.tol;
    if (!cfg.resolution.empty()) opt.grid_resolution = cfg.resolution;
    const RelayBound bound = relay_bound_of(cfg, opt);

    const OptResult r =
        optimize_relay(bound, cfg.terminals(), cfg.params(), *cfg.box, cfg.mode, opt);

    json out;
    out["bound"] = to_string(bound);
    out["mode"] = to_string(cfg.mode);
    out["argmax"] = r.argmax;
    out["value_nats"] = r.value;
    out["evaluations"] = r.evaluations;
    out["achieved_tol"] = r.achieved_tol;
    if (!r.starts.empty()) {
        json starts = json::array();
        for (const OptResult& s : r.starts)
            starts.push_back({{"argmax", s.argmax}, {"value_nats", s.value}});
        out["starts"] = starts;
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_sweep(const CommonOpts& o, const std::string& out_path) {
    const ScenarioConfig cfg = resolve_config(o);
    if (!cfg.box) throw config_error("box", "required for sweep");
    if (cfg.resolution.empty()) throw config_error("resolution", "required for sweep");
    RelayOptOptions opt;
    const RelayBound bound = relay_bound_of(cfg, opt);

    const SweepGrid grid =
        sweep_grid(bound, cfg.terminals(), cfg.params(), *cfg.box, cfg.resolution, cfg.mode, opt);

    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file: " + out_path);
    write_sweep_csv(file, grid);
    file.flush();
    if (!file) throw std::runtime_error("write failed: " + out_path);
    std::cout << "wrote " << grid.n_cells() << " cells to " << out_path << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// check suites
// ---------------------------------------------------------------------------

struct SuiteReport {
    int checks = 0;
    int failed = 0;

    void line(const std::string& name, bool ok, long trials, std::uint64_t seed,
              const std::string& extra = "") {
        ++checks;
        if (!ok) ++failed;
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << " (trials=" << trials
                  << " seed=" << seed << ")" << (extra.empty() ? "" : " " + extra) << "\n";
    }
};

void print_witness(const CertResult& r) {
    for (const Violation& v : r.violations) {
        std::cout << "       witness: " << v.quantity;
        if (!v.x1.empty()) {
            std::cout << " x1=(";
            for (std::size_t i = 0; i < v.x1.size(); ++i)
                std::cout << (i ? "," : "") << format_sig12(v.x1[i]);
            std::cout << ")";
        }
        if (!v.x2.empty()) {
            std::cout << " x2=(";
            for (std::size_t i = 0; i < v.x2.size(); ++i)
                std::cout << (i ? "," : "") << format_sig12(v.x2[i]);
            std::cout << ")";
        }
        std::cout << " lambda=" << format_sig12(v.lambda) << " miss=" << format_sig12(v.amount)
                  << "\n";
    }
}

void suite_functions(SuiteReport& rep, long trials, std::uint64_t seed) {
    for (const RefFunc id : {RefFunc::product, RefFunc::product_over_sum, RefFunc::recip_plus_root,
                             RefFunc::neg_recip_affine, RefFunc::coherent_sum}) {
        const CertResult r = certify_minor_pattern(FuncSpec::reference(id), trials, seed);
        rep.line("minor pattern: " + to_string(id), r.passed(), trials, seed,
                 r.passed() ? "" : "(" + to_string(r.verdict) + ")");
        if (!r.passed()) print_witness(r);
    }
}

void suite_curvature(SuiteReport& rep, long trials, std::uint64_t seed) {
    std::mt19937_64 g = trial_rng(seed, 0);
    double worst_rel = 0.0, worst_det = 0.0;
    for (long t = 0; t < trials; ++t) {
        const double a = uniform(g, 0.1, 10.0);
        const double b = uniform(g, 0.1, 10.0);
        const double rho = uniform(g, 0.1, 1.0);
        const ScalarFn f = [rho](std::span<const double> x) {
            return x[0] + x[1] + 2.0 * rho * std::sqrt(x[0] * x[1]);
        };
        const std::vector<double> x{a, b};
        const Matrix h = hessian_fd(f, x);
        const double expected = -(rho / 2.0) * (a * a + b * b) / std::pow(a * b, 1.5);
        worst_rel = std::max(worst_rel, std::abs((h(0, 0) + h(1, 1) - expected) / expected));
        const double det = h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0);
        const double norm_sq = h(0, 0) * h(0, 0) + 2.0 * h(0, 1) * h(0, 1) + h(1, 1) * h(1, 1);
        worst_det = std::max(worst_det, std::abs(det) / norm_sq);
    }
    rep.line("rank-1 curvature of the combined receive snr", worst_rel < 1e-4 && worst_det < 1e-6,
             trials, seed,
             "trace_err=" + format_sig12(worst_rel) + " det_ratio=" + format_sig12(worst_det));
}

void suite_logdet(SuiteReport& rep, long trials, std::uint64_t seed) {
    for (int dim = 1; dim <= 4; ++dim) {
        std::vector<int> minor;
        if (dim >= 2) minor.push_back(0);
        const CertResult r = logdet_ratio_concavity(dim, minor, trials, seed);
        rep.line("log-det ratio concavity, dim " + std::to_string(dim), r.passed(), trials, seed);
        if (!r.passed()) print_witness(r);
    }
}

void suite_mixture(SuiteReport& rep, long trials, std::uint64_t seed, const std::string& target) {
    for (const Claim& c : claim_list()) {
        if (!target.empty() && c.name != target) continue;
        if (target.empty() && c.expect_violation) continue;  // counterexample runs only on request
        const CertResult r = run_claim(c.name, trials, seed);
        rep.line(c.name, r.passed(), trials, seed,
                 r.passed() ? "" : "violations=" + std::to_string(r.violation_count));
        if (!r.passed()) print_witness(r);
    }
    if (!target.empty() && rep.checks == 0) throw config_error("--target", "unknown claim '" + target + "'");
}

void suite_compositions(SuiteReport& rep, long trials, std::uint64_t seed) {
    const CertResult r = composition_preservation_checks(trials, seed);
    rep.line("quasi-concavity-preserving compositions", r.passed(), trials, seed);
    if (!r.passed()) print_witness(r);
}

void suite_equivalence(SuiteReport& rep, long trials, std::uint64_t seed) {
    std::mt19937_64 g = trial_rng(seed, 0);
    double worst = 0.0;
    for (long t = 0; t < trials; ++t) {
        const int n = 1 + static_cast<int>(g() % 3);
        const double p_s = uniform(g, 0.1, 10.0), p_r = uniform(g, 0.1, 10.0);
        ChannelGains gains;
        gains.a_sr = uniform(g, 0.1, 2.0);
        SnrVector s;
        s.snr_sr = gains.a_sr * gains.a_sr * p_s;
        for (int j = 0; j < n; ++j) {
            gains.a_s.push_back(uniform(g, 0.1, 2.0));
            gains.a_r.push_back(uniform(g, 0.1, 2.0));
            s.snr_s.push_back(gains.a_s[j] * gains.a_s[j] * p_s);
            s.snr_r.push_back(gains.a_r[j] * gains.a_r[j] * p_r);
        }
        const double rho = uniform(g, 0.0, 1.0);
        for (RateMode mode : {RateMode::exact, RateMode::low_snr}) {
            const double a = rate_cs(Correlation(rho), s, mode).value;
            const double b =
                rate_cs_cov(CovMatrix2::from_rho(p_s, p_r, Correlation(rho)), gains, mode).value;
            worst = std::max(worst, std::abs(a - b));
        }
    }
    rep.line("cut-set dual-form equivalence", worst < 1e-9, trials, seed,
             "max|delta|=" + format_sig12(worst));
}

int cmd_check(const std::string& suite, const std::string& target, long trials, std::uint64_t seed) {
    SuiteReport rep;
    if (suite == "functions") {
        suite_functions(rep, trials, seed);
    } else if (suite == "curvature") {
        suite_curvature(rep, trials, seed);
    } else if (suite == "logdet") {
        suite_logdet(rep, trials, seed);
    } else if (suite == "mixture") {
        suite_mixture(rep, trials, seed, target);
    } else if (suite == "compositions") {
        suite_compositions(rep, trials, seed);
    } else if (suite == "equivalence-cs") {
        suite_equivalence(rep, trials, seed);
    } else if (suite == "all") {
        suite_functions(rep, trials, seed);
        suite_curvature(rep, trials, seed);
        suite_logdet(rep, trials, seed);
        suite_mixture(rep, trials, seed, "");
        suite_compositions(rep, trials, seed);
        suite_equivalence(rep, trials, seed);
    } else {
        throw config_error("suite", "expected one of functions, curvature, logdet, mixture, "
                                    "compositions, equivalence-cs, all");
    }
    std::cout << rep.checks - rep.failed << "/" << rep.checks << " checks passed\n";
    return rep.failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mrc-bounds: capacity bounds and relay placement for Gaussian multicast relay channels"};
    app.set_version_flag("--version", version);
    app.require_subcommand(1);

    CommonOpts rate_opts, opt_opts, sweep_opts;
    bool bits = false;
    std::string sweep_out;
    std::string check_suite = "all", check_target;
    long trials = 1000;
    std::uint64_t seed = 1;

    CLI::App* rate = app.add_subcommand("rate", "evaluate rate bounds for a fixed layout");
    add_common(rate, rate_opts, true);
    rate->add_flag("--bits", bits, "also print the value in bits/use");

    CLI::App* optimize = app.add_subcommand("optimize", "maximize a bound over the relay position");
    add_common(optimize, opt_opts, true);

    CLI::App* sweep = app.add_subcommand("sweep", "tabulate a bound over a relay-position grid");
    add_common(sweep, sweep_opts, true);
    sweep->add_option("--out", sweep_out, "output CSV path")->required();

    CLI::App* check = app.add_subcommand("check", "run numerical certification suites");
    check->add_option("suite", check_suite,
                      "functions | curvature | logdet | mixture | compositions | equivalence-cs | all");
    check->add_option("--target", check_target, "restrict the mixture suite to one claim");
    check->add_option("--trials", trials, "samples per certificate");
    check->add_option("--seed", seed, "base seed");

    CLI::App* preset_cmd = app.add_subcommand("preset", "built-in scenarios");
    CLI::App* preset_list = preset_cmd->add_subcommand("list", "list available presets");
    preset_cmd->require_subcommand(1);

    CLI11_PARSE(app, argc, argv);

    try {
        if (rate->parsed()) return cmd_rate(rate_opts, bits);
        if (optimize->parsed()) return cmd_optimize(opt_opts);
        if (sweep->parsed()) return cmd_sweep(sweep_opts, sweep_out);
        if (check->parsed()) return cmd_check(check_suite, check_target, trials, seed);
        if (preset_cmd->parsed() && preset_list->parsed()) {
            for (const auto& [name, text] : preset_descriptions())
                std::cout << name << "\n    " << text << "\n";
            return 0;
        }
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: I/O: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
