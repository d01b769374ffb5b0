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
// Maximization of the rate bounds over the correlation coefficient and the
// relay position. Concavity in rho makes a golden-section search exact for
// the inner problem; quasi-concavity in the relay position (single basin)
// justifies a coarse grid followed by one downhill-simplex refinement. The
// objectives contain min() kinks, so derivative-free methods are used
// throughout. Only the coherent cut-set over the position, whose
// quasi-concavity is unproven, gets a multistart treatment.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mrc/geometry.hpp"
#include "mrc/rates.hpp"
#include "mrc/rng.hpp"

namespace mrc {

// Axis-aligned search region for the relay position.
struct SearchBox {
    std::vector<double> lower;
    std::vector<double> upper;

    SearchBox(std::vector<double> lo, std::vector<double> hi)
        : lower(std::move(lo)), upper(std::move(hi)) {
        if (lower.empty() || lower.size() > 3 || lower.size() != upper.size())
            throw std::invalid_argument("SearchBox: dimension must be 1, 2, or 3");
        for (std::size_t i = 0; i < lower.size(); ++i)
            if (!(lower[i] < upper[i]))
                throw std::invalid_argument("SearchBox: lower bound must be below upper bound");
    }

    int dim() const { return static_cast<int>(lower.size()); }

    double diagonal() const {
        double sq = 0.0;
        for (std::size_t i = 0; i < lower.size(); ++i) {
            const double d = upper[i] - lower[i];
            sq += d * d;
        }
        return std::sqrt(sq);
    }

    bool contains(std::span<const double> x) const {
        if (static_cast<int>(x.size()) != dim()) return false;
        for (std::size_t i = 0; i < lower.size(); ++i)
            if (!(x[i] >= lower[i] && x[i] <= upper[i])) return false;
        return true;
    }
};

struct OptResult {
    std::vector<double> argmax;
    double value = 0.0;
    long evaluations = 0;
    double achieved_tol = 0.0;
    std::vector<OptResult> starts;  // filled only by multistart searches
};

// ---------------------------------------------------------------------------
// 1-D golden-section maximization
// ---------------------------------------------------------------------------

template <typename F>
OptResult golden_section_max(F&& f, double lo, double hi, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("golden_section_max: tol must be > 0");
    if (!(lo < hi)) throw std::invalid_argument("golden_section_max: empty interval");

    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - (b - a) * invphi;
    double d = a + (b - a) * invphi;
    double fc = f(c), fd = f(d);
    long evals = 2;

    while (b - a > tol && evals < 10000) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * invphi;
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * invphi;
            fd = f(d);
        }
        ++evals;
    }

    // Endpoints are never probed by the section steps; a boundary maximum is
    // common here (rho* = 0), so compare them explicitly.
    const double flo = f(lo), fhi = f(hi);
    evals += 2;

    double bx = c, bf = fc;
    if (fd > bf) { bx = d; bf = fd; }
    if (flo >= bf) { bx = lo; bf = flo; }
    if (fhi > bf) { bx = hi; bf = fhi; }

    OptResult res;
    res.argmax = {bx};
    res.value = bf;
    res.evaluations = evals;
    res.achieved_tol = b - a;
    return res;
}

enum class RhoObjective { cut_set, decode_forward };

// Best correlation coefficient for the cut-set or decode-forward bound.
// Both bounds are concave in rho, so the section search is globally exact.
inline OptResult maximize_rho(RhoObjective which, const SnrVector& s, RateMode mode, double tol) {
    s.validate();
    auto objective = [&](double rho) {
        const Correlation c(rho);
        const RateReport rep =
            which == RhoObjective::cut_set ? rate_cs(c, s, mode) : rate_df(c, s, mode);
        if (!std::isfinite(rep.value)) throw std::domain_error("maximize_rho: objective is not finite");
        return rep.value;
    };
    return golden_section_max(objective, 0.0, 1.0, tol);
}

// ---------------------------------------------------------------------------
// Downhill-simplex maximization
// ---------------------------------------------------------------------------

namespace detail {

inline double simplex_diameter(const std::vector<std::vector<double>>& xs) {
    double diam = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
            double sq = 0.0;
            for (std::size_t k = 0; k < xs[i].size(); ++k) {
                const double d = xs[i][k] - xs[j][k];
                sq += d * d;
            }
            diam = std::max(diam, std::sqrt(sq));
        }
    return diam;
}

}  // namespace detail

// Nelder-Mead on an explicit starting simplex. Infeasible points are
// expected to evaluate to -infinity; the simplex retreats from them.
template <typename F>
OptResult nelder_mead_max(F&& f, std::vector<std::vector<double>> simplex, double tol,
                          long max_evals) {
    const int n = static_cast<int>(simplex.empty() ? 0 : simplex[0].size());
    if (n < 1 || simplex.size() != static_cast<std::size_t>(n) + 1)
        throw std::invalid_argument("nelder_mead_max: need n+1 vertices of dimension n");
    if (!(tol > 0.0)) throw std::invalid_argument("nelder_mead_max: tol must be > 0");

    std::vector<double> fx(simplex.size());
    long evals = 0;
    for (std::size_t i = 0; i < simplex.size(); ++i) {
        fx[i] = f(simplex[i]);
        ++evals;
    }

    std::vector<int> order(simplex.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> centroid(n), xr(n), xe(n), xc(n);

    double diam = detail::simplex_diameter(simplex);
    while (diam > tol && evals < max_evals) {
        std::sort(order.begin(), order.end(), [&](int a, int b) { return fx[a] > fx[b]; });
        const int best = order[0], worst = order[n], second_worst = order[n - 1];

        for (int j = 0; j < n; ++j) centroid[j] = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) centroid[j] += simplex[order[i]][j] / n;

        for (int j = 0; j < n; ++j) xr[j] = centroid[j] + (centroid[j] - simplex[worst][j]);
        const double fr = f(xr);
        ++evals;

        if (fr > fx[best]) {
            for (int j = 0; j < n; ++j) xe[j] = centroid[j] + 2.0 * (xr[j] - centroid[j]);
            const double fe = f(xe);
            ++evals;
            if (fe > fr) {
                simplex[worst] = xe;
                fx[worst] = fe;
            } else {
                simplex[worst] = xr;
                fx[worst] = fr;
            }
        } else if (fr > fx[second_worst]) {
            simplex[worst] = xr;
            fx[worst] = fr;
        } else {
            const bool outside = fr > fx[worst];
            const std::vector<double>& toward = outside ? xr : simplex[worst];
            for (int j = 0; j < n; ++j) xc[j] = centroid[j] + 0.5 * (toward[j] - centroid[j]);
            const double fcv = f(xc);
            ++evals;
            if (fcv > (outside ? fr : fx[worst])) {
                simplex[worst] = xc;
                fx[worst] = fcv;
            } else {
                // shrink toward the best vertex
                for (std::size_t i = 0; i < simplex.size(); ++i) {
                    if (static_cast<int>(i) == best) continue;
                    for (int j = 0; j < n; ++j)
                        simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
                    fx[i] = f(simplex[i]);
                    ++evals;
                }
            }
        }
        diam = detail::simplex_diameter(simplex);
    }

    int best = 0;
    for (std::size_t i = 1; i < simplex.size(); ++i)
        if (fx[i] > fx[best]) best = static_cast<int>(i);

    OptResult res;
    res.argmax = simplex[best];
    res.value = fx[best];
    res.evaluations = evals;
    res.achieved_tol = diam;
    return res;
}

// ---------------------------------------------------------------------------
// Relay placement
// ---------------------------------------------------------------------------

// Fixed terminals of a network: the source and the destinations. The relay
// position is the optimization variable.
struct Terminals {
    Position source;
    std::vector<Position> destinations;

    Terminals(Position src, std::vector<Position> dests)
        : source(src), destinations(std::move(dests)) {
        if (destinations.empty()) throw std::invalid_argument("Terminals: at least one destination required");
        for (const Position& d : destinations)
            if (d.dim() != source.dim())
                throw std::invalid_argument("Terminals: destination dimension differs from source");
    }

    int dim() const { return source.dim(); }
    int n_dest() const { return static_cast<int>(destinations.size()); }

    NodeLayout with_relay(const Position& relay) const { return NodeLayout(source, relay, destinations); }
};

enum class RelayBound {
    df_coherent,     // decode-forward, rho maximized per position
    df_noncoherent,  // decode-forward at rho = 0
    cs_fixed_rho,    // cut-set at a fixed rho
    cs_coherent,     // cut-set, rho maximized (quasi-concavity unproven)
    two_hop,
    rdf,
};

inline std::string to_string(RelayBound b) {
    switch (b) {
        case RelayBound::df_coherent: return "df_coherent";
        case RelayBound::df_noncoherent: return "df_noncoherent";
        case RelayBound::cs_fixed_rho: return "cs_fixed_rho";
        case RelayBound::cs_coherent: return "cs_coherent";
        case RelayBound::two_hop: return "two_hop";
        default: return "rdf";
    }
}

struct RelayOptOptions {
    std::vector<int> grid_resolution;  // per axis; empty selects a default
    double margin_scale = 1e-3;        // keep-out radius around nodes, times box diagonal
    double tol = 1e-6;                 // simplex diameter stopping threshold
    long max_evals = 10000;
    double fixed_rho = 0.0;  // used by cs_fixed_rho
    double rho_tol = 1e-9;   // inner search width for the coherent bounds
    int multistart = 5;      // top-k grid cells to refine for cs_coherent
};

namespace detail {

inline void check_relay_mode(RelayBound bound, RateMode mode) {
    if ((bound == RelayBound::two_hop || bound == RelayBound::rdf) && mode != RateMode::low_snr)
        throw std::invalid_argument("relay objective: two_hop and rdf are low-SNR-only bounds");
}

// Rate value for one relay position; throws on singular placements.
inline double relay_rate(RelayBound bound, const Terminals& t, const ChannelParams& params,
                         std::span<const double> r, RateMode mode, const RelayOptOptions& opt) {
    const NodeLayout layout = t.with_relay(Position(r));
    switch (bound) {
        case RelayBound::df_noncoherent:
            return rate_df(Correlation(0.0), snr_vector(layout, params), mode).value;
        case RelayBound::df_coherent:
            return maximize_rho(RhoObjective::decode_forward, snr_vector(layout, params), mode, opt.rho_tol)
                .value;
        case RelayBound::cs_fixed_rho:
            return rate_cs(Correlation(opt.fixed_rho), snr_vector(layout, params), mode).value;
        case RelayBound::cs_coherent:
            return maximize_rho(RhoObjective::cut_set, snr_vector(layout, params), mode, opt.rho_tol).value;
        case RelayBound::two_hop:
            return rate_2h(layout, params).value;
        default:
            return rate_rdf(layout, params).value;
    }
}

inline std::vector<int> default_resolution(int dim) {
    switch (dim) {
        case 1: return {1001};
        case 2: return {51, 51};
        default: return {17, 17, 17};
    }
}

}  // namespace detail

// Two-stage relay placement: a uniform coarse grid picks the basin, a
// downhill simplex refines it. For the coherent cut-set the search restarts
// from the top-k grid cells and reports every basin found.
inline OptResult optimize_relay(RelayBound bound, const Terminals& terminals,
                                const ChannelParams& params, const SearchBox& box, RateMode mode,
                                const RelayOptOptions& options = {}) {
    detail::check_relay_mode(bound, mode);
    if (box.dim() != terminals.dim())
        throw std::invalid_argument("optimize_relay: box dimension differs from layout");
    if (bound == RelayBound::rdf && terminals.n_dest() != 1)
        throw std::invalid_argument("optimize_relay: rdf supports exactly one destination");

    std::vector<int> res = options.grid_resolution.empty() ? detail::default_resolution(box.dim())
                                                           : options.grid_resolution;
    if (static_cast<int>(res.size()) != box.dim())
        throw std::invalid_argument("optimize_relay: resolution length differs from box dimension");
    for (int r : res)
        if (r < 2) throw std::invalid_argument("optimize_relay: resolution must be >= 2 per axis");

    const double margin = options.margin_scale * box.diagonal();
    if (!(margin > 0.0)) throw std::invalid_argument("optimize_relay: margin must be > 0");

    auto near_node = [&](std::span<const double> x) {
        const Position p{x};
        if (distance(p, terminals.source) < margin) return true;
        for (const Position& d : terminals.destinations)
            if (distance(p, d) < margin) return true;
        return false;
    };

    long evals = 0;
    auto objective = [&](std::span<const double> x) {
        if (!box.contains(x) || near_node(x)) return -std::numeric_limits<double>::infinity();
        ++evals;
        try {
            return detail::relay_rate(bound, terminals, params, x, mode, options);
        } catch (const singularity_error&) {
            return -std::numeric_limits<double>::infinity();
        }
    };

    // coarse grid
    const int dim = box.dim();
    long cells = 1;
    for (int r : res) cells *= r;

    auto cell_position = [&](long flat) {
        std::vector<double> p(dim);
        long rem = flat;
        for (int a = dim - 1; a >= 0; --a) {
            const int k = static_cast<int>(rem % res[a]);
            rem /= res[a];
            const double c =
                box.lower[a] + (box.upper[a] - box.lower[a]) * (static_cast<double>(k) / (res[a] - 1));
            p[a] = std::clamp(c, box.lower[a], box.upper[a]);
        }
        return p;
    };

    std::vector<std::pair<double, long>> scored;  // (value, flat index), valid cells only
    for (long flat = 0; flat < cells; ++flat) {
        const double v = objective(cell_position(flat));
        if (std::isfinite(v)) scored.emplace_back(v, flat);
    }
    if (scored.empty())
        throw std::domain_error("optimize_relay: no feasible grid cell (box empty after node margins)");

    const int starts = bound == RelayBound::cs_coherent
                           ? std::min<int>(options.multistart, static_cast<int>(scored.size()))
                           : 1;
    std::partial_sort(scored.begin(), scored.begin() + starts, scored.end(),
                      [](const auto& a, const auto& b) {
                          return a.first != b.first ? a.first > b.first : a.second < b.second;
                      });

    auto refine = [&](long flat) {
        const std::vector<double> x0 = cell_position(flat);
        std::vector<std::vector<double>> simplex{x0};
        for (int a = 0; a < dim; ++a) {
            const double step = (box.upper[a] - box.lower[a]) / (res[a] - 1);
            std::vector<double> v = x0;
            v[a] += (v[a] + step <= box.upper[a]) ? step : -step;
            simplex.push_back(std::move(v));
        }
        auto fn = [&](const std::vector<double>& p) { return objective(p); };
        return nelder_mead_max(fn, std::move(simplex), options.tol, options.max_evals);
    };

    std::vector<OptResult> basins;
    basins.reserve(starts);
    for (int i = 0; i < starts; ++i) basins.push_back(refine(scored[i].second));

    int best = 0;
    for (int i = 1; i < starts; ++i)
        if (basins[i].value > basins[best].value) best = i;

    OptResult out = basins[best];
    out.evaluations = evals;
    if (starts > 1) out.starts = std::move(basins);
    return out;
}

// ---------------------------------------------------------------------------
// Grid sweeps
// ---------------------------------------------------------------------------

// Values of a bound over a uniform grid of relay positions, row-major with
// the last axis fastest. Singular cells (relay on a node) carry ok = 0.
struct SweepGrid {
    SearchBox box;
    std::vector<int> resolution;
    std::vector<double> value;
    std::vector<std::uint8_t> ok;

    int dim() const { return box.dim(); }

    long n_cells() const {
        long n = 1;
        for (int r : resolution) n *= r;
        return n;
    }

    double coord(int axis, int k) const {
        const double c = box.lower[axis] + (box.upper[axis] - box.lower[axis]) *
                                               (static_cast<double>(k) / (resolution[axis] - 1));
        return std::clamp(c, box.lower[axis], box.upper[axis]);
    }

    std::vector<int> cell_index(long flat) const {
        std::vector<int> idx(dim());
        for (int a = dim() - 1; a >= 0; --a) {
            idx[a] = static_cast<int>(flat % resolution[a]);
            flat /= resolution[a];
        }
        return idx;
    }

    long flat_index(std::span<const int> idx) const {
        long flat = 0;
        for (int a = 0; a < dim(); ++a) flat = flat * resolution[a] + idx[a];
        return flat;
    }

    std::vector<double> cell_position(long flat) const {
        const std::vector<int> idx = cell_index(flat);
        std::vector<double> p(dim());
        for (int a = 0; a < dim(); ++a) p[a] = coord(a, idx[a]);
        return p;
    }
};

// Tabulate an arbitrary function on a grid (used by the probes and tests).
template <typename F>
SweepGrid tabulate_grid(const SearchBox& box, std::vector<int> resolution, F&& f) {
    if (static_cast<int>(resolution.size()) != box.dim())
        throw std::invalid_argument("tabulate_grid: resolution length differs from box dimension");
    for (int r : resolution)
        if (r < 2) throw std::invalid_argument("tabulate_grid: resolution must be >= 2 per axis");

    SweepGrid grid{box, std::move(resolution), {}, {}};
    const long cells = grid.n_cells();
    grid.value.assign(cells, std::numeric_limits<double>::quiet_NaN());
    grid.ok.assign(cells, 0);
    for (long flat = 0; flat < cells; ++flat) {
        const std::vector<double> p = grid.cell_position(flat);
        try {
            grid.value[flat] = f(std::span<const double>(p));
            grid.ok[flat] = 1;
        } catch (const singularity_error&) {
            // leave the cell flagged invalid
        }
    }
    return grid;
}

// Deterministic sweep of a rate bound over relay positions. Each cell is
// evaluated independently; singular cells are flagged, never interpolated.
inline SweepGrid sweep_grid(RelayBound bound, const Terminals& terminals, const ChannelParams& params,
                            const SearchBox& box, std::vector<int> resolution, RateMode mode,
                            const RelayOptOptions& options = {}) {
    detail::check_relay_mode(bound, mode);
    if (box.dim() != terminals.dim())
        throw std::invalid_argument("sweep_grid: box dimension differs from layout");
    if (bound == RelayBound::rdf && terminals.n_dest() != 1)
        throw std::invalid_argument("sweep_grid: rdf supports exactly one destination");
    return tabulate_grid(box, std::move(resolution), [&](std::span<const double> r) {
        return detail::relay_rate(bound, terminals, params, r, mode, options);
    });
}

// ---------------------------------------------------------------------------
// Superlevel-set convexity probe
// ---------------------------------------------------------------------------

struct ProbeWitness {
    long cell_lo = 0, cell_mid = 0, cell_hi = 0;  // flat grid indices
    double value_lo = 0.0, value_mid = 0.0, value_hi = 0.0;
};

struct ProbeResult {
    bool pass = true;
    std::optional<ProbeWitness> witness;
    long lines_checked = 0;
};

namespace detail {

// A violation is a valid cell strictly below the level that lies strictly
// between two cells at or above it. Invalid cells are not witnesses and do
// not belong to the superlevel set.
inline bool line_violation(const SweepGrid& g, const std::vector<long>& line, double level,
                           double slack, ProbeWitness& w) {
    long prev_hi = -1;  // most recent cell with value >= level
    long pending_mid = -1;
    double pending_val = 0.0;
    for (long flat : line) {
        if (!g.ok[flat]) continue;
        const double v = g.value[flat];
        if (v >= level) {
            if (prev_hi >= 0 && pending_mid >= 0) {
                w = {prev_hi, pending_mid, flat, g.value[prev_hi], pending_val, v};
                return true;
            }
            prev_hi = flat;
            pending_mid = -1;
        } else if (prev_hi >= 0 && v < level - slack && pending_mid < 0) {
            pending_mid = flat;
            pending_val = v;
        }
    }
    return false;
}

}  // namespace detail

// Check that {cell : value >= level} is contiguous along every axis-aligned
// grid line and along sampled lattice-direction lines (exact restrictions of
// the grid to straight lines). Returns the first violating triple found.
inline ProbeResult superlevel_convexity_probe(const SweepGrid& grid, double level,
                                              int random_lines = 64, std::uint64_t seed = 1) {
    const int dim = grid.dim();
    const double slack = 1e-12 * std::max(1.0, std::abs(level));
    ProbeResult res;
    ProbeWitness w;

    // axis-aligned lines
    for (int axis = 0; axis < dim; ++axis) {
        long others = 1;
        for (int a = 0; a < dim; ++a)
            if (a != axis) others *= grid.resolution[a];
        for (long o = 0; o < others; ++o) {
            std::vector<int> idx(dim, 0);
            long rem = o;
            for (int a = dim - 1; a >= 0; --a) {
                if (a == axis) continue;
                idx[a] = static_cast<int>(rem % grid.resolution[a]);
                rem /= grid.resolution[a];
            }
            std::vector<long> line;
            line.reserve(grid.resolution[axis]);
            for (int k = 0; k < grid.resolution[axis]; ++k) {
                idx[axis] = k;
                line.push_back(grid.flat_index(idx));
            }
            ++res.lines_checked;
            if (detail::line_violation(grid, line, level, slack, w)) {
                res.pass = false;
                res.witness = w;
                return res;
            }
        }
    }

    // lattice-direction lines: integer step vectors pass exactly through grid
    // cells, so the samples are true 1-D restrictions
    if (dim >= 2 && random_lines > 0) {
        std::mt19937_64 rng(splitmix64(seed));
        for (int t = 0; t < random_lines; ++t) {
            std::vector<int> step(dim, 0);
            int nonzero = 0;
            for (int a = 0; a < dim; ++a) {
                step[a] = static_cast<int>(rng() % 5) - 2;  // in {-2..2}
                if (step[a] != 0) ++nonzero;
            }
            if (nonzero < 2) continue;  // zero or axis-parallel, already covered

            std::vector<int> base(dim);
            for (int a = 0; a < dim; ++a) base[a] = static_cast<int>(rng() % grid.resolution[a]);

            // walk to the most negative in-bounds multiple, then forward
            auto in_bounds = [&](const std::vector<int>& p) {
                for (int a = 0; a < dim; ++a)
                    if (p[a] < 0 || p[a] >= grid.resolution[a]) return false;
                return true;
            };
            std::vector<int> start = base;
            while (true) {
                std::vector<int> prev = start;
                for (int a = 0; a < dim; ++a) prev[a] -= step[a];
                if (!in_bounds(prev)) break;
                start = prev;
            }
            std::vector<long> line;
            std::vector<int> p = start;
            while (in_bounds(p)) {
                line.push_back(grid.flat_index(p));
                for (int a = 0; a < dim; ++a) p[a] += step[a];
            }
            if (line.size() < 3) continue;

            ++res.lines_checked;
            if (detail::line_violation(grid, line, level, slack, w)) {
                res.pass = false;
                res.witness = w;
                return res;
            }
        }
    }

    return res;
}

}  // namespace mrc
