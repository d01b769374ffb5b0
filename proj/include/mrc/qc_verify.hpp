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
// Numerical certificates for concavity and quasi-concavity claims.
//
// Two kinds of evidence are produced. Minor-sign certificates compute a
// finite-difference bordered Hessian B(x) (gradient as first row/column,
// Hessian inside) and check the alternating pattern (-1)^k det B_k < 0 for
// k = 2..n+1 at sampled points; this is a sufficient condition on open
// convex domains, so a failed pattern never claims "not quasi-concave" by
// itself. Definition-based certificates sample mixture inequalities
// directly: f(lx1+(1-l)x2) >= min(f(x1), f(x2)) for quasi-concavity and
// >= l f(x1)+(1-l) f(x2) for concavity, reporting any violating triple.
//
// Everything is deterministic given (seed, trials): each trial draws from
// its own generator derived from the seed and trial index.

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mrc/linalg.hpp"
#include "mrc/rng.hpp"

namespace mrc {

using ScalarFn = std::function<double(std::span<const double>)>;

// Open per-coordinate sampling box; functions singular at zero get strictly
// positive bounds.
struct DomainBox {
    std::vector<double> lo;
    std::vector<double> hi;

    DomainBox(std::vector<double> l, std::vector<double> h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo.empty() || lo.size() != hi.size())
            throw std::invalid_argument("DomainBox: bounds empty or of different length");
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (!(lo[i] < hi[i])) throw std::invalid_argument("DomainBox: lower bound must be below upper");
    }

    int dim() const { return static_cast<int>(lo.size()); }

    bool interior(std::span<const double> x, std::span<const double> margin) const {
        if (static_cast<int>(x.size()) != dim()) return false;
        for (int i = 0; i < dim(); ++i)
            if (!(x[i] - margin[i] >= lo[i] && x[i] + margin[i] <= hi[i])) return false;
        return true;
    }

    std::vector<double> sample(std::mt19937_64& g) const {
        std::vector<double> x(lo.size());
        for (std::size_t i = 0; i < lo.size(); ++i) x[i] = uniform(g, lo[i], hi[i]);
        return x;
    }
};

namespace detail {
inline std::vector<double> fd_steps(std::span<const double> x, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("finite differences: step must be > 0");
    std::vector<double> h(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) h[i] = step * std::max(1.0, std::abs(x[i]));
    return h;
}
}  // namespace detail

// Central-difference Hessian, symmetrized as (H + H')/2. The per-coordinate
// step is step*max(1, |x_i|).
inline Matrix hessian_fd(const ScalarFn& f, std::span<const double> x, double step = 1e-4) {
    const int n = static_cast<int>(x.size());
    if (n < 1) throw std::invalid_argument("hessian_fd: empty point");
    const std::vector<double> h = detail::fd_steps(x, step);

    std::vector<double> p(x.begin(), x.end());
    const double f0 = f(p);
    Matrix hess(n, n);
    for (int i = 0; i < n; ++i) {
        p[i] = x[i] + h[i];
        const double fp = f(p);
        p[i] = x[i] - h[i];
        const double fm = f(p);
        p[i] = x[i];
        hess(i, i) = (fp - 2.0 * f0 + fm) / (h[i] * h[i]);
        for (int j = i + 1; j < n; ++j) {
            p[i] = x[i] + h[i];
            p[j] = x[j] + h[j];
            const double fpp = f(p);
            p[j] = x[j] - h[j];
            const double fpm = f(p);
            p[i] = x[i] - h[i];
            const double fmm = f(p);
            p[j] = x[j] + h[j];
            const double fmp = f(p);
            p[i] = x[i];
            p[j] = x[j];
            // the 4-point cross stencil is symmetric in (i, j), so writing
            // both triangles realizes (H + H')/2 exactly
            const double cross = (fpp - fpm - fmp + fmm) / (4.0 * h[i] * h[j]);
            hess(i, j) = cross;
            hess(j, i) = cross;
        }
    }
    return hess;
}

// Variant that enforces interiority of x by at least 2*step per coordinate.
inline Matrix hessian_fd(const ScalarFn& f, std::span<const double> x, double step,
                         const DomainBox& domain) {
    std::vector<double> h = detail::fd_steps(x, step);
    for (double& v : h) v *= 2.0;
    if (!domain.interior(x, h))
        throw std::invalid_argument("hessian_fd: point too close to the domain boundary");
    return hessian_fd(f, x, step);
}

// Bordered Hessian: first row/column carry the central-difference gradient,
// the remaining block is hessian_fd.
inline Matrix bordered_hessian(const ScalarFn& f, std::span<const double> x, double step = 1e-4) {
    const int n = static_cast<int>(x.size());
    if (n < 1) throw std::invalid_argument("bordered_hessian: empty point");
    const std::vector<double> h = detail::fd_steps(x, step);

    std::vector<double> p(x.begin(), x.end());
    std::vector<double> grad(n);
    for (int i = 0; i < n; ++i) {
        p[i] = x[i] + h[i];
        const double fp = f(p);
        p[i] = x[i] - h[i];
        const double fm = f(p);
        p[i] = x[i];
        grad[i] = (fp - fm) / (2.0 * h[i]);
    }
    const Matrix hess = hessian_fd(f, x, step);

    Matrix b(n + 1, n + 1);
    for (int i = 0; i < n; ++i) {
        b(0, i + 1) = grad[i];
        b(i + 1, 0) = grad[i];
        for (int j = 0; j < n; ++j) b(i + 1, j + 1) = hess(i, j);
    }
    return b;
}

enum class Verdict { pass, fail, indeterminate };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        default: return "indeterminate";
    }
}

struct Violation {
    std::vector<double> x1;
    std::vector<double> x2;  // empty for single-point findings
    double lambda = 0.0;
    std::string quantity;
    double amount = 0.0;  // by how much the checked inequality failed
};

struct MinorSign {
    int order = 0;   // k, using the k x k leading submatrix of B
    double value = 0.0;
};

struct CertResult {
    Verdict verdict = Verdict::pass;
    long trials = 0;
    long violation_count = 0;
    std::vector<Violation> violations;   // first few witnesses
    std::vector<MinorSign> minor_signs;  // minors at the last checked point

    bool passed() const { return verdict == Verdict::pass; }
};

namespace detail {
constexpr std::size_t kMaxStoredViolations = 8;

inline void record(CertResult& res, Violation v) {
    ++res.violation_count;
    if (res.violations.size() < kMaxStoredViolations) res.violations.push_back(std::move(v));
}
}  // namespace detail

// Alternating-sign test on the leading principal minors of a bordered
// Hessian: pass needs (-1)^k D_k < 0 strictly for k = 2..n+1. Minors below
// 1e-12 in magnitude cannot carry a trustworthy sign and yield an
// indeterminate verdict rather than a pass.
inline CertResult minor_sign_test(const Matrix& bordered) {
    if (bordered.rows() != bordered.cols() || bordered.rows() < 2)
        throw std::invalid_argument("minor_sign_test: bordered matrix must be square, order >= 2");
    CertResult res;
    res.trials = 1;
    bool wrong_sign = false, too_small = false;
    for (int k = 2; k <= bordered.rows(); ++k) {
        const double dk = bordered.leading(k).determinant();
        res.minor_signs.push_back({k, dk});
        if (std::abs(dk) < 1e-12)
            too_small = true;
        else if ((k % 2 == 0 && dk > 0.0) || (k % 2 == 1 && dk < 0.0))
            wrong_sign = true;
    }
    if (wrong_sign) {
        res.verdict = Verdict::fail;
        detail::record(res, {{}, {}, 0.0, "minor sign pattern", 0.0});
    } else if (too_small) {
        res.verdict = Verdict::indeterminate;
        detail::record(res, {{}, {}, 0.0, "minor magnitude below 1e-12", 0.0});
    }
    return res;
}

// ---------------------------------------------------------------------------
// Reference quasi-concave functions
// ---------------------------------------------------------------------------

// The five nonnegative-orthant functions whose bordered Hessians have the
// alternating minor pattern everywhere on their domains:
//   product:          a*b
//   product_over_sum: a*b / (a+b+k),            k > 0
//   recip_plus_root:  k1/a + 2*sqrt(k2*b/a),    k1, k2 > 0 (undefined at a = 0)
//   neg_recip_affine: -(1-b)*(k1 + k2/a),       k1, k2 > 0 (undefined at a = 0)
//   coherent_sum:     a + b + 2*sqrt(a*b*c)
enum class RefFunc { product, product_over_sum, recip_plus_root, neg_recip_affine, coherent_sum };

inline std::string to_string(RefFunc f) {
    switch (f) {
        case RefFunc::product: return "product";
        case RefFunc::product_over_sum: return "product_over_sum";
        case RefFunc::recip_plus_root: return "recip_plus_root";
        case RefFunc::neg_recip_affine: return "neg_recip_affine";
        default: return "coherent_sum";
    }
}

// A function under certification: the callable, its arity, the sampling box,
// and any constants it closes over.
struct FuncSpec {
    std::string name;
    int arity = 0;
    DomainBox domain;
    ScalarFn fn;

    static FuncSpec reference(RefFunc id, double k = 1.0, double k1 = 1.0, double k2 = 1.0) {
        // default sampling box (1e-2, 10]^n keeps finite differences clear of
        // the singular boundary at zero
        auto box = [](int n) {
            return DomainBox(std::vector<double>(n, 1e-2), std::vector<double>(n, 10.0));
        };
        switch (id) {
            case RefFunc::product:
                return {to_string(id), 2, box(2), [](std::span<const double> x) { return x[0] * x[1]; }};
            case RefFunc::product_over_sum:
                if (!(k > 0.0)) throw std::invalid_argument("product_over_sum: k must be > 0");
                return {to_string(id), 2, box(2),
                        [k](std::span<const double> x) { return x[0] * x[1] / (x[0] + x[1] + k); }};
            case RefFunc::recip_plus_root:
                if (!(k1 > 0.0) || !(k2 > 0.0))
                    throw std::invalid_argument("recip_plus_root: k1, k2 must be > 0");
                return {to_string(id), 2, box(2), [k1, k2](std::span<const double> x) {
                            return k1 / x[0] + 2.0 * std::sqrt(k2 * x[1] / x[0]);
                        }};
            case RefFunc::neg_recip_affine:
                if (!(k1 > 0.0) || !(k2 > 0.0))
                    throw std::invalid_argument("neg_recip_affine: k1, k2 must be > 0");
                // the gradient in a vanishes as b -> 1, so the sampling box
                // stays clear of that edge the same way it avoids a = 0
                return {to_string(id), 2,
                        DomainBox({1e-2, 0.0}, {10.0, 0.99}),
                        [k1, k2](std::span<const double> x) {
                            return -(1.0 - x[1]) * (k1 + k2 / x[0]);
                        }};
            default:
                return {to_string(id), 3, box(3), [](std::span<const double> x) {
                            return x[0] + x[1] + 2.0 * std::sqrt(x[0] * x[1] * x[2]);
                        }};
        }
    }
};

// Minor-sign certificate over sampled points: pass iff the pattern holds
// strictly at every sample.
inline CertResult certify_minor_pattern(const FuncSpec& spec, long trials, std::uint64_t seed,
                                        double step = 1e-4) {
    if (trials < 1) throw std::invalid_argument("certify_minor_pattern: trials must be >= 1");
    CertResult res;
    res.trials = trials;
    bool any_indeterminate = false;
    for (long t = 0; t < trials; ++t) {
        std::mt19937_64 g = trial_rng(seed, static_cast<std::uint64_t>(t));
        const std::vector<double> x = spec.domain.sample(g);
        const Matrix b = bordered_hessian(spec.fn, x, step);
        CertResult point = minor_sign_test(b);
        res.minor_signs = point.minor_signs;
        if (point.verdict == Verdict::fail) {
            detail::record(res, {x, {}, 0.0, spec.name + ": minor sign pattern", 0.0});
            res.verdict = Verdict::fail;
        } else if (point.verdict == Verdict::indeterminate) {
            detail::record(res, {x, {}, 0.0, spec.name + ": indeterminate minor", 0.0});
            any_indeterminate = true;
        }
    }
    if (res.verdict != Verdict::fail && any_indeterminate) res.verdict = Verdict::indeterminate;
    return res;
}

// ---------------------------------------------------------------------------
// Definition-based sampling certificates
// ---------------------------------------------------------------------------

// f(l x1 + (1-l) x2) >= min(f(x1), f(x2)) on random (x1, x2, l).
inline CertResult quasiconcavity_sample_test(const ScalarFn& f, const DomainBox& box, long trials,
                                             std::uint64_t seed, double tol) {
    if (trials < 1) throw std::invalid_argument("quasiconcavity_sample_test: trials must be >= 1");
    if (!(tol >= 0.0)) throw std::invalid_argument("quasiconcavity_sample_test: tol must be >= 0");
    CertResult res;
    res.trials = trials;
    std::vector<double> mix(box.dim());
    for (long t = 0; t < trials; ++t) {
        std::mt19937_64 g = trial_rng(seed, static_cast<std::uint64_t>(t));
        const std::vector<double> x1 = box.sample(g);
        const std::vector<double> x2 = box.sample(g);
        const double lambda = uniform(g, 0.0, 1.0);
        for (int i = 0; i < box.dim(); ++i) mix[i] = lambda * x1[i] + (1.0 - lambda) * x2[i];
        const double bound = std::min(f(x1), f(x2));
        const double got = f(mix);
        if (got < bound - tol) {
            res.verdict = Verdict::fail;
            detail::record(res, {x1, x2, lambda, "quasi-concavity mixture", bound - got});
        }
    }
    return res;
}

// f(l x1 + (1-l) x2) >= l f(x1) + (1-l) f(x2) on random (x1, x2, l).
inline CertResult concavity_sample_test(const ScalarFn& f, const DomainBox& box, long trials,
                                        std::uint64_t seed, double tol) {
    if (trials < 1) throw std::invalid_argument("concavity_sample_test: trials must be >= 1");
    if (!(tol >= 0.0)) throw std::invalid_argument("concavity_sample_test: tol must be >= 0");
    CertResult res;
    res.trials = trials;
    std::vector<double> mix(box.dim());
    for (long t = 0; t < trials; ++t) {
        std::mt19937_64 g = trial_rng(seed, static_cast<std::uint64_t>(t));
        const std::vector<double> x1 = box.sample(g);
        const std::vector<double> x2 = box.sample(g);
        const double lambda = uniform(g, 0.0, 1.0);
        for (int i = 0; i < box.dim(); ++i) mix[i] = lambda * x1[i] + (1.0 - lambda) * x2[i];
        const double bound = lambda * f(x1) + (1.0 - lambda) * f(x2);
        const double got = f(mix);
        if (got < bound - tol) {
            res.verdict = Verdict::fail;
            detail::record(res, {x1, x2, lambda, "concavity mixture", bound - got});
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// log det Q / det Q* concavity
// ---------------------------------------------------------------------------

inline Matrix random_spd(int dim, std::mt19937_64& g) {
    Matrix a(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) a(i, j) = uniform(g, -1.0, 1.0);
    Matrix q = multiply(a, a.transposed());
    for (int i = 0; i < dim; ++i) q(i, i) += 0.1;
    return q;
}

// Concavity of Q -> log(det Q / det Q*) over random positive-definite pairs,
// where Q* is the principal submatrix on a fixed index set (empty set means
// det Q* = 1).
inline CertResult logdet_ratio_concavity(int dim, const std::vector<int>& minor_idx, long trials,
                                         std::uint64_t seed, double tol = 1e-9) {
    if (dim < 1 || dim > 4) throw std::invalid_argument("logdet_ratio_concavity: dim must be in 1..4");
    for (std::size_t i = 0; i < minor_idx.size(); ++i) {
        if (minor_idx[i] < 0 || minor_idx[i] >= dim)
            throw std::invalid_argument("logdet_ratio_concavity: minor index out of range");
        if (i > 0 && minor_idx[i] <= minor_idx[i - 1])
            throw std::invalid_argument("logdet_ratio_concavity: minor indices must be increasing");
    }

    auto f = [&](const Matrix& q) {
        const double dq = q.determinant();
        const double dm = minor_idx.empty() ? 1.0 : q.principal(minor_idx).determinant();
        return std::log(dq) - std::log(dm);
    };

    CertResult res;
    res.trials = trials;
    for (long t = 0; t < trials; ++t) {
        std::mt19937_64 g = trial_rng(seed, static_cast<std::uint64_t>(t));
        const Matrix q1 = random_spd(dim, g);
        const Matrix q2 = random_spd(dim, g);
        const double lambda = uniform(g, 0.0, 1.0);
        const Matrix qm = add(scaled(q1, lambda), scaled(q2, 1.0 - lambda));
        const double bound = lambda * f(q1) + (1.0 - lambda) * f(q2);
        const double got = f(qm);
        if (got < bound - tol) {
            res.verdict = Verdict::fail;
            detail::record(res, {{}, {}, lambda, "log-det ratio concavity mixture", bound - got});
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// Quasi-concavity-preserving compositions
// ---------------------------------------------------------------------------

// Builds one instance of each composition rule from known quasi-concave
// bases and certifies the result by sampling:
//   1. nonnegative affine rescale   k1*f + k2
//   2. min of several
//   3. nondecreasing outer function g(f(.))
//   4. supremum over a convex parameter set
//   5. f(g(a), b) with g convex and f non-increasing in its first argument
inline CertResult composition_preservation_checks(long trials, std::uint64_t seed, double tol = 1e-9) {
    auto tent = [](double x) { return std::min(x, 2.0 - x); };

    struct Instance {
        std::string name;
        DomainBox box;
        ScalarFn fn;
    };

    const std::vector<Instance> instances = {
        {"affine rescale of a tent",
         DomainBox({0.0}, {2.0}),
         [tent](std::span<const double> x) { return 3.0 * tent(x[0]) + 1.0; }},
        {"min of two tents",
         DomainBox({0.0}, {2.0}),
         [tent](std::span<const double> x) { return std::min(tent(x[0]), std::min(1.5 * x[0], 1.8 - 0.9 * x[0])); }},
        {"capacity of the combined receive SNR",
         DomainBox({0.0, 0.0}, {10.0, 10.0}),
         [](std::span<const double> x) {
             // concave in the SNR pair at fixed rho, nondecreasing outer log
             const double rho = 0.7;
             const double f = x[0] + x[1] + 2.0 * rho * std::sqrt(x[0] * x[1]);
             return 0.5 * std::log1p(f);
         }},
        {"supremum over a convex parameter box",
         DomainBox({0.0}, {2.0}),
         [](std::span<const double> x) {
             double best = -1e300;
             for (int i = 0; i <= 1000; ++i) {
                 const double b = 2.0 * i / 1000.0;
                 best = std::max(best, std::min({x[0], 2.0 - x[0], b + 0.5, 2.5 - b}));
             }
             return best;
         }},
        {"decreasing function of a convex distance power",
         DomainBox({-3.0, 0.0}, {3.0, 2.0}),
         [tent](std::span<const double> x) {
             const double u = x[0] * x[0];  // convex in the position coordinate
             return std::min(12.0 / (1.0 + u), 6.0 * tent(x[1]));
         }},
    };

    CertResult res;
    res.trials = 0;
    for (const Instance& inst : instances) {
        const CertResult one =
            quasiconcavity_sample_test(inst.fn, inst.box, trials, splitmix64(seed) ^ res.trials, tol);
        res.trials += one.trials;
        if (!one.passed()) {
            res.verdict = Verdict::fail;
            for (const Violation& v : one.violations) {
                Violation tagged = v;
                tagged.quantity = inst.name + ": " + v.quantity;
                detail::record(res, std::move(tagged));
            }
            res.violation_count += one.violation_count - one.violations.size();
        }
    }
    return res;
}

}  // namespace mrc
