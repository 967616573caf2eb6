#pragma once

/**
 * @file numeric.hpp
 * @brief Floating-point check of the restrictive property.
 *
 * From a base point z0, solve P(z0, w) = 0 for the fiber [w_1 .. w_{d_z}],
 * then solve P(z, w_k) = 0 for every k. P is restrictive when all those
 * z-lists coincide as multisets; the mirrored check starts from w0.
 */

#include "assignment.hpp"
#include "poly.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace rescorr {

using ComplexF = std::complex<double>;

class ZeroPolynomial : public std::invalid_argument {
public:
    ZeroPolynomial() : std::invalid_argument("root finding on the zero polynomial") {}
};

struct RootResult {
    std::vector<ComplexF> roots;
    bool converged = true;
    std::size_t nominal_degree = 0; // before trimming small leading coefficients
    std::size_t degree = 0;         // after trimming
    int iterations = 0;

    bool degree_dropped() const { return degree < nominal_degree; }
};

inline ComplexF to_complex(const GaussianRational& c) { return {c.re().get_d(), c.im().get_d()}; }

inline std::vector<ComplexF> to_complex(const UniPoly& p) {
    std::vector<ComplexF> out;
    out.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) out.push_back(to_complex(c));
    return out;
}

namespace detail {

struct HornerEval {
    ComplexF value;
    ComplexF deriv;
    double abs_bound; // sum |a_k| |z|^k
};

inline HornerEval horner(std::span<const ComplexF> a, ComplexF z) {
    ComplexF p = a.back(), dp = 0.0;
    double bound = std::abs(a.back());
    const double az = std::abs(z);
    for (std::size_t k = a.size() - 1; k-- > 0;) {
        dp = dp * z + p;
        p = p * z + a[k];
        bound = bound * az + std::abs(a[k]);
    }
    return {p, dp, bound};
}

inline std::vector<ComplexF> derivative(std::span<const ComplexF> a) {
    std::vector<ComplexF> out;
    for (std::size_t k = 1; k < a.size(); ++k) out.push_back(a[k] * static_cast<double>(k));
    return out;
}

/// Taylor coefficients of p at z: b_k = p^(k)(z) / k!.
inline std::vector<ComplexF> taylor_shift(std::span<const ComplexF> a, ComplexF z) {
    std::vector<ComplexF> b(a.begin(), a.end());
    const std::size_t n = b.size();
    for (std::size_t k = 0; k + 1 < n; ++k)
        for (std::size_t r = n - 1; r-- > k;) b[r] += z * b[r + 1];
    return b;
}

/**
 * Replaces each cluster of approximations by a common refined value: the
 * centroid, polished by Newton on p^{(m-1)} where m is the cluster size.
 * Two approximations share a cluster when their pseudozero discs overlap,
 *   radius_i = min_k ((|p(z_i)| + eta sum|a_r||z_i|^r) / |p^(k)(z_i) / k!|)^(1/k),
 * i.e. they cannot be told apart under a relative coefficient perturbation
 * of size eta. Members of an m-fold cluster of spread s <= eta^(1/m) get
 * radius >= s, while a simple root gets about eta times its condition number.
 * Cluster members are kept, so the multiset length is unchanged.
 */
inline void refine_clusters(std::span<const ComplexF> a, std::vector<ComplexF>& z, double eta) {
    const std::size_t n = z.size();
    if (n < 2) return;
    const double u = std::numeric_limits<double>::epsilon();
    std::vector<double> radius(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto b = taylor_shift(a, z[i]);
        double bound = 0.0;
        for (std::size_t r = a.size(); r-- > 0;) bound = bound * std::abs(z[i]) + std::abs(a[r]);
        const double slack = std::abs(b[0]) + eta * bound;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t k = 1; k < b.size(); ++k)
            if (std::abs(b[k]) > 0) best = std::min(best, std::pow(slack / std::abs(b[k]), 1.0 / static_cast<double>(k)));
        radius[i] = std::max(best, 16 * u * std::max(1.0, std::abs(z[i])));
    }
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(z[i] - z[j]) <= radius[i] + radius[j]) parent[find(i)] = find(j);

    std::vector<std::vector<std::size_t>> groups(n);
    for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);
    for (const auto& g : groups) {
        if (g.size() < 2) continue;
        ComplexF centre = 0.0;
        double spread = 0.0;
        for (auto i : g) centre += z[i];
        centre /= static_cast<double>(g.size());
        for (auto i : g) spread = std::max(spread, std::abs(z[i] - centre) + radius[i]);

        std::vector<ComplexF> d(a.begin(), a.end());
        for (std::size_t m = 1; m < g.size() && d.size() > 1; ++m) d = derivative(d);
        ComplexF polished = centre;
        if (d.size() > 1) {
            for (int it = 0; it < 20; ++it) {
                auto h = horner(d, polished);
                if (std::abs(h.deriv) == 0.0) break;
                const ComplexF step = h.value / h.deriv;
                polished -= step;
                if (std::abs(step) <= 4 * u * std::max(1.0, std::abs(polished))) break;
            }
        }
        const ComplexF best = std::abs(polished - centre) <= spread ? polished : centre;
        for (auto i : g) z[i] = best;
    }
}

} // namespace detail

/**
 * All roots of sum_k coeffs[k] x^k by Aberth-Ehrlich simultaneous iteration.
 * Leading coefficients below eps * max|coeff| are dropped first (the drop is
 * reported through degree < nominal_degree). A root is accepted once its
 * residual is within rounding level of the evaluation, |p(z)| <= 8 n u sum|a_k||z|^k.
 * Multiple roots come back as clusters; see refine_clusters for `cluster_eta`.
 */
inline RootResult roots(std::span<const ComplexF> coeffs, double eps = 1e-12, int max_iter = 200,
                        double cluster_eta = 0.0) {
    RootResult out;
    double max_abs = 0.0;
    for (auto c : coeffs) max_abs = std::max(max_abs, std::abs(c));
    if (coeffs.empty() || max_abs == 0.0) throw ZeroPolynomial();
    out.nominal_degree = coeffs.size() - 1;
    std::size_t top = coeffs.size() - 1;
    while (top > 0 && std::abs(coeffs[top]) < eps * max_abs) --top;
    out.degree = top;
    if (top == 0) return out;

    // Exact zero roots are peeled off so the iteration never starts at a
    // polynomial with a vanishing constant term.
    std::size_t zeros = 0;
    while (zeros < top && coeffs[zeros] == ComplexF(0.0)) ++zeros;
    std::vector<ComplexF> a(coeffs.begin() + static_cast<std::ptrdiff_t>(zeros),
                            coeffs.begin() + static_cast<std::ptrdiff_t>(top) + 1);
    out.roots.assign(zeros, ComplexF(0.0));
    const std::size_t n = a.size() - 1;
    if (n == 0) return out;
    if (n == 1) {
        out.roots.push_back(-a[0] / a[1]);
        return out;
    }

    // Initial points on a circle whose radius is the geometric-mean root modulus.
    const double radius = std::pow(std::abs(a[0]) / std::abs(a[n]), 1.0 / static_cast<double>(n));
    std::vector<ComplexF> z(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
        z[k] = std::polar(radius, angle);
    }

    const double u = std::numeric_limits<double>::epsilon();
    std::vector<bool> done(n, false);
    std::size_t remaining = n;
    int it = 0;
    for (; it < max_iter && remaining > 0; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i]) continue;
            auto h = detail::horner(a, z[i]);
            if (std::abs(h.value) <= 8.0 * static_cast<double>(n) * u * h.abs_bound) {
                done[i] = true;
                --remaining;
                continue;
            }
            const ComplexF ratio = h.value / h.deriv;
            ComplexF sum = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) sum += 1.0 / (z[i] - z[j]);
            const ComplexF step = ratio / (1.0 - ratio * sum);
            if (std::isfinite(step.real()) && std::isfinite(step.imag())) z[i] -= step;
        }
    }
    out.iterations = it;
    out.converged = remaining == 0;
    detail::refine_clusters(a, z, cluster_eta);
    out.roots.insert(out.roots.end(), z.begin(), z.end());
    return out;
}

inline RootResult roots(const UniPoly& p, double eps = 1e-12, int max_iter = 200, double cluster_eta = 0.0) {
    const auto c = to_complex(p);
    return roots(std::span<const ComplexF>(c), eps, max_iter, cluster_eta);
}

/// |a - b| scaled by max(1, |a|, |b|).
inline double relative_distance(ComplexF a, ComplexF b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

/**
 * Largest matched relative distance under the minimum-total-distance
 * assignment between two multisets. Lists of different length are infinitely apart.
 */
inline double multiset_distance(std::span<const ComplexF> a, std::span<const ComplexF> b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    const std::size_t n = a.size();
    std::vector<double> cost(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) cost[i * n + j] = relative_distance(a[i], b[j]);
    const auto assign = min_cost_assignment(cost, n);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, cost[i * n + assign[i]]);
    return worst;
}

/// Polynomial in w from P(z0, w), or in z from P(z, w0) when `fix_z` is false.
inline std::vector<ComplexF> evaluate_numeric(const BiPoly& p, ComplexF value, bool fix_z) {
    if (fix_z) {
        std::vector<ComplexF> c(p.d_z() + 1);
        for (std::size_t k = 0; k <= p.d_z(); ++k) {
            ComplexF acc = 0.0;
            for (std::size_t j = p.d_w() + 1; j-- > 0;) acc = acc * value + to_complex(p.at(j, k));
            c[k] = acc;
        }
        return c;
    }
    std::vector<ComplexF> c(p.d_w() + 1);
    for (std::size_t j = 0; j <= p.d_w(); ++j) {
        ComplexF acc = 0.0;
        for (std::size_t k = p.d_z() + 1; k-- > 0;) acc = acc * value + to_complex(p.at(j, k));
        c[j] = acc;
    }
    return c;
}

/**
 * Forward lists from a base point z0 (or, mirrored, from w0 with the roles of
 * z and w exchanged): `fiber` solves P(z0, w) = 0, and branches[k] solves
 * P(z, fiber[k]) = 0.
 */
struct SolutionLists {
    ComplexF base;
    bool from_z = true;
    std::vector<ComplexF> fiber;
    std::vector<std::vector<ComplexF>> branches;
    bool converged = true;
    bool degree_dropped = false;
    bool zero_slice = false; // some branch polynomial vanished identically

    bool clean() const { return converged && !degree_dropped && !zero_slice; }
};

namespace detail {
inline SolutionLists solution_lists_impl(const BiPoly& p, ComplexF base, bool from_z, double eps, int max_iter,
                                         double cluster_eta) {
    SolutionLists out;
    out.base = base;
    out.from_z = from_z;
    auto fiber_poly = evaluate_numeric(p, base, from_z);
    RootResult fiber;
    try {
        fiber = roots(std::span<const ComplexF>(fiber_poly), eps, max_iter, cluster_eta);
    } catch (const ZeroPolynomial&) {
        out.zero_slice = true;
        return out;
    }
    out.fiber = fiber.roots;
    out.converged = fiber.converged;
    out.degree_dropped = fiber.degree_dropped();
    for (auto pt : out.fiber) {
        auto branch_poly = evaluate_numeric(p, pt, !from_z);
        try {
            RootResult r = roots(std::span<const ComplexF>(branch_poly), eps, max_iter, cluster_eta);
            out.converged = out.converged && r.converged;
            out.degree_dropped = out.degree_dropped || r.degree_dropped();
            out.branches.push_back(std::move(r.roots));
        } catch (const ZeroPolynomial&) {
            out.zero_slice = true;
            out.branches.emplace_back();
        }
    }
    return out;
}
} // namespace detail

/// L_w(z0) and, for every w_k in it, L_z(w_k).
inline SolutionLists solution_lists(const BiPoly& p, ComplexF z0, double eps = 1e-12, int max_iter = 200,
                                    double cluster_eta = 0.0) {
    return detail::solution_lists_impl(p, z0, true, eps, max_iter, cluster_eta);
}

/// L_z(w0) and, for every z_j in it, L_w(z_j).
inline SolutionLists solution_lists_from_w(const BiPoly& p, ComplexF w0, double eps = 1e-12, int max_iter = 200,
                                           double cluster_eta = 0.0) {
    return detail::solution_lists_impl(p, w0, false, eps, max_iter, cluster_eta);
}

struct VerifyOptions {
    std::size_t samples = 20;
    std::uint64_t seed = 1;
    double tol = 1e-6;
    double eps = 1e-12;
    int max_iter = 200;
    // Relative perturbation under which nearby roots count as one cluster
    // (a d-fold root split by rounding spreads by about u^(1/d)).
    double cluster_eta = 1e-10;
};

enum class Evidence { RestrictiveEvidence, Refuted, Inconclusive };

inline const char* to_string(Evidence e) {
    switch (e) {
    case Evidence::RestrictiveEvidence: return "RestrictiveEvidence";
    case Evidence::Refuted: return "Refuted";
    case Evidence::Inconclusive: return "Inconclusive";
    }
    return "?";
}

struct ListMismatch {
    std::size_t sample;
    bool from_z;
    ComplexF base;
    std::size_t branch_a;
    std::size_t branch_b;
    double distance;
};

struct VerificationReport {
    std::size_t samples = 0;           // base points per direction, so 2 * samples attempts
    std::size_t clean_samples = 0;     // over both directions
    std::size_t inconclusive_events = 0;
    double max_list_discrepancy = 0.0; // over clean samples
    double max_containment_error = 0.0;
    std::vector<ListMismatch> failures;
    Evidence verdict = Evidence::Inconclusive;
};

namespace detail {

/// Uniform in [0, 1) from the top 53 bits; platform independent unlike std::uniform_real_distribution.
inline double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform by area on 0.5 <= |z| <= 2, at least 0.05 rad away from both axes.
inline ComplexF sample_annulus(std::mt19937_64& rng) {
    constexpr double inner = 0.5, outer = 2.0, guard = 0.05;
    for (;;) {
        const double r = std::sqrt(inner * inner + unit_draw(rng) * (outer * outer - inner * inner));
        const double theta = 2.0 * std::numbers::pi * unit_draw(rng);
        const double quarter = std::fmod(theta, std::numbers::pi / 2);
        if (quarter < guard || quarter > std::numbers::pi / 2 - guard) continue;
        return std::polar(r, theta);
    }
}

} // namespace detail

/**
 * Samples base points in both directions and compares every pair of branch
 * lists as multisets. A clean sample (converged, no degree drop, base point
 * recovered) whose lists disagree beyond `tol` refutes; otherwise a majority
 * of clean samples gives RestrictiveEvidence.
 */
inline VerificationReport verify_restrictive(const BiPoly& p, const VerifyOptions& opt = {}) {
    if (opt.samples == 0) throw std::invalid_argument("verify_restrictive: samples must be >= 1");
    VerificationReport rep;
    rep.samples = opt.samples;
    std::mt19937_64 rng(opt.seed);
    for (std::size_t s = 0; s < opt.samples; ++s) {
        for (bool from_z : {true, false}) {
            const ComplexF base = detail::sample_annulus(rng);
            SolutionLists lists = detail::solution_lists_impl(p, base, from_z, opt.eps, opt.max_iter, opt.cluster_eta);
            if (!lists.clean()) {
                ++rep.inconclusive_events;
                continue;
            }
            double containment = 0.0;
            for (const auto& br : lists.branches) {
                double best = std::numeric_limits<double>::infinity();
                for (auto v : br) best = std::min(best, relative_distance(v, base));
                containment = std::max(containment, best);
            }
            rep.max_containment_error = std::max(rep.max_containment_error, containment);
            if (containment > opt.tol) {
                ++rep.inconclusive_events;
                continue;
            }
            ++rep.clean_samples;
            for (std::size_t a = 0; a < lists.branches.size(); ++a)
                for (std::size_t b = a + 1; b < lists.branches.size(); ++b) {
                    const double dist = multiset_distance(lists.branches[a], lists.branches[b]);
                    rep.max_list_discrepancy = std::max(rep.max_list_discrepancy, dist);
                    if (dist > opt.tol) rep.failures.push_back({s, from_z, base, a, b, dist});
                }
        }
    }
    if (!rep.failures.empty())
        rep.verdict = Evidence::Refuted;
    else if (rep.clean_samples > opt.samples)
        rep.verdict = Evidence::RestrictiveEvidence;
    else
        rep.verdict = Evidence::Inconclusive;
    return rep;
}

} // namespace rescorr
