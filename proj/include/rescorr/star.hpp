#pragma once

/**
 * @file star.hpp
 * @brief The *-product of correspondences and its validity diagnostics.
 *
 * For P of bidegree (m_w, d) and Q of bidegree (d, n_z),
 *   (P * Q)(z, w) = sum_{j,k} <p_j, q_k> z^j w^k,  <p_j, q_k> = sum_r alpha_r^(j) beta_r^(k),
 * where p_j(w) are the z-coefficients of P and q_k(z) the w-coefficients of Q.
 * In matrix form M_{P*Q} = M_P M_Q, which is how it is computed.
 *
 * With separations P: A(z)D(w) - B(z)C(w) and Q: E(z)H(w) - F(z)G(w),
 *   M_P M_Q = [A B] [[<D,E>, <D,F>], [-<C,E>, -<C,F>]] [H; -G],
 * so the middle 2x2 "trace" matrix decides whether the product keeps rank 2.
 */

#include "corr.hpp"
#include "exactnum.hpp"
#include "linalg.hpp"
#include "poly.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace rescorr {

class DegreeMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DegenerateS : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class JZero : public std::runtime_error {
public:
    JZero() : std::runtime_error("J(0, d_z) = D_0 C_{d_z} - D_{d_z} C_0 vanishes") {}
};

/// P * Q. Requires P's degree in w to equal Q's degree in z.
inline BiPoly star(const BiPoly& p, const BiPoly& q) {
    if (p.d_z() != q.d_w())
        throw DegreeMismatch("star: inner degrees differ (" + std::to_string(p.d_z()) + " vs " +
                             std::to_string(q.d_w()) + ")");
    return from_matrix(coeff_matrix(p) * coeff_matrix(q));
}

/// <a, b> = sum_r a_r b_r over equal powers, no conjugation.
inline GaussianRational pairing(const UniPoly& a, const UniPoly& b) {
    GaussianRational acc;
    const std::size_t n = std::min(a.coeffs().size(), b.coeffs().size());
    for (std::size_t r = 0; r < n; ++r) acc += a.coeffs()[r] * b.coeffs()[r];
    return acc;
}

/// Traces of the bidegree-(d, d) products f1 = C F, f2 = D E, f3 = C E, f4 = D F.
struct TraceQuad {
    GaussianRational f1;
    GaussianRational f2;
    GaussianRational f3;
    GaussianRational f4;
};

namespace detail {
inline std::size_t separation_degree(const UniPoly& a, const UniPoly& b) {
    return static_cast<std::size_t>(std::max({a.degree(), b.degree(), 0L}));
}
} // namespace detail

inline TraceQuad traces(const RationalSeparation& sp, const RationalSeparation& sq) {
    const std::size_t ds = detail::separation_degree(sp.s_num, sp.s_den);
    const std::size_t dr = detail::separation_degree(sq.r_num, sq.r_den);
    if (ds != dr)
        throw DegreeMismatch("traces: S_1 has degree " + std::to_string(ds) + " but R_2 has degree " +
                             std::to_string(dr));
    return {pairing(sp.s_num, sq.r_den), pairing(sp.s_den, sq.r_num), pairing(sp.s_num, sq.r_num),
            pairing(sp.s_den, sq.r_den)};
}

/// The 2x2 trace matrix [[Tr f2, Tr f4], [-Tr f3, -Tr f1]] is singular.
inline bool trace_matrix_singular(const TraceQuad& t) { return (t.f2 * t.f1 - t.f4 * t.f3).is_zero(); }

/// beta with Tr f2 = beta Tr f3 and Tr f4 = beta Tr f1, when one exists.
inline std::optional<GaussianRational> trace_beta(const TraceQuad& t) {
    if (!t.f3.is_zero()) {
        GaussianRational beta = t.f2 / t.f3;
        if (t.f4 == beta * t.f1) return beta;
        return std::nullopt;
    }
    if (!t.f2.is_zero()) return std::nullopt;
    if (!t.f1.is_zero()) return t.f4 / t.f1;
    if (t.f4.is_zero()) return GaussianRational(0);
    return std::nullopt;
}

/**
 * T(z, w) = R_1 num(z) S den(w) - R_1 den(z) S num(w) with
 *   S num = H Tr f3 - G Tr f1,  S den = H Tr f2 - G Tr f4.
 * Equals star(P, Q) whenever both separations reconstruct their polynomials.
 * Throws DegenerateS when S num or S den vanishes or the trace matrix is singular.
 */
inline BiPoly build_T(const RationalSeparation& sp, const RationalSeparation& sq) {
    const TraceQuad t = traces(sp, sq);
    const UniPoly s_num = sq.s_den * t.f3 - sq.s_num * t.f1;
    const UniPoly s_den = sq.s_den * t.f2 - sq.s_num * t.f4;
    if (s_num.is_zero()) throw DegenerateS("S(w) has a vanishing numerator");
    if (s_den.is_zero()) throw DegenerateS("S(w) has a vanishing denominator");
    if (trace_matrix_singular(t)) throw DegenerateS("S(w) is constant: trace matrix is singular (beta-degenerate)");
    return BiPoly::outer(sp.r_num, s_den) - BiPoly::outer(sp.r_den, s_num);
}

inline BiPoly build_T(const BiPoly& p, const BiPoly& q) {
    if (p.d_z() != q.d_w()) throw DegreeMismatch("build_T: inner degrees differ");
    return build_T(separate(p), separate(q));
}

enum class StarVerdict { Valid, Degenerate };

inline const char* to_string(StarVerdict v) { return v == StarVerdict::Valid ? "Valid" : "Degenerate"; }

struct StarDiagnostics {
    GaussianRational pairing_corner_top;    // <p_{m_w}, q_{n_z}>
    GaussianRational pairing_corner_bottom; // <p_0, q_0>
    GaussianRational pairing_nr_s1_q0;      // <Nr(S_1), q_0>
    GaussianRational pairing_dr_s1_qnz;     // <Dr(S_1), q_{n_z}>
    TraceQuad traces;
    bool beta_degenerate = false; // trace matrix singular
    std::optional<GaussianRational> beta;
    Bidegree nominal_bidegree;      // (m_w, n_z)
    Bidegree product_bidegree;      // after trimming
    bool bidegree_dropped = false;
    StarVerdict verdict = StarVerdict::Degenerate;
    std::string reason; // empty when Valid
};

/**
 * Validity conditions for P * Q computed from the canonical separations of
 * both factors. Both must have rank 2 (RankNotTwo) and share the inner
 * degree (DegreeMismatch).
 */
inline StarDiagnostics diagnostics(const BiPoly& p, const BiPoly& q) {
    if (p.d_z() != q.d_w()) throw DegreeMismatch("diagnostics: inner degrees differ");
    const RationalSeparation sp = separate(p);
    const RationalSeparation sq = separate(q);
    const auto ps = w_slices(p);
    const auto qs = z_slices(q);

    StarDiagnostics out;
    out.pairing_corner_top = pairing(ps.back(), qs.back());
    out.pairing_corner_bottom = pairing(ps.front(), qs.front());
    out.pairing_nr_s1_q0 = pairing(sp.s_num, qs.front());
    out.pairing_dr_s1_qnz = pairing(sp.s_den, qs.back());
    out.traces = traces(sp, sq);
    out.beta_degenerate = trace_matrix_singular(out.traces);
    out.beta = trace_beta(out.traces);
    out.nominal_bidegree = {p.d_w(), q.d_z()};
    out.product_bidegree = star(p, q).bidegree();
    out.bidegree_dropped = !(out.nominal_bidegree == out.product_bidegree);

    if (out.pairing_corner_top.is_zero())
        out.reason = "<p_{m_w}, q_{n_z}> = 0";
    else if (out.pairing_corner_bottom.is_zero())
        out.reason = "<p_0, q_0> = 0";
    else if (out.pairing_nr_s1_q0.is_zero())
        out.reason = "<Nr(S_1), q_0> = 0";
    else if (out.pairing_dr_s1_qnz.is_zero())
        out.reason = "<Dr(S_1), q_{n_z}> = 0";
    else if (out.beta_degenerate)
        out.reason = "trace matrix singular (beta-degenerate)";
    out.verdict = out.reason.empty() ? StarVerdict::Valid : StarVerdict::Degenerate;
    return out;
}

/// P = c * (left * right) with left of bidegree (d_w, 1) and right of bidegree (1, d_z).
struct CanonicalFactors {
    BiPoly left;
    BiPoly right;
    GaussianRational scale; // c with P = c * star(left, right)
    bool exact = false;     // c == 1
};

/**
 * Writes a rank-2 P as a *-product of a (d_w, 1) and a (1, d_z) factor.
 * With K = [[D_{d_z}, D_0], [-C_{d_z}, -C_0]] (det K = J(0, d_z)):
 *   left  = A(z)(D_{d_z} w + D_0) - B(z)(C_{d_z} w + C_0)
 *   right = z Den(w) - Num(w),  Den_k = J(0,k) / J(0,d_z),  Num_k = -J(k,d_z) / J(0,d_z)
 * where J(m,n) = D_m C_n - D_n C_m. Then M_left M_right = [A B] K K^{-1} [D; -C] = M_P.
 * Throws RankNotTwo or JZero.
 */
inline CanonicalFactors canonical_factor(const BiPoly& p) {
    const RationalSeparation s = separate(p);
    const std::size_t dz = p.d_z();
    const auto& C = s.s_num;
    const auto& D = s.s_den;
    auto J = [&](std::size_t m, std::size_t n) { return D.coeff(m) * C.coeff(n) - D.coeff(n) * C.coeff(m); };
    const GaussianRational j0 = J(0, dz);
    if (j0.is_zero()) throw JZero();
    const GaussianRational inv = j0.inverse();

    const UniPoly s1_den{D.coeff(0), D.coeff(dz)};
    const UniPoly s1_num{C.coeff(0), C.coeff(dz)};
    BiPoly left = BiPoly::outer(s.r_num, s1_den) - BiPoly::outer(s.r_den, s1_num);

    std::vector<GaussianRational> den(dz + 1), num(dz + 1);
    for (std::size_t k = 0; k <= dz; ++k) {
        den[k] = J(0, k) * inv;
        num[k] = -(J(k, dz) * inv);
    }
    BiPoly right = BiPoly::outer(UniPoly{0, 1}, UniPoly(den)) - BiPoly::outer(UniPoly::constant(1), UniPoly(num));

    CanonicalFactors out{std::move(left), std::move(right), GaussianRational(1), false};
    auto c = proportionality(star(out.left, out.right), p);
    if (!c) throw std::logic_error("canonical_factor: product is not proportional to P");
    out.scale = *c;
    out.exact = c->is_one();
    return out;
}

} // namespace rescorr
