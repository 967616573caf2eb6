#pragma once

/**
 * @file corr.hpp
 * @brief Correspondence-level semantics.
 *
 * A correspondence is a BiPoly P(z, w) of bidegree (d_w, d_z) with
 * d_w, d_z >= 1, max(d_w, d_z) >= 2, and no linear factor in either variable.
 * Its coefficient matrix M_P decides everything else here: rank 2 means
 * irreducible restrictive (and P = 0 separates as R(z) = S(w)); rank d + 1
 * with P = c Q^d for a rank-2 Q means reducible restrictive.
 */

#include "exactnum.hpp"
#include "linalg.hpp"
#include "poly.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rescorr {

enum class Violation { DegreeTooLow, P1Violation, P2Violation };

inline const char* to_string(Violation v) {
    switch (v) {
    case Violation::DegreeTooLow: return "DegreeTooLow";
    case Violation::P1Violation: return "P1Violation";
    case Violation::P2Violation: return "P2Violation";
    }
    return "?";
}

class ValidationError : public std::runtime_error {
public:
    ValidationError(Violation kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Violation kind() const { return kind_; }

private:
    Violation kind_;
};

class RankNotTwo : public std::runtime_error {
public:
    explicit RankNotTwo(std::size_t rank)
        : std::runtime_error("coefficient matrix has rank " + std::to_string(rank) + ", expected 2"), rank_(rank) {}
    std::size_t rank() const { return rank_; }

private:
    std::size_t rank_;
};

/// A BiPoly that passed validate(). Only validate() and the dagger
/// operations construct one.
class Correspondence {
public:
    const BiPoly& poly() const { return poly_; }
    Bidegree bidegree() const { return poly_.bidegree(); }

    friend Correspondence validate(BiPoly p);
    friend Correspondence dagger(const Correspondence& p);
    friend Correspondence dagger_conj(const Correspondence& p);

private:
    explicit Correspondence(BiPoly p) : poly_(std::move(p)) {}
    BiPoly poly_;
};

/**
 * Checks (P1) no linear factor in z, (P2) no linear factor in w, then the
 * degree condition, in that order. Throws ValidationError naming the first
 * violated condition.
 */
inline Correspondence validate(BiPoly p) {
    auto [p1_ok, p2_ok] = check_p1_p2(p);
    if (!p1_ok) throw ValidationError(Violation::P1Violation, "(P1) violated: a linear polynomial in z divides P");
    if (!p2_ok) throw ValidationError(Violation::P2Violation, "(P2) violated: a linear polynomial in w divides P");
    const auto [dw, dz] = p.bidegree();
    if (dw < 1 || dz < 1 || std::max(dw, dz) < 2)
        throw ValidationError(Violation::DegreeTooLow,
                              "bidegree (" + std::to_string(dw) + "," + std::to_string(dz) +
                                  ") too low: need d_w, d_z >= 1 and max(d_w, d_z) >= 2");
    return Correspondence(std::move(p));
}

inline std::size_t matrix_rank(const BiPoly& p) { return rank(coeff_matrix(p)); }

/**
 * P = 0 rewritten as R(z) = S(w), R = r_num / r_den and S = s_num / s_den.
 * Invariant: r_num(z) s_den(w) - r_den(z) s_num(w) == P exactly.
 */
struct RationalSeparation {
    UniPoly r_num; // A, in z
    UniPoly r_den; // B, in z
    UniPoly s_num; // C, in w
    UniPoly s_den; // D, in w

    BiPoly reconstruct() const { return BiPoly::outer(r_num, s_den) - BiPoly::outer(r_den, s_num); }
};

namespace detail {

/// Column of M_P (descending powers of z) as a polynomial in z.
inline UniPoly column_as_z_poly(const ExactMatrix& m, std::size_t col) {
    std::vector<GaussianRational> c(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) c[m.rows() - 1 - r] = m(r, col);
    return UniPoly(std::move(c));
}

/// Row of a (rho x (d_z+1)) factor (descending powers of w) as a polynomial in w.
inline UniPoly row_as_w_poly(const ExactMatrix& m, std::size_t row, const GaussianRational& scale = 1) {
    std::vector<GaussianRational> c(m.cols());
    for (std::size_t k = 0; k < m.cols(); ++k) c[m.cols() - 1 - k] = m(row, k) * scale;
    return UniPoly(std::move(c));
}

inline RationalSeparation separation_from_factors(const FullRankFactors<GaussianRational>& f) {
    return {column_as_z_poly(f.left, 0), column_as_z_poly(f.left, 1), row_as_w_poly(f.right, 1, -1),
            row_as_w_poly(f.right, 0)};
}

} // namespace detail

/**
 * Separation from the pivot-column full-rank factorization of M_P: the two
 * pivot columns give A and B, the two rref rows give D and -C.
 * Throws RankNotTwo.
 */
inline RationalSeparation separate(const BiPoly& p) {
    const CoeffMatrix m = coeff_matrix(p);
    auto [reduced, pivots] = rref(m);
    if (pivots.size() != 2) throw RankNotTwo(pivots.size());
    return detail::separation_from_factors({m.select_columns(pivots), reduced.select_rows(0, 2)});
}

/// Separation on an explicit pair of basis columns of M_P (0-based, descending powers of w).
inline RationalSeparation separate(const BiPoly& p, std::size_t col_a, std::size_t col_b) {
    const CoeffMatrix m = coeff_matrix(p);
    const std::size_t rk = rank(m);
    if (rk != 2) throw RankNotTwo(rk);
    const std::array<std::size_t, 2> basis{col_a, col_b};
    return detail::separation_from_factors(full_rank_factorize(m, std::span<const std::size_t>(basis)));
}

inline RationalSeparation separate(const Correspondence& p) { return separate(p.poly()); }

struct RankTerm {
    UniPoly g; // in w
    UniPoly h; // in z
};

/// P = sum_r g_r(w) h_r(z) with rho = rank(M_P) terms.
struct RankDecomposition {
    std::vector<RankTerm> terms;

    BiPoly reconstruct() const {
        BiPoly acc;
        for (const auto& t : terms) acc = acc + BiPoly::outer(t.h, t.g);
        return acc;
    }
};

/// h_r are the pivot columns of M_P, g_r the nonzero rows of rref(M_P).
inline RankDecomposition decompose(const BiPoly& p) {
    if (p.is_zero()) return {};
    auto [left, right] = full_rank_factorize(coeff_matrix(p));
    RankDecomposition out;
    for (std::size_t r = 0; r < left.cols(); ++r)
        out.terms.push_back({detail::row_as_w_poly(right, r), detail::column_as_z_poly(left, r)});
    return out;
}

/**
 * Exact d-th root of a univariate polynomial, by undetermined coefficients
 * from the top down. The leading coefficient takes nth_root's canonical branch.
 */
inline std::optional<UniPoly> dth_root(const UniPoly& p, unsigned d) {
    if (d == 0) throw std::invalid_argument("dth_root: d must be positive");
    if (p.is_zero() || d == 1) return p;
    const auto deg = static_cast<std::size_t>(p.degree());
    if (deg % d != 0) return std::nullopt;
    const std::size_t n = deg / d;
    auto lead = nth_root(p.leading(), d);
    if (!lead) return std::nullopt;

    std::vector<GaussianRational> s(n + 1);
    s[n] = *lead;
    const GaussianRational inv_denom = (GaussianRational(static_cast<long>(d)) * pow(*lead, d - 1)).inverse();
    for (std::size_t k = 1; k <= n; ++k) {
        const GaussianRational known = pow(UniPoly(s), d).coeff(deg - k);
        s[n - k] = (p.coeff(deg - k) - known) * inv_denom;
    }
    UniPoly root(std::move(s));
    if (!(pow(root, d) == p)) return std::nullopt;
    return root;
}

/**
 * Exact d-th root in Q(i)[z, w]: P viewed as a polynomial in z over Q(i)[w].
 * The top slice is a univariate d-th root; each lower slice is fixed by an
 * exact division by d * s_top^{d-1}. Returns std::nullopt when P is not a
 * d-th power (or d does not divide both degrees).
 */
inline std::optional<BiPoly> dth_root(const BiPoly& p, unsigned d) {
    if (d == 0) throw std::invalid_argument("dth_root: d must be positive");
    if (p.is_zero() || d == 1) return p;
    if (p.d_w() % d != 0 || p.d_z() % d != 0) return std::nullopt;
    const std::size_t top = p.d_w();
    const std::size_t n = top / d;
    const auto slices = w_slices(p);

    auto lead = dth_root(slices[top], d);
    if (!lead) return std::nullopt;
    const UniPoly denom = GaussianRational(static_cast<long>(d)) * pow(*lead, d - 1);

    std::vector<UniPoly> s(n + 1);
    s[n] = *lead;
    for (std::size_t k = 1; k <= n; ++k) {
        const auto power = w_slices(pow(BiPoly::from_w_slices(s), d));
        const UniPoly known = top - k < power.size() ? power[top - k] : UniPoly();
        auto [q, r] = divmod(slices[top - k] - known, denom);
        if (!r.is_zero()) return std::nullopt;
        s[n - k] = std::move(q);
    }
    BiPoly root = BiPoly::from_w_slices(s);
    if (!(pow(root, d) == p)) return std::nullopt;
    return root;
}

enum class Verdict { IrreducibleRestrictive, ReducibleRestrictive, NotRestrictive };

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::IrreducibleRestrictive: return "IrreducibleRestrictive";
    case Verdict::ReducibleRestrictive: return "ReducibleRestrictive";
    case Verdict::NotRestrictive: return "NotRestrictive";
    }
    return "?";
}

struct Classification {
    Verdict verdict = Verdict::NotRestrictive;
    std::size_t rank = 0;
    unsigned power = 1;         // d for ReducibleRestrictive
    std::optional<BiPoly> root; // Q with Q^d == P for ReducibleRestrictive
    // Algebraic evidence behind a NotRestrictive verdict.
    bool power_divides_bidegree = false;
    bool root_extracted = false;

    bool restrictive() const { return verdict != Verdict::NotRestrictive; }
};

/**
 * Rank 2: irreducible restrictive. Rank rho > 2: try d = rho - 1, which must
 * divide both degrees and admit an exact d-th root of rank 2.
 */
inline Classification classify(const Correspondence& c) {
    const BiPoly& p = c.poly();
    Classification out;
    out.rank = matrix_rank(p);
    // Rank 1 would make P = q(z) t(w), contradicting (P1)/(P2).
    if (out.rank < 2) throw std::logic_error("classify: rank < 2 for a validated correspondence");
    if (out.rank == 2) {
        out.verdict = Verdict::IrreducibleRestrictive;
        out.power_divides_bidegree = true;
        return out;
    }
    const auto d = static_cast<unsigned>(out.rank - 1);
    out.power_divides_bidegree = p.d_w() % d == 0 && p.d_z() % d == 0;
    if (!out.power_divides_bidegree) return out;
    auto root = dth_root(p, d);
    out.root_extracted = root.has_value();
    if (root && matrix_rank(*root) == 2) {
        out.verdict = Verdict::ReducibleRestrictive;
        out.power = d;
        out.root = std::move(root);
    }
    return out;
}

/// Correspondence of the transposed coefficient matrix, i.e. P(w, z).
inline BiPoly dagger(const BiPoly& p) { return swap_variables(p); }
/// Correspondence of the conjugate-transposed coefficient matrix.
inline BiPoly dagger_conj(const BiPoly& p) { return conj_coeffs(swap_variables(p)); }

inline Correspondence dagger(const Correspondence& p) { return Correspondence(dagger(p.poly())); }
inline Correspondence dagger_conj(const Correspondence& p) { return Correspondence(dagger_conj(p.poly())); }

/**
 * Returns c != 0 with b == c * a, or std::nullopt. Compares cross-products
 * a_x b_y == a_y b_x against a fixed nonzero reference entry of a.
 */
inline std::optional<GaussianRational> proportionality(const BiPoly& a, const BiPoly& b) {
    if (a.bidegree() != b.bidegree() || a.is_zero() || b.is_zero()) return std::nullopt;
    std::size_t rj = 0, rk = 0;
    bool found = false;
    for (std::size_t j = 0; j <= a.d_w() && !found; ++j)
        for (std::size_t k = 0; k <= a.d_z() && !found; ++k)
            if (!a.at(j, k).is_zero()) {
                rj = j;
                rk = k;
                found = true;
            }
    const auto& ar = a.at(rj, rk);
    const auto& br = b.at(rj, rk);
    if (br.is_zero()) return std::nullopt;
    for (std::size_t j = 0; j <= a.d_w(); ++j)
        for (std::size_t k = 0; k <= a.d_z(); ++k)
            if (!(ar * b.at(j, k) == a.at(j, k) * br)) return std::nullopt;
    return br / ar;
}

/// P(-z, -w) = c P(z, w) for some nonzero c.
inline bool sign_symmetry(const BiPoly& p) { return proportionality(p, negate_variables(p)).has_value(); }

/// The coefficient-wise conjugate of P is a nonzero multiple of P.
inline bool conj_symmetry(const BiPoly& p) { return proportionality(p, conj_coeffs(p)).has_value(); }

/// Every adjacent column pair of M_P with both columns nonzero is independent.
inline bool consecutive_columns_independent(const BiPoly& p) {
    const CoeffMatrix m = coeff_matrix(p);
    auto column_zero = [&](std::size_t c) {
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (!m(r, c).is_zero()) return false;
        return true;
    };
    for (std::size_t c = 0; c + 1 < m.cols(); ++c) {
        if (column_zero(c) || column_zero(c + 1)) continue;
        bool independent = false;
        for (std::size_t r1 = 0; r1 < m.rows() && !independent; ++r1)
            for (std::size_t r2 = r1 + 1; r2 < m.rows() && !independent; ++r2)
                independent = !(m(r1, c) * m(r2, c + 1) == m(r2, c) * m(r1, c + 1));
        if (!independent) return false;
    }
    return true;
}

} // namespace rescorr
