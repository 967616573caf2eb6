#pragma once

/**
 * @file poly.hpp
 * @brief Univariate and bivariate polynomials over Q(i).
 *
 * A BiPoly P(z, w) = sum_{j,k} c(j,k) z^j w^k is stored as a dense grid with
 * j = 0..d_w (powers of z) and k = 0..d_z (powers of w). The bidegree is
 * written (d_w, d_z): d_w is the degree in z and d_z the degree in w.
 */

#include "exactnum.hpp"
#include "linalg.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rescorr {

class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<GaussianRational> ascending) : coeffs_(std::move(ascending)) {
        trim();
    }
    UniPoly(std::initializer_list<GaussianRational> ascending) : coeffs_(ascending) { trim(); }

    static UniPoly constant(const GaussianRational& c) { return UniPoly(std::vector{c}); }
    static UniPoly monomial(const GaussianRational& c, std::size_t degree) {
        std::vector<GaussianRational> v(degree + 1);
        v[degree] = c;
        return UniPoly(std::move(v));
    }

    bool is_zero() const { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    const std::vector<GaussianRational>& coeffs() const { return coeffs_; }
    GaussianRational coeff(std::size_t r) const { return r < coeffs_.size() ? coeffs_[r] : GaussianRational(); }
    const GaussianRational& leading() const {
        if (is_zero()) throw std::logic_error("UniPoly: leading coefficient of zero polynomial");
        return coeffs_.back();
    }

    GaussianRational evaluate(const GaussianRational& x) const {
        GaussianRational acc;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    UniPoly derivative() const {
        if (coeffs_.size() <= 1) return {};
        std::vector<GaussianRational> out(coeffs_.size() - 1);
        for (std::size_t r = 1; r < coeffs_.size(); ++r) out[r - 1] = coeffs_[r] * GaussianRational(static_cast<long>(r));
        return UniPoly(std::move(out));
    }

    UniPoly monic() const {
        if (is_zero()) return {};
        return *this * leading().inverse();
    }

    UniPoly operator-() const {
        UniPoly out = *this;
        for (auto& c : out.coeffs_) c = -c;
        return out;
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<GaussianRational> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t r = 0; r < out.size(); ++r) out[r] = a.coeff(r) + b.coeff(r);
        return UniPoly(std::move(out));
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<GaussianRational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return UniPoly(std::move(out));
    }
    friend UniPoly operator*(const UniPoly& a, const GaussianRational& s) {
        if (s.is_zero()) return {};
        UniPoly out = a;
        for (auto& c : out.coeffs_) c *= s;
        return out;
    }
    friend UniPoly operator*(const GaussianRational& s, const UniPoly& a) { return a * s; }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    std::vector<GaussianRational> coeffs_;
};

inline UniPoly pow(const UniPoly& base, unsigned exp) {
    UniPoly acc = UniPoly::constant(1);
    UniPoly b = base;
    while (exp > 0) {
        if (exp & 1u) acc = acc * b;
        exp >>= 1u;
        if (exp) b = b * b;
    }
    return acc;
}

struct DivMod {
    UniPoly quotient;
    UniPoly remainder;
};

/// Euclidean division over the field Q(i).
inline DivMod divmod(const UniPoly& num, const UniPoly& den) {
    if (den.is_zero()) throw DivisionByZero();
    if (num.degree() < den.degree()) return {{}, num};
    std::vector<GaussianRational> rem = num.coeffs();
    const std::size_t dd = static_cast<std::size_t>(den.degree());
    std::vector<GaussianRational> quot(rem.size() - dd);
    const GaussianRational inv_lead = den.leading().inverse();
    for (std::size_t top = rem.size(); top-- > dd;) {
        if (rem[top].is_zero()) continue;
        GaussianRational f = rem[top] * inv_lead;
        quot[top - dd] = f;
        for (std::size_t r = 0; r <= dd; ++r) rem[top - dd + r] -= f * den.coeffs()[r];
    }
    return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
}

/// Monic gcd in Q(i)[x]. Throws std::invalid_argument when both inputs are zero.
inline UniPoly gcd(UniPoly a, UniPoly b) {
    if (a.is_zero() && b.is_zero()) throw std::invalid_argument("gcd: both polynomials are zero");
    while (!b.is_zero()) {
        UniPoly r = divmod(a, b).remainder;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

struct Bidegree {
    std::size_t d_w = 0; // degree in z
    std::size_t d_z = 0; // degree in w
    friend bool operator==(const Bidegree&, const Bidegree&) = default;
};

class BiPoly {
public:
    /// The zero polynomial.
    BiPoly() : d_w_(0), d_z_(0), grid_(1) {}

    /// grid[j * (w_extent) + k] is the coefficient of z^j w^k; all-zero top
    /// rows/columns are trimmed so the bidegree is attained.
    BiPoly(std::size_t z_extent, std::size_t w_extent, std::vector<GaussianRational> grid)
        : d_w_(z_extent - 1), d_z_(w_extent - 1), grid_(std::move(grid)) {
        if (z_extent == 0 || w_extent == 0 || grid_.size() != z_extent * w_extent)
            throw std::invalid_argument("BiPoly: grid shape mismatch");
        trim();
    }

    static BiPoly constant(const GaussianRational& c) { return BiPoly(1, 1, {c}); }
    static BiPoly monomial(const GaussianRational& c, std::size_t z_pow, std::size_t w_pow) {
        std::vector<GaussianRational> g((z_pow + 1) * (w_pow + 1));
        g[z_pow * (w_pow + 1) + w_pow] = c;
        return BiPoly(z_pow + 1, w_pow + 1, std::move(g));
    }
    static BiPoly z() { return monomial(1, 1, 0); }
    static BiPoly w() { return monomial(1, 0, 1); }

    /// Assembles sum_j slices[j](w) z^j.
    static BiPoly from_w_slices(const std::vector<UniPoly>& slices) {
        std::size_t w_ext = 1;
        for (const auto& s : slices) w_ext = std::max<std::size_t>(w_ext, s.coeffs().size());
        const std::size_t z_ext = std::max<std::size_t>(slices.size(), 1);
        std::vector<GaussianRational> g(z_ext * w_ext);
        for (std::size_t j = 0; j < slices.size(); ++j)
            for (std::size_t k = 0; k < slices[j].coeffs().size(); ++k) g[j * w_ext + k] = slices[j].coeffs()[k];
        return BiPoly(z_ext, w_ext, std::move(g));
    }

    /// Assembles sum_k slices[k](z) w^k.
    static BiPoly from_z_slices(const std::vector<UniPoly>& slices) {
        std::size_t z_ext = 1;
        for (const auto& s : slices) z_ext = std::max<std::size_t>(z_ext, s.coeffs().size());
        const std::size_t w_ext = std::max<std::size_t>(slices.size(), 1);
        std::vector<GaussianRational> g(z_ext * w_ext);
        for (std::size_t k = 0; k < slices.size(); ++k)
            for (std::size_t j = 0; j < slices[k].coeffs().size(); ++j) g[j * w_ext + k] = slices[k].coeffs()[j];
        return BiPoly(z_ext, w_ext, std::move(g));
    }

    /// Separable product a(z) * b(w).
    static BiPoly outer(const UniPoly& in_z, const UniPoly& in_w) {
        if (in_z.is_zero() || in_w.is_zero()) return {};
        const std::size_t ze = in_z.coeffs().size(), we = in_w.coeffs().size();
        std::vector<GaussianRational> g(ze * we);
        for (std::size_t j = 0; j < ze; ++j)
            for (std::size_t k = 0; k < we; ++k) g[j * we + k] = in_z.coeffs()[j] * in_w.coeffs()[k];
        return BiPoly(ze, we, std::move(g));
    }

    std::size_t d_w() const { return d_w_; }
    std::size_t d_z() const { return d_z_; }
    Bidegree bidegree() const { return {d_w_, d_z_}; }

    bool is_zero() const { return d_w_ == 0 && d_z_ == 0 && grid_[0].is_zero(); }

    /// Coefficient of z^j w^k (zero outside the grid).
    GaussianRational coeff(std::size_t j, std::size_t k) const {
        if (j > d_w_ || k > d_z_) return {};
        return grid_[j * (d_z_ + 1) + k];
    }
    const GaussianRational& at(std::size_t j, std::size_t k) const { return grid_[j * (d_z_ + 1) + k]; }

    /// Coefficients transformed entrywise: f(c, j, k).
    template <typename F>
    BiPoly map(F&& f) const {
        std::vector<GaussianRational> g(grid_.size());
        for (std::size_t j = 0; j <= d_w_; ++j)
            for (std::size_t k = 0; k <= d_z_; ++k) g[j * (d_z_ + 1) + k] = f(at(j, k), j, k);
        return BiPoly(d_w_ + 1, d_z_ + 1, std::move(g));
    }

    BiPoly operator-() const {
        return map([](const GaussianRational& c, std::size_t, std::size_t) { return -c; });
    }

    friend BiPoly operator+(const BiPoly& a, const BiPoly& b) {
        const std::size_t ze = std::max(a.d_w_, b.d_w_) + 1, we = std::max(a.d_z_, b.d_z_) + 1;
        std::vector<GaussianRational> g(ze * we);
        for (std::size_t j = 0; j < ze; ++j)
            for (std::size_t k = 0; k < we; ++k) g[j * we + k] = a.coeff(j, k) + b.coeff(j, k);
        return BiPoly(ze, we, std::move(g));
    }
    friend BiPoly operator-(const BiPoly& a, const BiPoly& b) { return a + (-b); }

    /// 2-D coefficient convolution.
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        const std::size_t ze = a.d_w_ + b.d_w_ + 1, we = a.d_z_ + b.d_z_ + 1;
        std::vector<GaussianRational> g(ze * we);
        for (std::size_t j1 = 0; j1 <= a.d_w_; ++j1)
            for (std::size_t k1 = 0; k1 <= a.d_z_; ++k1) {
                const auto& c1 = a.at(j1, k1);
                if (c1.is_zero()) continue;
                for (std::size_t j2 = 0; j2 <= b.d_w_; ++j2)
                    for (std::size_t k2 = 0; k2 <= b.d_z_; ++k2) {
                        const auto& c2 = b.at(j2, k2);
                        if (c2.is_zero()) continue;
                        g[(j1 + j2) * we + k1 + k2] += c1 * c2;
                    }
            }
        return BiPoly(ze, we, std::move(g));
    }
    friend BiPoly operator*(const BiPoly& a, const GaussianRational& s) {
        return a.map([&](const GaussianRational& c, std::size_t, std::size_t) { return c * s; });
    }
    friend BiPoly operator*(const GaussianRational& s, const BiPoly& a) { return a * s; }

    friend bool operator==(const BiPoly& a, const BiPoly& b) {
        return a.d_w_ == b.d_w_ && a.d_z_ == b.d_z_ && a.grid_ == b.grid_;
    }

private:
    void trim() {
        auto row_zero = [&](std::size_t j) {
            for (std::size_t k = 0; k <= d_z_; ++k)
                if (!grid_[j * (d_z_ + 1) + k].is_zero()) return false;
            return true;
        };
        auto col_zero = [&](std::size_t k) {
            for (std::size_t j = 0; j <= d_w_; ++j)
                if (!grid_[j * (d_z_ + 1) + k].is_zero()) return false;
            return true;
        };
        std::size_t new_dw = d_w_, new_dz = d_z_;
        while (new_dw > 0 && row_zero(new_dw)) --new_dw;
        while (new_dz > 0 && col_zero(new_dz)) --new_dz;
        if (new_dw == d_w_ && new_dz == d_z_) return;
        std::vector<GaussianRational> g((new_dw + 1) * (new_dz + 1));
        for (std::size_t j = 0; j <= new_dw; ++j)
            for (std::size_t k = 0; k <= new_dz; ++k) g[j * (new_dz + 1) + k] = grid_[j * (d_z_ + 1) + k];
        grid_ = std::move(g);
        d_w_ = new_dw;
        d_z_ = new_dz;
    }

    std::size_t d_w_;
    std::size_t d_z_;
    std::vector<GaussianRational> grid_;
};

inline BiPoly pow(const BiPoly& base, unsigned exp) {
    BiPoly acc = BiPoly::constant(1);
    BiPoly b = base;
    while (exp > 0) {
        if (exp & 1u) acc = acc * b;
        exp >>= 1u;
        if (exp) b = b * b;
    }
    return acc;
}

using CoeffMatrix = ExactMatrix;

/// (d_w+1) x (d_z+1) matrix in descending powers: entry (r, c) is the
/// coefficient of z^{d_w - r} w^{d_z - c}.
inline CoeffMatrix coeff_matrix(const BiPoly& p) {
    CoeffMatrix m(p.d_w() + 1, p.d_z() + 1);
    for (std::size_t r = 0; r <= p.d_w(); ++r)
        for (std::size_t c = 0; c <= p.d_z(); ++c) m(r, c) = p.at(p.d_w() - r, p.d_z() - c);
    return m;
}

/// Inverse of coeff_matrix; the result is trimmed to its true bidegree.
inline BiPoly from_matrix(const CoeffMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return {};
    const std::size_t ze = m.rows(), we = m.cols();
    std::vector<GaussianRational> g(ze * we);
    for (std::size_t r = 0; r < ze; ++r)
        for (std::size_t c = 0; c < we; ++c) g[(ze - 1 - r) * we + (we - 1 - c)] = m(r, c);
    return BiPoly(ze, we, std::move(g));
}

/// [q_0 .. q_{d_z}] with P = sum_k q_k(z) w^k.
inline std::vector<UniPoly> z_slices(const BiPoly& p) {
    std::vector<UniPoly> out;
    out.reserve(p.d_z() + 1);
    for (std::size_t k = 0; k <= p.d_z(); ++k) {
        std::vector<GaussianRational> c(p.d_w() + 1);
        for (std::size_t j = 0; j <= p.d_w(); ++j) c[j] = p.at(j, k);
        out.emplace_back(std::move(c));
    }
    return out;
}

/// [p_0 .. p_{d_w}] with P = sum_j p_j(w) z^j.
inline std::vector<UniPoly> w_slices(const BiPoly& p) {
    std::vector<UniPoly> out;
    out.reserve(p.d_w() + 1);
    for (std::size_t j = 0; j <= p.d_w(); ++j) {
        std::vector<GaussianRational> c(p.d_z() + 1);
        for (std::size_t k = 0; k <= p.d_z(); ++k) c[k] = p.at(j, k);
        out.emplace_back(std::move(c));
    }
    return out;
}

/// P(z0, w) as a polynomial in w.
inline UniPoly evaluate_z(const BiPoly& p, const GaussianRational& z0) {
    std::vector<GaussianRational> c(p.d_z() + 1);
    for (std::size_t k = 0; k <= p.d_z(); ++k) {
        GaussianRational acc;
        for (std::size_t j = p.d_w() + 1; j-- > 0;) acc = acc * z0 + p.at(j, k);
        c[k] = acc;
    }
    return UniPoly(std::move(c));
}

/// P(z, w0) as a polynomial in z.
inline UniPoly evaluate_w(const BiPoly& p, const GaussianRational& w0) {
    std::vector<GaussianRational> c(p.d_w() + 1);
    for (std::size_t j = 0; j <= p.d_w(); ++j) {
        GaussianRational acc;
        for (std::size_t k = p.d_z() + 1; k-- > 0;) acc = acc * w0 + p.at(j, k);
        c[j] = acc;
    }
    return UniPoly(std::move(c));
}

namespace detail {
inline bool common_gcd_constant(const std::vector<UniPoly>& slices) {
    UniPoly g;
    for (const auto& s : slices) {
        if (s.is_zero()) continue;
        g = g.is_zero() ? s.monic() : gcd(g, s);
        if (g.degree() == 0) return true;
    }
    // All slices zero (zero polynomial) has no linear factor to speak of.
    return g.is_zero() || g.degree() <= 0;
}
} // namespace detail

struct LinearFactorCheck {
    bool p1_ok; // no linear polynomial in z divides P
    bool p2_ok; // no linear polynomial in w divides P
};

/// A linear factor z - a divides P iff it divides every q_k(z); the gcd of the
/// slices is computed in Q(i)[z], and any nonconstant gcd splits over C.
inline LinearFactorCheck check_p1_p2(const BiPoly& p) {
    return {detail::common_gcd_constant(z_slices(p)), detail::common_gcd_constant(w_slices(p))};
}

/// P(w, z): the grid transposed, bidegree (d_z, d_w).
inline BiPoly swap_variables(const BiPoly& p) {
    std::vector<GaussianRational> g((p.d_z() + 1) * (p.d_w() + 1));
    for (std::size_t j = 0; j <= p.d_w(); ++j)
        for (std::size_t k = 0; k <= p.d_z(); ++k) g[k * (p.d_w() + 1) + j] = p.at(j, k);
    return BiPoly(p.d_z() + 1, p.d_w() + 1, std::move(g));
}

/// Coefficient-wise complex conjugate.
inline BiPoly conj_coeffs(const BiPoly& p) {
    return p.map([](const GaussianRational& c, std::size_t, std::size_t) { return c.conj(); });
}

/// P(-z, -w).
inline BiPoly negate_variables(const BiPoly& p) {
    return p.map([](const GaussianRational& c, std::size_t j, std::size_t k) { return (j + k) % 2 ? -c : c; });
}

} // namespace rescorr
