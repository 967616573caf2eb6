#pragma once

/**
 * @file exactnum.hpp
 * @brief Exact scalars: arbitrary-precision rationals and Gaussian rationals.
 *
 * Rational is GMP's mpq_class kept in canonical form (positive denominator,
 * coprime parts). GaussianRational is a + bi with rational a, b and is the
 * coefficient field Q(i) for every algebraic routine in the library.
 */

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rescorr {

using Integer = mpz_class;
using Rational = mpq_class;

class DivisionByZero : public std::domain_error {
public:
    DivisionByZero() : std::domain_error("division by zero") {}
};

/// Builds num/den in lowest terms with a positive denominator.
inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw DivisionByZero();
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Text form `a` or `a/b`.
inline std::string to_string(const Rational& q) { return q.get_str(); }

class GaussianRational {
public:
    GaussianRational() : re_(0), im_(0) {}
    GaussianRational(int v) : re_(v), im_(0) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(long v) : re_(v), im_(0) {} // NOLINT(google-explicit-constructor)
    GaussianRational(Rational re, Rational im = Rational(0))
        : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

    /// a^2 + b^2
    Rational norm() const { return re_ * re_ + im_ * im_; }

    GaussianRational conj() const { return {re_, -im_}; }

    GaussianRational inverse() const {
        if (is_zero()) throw DivisionByZero();
        Rational n = norm();
        return {re_ / n, -im_ / n};
    }

    GaussianRational operator-() const { return {-re_, -im_}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational m = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(m);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) { return *this *= o.inverse(); }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    /// Renders as `p`, `qi`, or `p+qi` / `p-qi`; unit imaginary parts print as `i`.
    std::string to_string() const {
        if (is_real()) return re_.get_str();
        std::string imag;
        Rational mag = abs(im_);
        if (mag == 1)
            imag = "i";
        else
            imag = mag.get_str() + "i";
        if (sgn(re_) == 0) return (sgn(im_) < 0 ? "-" : "") + imag;
        return re_.get_str() + (sgn(im_) < 0 ? "-" : "+") + imag;
    }

    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& a) {
        return os << a.to_string();
    }

private:
    Rational re_;
    Rational im_;
};

inline GaussianRational conj(const GaussianRational& a) { return a.conj(); }

inline GaussianRational pow(GaussianRational base, unsigned exp) {
    GaussianRational acc(1);
    while (exp > 0) {
        if (exp & 1u) acc *= base;
        base *= base;
        exp >>= 1u;
    }
    return acc;
}

/// Lexicographic order on (re, im); used for the canonical root branch.
inline bool lex_less(const GaussianRational& a, const GaussianRational& b) {
    if (a.re() != b.re()) return a.re() < b.re();
    return a.im() < b.im();
}

namespace detail {

struct GaussInt {
    Integer re;
    Integer im;
};

inline GaussInt mul(const GaussInt& a, const GaussInt& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline GaussInt pow(GaussInt base, unsigned exp) {
    GaussInt acc{1, 0};
    while (exp > 0) {
        if (exp & 1u) acc = mul(acc, base);
        base = mul(base, base);
        exp >>= 1u;
    }
    return acc;
}

inline std::size_t bit_length(const Integer& v) {
    return v == 0 ? 1 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

/// RAII holder for an MPFR variable.
class Mpfr {
public:
    explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
    ~Mpfr() { mpfr_clear(v_); }
    Mpfr(const Mpfr&) = delete;
    Mpfr& operator=(const Mpfr&) = delete;
    mpfr_ptr get() { return v_; }

private:
    mpfr_t v_;
};

inline Integer round_to_integer(mpfr_ptr x) {
    Integer out;
    mpfr_get_z(out.get_mpz_t(), x, MPFR_RNDN);
    return out;
}

/// All Gaussian integers r with r^n = u (u nonzero). Candidates come from a
/// high-precision polar root and are accepted only after exact verification.
inline std::vector<GaussInt> gauss_int_roots(const GaussInt& u, unsigned n) {
    Integer norm = u.re * u.re + u.im * u.im;
    Integer norm_root;
    if (mpz_root(norm_root.get_mpz_t(), norm.get_mpz_t(), n) == 0) return {};

    const mpfr_prec_t prec =
        static_cast<mpfr_prec_t>(bit_length(norm) / (2 * n) + bit_length(Integer(n)) + 96);
    Mpfr re(prec), im(prec), theta(prec), radius(prec), phi(prec), twopi(prec), s(prec), c(prec),
        tmp(prec);
    mpfr_set_z(re.get(), u.re.get_mpz_t(), MPFR_RNDN);
    mpfr_set_z(im.get(), u.im.get_mpz_t(), MPFR_RNDN);
    mpfr_atan2(theta.get(), im.get(), re.get(), MPFR_RNDN);
    // |r| = sqrt(norm_root)
    mpfr_set_z(radius.get(), norm_root.get_mpz_t(), MPFR_RNDN);
    mpfr_sqrt(radius.get(), radius.get(), MPFR_RNDN);
    mpfr_const_pi(twopi.get(), MPFR_RNDN);
    mpfr_mul_ui(twopi.get(), twopi.get(), 2, MPFR_RNDN);

    std::vector<GaussInt> found;
    for (unsigned k = 0; k < n; ++k) {
        mpfr_mul_ui(phi.get(), twopi.get(), k, MPFR_RNDN);
        mpfr_add(phi.get(), phi.get(), theta.get(), MPFR_RNDN);
        mpfr_div_ui(phi.get(), phi.get(), n, MPFR_RNDN);
        mpfr_sin_cos(s.get(), c.get(), phi.get(), MPFR_RNDN);
        mpfr_mul(tmp.get(), radius.get(), c.get(), MPFR_RNDN);
        GaussInt cand{round_to_integer(tmp.get()), 0};
        mpfr_mul(tmp.get(), radius.get(), s.get(), MPFR_RNDN);
        cand.im = round_to_integer(tmp.get());
        GaussInt check = pow(cand, n);
        if (check.re == u.re && check.im == u.im) {
            bool dup = std::any_of(found.begin(), found.end(), [&](const GaussInt& g) {
                return g.re == cand.re && g.im == cand.im;
            });
            if (!dup) found.push_back(cand);
        }
    }
    return found;
}

} // namespace detail

/**
 * Exact n-th root in Q(i).
 *
 * Returns r with r^n == a when such r exists, choosing among the valid roots
 * (r times a unit in {1, i, -1, -i}) the one with lexicographically greatest
 * (re, im). Returns std::nullopt when a is not an n-th power in Q(i).
 */
inline std::optional<GaussianRational> nth_root(const GaussianRational& a, unsigned n) {
    if (n == 0) throw std::invalid_argument("nth_root: n must be positive");
    if (a.is_zero() || n == 1) return a;

    // a = v / m with v a Gaussian integer, m a positive integer; then
    // a = (v m^{n-1}) / m^n and a root exists iff v m^{n-1} is an n-th power in Z[i].
    Integer m;
    mpz_lcm(m.get_mpz_t(), a.re().get_den_mpz_t(), a.im().get_den_mpz_t());
    detail::GaussInt v{a.re().get_num() * (m / a.re().get_den()),
                       a.im().get_num() * (m / a.im().get_den())};
    Integer scale;
    mpz_pow_ui(scale.get_mpz_t(), m.get_mpz_t(), n - 1);
    v.re *= scale;
    v.im *= scale;

    auto roots = detail::gauss_int_roots(v, n);
    if (roots.empty()) return std::nullopt;

    std::optional<GaussianRational> best;
    for (const auto& r : roots) {
        GaussianRational cand(make_rational(r.re, m), make_rational(r.im, m));
        if (!best || lex_less(*best, cand)) best = cand;
    }
    return best;
}

} // namespace rescorr
