#pragma once

/**
 * @file parser.hpp
 * @brief Text grammar for bivariate polynomials over Q(i), and the canonical printer.
 *
 *   expr    := [sign] term (sign term)*
 *   term    := power (['*'] power)*              juxtaposition multiplies
 *   power   := primary ['^' digits]
 *   primary := number ['i'] | 'i' | 'z' | 'w' | '(' expr ')'
 *   number  := digits ['/' digits]
 *
 * `i` directly after a number is that number's imaginary unit (`11i`, `3/2i`);
 * a standalone `i` is the unit itself. `#` starts a comment that runs to the
 * end of the line. Whitespace is insignificant.
 */

#include "exactnum.hpp"
#include "poly.hpp"

#include <cctype>
#include <cstddef>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace rescorr {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, std::set<std::string> expected, const std::string& found)
        : std::runtime_error(describe(offset, expected, found)), offset_(offset), expected_(std::move(expected)) {}

    std::size_t offset() const { return offset_; }
    const std::set<std::string>& expected() const { return expected_; }

private:
    static std::string describe(std::size_t offset, const std::set<std::string>& expected, const std::string& found) {
        std::ostringstream os;
        os << "syntax error at offset " << offset << ": found " << found << ", expected ";
        bool first = true;
        for (const auto& e : expected) {
            os << (first ? "" : " | ") << e;
            first = false;
        }
        return os.str();
    }

    std::size_t offset_;
    std::set<std::string> expected_;
};

namespace detail {

class PolyParser {
public:
    static constexpr std::size_t kMaxDegree = 512;

    explicit PolyParser(std::string_view text) : text_(text) {}

    BiPoly parse() {
        skip_space();
        if (at_end()) fail({"term"});
        BiPoly result = expr();
        skip_space();
        if (!at_end()) fail({"'+'", "'-'", "'*'", "term", "end of input"});
        return result;
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    void skip_space() {
        while (!at_end()) {
            char c = text_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == '#') {
                while (!at_end() && text_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    [[noreturn]] void fail(std::set<std::string> expected) const {
        std::string found = at_end() ? "end of input" : "'" + std::string(1, text_[pos_]) + "'";
        throw ParseError(pos_, std::move(expected), found);
    }

    static bool starts_primary(char c) {
        return std::isdigit(static_cast<unsigned char>(c)) || c == 'i' || c == 'z' || c == 'w' || c == '(';
    }

    BiPoly expr() {
        skip_space();
        bool negate = false;
        if (peek() == '+' || peek() == '-') {
            negate = peek() == '-';
            ++pos_;
        }
        BiPoly acc = term();
        if (negate) acc = -acc;
        for (;;) {
            skip_space();
            char c = peek();
            if (c != '+' && c != '-') break;
            ++pos_;
            BiPoly t = term();
            acc = c == '+' ? acc + t : acc - t;
        }
        return acc;
    }

    BiPoly term() {
        skip_space();
        if (!starts_primary(peek())) fail({"number", "'i'", "'z'", "'w'", "'('"});
        BiPoly acc = power();
        for (;;) {
            skip_space();
            if (peek() == '*') {
                ++pos_;
                skip_space();
                if (!starts_primary(peek())) fail({"number", "'i'", "'z'", "'w'", "'('"});
            } else if (!starts_primary(peek())) {
                break;
            }
            acc = acc * power();
            check_size(acc);
        }
        return acc;
    }

    BiPoly power() {
        BiPoly base = primary();
        skip_space();
        if (peek() != '^') return base;
        ++pos_;
        skip_space();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail({"exponent"});
        const std::size_t start = pos_;
        Integer e = digits();
        if (e > Integer(static_cast<unsigned long>(kMaxDegree))) {
            pos_ = start;
            fail({"exponent <= " + std::to_string(kMaxDegree)});
        }
        const unsigned n = static_cast<unsigned>(e.get_ui());
        if ((base.d_w() * n > kMaxDegree) || (base.d_z() * n > kMaxDegree)) {
            pos_ = start;
            fail({"exponent keeping degrees <= " + std::to_string(kMaxDegree)});
        }
        return pow(base, n);
    }

    BiPoly primary() {
        skip_space();
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Rational value = number();
            if (peek() == 'i') {
                ++pos_;
                return BiPoly::constant(GaussianRational(Rational(0), value));
            }
            return BiPoly::constant(GaussianRational(value));
        }
        switch (c) {
        case 'i':
            ++pos_;
            return BiPoly::constant(GaussianRational::i());
        case 'z':
            ++pos_;
            return BiPoly::z();
        case 'w':
            ++pos_;
            return BiPoly::w();
        case '(': {
            ++pos_;
            BiPoly inner = expr();
            skip_space();
            if (peek() != ')') fail({"')'", "'+'", "'-'", "term"});
            ++pos_;
            return inner;
        }
        default:
            fail({"number", "'i'", "'z'", "'w'", "'('"});
        }
    }

    Integer digits() {
        const std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        return Integer(std::string(text_.substr(start, pos_ - start)));
    }

    Rational number() {
        Integer num = digits();
        if (peek() != '/') return Rational(num);
        ++pos_;
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail({"denominator digits"});
        const std::size_t den_at = pos_;
        Integer den = digits();
        if (den == 0) {
            pos_ = den_at;
            fail({"nonzero denominator"});
        }
        return make_rational(num, den);
    }

    void check_size(const BiPoly& p) const {
        if (p.d_w() > kMaxDegree || p.d_z() > kMaxDegree) fail({"smaller product (degree limit exceeded)"});
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

inline std::string monomial_text(std::size_t j, std::size_t k, char zvar, char wvar) {
    std::string out;
    auto append = [&](char var, std::size_t e) {
        if (e == 0) return;
        if (!out.empty()) out += ' ';
        out += var;
        if (e > 1) out += "^" + std::to_string(e);
    };
    append(zvar, j);
    append(wvar, k);
    return out;
}

/// One term: returns (negative?, body) so the caller can join with " + " / " - ".
inline std::pair<bool, std::string> term_text(const GaussianRational& c, const std::string& mono) {
    const bool real = c.is_real();
    const bool imag = sgn(c.re()) == 0;
    if (real || imag) {
        const Rational& part = real ? c.re() : c.im();
        const bool neg = sgn(part) < 0;
        Rational mag = abs(part);
        std::string coeff;
        if (real) {
            if (mag != 1 || mono.empty()) coeff = mag.get_str();
        } else {
            coeff = mag == 1 ? "i" : mag.get_str() + "i";
        }
        if (coeff.empty()) return {neg, mono};
        if (mono.empty()) return {neg, coeff};
        return {neg, coeff + " " + mono};
    }
    std::string coeff = "(" + c.to_string() + ")";
    return {false, mono.empty() ? coeff : coeff + " " + mono};
}

} // namespace detail

/// Parses the grammar above into a BiPoly. Throws ParseError with the offset
/// and the set of tokens that would have been accepted.
inline BiPoly parse(std::string_view text) { return detail::PolyParser(text).parse(); }

/// Parses a scalar (a polynomial that must be constant).
inline GaussianRational parse_scalar(std::string_view text) {
    BiPoly p = parse(text);
    if (p.d_w() != 0 || p.d_z() != 0) throw ParseError(0, {"constant"}, "a non-constant expression");
    return p.at(0, 0);
}

/**
 * Canonical text: terms in descending (j, k) order, exponents of 1 omitted,
 * unit coefficients omitted, complex coefficients parenthesized as `(p+qi)`.
 * parse(print(P)) == P.
 */
inline std::string print(const BiPoly& p) {
    std::string out;
    for (std::size_t j = p.d_w() + 1; j-- > 0;)
        for (std::size_t k = p.d_z() + 1; k-- > 0;) {
            const auto& c = p.at(j, k);
            if (c.is_zero()) continue;
            auto [neg, body] = detail::term_text(c, detail::monomial_text(j, k, 'z', 'w'));
            if (out.empty())
                out = (neg ? "-" : "") + body;
            else
                out += (neg ? " - " : " + ") + body;
        }
    return out.empty() ? "0" : out;
}

/// Univariate polynomial in the named variable, same conventions as print().
inline std::string print(const UniPoly& p, char var) {
    std::string out;
    for (std::size_t r = p.coeffs().size(); r-- > 0;) {
        const auto& c = p.coeffs()[r];
        if (c.is_zero()) continue;
        std::string mono;
        if (r > 0) mono = std::string(1, var) + (r > 1 ? "^" + std::to_string(r) : "");
        auto [neg, body] = detail::term_text(c, mono);
        if (out.empty())
            out = (neg ? "-" : "") + body;
        else
            out += (neg ? " - " : " + ") + body;
    }
    return out.empty() ? "0" : out;
}

} // namespace rescorr
