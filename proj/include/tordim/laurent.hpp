#pragma once

// Exact two-variable integer Laurent polynomials: arithmetic, parsing,
// evaluation, monomial substitution, and the expression grammar used as
// the interchange format across the toolkit.
//
// Grammar:  integer literals, variables `z` and `w`, operators + - * and
// ^ with integer (possibly negative) exponents, parentheses.  Negative
// exponents require the base to be a single term with unit coefficient.

#include <algorithm>
#include <array>
#include <cctype>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace tordim {

using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const BigInt& v) { return v.convert_to<double>(); }

struct Exponent {
    int a = 0;  // power of z
    int b = 0;  // power of w
    auto operator<=>(const Exponent&) const = default;
};

class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t pos)
        : std::runtime_error("syntax error at position " + std::to_string(pos) + ": " + what),
          position(pos) {}
    std::size_t position;
};

namespace detail {
inline std::complex<double> ipow(std::complex<double> base, int e) {
    if (e < 0) return 1.0 / ipow(base, -e);
    std::complex<double> r{1.0, 0.0};
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}
}  // namespace detail

class LaurentPoly2 {
public:
    using TermMap = std::map<Exponent, BigInt>;

    LaurentPoly2() = default;

    static LaurentPoly2 constant(BigInt c) { return monomial(std::move(c), {0, 0}); }

    static LaurentPoly2 monomial(BigInt c, Exponent e) {
        LaurentPoly2 p;
        if (c != 0) p.terms_[e] = std::move(c);
        return p;
    }

    static LaurentPoly2 variable_z(int power = 1) { return monomial(1, {power, 0}); }
    static LaurentPoly2 variable_w(int power = 1) { return monomial(1, {0, power}); }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    bool is_monomial() const { return terms_.size() == 1; }

    BigInt coeff(Exponent e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? BigInt(0) : it->second;
    }

    void add_term(Exponent e, const BigInt& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    bool operator==(const LaurentPoly2&) const = default;

    LaurentPoly2 operator-() const {
        LaurentPoly2 r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }

    LaurentPoly2& operator+=(const LaurentPoly2& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    LaurentPoly2& operator-=(const LaurentPoly2& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    friend LaurentPoly2 operator+(LaurentPoly2 a, const LaurentPoly2& b) { return a += b; }
    friend LaurentPoly2 operator-(LaurentPoly2 a, const LaurentPoly2& b) { return a -= b; }

    friend LaurentPoly2 operator*(const LaurentPoly2& a, const LaurentPoly2& b) {
        LaurentPoly2 r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_)
                r.add_term({ea.a + eb.a, ea.b + eb.b}, ca * cb);
        return r;
    }
    LaurentPoly2& operator*=(const LaurentPoly2& o) { return *this = *this * o; }

    LaurentPoly2 pow(int e) const {
        if (e < 0) {
            if (terms_.size() != 1 || boost::multiprecision::abs(terms_.begin()->second) != 1)
                throw std::invalid_argument("negative power of a non-unit polynomial");
            const auto& [exp, c] = *terms_.begin();
            Exponent ie{exp.a * e, exp.b * e};
            return monomial((-e) % 2 == 0 ? BigInt(1) : c, ie);
        }
        LaurentPoly2 r = constant(1), base = *this;
        while (e) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

    // exact evaluation at nonzero complex arguments
    std::complex<double> evaluate(std::complex<double> z, std::complex<double> w) const {
        if (z == 0.0 || w == 0.0) throw std::invalid_argument("evaluate: zero argument");
        std::complex<double> s = 0.0;
        for (const auto& [e, c] : terms_)
            s += to_double(c) * detail::ipow(z, e.a) * detail::ipow(w, e.b);
        return s;
    }

    // exact evaluation with z, w in {+1, -1}
    BigInt evaluate_pm1(int sz, int sw) const {
        BigInt s = 0;
        for (const auto& [e, c] : terms_) {
            bool neg = (sz < 0 && (e.a & 1)) ^ (sw < 0 && (e.b & 1));
            s += neg ? -c : c;
        }
        return s;
    }

    // replace (z, w) by (z^m00 w^m10, z^m01 w^m11), multiply by sign and z^s.a w^s.b
    LaurentPoly2 substitute_monomial(const std::array<std::array<int, 2>, 2>& m, int sign,
                                     Exponent shift = {0, 0}) const {
        if (m[0][0] * m[1][1] - m[0][1] * m[1][0] == 0)
            throw std::invalid_argument("substitute_monomial: singular exponent matrix");
        LaurentPoly2 r;
        for (const auto& [e, c] : terms_) {
            Exponent ne{e.a * m[0][0] + e.b * m[0][1] + shift.a,
                        e.a * m[1][0] + e.b * m[1][1] + shift.b};
            r.add_term(ne, sign < 0 ? -c : c);
        }
        return r;
    }

    // exponent ranges of the support; polynomial must be nonzero
    int min_z() const { return min_max(true).first; }
    int max_z() const { return min_max(true).second; }
    int min_w() const { return min_max(false).first; }
    int max_w() const { return min_max(false).second; }

    BigInt content() const {
        BigInt g = 0;
        for (const auto& [e, c] : terms_) g = boost::multiprecision::gcd(g, c);
        return g;
    }

    std::string format() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            BigInt ac = boost::multiprecision::abs(c);
            bool neg = c < 0;
            if (first) {
                if (neg) out += "-";
                first = false;
            } else {
                out += neg ? " - " : " + ";
            }
            std::string mono;
            if (e.a != 0) {
                mono += "z";
                if (e.a != 1) mono += "^" + std::to_string(e.a);
            }
            if (e.b != 0) {
                if (!mono.empty()) mono += "*";
                mono += "w";
                if (e.b != 1) mono += "^" + std::to_string(e.b);
            }
            if (mono.empty()) {
                out += ac.str();
            } else {
                if (ac != 1) out += ac.str() + "*";
                out += mono;
            }
        }
        return out;
    }

    static LaurentPoly2 parse(const std::string& text);

private:
    std::pair<int, int> min_max(bool z_axis) const {
        if (terms_.empty()) throw std::invalid_argument("zero polynomial has no support");
        int lo = 0, hi = 0;
        bool init = false;
        for (const auto& [e, c] : terms_) {
            int v = z_axis ? e.a : e.b;
            if (!init) {
                lo = hi = v;
                init = true;
            } else {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
        return {lo, hi};
    }

    TermMap terms_;
};

namespace detail {

class PolyParser {
public:
    explicit PolyParser(const std::string& s) : s_(s) {}

    LaurentPoly2 run() {
        LaurentPoly2 p = expr();
        skip_ws();
        if (pos_ != s_.size()) throw parse_error("unexpected trailing input", pos_);
        return p;
    }

private:
    LaurentPoly2 expr() {
        LaurentPoly2 p = term();
        for (;;) {
            skip_ws();
            if (peek() == '+') {
                ++pos_;
                p += term();
            } else if (peek() == '-') {
                ++pos_;
                p -= term();
            } else {
                return p;
            }
        }
    }

    LaurentPoly2 term() {
        LaurentPoly2 p = factor();
        for (;;) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                p *= factor();
            } else {
                return p;
            }
        }
    }

    LaurentPoly2 factor() {
        skip_ws();
        int sign = 1;
        while (peek() == '-' || peek() == '+') {
            if (peek() == '-') sign = -sign;
            ++pos_;
            skip_ws();
        }
        LaurentPoly2 base = atom();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            base = base.pow(exponent());
        }
        return sign < 0 ? -base : base;
    }

    LaurentPoly2 atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            LaurentPoly2 p = expr();
            skip_ws();
            if (peek() != ')') throw parse_error("expected ')'", pos_);
            ++pos_;
            return p;
        }
        if (c == 'z') {
            ++pos_;
            return LaurentPoly2::variable_z();
        }
        if (c == 'w') {
            ++pos_;
            return LaurentPoly2::variable_w();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return LaurentPoly2::constant(integer());
        throw parse_error("expected integer, variable, or '('", pos_);
    }

    int exponent() {
        skip_ws();
        int sign = 1;
        if (peek() == '-' || peek() == '+') {
            if (peek() == '-') sign = -1;
            ++pos_;
            skip_ws();
        }
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            throw parse_error("expected integer exponent", pos_);
        BigInt v = integer();
        if (v > 1'000'000) throw parse_error("exponent out of range", pos_);
        return sign * v.convert_to<int>();
    }

    BigInt integer() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) throw parse_error("expected integer", pos_);
        return BigInt(s_.substr(start, pos_ - start));
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline LaurentPoly2 LaurentPoly2::parse(const std::string& text) {
    return detail::PolyParser(text).run();
}

// One-variable integer polynomial, coefficients lowest to highest degree.
// Highest stored coefficient is nonzero unless the polynomial is zero.
struct UnivariatePoly {
    std::vector<BigInt> coeffs;

    UnivariatePoly() = default;
    explicit UnivariatePoly(std::vector<BigInt> c) : coeffs(std::move(c)) { normalize(); }

    void normalize() {
        while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    }

    bool is_zero() const { return coeffs.empty(); }
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    bool operator==(const UnivariatePoly&) const = default;
};

}  // namespace tordim
