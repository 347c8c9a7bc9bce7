#pragma once

// Exact rational arithmetic used throughout the certified computation path.
// Endpoints, polynomial coefficients and paper constants are all kept as
// arbitrary-precision rationals so that results are platform-independent.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ljstab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// q^n for integer n. Negative exponents require q != 0.
inline Rational int_pow(const Rational& q, long n) {
    if (n < 0) {
        if (q == 0) throw std::domain_error("int_pow: zero base with negative exponent");
        return Rational(1) / int_pow(q, -n);
    }
    Rational result(1);
    Rational base = q;
    unsigned long e = static_cast<unsigned long>(n);
    while (e != 0) {
        if (e & 1UL) result *= base;
        base *= base;
        e >>= 1UL;
    }
    return result;
}

inline Rational pow10(long n) { return int_pow(Rational(10), n); }

/// Parses decimal literals ("0.7224", "-14.316", "1e-12", "3/7") into exact
/// rationals. Decimal digits are taken literally, never rounded.
inline Rational parse_decimal(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("parse_decimal: empty string");
    if (s.find('/') != std::string::npos) return Rational(s);

    bool negative = false;
    std::size_t pos = 0;
    if (s[pos] == '+' || s[pos] == '-') {
        negative = (s[pos] == '-');
        ++pos;
    }

    BigInt mantissa = 0;
    long frac_digits = 0;
    bool seen_digit = false, seen_point = false;
    long exponent = 0;
    for (; pos < s.size(); ++pos) {
        char ch = s[pos];
        if (ch >= '0' && ch <= '9') {
            mantissa = mantissa * 10 + (ch - '0');
            if (seen_point) ++frac_digits;
            seen_digit = true;
        } else if (ch == '.') {
            if (seen_point) throw std::invalid_argument("parse_decimal: repeated point");
            seen_point = true;
        } else if (ch == 'e' || ch == 'E') {
            exponent = std::stol(s.substr(pos + 1));
            break;
        } else {
            throw std::invalid_argument("parse_decimal: bad character in \"" + s + "\"");
        }
    }
    if (!seen_digit) throw std::invalid_argument("parse_decimal: no digits in \"" + s + "\"");

    Rational value(mantissa);
    value *= pow10(exponent - frac_digits);
    return negative ? -value : value;
}

enum class RoundDir { Down, Up, Nearest };

namespace detail {

// floor(log10(|q|)) for q != 0, via exact integer comparisons.
inline long floor_log10(const Rational& q) {
    Rational a = q < 0 ? Rational(-q) : q;
    long e = 0;
    if (a >= 1) {
        while (a >= 10) { a /= 10; ++e; }
    } else {
        while (a < 1) { a *= 10; --e; }
    }
    return e;
}

}  // namespace detail

/// Renders q with `sig` significant decimal digits. Down/Up round toward
/// -inf/+inf so a printed [lo, hi] pair still encloses the exact value.
inline std::string format_decimal(const Rational& q, int sig = 12, RoundDir dir = RoundDir::Nearest) {
    if (sig < 1) throw std::invalid_argument("format_decimal: sig must be positive");
    if (q == 0) return "0";

    const bool negative = q < 0;
    const Rational a = negative ? Rational(-q) : q;
    const long k = detail::floor_log10(a);
    // m = a * 10^(sig-1-k) lands in [10^(sig-1), 10^sig).
    const Rational scaled = a * pow10(sig - 1 - k);
    BigInt m = numerator(scaled) / denominator(scaled);  // floor
    const bool exact = (Rational(m) == scaled);
    if (!exact) {
        switch (dir) {
            case RoundDir::Down: if (negative) ++m; break;
            case RoundDir::Up: if (!negative) ++m; break;
            case RoundDir::Nearest:
                if (2 * (scaled - Rational(m)) >= 1) ++m;
                break;
        }
    }
    std::string digits = m.str();
    long point_pos = k + 1;  // digits before the decimal point
    if (static_cast<long>(digits.size()) > sig) point_pos += static_cast<long>(digits.size()) - sig;

    std::string out;
    if (point_pos >= -5 && point_pos <= sig + 6) {
        if (point_pos <= 0) {
            out = "0." + std::string(static_cast<std::size_t>(-point_pos), '0') + digits;
        } else if (point_pos >= static_cast<long>(digits.size())) {
            out = digits + std::string(static_cast<std::size_t>(point_pos - digits.size()), '0');
        } else {
            out = digits.substr(0, static_cast<std::size_t>(point_pos)) + "." +
                  digits.substr(static_cast<std::size_t>(point_pos));
        }
        // trim trailing zeros after a decimal point
        if (out.find('.') != std::string::npos) {
            while (out.back() == '0') out.pop_back();
            if (out.back() == '.') out.pop_back();
        }
    } else {
        out = digits.substr(0, 1);
        std::string rest = digits.substr(1);
        while (!rest.empty() && rest.back() == '0') rest.pop_back();
        if (!rest.empty()) out += "." + rest;
        out += "e" + std::to_string(k);
    }
    return negative ? "-" + out : out;
}

inline std::string to_fraction_string(const Rational& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) s += "/" + denominator(q).str();
    return s;
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace ljstab
