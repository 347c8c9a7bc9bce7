#pragma once

// Refinable enclosures for the irrational constants of the problem:
// pi, s = (11/5)^(1/6) and A = (360/121) * s. Each enclosure is produced on
// demand at a requested width, from exact rational iterations, so certified
// results do not depend on floating-point rounding modes.

#include "ljstab/interval.hpp"
#include "ljstab/rational.hpp"

#include <stdexcept>

namespace ljstab {

inline const Rational kDefaultWidth = Rational(1, pow10(15).convert_to<BigInt>());

/// Enclosure of the positive n-th root of `target`, by exact bisection on
/// x^n = target.
inline Interval nth_root_enclosure(const Rational& target, unsigned n, const Rational& width = kDefaultWidth) {
    if (target <= 0) throw std::domain_error("nth_root_enclosure: target must be positive");
    if (n == 0) throw std::domain_error("nth_root_enclosure: zero root order");
    if (width <= 0) throw std::domain_error("nth_root_enclosure: width must be positive");
    Rational lo, hi;
    if (target >= 1) { lo = 1; hi = target; }
    else { lo = target; hi = 1; }
    while (hi - lo > width) {
        const Rational mid = (lo + hi) / 2;
        const Rational p = int_pow(mid, static_cast<long>(n));
        if (p == target) return Interval(mid);
        (p < target ? lo : hi) = mid;
    }
    return Interval(lo, hi);
}

/// s = (11/5)^(1/6), the radius where the radial Laplacian of the pair
/// profile changes sign.
inline Interval s_enclosure(const Rational& width = kDefaultWidth) {
    return nth_root_enclosure(Rational(11, 5), 6, width);
}

/// A = (360/121) * (11/5)^(1/6), the strength of the harmonic piece.
inline Interval big_a_enclosure(const Rational& width = kDefaultWidth) {
    return Rational(360, 121) * s_enclosure(width * Rational(121, 360));
}

namespace detail {

// atan(1/x) for integer x >= 2 via the alternating Taylor series; consecutive
// partial sums bracket the limit, giving an exact rational enclosure.
inline Interval atan_inv_enclosure(long x, const Rational& eps) {
    const Rational x2(static_cast<long>(x) * x);
    Rational term(1, x);
    Rational sum = 0;
    long k = 0;
    while (true) {
        const Rational contrib = term / (2 * k + 1);
        if (contrib <= eps) {
            // partial sum S and S +- contrib bracket the limit
            if (k % 2 == 0) return Interval(sum, sum + contrib);
            return Interval(sum - contrib, sum);
        }
        sum += (k % 2 == 0) ? contrib : -contrib;
        term /= x2;
        ++k;
        if (k > 100000) throw std::logic_error("atan_inv_enclosure: series did not reach eps");
    }
}

}  // namespace detail

/// Machin's formula, pi = 16 atan(1/5) - 4 atan(1/239), in exact rationals.
inline Interval pi_enclosure(const Rational& width = kDefaultWidth) {
    if (width <= 0) throw std::domain_error("pi_enclosure: width must be positive");
    const Rational eps = width / 64;
    return Rational(16) * detail::atan_inv_enclosure(5, eps) -
           Rational(4) * detail::atan_inv_enclosure(239, eps);
}

}  // namespace ljstab
