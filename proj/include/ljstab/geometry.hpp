#pragma once

// Sphere-sphere intersection formulas: lens volume, spherical-cap area and
// cap height. Out-of-range separations are handled totally (tangent or
// disjoint balls give 0, containment gives the smaller ball), which is what
// the overlap-cancellation sweep over close pairs wants.

#include "ljstab/constants.hpp"
#include "ljstab/interval.hpp"
#include "ljstab/rational.hpp"

#include <algorithm>
#include <stdexcept>

namespace ljstab {

struct BallPair {
    Rational r1, r2, d;

    BallPair(Rational radius1, Rational radius2, Rational distance)
        : r1(std::move(radius1)), r2(std::move(radius2)), d(std::move(distance)) {
        if (r1 <= 0 || r2 <= 0) throw std::domain_error("BallPair: radii must be positive");
        if (d < 0) throw std::domain_error("BallPair: distance must be nonnegative");
    }

    bool intersects() const { return d <= r1 + r2; }
    bool one_inside_other() const {
        const Rational gap = r1 >= r2 ? r1 - r2 : r2 - r1;
        return d <= gap;
    }
};

/// |B1 cap B2|. In the proper lens regime this is
/// (pi / 12d) (r1+r2-d)^2 (d^2 + 2d(r1+r2) - 3(r1-r2)^2).
inline Interval lens_volume(const BallPair& p, const Rational& width = kDefaultWidth) {
    if (!p.intersects()) return Interval(Rational(0));
    const Interval pi = pi_enclosure(width);
    if (p.one_inside_other()) {
        const Rational rmin = std::min(p.r1, p.r2);
        return pi * (Rational(4, 3) * int_pow(rmin, 3));
    }
    const Rational sum = p.r1 + p.r2;
    const Rational diff = p.r1 - p.r2;
    const Rational factor =
        (sum - p.d) * (sum - p.d) * (p.d * p.d + 2 * p.d * sum - 3 * diff * diff) / (12 * p.d);
    return pi * factor;
}

/// Area of the part of the sphere S1 lying inside the ball B2:
/// pi (r1/d) (r1+r2-d) (r2-r1+d).
inline Interval cap_area(const BallPair& p, const Rational& width = kDefaultWidth) {
    if (!p.intersects()) return Interval(Rational(0));
    const Interval pi = pi_enclosure(width);
    if (p.d <= p.r2 - p.r1) return pi * (4 * p.r1 * p.r1);  // S1 entirely inside B2
    if (p.d <= p.r1 - p.r2) return Interval(Rational(0));   // B2 strictly inside B1
    const Rational factor = p.r1 * (p.r1 + p.r2 - p.d) * (p.r2 - p.r1 + p.d) / p.d;
    return pi * factor;
}

/// Height of the spherical cap S1 cap B2: (1/2d)(r1+r2-d)(r2-r1+d).
/// Exact rational, no pi involved.
inline Rational cap_height(const BallPair& p) {
    if (p.d == 0) throw std::domain_error("cap_height: coincident centers");
    if (!p.intersects()) return Rational(0);
    if (p.d <= p.r2 - p.r1) return 2 * p.r1;  // full sphere swallowed
    if (p.d <= p.r1 - p.r2) return Rational(0);
    return (p.r1 + p.r2 - p.d) * (p.r2 - p.r1 + p.d) / (2 * p.d);
}

// double versions for finite-difference and Monte Carlo cross-checks

inline double lens_volume_double(double r1, double r2, double d) {
    constexpr double pi = 3.14159265358979323846;
    if (d >= r1 + r2) return 0.0;
    if (d <= std::abs(r1 - r2)) {
        const double rmin = std::min(r1, r2);
        return 4.0 / 3.0 * pi * rmin * rmin * rmin;
    }
    const double s = r1 + r2 - d;
    return pi / (12.0 * d) * s * s * (d * d + 2.0 * d * (r1 + r2) - 3.0 * (r1 - r2) * (r1 - r2));
}

inline double cap_area_double(double r1, double r2, double d) {
    constexpr double pi = 3.14159265358979323846;
    if (d >= r1 + r2) return 0.0;
    if (d <= r2 - r1) return 4.0 * pi * r1 * r1;
    if (d <= r1 - r2) return 0.0;
    return pi * r1 / d * (r1 + r2 - d) * (r2 - r1 + d);
}

inline double cap_height_double(double r1, double r2, double d) {
    if (d >= r1 + r2) return 0.0;
    if (d <= r2 - r1) return 2.0 * r1;
    if (d <= r1 - r2) return 0.0;
    return (r1 + r2 - d) * (r2 - r1 + d) / (2.0 * d);
}

}  // namespace ljstab
