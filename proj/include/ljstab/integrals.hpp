#pragma once

// Closed-form certified integrals. The moment integral int_L^inf theta(w) w^2 dw
// is assembled from exact antiderivatives on each piece:
//   t-piece: int (A w - (25/11) w^2) dw = A w^2/2 - (25/33) w^3
//   h-piece: int (-w^-10 + 2 w^-4) dw   = w^-9/9 - (2/3) w^-3
// Improper tails are limits of antiderivatives, never numeric truncations.
// The shell-weighted integrals of the averaging arguments use the primitives
//   alpha(w) = -w^3/3 + r w^2 + (c^2-r^2) w
//   beta(w)  = -w^4/4 + (2/3) r w^3 + (1/2)(c^2-r^2) w^2
// and an analogous primitive for the h-piece, so ball averages of theta come
// out as genuine enclosures.

#include "ljstab/certify.hpp"
#include "ljstab/constants.hpp"
#include "ljstab/interval.hpp"
#include "ljstab/number_field.hpp"
#include "ljstab/profiles.hpp"
#include "ljstab/rational.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace ljstab {

struct MomentIntegral {
    Rational lower;
    Interval value;
};

namespace detail {

// true if L < s = (11/5)^(1/6); decidable exactly since L is rational
inline bool below_s(const Rational& lower) {
    Rational width = kDefaultWidth;
    for (int i = 0; i < 8; ++i) {
        const Interval s = s_enclosure(width);
        if (lower <= s.lo()) return true;
        if (lower >= s.hi()) return false;
        width *= width;
    }
    throw std::logic_error("below_s: could not separate from s");
}

}  // namespace detail

/// Certified enclosure of int_lower^inf theta(w) w^2 dw.
///
/// For lower <= s the value is exact in Q(s):
///   (1100/1089) s^3 - (180/121) s lower^2 + (25/33) lower^3
/// and only the final interval image of s introduces width.
inline Interval theta_moment(const Rational& lower, const Rational& width = kDefaultWidth) {
    if (lower < 0) throw std::domain_error("theta_moment: lower must be nonnegative");
    if (detail::below_s(lower)) {
        NumberFieldElem value = NumberFieldElem::s_pow(3) * Rational(1100, 1089);
        value -= NumberFieldElem::s() * (Rational(180, 121) * int_pow(lower, 2));
        value += NumberFieldElem(Rational(25, 33) * int_pow(lower, 3));
        return value.interval_image(width);
    }
    // pure h-piece tail: (2/3) L^-3 - (1/9) L^-9, exact rational
    const Rational v = Rational(2, 3) * int_pow(lower, -3) - Rational(1, 9) * int_pow(lower, -9);
    return Interval(v);
}

inline MomentIntegral make_moment_integral(const Rational& lower, const Rational& width = kDefaultWidth) {
    return {lower, theta_moment(lower, width)};
}

/// alpha(w) = -w^3/3 + r w^2 + (c^2 - r^2) w
inline Interval shell_alpha(const Interval& w, const Interval& r, const Rational& c) {
    const Interval k = Rational(c * c) - r.int_pow(2);
    return -(w.int_pow(3) / Rational(3)) + r * w.int_pow(2) + k * w;
}

/// beta(w) = -w^4/4 + (2/3) r w^3 + (1/2)(c^2 - r^2) w^2
inline Interval shell_beta(const Interval& w, const Interval& r, const Rational& c) {
    const Interval k = Rational(c * c) - r.int_pow(2);
    return -(w.int_pow(4) / Rational(4)) + Rational(2, 3) * r * w.int_pow(3) +
           Rational(1, 2) * k * w.int_pow(2);
}

/// The t-piece shell integral int_w1^w2 (A/w - 25/11) w (-w^2 + 2rw + c^2 - r^2) dw
/// collected by powers of r:  E(c, r) = k0 + k1 r + k2 (c^2 - r^2),
/// with k0, k1, k2 exact in Q(s). This makes domination checks against the
/// truncated decimal quadratics a matter of exact coefficient signs.
struct ShellCoefficients {
    NumberFieldElem k0, k1, k2;

    Interval eval(const Interval& r, const Rational& c, const Rational& width = kDefaultWidth) const {
        const Interval k = Rational(c * c) - r.int_pow(2);
        return k0.interval_image(width) + k1.interval_image(width) * r + k2.interval_image(width) * k;
    }
};

inline ShellCoefficients shell_integral_coefficients(const Rational& w1, const Rational& w2) {
    if (!(0 < w1 && w1 < w2)) throw std::domain_error("shell_integral_coefficients: need 0 < w1 < w2");
    const NumberFieldElem a = NumberFieldElem::s() * Rational(360, 121);
    const Rational d1 = w2 - w1;
    const Rational d2 = int_pow(w2, 2) - int_pow(w1, 2);
    const Rational d3 = int_pow(w2, 3) - int_pow(w1, 3);
    const Rational d4 = int_pow(w2, 4) - int_pow(w1, 4);
    ShellCoefficients sc;
    sc.k0 = a * (-d3 / 3) + NumberFieldElem(Rational(25, 44) * d4);
    sc.k1 = a * d2 - NumberFieldElem(Rational(50, 33) * d3);
    sc.k2 = a * d1 - NumberFieldElem(Rational(25, 22) * d2);
    return sc;
}

struct ShellIntegral {
    Interval r;
    Rational c;
    Rational w1, w2;
    Interval value;
};

/// A(alpha(w2) - alpha(w1)) - (25/11)(beta(w2) - beta(w1)) with interval r.
inline Interval shell_weighted_integral(const Interval& r, const Rational& c, const Rational& w1,
                                        const Rational& w2, const Rational& width = kDefaultWidth) {
    return shell_integral_coefficients(w1, w2).eval(r, c, width);
}

inline ShellIntegral make_shell_integral(const Interval& r, const Rational& c, const Rational& w1,
                                         const Rational& w2, const Rational& width = kDefaultWidth) {
    return {r, c, w1, w2, shell_weighted_integral(r, c, w1, w2, width)};
}

namespace detail {

// Antiderivative of t(w) w (c^2 - (w-r)^2) on the t-piece, as a function of
// the (interval) endpoint w.
inline Interval shell_primitive_t(const Interval& w, const Interval& r, const Rational& c,
                                  const Rational& width) {
    const Interval a = big_a_enclosure(width);
    return a * shell_alpha(w, r, c) - Rational(25, 11) * shell_beta(w, r, c);
}

// Antiderivative of h(w) w (c^2 - (w-r)^2) on the h-piece:
// expand (-w^-12 + 2 w^-6)(-w^3 + 2 r w^2 + k w) and integrate term by term.
inline Interval shell_primitive_h(const Interval& w, const Interval& r, const Rational& c) {
    const Interval k = Rational(c * c) - r.int_pow(2);
    return -(w.int_pow(-8) / Rational(8)) + Rational(2, 9) * r * w.int_pow(-9) +
           k * w.int_pow(-10) / Rational(10) + w.int_pow(-2) - Rational(4, 3) * r * w.int_pow(-3) -
           Rational(1, 2) * k * w.int_pow(-4);
}

// Continuous antiderivative of theta(w) w (c^2 - (w-r)^2), pieced at s.
inline Interval shell_primitive_theta(const Interval& w, const Interval& r, const Rational& c,
                                      const Rational& width) {
    const Interval s = s_enclosure(width);
    if (w.hi() <= s.lo()) return shell_primitive_t(w, r, c, width);
    const Interval continuation = shell_primitive_t(s, r, c, width) + shell_primitive_h(w, r, c) -
                                  shell_primitive_h(s, r, c);
    if (w.lo() >= s.hi()) return continuation;
    // w straddles s: hull of both branch evaluations over the clipped ranges
    const Interval left = shell_primitive_t(Interval(w.lo(), s.hi()), r, c, width);
    const Interval right = shell_primitive_t(s, r, c, width) +
                           shell_primitive_h(Interval(s.lo(), w.hi()), r, c) -
                           shell_primitive_h(s, r, c);
    return Interval::hull(left, right);
}

}  // namespace detail

/// Certified lower-bound-quality enclosure of the average of theta^trunc over
/// the ball of radius `ball_radius` centered at distance `x_norm` from the
/// origin. Spherical-shell decomposition:
///   avg = (3 / (4 c^3 r)) int_{max(trunc, r-c)}^{r+c} theta(w) w (c^2-(w-r)^2) dw
/// (the pi factors cancel). Requires the ball to avoid the origin.
inline Interval ball_average_lower_bound(const Interval& x_norm, const Rational& ball_radius,
                                         const Rational& trunc, const Rational& width = kDefaultWidth) {
    if (ball_radius <= 0) throw std::domain_error("ball_average_lower_bound: radius must be positive");
    if (trunc < 0) throw std::domain_error("ball_average_lower_bound: negative truncation");
    if (x_norm.lo() <= ball_radius)
        throw std::domain_error("ball_average_lower_bound: ball reaches the origin, shell decomposition invalid");
    const Rational& c = ball_radius;
    const Interval w1(std::max(trunc, Rational(x_norm.lo() - c)),
                      std::max(trunc, Rational(x_norm.hi() - c)));
    const Interval w2 = x_norm + Interval(c);
    const Interval integral = detail::shell_primitive_theta(w2, x_norm, c, width) -
                              detail::shell_primitive_theta(w1, x_norm, c, width);
    return Rational(3, 4) / Rational(int_pow(c, 3)) * integral / x_norm;
}

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

namespace detail {

inline void adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                             double fm, double fb, double whole, double tol, int depth,
                             QuadratureResult& out) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        out.value += left + right + delta / 15.0;
        out.error_estimate += std::abs(delta) / 15.0;
        return;
    }
    adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1, out);
    adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1, out);
}

inline QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                           double tol, int depth = 48) {
    QuadratureResult out;
    if (a >= b) return out;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, depth, out);
    return out;
}

}  // namespace detail

/// Floating cross-check for ball_average_lower_bound: adaptive Simpson on the
/// same shell decomposition, split at the profile breakpoints.
inline QuadratureResult ball_average_quadrature(double x_norm, double ball_radius, double trunc,
                                                double tol = 1e-11) {
    if (x_norm <= ball_radius)
        throw std::domain_error("ball_average_quadrature: ball reaches the origin");
    const double c = ball_radius;
    const double lo = std::max(trunc, x_norm - c);
    const double hi = x_norm + c;
    const RadialProfile theta = RadialProfile::theta();
    const auto integrand = [&](double w) {
        const double gap = w - x_norm;
        return theta.eval_double(w) * w * (c * c - gap * gap);
    };
    std::vector<double> cuts{lo};
    for (double b : {trunc, s_double()})
        if (b > lo && b < hi) cuts.push_back(b);
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    QuadratureResult total;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const QuadratureResult piece = detail::integrate_adaptive(integrand, cuts[i], cuts[i + 1], tol);
        total.value += piece.value;
        total.error_estimate += piece.error_estimate;
    }
    const double norm = 3.0 / (4.0 * c * c * c * x_norm);
    total.value *= norm;
    total.error_estimate = total.error_estimate * std::abs(norm) + 1e-13;
    return total;
}

}  // namespace ljstab
