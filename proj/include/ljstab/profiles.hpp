#pragma once

// The minus-energy profile h(r) = -r^-12 + 2r^-6 and its companions:
//   h~      = 1 on (0,1], h on (1,inf)
//   t(r)    = A r^-1 - 25/11,  A = (360/121) (11/5)^(1/6)
//   theta   = t on (0,s], h on (s,inf)          (s = (11/5)^(1/6))
//   theta^c = 0 on (0,c], theta on (c,inf)
// Interval evaluation exploits piecewise monotonicity, so enclosures are
// essentially exact images. A plain double path is provided for the cluster
// code, where certified arithmetic is not required.

#include "ljstab/constants.hpp"
#include "ljstab/interval.hpp"
#include "ljstab/number_field.hpp"
#include "ljstab/rational.hpp"

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace ljstab {

/// h at an exact rational radius.
inline Rational h_exact(const Rational& r) {
    if (r <= 0) throw std::domain_error("h_exact: radius must be positive");
    const Rational r6 = int_pow(r, 6);
    return (2 * r6 - 1) / (r6 * r6);
}

inline double h_double(double r) {
    const double ir6 = 1.0 / (r * r * r * r * r * r);
    return (2.0 - ir6) * ir6;
}

inline double s_double() { return std::pow(11.0 / 5.0, 1.0 / 6.0); }
inline double big_a_double() { return (360.0 / 121.0) * s_double(); }

enum class ProfileKind { H, HTilde, T, Theta, ThetaTrunc };
enum class Side { Left, Right };

class RadialProfile {
public:
    static RadialProfile h() { return RadialProfile(ProfileKind::H); }
    static RadialProfile h_tilde() { return RadialProfile(ProfileKind::HTilde); }
    static RadialProfile t() { return RadialProfile(ProfileKind::T); }
    static RadialProfile theta() { return RadialProfile(ProfileKind::Theta); }
    static RadialProfile theta_trunc(const Rational& cutoff) {
        if (cutoff < 0) throw std::domain_error("theta_trunc: cutoff must be nonnegative");
        return RadialProfile(ProfileKind::ThetaTrunc, cutoff);
    }

    ProfileKind kind() const { return kind_; }
    const Rational& truncation() const { return trunc_; }

    /// Enclosure of the exact image over a strictly positive interval.
    /// Intervals straddling a breakpoint are split, not rejected.
    Interval eval(const Interval& r, const Rational& width = kDefaultWidth) const {
        if (r.lo() <= 0) throw std::domain_error("RadialProfile: radius touching zero");
        switch (kind_) {
            case ProfileKind::H: return eval_h(r);
            case ProfileKind::HTilde: return eval_h_tilde(r);
            case ProfileKind::T: return eval_t(r, width);
            case ProfileKind::Theta: return eval_theta(r, width);
            case ProfileKind::ThetaTrunc: {
                if (r.hi() <= trunc_) return Interval(Rational(0));
                const Interval live(std::max(r.lo(), trunc_), r.hi());
                const Interval inner = eval_theta(live, width);
                if (r.lo() > trunc_) return inner;
                return Interval::hull(Interval(Rational(0)), inner);
            }
        }
        throw std::logic_error("RadialProfile: unknown kind");
    }

    double eval_double(double r) const {
        switch (kind_) {
            case ProfileKind::H: return h_double(r);
            case ProfileKind::HTilde: return r <= 1.0 ? 1.0 : h_double(r);
            case ProfileKind::T: return big_a_double() / r - 25.0 / 11.0;
            case ProfileKind::Theta:
                return r <= s_double() ? big_a_double() / r - 25.0 / 11.0 : h_double(r);
            case ProfileKind::ThetaTrunc: {
                if (r <= to_double(trunc_)) return 0.0;
                return r <= s_double() ? big_a_double() / r - 25.0 / 11.0 : h_double(r);
            }
        }
        throw std::logic_error("RadialProfile: unknown kind");
    }

    /// Derivative of order 1 or 2 of the active piece. An interval that
    /// straddles a breakpoint needs `side` to pick the piece.
    Interval derivative(const Interval& r, int order, std::optional<Side> side = std::nullopt,
                        const Rational& width = kDefaultWidth) const {
        if (r.lo() <= 0) throw std::domain_error("RadialProfile: radius touching zero");
        if (order != 1 && order != 2) throw std::domain_error("RadialProfile: derivative order must be 1 or 2");
        switch (kind_) {
            case ProfileKind::H: return h_derivative(r, order);
            case ProfileKind::T: return t_derivative(r, order, width);
            case ProfileKind::HTilde: {
                const Interval one(Rational(1));
                switch (resolve_piece(r, one, side)) {
                    case PieceChoice::Below: return Interval(Rational(0));
                    case PieceChoice::Above: return h_derivative(r, order);
                }
                break;
            }
            case ProfileKind::Theta: {
                const Interval s = s_enclosure(width);
                switch (resolve_piece(r, s, side)) {
                    case PieceChoice::Below: return t_derivative(r, order, width);
                    case PieceChoice::Above: return h_derivative(r, order);
                }
                break;
            }
            case ProfileKind::ThetaTrunc: {
                const Interval cut{Interval(trunc_)};
                if (r.hi() <= trunc_ || (r.contains(trunc_) && side == Side::Left))
                    return Interval(Rational(0));
                if (r.contains(trunc_) && !side)
                    throw std::domain_error("RadialProfile: derivative straddles truncation radius");
                const Interval s = s_enclosure(width);
                switch (resolve_piece(r, s, side)) {
                    case PieceChoice::Below: return t_derivative(r, order, width);
                    case PieceChoice::Above: return h_derivative(r, order);
                }
                break;
            }
        }
        throw std::logic_error("RadialProfile: unreachable");
    }

private:
    explicit RadialProfile(ProfileKind kind, Rational trunc = Rational(0))
        : kind_(kind), trunc_(std::move(trunc)) {}

    enum class PieceChoice { Below, Above };

    static PieceChoice resolve_piece(const Interval& r, const Interval& breakpoint,
                                     std::optional<Side> side) {
        if (r.hi() <= breakpoint.lo()) return PieceChoice::Below;
        if (r.lo() >= breakpoint.hi()) return PieceChoice::Above;
        if (!side) throw std::domain_error("RadialProfile: interval straddles a breakpoint; side selector required");
        return *side == Side::Left ? PieceChoice::Below : PieceChoice::Above;
    }

    // h is increasing on (0,1], decreasing on [1,inf), max h(1) = 1;
    // endpoint values are exact rationals, so this is the exact image.
    static Interval eval_h(const Interval& r) {
        const Rational at_lo = h_exact(r.lo());
        const Rational at_hi = h_exact(r.hi());
        if (r.hi() <= 1) return Interval(at_lo, at_hi);
        if (r.lo() >= 1) return Interval(at_hi, at_lo);
        return Interval(std::min(at_lo, at_hi), Rational(1));
    }

    static Interval eval_h_tilde(const Interval& r) {
        if (r.hi() <= 1) return Interval(Rational(1));
        if (r.lo() >= 1) return eval_h(r);
        return Interval::hull(Interval(Rational(1)), eval_h(Interval(Rational(1), r.hi())));
    }

    // t is strictly decreasing.
    static Interval eval_t(const Interval& r, const Rational& width) {
        const Interval a = big_a_enclosure(width);
        const Interval inv(Rational(1) / r.hi(), Rational(1) / r.lo());
        return a * inv - Rational(25, 11);
    }

    static Interval eval_theta(const Interval& r, const Rational& width) {
        const Interval s = s_enclosure(width);
        if (r.hi() <= s.lo()) return eval_t(r, width);
        if (r.lo() >= s.hi()) return eval_h(r);
        const Interval left = eval_t(Interval(r.lo(), std::min(r.hi(), s.hi())), width);
        const Interval right = eval_h(Interval(std::max(r.lo(), s.lo()), r.hi()));
        return Interval::hull(left, right);
    }

    // factored forms keep the enclosure sign-sharp across r = 1
    static Interval h_derivative(const Interval& r, int order) {
        if (order == 1)
            return Rational(12) * r.int_pow(-13) * (Rational(1) - r.int_pow(6));
        return Rational(12) * r.int_pow(-14) * (Rational(7) * r.int_pow(6) - Rational(13));
    }

    static Interval t_derivative(const Interval& r, int order, const Rational& width) {
        const Interval a = big_a_enclosure(width);
        if (order == 1) return -(a * r.int_pow(-2));
        return Rational(2) * a * r.int_pow(-3);
    }

    ProfileKind kind_;
    Rational trunc_;
};

/// Convenience wrapper matching the operation contract.
inline Interval eval_profile(const RadialProfile& profile, const Interval& r,
                             const Rational& width = kDefaultWidth) {
    return profile.eval(r, width);
}

inline Interval profile_derivatives(const RadialProfile& profile, const Interval& r, int order,
                                    std::optional<Side> side = std::nullopt,
                                    const Rational& width = kDefaultWidth) {
    return profile.derivative(r, order, side, width);
}

/// Laplacian of x -> h(|x|), i.e. 12(-11 r^-14 + 5 r^-8), evaluated through
/// the factored form (12 r^-14)(5 r^6 - 11) for a tight enclosure.
inline Interval radial_laplacian_h(const Interval& r) {
    if (r.lo() <= 0) throw std::domain_error("radial_laplacian_h: radius touching zero");
    return (Rational(12) * r.int_pow(-14)) * (Rational(5) * r.int_pow(6) - Rational(11));
}

/// The Lennard-Jones potential on vectors; lj_phi(x) = -h(|x|).
inline double lj_phi(const std::array<double, 3>& x) {
    const double n2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    if (n2 == 0.0) throw std::domain_error("lj_phi: zero vector");
    const double inv6 = 1.0 / (n2 * n2 * n2);
    return (inv6 - 2.0) * inv6;
}

// Exact derivative values at the matching radius s, as elements of Q(s).
// Both h and t satisfy h(s) = t(s) = 85/121, and the first two derivatives
// agree as well; these are the quantities the tangency check compares.

inline NumberFieldElem h_deriv_at_s_exact(int order) {
    // k-th derivative of -r^-12 + 2 r^-6 evaluated at s
    Rational f1(-1), f2(2);
    long e1 = -12, e2 = -6;
    for (int k = 0; k < order; ++k) {
        f1 *= e1; f2 *= e2;
        --e1; --e2;
    }
    return NumberFieldElem::s_pow(e1) * f1 + NumberFieldElem::s_pow(e2) * f2;
}

inline NumberFieldElem t_deriv_at_s_exact(int order) {
    if (order == 0)
        return NumberFieldElem::s_pow(-1) * Rational(360, 121) * NumberFieldElem::s() -
               NumberFieldElem(Rational(25, 11));
    Rational f(360, 121);
    long e = -1;
    for (int k = 0; k < order; ++k) { f *= e; --e; }
    // t = A r^-1 - 25/11 with A = (360/121) s
    return NumberFieldElem::s() * NumberFieldElem::s_pow(e) * f;
}

}  // namespace ljstab
