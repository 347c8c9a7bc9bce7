#include "ljstab/certify.hpp"
#include "ljstab/constants.hpp"
#include "ljstab/profiles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace ljstab;

TEST_CASE("h takes its maximum value 1 at r = 1") {
    const Interval v = eval_profile(RadialProfile::h(), Interval(Rational(1)));
    CHECK(v.lo() == 1);
    CHECK(v.hi() == 1);
}

TEST_CASE("h vanishes at 2^(-1/6)") {
    const Interval root = nth_root_enclosure(Rational(1, 2), 6);
    const Interval v = eval_profile(RadialProfile::h(), root);
    CHECK(v.contains(Rational(0)));
    CHECK(v.width() < parse_decimal("1e-12"));
}

TEST_CASE("h and t agree exactly at s with value 85/121") {
    const NumberFieldElem h_s = h_deriv_at_s_exact(0);
    const NumberFieldElem t_s = t_deriv_at_s_exact(0);
    CHECK(h_s.is_rational());
    CHECK(h_s.coefficient(0) == Rational(85, 121));
    CHECK(h_s == t_s);
    // the interval evaluation of theta near s surrounds the same value
    const Interval v = eval_profile(RadialProfile::theta(), s_enclosure());
    CHECK(v.contains(Rational(85, 121)));
}

TEST_CASE("truncated theta vanishes below its radius") {
    const RadialProfile p = RadialProfile::theta_trunc(parse_decimal("0.54"));
    const Interval v = eval_profile(p, Interval(Rational(1, 2)));
    CHECK(v.lo() == 0);
    CHECK(v.hi() == 0);
    CHECK(p.eval_double(0.5) == 0.0);
    CHECK(p.eval_double(0.6) > 0.0);
}

TEST_CASE("lj_phi values and the identity against h") {
    CHECK(lj_phi({1.0, 0.0, 0.0}) == -1.0);
    CHECK(lj_phi({0.5, 0.0, 0.0}) == 3968.0);
    CHECK(std::abs(lj_phi({0.0, std::pow(0.5, 1.0 / 6.0), 0.0})) < 1e-12);
    CHECK_THROWS_AS(lj_phi({0.0, 0.0, 0.0}), std::domain_error);

    std::mt19937 rng(5);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        const std::array<double, 3> x = {coord(rng), coord(rng), coord(rng)};
        const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
        if (r < 0.3) continue;
        CHECK(std::abs(lj_phi(x) + RadialProfile::h().eval_double(r)) < 1e-12 * std::max(1.0, std::abs(lj_phi(x))));
    }
}

TEST_CASE("radial laplacian of h") {
    CHECK(radial_laplacian_h(s_enclosure()).contains(Rational(0)));
    const Interval at_one = radial_laplacian_h(Interval(Rational(1)));
    CHECK(at_one.lo() == -72);
    CHECK(at_one.hi() == -72);
    CHECK(radial_laplacian_h(Interval(parse_decimal("1.2"), parse_decimal("1.3"))).strictly_positive());
    CHECK_THROWS_AS(radial_laplacian_h(Interval(Rational(0), Rational(1))), std::domain_error);
}

TEST_CASE("derivatives at the matching radius agree exactly") {
    // h'(1) = 0
    const Interval d1 = profile_derivatives(RadialProfile::h(), Interval(Rational(1)), 1);
    CHECK(d1.lo() == 0);
    CHECK(d1.hi() == 0);
    // t'(s) = h'(s) and t''(s) = h''(s) = 2 A s^-3 in Q(s)
    CHECK(t_deriv_at_s_exact(1) == h_deriv_at_s_exact(1));
    CHECK(t_deriv_at_s_exact(2) == h_deriv_at_s_exact(2));
    const NumberFieldElem two_a_s3 =
        NumberFieldElem::s() * Rational(720, 121) * NumberFieldElem::s_pow(-3);
    CHECK(h_deriv_at_s_exact(2) == two_a_s3);
}

TEST_CASE("derivative queries demand a side at breakpoints") {
    const RadialProfile theta = RadialProfile::theta();
    const Interval straddle(parse_decimal("1.1"), parse_decimal("1.2"));
    CHECK_THROWS_AS(profile_derivatives(theta, straddle, 1), std::domain_error);
    const Interval left = profile_derivatives(theta, straddle, 1, Side::Left);
    const Interval right = profile_derivatives(theta, straddle, 1, Side::Right);
    CHECK(left.hi() < 0);   // t' < 0
    CHECK(right.hi() < 0);  // h' < 0 past 1
}

TEST_CASE("theta dominates h~ and stays nonnegative") {
    const RadialProfile theta = RadialProfile::theta();
    const RadialProfile htilde = RadialProfile::h_tilde();
    for (Rational r(5, 100); r <= 4; r += Rational(5, 100)) {
        const Interval tv = eval_profile(theta, Interval(r));
        const Interval hv = eval_profile(htilde, Interval(r));
        CHECK(tv.hi() >= hv.lo());
        CHECK(tv.lo() >= 0);
        if (r <= Rational(11, 10)) CHECK(tv.lo() > hv.hi());  // strictly below s
    }
}

TEST_CASE("t stays positive out to 1.49") {
    const RadialProfile t = RadialProfile::t();
    const CertifyResult r = certify_sign(
        [&](const Interval& x) { return t.eval(x); },
        Interval(Rational(1, 100), parse_decimal("1.49")), SignTarget::Positive);
    CHECK(r.verdict == Verdict::Pass);
    // and it is decreasing, so positivity extends to all smaller radii
    CHECK(profile_derivatives(t, Interval(Rational(1, 100), Rational(2)), 1).hi() < 0);
}

TEST_CASE("h is negative exactly below 2^(-1/6)") {
    const Interval root = nth_root_enclosure(Rational(1, 2), 6);
    CHECK(h_exact(root.lo() - Rational(1, 1000)) < 0);
    CHECK(h_exact(root.hi() + Rational(1, 1000)) > 0);
    CHECK(h_exact(Rational(1, 2)) < 0);
    CHECK(h_exact(Rational(2)) > 0);
}

TEST_CASE("finite differences match the derivative path") {
    const RadialProfile h = RadialProfile::h();
    for (double r : {0.8, 0.95, 1.3, 1.9}) {
        const double eps = 1e-6;
        const double fd = (h.eval_double(r + eps) - h.eval_double(r - eps)) / (2 * eps);
        const Interval exact = profile_derivatives(h, Interval(Rational(r)), 1);
        const double mid = to_double(exact.mid());
        CHECK(std::abs(fd - mid) < 1e-5 * std::max(1.0, std::abs(mid)));
    }
}

TEST_CASE("profile evaluation rejects radii touching zero") {
    CHECK_THROWS_AS(eval_profile(RadialProfile::h(), Interval(Rational(0), Rational(1))),
                    std::domain_error);
}
