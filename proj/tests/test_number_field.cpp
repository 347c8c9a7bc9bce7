#include "ljstab/number_field.hpp"
#include "ljstab/polynomial.hpp"
#include "ljstab/verifier.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <vector>

using namespace ljstab;

TEST_CASE("defining relation: x^6 - 11/5 vanishes at s") {
    const std::vector<Rational> p = {Rational(-11, 5), 0, 0, 0, 0, 0, 1};
    CHECK(nf_eval(p).is_zero());
}

TEST_CASE("identity polynomial evaluates to the generator") {
    const std::vector<Rational> p = {Rational(0), Rational(1)};
    const NumberFieldElem e = nf_eval(p);
    CHECK(e == NumberFieldElem::s());
    CHECK(e.coefficient(1) == 1);
    CHECK(e.coefficient(0) == 0);
}

TEST_CASE("nf_eval detects zero exactly only for multiples of the relation") {
    // x^12 - (22/5) x^6 + 121/25 = (x^6 - 11/5)^2
    std::vector<Rational> sq(13, Rational(0));
    sq[0] = Rational(121, 25);
    sq[6] = Rational(-22, 5);
    sq[12] = 1;
    CHECK(nf_eval(sq).is_zero());
    sq[0] += Rational(1, 1000000);
    CHECK_FALSE(nf_eval(sq).is_zero());
}

TEST_CASE("the tangency polynomial vanishes at s with multiplicity three") {
    const NfPolynomial q = tangency_polynomial();
    const NumberFieldElem at_s = NumberFieldElem::s();
    CHECK(q(at_s).is_zero());
    CHECK(q.derivative()(at_s).is_zero());
    CHECK(q.derivative().derivative()(at_s).is_zero());
    CHECK_FALSE(q.derivative().derivative().derivative()(at_s).is_zero());
}

TEST_CASE("inverses multiply back to one") {
    const NumberFieldElem one(Rational(1));
    const NumberFieldElem s = NumberFieldElem::s();
    CHECK((s * s.inverse()) == one);
    CHECK(s.inverse() == NumberFieldElem::s_pow(-1));

    std::array<Rational, 6> coeffs = {Rational(3), Rational(-1), Rational(0),
                                      Rational(2, 7), Rational(0), Rational(5)};
    const NumberFieldElem e{coeffs};
    CHECK((e * e.inverse()) == one);
    CHECK_THROWS_AS(NumberFieldElem().inverse(), std::domain_error);
}

TEST_CASE("signs are decided exactly") {
    CHECK(NumberFieldElem().sign() == 0);
    // A - 36/11 = q(1) > 0, a genuinely small positive element
    const NumberFieldElem a = NumberFieldElem::s() * Rational(360, 121);
    CHECK((a - NumberFieldElem(Rational(36, 11))).sign() == 1);
    CHECK((NumberFieldElem::s() - NumberFieldElem(Rational(2))).sign() == -1);
    // s^3 - sqrt(2.2) ~ 0 is not representable; instead check s^3 vs nearby rationals
    const NumberFieldElem s3 = NumberFieldElem::s_pow(3);
    CHECK((s3 - NumberFieldElem(Rational(14832, 10000))).sign() == 1);
    CHECK((s3 - NumberFieldElem(Rational(14833, 10000))).sign() == -1);
}

TEST_CASE("interval image narrows with the requested width") {
    const NumberFieldElem e = NumberFieldElem::s_pow(2) + NumberFieldElem::s() * Rational(-1);
    const Interval coarse = e.interval_image(Rational(1, 1000));
    const Interval fine = e.interval_image(Rational(1, pow10(20).convert_to<BigInt>()));
    CHECK(coarse.contains(fine));
    CHECK(fine.width() < coarse.width());
}
