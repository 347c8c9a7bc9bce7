#include "ljstab/certify.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace ljstab;

namespace {

std::function<Interval(const Interval&)> quadratic(const char* a2, const char* a1, const char* a0) {
    const Rational c2 = parse_decimal(a2), c1 = parse_decimal(a1), c0 = parse_decimal(a0);
    return [=](const Interval& x) { return c2 * x.int_pow(2) + c1 * x + Interval(c0); };
}

// 1e-4-step floating scan; the oracle the engine is held against
bool scan_agrees(const std::function<double(double)>& f, double lo, double hi, bool positive) {
    for (double x = lo; x <= hi; x += 1e-4) {
        const double v = f(x);
        if (positive && v <= 0) return false;
        if (!positive && v >= 0) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("the monotonicity quadratic certifies positive on [0.3, 0.35]") {
    const CertifyResult r = certify_sign(quadratic("-1.4451", "1.0023", "-0.16692"),
                                         Interval(parse_decimal("0.3"), parse_decimal("0.35")),
                                         SignTarget::Positive);
    CHECK(r.verdict == Verdict::Pass);
    CHECK(scan_agrees([](double c) { return -1.4451 * c * c + 1.0023 * c - 0.16692; }, 0.3, 0.35, true));
}

TEST_CASE("a genuinely positive function fails a negativity target with a witness") {
    const CertifyResult r = certify_sign([](const Interval& x) { return x; },
                                         Interval(Rational(1), Rational(2)), SignTarget::Negative);
    CHECK(r.verdict == Verdict::Fail);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->image.strictly_positive());
}

TEST_CASE("the rearranged ball-average quadratic certifies on [0.51, 0.9]") {
    const CertifyResult r = certify_sign(quadratic("-0.7558", "0.9701", "-0.2516"),
                                         Interval(parse_decimal("0.51"), parse_decimal("0.9")),
                                         SignTarget::Positive);
    CHECK(r.verdict == Verdict::Pass);
    CHECK(scan_agrees([](double x) { return -0.7558 * x * x + 0.9701 * x - 0.2516; }, 0.51, 0.9, true));
}

TEST_CASE("depth exhaustion reports INCONCLUSIVE, not FAIL") {
    CertifyOptions opts;
    opts.max_depth = 1;
    const CertifyResult r = certify_sign(quadratic("-0.7558", "0.9701", "-0.2516"),
                                         Interval(parse_decimal("0.51"), parse_decimal("0.9")),
                                         SignTarget::Positive, opts);
    CHECK(r.verdict == Verdict::Inconclusive);
    CHECK(r.witness.has_value());
}

TEST_CASE("singularities inside the domain are split away") {
    // 1/x - 1/2 is positive on (0, 2); interval division by [0, ...] throws
    const CertifyResult r = certify_sign(
        [](const Interval& x) { return Rational(1) / x - Rational(1, 2); },
        Interval(Rational(0), Rational(1)), SignTarget::Positive, CertifyOptions{20, 100000});
    // the subinterval touching zero can never be evaluated: inconclusive, not a crash
    CHECK(r.verdict == Verdict::Inconclusive);
}

TEST_CASE("verdicts are deterministic") {
    const auto f = quadratic("-1.0199", "1.5788347", "-0.5418");
    const Interval domain(parse_decimal("0.9"), parse_decimal("1.03"));
    const CertifyResult a = certify_sign(f, domain, SignTarget::Positive);
    const CertifyResult b = certify_sign(f, domain, SignTarget::Positive);
    CHECK(a.verdict == b.verdict);
    CHECK(a.nodes == b.nodes);
    CHECK(a.deepest == b.deepest);
    CHECK(a.verdict == Verdict::Pass);
}

TEST_CASE("random quadratics: PASS implies the scan finds no violation") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    int passes = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const double a = coeff(rng), b = coeff(rng), c = coeff(rng);
        const Rational ra(a), rb(b), rc(c);
        const auto f = [&](const Interval& x) { return ra * x.int_pow(2) + rb * x + Interval(rc); };
        CertifyOptions opts;
        opts.max_depth = 12;
        const CertifyResult r = certify_sign(f, Interval(Rational(-1), Rational(2)), SignTarget::Positive, opts);
        if (r.verdict == Verdict::Pass) {
            ++passes;
            CHECK(scan_agrees([&](double x) { return a * x * x + b * x + c; }, -1.0, 2.0, true));
        }
    }
    CHECK(passes > 5);  // the sample must actually exercise the PASS path
}
