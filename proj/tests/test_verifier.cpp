#include "ljstab/verifier.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <functional>

using namespace ljstab;

namespace {

const CheckNode* find_node(const std::vector<CheckNode>& nodes, const std::string& label) {
    for (const auto& n : nodes) {
        if (n.label == label) return &n;
        if (const CheckNode* hit = find_node(n.children, label)) return hit;
    }
    return nullptr;
}

bool any_verdict(const std::vector<CheckNode>& nodes, Verdict v) {
    for (const auto& n : nodes) {
        if (n.verdict == v && n.children.empty()) return true;
        if (any_verdict(n.children, v)) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("every proposition certificate passes") {
    const Report report = run_all();
    REQUIRE(report.certificates.size() == 8);
    for (const auto& cert : report.certificates) {
        INFO(cert.id << ": " << to_text(cert));
        CHECK(cert.verdict == Verdict::Pass);
    }
}

TEST_CASE("tangency certificate records a positive q(1)") {
    const Certificate cert = verify_prop_2_4();
    REQUIRE(cert.key_values.size() == 1);
    CHECK(cert.key_values[0].value.strictly_positive());
    // q(1) = A - 36/11, about 0.12
    CHECK(cert.key_values[0].value.hi() < parse_decimal("0.13"));
    CHECK(cert.key_values[0].value.lo() > parse_decimal("0.12"));
}

TEST_CASE("perturbing the t coefficient breaks the tangency sub-check") {
    const Certificate cert = verify_prop_2_4({}, Rational(25, 10));
    CHECK(cert.verdict == Verdict::Fail);
    const CheckNode* tangency = find_node(cert.checks, "tangency_at_s");
    REQUIRE(tangency != nullptr);
    CHECK(tangency->verdict == Verdict::Fail);
}

TEST_CASE("corollary 3.3 endpoint values frame the crossing") {
    const Certificate cert = verify_cor_3_3();
    CHECK(cert.verdict == Verdict::Pass);
    const CheckNode* at_end = find_node(cert.checks, "optimal_bound");
    REQUIRE(at_end != nullptr);
    REQUIRE(at_end->values.size() == 1);
    const Interval v = at_end->values[0].value;
    CHECK(v.lo() > parse_decimal("0.992"));
    CHECK(v.hi() < parse_decimal("0.994"));
    const CheckNode* sharp = find_node(cert.checks, "sharpness_at_0.685");
    REQUIRE(sharp != nullptr);
    CHECK(sharp->values[0].value.lo() > 1);
}

TEST_CASE("the stability bound enclosure is pinned between 14.31 and 14.316") {
    const Certificate cert = verify_theorem_5_1();
    REQUIRE(cert.key_values.size() == 1);
    const Interval b = cert.key_values[0].value;
    CHECK(b.lo() > parse_decimal("14.31"));
    CHECK(b.hi() < parse_decimal("14.316"));
    CHECK(b.width() < parse_decimal("1e-9"));
}

TEST_CASE("reports are byte-identical across runs and thread counts") {
    const std::string a = to_text(run_all({}, {}, 1));
    const std::string b = to_text(run_all({}, {}, 1));
    const std::string c = to_text(run_all({}, {}, 4));
    CHECK(a == b);
    CHECK(a == c);
}

TEST_CASE("resource-limited runs degrade to INCONCLUSIVE, never FAIL") {
    VerifyOptions opts;
    opts.certify.max_depth = 1;
    const Report report = run_all(opts);
    bool saw_inconclusive = false;
    for (const auto& cert : report.certificates) {
        CHECK(cert.verdict != Verdict::Fail);
        if (cert.verdict == Verdict::Inconclusive) saw_inconclusive = true;
        CHECK_FALSE(any_verdict(cert.checks, Verdict::Fail));
    }
    CHECK(saw_inconclusive);
}

TEST_CASE("requesting one proposition runs only its dependency closure") {
    const Report report = run_all({}, {"3.3"});
    REQUIRE(report.certificates.size() == 3);
    CHECK(report.certificates[0].id == "3.1-I");
    CHECK(report.certificates[1].id == "3.1-II");
    CHECK(report.certificates[2].id == "3.3");
}

TEST_CASE("tightening enclosures never flips PASS to FAIL") {
    VerifyOptions coarse;
    coarse.width = parse_decimal("1e-12");
    VerifyOptions fine;
    fine.width = parse_decimal("1e-18");
    const Report a = run_all(coarse);
    const Report b = run_all(fine);
    for (std::size_t i = 0; i < a.certificates.size(); ++i) {
        CHECK(a.certificates[i].verdict == Verdict::Pass);
        CHECK(b.certificates[i].verdict == Verdict::Pass);
    }
}

TEST_CASE("adverse 1% mutations flip the matching sub-checks") {
    struct Mutation {
        const char* name;
        std::function<void(PaperConstants&)> apply;
        const char* prop;
    };
    const std::vector<Mutation> mutations = {
        {"26.95 down", [](PaperConstants& c) { c.mu_bound_I *= parse_decimal("0.99"); }, "3.1-I"},
        {"24.05 down", [](PaperConstants& c) { c.mu_bound_II *= parse_decimal("0.99"); }, "3.1-II"},
        {"36 down", [](PaperConstants& c) { c.density_36 *= parse_decimal("0.99"); }, "5.1"},
        {"113 down", [](PaperConstants& c) { c.density_113 *= parse_decimal("0.99"); }, "5.1"},
        {"14.316 down", [](PaperConstants& c) { c.b_upper *= parse_decimal("0.99"); }, "5.1"},
        {"0.684 up", [](PaperConstants& c) { c.min_distance *= parse_decimal("1.01"); }, "3.3"},
        {"0.98 down", [](PaperConstants& c) { c.pair_cut *= parse_decimal("0.99"); }, "5.1"},
        {"0.49 up", [](PaperConstants& c) { c.ball_radius *= parse_decimal("1.01"); }, "4.1"},
        {"0.54 down", [](PaperConstants& c) { c.trunc_I *= parse_decimal("0.99"); }, "3.1-I"},
        {"0.64 down", [](PaperConstants& c) { c.trunc_II *= parse_decimal("0.99"); }, "3.1-II"},
    };
    for (const auto& m : mutations) {
        INFO(m.name);
        VerifyOptions opts;
        m.apply(opts.constants);
        Certificate cert;
        const std::string prop(m.prop);
        if (prop == "3.1-I") cert = verify_prop_3_1(MuVariant::I, opts);
        else if (prop == "3.1-II") cert = verify_prop_3_1(MuVariant::II, opts);
        else if (prop == "3.3") cert = verify_cor_3_3(opts);
        else if (prop == "4.1") cert = verify_prop_4_1(opts);
        else cert = verify_theorem_5_1(opts);
        CHECK(cert.verdict != Verdict::Pass);
    }
}

TEST_CASE("inflating the ball radius to 0.50 breaks a region check") {
    VerifyOptions opts;
    opts.constants.ball_radius = parse_decimal("0.50");
    const Certificate cert = verify_prop_4_1(opts);
    CHECK(cert.verdict != Verdict::Pass);
    const CheckNode* region3 = find_node(cert.checks, "region3_0.9_to_1.03");
    REQUIRE(region3 != nullptr);
    CHECK(region3->verdict != Verdict::Pass);
}

TEST_CASE("the final bound margin tolerates moment widening up to ~3e-5") {
    // B = 12 I(0.54) / 0.98^3 sits about 4e-4 below 14.316; widening the
    // moment enclosure by 2e-5 must keep the bound, 4e-5 must break it
    const Interval moment = theta_moment(parse_decimal("0.54"));
    const Rational cube = int_pow(parse_decimal("0.98"), 3);
    const Interval slack_ok = Rational(12) * (moment + Interval(Rational(0), parse_decimal("2e-5"))) / cube;
    CHECK(slack_ok.hi() < parse_decimal("14.316"));
    const Interval slack_bad = Rational(12) * (moment + Interval(Rational(0), parse_decimal("4e-5"))) / cube;
    CHECK(slack_bad.hi() > parse_decimal("14.316"));
}

TEST_CASE("theta at one half clears the h~ plateau") {
    const Certificate cert = verify_prop_2_5();
    REQUIRE(cert.key_values.size() == 1);
    const Interval theta_half = cert.key_values[0].value;
    CHECK(theta_half.lo() > 1);  // >= h~(0.5) = 1
    // A/0.5 - 25/11, about 4.5133
    CHECK(theta_half.lo() > parse_decimal("4.51"));
    CHECK(theta_half.hi() < parse_decimal("4.52"));
}

TEST_CASE("certificate text renders enclosures with exact endpoints") {
    const std::string text = to_text(verify_theorem_5_1());
    CHECK(text.find("B_upper") != std::string::npos);
    CHECK(text.find("exact [") != std::string::npos);
    CHECK(text.find("claim: < 14.316") != std::string::npos);
}

TEST_CASE("appendix certificate pins the cubic roots and the sturm count") {
    const Certificate cert = verify_appendix();
    CHECK(cert.verdict == Verdict::Pass);
    CHECK(find_node(cert.checks, "sturm_count_R_0_0.98") != nullptr);
    const CheckNode* rho3 = find_node(cert.checks, "rho_3_location");
    REQUIRE(rho3 != nullptr);
    CHECK(rho3->verdict == Verdict::Pass);
    const CheckNode* positive = find_node(cert.checks, "R_positive_at_rho3");
    REQUIRE(positive != nullptr);
    CHECK(positive->values[0].value.strictly_positive());
}

TEST_CASE("verify 2.5 spot checks come with the quadrature guard") {
    const Certificate cert = verify_prop_2_5();
    CHECK(cert.verdict == Verdict::Pass);
    const CheckNode* means = find_node(cert.checks, "spherical_mean_spot_checks");
    REQUIRE(means != nullptr);
    CHECK(means->children.size() == 4);
}

TEST_CASE("soundness oracle: the certified region inequalities survive a fine scan") {
    // region 2 of the ball-average proposition, rearranged to a positivity claim
    const double k = 3.0 / (4.0 * 0.49 * 0.49 * 0.49);
    for (double r = 0.51; r <= 0.9; r += 1e-4)
        CHECK(k * (-0.7558 * r * r + 1.127 * r - 0.2516) - r > 0.0);
    for (double r = 0.9; r <= 1.03; r += 1e-4)
        CHECK(k * (-1.0199 * r * r + 1.7357 * r - 0.5418) - r > 0.0);
}
