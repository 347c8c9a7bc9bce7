#include "ljstab/cluster.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <sstream>

using namespace ljstab;

namespace {

Configuration pair_at(double d) { return Configuration({{0, 0, 0}, {d, 0, 0}}); }

// 12 icosahedron vertices at circumradius R around the origin
std::vector<Vec3> icosahedron(double R) {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    const double norm = std::sqrt(1.0 + phi * phi);
    const double a = R / norm, b = R * phi / norm;
    return {{0, a, b},  {0, -a, b},  {0, a, -b},  {0, -a, -b}, {a, b, 0},  {-a, b, 0},
            {a, -b, 0}, {-a, -b, 0}, {b, 0, a},   {-b, 0, a},  {b, 0, -a}, {-b, 0, -a}};
}

Configuration lj13_seed(unsigned seed, double jitter) {
    std::vector<Vec3> pts = icosahedron(0.96);
    pts.push_back({0, 0, 0});
    std::mt19937 rng(seed);
    std::normal_distribution<double> noise(0.0, jitter);
    for (auto& p : pts) {
        p.x += noise(rng);
        p.y += noise(rng);
        p.z += noise(rng);
    }
    return Configuration(std::move(pts));
}

}  // namespace

TEST_CASE("pair energies at the reference distances") {
    CHECK(total_energy(pair_at(1.0)) == -1.0);
    CHECK(std::abs(total_energy(pair_at(std::pow(0.5, 1.0 / 6.0)))) < 1e-12);
    // equilateral triangle with unit sides
    const Configuration tri({{0, 0, 0}, {1, 0, 0}, {0.5, std::sqrt(3.0) / 2.0, 0}});
    CHECK(total_energy(tri) == Catch::Approx(-3.0).margin(1e-12));
}

TEST_CASE("total energy is consistent with per-particle minus-energies") {
    const Configuration q({{0, 0, 0}, {1.1, 0, 0}, {0.3, 0.9, 0}, {0.2, 0.1, 1.4}});
    const auto minus = per_particle_minus_energies(q);
    double sum = 0;
    for (double m : minus) sum += m;
    CHECK(total_energy(q) == Catch::Approx(-0.5 * sum).epsilon(1e-12));
}

TEST_CASE("min distance") {
    const Configuration square({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}});
    CHECK(min_distance(square) == 1.0);
    const Configuration line({{0, 0, 0}, {0.5, 0, 0}, {3, 0, 0}});
    CHECK(min_distance(line) == 0.5);
    CHECK_THROWS_AS(Configuration({{0, 0, 0}, {0, 0, 0}}), std::domain_error);
}

TEST_CASE("icosahedron center sees twelve unit neighbors") {
    std::vector<Vec3> pts = icosahedron(1.0);
    pts.push_back({0, 0, 0});
    const Configuration q(std::move(pts));
    CHECK(single_particle_minus_energy(q, 12) == Catch::Approx(12.0).epsilon(1e-12));
}

TEST_CASE("far pairs decay like twice the attractive tail") {
    for (double d : {6.0, 10.0}) {
        const double m = single_particle_minus_energy(pair_at(d), 0);
        CHECK(m == Catch::Approx(2.0 * std::pow(d, -6.0)).epsilon(1e-3));
    }
}

TEST_CASE("energy gradient matches central finite differences") {
    std::mt19937 rng(31415);
    std::uniform_real_distribution<double> coord(0.0, 2.2);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Vec3> pts;
        for (int i = 0; i < 7; ++i) pts.push_back({coord(rng), coord(rng), coord(rng)});
        Configuration q(std::move(pts));
        if (min_distance(q) < 0.75) continue;
        const auto grad = energy_gradient(q);
        const double step = 1e-5;
        double scale = 1.0;
        for (const auto& g : grad) scale = std::max({scale, std::abs(g.x), std::abs(g.y), std::abs(g.z)});
        for (std::size_t i = 0; i < q.size(); ++i) {
            for (int axis = 0; axis < 3; ++axis) {
                auto shift = [&](double delta) {
                    std::vector<Vec3> moved = q.points();
                    (axis == 0 ? moved[i].x : axis == 1 ? moved[i].y : moved[i].z) += delta;
                    return total_energy(Configuration(std::move(moved)));
                };
                const double fd = (shift(step) - shift(-step)) / (2 * step);
                const double g = axis == 0 ? grad[i].x : axis == 1 ? grad[i].y : grad[i].z;
                CHECK(std::abs(fd - g) <= 1e-6 * scale);
            }
        }
    }
}

TEST_CASE("energy is invariant under rigid motions") {
    const Configuration q({{0, 0, 0}, {1.2, 0, 0}, {0.4, 1.1, 0}, {0.3, 0.4, 1.3}});
    const double e0 = total_energy(q);
    const double angle = 0.7;
    const double c = std::cos(angle), s = std::sin(angle);
    std::vector<Vec3> moved;
    for (const auto& p : q.points())
        moved.push_back({c * p.x - s * p.y + 5.0, s * p.x + c * p.y - 2.0, p.z + 0.5});
    CHECK(std::abs(total_energy(Configuration(std::move(moved))) - e0) < 1e-12 * std::abs(e0) + 1e-12);
}

TEST_CASE("per-particle minus-energy respects the certified mu bound") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> coord(0.0, 3.0);
    int tested = 0;
    for (int trial = 0; trial < 200 && tested < 40; ++trial) {
        std::vector<Vec3> pts;
        for (int i = 0; i < 6; ++i) pts.push_back({coord(rng), coord(rng), coord(rng)});
        Configuration q(std::move(pts));
        const double a = min_distance(q);
        if (a < 0.65) continue;
        ++tested;
        const double cap = 26.95 / (a * a * a);
        for (std::size_t i = 0; i < q.size(); ++i)
            CHECK(single_particle_minus_energy(q, i) <= cap);
    }
    CHECK(tested == 40);
}

TEST_CASE("fcc lattice: twelve nearest neighbors at the lattice scale") {
    // count FCC points at distance ~1 when the nearest-neighbor distance is 1
    int count = 0;
    for (int i = -3; i <= 3; ++i)
        for (int j = -3; j <= 3; ++j)
            for (int k = -3; k <= 3; ++k) {
                if ((i + j + k) % 2 != 0 || (i == 0 && j == 0 && k == 0)) continue;
                if (i * i + j * j + k * k == 2) ++count;
            }
    CHECK(count == 12);
    // those neighbors alone contribute -12/2 = -6; further shells only deepen it
    CHECK(fcc_energy_per_particle(1.0, 6.0).per_particle_energy < -6.0);
}

TEST_CASE("fcc energy vanishes from below as the lattice dilates") {
    const LatticeSumResult far = fcc_energy_per_particle(50.0, 200.0);
    CHECK(far.per_particle_energy < 0.0);
    CHECK(far.per_particle_energy > -1e-8);
}

TEST_CASE("optimal fcc scale reproduces the lower bound") {
    const LatticeSumResult best = fcc_optimal_scale();
    CHECK(best.per_particle_energy >= -8.62);
    CHECK(best.per_particle_energy <= -8.60);
    CHECK(best.scale > 0.95);
    CHECK(best.scale < 1.00);
    CHECK(best.tail_bound < 5e-4);
    CHECK(best.certified_lower_bound() >= 8.61);
    // energy is unimodal in the scale around the optimum
    const double mid = fcc_energy_per_particle(best.scale, 40.0).per_particle_energy;
    CHECK(fcc_energy_per_particle(0.90, 40.0).per_particle_energy > mid);
    CHECK(fcc_energy_per_particle(1.05, 40.0).per_particle_energy > mid);
}

TEST_CASE("two particles relax to the potential minimum") {
    const MinimizeResult r = local_minimize(pair_at(1.3), 0);
    CHECK(r.converged);
    CHECK(r.energy == Catch::Approx(-1.0).margin(1e-10));
    CHECK(min_distance(r.configuration) == Catch::Approx(1.0).margin(1e-6));
}

TEST_CASE("LJ13 reaches the icosahedral minimum from a perturbed seed") {
    const MinimizeResult r = local_minimize(lj13_seed(1, 0.01), 1);
    CHECK(r.energy <= -44.32);
    CHECK(min_distance(r.configuration) > 0.684);
    CHECK(r.grad_norm <= 1e-8);
}

TEST_CASE("minimization is deterministic per seed") {
    const MinimizeParams params;
    const MinimizeResult a = local_minimize(lj13_seed(7, 0.02), 7, params);
    const MinimizeResult b = local_minimize(lj13_seed(7, 0.02), 7, params);
    CHECK(a.energy == b.energy);
    CHECK(a.iterations == b.iterations);
}

TEST_CASE("compactify separates close pairs and gains minus-energy") {
    const Configuration q = pair_at(0.5);
    const double before = -total_energy(q);  // minus-energy
    const Configuration boxed = compactify(q);
    CHECK(min_distance(boxed) >= 0.65);
    CHECK(-total_energy(boxed) >= before);
    CHECK(h_double(0.5) == -3968.0);  // the relocated particle had negative minus-energy
}

TEST_CASE("compactify contracts distant pairs into the box") {
    const Configuration q({{0, 0, 0}, {10, 0, 0}});
    const Configuration boxed = compactify(q);
    CHECK(min_distance(boxed) >= 0.65);
    CHECK(min_distance(boxed) <= 2.0);  // 2(n-1) with n = 2
    CHECK(boxed[0].x == 0.0);
    CHECK(boxed[0].y == 0.0);
}

TEST_CASE("configurations already inside the box are fixed points") {
    const Configuration tri({{0, 0, 0}, {1, 0, 0}, {0.5, std::sqrt(3.0) / 2.0, 0}});
    const Configuration boxed = compactify(tri);
    REQUIRE(boxed.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(boxed[i].x == tri[i].x);
        CHECK(boxed[i].y == tri[i].y);
        CHECK(boxed[i].z == tri[i].z);
    }
}

TEST_CASE("compactify postcondition on a random spread-out cloud") {
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> coord(-12.0, 12.0);
    std::vector<Vec3> pts;
    for (int i = 0; i < 6; ++i) pts.push_back({coord(rng), coord(rng), coord(rng)});
    pts.push_back({pts[0].x + 0.3, pts[0].y, pts[0].z});  // plant a close pair
    const Configuration q(std::move(pts));
    const double before = -total_energy(q);
    const Configuration boxed = compactify(q);
    CHECK(boxed.size() == q.size());
    CHECK(min_distance(boxed) >= 0.65);
    double diameter = 0;
    for (std::size_t i = 0; i < boxed.size(); ++i)
        for (std::size_t j = i + 1; j < boxed.size(); ++j)
            diameter = std::max(diameter, distance(boxed[i], boxed[j]));
    CHECK(diameter <= 2.0 * static_cast<double>(boxed.size() - 1) + 1e-9);
    CHECK(-total_energy(boxed) >= before - 1e-12);
}

TEST_CASE("configuration files round-trip and report parse errors") {
    std::stringstream buffer;
    const Configuration q({{0, 0, 0}, {1.25, -0.5, 2.0}});
    q.write(buffer);
    const Configuration back = Configuration::read(buffer);
    REQUIRE(back.size() == 2);
    CHECK(back[1].x == 1.25);

    std::stringstream commented("# header\n0 0 0\n\n1 0 0  # trailing note\n");
    CHECK(Configuration::read(commented).size() == 2);

    std::stringstream bad("0 0 0\n1 2\n");
    try {
        Configuration::read(bad);
        FAIL("expected ConfigParseError");
    } catch (const ConfigParseError& e) {
        CHECK(e.line == 2);
    }
}
