#pragma once

// Configuration energetics in plain doubles: total and per-particle energies,
// minimum interparticle distance, FCC lattice sums for the complementary
// lower bound, a deterministic local optimizer, and the constructive
// box-normalization procedure (separate too-close particles, contract empty
// slabs) that keeps optimal configurations inside a compact set.

#include "ljstab/profiles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ljstab {

struct Vec3 {
    double x = 0, y = 0, z = 0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double k) const { return {x * k, y * k, z * k}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm2() const { return dot(*this); }
    double norm() const { return std::sqrt(norm2()); }
};

inline double distance(const Vec3& a, const Vec3& b) { return (a - b).norm(); }

struct ConfigParseError : std::runtime_error {
    ConfigParseError(int line_number, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_number) + ": " + what), line(line_number) {}
    int line;
};

class Configuration {
public:
    Configuration() = default;
    explicit Configuration(std::vector<Vec3> points) : points_(std::move(points)) {
        for (std::size_t i = 0; i < points_.size(); ++i)
            for (std::size_t j = i + 1; j < points_.size(); ++j)
                if (distance(points_[i], points_[j]) == 0.0)
                    throw std::domain_error("Configuration: coincident points " + std::to_string(i) +
                                            " and " + std::to_string(j));
    }

    std::size_t size() const { return points_.size(); }
    const std::vector<Vec3>& points() const { return points_; }
    const Vec3& operator[](std::size_t i) const { return points_.at(i); }

    /// Plain text, one particle per line, three fields, '#' comments.
    static Configuration read(std::istream& in) {
        std::vector<Vec3> pts;
        std::string line;
        int line_number = 0;
        while (std::getline(in, line)) {
            ++line_number;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
            std::istringstream fields(line);
            double x, y, z;
            if (!(fields >> x >> y >> z)) throw ConfigParseError(line_number, "expected three coordinates");
            std::string extra;
            if (fields >> extra) throw ConfigParseError(line_number, "more than three fields");
            pts.push_back({x, y, z});
        }
        return Configuration(std::move(pts));
    }

    static Configuration read_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open " + path);
        return read(in);
    }

    void write(std::ostream& out) const {
        out.precision(17);
        for (const auto& p : points_) out << p.x << " " << p.y << " " << p.z << "\n";
    }

private:
    std::vector<Vec3> points_;
};

/// Sum of pair potentials, each unordered pair counted once.
inline double total_energy(const Configuration& q) {
    if (q.size() < 2) throw std::domain_error("total_energy: need at least two particles");
    double e = 0;
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = i + 1; j < q.size(); ++j) {
            const double r = distance(q[i], q[j]);
            if (r == 0.0) throw std::domain_error("total_energy: coincident points");
            e += -h_double(r);
        }
    return e;
}

/// Minus-energy of particle i: sum over the others of h(|q_i - q_j|).
inline double single_particle_minus_energy(const Configuration& q, std::size_t i) {
    double m = 0;
    for (std::size_t j = 0; j < q.size(); ++j) {
        if (j == i) continue;
        m += h_double(distance(q[i], q[j]));
    }
    return m;
}

inline std::vector<double> per_particle_minus_energies(const Configuration& q) {
    std::vector<double> out(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) out[i] = single_particle_minus_energy(q, i);
    return out;
}

inline double min_distance(const Configuration& q) {
    if (q.size() < 2) throw std::domain_error("min_distance: need at least two particles");
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = i + 1; j < q.size(); ++j) best = std::min(best, distance(q[i], q[j]));
    return best;
}

/// Gradient of total_energy. Phi'(r) = -12 r^-13 + 12 r^-7.
inline std::vector<Vec3> energy_gradient(const Configuration& q) {
    std::vector<Vec3> g(q.size());
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = i + 1; j < q.size(); ++j) {
            const Vec3 d = q[i] - q[j];
            const double r2 = d.norm2();
            const double inv2 = 1.0 / r2;
            const double inv6 = inv2 * inv2 * inv2;
            // Phi'(r)/r = 12 (r^-8 - r^-14) = 12 inv2 * inv6 * (1 - inv6)
            const double coeff = 12.0 * inv2 * inv6 * (1.0 - inv6);
            const Vec3 pull = d * coeff;
            g[i] += pull;
            g[j] -= pull;
        }
    return g;
}

inline double grad_inf_norm(const std::vector<Vec3>& g) {
    double m = 0;
    for (const auto& v : g)
        m = std::max({m, std::abs(v.x), std::abs(v.y), std::abs(v.z)});
    return m;
}

struct MinimizeParams {
    double tol = 1e-8;        // gradient max-norm target
    int max_iters = 50000;
    int history = 8;          // quasi-second-order memory
    double perturb = 0.0;     // Gaussian jitter applied to the seed positions
};

struct MinimizeResult {
    Configuration configuration;
    double energy = 0;
    double grad_norm = 0;
    int iterations = 0;
    bool converged = false;
};

/// Deterministic descent (L-BFGS direction, Armijo backtracking). Non-finite
/// trial energies are treated as failed steps, never propagated.
inline MinimizeResult local_minimize(const Configuration& q, unsigned seed,
                                     const MinimizeParams& params = {}) {
    if (q.size() < 2) throw std::domain_error("local_minimize: need at least two particles");
    const std::size_t n = q.size() * 3;
    std::vector<double> x(n);
    for (std::size_t i = 0; i < q.size(); ++i) {
        x[3 * i] = q[i].x;
        x[3 * i + 1] = q[i].y;
        x[3 * i + 2] = q[i].z;
    }
    if (params.perturb > 0) {
        std::mt19937 rng(seed);
        std::normal_distribution<double> jitter(0.0, params.perturb);
        for (auto& v : x) v += jitter(rng);
    }

    const auto as_config = [&](const std::vector<double>& v) {
        std::vector<Vec3> pts(q.size());
        for (std::size_t i = 0; i < q.size(); ++i) pts[i] = {v[3 * i], v[3 * i + 1], v[3 * i + 2]};
        return Configuration(std::move(pts));
    };
    const auto energy_of = [&](const std::vector<double>& v) -> double {
        double e = 0;
        for (std::size_t i = 0; i < q.size(); ++i)
            for (std::size_t j = i + 1; j < q.size(); ++j) {
                const double dx = v[3 * i] - v[3 * j];
                const double dy = v[3 * i + 1] - v[3 * j + 1];
                const double dz = v[3 * i + 2] - v[3 * j + 2];
                const double r2 = dx * dx + dy * dy + dz * dz;
                const double inv6 = 1.0 / (r2 * r2 * r2);
                e += (inv6 - 2.0) * inv6;
            }
        return e;
    };
    const auto gradient_of = [&](const std::vector<double>& v) {
        std::vector<double> g(n, 0.0);
        for (std::size_t i = 0; i < q.size(); ++i)
            for (std::size_t j = i + 1; j < q.size(); ++j) {
                const double dx = v[3 * i] - v[3 * j];
                const double dy = v[3 * i + 1] - v[3 * j + 1];
                const double dz = v[3 * i + 2] - v[3 * j + 2];
                const double r2 = dx * dx + dy * dy + dz * dz;
                const double inv2 = 1.0 / r2;
                const double inv6 = inv2 * inv2 * inv2;
                const double coeff = 12.0 * inv2 * inv6 * (1.0 - inv6);
                g[3 * i] += coeff * dx;
                g[3 * i + 1] += coeff * dy;
                g[3 * i + 2] += coeff * dz;
                g[3 * j] -= coeff * dx;
                g[3 * j + 1] -= coeff * dy;
                g[3 * j + 2] -= coeff * dz;
            }
        return g;
    };
    const auto inf_norm = [](const std::vector<double>& v) {
        double m = 0;
        for (double a : v) m = std::max(m, std::abs(a));
        return m;
    };
    const auto dot = [](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0;
        for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
        return s;
    };

    double fx = energy_of(x);
    std::vector<double> g = gradient_of(x);
    std::vector<std::vector<double>> s_hist, y_hist;
    std::vector<double> rho_hist;

    MinimizeResult result;
    int iter = 0;
    for (; iter < params.max_iters; ++iter) {
        if (inf_norm(g) <= params.tol) break;

        // two-loop recursion for the search direction
        std::vector<double> d = g;
        std::vector<double> alpha(s_hist.size());
        for (std::size_t k = s_hist.size(); k-- > 0;) {
            alpha[k] = rho_hist[k] * dot(s_hist[k], d);
            for (std::size_t i = 0; i < n; ++i) d[i] -= alpha[k] * y_hist[k][i];
        }
        if (!s_hist.empty()) {
            const double gamma = dot(s_hist.back(), y_hist.back()) / dot(y_hist.back(), y_hist.back());
            for (auto& v : d) v *= gamma;
        }
        for (std::size_t k = 0; k < s_hist.size(); ++k) {
            const double beta = rho_hist[k] * dot(y_hist[k], d);
            for (std::size_t i = 0; i < n; ++i) d[i] += s_hist[k][i] * (alpha[k] - beta);
        }
        for (auto& v : d) v = -v;
        double descent = dot(d, g);
        if (!(descent < 0)) {  // fall back to steepest descent
            for (std::size_t i = 0; i < n; ++i) d[i] = -g[i];
            descent = -dot(g, g);
        }

        // Armijo backtracking; reject non-finite trial energies outright.
        // Near the minimum the predicted decrease drops below the floating
        // resolution of the energy, so allow a roundoff-sized slack there.
        const double noise = 8.0 * std::numeric_limits<double>::epsilon() * std::abs(fx);
        double step = 1.0;
        std::vector<double> x_new(n);
        double f_new = fx;
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            for (std::size_t i = 0; i < n; ++i) x_new[i] = x[i] + step * d[i];
            const double trial = energy_of(x_new);
            if (std::isfinite(trial) && trial <= fx + 1e-4 * step * descent + noise) {
                f_new = trial;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;  // no productive step at tiny scale: local floor

        std::vector<double> g_new = gradient_of(x_new);
        std::vector<double> s_vec(n), y_vec(n);
        for (std::size_t i = 0; i < n; ++i) {
            s_vec[i] = x_new[i] - x[i];
            y_vec[i] = g_new[i] - g[i];
        }
        const double sy = dot(s_vec, y_vec);
        if (sy > 1e-12) {
            s_hist.push_back(std::move(s_vec));
            y_hist.push_back(std::move(y_vec));
            rho_hist.push_back(1.0 / sy);
            if (static_cast<int>(s_hist.size()) > params.history) {
                s_hist.erase(s_hist.begin());
                y_hist.erase(y_hist.begin());
                rho_hist.erase(rho_hist.begin());
            }
        }
        x = std::move(x_new);
        fx = f_new;
        g = std::move(g_new);
    }

    result.configuration = as_config(x);
    result.energy = fx;
    result.grad_norm = inf_norm(g);
    result.iterations = iter;
    result.converged = result.grad_norm <= params.tol;
    return result;
}

// ---------------------------------------------------------------------------
// FCC lattice sums
// ---------------------------------------------------------------------------

struct LatticeSumResult {
    double scale = 1.0;                // nearest-neighbor distance
    double per_particle_energy = 0.0;
    double cutoff = 0.0;
    double tail_bound = 0.0;           // |neglected attraction| at this cutoff
    double repulsion_tail = 0.0;       // neglected repulsion (one-sided, tiny)

    /// B >= -(e + repulsion_tail): the neglected attraction only deepens the
    /// infinite-lattice energy, so only the repulsive remainder can cheat.
    double certified_lower_bound() const { return -(per_particle_energy + repulsion_tail); }
};

namespace detail {

// Inverse-power sums L_p = sum |u|^-p over the FCC lattice scaled to unit
// nearest-neighbor distance, within |u| <= cutoff_units.
struct FccSums {
    double l12 = 0, l6 = 0;
};

inline FccSums fcc_inverse_power_sums(double cutoff_units) {
    // FCC = { (i,j,k)/sqrt(2) : i+j+k even }, nearest neighbor at distance 1
    FccSums sums;
    const double limit2 = 2.0 * cutoff_units * cutoff_units;  // in integer-lattice metric
    const int reach = static_cast<int>(std::ceil(std::sqrt(limit2)));
    for (int i = -reach; i <= reach; ++i)
        for (int j = -reach; j <= reach; ++j)
            for (int k = -reach; k <= reach; ++k) {
                if ((i + j + k) % 2 != 0) continue;
                const long m2 = static_cast<long>(i) * i + static_cast<long>(j) * j +
                                static_cast<long>(k) * k;
                if (m2 == 0 || static_cast<double>(m2) > limit2) continue;
                const double u2 = 0.5 * static_cast<double>(m2);  // |u|^2
                const double inv6 = 1.0 / (u2 * u2 * u2);
                sums.l6 += inv6;
                sums.l12 += inv6 * inv6;
            }
    return sums;
}

}  // namespace detail

/// Per-particle FCC energy at the given nearest-neighbor distance, with an
/// integral tail bound on the neglected attraction:
/// |tail| <= (1/2) rho_fcc * int_R^inf 2 r^-6 4 pi r^2 dr = 16 pi / (3 a^3 R^3).
inline LatticeSumResult fcc_energy_per_particle(double scale, double cutoff) {
    if (scale <= 0) throw std::domain_error("fcc_energy_per_particle: scale must be positive");
    if (cutoff < 3 * scale) throw std::domain_error("fcc_energy_per_particle: cutoff below 3*scale");
    const double cutoff_units = cutoff / scale;
    const detail::FccSums sums = detail::fcc_inverse_power_sums(cutoff_units);
    const double inv6 = 1.0 / std::pow(scale, 6);
    LatticeSumResult out;
    out.scale = scale;
    out.cutoff = cutoff;
    out.per_particle_energy = 0.5 * (sums.l12 * inv6 * inv6 - 2.0 * sums.l6 * inv6);
    const double a = scale * std::sqrt(2.0);  // cubic cell edge
    constexpr double pi = 3.14159265358979323846;
    out.tail_bound = 16.0 * pi / (3.0 * a * a * a * std::pow(cutoff, 3));
    out.repulsion_tail = 8.0 * pi / (9.0 * a * a * a * std::pow(cutoff, 9));
    return out;
}

/// Minimizes the per-particle energy over the lattice scale. With
/// u = scale^-6 the energy is the quadratic (L12 u^2 - 2 L6 u)/2, so the
/// optimum is u* = L6/L12 and e* = -L6^2 / (2 L12). The default cutoff is
/// wide enough for the certified bound to clear 8.61.
inline LatticeSumResult fcc_optimal_scale(double cutoff_units = 60.0) {
    const detail::FccSums sums = detail::fcc_inverse_power_sums(cutoff_units);
    const double u_star = sums.l6 / sums.l12;
    const double scale = std::pow(u_star, -1.0 / 6.0);
    LatticeSumResult out = fcc_energy_per_particle(scale, cutoff_units * scale);
    return out;
}

// ---------------------------------------------------------------------------
// constructive box normalization
// ---------------------------------------------------------------------------

/// Applies the two energy-non-decreasing transformations: particles with a
/// neighbor closer than 0.65 and negative minus-energy are relocated beyond
/// interaction range, then empty slabs between segment planes are contracted
/// until every distance is at most 2(n-1). The result is recentered on the
/// first particle.
inline Configuration compactify(const Configuration& q) {
    const std::size_t n = q.size();
    if (n < 2) throw std::domain_error("compactify: need at least two particles");
    std::vector<Vec3> pts = q.points();
    const double close_cut = 0.65;
    const double box = 2.0 * static_cast<double>(n - 1);

    const auto minus_energy_of = [&](std::size_t i) {
        double m = 0;
        for (std::size_t j = 0; j < pts.size(); ++j)
            if (j != i) m += h_double(distance(pts[i], pts[j]));
        return m;
    };

    // phase 1: separate too-close particles with negative minus-energy
    for (std::size_t guard = 0; guard <= n * n; ++guard) {
        std::size_t a = 0, b = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const double d = distance(pts[i], pts[j]);
                if (d < best) { best = d; a = i; b = j; }
            }
        if (best >= close_cut) break;
        const double ma = minus_energy_of(a), mb = minus_energy_of(b);
        std::size_t victim;
        if (ma < 0 && (ma <= mb || mb >= 0)) victim = a;
        else if (mb < 0) victim = b;
        else break;  // neither qualifies; cannot happen for true pair potentials
        double max_x = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i)
            if (i != victim) max_x = std::max(max_x, pts[i].x);
        pts[victim] = {max_x + box + 1.0, 0.0, 0.0};
    }

    // phase 2: contract empty slabs while some pair exceeds the box diameter
    while (true) {
        std::size_t a = n, b = n;
        double dist = 0;
        for (std::size_t i = 0; i < n && a == n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const double d = distance(pts[i], pts[j]);
                if (d > box) { a = i; b = j; dist = d; break; }
            }
        if (a == n) break;
        const Vec3 axis = (pts[b] - pts[a]) * (1.0 / dist);
        const double spacing = dist / static_cast<double>(n - 1);
        std::vector<double> proj(n);
        for (std::size_t i = 0; i < n; ++i) proj[i] = (pts[i] - pts[a]).dot(axis);
        // first empty open slab (p_k, p_{k+1}); one exists by pigeonhole
        std::size_t slab = n;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            const double lo = spacing * static_cast<double>(k);
            const double hi = spacing * static_cast<double>(k + 1);
            bool empty = true;
            for (std::size_t i = 0; i < n; ++i)
                if (proj[i] > lo && proj[i] < hi) { empty = false; break; }
            if (empty) { slab = k; break; }
        }
        if (slab == n) throw std::logic_error("compactify: no empty slab found");
        const double threshold = spacing * static_cast<double>(slab + 1);
        for (std::size_t i = 0; i < n; ++i)
            if (proj[i] >= threshold) pts[i] -= axis;
    }

    // recenter on the first particle
    const Vec3 origin = pts[0];
    for (auto& p : pts) p -= origin;
    return Configuration(std::move(pts));
}

}  // namespace ljstab
