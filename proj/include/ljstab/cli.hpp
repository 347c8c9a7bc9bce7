#pragma once

// Command-line front end. Kept in a header so the dispatch logic is testable
// without spawning processes; tools/main.cpp is a thin wrapper.
// Exit codes: 0 computation done (and all requested certificates PASS for
// `verify`), 1 a certificate failed or was inconclusive, 2 usage or IO error.

#include "ljstab/certificate.hpp"
#include "ljstab/cluster.hpp"
#include "ljstab/integrals.hpp"
#include "ljstab/verifier.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace ljstab {

namespace cli_detail {

using ordered_json = nlohmann::ordered_json;

inline ordered_json json_of(const Interval& v) {
    ordered_json j;
    j["lo"] = format_decimal(v.lo(), 12, RoundDir::Down);
    j["hi"] = format_decimal(v.hi(), 12, RoundDir::Up);
    j["exact_lo"] = to_fraction_string(v.lo());
    j["exact_hi"] = to_fraction_string(v.hi());
    return j;
}

inline ordered_json json_of(const NamedValue& v) {
    ordered_json j;
    j["name"] = v.name;
    j["enclosure"] = json_of(v.value);
    if (!v.claim.empty()) j["claim"] = v.claim;
    return j;
}

inline ordered_json json_of(const CheckNode& node) {
    ordered_json j;
    j["label"] = node.label;
    j["verdict"] = verdict_name(node.verdict);
    if (!node.note.empty()) j["note"] = node.note;
    if (!node.values.empty()) {
        ordered_json vals = ordered_json::array();
        for (const auto& v : node.values) vals.push_back(json_of(v));
        j["values"] = vals;
    }
    if (!node.children.empty()) {
        ordered_json kids = ordered_json::array();
        for (const auto& c : node.children) kids.push_back(json_of(c));
        j["checks"] = kids;
    }
    return j;
}

inline ordered_json json_of(const Report& report) {
    ordered_json j;
    ordered_json certs = ordered_json::array();
    for (const auto& cert : report.certificates) {
        ordered_json c;
        c["id"] = cert.id;
        c["title"] = cert.title;
        c["verdict"] = verdict_name(cert.verdict);
        if (!cert.key_values.empty()) {
            ordered_json vals = ordered_json::array();
            for (const auto& v : cert.key_values) vals.push_back(json_of(v));
            c["key_values"] = vals;
        }
        ordered_json checks = ordered_json::array();
        for (const auto& n : cert.checks) checks.push_back(json_of(n));
        c["checks"] = checks;
        certs.push_back(c);
    }
    j["certificates"] = certs;
    if (!report.summary.empty()) {
        ordered_json vals = ordered_json::array();
        for (const auto& v : report.summary) vals.push_back(json_of(v));
        j["summary"] = vals;
    }
    return j;
}

inline const std::map<std::string, std::string>& prop_aliases() {
    static const std::map<std::string, std::string> m = {
        {"2.4", "2.4"},   {"2.5", "2.5"},     {"3.1i", "3.1-I"}, {"3.1ii", "3.1-II"},
        {"3.3", "3.3"},   {"4.1", "4.1"},     {"5.1", "5.1"},    {"appendix", "appendix"},
    };
    return m;
}

}  // namespace cli_detail

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"certified bounds for the Lennard-Jones stability constant"};
    app.require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "run proposition certificates");
    std::string prop = "all";
    std::string format = "text";
    int jobs = 1;
    int max_depth = 40;
    std::string width_str = "1e-15";
    bool with_lower_bound = false;
    verify->add_option("--prop", prop, "proposition id or 'all'")
        ->check(CLI::IsMember({"all", "2.4", "2.5", "3.1i", "3.1ii", "3.3", "4.1", "5.1", "appendix"}));
    verify->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    verify->add_option("--jobs", jobs, "parallel certificate workers")->check(CLI::PositiveNumber);
    verify->add_option("--max-depth", max_depth, "bisection depth cap")->check(CLI::NonNegativeNumber);
    verify->add_option("--enclosure-width", width_str, "target width for irrational enclosures");
    verify->add_flag("--with-lower-bound", with_lower_bound, "append the FCC lattice lower bound");

    // integral
    auto* integral = app.add_subcommand("integral", "moment integral of theta from a lower limit");
    std::string lower_str = "0";
    integral->add_option("--lower", lower_str, "lower integration limit")->required();

    // energy
    auto* energy = app.add_subcommand("energy", "total energy of a configuration file");
    std::string energy_file;
    energy->add_option("file", energy_file, "configuration file")->required();

    // fcc
    auto* fcc = app.add_subcommand("fcc", "FCC lattice per-particle energy");
    double fcc_scale = 1.0;
    double fcc_cutoff = 25.0;
    bool optimize_scale = false;
    fcc->add_option("--scale", fcc_scale, "nearest-neighbor distance");
    fcc->add_option("--cutoff", fcc_cutoff, "summation cutoff radius");
    fcc->add_flag("--optimize-scale", optimize_scale, "minimize over the lattice scale");

    // optimize
    auto* optimize = app.add_subcommand("optimize", "local energy minimization");
    std::string opt_file;
    unsigned opt_seed = 0;
    double opt_tol = 1e-8;
    optimize->add_option("file", opt_file, "configuration file")->required();
    optimize->add_option("--seed", opt_seed, "seed for the initial jitter")->required();
    optimize->add_option("--tol", opt_tol, "gradient max-norm target");

    // compactify
    auto* compact = app.add_subcommand("compactify", "box-normalize a configuration");
    std::string compact_file;
    compact->add_option("file", compact_file, "configuration file")->required();

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n" << app.help();
        return 2;
    }

    try {
        if (*verify) {
            VerifyOptions opts;
            opts.certify.max_depth = max_depth;
            const Rational width = parse_decimal(width_str);
            if (width <= 0) {
                err << "enclosure width must be positive\n";
                return 2;
            }
            opts.width = width;
            std::set<std::string> requested;
            if (prop != "all") requested.insert(cli_detail::prop_aliases().at(prop));
            Report report = run_all(opts, requested, jobs);
            if (with_lower_bound) {
                const LatticeSumResult fcc_result = fcc_optimal_scale();
                const Rational e(fcc_result.per_particle_energy);
                const Rational tail(fcc_result.tail_bound);
                report.summary.push_back(
                    {"B_lower", Interval(-e - tail, -e + tail), "FCC lattice, optimized scale"});
            }
            Verdict overall = Verdict::Pass;
            for (const auto& cert : report.certificates) overall = combine(overall, cert.verdict);
            if (format == "json") {
                cli_detail::ordered_json j = cli_detail::json_of(report);
                j["overall"] = verdict_name(overall);
                out << j.dump(2) << "\n";
            } else {
                out << to_text(report);
                out << "overall: " << verdict_name(overall) << "\n";
            }
            return overall == Verdict::Pass ? 0 : 1;
        }

        if (*integral) {
            const Rational lower = parse_decimal(lower_str);
            if (lower < 0) {
                err << "lower limit must be nonnegative\n";
                return 2;
            }
            const Interval value = theta_moment(lower);
            out << "integral_theta_w2 from " << format_decimal(lower, 12) << " = " << value.str() << "\n";
            out << "24x = " << (Rational(24) * value).str() << "\n";
            return 0;
        }

        if (*energy) {
            const Configuration q = Configuration::read_file(energy_file);
            out << "particles = " << q.size() << "\n";
            out << std::setprecision(12) << "total energy = " << total_energy(q) << "\n";
            out << std::setprecision(12) << "min distance = " << min_distance(q) << "\n";
            return 0;
        }

        if (*fcc) {
            const LatticeSumResult r =
                optimize_scale ? fcc_optimal_scale() : fcc_energy_per_particle(fcc_scale, fcc_cutoff);
            out << std::setprecision(12);
            out << "scale = " << r.scale << "\n";
            out << "per-particle energy = " << r.per_particle_energy << "\n";
            out << "cutoff = " << r.cutoff << ", tail bound = " << r.tail_bound << "\n";
            if (optimize_scale) {
                out << "B >= " << std::setprecision(3)
                    << std::floor(r.certified_lower_bound() * 100.0) / 100.0 << "\n";
            }
            return 0;
        }

        if (*optimize) {
            const Configuration q = Configuration::read_file(opt_file);
            MinimizeParams params;
            params.tol = opt_tol;
            const MinimizeResult r = local_minimize(q, opt_seed, params);
            out << std::setprecision(12);
            out << "# initial energy = " << total_energy(q) << "\n";
            out << "# final energy = " << r.energy << "\n";
            out << "# gradient max-norm = " << r.grad_norm << " after " << r.iterations
                << " iterations" << (r.converged ? "" : " (not converged)") << "\n";
            out << "# min distance = " << min_distance(r.configuration) << "\n";
            r.configuration.write(out);
            return 0;
        }

        if (*compact) {
            const Configuration q = Configuration::read_file(compact_file);
            const Configuration boxed = compactify(q);
            out << std::setprecision(12);
            out << "# minus-energy " << -total_energy(q) << " -> " << -total_energy(boxed) << "\n";
            out << "# min distance " << min_distance(q) << " -> " << min_distance(boxed) << "\n";
            boxed.write(out);
            return 0;
        }
    } catch (const ConfigParseError& e) {
        err << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace ljstab
