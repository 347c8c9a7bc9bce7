#pragma once

// Certificates: the machine-checkable outcome of one proposition check.
// A certificate is a verdict plus the named enclosures realizing the claimed
// constants and a tree of sub-checks, so a referee can audit the chain
// without rerunning anything. Rendering is deterministic: fixed ordering,
// decimal endpoints at 12 significant digits rounded outward, and the exact
// rational endpoints alongside.

#include "ljstab/interval.hpp"
#include "ljstab/rational.hpp"

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace ljstab {

enum class Verdict { Pass, Fail, Inconclusive };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "PASS";
        case Verdict::Fail: return "FAIL";
        case Verdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

/// FAIL dominates, then INCONCLUSIVE; a parent passes only if all children do.
inline Verdict combine(Verdict a, Verdict b) {
    if (a == Verdict::Fail || b == Verdict::Fail) return Verdict::Fail;
    if (a == Verdict::Inconclusive || b == Verdict::Inconclusive) return Verdict::Inconclusive;
    return Verdict::Pass;
}

/// An enclosure worth recording, optionally with the claimed bound it realizes.
struct NamedValue {
    std::string name;
    Interval value;
    std::string claim;  // e.g. "< 26.95"; empty if none
};

struct CheckNode {
    std::string label;
    Verdict verdict = Verdict::Pass;
    std::vector<NamedValue> values;
    std::string note;     // witness description, margins, counts
    std::vector<CheckNode> children;

    static CheckNode leaf(std::string label, Verdict v, std::string note = {}) {
        CheckNode n;
        n.label = std::move(label);
        n.verdict = v;
        n.note = std::move(note);
        return n;
    }

    static CheckNode parent(std::string label, std::vector<CheckNode> children) {
        CheckNode n;
        n.label = std::move(label);
        n.children = std::move(children);
        n.verdict = Verdict::Pass;
        for (const auto& c : n.children) n.verdict = combine(n.verdict, c.verdict);
        return n;
    }

    CheckNode& with_value(std::string name, const Interval& v, std::string claim = {}) {
        values.push_back({std::move(name), v, std::move(claim)});
        return *this;
    }
};

struct Certificate {
    std::string id;      // "2.4", "3.1-I", "appendix", ...
    std::string title;
    Verdict verdict = Verdict::Pass;
    std::vector<NamedValue> key_values;
    std::vector<CheckNode> checks;

    void finalize() {
        verdict = Verdict::Pass;
        for (const auto& c : checks) verdict = combine(verdict, c.verdict);
    }
};

struct Report {
    std::vector<Certificate> certificates;
    std::vector<NamedValue> summary;
};

namespace detail {

inline void render_value(std::ostream& os, const NamedValue& nv, int indent) {
    os << std::string(static_cast<std::size_t>(indent), ' ') << "value " << nv.name << " = "
       << nv.value.str();
    if (!nv.claim.empty()) os << "  (claim: " << nv.claim << ")";
    os << "\n";
    os << std::string(static_cast<std::size_t>(indent + 2), ' ') << "exact ["
       << to_fraction_string(nv.value.lo()) << ", " << to_fraction_string(nv.value.hi()) << "]\n";
}

inline void render_node(std::ostream& os, const CheckNode& node, int indent) {
    os << std::string(static_cast<std::size_t>(indent), ' ') << "check " << node.label << ": "
       << verdict_name(node.verdict);
    if (!node.note.empty()) os << "  -- " << node.note;
    os << "\n";
    for (const auto& v : node.values) render_value(os, v, indent + 2);
    for (const auto& c : node.children) render_node(os, c, indent + 2);
}

}  // namespace detail

inline std::string to_text(const Certificate& cert) {
    std::ostringstream os;
    os << "certificate " << cert.id << " (" << cert.title << "): " << verdict_name(cert.verdict) << "\n";
    for (const auto& v : cert.key_values) detail::render_value(os, v, 2);
    for (const auto& c : cert.checks) detail::render_node(os, c, 2);
    return os.str();
}

inline std::string to_text(const Report& report) {
    std::ostringstream os;
    for (const auto& cert : report.certificates) os << to_text(cert) << "\n";
    if (!report.summary.empty()) {
        os << "summary\n";
        for (const auto& v : report.summary) detail::render_value(os, v, 2);
    }
    return os.str();
}

}  // namespace ljstab
