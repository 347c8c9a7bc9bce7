#pragma once

// The generic engine behind every "this expression has this sign on this
// interval" step: adaptive bisection with interval evaluation. PASS means a
// finite cover of subintervals was found on each of which the interval image
// has the target sign; FAIL carries a subinterval whose image has the wrong
// sign throughout (a genuine refutation); hitting the depth or node budget
// yields INCONCLUSIVE, which is deliberately distinct from FAIL.

#include "ljstab/certificate.hpp"
#include "ljstab/interval.hpp"
#include "ljstab/rational.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ljstab {

enum class SignTarget { Positive, Negative };

struct CertifyOptions {
    int max_depth = 40;        // bisection levels below the input domain
    long max_nodes = 200000;   // total interval evaluations
};

struct SignWitness {
    Interval subdomain;
    Interval image;
};

struct CertifyResult {
    Verdict verdict = Verdict::Inconclusive;
    long nodes = 0;
    int deepest = 0;
    std::optional<Rational> min_margin;  // over certified pieces: distance of the image from 0
    std::optional<SignWitness> witness;  // for FAIL / INCONCLUSIVE
};

inline CertifyResult certify_sign(const std::function<Interval(const Interval&)>& f,
                                  const Interval& domain, SignTarget target,
                                  const CertifyOptions& options = {}) {
    CertifyResult result;
    struct Node { Interval iv; int depth; };
    std::vector<Node> stack;
    stack.push_back({domain, 0});
    result.verdict = Verdict::Pass;
    bool exhausted = false;
    while (!stack.empty()) {
        Node node = stack.back();
        stack.pop_back();
        ++result.nodes;
        result.deepest = std::max(result.deepest, node.depth);

        bool evaluable = true;
        Interval image;
        try {
            image = f(node.iv);
        } catch (const std::domain_error&) {
            evaluable = false;  // singular inside; try to split it away
        }
        if (evaluable) {
            const bool want_pos = target == SignTarget::Positive;
            if ((want_pos && image.strictly_positive()) || (!want_pos && image.strictly_negative())) {
                const Rational margin = want_pos ? image.lo() : -image.hi();
                if (!result.min_margin || margin < *result.min_margin) result.min_margin = margin;
                continue;
            }
            if ((want_pos && image.strictly_negative()) || (!want_pos && image.strictly_positive())) {
                result.verdict = Verdict::Fail;
                result.witness = SignWitness{node.iv, image};
                return result;  // a genuine refutation trumps everything
            }
        }
        if (node.depth >= options.max_depth || result.nodes >= options.max_nodes) {
            // keep scanning: a definite wrong-sign piece elsewhere still means FAIL
            exhausted = true;
            if (!result.witness) result.witness = SignWitness{node.iv, evaluable ? image : Interval(Rational(0))};
            if (result.nodes >= options.max_nodes) break;
            continue;
        }
        const Rational mid = node.iv.mid();
        // right first, so the left half is examined first (deterministic order)
        stack.push_back({Interval(mid, node.iv.hi()), node.depth + 1});
        stack.push_back({Interval(node.iv.lo(), mid), node.depth + 1});
    }
    if (exhausted) result.verdict = Verdict::Inconclusive;
    return result;
}

/// Packages a certify_sign run as a certificate node.
inline CheckNode sign_check_node(std::string label, const std::function<Interval(const Interval&)>& f,
                                 const Interval& domain, SignTarget target,
                                 const CertifyOptions& options = {}) {
    const CertifyResult r = certify_sign(f, domain, target, options);
    std::string note = std::string(target == SignTarget::Positive ? "positive" : "negative") + " on " +
                       domain.str() + "; nodes=" + std::to_string(r.nodes) +
                       ", depth=" + std::to_string(r.deepest);
    if (r.min_margin && r.verdict == Verdict::Pass)
        note += ", margin>=" + format_decimal(*r.min_margin, 6, RoundDir::Down);
    if (r.witness) note += ", witness " + r.witness->subdomain.str(6) + " image " + r.witness->image.str(6);
    return CheckNode::leaf(std::move(label), r.verdict, std::move(note));
}

}  // namespace ljstab
