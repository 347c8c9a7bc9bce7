#pragma once

// Dense univariate polynomials over the rationals, with the exact root
// machinery needed for the sign arguments: Descartes' rule, Sturm chains and
// bisection-based root isolation. Everything here runs in exact arithmetic;
// there are no floating pseudo-remainders.

#include "ljstab/interval.hpp"
#include "ljstab/number_field.hpp"
#include "ljstab/rational.hpp"

#include <algorithm>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ljstab {

class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> ascending) : coeff_(std::move(ascending)) { normalize(); }
    explicit Polynomial(std::initializer_list<Rational> ascending) : coeff_(ascending) { normalize(); }

    static Polynomial zero() { return Polynomial(); }
    static Polynomial constant(const Rational& c) { return Polynomial({c}); }

    /// c * x^k
    static Polynomial monomial(const Rational& c, std::size_t k) {
        std::vector<Rational> v(k + 1, Rational(0));
        v[k] = c;
        return Polynomial(std::move(v));
    }

    bool is_zero() const { return coeff_.empty(); }
    int degree() const { return static_cast<int>(coeff_.size()) - 1; }
    const std::vector<Rational>& coefficients() const { return coeff_; }

    Rational coefficient(std::size_t k) const {
        return k < coeff_.size() ? coeff_[k] : Rational(0);
    }

    Rational leading() const {
        if (is_zero()) throw std::domain_error("Polynomial: leading coefficient of zero polynomial");
        return coeff_.back();
    }

    Rational operator()(const Rational& x) const {
        Rational acc(0);
        for (std::size_t i = coeff_.size(); i-- > 0;) acc = acc * x + coeff_[i];
        return acc;
    }

    Interval operator()(const Interval& x) const {
        Interval acc;
        for (std::size_t i = coeff_.size(); i-- > 0;) acc = acc * x + Interval(coeff_[i]);
        return acc;
    }

    double eval_double(double x) const {
        double acc = 0;
        for (std::size_t i = coeff_.size(); i-- > 0;) acc = acc * x + to_double(coeff_[i]);
        return acc;
    }

    Polynomial operator-() const {
        std::vector<Rational> v(coeff_);
        for (auto& c : v) c = -c;
        return Polynomial(std::move(v));
    }

    Polynomial operator+(const Polynomial& o) const {
        std::vector<Rational> v(std::max(coeff_.size(), o.coeff_.size()), Rational(0));
        for (std::size_t i = 0; i < coeff_.size(); ++i) v[i] += coeff_[i];
        for (std::size_t i = 0; i < o.coeff_.size(); ++i) v[i] += o.coeff_[i];
        return Polynomial(std::move(v));
    }

    Polynomial operator-(const Polynomial& o) const { return *this + (-o); }

    Polynomial operator*(const Polynomial& o) const {
        if (is_zero() || o.is_zero()) return zero();
        std::vector<Rational> v(coeff_.size() + o.coeff_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < coeff_.size(); ++i)
            for (std::size_t j = 0; j < o.coeff_.size(); ++j) v[i + j] += coeff_[i] * o.coeff_[j];
        return Polynomial(std::move(v));
    }

    Polynomial operator*(const Rational& k) const {
        std::vector<Rational> v(coeff_);
        for (auto& c : v) c *= k;
        return Polynomial(std::move(v));
    }

    Polynomial derivative() const {
        if (coeff_.size() <= 1) return zero();
        std::vector<Rational> v(coeff_.size() - 1);
        for (std::size_t i = 1; i < coeff_.size(); ++i) v[i - 1] = coeff_[i] * Rational(static_cast<long>(i));
        return Polynomial(std::move(v));
    }

    /// Exact Euclidean division: *this = q * divisor + r with deg r < deg divisor.
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const {
        if (divisor.is_zero()) throw std::domain_error("Polynomial: division by zero polynomial");
        Polynomial r = *this;
        std::vector<Rational> q(coeff_.size(), Rational(0));
        const Rational lead = divisor.leading();
        while (!r.is_zero() && r.degree() >= divisor.degree()) {
            const std::size_t shift = static_cast<std::size_t>(r.degree() - divisor.degree());
            const Rational factor = r.leading() / lead;
            q[shift] = factor;
            r = r - divisor * Polynomial::monomial(factor, shift);
        }
        return {Polynomial(std::move(q)), r};
    }

    /// Monic gcd.
    static Polynomial gcd(Polynomial a, Polynomial b) {
        while (!b.is_zero()) {
            Polynomial r = a.divmod(b).second;
            a = std::move(b);
            b = std::move(r);
        }
        if (a.is_zero()) return a;
        return a * (Rational(1) / a.leading());
    }

    bool is_squarefree() const { return gcd(*this, derivative()).degree() <= 0; }

    /// Number of sign changes in the coefficient sequence: an upper bound on
    /// the count of positive real roots (with multiplicity).
    int descartes_bound() const {
        if (is_zero()) throw std::domain_error("descartes_bound: zero polynomial");
        int changes = 0, prev = 0;
        for (const auto& c : coeff_) {
            if (c == 0) continue;
            const int sgn = c > 0 ? 1 : -1;
            if (prev != 0 && sgn != prev) ++changes;
            prev = sgn;
        }
        return changes;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t i = coeff_.size(); i-- > 0;) {
            if (coeff_[i] == 0) continue;
            if (!out.empty()) out += " + ";
            out += to_fraction_string(coeff_[i]);
            if (i > 0) out += "*x^" + std::to_string(i);
        }
        return out;
    }

private:
    void normalize() {
        while (!coeff_.empty() && coeff_.back() == 0) coeff_.pop_back();
    }

    std::vector<Rational> coeff_;
};

inline Polynomial operator*(const Rational& k, const Polynomial& p) { return p * k; }

/// Raised by root isolation when the input has repeated roots; carries the
/// offending square factor.
struct NonSquarefreeError : std::domain_error {
    explicit NonSquarefreeError(Polynomial factor)
        : std::domain_error("isolate_roots: polynomial is not squarefree; gcd factor " + factor.str()),
          gcd_factor(std::move(factor)) {}
    Polynomial gcd_factor;
};

struct RootEnclosure {
    Interval isolating;      // contains exactly one root
    int multiplicity = 1;
};

namespace detail {

// Signed-remainder (Sturm) chain. Each element is rescaled by a positive
// constant to keep coefficient growth in check; signs are unaffected.
inline std::vector<Polynomial> sturm_chain(const Polynomial& p) {
    std::vector<Polynomial> chain;
    chain.push_back(p);
    Polynomial d = p.derivative();
    if (!d.is_zero()) chain.push_back(d);
    while (chain.size() >= 2 && !chain.back().is_zero()) {
        const Polynomial& a = chain[chain.size() - 2];
        const Polynomial& b = chain.back();
        Polynomial r = -(a.divmod(b).second);
        if (r.is_zero()) break;
        Rational scale(0);
        for (const auto& c : r.coefficients()) scale = std::max(scale, c < 0 ? Rational(-c) : c);
        chain.push_back(r * (Rational(1) / scale));
    }
    return chain;
}

inline int sign_variations(const std::vector<Polynomial>& chain, const Rational& x) {
    int changes = 0, prev = 0;
    for (const auto& q : chain) {
        const Rational v = q(x);
        if (v == 0) continue;
        const int sgn = v > 0 ? 1 : -1;
        if (prev != 0 && sgn != prev) ++changes;
        prev = sgn;
    }
    return changes;
}

// Finds a point near x (within (x, x + span/2^10..2^40)) where p does not
// vanish; used to nudge endpoints off roots.
inline Rational nudge_off_root(const Polynomial& p, const Rational& x, const Rational& span, int direction) {
    Rational step = span / 1024;
    for (int i = 0; i < 40; ++i) {
        const Rational candidate = x + Rational(direction) * step;
        if (p(candidate) != 0) return candidate;
        step /= 2;
    }
    throw std::logic_error("nudge_off_root: could not leave root");
}

}  // namespace detail

/// Exact number of distinct real roots of p in (a, b]. Endpoints where p
/// vanishes are nudged inward by an exact rational step, per the contract.
inline int sturm_count(const Polynomial& p, Rational a, Rational b) {
    if (p.is_zero()) throw std::domain_error("sturm_count: zero polynomial");
    if (!(a < b)) throw std::domain_error("sturm_count: requires a < b");
    const Rational span = b - a;
    if (p(a) == 0) a = detail::nudge_off_root(p, a, span, +1);
    if (p(b) == 0) b = detail::nudge_off_root(p, b, span, -1);
    if (!(a < b)) return 0;
    const auto chain = detail::sturm_chain(p);
    return detail::sign_variations(chain, a) - detail::sign_variations(chain, b);
}

/// Upper bound on positive real roots by Descartes' rule of signs.
inline int descartes_bound(const Polynomial& p) { return p.descartes_bound(); }

/// Isolates all real roots of a squarefree p inside `domain` into disjoint
/// intervals of width <= `width`, each certified by a Sturm count of one.
inline std::vector<RootEnclosure> isolate_roots(const Polynomial& p, const Interval& domain,
                                                const Rational& width) {
    if (p.is_zero()) throw std::domain_error("isolate_roots: zero polynomial");
    if (width <= 0) throw std::domain_error("isolate_roots: width must be positive");
    {
        const Polynomial g = Polynomial::gcd(p, p.derivative());
        if (g.degree() > 0) throw NonSquarefreeError(g);
    }
    const auto chain = detail::sturm_chain(p);
    // widen endpoints slightly if they sit on roots, so boundary roots are kept
    Rational lo = domain.lo(), hi = domain.hi();
    const Rational span = hi - lo;
    if (span <= 0) throw std::domain_error("isolate_roots: empty domain");
    if (p(lo) == 0) lo = detail::nudge_off_root(p, lo, span, -1);
    if (p(hi) == 0) hi = detail::nudge_off_root(p, hi, span, +1);

    std::vector<RootEnclosure> found;
    struct Segment { Rational a, b; int count; };
    std::vector<Segment> stack;
    const auto count_on = [&chain](const Rational& a, const Rational& b) {
        return detail::sign_variations(chain, a) - detail::sign_variations(chain, b);
    };
    stack.push_back({lo, hi, count_on(lo, hi)});
    while (!stack.empty()) {
        Segment seg = stack.back();
        stack.pop_back();
        if (seg.count == 0) continue;
        if (seg.count == 1 && seg.b - seg.a <= width) {
            found.push_back({Interval(seg.a, seg.b), 1});
            continue;
        }
        Rational mid = (seg.a + seg.b) / 2;
        if (p(mid) == 0) mid = detail::nudge_off_root(p, mid, seg.b - seg.a, +1);
        const int left = count_on(seg.a, mid);
        // push right first so the left half is processed first (ascending output)
        stack.push_back({mid, seg.b, seg.count - left});
        stack.push_back({seg.a, mid, left});
    }
    std::sort(found.begin(), found.end(),
              [](const RootEnclosure& x, const RootEnclosure& y) { return x.isolating.lo() < y.isolating.lo(); });
    return found;
}

/// Polynomial with coefficients in Q(s); enough structure for the tangency
/// polynomial q(r) = r^12 (t(r) - h(r)) whose r^11 coefficient is A = (360/121) s.
class NfPolynomial {
public:
    NfPolynomial() = default;
    explicit NfPolynomial(std::vector<NumberFieldElem> ascending) : coeff_(std::move(ascending)) { normalize(); }

    static NfPolynomial from_rational(const Polynomial& p) {
        std::vector<NumberFieldElem> v;
        v.reserve(p.coefficients().size());
        for (const auto& c : p.coefficients()) v.emplace_back(c);
        return NfPolynomial(std::move(v));
    }

    bool is_zero() const { return coeff_.empty(); }
    int degree() const { return static_cast<int>(coeff_.size()) - 1; }
    const std::vector<NumberFieldElem>& coefficients() const { return coeff_; }

    NumberFieldElem operator()(const NumberFieldElem& x) const {
        NumberFieldElem acc;
        for (std::size_t i = coeff_.size(); i-- > 0;) acc = acc * x + coeff_[i];
        return acc;
    }

    Interval eval_interval(const Interval& x, const Rational& s_width = kDefaultWidth) const {
        Interval acc;
        for (std::size_t i = coeff_.size(); i-- > 0;) acc = acc * x + coeff_[i].interval_image(s_width);
        return acc;
    }

    NfPolynomial derivative() const {
        if (coeff_.size() <= 1) return NfPolynomial();
        std::vector<NumberFieldElem> v(coeff_.size() - 1);
        for (std::size_t i = 1; i < coeff_.size(); ++i)
            v[i - 1] = coeff_[i] * Rational(static_cast<long>(i));
        return NfPolynomial(std::move(v));
    }

    /// Descartes bound with exact coefficient signs decided in Q(s).
    int descartes_bound() const {
        if (is_zero()) throw std::domain_error("descartes_bound: zero polynomial");
        int changes = 0, prev = 0;
        for (const auto& c : coeff_) {
            const int sgn = c.sign();
            if (sgn == 0) continue;
            if (prev != 0 && sgn != prev) ++changes;
            prev = sgn;
        }
        return changes;
    }

private:
    void normalize() {
        while (!coeff_.empty() && coeff_.back().is_zero()) coeff_.pop_back();
    }

    std::vector<NumberFieldElem> coeff_;
};

}  // namespace ljstab
