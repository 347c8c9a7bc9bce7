#pragma once

// Closed intervals with exact rational endpoints. Arithmetic on such
// intervals is itself exact (rationals are closed under +,-,*,/), so every
// operation returns the smallest representable enclosure of the true image;
// no directed hardware rounding is involved. Irrational constants enter only
// through refinable enclosures (see constants.hpp).

#include "ljstab/rational.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>

namespace ljstab {

class Interval {
public:
    Interval() : lo_(0), hi_(0) {}
    explicit Interval(const Rational& point) : lo_(point), hi_(point) {}
    Interval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
        if (lo_ > hi_) throw std::invalid_argument("Interval: lo > hi");
    }

    static Interval point(const Rational& v) { return Interval(v); }

    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    Rational width() const { return hi_ - lo_; }
    Rational mid() const { return (lo_ + hi_) / 2; }

    bool contains(const Rational& v) const { return lo_ <= v && v <= hi_; }
    bool contains_zero() const { return lo_ <= 0 && 0 <= hi_; }
    bool contains(const Interval& other) const { return lo_ <= other.lo_ && other.hi_ <= hi_; }
    bool is_point() const { return lo_ == hi_; }

    bool strictly_positive() const { return lo_ > 0; }
    bool strictly_negative() const { return hi_ < 0; }

    Interval operator-() const { return Interval(-hi_, -lo_); }

    Interval operator+(const Interval& o) const { return Interval(lo_ + o.lo_, hi_ + o.hi_); }
    Interval operator-(const Interval& o) const { return Interval(lo_ - o.hi_, hi_ - o.lo_); }

    Interval operator*(const Interval& o) const {
        const Rational p1 = lo_ * o.lo_, p2 = lo_ * o.hi_, p3 = hi_ * o.lo_, p4 = hi_ * o.hi_;
        return Interval(std::min(std::min(p1, p2), std::min(p3, p4)),
                        std::max(std::max(p1, p2), std::max(p3, p4)));
    }

    Interval operator/(const Interval& o) const {
        if (o.contains_zero()) throw std::domain_error("Interval: division by interval containing zero");
        return *this * Interval(Rational(1) / o.hi_, Rational(1) / o.lo_);
    }

    Interval& operator+=(const Interval& o) { return *this = *this + o; }
    Interval& operator-=(const Interval& o) { return *this = *this - o; }
    Interval& operator*=(const Interval& o) { return *this = *this * o; }
    Interval& operator/=(const Interval& o) { return *this = *this / o; }

    /// Exact image of x -> x^n over the interval.
    Interval int_pow(long n) const {
        if (n == 0) return Interval(Rational(1));
        if (n < 0) {
            if (contains_zero()) throw std::domain_error("Interval: negative power of interval containing zero");
            return Interval(Rational(1) / hi_, Rational(1) / lo_).int_pow(-n);
        }
        if (n % 2 != 0 || lo_ >= 0) return Interval(ljstab::int_pow(lo_, n), ljstab::int_pow(hi_, n));
        if (hi_ <= 0) return Interval(ljstab::int_pow(hi_, n), ljstab::int_pow(lo_, n));
        // even power straddling zero
        return Interval(Rational(0), std::max(ljstab::int_pow(lo_, n), ljstab::int_pow(hi_, n)));
    }

    static Interval hull(const Interval& a, const Interval& b) {
        return Interval(std::min(a.lo_, b.lo_), std::max(a.hi_, b.hi_));
    }

    static std::optional<Interval> intersect(const Interval& a, const Interval& b) {
        const Rational lo = std::max(a.lo_, b.lo_);
        const Rational hi = std::min(a.hi_, b.hi_);
        if (lo > hi) return std::nullopt;
        return Interval(lo, hi);
    }

    std::string str(int sig = 12) const {
        return "[" + format_decimal(lo_, sig, RoundDir::Down) + ", " +
               format_decimal(hi_, sig, RoundDir::Up) + "]";
    }

private:
    Rational lo_, hi_;
};

inline Interval operator+(const Rational& a, const Interval& b) { return Interval(a) + b; }
inline Interval operator+(const Interval& a, const Rational& b) { return a + Interval(b); }
inline Interval operator-(const Rational& a, const Interval& b) { return Interval(a) - b; }
inline Interval operator-(const Interval& a, const Rational& b) { return a - Interval(b); }
inline Interval operator*(const Rational& a, const Interval& b) { return Interval(a) * b; }
inline Interval operator*(const Interval& a, const Rational& b) { return a * Interval(b); }
inline Interval operator/(const Interval& a, const Rational& b) { return a / Interval(b); }
inline Interval operator/(const Rational& a, const Interval& b) { return Interval(a) / b; }

/// a < b certified (every point of a below every point of b).
inline bool certainly_less(const Interval& a, const Interval& b) { return a.hi() < b.lo(); }

enum class IntervalOp { Add, Sub, Mul, Div, IntPow };

/// Uniform entry point mirroring the certified-arithmetic contract: the
/// result encloses { x op y : x in a, y in b }. For IntPow the exponent is
/// taken from `exponent` and `b` is ignored.
inline Interval interval_arith(const Interval& a, const Interval& b, IntervalOp op, long exponent = 0) {
    switch (op) {
        case IntervalOp::Add: return a + b;
        case IntervalOp::Sub: return a - b;
        case IntervalOp::Mul: return a * b;
        case IntervalOp::Div: return a / b;
        case IntervalOp::IntPow: return a.int_pow(exponent);
    }
    throw std::logic_error("interval_arith: unknown op");
}

}  // namespace ljstab
