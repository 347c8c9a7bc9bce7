#pragma once

// Exact arithmetic in Q(s), s = (11/5)^(1/6). Elements are stored as
// c0 + c1 s + ... + c5 s^5 with rational coefficients, reduced modulo
// s^6 = 11/5. The minimal polynomial 5x^6 - 11 is irreducible (Eisenstein at
// 11), so every nonzero element is invertible and has a decidable sign via a
// refinable interval image.

#include "ljstab/constants.hpp"
#include "ljstab/interval.hpp"
#include "ljstab/rational.hpp"

#include <array>
#include <span>
#include <stdexcept>
#include <string>

namespace ljstab {

class NumberFieldElem {
public:
    static constexpr int kDegree = 6;

    NumberFieldElem() { coeff_.fill(Rational(0)); }
    explicit NumberFieldElem(const Rational& constant) : NumberFieldElem() { coeff_[0] = constant; }
    explicit NumberFieldElem(const std::array<Rational, kDegree>& coeffs) : coeff_(coeffs) {}

    /// The generator s itself.
    static NumberFieldElem s() {
        NumberFieldElem e;
        e.coeff_[1] = 1;
        return e;
    }

    /// s^k for any integer k, using s^6 = 11/5 and s^-1 = (5/11) s^5.
    static NumberFieldElem s_pow(long k) {
        Rational factor(1);
        long r = k % kDegree;
        long q = k / kDegree;
        if (r < 0) { r += kDegree; q -= 1; }
        factor = int_pow(Rational(11, 5), q);
        NumberFieldElem e;
        e.coeff_[static_cast<std::size_t>(r)] = factor;
        return e;
    }

    const std::array<Rational, kDegree>& coefficients() const { return coeff_; }
    const Rational& coefficient(int i) const { return coeff_.at(static_cast<std::size_t>(i)); }

    bool is_zero() const {
        for (const auto& c : coeff_)
            if (c != 0) return false;
        return true;
    }

    bool is_rational() const {
        for (int i = 1; i < kDegree; ++i)
            if (coeff_[static_cast<std::size_t>(i)] != 0) return false;
        return true;
    }

    bool operator==(const NumberFieldElem& o) const { return coeff_ == o.coeff_; }
    bool operator!=(const NumberFieldElem& o) const { return !(*this == o); }

    NumberFieldElem operator-() const {
        NumberFieldElem e;
        for (int i = 0; i < kDegree; ++i) e.coeff_[i] = -coeff_[i];
        return e;
    }

    NumberFieldElem operator+(const NumberFieldElem& o) const {
        NumberFieldElem e;
        for (int i = 0; i < kDegree; ++i) e.coeff_[i] = coeff_[i] + o.coeff_[i];
        return e;
    }

    NumberFieldElem operator-(const NumberFieldElem& o) const { return *this + (-o); }

    NumberFieldElem operator*(const NumberFieldElem& o) const {
        std::array<Rational, 2 * kDegree - 1> full;
        full.fill(Rational(0));
        for (int i = 0; i < kDegree; ++i) {
            if (coeff_[i] == 0) continue;
            for (int j = 0; j < kDegree; ++j)
                if (o.coeff_[j] != 0) full[i + j] += coeff_[i] * o.coeff_[j];
        }
        NumberFieldElem e;
        // fold s^(6+i) = (11/5) s^i
        for (int i = 0; i < kDegree; ++i) e.coeff_[i] = full[i];
        for (int i = kDegree; i < 2 * kDegree - 1; ++i)
            e.coeff_[i - kDegree] += Rational(11, 5) * full[i];
        return e;
    }

    NumberFieldElem operator*(const Rational& k) const {
        NumberFieldElem e;
        for (int i = 0; i < kDegree; ++i) e.coeff_[i] = coeff_[i] * k;
        return e;
    }

    NumberFieldElem& operator+=(const NumberFieldElem& o) { return *this = *this + o; }
    NumberFieldElem& operator-=(const NumberFieldElem& o) { return *this = *this - o; }
    NumberFieldElem& operator*=(const NumberFieldElem& o) { return *this = *this * o; }

    NumberFieldElem pow(unsigned n) const {
        NumberFieldElem result(Rational(1));
        NumberFieldElem base = *this;
        while (n != 0) {
            if (n & 1U) result *= base;
            base *= base;
            n >>= 1U;
        }
        return result;
    }

    /// Multiplicative inverse, by solving the 6x6 rational linear system
    /// (this * x = 1) with Gaussian elimination.
    NumberFieldElem inverse() const {
        if (is_zero()) throw std::domain_error("NumberFieldElem: inverse of zero");
        // columns of M are the coefficient vectors of (*this) * s^j
        std::array<std::array<Rational, kDegree + 1>, kDegree> m;  // augmented
        for (int j = 0; j < kDegree; ++j) {
            const NumberFieldElem col = *this * s_pow(j);
            for (int i = 0; i < kDegree; ++i) m[i][j] = col.coeff_[i];
        }
        for (int i = 0; i < kDegree; ++i) m[i][kDegree] = (i == 0) ? Rational(1) : Rational(0);

        for (int col = 0; col < kDegree; ++col) {
            int pivot = -1;
            for (int row = col; row < kDegree; ++row)
                if (m[row][col] != 0) { pivot = row; break; }
            if (pivot < 0) throw std::logic_error("NumberFieldElem: singular multiplication matrix");
            std::swap(m[col], m[static_cast<std::size_t>(pivot)]);
            const Rational inv = Rational(1) / m[col][col];
            for (int j = col; j <= kDegree; ++j) m[col][j] *= inv;
            for (int row = 0; row < kDegree; ++row) {
                if (row == col || m[row][col] == 0) continue;
                const Rational f = m[row][col];
                for (int j = col; j <= kDegree; ++j) m[row][j] -= f * m[col][j];
            }
        }
        NumberFieldElem e;
        for (int i = 0; i < kDegree; ++i) e.coeff_[i] = m[i][kDegree];
        return e;
    }

    /// Interval image of the element under s -> (11/5)^(1/6).
    Interval interval_image(const Rational& s_width = kDefaultWidth) const {
        const Interval s = s_enclosure(s_width);
        Interval acc(coeff_[kDegree - 1]);
        for (int i = kDegree - 2; i >= 0; --i) acc = acc * s + Interval(coeff_[i]);
        return acc;
    }

    /// Exact sign (-1, 0, +1). Zero is decided syntactically; otherwise the
    /// interval image is refined until it excludes zero.
    int sign() const {
        if (is_zero()) return 0;
        Rational width = kDefaultWidth;
        for (int attempt = 0; attempt < 16; ++attempt) {
            const Interval image = interval_image(width);
            if (image.strictly_positive()) return 1;
            if (image.strictly_negative()) return -1;
            width = width * width;  // square the precision each round
        }
        throw std::logic_error("NumberFieldElem: sign refinement did not converge");
    }

    std::string str() const {
        std::string out;
        for (int i = 0; i < kDegree; ++i) {
            if (coeff_[i] == 0) continue;
            if (!out.empty()) out += " + ";
            out += to_fraction_string(coeff_[i]);
            if (i > 0) out += "*s^" + std::to_string(i);
        }
        return out.empty() ? "0" : out;
    }

private:
    std::array<Rational, kDegree> coeff_;
};

inline NumberFieldElem operator*(const Rational& k, const NumberFieldElem& e) { return e * k; }

/// Evaluates a rational-coefficient polynomial (ascending coefficients) at s,
/// reduced modulo s^6 = 11/5. The zero of the defining relation x^6 - 11/5 is
/// detected exactly (all six coefficients vanish).
inline NumberFieldElem nf_eval(std::span<const Rational> ascending_coeffs) {
    NumberFieldElem acc;
    for (std::size_t i = ascending_coeffs.size(); i-- > 0;) {
        acc = acc * NumberFieldElem::s() + NumberFieldElem(ascending_coeffs[i]);
    }
    return acc;
}

}  // namespace ljstab
