#pragma once

// Exact scalars: GMP rationals, and Gaussian rationals built on top of them
// for character values in {0, +-1, +-i}.

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>

#include "omega_sums/errors.hpp"

namespace omega_sums {

using Rational = mpq_class;

inline Rational make_rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational rational_pow(std::uint64_t base, long exponent) {
    mpz_class b = mpz_class(static_cast<unsigned long>(base));
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    if (exponent >= 0) return Rational(r);
    return make_rational(1, r);
}

/// Gaussian rational re + i*im. Both parts are kept canonical by GMP.
class ExactValue {
public:
    ExactValue() = default;
    ExactValue(long v) : re_(v) {}  // NOLINT: implicit from integers is intended
    ExactValue(const Rational& re) : re_(re) {}  // NOLINT
    ExactValue(const mpz_class& re) : re_(re) {}  // NOLINT
    ExactValue(const Rational& re, const Rational& im) : re_(re), im_(im) {}

    static ExactValue imaginary_unit() { return ExactValue(Rational(0), Rational(1)); }

    const Rational& real() const { return re_; }
    const Rational& imag() const { return im_; }
    bool is_real() const { return sgn(im_) == 0; }
    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }

    ExactValue conj() const { return ExactValue(re_, -im_); }
    Rational norm() const { return Rational(re_ * re_ + im_ * im_); }

    ExactValue& operator+=(const ExactValue& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    ExactValue& operator-=(const ExactValue& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    ExactValue& operator*=(const ExactValue& o) {
        if (is_real() && o.is_real()) {
            re_ *= o.re_;
            return *this;
        }
        Rational re = re_ * o.re_ - im_ * o.im_;
        Rational im = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(re);
        im_ = std::move(im);
        return *this;
    }
    ExactValue& operator/=(const ExactValue& o) {
        if (o.is_zero()) throw SingularInputError("division by zero");
        if (o.is_real()) {
            re_ /= o.re_;
            im_ /= o.re_;
            return *this;
        }
        Rational n = o.norm();
        *this *= o.conj();
        re_ /= n;
        im_ /= n;
        return *this;
    }

    friend ExactValue operator+(ExactValue a, const ExactValue& b) { return a += b; }
    friend ExactValue operator-(ExactValue a, const ExactValue& b) { return a -= b; }
    friend ExactValue operator*(ExactValue a, const ExactValue& b) { return a *= b; }
    friend ExactValue operator/(ExactValue a, const ExactValue& b) { return a /= b; }
    friend ExactValue operator-(const ExactValue& a) { return ExactValue(-a.re_, -a.im_); }

    friend bool operator==(const ExactValue& a, const ExactValue& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const ExactValue& a, const ExactValue& b) { return !(a == b); }

    double real_approx() const { return re_.get_d(); }
    double imag_approx() const { return im_.get_d(); }

    /// "p/q", or "a+bi" / "a-bi" with rational parts when imaginary.
    std::string to_string() const {
        if (is_real()) return re_.get_str();
        std::string out;
        if (sgn(re_) != 0) out = re_.get_str();
        if (sgn(im_) > 0 && !out.empty()) out += "+";
        if (sgn(im_) < 0) out += "-";
        Rational mag = abs(im_);
        if (mag != 1) out += mag.get_str();
        out += "i";
        return out;
    }

    friend std::ostream& operator<<(std::ostream& os, const ExactValue& v) { return os << v.to_string(); }

private:
    Rational re_{0};
    Rational im_{0};
};

} // namespace omega_sums
