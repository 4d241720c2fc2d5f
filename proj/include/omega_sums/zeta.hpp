#pragma once

// Riemann, Hurwitz and Dirichlet L-functions for Re s > 1.

#include <array>
#include <cmath>
#include <string>

#include "omega_sums/characters.hpp"
#include "omega_sums/errors.hpp"
#include "omega_sums/numeric.hpp"

namespace omega_sums {

namespace detail {

// B_{2j} / (2j)!, j = 1..20
inline constexpr std::array<double, 20> kBernoulliOverFactorial = {
    8.33333333333333287e-02,  -1.38888888888888894e-03, 3.30687830687830710e-05,  -8.26719576719576754e-07,
    2.08767569878681002e-08,  -5.28419013868749322e-10, 1.33825365306846789e-11,  -3.38968029632258272e-13,
    8.58606205627784517e-15,  -2.17486869855806192e-16, 5.50900282836022953e-18,  -1.39544646858125223e-19,
    3.53470703962946728e-21,  -8.95351742703754628e-23, 2.26795245233768293e-24,  -5.74479066887220246e-26,
    1.45517247561486496e-27,  -3.68599494066531029e-29, 9.33673425709504507e-31,  -2.36502241570062995e-32,
};

inline void require_half_plane(Complex s, const char* who) {
    if (!(s.real() > 1.0))
        throw DomainError(std::string(who) + ": requires Re s > 1, got " + std::to_string(s.real()));
}

} // namespace detail

/// Hurwitz zeta(s, a) = sum_{n>=0} (n + a)^-s by Euler-Maclaurin: a direct
/// sum up to N - 1, the integral and half-term at x = N + a, and Bernoulli
/// corrections. The error field carries the remainder bound
/// |R_M| <= |T_{M+1}| |s + 2M + 1| / (sigma + 2M + 1), doubled.
inline Approx hurwitz_zeta(Complex s, double a, double tol = 1e-15) {
    detail::require_half_plane(s, "hurwitz_zeta");
    if (!(a > 0.0)) throw DomainError("hurwitz_zeta: requires a > 0");
    const double sigma = s.real();
    std::uint64_t n_terms = 10 + static_cast<std::uint64_t>(std::ceil(std::abs(s)));
    for (int attempt = 0; attempt < 12; ++attempt, n_terms *= 2) {
        Complex direct = 0.0;
        double magnitude = 0.0;
        for (std::uint64_t n = n_terms; n-- > 0;) {
            Complex term = std::exp(-s * std::log(n + a));
            direct += term;
            magnitude += std::abs(term);
        }
        const double x = static_cast<double>(n_terms) + a;
        const double log_x = std::log(x);
        const Complex x_neg_s = std::exp(-s * log_x);
        Complex sum = direct + x * x_neg_s / (s - 1.0) + 0.5 * x_neg_s;

        Complex rising = s;  // s (s+1) ... (s + 2j - 2)
        double x_pow = 1.0 / x;
        double bound = std::numeric_limits<double>::infinity();
        for (std::size_t j = 1; j <= detail::kBernoulliOverFactorial.size(); ++j) {
            Complex term = detail::kBernoulliOverFactorial[j - 1] * rising * x_neg_s * x_pow;
            double remainder = 2.0 * std::abs(term) * std::abs(s + (2.0 * j - 1.0)) / (sigma + 2.0 * j - 1.0);
            if (remainder <= tol * 0.5) {
                bound = remainder;
                break;
            }
            sum += term;
            rising *= (s + (2.0 * j - 1.0)) * (s + 2.0 * j);
            x_pow /= x * x;
        }
        if (std::isfinite(bound)) {
            double rounding = (static_cast<double>(n_terms) + 4.0) * kEps * (magnitude + std::abs(sum));
            return {sum, bound + rounding};
        }
    }
    throw DomainError("hurwitz_zeta: Euler-Maclaurin did not reach tolerance");
}

inline SeriesResult zeta(ComplexS s, double tol = 1e-15) {
    detail::require_half_plane(s.value(), "zeta");
    return to_result(hurwitz_zeta(s.value(), 1.0, tol), 0);
}

/// sum_{n<=N} n^-s with the integral bound N^{1-sigma}/(sigma-1) on the rest.
inline SeriesResult zeta_direct(ComplexS s, std::uint64_t n_max) {
    detail::require_half_plane(s.value(), "zeta_direct");
    auto chunk = [&](std::uint64_t b, std::uint64_t e) {
        Complex acc = 0.0;
        for (std::uint64_t n = b; n < e; ++n) acc += int_pow_neg(n, s.value());
        return acc;
    };
    Complex v = deterministic_reduce<Complex>(1, n_max + 1, chunk);
    double tail = std::pow(static_cast<double>(n_max), 1.0 - s.sigma) / (s.sigma - 1.0);
    return {v, n_max, tail, true, false};
}

/// L(s, chi) = q^-s sum_{a=1}^{q} chi(a) zeta(s, a/q).
inline SeriesResult l_function(ComplexS s, const CharacterTable& chi, double tol = 1e-15) {
    detail::require_half_plane(s.value(), "l_function");
    const unsigned q = chi.modulus();
    Approx acc(0.0);
    for (unsigned a = 1; a <= q; ++a) {
        Complex c = chi(a);
        if (c == Complex(0.0)) continue;
        acc = acc + Approx(c) * hurwitz_zeta(s.value(), static_cast<double>(a) / q, tol / q);
    }
    Approx scale(std::exp(-s.value() * std::log(static_cast<double>(q))));
    return to_result(scale * acc, 0);
}

/// Direct partial sum of chi(n) n^-s. For non-principal chi the tail is
/// bounded by Abel summation with |sum_{n<=x} chi(n)| <= q.
inline SeriesResult l_function_direct(ComplexS s, const CharacterTable& chi, std::uint64_t n_max) {
    detail::require_half_plane(s.value(), "l_function_direct");
    auto chunk = [&](std::uint64_t b, std::uint64_t e) {
        Complex acc = 0.0;
        for (std::uint64_t n = b; n < e; ++n) {
            Complex c = chi(n);
            if (c != Complex(0.0)) acc += c * int_pow_neg(n, s.value());
        }
        return acc;
    };
    Complex v = deterministic_reduce<Complex>(1, n_max + 1, chunk);
    double N = static_cast<double>(n_max);
    double tail = chi.is_principal()
                      ? std::pow(N, 1.0 - s.sigma) / (s.sigma - 1.0)
                      : chi.modulus() * std::pow(N, -s.sigma) * (1.0 + std::abs(s.value()) / s.sigma);
    return {v, n_max, tail, true, false};
}

} // namespace omega_sums
