#pragma once

// Sums over primes: P(s), P(s, a), sum chi(p) p^-s, and the Jordan prime sum.
//
// Each is a direct sum over primes p <= L plus, by default, an analytic
// value for the tail p > L. The tail of P comes from Moebius inversion of
//   log zeta_L(s) = sum_{p > L} sum_m p^{-ms} / m,
// where zeta_L(s) = zeta(s) prod_{p <= L} (1 - p^-s). Other tails are
// expanded into tails of P (or of the character analogue built from
// log L(s, chi^k)). With the analytic tail switched off the result is the
// plain partial sum and tail_bound is the Rosser-Schoenfeld integral bound
//   sum_{p > L} p^-sigma <= 1.25506 sigma L^{1-sigma} / ((sigma-1) ln L).

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "omega_sums/characters.hpp"
#include "omega_sums/errors.hpp"
#include "omega_sums/numeric.hpp"
#include "omega_sums/sieve.hpp"
#include "omega_sums/zeta.hpp"

namespace omega_sums {

/// Below this the analytic tail expansions stop adding terms.
inline constexpr double kTailNegligible = 1e-18;

/// Rigorous bound on sum_{p > L} p^-sigma, sigma > 1.
inline double prime_tail_bound(double sigma, std::uint64_t limit) {
    double L = std::max<double>(static_cast<double>(limit), 3.0);
    return 1.25506 * sigma * std::pow(L, 1.0 - sigma) / ((sigma - 1.0) * std::log(L));
}

namespace detail {

/// Bound on log zeta_L(w) for real w > 1 (the tail over L-rough integers).
inline double rough_log_bound(double w, std::uint64_t limit) {
    double L = static_cast<double>(std::max<std::uint64_t>(limit, 2));
    return std::pow(L, 1.0 - w) / (w - 1.0);
}

inline int small_mobius(unsigned k) {
    int mu = 1;
    for (unsigned p = 2; p * p <= k; ++p) {
        if (k % p != 0) continue;
        k /= p;
        if (k % p == 0) return 0;
        mu = -mu;
    }
    if (k > 1) mu = -mu;
    return mu;
}

/// sum_{p <= L} log(1 - c(p) p^-v), dropping primes once the remainder is
/// below kTailNegligible. c(p) = 1 for zeta, chi(p) for L-functions.
template <class Coef>
Approx log_euler_factors(Complex v, const PrimeTable& primes, Coef coef) {
    const double sv = v.real();
    std::vector<Complex> terms;
    terms.reserve(primes.size());
    double magnitude = 0.0;
    for (std::uint64_t p : primes.primes()) {
        double pp = std::pow(static_cast<double>(p), -sv);
        if (pp * p / (sv - 1.0) < kTailNegligible * 1e-2) break;
        Complex c = coef(p);
        if (c == Complex(0.0)) continue;
        Complex z = -c * int_pow_neg(p, v);
        terms.push_back(log1p_complex(z));
        magnitude += std::abs(terms.back());
    }
    Complex sum = pairwise_sum(std::span<const Complex>(terms));
    return {sum, 4.0 * kEps * (magnitude + std::log2(terms.size() + 2.0) * std::abs(sum)) + kTailNegligible * 1e-2};
}

/// log of the Dirichlet series over L-rough integers, given Log of the full
/// function and the finite Euler factors. The true value has imaginary part
/// of modulus at most log zeta_L(Re v) < pi, which fixes the branch.
inline Approx rough_log(const Approx& full, const Approx& factors) {
    Approx v{std::log(full.value) + factors.value,
             full.error / std::max(std::abs(full.value) - full.error, 1e-300) + factors.error};
    double im = v.value.imag();
    im = std::remainder(im, 2.0 * std::numbers::pi);
    v.value = {v.value.real(), im};
    return v;
}

/// True when the principal-branch normalization in rough_log is valid.
inline bool branch_is_safe(double sigma, const PrimeTable& primes) {
    if (sigma - 1.0 < 1e-6) return false;
    Approx z = hurwitz_zeta(Complex(sigma), 1.0);
    Approx f = log_euler_factors(Complex(sigma), primes, [](std::uint64_t) { return Complex(1.0); });
    double log_rough = std::log(z.value.real()) + f.value.real();
    return log_rough < 0.9 * std::numbers::pi;
}

/// sum_{k>=1} mu(k)/k * log_rough(k, k u).
template <class LogRough>
std::optional<Approx> moebius_tail(Complex u, const PrimeTable& primes, LogRough log_rough) {
    const double su = u.real();
    if (!branch_is_safe(su, primes)) return std::nullopt;
    Approx total(0.0);
    for (unsigned k = 1;; ++k) {
        double b = rough_log_bound(k * su, primes.limit());
        if (b < kTailNegligible) {
            total.error += 2.0 * b;
            break;
        }
        int mu = small_mobius(k);
        if (mu == 0) continue;
        total = total + (static_cast<double>(mu) / k) * log_rough(k, static_cast<double>(k) * u);
        if (k > 400) return std::nullopt;
    }
    return total;
}

} // namespace detail

/// sum_{p > L} p^-u for Re u > 1, L = primes.limit(); nullopt when the
/// prime table is too short for the expansion to be trusted.
inline std::optional<Approx> prime_zeta_tail(Complex u, const PrimeTable& primes) {
    detail::require_half_plane(u, "prime_zeta_tail");
    return detail::moebius_tail(u, primes, [&](unsigned, Complex v) {
        Approx z = hurwitz_zeta(v, 1.0);
        Approx f = detail::log_euler_factors(v, primes, [](std::uint64_t) { return Complex(1.0); });
        return detail::rough_log(z, f);
    });
}

/// sum_{p > L} chi(p) p^-u.
inline std::optional<Approx> prime_character_tail(Complex u, const CharacterTable& chi, const PrimeTable& primes) {
    detail::require_half_plane(u, "prime_character_tail");
    return detail::moebius_tail(u, primes, [&](unsigned k, Complex v) {
        CharacterTable chik = chi.power(k);
        SeriesResult L = l_function(ComplexS(v), chik);
        Approx f = detail::log_euler_factors(v, primes, [&](std::uint64_t p) { return chik(p); });
        return detail::rough_log(Approx(L.value, L.tail_bound), f);
    });
}

/// P(s) = sum_p p^-s.
inline SeriesResult prime_zeta(ComplexS s, const PrimeTable& primes, double tol = 1e-12, bool analytic_tail = true) {
    detail::require_half_plane(s.value(), "prime_zeta");
    std::vector<Complex> terms;
    terms.reserve(primes.size());
    for (std::uint64_t p : primes.primes()) terms.push_back(int_pow_neg(p, s.value()));
    Complex partial = pairwise_sum(std::span<const Complex>(terms));
    double rounding = 4.0 * kEps * std::log2(terms.size() + 2.0) * std::abs(partial);
    double raw = prime_tail_bound(s.sigma, primes.limit());

    if (analytic_tail) {
        if (auto tail = prime_zeta_tail(s.value(), primes)) {
            Approx v = Approx(partial, rounding) + *tail;
            return {v.value, primes.limit(), v.error, v.error <= tol, false};
        }
    }
    return {partial, primes.limit(), raw + rounding, raw + rounding <= tol, false};
}

/// P(s, a) = sum_p 1/(p^s + a), |a| < 2. P(s, 0) is prime_zeta itself.
inline SeriesResult shifted_prime_zeta(ComplexS s, Complex a, const PrimeTable& primes, double tol = 1e-12,
                                       bool analytic_tail = true) {
    detail::require_half_plane(s.value(), "shifted_prime_zeta");
    if (!(std::abs(a) < 2.0)) throw DomainError("shifted_prime_zeta: requires |a| < 2");
    if (a == Complex(0.0)) return prime_zeta(s, primes, tol, analytic_tail);

    std::vector<Complex> terms;
    terms.reserve(primes.size());
    for (std::uint64_t p : primes.primes()) terms.push_back(1.0 / (1.0 / int_pow_neg(p, s.value()) + a));
    Complex partial = pairwise_sum(std::span<const Complex>(terms));
    double rounding = 8.0 * kEps * std::log2(terms.size() + 2.0) * std::abs(partial);
    const double L = static_cast<double>(primes.limit());
    const double shrink = 1.0 - std::abs(a) * std::pow(L, -s.sigma);
    double raw = prime_tail_bound(s.sigma, primes.limit()) / shrink;

    if (analytic_tail) {
        // 1/(p^s + a) = sum_j (-a)^j p^{-(j+1)s}
        Approx tail(0.0);
        bool ok = true;
        for (unsigned j = 0;; ++j) {
            double mag = std::pow(std::abs(a), j);
            double b = mag * prime_tail_bound((j + 1) * s.sigma, primes.limit());
            if (b < kTailNegligible) {
                tail.error += b / shrink;
                break;
            }
            auto t = prime_zeta_tail(static_cast<double>(j + 1) * s.value(), primes);
            if (!t) {
                ok = false;
                break;
            }
            tail = tail + Approx(std::pow(-a, static_cast<double>(j))) * *t;
        }
        if (ok) {
            Approx v = Approx(partial, rounding) + tail;
            return {v.value, primes.limit(), v.error, v.error <= tol, false};
        }
    }
    return {partial, primes.limit(), raw + rounding, raw + rounding <= tol, false};
}

/// sum_p chi(p) p^-s.
inline SeriesResult prime_character_sum(ComplexS s, const CharacterTable& chi, const PrimeTable& primes,
                                        double tol = 1e-12, bool analytic_tail = true) {
    detail::require_half_plane(s.value(), "prime_character_sum");
    std::vector<Complex> terms;
    terms.reserve(primes.size());
    for (std::uint64_t p : primes.primes()) {
        Complex c = chi(p);
        if (c != Complex(0.0)) terms.push_back(c * int_pow_neg(p, s.value()));
    }
    Complex partial = pairwise_sum(std::span<const Complex>(terms));
    double rounding = 4.0 * kEps * std::log2(terms.size() + 2.0) * (std::abs(partial) + 1.0);
    double raw = prime_tail_bound(s.sigma, primes.limit());
    if (analytic_tail) {
        if (auto tail = prime_character_tail(s.value(), chi, primes)) {
            Approx v = Approx(partial, rounding) + *tail;
            return {v.value, primes.limit(), v.error, v.error <= tol, false};
        }
    }
    return {partial, primes.limit(), raw + rounding, raw + rounding <= tol, false};
}

/// sum_p (p^k - 1)/(p^s - 1), Re s > max(1, 1 + Re k).
inline SeriesResult jordan_prime_sum(ComplexS s, Complex k, const PrimeTable& primes, double tol = 1e-12,
                                     bool analytic_tail = true) {
    const double floor = std::max(1.0, 1.0 + k.real());
    if (!(s.sigma > floor))
        throw DomainError("jordan_prime_sum: requires Re s > max(1, 1 + Re k) = " + std::to_string(floor));
    std::vector<Complex> terms;
    terms.reserve(primes.size());
    for (std::uint64_t p : primes.primes()) {
        Complex ps = int_pow_neg(p, s.value());  // p^-s
        Complex pk = int_pow_neg(p, -k);         // p^k
        terms.push_back((pk * ps - ps) / (1.0 - ps));
    }
    Complex partial = pairwise_sum(std::span<const Complex>(terms));
    double rounding = 8.0 * kEps * std::log2(terms.size() + 2.0) * (std::abs(partial) + 1.0);
    const double L = static_cast<double>(primes.limit());
    const double shrink = 1.0 - std::pow(L, -s.sigma);
    double raw = (prime_tail_bound(s.sigma - k.real(), primes.limit()) + prime_tail_bound(s.sigma, primes.limit())) /
                 shrink;

    if (analytic_tail) {
        // (p^k - 1)/(p^s - 1) = sum_j p^{k-(j+1)s} - p^{-(j+1)s}
        Approx tail(0.0);
        bool ok = true;
        for (unsigned j = 0;; ++j) {
            double s1 = (j + 1) * s.sigma - k.real();
            double s2 = (j + 1) * s.sigma;
            double b = prime_tail_bound(s1, primes.limit()) + prime_tail_bound(s2, primes.limit());
            if (b < kTailNegligible) {
                tail.error += b / shrink;
                break;
            }
            auto t1 = prime_zeta_tail(static_cast<double>(j + 1) * s.value() - k, primes);
            auto t2 = prime_zeta_tail(static_cast<double>(j + 1) * s.value(), primes);
            if (!t1 || !t2) {
                ok = false;
                break;
            }
            tail = tail + (*t1 - *t2);
        }
        if (ok) {
            Approx v = Approx(partial, rounding) + tail;
            return {v.value, primes.limit(), v.error, v.error <= tol, false};
        }
    }
    return {partial, primes.limit(), raw + rounding, raw + rounding <= tol, false};
}

} // namespace omega_sums
