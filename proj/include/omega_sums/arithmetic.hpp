#pragma once

#include <cstdint>
#include <vector>

#include "omega_sums/exact.hpp"
#include "omega_sums/sieve.hpp"

namespace omega_sums {

/// Number of distinct prime factors; omega(1) = 0.
inline unsigned omega(const FactoredInteger& f) { return static_cast<unsigned>(f.factors.size()); }

inline unsigned big_omega(const FactoredInteger& f) {
    unsigned total = 0;
    for (const auto& pp : f.factors) total += pp.exponent;
    return total;
}

inline bool is_squarefree(const FactoredInteger& f) {
    for (const auto& pp : f.factors)
        if (pp.exponent > 1) return false;
    return true;
}

inline int mobius(const FactoredInteger& f) {
    if (!is_squarefree(f)) return 0;
    return omega(f) % 2 == 0 ? 1 : -1;
}

inline int liouville(const FactoredInteger& f) { return big_omega(f) % 2 == 0 ? 1 : -1; }

/// Product of the distinct primes dividing n.
inline FactoredInteger radical(const FactoredInteger& f) {
    std::vector<PrimePower> rad;
    rad.reserve(f.factors.size());
    for (const auto& pp : f.factors) rad.push_back({pp.prime, 1});
    return from_factors(std::move(rad));
}

/// J_k(n) = n^k prod_{p|n} (1 - p^-k), exact. k = 1 gives Euler's phi.
inline ExactValue jordan_totient(long k, const FactoredInteger& f) {
    Rational result = rational_pow(f.n, k);
    for (const auto& pp : f.factors) result *= Rational(1) - rational_pow(pp.prime, -k);
    return ExactValue(result);
}

/// All positive divisors with their factorizations, in odometer order over
/// exponent vectors (not sorted by value).
inline std::vector<FactoredInteger> divisors(const FactoredInteger& f) {
    std::vector<FactoredInteger> out;
    std::size_t count = 1;
    for (const auto& pp : f.factors) count *= pp.exponent + 1;
    out.reserve(count);

    std::vector<unsigned> beta(f.factors.size(), 0);
    for (std::size_t idx = 0; idx < count; ++idx) {
        FactoredInteger d;
        for (std::size_t i = 0; i < beta.size(); ++i) {
            if (beta[i] == 0) continue;
            d.factors.push_back({f.factors[i].prime, beta[i]});
            d.n *= checked_pow(f.factors[i].prime, beta[i]);
        }
        out.push_back(std::move(d));
        for (std::size_t i = 0; i < beta.size(); ++i) {
            if (++beta[i] <= f.factors[i].exponent) break;
            beta[i] = 0;
        }
    }
    return out;
}

} // namespace omega_sums
