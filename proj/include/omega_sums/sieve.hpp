#pragma once

// Smallest-prime-factor sieve, factorization, and a separate Eratosthenes
// prime table. The two sieves share no code: the Dirichlet-series oracle
// factors n with SpfSieve while closed forms iterate over PrimeTable.

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "omega_sums/errors.hpp"

namespace omega_sums {

/// Upper bound on any sieve this library will allocate (4 bytes per entry).
inline constexpr std::uint64_t kMaxSieveLimit = 100'000'000;

struct PrimePower {
    std::uint64_t prime;
    unsigned exponent;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// A positive integer with its prime-power factorization, primes increasing.
struct FactoredInteger {
    std::uint64_t n = 1;
    std::vector<PrimePower> factors;

    friend bool operator==(const FactoredInteger&, const FactoredInteger&) = default;
};

inline std::uint64_t checked_pow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && r > UINT64_MAX / base) throw CapacityError("integer overflow in prime power");
        r *= base;
    }
    return r;
}

/// Builds a FactoredInteger from a list of (prime, exponent) pairs.
/// Primes must be strictly increasing and exponents positive.
inline FactoredInteger from_factors(std::vector<PrimePower> factors) {
    FactoredInteger f;
    std::uint64_t prev = 1;
    for (const auto& pp : factors) {
        if (pp.prime <= prev || pp.exponent == 0)
            throw PreconditionError("factor list must have increasing primes and positive exponents");
        prev = pp.prime;
        std::uint64_t part = checked_pow(pp.prime, pp.exponent);
        if (f.n > UINT64_MAX / part) throw CapacityError("integer overflow in factor product");
        f.n *= part;
    }
    f.factors = std::move(factors);
    return f;
}

class SpfSieve {
public:
    /// Linear (Euler) sieve: every composite is struck exactly once by its
    /// smallest prime factor.
    explicit SpfSieve(std::uint64_t limit) : limit_(limit) {
        if (limit < 2 || limit > kMaxSieveLimit)
            throw CapacityError("sieve limit " + std::to_string(limit) + " outside [2, " +
                                std::to_string(kMaxSieveLimit) + "]");
        spf_.assign(limit + 1, 0);
        for (std::uint32_t i = 2; i <= limit; ++i) {
            if (spf_[i] == 0) {
                spf_[i] = i;
                primes_.push_back(i);
            }
            for (std::uint32_t p : primes_) {
                if (p > spf_[i] || static_cast<std::uint64_t>(p) * i > limit) break;
                spf_[static_cast<std::uint64_t>(p) * i] = p;
            }
        }
    }

    std::uint64_t limit() const { return limit_; }

    /// Smallest prime factor of n, 2 <= n <= limit.
    std::uint32_t spf(std::uint64_t n) const {
        if (n < 2 || n > limit_) throw CapacityError("spf query out of sieve range");
        return spf_[n];
    }

    bool is_prime(std::uint64_t n) const { return n >= 2 && n <= limit_ && spf_[n] == n; }

    const std::vector<std::uint32_t>& primes() const { return primes_; }

private:
    std::uint64_t limit_;
    std::vector<std::uint32_t> spf_;
    std::vector<std::uint32_t> primes_;
};

inline SpfSieve build_spf_sieve(std::uint64_t limit) { return SpfSieve(limit); }

inline FactoredInteger factorize(std::uint64_t n, const SpfSieve& sieve) {
    if (n == 0) throw DomainError("cannot factorize 0");
    if (n > sieve.limit())
        throw CapacityError("n = " + std::to_string(n) + " exceeds sieve limit " + std::to_string(sieve.limit()));
    FactoredInteger f;
    f.n = n;
    while (n > 1) {
        std::uint64_t p = sieve.spf(n);
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.factors.push_back({p, e});
    }
    return f;
}

/// Primes up to a bound, by an odd-only sieve of Eratosthenes.
class PrimeTable {
public:
    explicit PrimeTable(std::uint64_t limit) : limit_(limit) {
        if (limit > 4 * kMaxSieveLimit) throw CapacityError("prime table limit too large");
        if (limit < 2) return;
        primes_.push_back(2);
        // odd[i] represents 2i+1
        std::uint64_t half = (limit - 1) / 2;
        std::vector<bool> composite(half + 1, false);
        for (std::uint64_t i = 1; i <= half; ++i) {
            if (composite[i]) continue;
            std::uint64_t p = 2 * i + 1;
            primes_.push_back(p);
            for (std::uint64_t m = p * p; m <= limit; m += 2 * p) composite[(m - 1) / 2] = true;
        }
    }

    std::uint64_t limit() const { return limit_; }
    const std::vector<std::uint64_t>& primes() const { return primes_; }
    std::size_t size() const { return primes_.size(); }

private:
    std::uint64_t limit_;
    std::vector<std::uint64_t> primes_;
};

} // namespace omega_sums
