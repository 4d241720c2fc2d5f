#pragma once

// Dirichlet characters mod q, built by enumerating homomorphisms of the unit
// group (Z/q)^* after splitting it (CRT) into cyclic factors.

#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "omega_sums/errors.hpp"
#include "omega_sums/exact.hpp"

namespace omega_sums {

inline constexpr unsigned kDefaultCharacterModulusCap = 100;

/// A character as a table over residues mod q. Each unit residue maps to a
/// root of unity exp(2 pi i e / root_order); non-units map to zero (e = -1).
class CharacterTable {
public:
    CharacterTable(unsigned modulus, unsigned root_order, std::vector<int> exponents)
        : q_(modulus), root_order_(root_order), exps_(std::move(exponents)) {
        values_.reserve(exps_.size());
        for (int e : exps_) values_.push_back(root_value(e));
    }

    unsigned modulus() const { return q_; }
    unsigned root_order() const { return root_order_; }

    /// -1 when gcd(n, q) > 1.
    int exponent(std::uint64_t n) const { return exps_[n % q_]; }

    std::complex<double> operator()(std::uint64_t n) const { return values_[n % q_]; }

    /// Exact Gaussian-rational value, available when chi(n) is in {0, +-1, +-i}.
    std::optional<ExactValue> exact(std::uint64_t n) const { return exact_root(exponent(n)); }

    /// chi(n)^m evaluated through exponents, so no rounding accumulates.
    std::complex<double> power_value(std::uint64_t n, unsigned m) const {
        int e = exponent(n);
        if (e < 0) return m == 0 ? 1.0 : 0.0;
        return root_value(static_cast<int>((static_cast<std::uint64_t>(e) * m) % root_order_));
    }
    std::optional<ExactValue> power_exact(std::uint64_t n, unsigned m) const {
        int e = exponent(n);
        if (e < 0) return m == 0 ? std::optional<ExactValue>(ExactValue(1)) : std::optional<ExactValue>(ExactValue(0));
        return exact_root(static_cast<int>((static_cast<std::uint64_t>(e) * m) % root_order_));
    }

    bool is_principal() const {
        for (int e : exps_)
            if (e > 0) return false;
        return true;
    }

    /// The character n -> chi(n)^k.
    CharacterTable power(long k) const {
        std::vector<int> e(exps_.size());
        long r = static_cast<long>(root_order_);
        for (std::size_t i = 0; i < e.size(); ++i)
            e[i] = exps_[i] < 0 ? -1 : static_cast<int>(((exps_[i] * (k % r)) % r + r) % r);
        return CharacterTable(q_, root_order_, std::move(e));
    }

    const std::vector<std::complex<double>>& values() const { return values_; }

private:
    std::complex<double> root_value(int e) const {
        if (e < 0) return 0.0;
        if ((4 * static_cast<long>(e)) % root_order_ == 0) {
            switch ((4 * e / root_order_) % 4) {
                case 0: return {1.0, 0.0};
                case 1: return {0.0, 1.0};
                case 2: return {-1.0, 0.0};
                default: return {0.0, -1.0};
            }
        }
        double angle = 2.0 * std::numbers::pi * e / root_order_;
        return {std::cos(angle), std::sin(angle)};
    }

    std::optional<ExactValue> exact_root(int e) const {
        if (e < 0) return ExactValue(0);
        if ((4 * static_cast<long>(e)) % root_order_ != 0) return std::nullopt;
        switch ((4 * e / root_order_) % 4) {
            case 0: return ExactValue(1);
            case 1: return ExactValue::imaginary_unit();
            case 2: return ExactValue(-1);
            default: return -ExactValue::imaginary_unit();
        }
    }

    unsigned q_;
    unsigned root_order_;
    std::vector<int> exps_;
    std::vector<std::complex<double>> values_;
};

namespace detail {

inline std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e > 0) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

inline unsigned primitive_root_mod_prime(unsigned p) {
    if (p == 2) return 1;
    std::vector<unsigned> qs;
    unsigned m = p - 1;
    for (unsigned d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            qs.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) qs.push_back(m);
    for (unsigned g = 2; g < p; ++g) {
        bool ok = true;
        for (unsigned r : qs)
            if (pow_mod(g, (p - 1) / r, p) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    return 1;
}

/// One cyclic factor of the unit group of Z/p^a: discrete logs for every
/// residue mod p^a (-1 on non-units).
struct CyclicFactor {
    unsigned component_modulus;
    unsigned order;
    std::vector<int> log;
};

inline std::vector<CyclicFactor> unit_group_factors(unsigned q) {
    std::vector<CyclicFactor> out;
    unsigned rest = q;
    for (unsigned p = 2; p <= rest; ++p) {
        if (rest % p != 0) continue;
        unsigned a = 0, pa = 1;
        while (rest % p == 0) {
            rest /= p;
            pa *= p;
            ++a;
        }
        if (p == 2) {
            if (a == 1) continue;
            if (a == 2) {
                std::vector<int> log(4, -1);
                log[1] = 0;
                log[3] = 1;
                out.push_back({4, 2, std::move(log)});
                continue;
            }
            // (Z/2^a)^* = <-1> x <5>
            unsigned big = pa / 4;
            std::vector<int> sign_log(pa, -1), five_log(pa, -1);
            std::uint64_t five = 1;
            for (unsigned v = 0; v < big; ++v) {
                sign_log[five] = 0;
                five_log[five] = static_cast<int>(v);
                sign_log[pa - five] = 1;
                five_log[pa - five] = static_cast<int>(v);
                five = five * 5 % pa;
            }
            out.push_back({pa, 2, std::move(sign_log)});
            out.push_back({pa, big, std::move(five_log)});
            continue;
        }
        std::uint64_t g = primitive_root_mod_prime(p);
        if (a >= 2 && pow_mod(g, p - 1, static_cast<std::uint64_t>(p) * p) == 1) g += p;
        unsigned order = pa / p * (p - 1);
        std::vector<int> log(pa, -1);
        std::uint64_t x = 1;
        for (unsigned j = 0; j < order; ++j) {
            log[x] = static_cast<int>(j);
            x = x * g % pa;
        }
        out.push_back({pa, order, std::move(log)});
    }
    return out;
}

} // namespace detail

/// All phi(q) characters mod q; index 0 is the principal character.
inline std::vector<CharacterTable> build_characters(unsigned q, unsigned cap = kDefaultCharacterModulusCap) {
    if (q == 0) throw DomainError("character modulus must be positive");
    if (q > cap) throw CapacityError("character modulus " + std::to_string(q) + " exceeds cap " + std::to_string(cap));

    auto factors = detail::unit_group_factors(q);
    unsigned lambda = 1;
    for (const auto& c : factors) lambda = std::lcm(lambda, c.order);

    std::size_t total = 1;
    for (const auto& c : factors) total *= c.order;

    std::vector<CharacterTable> out;
    out.reserve(total);
    std::vector<unsigned> j(factors.size(), 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::vector<int> exps(q, -1);
        for (unsigned r = 0; r < q; ++r) {
            if (std::gcd(r, q) != 1) continue;
            std::uint64_t e = 0;
            for (std::size_t i = 0; i < factors.size(); ++i) {
                const auto& c = factors[i];
                e += static_cast<std::uint64_t>(j[i]) * c.log[r % c.component_modulus] * (lambda / c.order);
            }
            exps[r] = static_cast<int>(e % lambda);
        }
        out.emplace_back(q, lambda, std::move(exps));
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (++j[i] < factors[i].order) break;
            j[i] = 0;
        }
    }
    return out;
}

} // namespace omega_sums
