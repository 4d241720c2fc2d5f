#pragma once

// Exact checks of omega-weighted divisor-sum identities. The left side is
// always a brute-force sum over every divisor; the right side is the closed
// form over the distinct primes of n.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "omega_sums/arithmetic.hpp"
#include "omega_sums/exact.hpp"
#include "omega_sums/fn_spec.hpp"
#include "omega_sums/sieve.hpp"
#include "omega_sums/symfunc.hpp"

namespace omega_sums {

enum class IdentityId {
    finite1,
    finitecor1,
    finite2,
    finite2cor,
    finite4,
    finite6,
    finite9,
    psiCor,
    squarefreeDk,
    multApostol,
};

inline constexpr std::array<std::pair<IdentityId, std::string_view>, 10> kIdentityNames{{
    {IdentityId::finite1, "finite1"},
    {IdentityId::finitecor1, "finitecor1"},
    {IdentityId::finite2, "finite2"},
    {IdentityId::finite2cor, "finite2cor"},
    {IdentityId::finite4, "finite4"},
    {IdentityId::finite6, "finite6"},
    {IdentityId::finite9, "finite9"},
    {IdentityId::psiCor, "psiCor"},
    {IdentityId::squarefreeDk, "squarefreeDk"},
    {IdentityId::multApostol, "multApostol"},
}};

inline std::string_view to_string(IdentityId id) {
    for (const auto& [k, v] : kIdentityNames)
        if (k == id) return v;
    return "?";
}

inline std::optional<IdentityId> identity_from_string(std::string_view s) {
    for (const auto& [k, v] : kIdentityNames)
        if (v == s) return k;
    return std::nullopt;
}

/// True for identities whose statement involves an arbitrary f.
inline bool uses_function(IdentityId id) {
    switch (id) {
        case IdentityId::finite1:
        case IdentityId::finitecor1:
        case IdentityId::finite2:
        case IdentityId::finite2cor:
        case IdentityId::multApostol: return true;
        default: return false;
    }
}

/// True for identities parameterised by an integer k.
inline bool uses_k(IdentityId id) {
    return id == IdentityId::finite6 || id == IdentityId::finite9 || id == IdentityId::squarefreeDk;
}

enum class DivisorWeight { mu_omega, absmu_omega, mu, absmu, omega, none };

/// Whether f is applied to d or to the complementary divisor n/d.
enum class DivisorArgument { divisor, codivisor };

/// sum_{d|n} w(d) f(d) (or f(n/d)), enumerating every divisor.
inline ExactValue divisor_sum(const FactoredInteger& n, const FnSpec& spec, DivisorWeight weight,
                              DivisorArgument arg = DivisorArgument::divisor) {
    const std::size_t r = n.factors.size();

    // table[i][b] = f(p_i^b)
    std::vector<std::vector<std::optional<ExactValue>>> table(r);
    for (std::size_t i = 0; i < r; ++i) {
        table[i].resize(n.factors[i].exponent + 1);
        table[i][0] = ExactValue(1);
    }
    auto f_at = [&](std::size_t i, unsigned b) -> const ExactValue& {
        auto& slot = table[i][b];
        if (!slot) {
            slot = spec.exact_at(n.factors[i].prime, b);
            if (!slot)
                throw EvaluationError(spec.name + " has no exact value at " + std::to_string(n.factors[i].prime) +
                                      "^" + std::to_string(b));
        }
        return *slot;
    };

    const bool needs_squarefree = weight == DivisorWeight::mu_omega || weight == DivisorWeight::absmu_omega ||
                                  weight == DivisorWeight::mu || weight == DivisorWeight::absmu;

    ExactValue total(0);
    std::vector<unsigned> beta(r, 0);
    while (true) {
        unsigned w_omega = 0;
        bool squarefree = true;
        for (unsigned b : beta) {
            if (b > 0) ++w_omega;
            if (b > 1) squarefree = false;
        }
        long w = 1;
        switch (weight) {
            case DivisorWeight::mu_omega: w = (w_omega % 2 ? -1L : 1L) * w_omega; break;
            case DivisorWeight::absmu_omega: w = w_omega; break;
            case DivisorWeight::mu: w = w_omega % 2 ? -1 : 1; break;
            case DivisorWeight::absmu: w = 1; break;
            case DivisorWeight::omega: w = w_omega; break;
            case DivisorWeight::none: w = 1; break;
        }
        if (needs_squarefree && !squarefree) w = 0;
        if (w != 0) {
            ExactValue term(w);
            for (std::size_t i = 0; i < r; ++i) {
                unsigned b = arg == DivisorArgument::divisor ? beta[i] : n.factors[i].exponent - beta[i];
                if (b != 0) term *= f_at(i, b);
            }
            total += term;
        }
        std::size_t i = 0;
        for (; i < r; ++i) {
            if (++beta[i] <= n.factors[i].exponent) break;
            beta[i] = 0;
        }
        if (i == r) break;
    }
    return total;
}

namespace detail {

inline std::vector<ExactValue> values_at_primes(const FactoredInteger& n, const FnSpec& spec) {
    std::vector<ExactValue> xs;
    xs.reserve(n.factors.size());
    for (const auto& pp : n.factors) {
        auto v = spec.exact_at(pp.prime, 1);
        if (!v) throw EvaluationError(spec.name + " has no exact value at " + std::to_string(pp.prime));
        xs.push_back(std::move(*v));
    }
    return xs;
}

inline void require_k(IdentityId id, long k) {
    if (k == 0)
        throw SingularInputError(std::string(to_string(id)) + ": k = 0 makes p^k = 1 for every prime");
}

} // namespace detail

/// Brute-force left side of an identity.
inline ExactValue identity_lhs(IdentityId id, const FactoredInteger& n, const FnSpec& spec, long k = 1) {
    switch (id) {
        case IdentityId::finite1:
        case IdentityId::finitecor1: return divisor_sum(n, spec, DivisorWeight::mu_omega);
        case IdentityId::finite2:
        case IdentityId::finite2cor: return divisor_sum(n, spec, DivisorWeight::absmu_omega);
        case IdentityId::finite4: return divisor_sum(n, fn::one(), DivisorWeight::absmu_omega);
        case IdentityId::finite6:
            return divisor_sum(n, fn::power(static_cast<double>(k)), DivisorWeight::mu_omega,
                               DivisorArgument::codivisor);
        case IdentityId::finite9:
            return divisor_sum(n, fn::power(static_cast<double>(k)), DivisorWeight::absmu_omega,
                               DivisorArgument::codivisor);
        case IdentityId::psiCor:
            return divisor_sum(n, fn::power(1.0), DivisorWeight::absmu_omega, DivisorArgument::codivisor);
        case IdentityId::squarefreeDk:
            return divisor_sum(n, fn::power(static_cast<double>(k)), DivisorWeight::omega);
        case IdentityId::multApostol: return divisor_sum(n, spec, DivisorWeight::mu);
    }
    return ExactValue(0);
}

/// Closed-form right side. Sums over primes of n are empty (zero) at n = 1.
inline ExactValue closed_form(IdentityId id, const FactoredInteger& n, const FnSpec& spec, long k = 1) {
    switch (id) {
        case IdentityId::finite1: {
            auto xs = detail::values_at_primes(n, spec);
            return product_side_main<ExactValue>(xs);
        }
        case IdentityId::finite2: {
            auto xs = detail::values_at_primes(n, spec);
            return product_side_mainpos<ExactValue>(xs);
        }
        case IdentityId::finitecor1: {
            auto xs = detail::values_at_primes(n, spec);
            ExactValue sum(0);
            for (const auto& x : xs) {
                if (x == ExactValue(1)) throw SingularInputError("finitecor1: f(p) = 1");
                sum += x / (x - ExactValue(1));
            }
            return divisor_sum(n, spec, DivisorWeight::mu) * sum;
        }
        case IdentityId::finite2cor: {
            auto xs = detail::values_at_primes(n, spec);
            ExactValue sum(0);
            for (const auto& x : xs) {
                if (x == ExactValue(-1)) throw SingularInputError("finite2cor: f(p) = -1");
                sum += x / (ExactValue(1) + x);
            }
            return divisor_sum(n, spec, DivisorWeight::absmu) * sum;
        }
        case IdentityId::finite4: {
            unsigned w = omega(n);
            if (w == 0) return ExactValue(0);
            mpz_class two_pow;
            mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, w - 1);
            return ExactValue(mpz_class(two_pow * w));
        }
        case IdentityId::finite6: {
            if (n.n > 1) detail::require_k(id, k);
            Rational sum(0);
            for (const auto& pp : n.factors) sum += Rational(1) / (Rational(1) - rational_pow(pp.prime, k));
            return jordan_totient(k, n) * ExactValue(sum);
        }
        case IdentityId::finite9: {
            if (n.n > 1) detail::require_k(id, k);
            Rational sum(0);
            for (const auto& pp : n.factors) sum += Rational(1) / (Rational(1) + rational_pow(pp.prime, k));
            return jordan_totient(2 * k, n) / jordan_totient(k, n) * ExactValue(sum);
        }
        case IdentityId::psiCor: {
            Rational sum(0);
            for (const auto& pp : n.factors) sum += Rational(1, static_cast<unsigned long>(pp.prime + 1));
            return eval_exact(fn::dedekind_psi(), n) * ExactValue(sum);
        }
        case IdentityId::squarefreeDk: {
            if (!is_squarefree(n))
                throw PreconditionError("squarefreeDk: n = " + std::to_string(n.n) + " is not squarefree");
            if (n.n > 1) detail::require_k(id, k);
            Rational sum(0);
            for (const auto& pp : n.factors) {
                Rational pk = rational_pow(pp.prime, k);
                sum += pk / (Rational(1) + pk);
            }
            return jordan_totient(2 * k, n) / jordan_totient(k, n) * ExactValue(sum);
        }
        case IdentityId::multApostol: {
            auto xs = detail::values_at_primes(n, spec);
            ExactValue prod(1);
            for (const auto& x : xs) prod *= ExactValue(1) - x;
            return prod;
        }
    }
    return ExactValue(0);
}

struct DivisorIdentityReport {
    IdentityId identity;
    std::uint64_t n;
    std::optional<long> k;
    std::optional<ExactValue> lhs;
    std::optional<ExactValue> rhs;
    bool equal = false;
    /// Non-empty when n was skipped (singular input, failed precondition).
    std::string skip_reason;

    bool skipped() const { return !skip_reason.empty(); }
};

inline DivisorIdentityReport check_identity(IdentityId id, const FactoredInteger& n, const FnSpec& spec, long k) {
    DivisorIdentityReport rep{id, n.n, uses_k(id) ? std::optional<long>(k) : std::nullopt, {}, {}, false, {}};
    try {
        rep.rhs = closed_form(id, n, spec, k);
        rep.lhs = identity_lhs(id, n, spec, k);
        rep.equal = *rep.lhs == *rep.rhs;
    } catch (const SingularInputError& e) {
        rep.skip_reason = std::string("singular: ") + e.what();
    } catch (const PreconditionError& e) {
        rep.skip_reason = std::string("precondition: ") + e.what();
    } catch (const EvaluationError& e) {
        rep.skip_reason = std::string("evaluation: ") + e.what();
    }
    if (rep.skipped()) {
        rep.lhs.reset();
        rep.rhs.reset();
    }
    return rep;
}

/// One report per n in [n_min, n_max], in increasing n. Work is split into
/// contiguous blocks across `workers` threads; output order does not depend
/// on the worker count.
inline std::vector<DivisorIdentityReport> verify_identity(IdentityId id, std::uint64_t n_min, std::uint64_t n_max,
                                                          const SpfSieve& sieve, const FnSpec& spec, long k = 1,
                                                          unsigned workers = 1) {
    if (n_min == 0) throw DomainError("verify_identity: n must be positive");
    if (n_max > sieve.limit()) throw CapacityError("verify_identity: range exceeds sieve limit");
    if (n_max < n_min) return {};
    const std::uint64_t count = n_max - n_min + 1;
    std::vector<DivisorIdentityReport> out(count);
    auto run = [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) out[i] = check_identity(id, factorize(n_min + i, sieve), spec, k);
    };
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::min<std::uint64_t>(count, 256))));
    if (workers == 1) {
        run(0, count);
        return out;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back(run, count * w / workers, count * (w + 1) / workers);
    for (auto& t : pool) t.join();
    return out;
}

struct VerifySummary {
    std::uint64_t checked = 0;
    std::uint64_t failed = 0;
    std::uint64_t skipped = 0;
};

inline VerifySummary summarize(const std::vector<DivisorIdentityReport>& reports) {
    VerifySummary s;
    for (const auto& r : reports) {
        if (r.skipped()) {
            ++s.skipped;
            continue;
        }
        ++s.checked;
        if (!r.equal) ++s.failed;
    }
    return s;
}

/// sum_{d|n} |mu(d)| omega(d) in machine integers, enumerating every divisor.
inline std::uint64_t abs_mu_omega_divisor_sum(const FactoredInteger& n) {
    const std::size_t r = n.factors.size();
    std::uint64_t total = 0;
    std::array<unsigned, 16> beta{};
    while (true) {
        unsigned w = 0;
        bool squarefree = true;
        for (std::size_t i = 0; i < r; ++i) {
            if (beta[i] > 0) ++w;
            if (beta[i] > 1) squarefree = false;
        }
        if (squarefree) total += w;
        std::size_t i = 0;
        for (; i < r; ++i) {
            if (++beta[i] <= n.factors[i].exponent) break;
            beta[i] = 0;
        }
        if (i == r) break;
    }
    return total;
}

/// finite4 over [n_min, n_max] without rationals; returns the failing n.
inline std::vector<std::uint64_t> verify_finite4_fast(std::uint64_t n_min, std::uint64_t n_max, const SpfSieve& sieve,
                                                      VerifySummary* summary = nullptr) {
    if (n_min == 0) throw DomainError("verify_finite4_fast: n must be positive");
    if (n_max > sieve.limit()) throw CapacityError("verify_finite4_fast: range exceeds sieve limit");
    std::vector<std::uint64_t> failures;
    VerifySummary s;
    for (std::uint64_t n = n_min; n <= n_max; ++n) {
        auto f = factorize(n, sieve);
        unsigned w = omega(f);
        std::uint64_t rhs = w == 0 ? 0 : static_cast<std::uint64_t>(w) << (w - 1);
        ++s.checked;
        if (abs_mu_omega_divisor_sum(f) != rhs) {
            ++s.failed;
            failures.push_back(n);
        }
    }
    if (summary) *summary = s;
    return failures;
}

} // namespace omega_sums
