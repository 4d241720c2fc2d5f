#pragma once

// omega-weighted Dirichlet series: the truncated n-sum (oracle side) and the
// closed forms assembled from zeta, P(s), P(s, a), L(s, chi) and Euler
// products (closed-form side). The two sides share no code beyond scalar
// arithmetic: the n-sum factors n with SpfSieve, the closed forms walk a
// PrimeTable.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "omega_sums/arithmetic.hpp"
#include "omega_sums/characters.hpp"
#include "omega_sums/errors.hpp"
#include "omega_sums/fn_spec.hpp"
#include "omega_sums/numeric.hpp"
#include "omega_sums/prime_sums.hpp"
#include "omega_sums/sieve.hpp"
#include "omega_sums/zeta.hpp"

namespace omega_sums {

struct APCoefficient {
    std::uint64_t p;
    Complex value;
};

/// a_p = sum_{m>=1} f(p^m) p^{-ms}. Completely multiplicative f uses
/// (1 - f(p)/p^s)^-1 - 1; otherwise terms are summed until two in a row are
/// below machine-epsilon relative size, at most 64 terms.
inline APCoefficient compute_ap(const FnSpec& spec, std::uint64_t p, ComplexS s, double tol = 1e-12) {
    Complex value;
    if (spec.completely_multiplicative) {
        Complex x = spec.complex_at(p, 1) * int_pow_neg(p, s.value());
        if (std::abs(x) >= 1.0)
            throw DomainError("compute_ap: |f(p)/p^s| >= 1 at p = " + std::to_string(p) + ", series diverges");
        value = x / (1.0 - x);
    } else {
        const Complex ps = int_pow_neg(p, s.value());
        Complex pms = 1.0;
        Complex sum = 0.0;
        int quiet = 0;
        unsigned m = 1;
        double last = 0.0;
        for (; m <= 64; ++m) {
            pms *= ps;
            Complex term = spec.complex_at(p, m) * pms;
            sum += term;
            last = std::abs(term);
            if (last <= kEps * std::abs(sum)) {
                if (++quiet == 2) break;
            } else {
                quiet = 0;
            }
        }
        if (quiet < 2 && last > tol)
            throw DomainError("compute_ap: a_p series does not converge at p = " + std::to_string(p));
        value = sum;
    }
    if (std::abs(1.0 + value) <= 64.0 * kEps * std::max(1.0, std::abs(value)))
        throw SingularInputError("compute_ap: a_p = -1 at p = " + std::to_string(p));
    return {p, value};
}

/// prod_{p <= L} (1 + a_p) with a heuristic bound for the omitted primes.
inline SeriesResult euler_product(const FnSpec& spec, ComplexS s, const PrimeTable& primes, double tol = 1e-12);

enum class SeriesWeight { none, omega, omega_sq, mu_omega, absmu_omega };

/// sum_{n<=N} w(n) f(n) n^-s by direct summation. tail_bound is heuristic:
/// with A1, A2 the absolute sums over (N/100, N/10] and (N/10, N], the
/// decade ratio r = A2/A1 is extrapolated geometrically, 2 A2 r / (1 - r).
/// Below N = 100 the ratio falls back to 10^{1-sigma}.
inline SeriesResult truncated_weighted_series(const FnSpec& spec, ComplexS s, std::uint64_t n_max, SeriesWeight weight,
                                              const SpfSieve& sieve, unsigned workers = 1, double sigma_floor = 1.0) {
    if (!(s.sigma > sigma_floor))
        throw DomainError("truncated_weighted_series: requires Re s > " + std::to_string(sigma_floor));
    if (n_max > sieve.limit())
        throw CapacityError("truncated_weighted_series: N = " + std::to_string(n_max) + " exceeds sieve limit " +
                            std::to_string(sieve.limit()));
    struct Acc {
        Complex sum{0.0};
        double prev_decade{0.0};
        double last_decade{0.0};
        Acc operator+(const Acc& o) const {
            return {sum + o.sum, prev_decade + o.prev_decade, last_decade + o.last_decade};
        }
    };
    const std::uint64_t decade_start = n_max / 10;
    const std::uint64_t prev_start = n_max / 100;
    const Complex sv = s.value();
    auto chunk = [&](std::uint64_t b, std::uint64_t e) {
        Acc acc;
        for (std::uint64_t n = b; n < e; ++n) {
            FactoredInteger f = factorize(n, sieve);
            double w = 1.0;
            const double om = static_cast<double>(f.factors.size());
            switch (weight) {
                case SeriesWeight::none: break;
                case SeriesWeight::omega: w = om; break;
                case SeriesWeight::omega_sq: w = om * om; break;
                case SeriesWeight::mu_omega: w = mobius(f) * om; break;
                case SeriesWeight::absmu_omega: w = is_squarefree(f) ? om : 0.0; break;
            }
            if (w == 0.0) continue;
            Complex term = w * eval_complex(spec, f) * int_pow_neg(n, sv);
            acc.sum += term;
            if (n > decade_start)
                acc.last_decade += std::abs(term);
            else if (n > prev_start)
                acc.prev_decade += std::abs(term);
        }
        return acc;
    };
    Acc total = deterministic_reduce<Acc>(1, n_max + 1, chunk, workers);
    double r = std::pow(10.0, 1.0 - s.sigma);
    if (n_max >= 100 && total.prev_decade > 0.0) r = std::max(r, total.last_decade / total.prev_decade);
    double tail = r < 1.0 ? 2.0 * total.last_decade * r / (1.0 - r) : std::numeric_limits<double>::infinity();
    return {total.sum, n_max, tail, true, true};
}

enum class SeriesIdentity {
    infmain,
    inf3,
    inf5,
    inf6,
    zetaP,
    liouville,
    dirichletChi,
    absMu,
    mu,
    twoOmega,
    jordan,
    sigmaK,
    dNsq,
    dSq,
    omegaSq,
    omegaSqGeneric,
};

inline constexpr std::array<std::pair<SeriesIdentity, std::string_view>, 16> kSeriesIdentityNames{{
    {SeriesIdentity::infmain, "infmain"},
    {SeriesIdentity::inf3, "inf3"},
    {SeriesIdentity::inf5, "inf5"},
    {SeriesIdentity::inf6, "inf6"},
    {SeriesIdentity::zetaP, "zetaP"},
    {SeriesIdentity::liouville, "liouville"},
    {SeriesIdentity::dirichletChi, "dirichletChi"},
    {SeriesIdentity::absMu, "absMu"},
    {SeriesIdentity::mu, "mu"},
    {SeriesIdentity::twoOmega, "twoOmega"},
    {SeriesIdentity::jordan, "jordan"},
    {SeriesIdentity::sigmaK, "sigmaK"},
    {SeriesIdentity::dNsq, "dNsq"},
    {SeriesIdentity::dSq, "dSq"},
    {SeriesIdentity::omegaSq, "omegaSq"},
    {SeriesIdentity::omegaSqGeneric, "omegaSqGeneric"},
}};

inline std::string_view to_string(SeriesIdentity id) {
    for (const auto& [k, v] : kSeriesIdentityNames)
        if (k == id) return v;
    return "?";
}

inline std::optional<SeriesIdentity> series_identity_from_string(std::string_view s) {
    for (const auto& [k, v] : kSeriesIdentityNames)
        if (v == s) return k;
    return std::nullopt;
}

struct SeriesParams {
    /// f for the generic identities (infmain, inf3, inf5, inf6, omegaSqGeneric).
    std::optional<FnSpec> spec;
    /// Exponent for jordan and sigmaK.
    Complex k{1.0, 0.0};
    /// Character for dirichletChi.
    std::optional<CharacterTable> chi;
    /// Abscissa supplied by the caller for the generic identities.
    double sigma_floor = 1.0;
};

inline bool is_generic(SeriesIdentity id) {
    switch (id) {
        case SeriesIdentity::infmain:
        case SeriesIdentity::inf3:
        case SeriesIdentity::inf5:
        case SeriesIdentity::inf6:
        case SeriesIdentity::omegaSqGeneric: return true;
        default: return false;
    }
}

/// Real part of s must exceed this for the identity to be evaluated.
inline double abscissa(SeriesIdentity id, const SeriesParams& params) {
    if (id == SeriesIdentity::jordan || id == SeriesIdentity::sigmaK) return std::max(1.0, 1.0 + params.k.real());
    if (is_generic(id)) return std::max(1.0, params.sigma_floor);
    return 1.0;
}

struct OracleSetup {
    FnSpec spec;
    SeriesWeight weight;
};

/// The (f, weight) pair whose truncated n-sum is the left side of `id`.
inline OracleSetup oracle_setup(SeriesIdentity id, const SeriesParams& params) {
    auto need_spec = [&]() -> const FnSpec& {
        if (!params.spec) throw PreconditionError(std::string(to_string(id)) + " requires a function f");
        return *params.spec;
    };
    switch (id) {
        case SeriesIdentity::infmain:
        case SeriesIdentity::inf3: return {need_spec(), SeriesWeight::omega};
        case SeriesIdentity::inf5: return {need_spec(), SeriesWeight::absmu_omega};
        case SeriesIdentity::inf6: return {need_spec(), SeriesWeight::mu_omega};
        case SeriesIdentity::omegaSqGeneric: return {need_spec(), SeriesWeight::omega_sq};
        case SeriesIdentity::zetaP: return {fn::one(), SeriesWeight::omega};
        case SeriesIdentity::liouville: return {fn::liouville(), SeriesWeight::omega};
        case SeriesIdentity::dirichletChi:
            if (!params.chi) throw PreconditionError("dirichletChi requires a character");
            return {fn::character(*params.chi), SeriesWeight::omega};
        case SeriesIdentity::absMu: return {fn::one(), SeriesWeight::absmu_omega};
        case SeriesIdentity::mu: return {fn::one(), SeriesWeight::mu_omega};
        case SeriesIdentity::twoOmega: return {fn::two_pow_omega(), SeriesWeight::omega};
        case SeriesIdentity::jordan: return {fn::jordan(params.k), SeriesWeight::omega};
        case SeriesIdentity::sigmaK: return {fn::sigma(params.k), SeriesWeight::omega};
        case SeriesIdentity::dNsq: return {fn::divisor_count_of_square(), SeriesWeight::omega};
        case SeriesIdentity::dSq: return {fn::divisor_count_squared(), SeriesWeight::omega};
        case SeriesIdentity::omegaSq: return {fn::one(), SeriesWeight::omega_sq};
    }
    throw PreconditionError("unknown series identity");
}

namespace detail {

/// Direct sum over primes of g(p) with a heuristic tail: the decay exponent
/// alpha of |g| is read off between the prime nearest L/2 and the last
/// prime, then sum_{p>L} |g(p)| ~ 1.26 |g(L)| L / ((alpha - 1) ln L).
struct PrimeSumWithTail {
    Approx sum;
    double tail = 0.0;
};

template <class G>
PrimeSumWithTail generic_prime_sum(const PrimeTable& primes, G g) {
    const auto& ps = primes.primes();
    std::vector<Complex> terms;
    terms.reserve(ps.size());
    for (std::uint64_t p : ps) terms.push_back(g(p));
    Complex sum = pairwise_sum(std::span<const Complex>(terms));
    double tail = std::numeric_limits<double>::infinity();
    if (ps.size() >= 4) {
        std::size_t last = ps.size() - 1;
        std::size_t mid = static_cast<std::size_t>(
            std::lower_bound(ps.begin(), ps.end(), ps[last] / 2) - ps.begin());
        double g_last = std::abs(terms[last]);
        double g_mid = std::abs(terms[mid]);
        double ratio = static_cast<double>(ps[last]) / static_cast<double>(ps[mid]);
        if (g_last == 0.0 && g_mid == 0.0) {
            tail = 0.0;
        } else if (g_last > 0.0 && g_mid > 0.0) {
            double alpha = std::log(g_mid / g_last) / std::log(ratio);
            if (alpha > 1.0) {
                double L = static_cast<double>(ps[last]);
                tail = 1.26 * g_last * L / ((alpha - 1.0) * std::log(L));
            }
        }
    }
    return {{sum, 4.0 * kEps * std::log2(terms.size() + 2.0) * (std::abs(sum) + 1.0)}, tail};
}

/// Euler product prod (1 + a_p) over primes with error from the sum tail.
inline Approx product_with_tail(const std::vector<Complex>& factors, double a_tail) {
    Complex prod = 1.0;
    for (const auto& f : factors) prod *= f;
    double err = std::abs(prod) * (std::expm1(a_tail) + factors.size() * kEps);
    return {prod, err};
}

inline Approx with_tail(const PrimeSumWithTail& s) { return {s.sum.value, s.sum.error + s.tail}; }

inline Approx as_approx(const SeriesResult& r) { return {r.value, r.tail_bound}; }

} // namespace detail

inline SeriesResult euler_product(const FnSpec& spec, ComplexS s, const PrimeTable& primes, double tol) {
    std::vector<Complex> factors;
    factors.reserve(primes.size());
    for (std::uint64_t p : primes.primes()) factors.push_back(1.0 + compute_ap(spec, p, s, tol).value);
    auto a_sum = detail::generic_prime_sum(primes, [&](std::uint64_t p) { return compute_ap(spec, p, s, tol).value; });
    Approx prod = detail::product_with_tail(factors, a_sum.tail);
    return to_result(prod, primes.limit(), true);
}

/// Right-hand side of a series identity at s.
inline SeriesResult closed_form_series(SeriesIdentity id, ComplexS s, const SeriesParams& params,
                                       const PrimeTable& primes, double tol = 1e-9) {
    const double floor = abscissa(id, params);
    if (!(s.sigma > floor))
        throw DomainError(std::string(to_string(id)) + ": requires Re s > " + std::to_string(floor) + ", got " +
                          std::to_string(s.sigma));
    const Complex sv = s.value();
    const double factor_tol = std::min(tol, 1e-12);

    auto Z = [&](Complex z) { return detail::as_approx(zeta(ComplexS(z), factor_tol)); };
    auto P = [&](Complex z) { return detail::as_approx(prime_zeta(ComplexS(z), primes, factor_tol)); };
    auto PS = [&](Complex a) { return detail::as_approx(shifted_prime_zeta(s, a, primes, factor_tol)); };
    const std::uint64_t L = primes.limit();

    switch (id) {
        case SeriesIdentity::zetaP: return to_result(Z(sv) * P(sv), L);
        case SeriesIdentity::liouville: return to_result(-(Z(2.0 * sv) / Z(sv)) * P(sv), L);
        case SeriesIdentity::dirichletChi: {
            if (!params.chi) throw PreconditionError("dirichletChi requires a character");
            Approx Lf = detail::as_approx(l_function(s, *params.chi, factor_tol));
            Approx Pc = detail::as_approx(prime_character_sum(s, *params.chi, primes, factor_tol));
            return to_result(Lf * Pc, L);
        }
        case SeriesIdentity::absMu: return to_result(Z(sv) / Z(2.0 * sv) * PS(1.0), L);
        case SeriesIdentity::mu: return to_result(-(PS(-1.0) / Z(sv)), L);
        case SeriesIdentity::twoOmega: {
            Approx z = Z(sv);
            return to_result(2.0 * (z * z / Z(2.0 * sv)) * PS(1.0), L);
        }
        case SeriesIdentity::jordan: {
            Approx sum = detail::as_approx(jordan_prime_sum(s, params.k, primes, factor_tol));
            return to_result(Z(sv - params.k) / Z(sv) * sum, L);
        }
        case SeriesIdentity::sigmaK: {
            Complex k = params.k;
            return to_result(Z(sv) * Z(sv - k) * (P(sv) + P(sv - k) - P(2.0 * sv - k)), L);
        }
        case SeriesIdentity::dNsq: {
            Approx z = Z(sv);
            return to_result(z * z * z / Z(2.0 * sv) * (4.0 * PS(1.0) - P(sv)), L);
        }
        case SeriesIdentity::dSq: {
            Approx z = Z(sv);
            Approx z2 = z * z;
            return to_result(z2 * z2 / Z(2.0 * sv) * (8.0 * PS(1.0) + P(2.0 * sv) - 4.0 * P(sv)), L);
        }
        case SeriesIdentity::omegaSq: {
            Approx p = P(sv);
            return to_result(Z(sv) * (p * p + p - P(2.0 * sv)), L);
        }
        default: break;
    }

    // Generic multiplicative f: finite Euler products and prime sums with
    // heuristic tails.
    if (!params.spec) throw PreconditionError(std::string(to_string(id)) + " requires a function f");
    const FnSpec& f = *params.spec;
    std::vector<Complex> factors;
    factors.reserve(primes.size());

    switch (id) {
        case SeriesIdentity::infmain:
        case SeriesIdentity::omegaSqGeneric: {
            std::vector<Complex> a;
            a.reserve(primes.size());
            for (std::uint64_t p : primes.primes()) a.push_back(compute_ap(f, p, s, factor_tol).value);
            std::size_t i = 0;
            auto first = detail::generic_prime_sum(primes, [&](std::uint64_t) {
                Complex x = a[i++];
                return x / (1.0 + x);
            });
            for (const auto& x : a) factors.push_back(1.0 + x);
            Approx E = detail::product_with_tail(factors, first.tail);
            if (id == SeriesIdentity::infmain) return to_result(E * detail::with_tail(first), L, true);
            i = 0;
            auto second = detail::generic_prime_sum(primes, [&](std::uint64_t) {
                Complex x = a[i++];
                return x / ((1.0 + x) * (1.0 + x));
            });
            Approx S1 = detail::with_tail(first);
            return to_result(E * (S1 * S1 + detail::with_tail(second)), L, true);
        }
        case SeriesIdentity::inf3: {
            if (!f.completely_multiplicative)
                throw PreconditionError("inf3 requires a completely multiplicative f");
            auto g = detail::generic_prime_sum(primes, [&](std::uint64_t p) { return f.complex_at(p, 1) * int_pow_neg(p, sv); });
            for (std::uint64_t p : primes.primes()) {
                Complex x = f.complex_at(p, 1) * int_pow_neg(p, sv);
                if (std::abs(x) >= 1.0) throw DomainError("inf3: |f(p)/p^s| >= 1");
                factors.push_back(1.0 / (1.0 - x));
            }
            return to_result(detail::product_with_tail(factors, g.tail) * detail::with_tail(g), L, true);
        }
        case SeriesIdentity::inf5: {
            auto g = detail::generic_prime_sum(primes, [&](std::uint64_t p) {
                Complex fp = f.complex_at(p, 1);
                Complex denom = 1.0 / int_pow_neg(p, sv) + fp;
                if (std::abs(denom) == 0.0) throw SingularInputError("inf5: f(p) = -p^s");
                return fp / denom;
            });
            for (std::uint64_t p : primes.primes()) factors.push_back(1.0 + f.complex_at(p, 1) * int_pow_neg(p, sv));
            return to_result(detail::product_with_tail(factors, g.tail) * detail::with_tail(g), L, true);
        }
        case SeriesIdentity::inf6: {
            auto g = detail::generic_prime_sum(primes, [&](std::uint64_t p) {
                Complex fp = f.complex_at(p, 1);
                Complex denom = fp - 1.0 / int_pow_neg(p, sv);
                if (std::abs(denom) == 0.0) throw SingularInputError("inf6: f(p) = p^s");
                return fp / denom;
            });
            for (std::uint64_t p : primes.primes()) factors.push_back(1.0 - f.complex_at(p, 1) * int_pow_neg(p, sv));
            return to_result(detail::product_with_tail(factors, g.tail) * detail::with_tail(g), L, true);
        }
        default: break;
    }
    throw PreconditionError("unknown series identity");
}

} // namespace omega_sums
