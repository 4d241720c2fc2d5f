#include <gtest/gtest.h>

#include <numbers>

#include "omega_sums/series.hpp"

using namespace omega_sums;

namespace {

const SpfSieve& sieve() {
    static const SpfSieve s(1'000'000);
    return s;
}

const PrimeTable& primes() {
    static const PrimeTable t(1'000'000);
    return t;
}

SeriesParams params_for(SeriesIdentity id) {
    SeriesParams p;
    if (id == SeriesIdentity::dirichletChi) p.chi = build_characters(4)[1];
    if (is_generic(id)) p.spec = fn::one();
    if (id == SeriesIdentity::inf5 || id == SeriesIdentity::inf6) p.spec = fn::two_pow_omega();
    return p;
}

struct Gap {
    double diff;
    double allowed;
};

Gap gap(SeriesIdentity id, ComplexS s, std::uint64_t n, SeriesParams params) {
    auto closed = closed_form_series(id, s, params, primes());
    auto setup = oracle_setup(id, params);
    auto oracle = truncated_weighted_series(setup.spec, s, n, setup.weight, sieve(), 4, abscissa(id, params));
    return {std::abs(oracle.value - closed.value), oracle.tail_bound + closed.tail_bound};
}

} // namespace

TEST(ComputeAp, Examples) {
    EXPECT_NEAR(std::abs(compute_ap(fn::one(), 2, 2.0).value - 1.0 / 3), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(compute_ap(fn::two_pow_omega(), 2, 2.0).value - 2.0 / 3), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(compute_ap(fn::jordan(1.0), 2, 3.0).value - 1.0 / 6), 0.0, 1e-15);
}

TEST(ComputeAp, GenericPathMatchesClosedGeometricForm) {
    // |mu| is not completely multiplicative: a_p = p^-s exactly
    for (std::uint64_t p : {2u, 3u, 101u})
        EXPECT_NEAR(std::abs(compute_ap(fn::abs_mobius(), p, 2.0).value - 1.0 / (p * p)), 0.0, 1e-16);
    // d(n): a_p = 1/(1-x)^2 - 1
    double x = 1.0 / 9;
    EXPECT_NEAR(compute_ap(fn::divisor_count(), 3, 2.0).value.real(), 1 / ((1 - x) * (1 - x)) - 1, 1e-15);
}

TEST(ComputeAp, Errors) {
    // f = mu at p^s = 1 is impossible for s > 1; build a rule with a_p = -1
    auto bad = FnSpec::from_rule(
        "minus-p-squared", nullptr,
        [](std::uint64_t p, unsigned m) { return m == 1 ? Complex(-static_cast<double>(p * p)) : Complex(0.0); });
    EXPECT_THROW(compute_ap(bad, 2, 2.0), SingularInputError);
    EXPECT_THROW(compute_ap(fn::power(3.0), 2, 2.0), DomainError);
    auto growing = FnSpec::from_rule("growing", nullptr,
                                     [](std::uint64_t, unsigned m) { return Complex(std::pow(8.0, m)); });
    EXPECT_THROW(compute_ap(growing, 2, 2.0), DomainError);
}

TEST(TruncatedSeries, Examples) {
    double hand = 0;
    for (std::uint64_t n = 2; n <= 10; ++n) hand += omega(factorize(n, sieve())) / static_cast<double>(n * n);
    EXPECT_NEAR(hand, 1.0 / 4 + 1.0 / 9 + 1.0 / 16 + 1.0 / 25 + 2.0 / 36 + 1.0 / 49 + 1.0 / 64 + 1.0 / 81 + 2.0 / 100,
                1e-15);
    auto ten = truncated_weighted_series(fn::one(), 2.0, 10, SeriesWeight::omega, sieve());
    EXPECT_NEAR(ten.value.real(), hand, 1e-15);
    EXPECT_TRUE(ten.heuristic);

    for (const auto& spec : fn::catalog())
        EXPECT_EQ(truncated_weighted_series(spec, 2.0, 1, SeriesWeight::omega, sieve()).value, Complex(0.0));

    auto lam = truncated_weighted_series(fn::liouville(), 2.0, 1'000'000, SeriesWeight::omega, sieve());
    auto closed = closed_form_series(SeriesIdentity::liouville, 2.0, {}, primes());
    EXPECT_LT(std::abs(lam.value - closed.value), 1e-6);
}

TEST(TruncatedSeries, Errors) {
    EXPECT_THROW(truncated_weighted_series(fn::one(), 2.0, 2'000'000, SeriesWeight::omega, sieve()), CapacityError);
    EXPECT_THROW(truncated_weighted_series(fn::one(), 1.0, 100, SeriesWeight::omega, sieve()), DomainError);
}

TEST(TruncatedSeries, WorkerCountIsBitIdentical) {
    auto a = truncated_weighted_series(fn::sigma(1.0), ComplexS(3.0, 1.0), 1'000'000, SeriesWeight::omega_sq,
                                       sieve(), 1);
    for (unsigned w : {2u, 5u, 16u}) {
        auto b = truncated_weighted_series(fn::sigma(1.0), ComplexS(3.0, 1.0), 1'000'000, SeriesWeight::omega_sq,
                                           sieve(), w);
        EXPECT_EQ(a.value, b.value);
        EXPECT_EQ(a.tail_bound, b.tail_bound);
    }
}

TEST(ClosedFormSeries, Examples) {
    auto z = zeta(2.0).value * prime_zeta(2.0, primes()).value;
    EXPECT_NEAR(std::abs(closed_form_series(SeriesIdentity::zetaP, 2.0, {}, primes()).value - z), 0.0, 1e-13);
    auto m = -shifted_prime_zeta(2.0, -1.0, primes()).value / zeta(2.0).value;
    EXPECT_NEAR(std::abs(closed_form_series(SeriesIdentity::mu, 2.0, {}, primes()).value - m), 0.0, 1e-13);
    SeriesParams k0;
    k0.k = 0.0;
    EXPECT_NEAR(std::abs(closed_form_series(SeriesIdentity::jordan, 2.0, k0, primes()).value), 0.0, 1e-15);
    auto oracle = truncated_weighted_series(fn::jordan(0.0), 2.0, 1000, SeriesWeight::omega, sieve());
    EXPECT_EQ(oracle.value, Complex(0.0));
}

TEST(ClosedFormSeries, DomainGuards) {
    for (const auto& [id, name] : kSeriesIdentityNames) {
        auto p = params_for(id);
        EXPECT_THROW(closed_form_series(id, 1.0, p, primes()), DomainError) << name;
        EXPECT_THROW(closed_form_series(id, ComplexS(0.5, 2.0), p, primes()), DomainError) << name;
    }
    SeriesParams k1;
    k1.k = 1.0;
    EXPECT_THROW(closed_form_series(SeriesIdentity::jordan, 2.0, k1, primes()), DomainError);
    EXPECT_THROW(closed_form_series(SeriesIdentity::sigmaK, 2.0, k1, primes()), DomainError);
    EXPECT_NO_THROW(closed_form_series(SeriesIdentity::sigmaK, 2.5, k1, primes()));
    SeriesParams kc;
    kc.k = Complex(0.5, 2.0);
    EXPECT_THROW(closed_form_series(SeriesIdentity::jordan, 1.4, kc, primes()), DomainError);
}

TEST(ClosedFormSeries, OracleAgreesWithinBounds) {
    const ComplexS points[] = {ComplexS(2.0), ComplexS(3.0), ComplexS(2.5), ComplexS(2.0, 1.0)};
    for (const auto& [id, name] : kSeriesIdentityNames) {
        for (ComplexS s : points) {
            auto p = params_for(id);
            if (id == SeriesIdentity::jordan || id == SeriesIdentity::sigmaK) {
                if (s.sigma < 3.0) p.k = 0.5;  // keep sigma above 1 + Re k
            }
            auto g = gap(id, s, 1'000'000, p);
            EXPECT_LE(g.diff, g.allowed) << name << " s=" << s.sigma << "+" << s.t << "i";
        }
    }
}

TEST(ClosedFormSeries, GapShrinksWithN) {
    for (const auto& [id, name] : kSeriesIdentityNames) {
        if (id == SeriesIdentity::jordan || id == SeriesIdentity::sigmaK) continue;  // need sigma > 2 at k = 1
        auto p = params_for(id);
        auto small = gap(id, 2.0, 1000, p);
        auto large = gap(id, 2.0, 1'000'000, p);
        EXPECT_LT(large.diff, small.diff) << name;
    }
}

TEST(ClosedFormSeries, OmegaSqGenericReducesToOmegaSq) {
    SeriesParams p;
    p.spec = fn::one();
    for (ComplexS s : {ComplexS(2.0), ComplexS(3.0, -1.0)}) {
        auto g = closed_form_series(SeriesIdentity::omegaSqGeneric, s, p, primes());
        auto o = closed_form_series(SeriesIdentity::omegaSq, s, {}, primes());
        EXPECT_TRUE(g.heuristic);
        EXPECT_LE(std::abs(g.value - o.value), g.tail_bound + o.tail_bound);
        EXPECT_LT(std::abs(g.value - o.value), 1e-6);
    }
}

TEST(ClosedFormSeries, GenericPathsMatchNamedForms) {
    // generic paths sum primes directly with a heuristic tail
    SeriesParams one;
    one.spec = fn::one();
    const std::pair<SeriesIdentity, SeriesIdentity> pairs[] = {{SeriesIdentity::infmain, SeriesIdentity::zetaP},
                                                               {SeriesIdentity::inf3, SeriesIdentity::zetaP},
                                                               {SeriesIdentity::inf5, SeriesIdentity::absMu},
                                                               {SeriesIdentity::inf6, SeriesIdentity::mu}};
    for (auto [generic, named] : pairs) {
        auto g = closed_form_series(generic, 2.0, one, primes());
        auto n = closed_form_series(named, 2.0, {}, primes());
        EXPECT_LE(std::abs(g.value - n.value), g.tail_bound + n.tail_bound) << to_string(generic);
        EXPECT_LT(std::abs(g.value - n.value), 1e-6) << to_string(generic);
    }
}

TEST(EulerProduct, ConvergesToDirichletSeries) {
    const FnSpec specs[] = {fn::one(), fn::liouville(), fn::abs_mobius(), fn::two_pow_omega()};
    PrimeTable p5(100'000);
    for (const auto& spec : specs) {
        auto prod = euler_product(spec, 2.0, p5);
        auto direct = truncated_weighted_series(spec, 2.0, 1'000'000, SeriesWeight::none, sieve());
        EXPECT_LE(std::abs(prod.value - direct.value), prod.tail_bound + direct.tail_bound) << spec.name;
    }
    constexpr double pi2_6 = std::numbers::pi * std::numbers::pi / 6;
    EXPECT_NEAR(euler_product(fn::one(), 2.0, primes()).value.real(), pi2_6, 1e-6);
}

TEST(SeriesNames, RoundTrip) {
    for (const auto& [id, name] : kSeriesIdentityNames) EXPECT_EQ(series_identity_from_string(name), id);
}
