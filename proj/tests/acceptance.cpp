// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <bit>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "omega_sums/omega_sums.hpp"

using namespace omega_sums;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
    std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

// --- 1: exact divisor-sum identities -------------------------------------

void criterion_exact_suite() {
    auto t0 = Clock::now();
    const SpfSieve sieve(1'000'000);
    std::uint64_t checked = 0, failed = 0, skipped = 0;
    std::ostringstream bad;
    auto add = [&](IdentityId id, const std::string& label, const VerifySummary& s) {
        checked += s.checked;
        failed += s.failed;
        skipped += s.skipped;
        if (s.failed) bad << " " << to_string(id) << "[" << label << "]:" << s.failed;
    };

    for (auto id : {IdentityId::finite1, IdentityId::finitecor1, IdentityId::finite2, IdentityId::finite2cor,
                    IdentityId::multApostol})
        for (const auto& spec : fn::catalog()) add(id, spec.name, summarize(verify_identity(id, 1, 10'000, sieve, spec)));
    for (auto id : {IdentityId::finite6, IdentityId::finite9, IdentityId::squarefreeDk})
        for (long k = 1; k <= 3; ++k)
            add(id, "k=" + std::to_string(k), summarize(verify_identity(id, 1, 10'000, sieve, fn::one(), k)));
    add(IdentityId::psiCor, "", summarize(verify_identity(IdentityId::psiCor, 1, 10'000, sieve, fn::one(), 1)));
    VerifySummary f4;
    verify_finite4_fast(1, 1'000'000, sieve, &f4);
    add(IdentityId::finite4, "n<=1e6", f4);

    double secs = seconds_since(t0);
    std::ostringstream msg;
    msg << "exact divisor identities: " << checked << " checked, " << failed << " failed, " << skipped
        << " inadmissible skipped, " << secs << " s (limit 120 s)" << bad.str();
    report(1, failed == 0 && secs < 120.0, msg.str());
}

// --- 2: symmetric-polynomial kernel --------------------------------------

void criterion_symmetric_kernel() {
    auto t0 = Clock::now();
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<long> num(-30, 30), den(1, 12);
    int bad = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<Rational> xs;
        std::size_t n = rng() % 13;
        while (xs.size() < n) {
            Rational x(num(rng), den(rng));
            x.canonicalize();
            if (x == 1 || x == -1) continue;
            xs.push_back(x);
        }
        std::span<const Rational> v(xs);
        auto e = elementary_symmetric(v);
        std::vector<Rational> oracle(n + 1, Rational(0));
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            Rational prod(1);
            for (std::size_t i = 0; i < n; ++i)
                if (mask >> i & 1) prod *= xs[i];
            oracle[std::popcount(mask)] += prod;
        }
        auto m = identity_main_sides(v);
        auto p = identity_mainpos_sides(v);
        auto s = identity_second_order_sides(v);
        if (e != oracle || m.lhs != m.rhs || p.lhs != p.rhs || s.lhs != s.rhs) ++bad;
    }
    double secs = seconds_since(t0);
    std::ostringstream msg;
    msg << "1000 random rational inputs (n <= 12): " << bad << " mismatches, " << secs << " s (limit 10 s)";
    report(2, bad == 0 && secs < 10.0, msg.str());
}

// --- 3: series identities against closed forms ---------------------------

struct SeriesCase {
    SeriesIdentity id;
    double s;
    SeriesParams params;
    std::string label;
};

void criterion_series_suite(const SpfSieve& sieve, const PrimeTable& primes) {
    const double bound = 1e-3;
    std::vector<SeriesCase> cases;
    for (auto id : {SeriesIdentity::zetaP, SeriesIdentity::liouville, SeriesIdentity::absMu, SeriesIdentity::mu,
                    SeriesIdentity::twoOmega, SeriesIdentity::dNsq, SeriesIdentity::dSq, SeriesIdentity::omegaSq})
        for (double s : {2.0, 3.0}) cases.push_back({id, s, {}, std::string(to_string(id))});
    for (auto id : {SeriesIdentity::jordan, SeriesIdentity::sigmaK}) {
        SeriesParams p;
        p.k = 1.0;
        cases.push_back({id, 3.0, p, std::string(to_string(id)) + " k=1"});
    }
    auto chars = build_characters(4);
    for (std::size_t i = 0; i < chars.size(); ++i) {
        SeriesParams p;
        p.chi = chars[i];
        cases.push_back({SeriesIdentity::dirichletChi, 2.0, p, "dirichletChi mod 4 #" + std::to_string(i)});
    }

    bool all = true;
    std::ostringstream worst;
    for (const auto& c : cases) {
        auto t0 = Clock::now();
        auto closed = closed_form_series(c.id, c.s, c.params, primes, 1e-9);
        auto setup = oracle_setup(c.id, c.params);
        auto oracle = truncated_weighted_series(setup.spec, c.s, 1'000'000, setup.weight, sieve, 1,
                                                abscissa(c.id, c.params));
        double diff = std::abs(oracle.value - closed.value);
        double secs = seconds_since(t0);
        bool ok = diff <= bound && secs < 30.0;
        all = all && ok;
        std::printf("  %s %-28s s=%-3g |oracle - closed| = %.3e (bound %.0e) %.2f s\n", ok ? "ok  " : "FAIL",
                    c.label.c_str(), c.s, diff, bound, secs);
        if (!ok) worst << " " << c.label << "@s=" << c.s << ":" << diff;
    }
    std::ostringstream msg;
    msg << cases.size() << " series cases at N=1e6, |diff| <= 1e-3 and < 30 s each";
    if (!all) msg << "; failing:" << worst.str();
    report(3, all, msg.str());
}

// --- 4: convergence trend -------------------------------------------------

void criterion_convergence_trend(const SpfSieve& sieve, const PrimeTable& primes) {
    auto closed = closed_form_series(SeriesIdentity::zetaP, 2.0, {}, primes, 1e-9);
    auto at = [&](std::uint64_t n) {
        auto r = truncated_weighted_series(fn::one(), 2.0, n, SeriesWeight::omega, sieve);
        return std::pair{std::abs(r.value - closed.value), r.tail_bound + closed.tail_bound};
    };
    auto [d3, b3] = at(1000);
    auto [d6, b6] = at(1'000'000);
    bool ok = d6 < d3 && d3 <= b3 && d6 <= b6;
    std::ostringstream msg;
    msg << "zetaP s=2: gap " << d3 << " (bound " << b3 << ") at N=1e3, " << d6 << " (bound " << b6 << ") at N=1e6";
    report(4, ok, msg.str());
}

// --- 5: special values ----------------------------------------------------

void criterion_special_values(const PrimeTable& primes) {
    constexpr double pi = std::numbers::pi;
    constexpr double catalan = 0.91596559417721901505;
    double z2 = std::abs(zeta(2.0, 1e-13).value - pi * pi / 6);
    double cat = std::abs(l_function(2.0, build_characters(4)[1], 1e-12).value - catalan);
    PrimeTable big(10'000'000);
    double p2 = std::abs(prime_zeta(2.0, primes).value - prime_zeta(2.0, big).value);
    std::ostringstream msg;
    msg << "|zeta(2) - pi^2/6| = " << z2 << " (<= 1e-12), |L(2,chi_4) - G| = " << cat
        << " (<= 1e-9), |P(2)[1e6] - P(2)[1e7]| = " << p2 << " (<= 1e-8)";
    report(5, z2 <= 1e-12 && cat <= 1e-9 && p2 <= 1e-8, msg.str());
}

// --- 6: guards ------------------------------------------------------------

template <class E>
bool throws(const std::function<void()>& f) {
    try {
        f();
    } catch (const E&) {
        return true;
    } catch (...) {
        return false;
    }
    return false;
}

void criterion_guards(const SpfSieve& sieve, const PrimeTable& primes) {
    std::vector<std::string> missed;
    auto expect = [&](bool ok, const std::string& what) {
        if (!ok) missed.push_back(what);
    };
    auto chi4 = build_characters(4)[1];
    for (ComplexS s : {ComplexS(1.0), ComplexS(0.5), ComplexS(1.0, 5.0), ComplexS(-2.0)}) {
        expect(throws<DomainError>([&] { zeta(s); }), "zeta");
        expect(throws<DomainError>([&] { prime_zeta(s, primes); }), "prime_zeta");
        expect(throws<DomainError>([&] { shifted_prime_zeta(s, 0.5, primes); }), "shifted_prime_zeta");
        expect(throws<DomainError>([&] { l_function(s, chi4); }), "l_function");
        expect(throws<DomainError>([&] { prime_character_sum(s, chi4, primes); }), "prime_character_sum");
        expect(throws<DomainError>([&] { truncated_weighted_series(fn::one(), s, 100, SeriesWeight::omega, sieve); }),
               "truncated_weighted_series");
        for (const auto& [id, name] : kSeriesIdentityNames) {
            SeriesParams p;
            p.chi = chi4;
            p.spec = fn::one();
            expect(throws<DomainError>([&] { closed_form_series(id, s, p, primes); }), std::string(name));
        }
    }
    for (double k : {0.5, 1.0, 2.0}) {
        SeriesParams p;
        p.k = k;
        for (double s : {1.0 + k, 1.0 + k - 0.25}) {
            expect(throws<DomainError>([&] { closed_form_series(SeriesIdentity::jordan, s, p, primes); }), "jordan");
            expect(throws<DomainError>([&] { closed_form_series(SeriesIdentity::sigmaK, s, p, primes); }), "sigmaK");
            expect(throws<DomainError>([&] { jordan_prime_sum(s, k, primes); }), "jordan_prime_sum");
        }
    }
    for (Complex a : {Complex(2.0), Complex(-2.0), Complex(0.0, 2.0), Complex(1.5, 1.5)})
        expect(throws<DomainError>([&] { shifted_prime_zeta(2.0, a, primes); }), "shifted_prime_zeta |a|>=2");
    expect(throws<SingularInputError>([&] { closed_form(IdentityId::finite1, factorize(6, sieve), fn::one()); }),
           "finite1 f(p)=1");
    expect(throws<SingularInputError>(
               [&] { closed_form(IdentityId::finite1, factorize(10, sieve), fn::totient()); }),
           "finite1 phi(2)=1");
    auto minus_one = FnSpec::from_rule("a_p=-1", nullptr, [](std::uint64_t p, unsigned m) {
        return m == 1 ? -Complex(static_cast<double>(p * p)) : Complex(0.0);
    });
    expect(throws<SingularInputError>([&] { compute_ap(minus_one, 3, 2.0); }), "compute_ap a_p=-1");

    std::ostringstream msg;
    msg << "domain, shift, singular-input guards";
    if (!missed.empty()) {
        msg << "; not rejected:";
        for (const auto& m : missed) msg << " " << m;
    }
    report(6, missed.empty(), msg.str());
}

} // namespace

int main() {
    criterion_exact_suite();
    criterion_symmetric_kernel();
    const SpfSieve sieve(1'000'000);
    const PrimeTable primes(1'000'000);
    criterion_series_suite(sieve, primes);
    criterion_convergence_trend(sieve, primes);
    criterion_special_values(primes);
    criterion_guards(sieve, primes);
    std::printf("%d of 6 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
