#pragma once

// Command-line front end. run_cli() is the whole program; main() only
// forwards argv and the standard streams, so tests drive it in-process.
//
// Exit codes: 0 all checks pass, 1 an identity check failed, 2 usage,
// domain or capacity error.

#include <CLI11.hpp>
#include <json.hpp>

#include <complex>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "omega_sums/omega_sums.hpp"

namespace omega_sums::cli {

inline constexpr const char* kSchema = "omega-sums/1";

enum class OutputFormat { json, csv, text };

struct CliConfig {
    std::uint64_t sieve_limit = 1'000'000;
    std::uint64_t prime_limit = 1'000'000;
    double tol = 1e-9;
    double accept_tol = 1e-3;
    OutputFormat format = OutputFormat::json;
    unsigned workers = 1;

    void validate() const {
        if (sieve_limit < 2) throw DomainError("sieve limit must be at least 2");
        if (sieve_limit > kMaxSieveLimit) throw CapacityError("sieve limit exceeds " + std::to_string(kMaxSieveLimit));
        if (prime_limit < 2) throw DomainError("prime limit must be at least 2");
        if (!(tol > 0.0) || !(accept_tol > 0.0)) throw DomainError("tolerances must be positive");
        if (!(tol < accept_tol)) throw DomainError("tol must be smaller than accept-tol");
        if (workers == 0) throw DomainError("workers must be positive");
    }
};

/// Parses "2", "2.5", "2+1i", "-0.5i", "3-2i".
inline Complex parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (c != ' ') s += c;
    if (s.empty()) throw DomainError("empty complex number");
    if (s.back() != 'i') return {std::stod(s), 0.0};
    s.pop_back();
    // split at the last sign that is not an exponent sign or leading
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    auto imag_of = [](const std::string& part) {
        if (part.empty() || part == "+") return 1.0;
        if (part == "-") return -1.0;
        return std::stod(part);
    };
    if (split == std::string::npos) return {0.0, imag_of(s)};
    return {std::stod(s.substr(0, split)), imag_of(s.substr(split))};
}

inline std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

inline nlohmann::json complex_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

/// Builtin function by CLI name; k is complex for the series path.
inline FnSpec fn_from_name(const std::string& name, Complex k, const std::optional<CharacterTable>& chi) {
    if (name == "one") return fn::one();
    if (name == "power") return fn::power(k);
    if (name == "inverse-power") return fn::inverse_power(k);
    if (name == "mobius") return fn::mobius();
    if (name == "abs-mobius") return fn::abs_mobius();
    if (name == "liouville") return fn::liouville();
    if (name == "totient") return fn::totient();
    if (name == "jordan") return fn::jordan(k);
    if (name == "psi") return fn::dedekind_psi();
    if (name == "sigma") return fn::sigma(k);
    if (name == "d") return fn::divisor_count();
    if (name == "d-square") return fn::divisor_count_of_square();
    if (name == "d-squared") return fn::divisor_count_squared();
    if (name == "two-omega") return fn::two_pow_omega();
    if (name == "chi") {
        if (!chi) throw DomainError("function chi needs --q and --chi");
        return fn::character(*chi);
    }
    throw DomainError("unknown function '" + name + "'");
}

inline CharacterTable pick_character(unsigned q, unsigned index) {
    auto chars = build_characters(q);
    if (index >= chars.size())
        throw DomainError("character index " + std::to_string(index) + " out of range: modulus " + std::to_string(q) +
                          " has " + std::to_string(chars.size()) + " characters");
    return chars[index];
}

struct Options {
    CliConfig config;
    std::string format_name = "json";

    std::uint64_t factor_n = 0;

    std::string identity;
    std::uint64_t n_min = 1;
    std::uint64_t n_max = 1000;
    std::string f_name = "one";
    std::string k_text = "1";
    unsigned q = 4;
    unsigned chi_index = 1;

    std::string s_text = "2";
    std::uint64_t series_n = 1'000'000;
    double sigma_floor = 1.0;

    std::string table_fn;
    std::optional<std::uint64_t> table_n_max;
    std::vector<std::string> s_list;
    std::string a_text = "0";
};

namespace detail {

inline int cmd_factor(const Options& o, std::ostream& out) {
    const auto& cfg = o.config;
    if (o.factor_n == 0) throw DomainError("cannot factor 0");
    if (o.factor_n > cfg.sieve_limit)
        throw CapacityError("n = " + std::to_string(o.factor_n) + " exceeds sieve limit " +
                            std::to_string(cfg.sieve_limit));
    SpfSieve sieve(std::max<std::uint64_t>(o.factor_n, 2));
    FactoredInteger f = factorize(o.factor_n, sieve);
    switch (cfg.format) {
        case OutputFormat::json: {
            nlohmann::json factors = nlohmann::json::array();
            for (const auto& pp : f.factors) factors.push_back({pp.prime, pp.exponent});
            nlohmann::json j = {{"schema", kSchema}, {"n", f.n},           {"factors", factors},
                                {"omega", omega(f)}, {"mu", mobius(f)}, {"lambda", liouville(f)}};
            out << j.dump() << "\n";
            break;
        }
        case OutputFormat::csv: {
            out << "n,factors,omega,mu,lambda\n" << f.n << ",";
            for (std::size_t i = 0; i < f.factors.size(); ++i)
                out << (i ? " " : "") << f.factors[i].prime << "^" << f.factors[i].exponent;
            out << "," << omega(f) << "," << mobius(f) << "," << liouville(f) << "\n";
            break;
        }
        case OutputFormat::text: {
            out << f.n << " =";
            if (f.factors.empty()) out << " 1";
            for (std::size_t i = 0; i < f.factors.size(); ++i)
                out << (i ? " *" : "") << " " << f.factors[i].prime << "^" << f.factors[i].exponent;
            out << "  omega=" << omega(f) << " mu=" << mobius(f) << " lambda=" << liouville(f) << "\n";
            break;
        }
    }
    return 0;
}

inline long parse_integer_k(const std::string& text) {
    Complex k = parse_complex(text);
    if (k.imag() != 0.0 || std::floor(k.real()) != k.real())
        throw DomainError("divisor identities take an integer k, got '" + text + "'");
    return static_cast<long>(k.real());
}

inline int cmd_verify_divisor(const Options& o, std::ostream& out) {
    const auto& cfg = o.config;
    auto id = identity_from_string(o.identity);
    if (!id) throw DomainError("unknown divisor identity '" + o.identity + "'");
    if (o.n_min == 0 || o.n_max < o.n_min) throw DomainError("need 1 <= n-min <= n-max");
    if (o.n_max > cfg.sieve_limit)
        throw CapacityError("n-max " + std::to_string(o.n_max) + " exceeds sieve limit " +
                            std::to_string(cfg.sieve_limit));
    const long k = parse_integer_k(o.k_text);
    std::optional<CharacterTable> chi;
    if (o.f_name == "chi") chi = pick_character(o.q, o.chi_index);
    FnSpec spec = fn_from_name(o.f_name, static_cast<double>(k), chi);
    SpfSieve sieve(std::max<std::uint64_t>(o.n_max, 2));

    VerifySummary summary;
    nlohmann::json failures = nlohmann::json::array();
    std::vector<std::string> failure_lines;
    if (*id == IdentityId::finite4) {
        auto bad = verify_finite4_fast(o.n_min, o.n_max, sieve, &summary);
        for (std::size_t i = 0; i < bad.size() && i < 20; ++i) {
            auto f = factorize(bad[i], sieve);
            failures.push_back({{"n", bad[i]},
                                {"lhs", std::to_string(abs_mu_omega_divisor_sum(f))},
                                {"rhs", closed_form(IdentityId::finite4, f, spec).to_string()}});
        }
    } else {
        auto reports = verify_identity(*id, o.n_min, o.n_max, sieve, spec, k, cfg.workers);
        summary = summarize(reports);
        for (const auto& r : reports) {
            if (r.skipped() || r.equal) continue;
            if (failures.size() >= 20) break;
            failures.push_back({{"n", r.n}, {"lhs", r.lhs->to_string()}, {"rhs", r.rhs->to_string()}});
        }
    }

    switch (cfg.format) {
        case OutputFormat::json: {
            nlohmann::json j = {{"schema", kSchema},        {"identity", o.identity},  {"nMin", o.n_min},
                                {"nMax", o.n_max},          {"checked", summary.checked}, {"failed", summary.failed},
                                {"skipped", summary.skipped}, {"failures", failures}};
            if (uses_function(*id)) j["f"] = o.f_name;
            if (uses_k(*id)) j["k"] = k;
            out << j.dump() << "\n";
            break;
        }
        case OutputFormat::csv:
            out << "identity,checked,failed,skipped\n"
                << o.identity << "," << summary.checked << "," << summary.failed << "," << summary.skipped << "\n";
            break;
        case OutputFormat::text:
            out << o.identity << ": checked " << summary.checked << ", failed " << summary.failed << ", skipped "
                << summary.skipped << "\n";
            for (const auto& f : failures)
                out << "  n=" << f["n"] << " lhs=" << f["lhs"].get<std::string>()
                    << " rhs=" << f["rhs"].get<std::string>() << "\n";
            break;
    }
    return summary.failed == 0 ? 0 : 1;
}

inline SeriesParams series_params(const Options& o, SeriesIdentity id) {
    SeriesParams params;
    params.k = parse_complex(o.k_text);
    params.sigma_floor = o.sigma_floor;
    if (id == SeriesIdentity::dirichletChi || o.f_name == "chi") params.chi = pick_character(o.q, o.chi_index);
    if (is_generic(id)) params.spec = fn_from_name(o.f_name, params.k, params.chi);
    return params;
}

inline int cmd_verify_series(const Options& o, std::ostream& out) {
    const auto& cfg = o.config;
    auto id = series_identity_from_string(o.identity);
    if (!id) throw DomainError("unknown series identity '" + o.identity + "'");
    ComplexS s(parse_complex(o.s_text));
    if (o.series_n == 0) throw DomainError("N must be positive");
    if (o.series_n > cfg.sieve_limit)
        throw CapacityError("N = " + std::to_string(o.series_n) + " exceeds sieve limit " +
                            std::to_string(cfg.sieve_limit));
    SeriesParams params = series_params(o, *id);
    // Domain check before any sieving.
    const double floor = abscissa(*id, params);
    if (!(s.sigma > floor))
        throw DomainError(o.identity + ": requires Re s > " + format_double(floor) + ", got " + format_double(s.sigma));

    PrimeTable primes(cfg.prime_limit);
    SeriesResult closed = closed_form_series(*id, s, params, primes, cfg.tol);
    SpfSieve sieve(std::max<std::uint64_t>(o.series_n, 2));
    OracleSetup setup = oracle_setup(*id, params);
    SeriesResult oracle = truncated_weighted_series(setup.spec, s, o.series_n, setup.weight, sieve, cfg.workers, floor);
    const double diff = std::abs(oracle.value - closed.value);
    const bool pass = diff <= cfg.accept_tol;

    switch (cfg.format) {
        case OutputFormat::json: {
            nlohmann::json j = {{"schema", kSchema},
                                {"identity", o.identity},
                                {"s", complex_json(s.value())},
                                {"N", o.series_n},
                                {"primeLimit", cfg.prime_limit},
                                {"oracle", complex_json(oracle.value)},
                                {"oracleTailBound", oracle.tail_bound},
                                {"closedForm", complex_json(closed.value)},
                                {"closedFormTailBound", closed.tail_bound},
                                {"closedFormHeuristic", closed.heuristic},
                                {"absDiff", diff},
                                {"bound", cfg.accept_tol},
                                {"pass", pass}};
            out << j.dump() << "\n";
            break;
        }
        case OutputFormat::csv:
            out << "identity,s_re,s_im,N,oracle_re,oracle_im,closed_re,closed_im,abs_diff,bound,pass\n"
                << o.identity << "," << format_double(s.sigma) << "," << format_double(s.t) << "," << o.series_n << ","
                << format_double(oracle.value.real()) << "," << format_double(oracle.value.imag()) << ","
                << format_double(closed.value.real()) << "," << format_double(closed.value.imag()) << ","
                << format_double(diff) << "," << format_double(cfg.accept_tol) << "," << (pass ? "true" : "false")
                << "\n";
            break;
        case OutputFormat::text:
            out << o.identity << " at s=" << o.s_text << ": oracle " << format_double(oracle.value.real()) << " "
                << format_double(oracle.value.imag()) << "i, closed form " << format_double(closed.value.real())
                << " " << format_double(closed.value.imag()) << "i, |diff| " << format_double(diff)
                << (pass ? " <= " : " > ") << format_double(cfg.accept_tol) << (pass ? " PASS" : " FAIL") << "\n";
            break;
    }
    return pass ? 0 : 1;
}

inline bool is_n_table(const std::string& name) {
    static const std::vector<std::string> names = {"omega",   "big-omega", "mobius",   "liouville", "radical",
                                                   "jordan",  "totient",   "psi",      "sigma",     "d",
                                                   "d-square", "d-squared", "two-omega", "power",   "inverse-power"};
    return std::find(names.begin(), names.end(), name) != names.end();
}

inline std::string n_table_value(const std::string& name, const FactoredInteger& f, long k) {
    if (name == "omega") return std::to_string(omega(f));
    if (name == "big-omega") return std::to_string(big_omega(f));
    if (name == "mobius") return std::to_string(mobius(f));
    if (name == "liouville") return std::to_string(liouville(f));
    if (name == "radical") return std::to_string(radical(f).n);
    if (name == "jordan") return jordan_totient(k, f).to_string();
    return eval_exact(fn_from_name(name, static_cast<double>(k), std::nullopt), f).to_string();
}

inline int cmd_table(const Options& o, std::ostream& out) {
    const auto& cfg = o.config;
    const std::string& name = o.table_fn;
    if (is_n_table(name)) {
        if (!o.table_n_max) throw DomainError("table " + name + " needs --n-max");
        std::uint64_t n_max = *o.table_n_max;
        if (n_max == 0) throw DomainError("n-max must be positive");
        if (n_max > cfg.sieve_limit) throw CapacityError("n-max exceeds sieve limit");
        const long k = parse_integer_k(o.k_text);
        SpfSieve sieve(std::max<std::uint64_t>(n_max, 2));
        std::vector<std::string> values;
        values.reserve(n_max);
        for (std::uint64_t n = 1; n <= n_max; ++n) values.push_back(n_table_value(name, factorize(n, sieve), k));
        switch (cfg.format) {
            case OutputFormat::json: {
                nlohmann::json rows = nlohmann::json::array();
                for (std::uint64_t n = 1; n <= n_max; ++n) rows.push_back({{"n", n}, {"value", values[n - 1]}});
                out << nlohmann::json{{"schema", kSchema}, {"function", name}, {"rows", rows}}.dump() << "\n";
                break;
            }
            case OutputFormat::csv:
                out << "n,value\n";
                for (std::uint64_t n = 1; n <= n_max; ++n) out << n << "," << values[n - 1] << "\n";
                break;
            case OutputFormat::text:
                for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << values[i];
                out << "\n";
                break;
        }
        return 0;
    }

    if (o.s_list.empty()) throw DomainError("table " + name + " needs --s-list (or --n-max for arithmetic functions)");
    std::vector<std::pair<Complex, SeriesResult>> rows;
    std::optional<PrimeTable> primes;
    auto get_primes = [&]() -> const PrimeTable& {
        if (!primes) primes.emplace(cfg.prime_limit);
        return *primes;
    };
    for (const auto& text : o.s_list) {
        ComplexS s(parse_complex(text));
        SeriesResult r;
        if (name == "zeta") {
            r = zeta(s, cfg.tol);
        } else if (name == "prime-zeta") {
            r = prime_zeta(s, get_primes(), cfg.tol);
        } else if (name == "shifted-prime-zeta") {
            r = shifted_prime_zeta(s, parse_complex(o.a_text), get_primes(), cfg.tol);
        } else if (name == "l-function") {
            r = l_function(s, pick_character(o.q, o.chi_index), cfg.tol);
        } else if (auto id = series_identity_from_string(name)) {
            r = closed_form_series(*id, s, series_params(o, *id), get_primes(), cfg.tol);
        } else {
            throw DomainError("unknown table function '" + name + "'");
        }
        rows.emplace_back(s.value(), r);
    }
    switch (cfg.format) {
        case OutputFormat::json: {
            nlohmann::json j_rows = nlohmann::json::array();
            for (const auto& [s, r] : rows)
                j_rows.push_back({{"s", complex_json(s)},
                                  {"value", complex_json(r.value)},
                                  {"tailBound", r.tail_bound},
                                  {"converged", r.converged}});
            out << nlohmann::json{{"schema", kSchema}, {"function", name}, {"rows", j_rows}}.dump() << "\n";
            break;
        }
        case OutputFormat::csv:
            out << "s_re,s_im,value_re,value_im,tail_bound\n";
            for (const auto& [s, r] : rows)
                out << format_double(s.real()) << "," << format_double(s.imag()) << "," << format_double(r.value.real())
                    << "," << format_double(r.value.imag()) << "," << format_double(r.tail_bound) << "\n";
            break;
        case OutputFormat::text:
            for (const auto& [s, r] : rows)
                out << "s=" << format_double(s.real()) << (s.imag() < 0 ? "" : "+") << format_double(s.imag())
                    << "i value=" << format_double(r.value.real()) << (r.value.imag() < 0 ? "" : "+")
                    << format_double(r.value.imag()) << "i tail<=" << format_double(r.tail_bound) << "\n";
            break;
    }
    return 0;
}

} // namespace detail

/// Runs the CLI on argv. Data goes to `out`, diagnostics to `err`.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Exact and numerical checks of omega(n)-weighted divisor sums and Dirichlet series",
                 "omega-sums"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--sieve-limit", o.config.sieve_limit, "Largest n that may be factored")
        ->envname("OMEGASUMS_SIEVE_LIMIT")
        ->capture_default_str();
    app.add_option("--prime-limit", o.config.prime_limit, "Primes summed directly in closed forms")
        ->capture_default_str();
    app.add_option("--tol", o.config.tol, "Tolerance for closed-form factors")
        ->envname("OMEGASUMS_TOL")
        ->capture_default_str();
    app.add_option("--accept-tol", o.config.accept_tol, "Acceptance bound for oracle vs closed form")
        ->capture_default_str();
    app.add_option("--format", o.format_name, "Output format")
        ->envname("OMEGASUMS_FORMAT")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    app.add_option("--workers", o.config.workers, "Worker threads")->capture_default_str();

    auto* factor = app.add_subcommand("factor", "Factor n and report omega, mu, lambda");
    factor->add_option("n", o.factor_n)->required();

    auto* vdiv = app.add_subcommand("verify-divisor", "Check a divisor-sum identity exactly for a range of n");
    vdiv->add_option("identity", o.identity)->required();
    vdiv->add_option("--n-min", o.n_min)->capture_default_str();
    vdiv->add_option("--n-max", o.n_max)->capture_default_str();
    vdiv->add_option("--f", o.f_name, "Function for finite1/finitecor1/finite2/finite2cor/multApostol")
        ->capture_default_str();
    vdiv->add_option("--k", o.k_text)->capture_default_str();
    vdiv->add_option("--q", o.q, "Character modulus for --f chi")->capture_default_str();
    vdiv->add_option("--chi", o.chi_index, "Character index (0 = principal)")->capture_default_str();

    auto* vser = app.add_subcommand("verify-series", "Compare a truncated Dirichlet series with its closed form");
    vser->add_option("identity", o.identity)->required();
    vser->add_option("--s", o.s_text, "s, e.g. 2, 2.5 or 2+1i")->capture_default_str();
    vser->add_option("--N", o.series_n, "Truncation point of the n-sum")->capture_default_str();
    vser->add_option("--k", o.k_text)->capture_default_str();
    vser->add_option("--f", o.f_name, "Function for the generic identities")->capture_default_str();
    vser->add_option("--q", o.q)->capture_default_str();
    vser->add_option("--chi", o.chi_index)->capture_default_str();
    vser->add_option("--sigma-floor", o.sigma_floor, "Abscissa for the generic identities")->capture_default_str();

    auto* table = app.add_subcommand("table", "Tabulate an arithmetic function or a series value");
    table->add_option("function", o.table_fn)->required();
    table->add_option("--n-max", o.table_n_max);
    table->add_option("--s-list", o.s_list)->delimiter(',');
    table->add_option("--k", o.k_text)->capture_default_str();
    table->add_option("--a", o.a_text, "Shift for shifted-prime-zeta")->capture_default_str();
    table->add_option("--f", o.f_name)->capture_default_str();
    table->add_option("--q", o.q)->capture_default_str();
    table->add_option("--chi", o.chi_index)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        o.config.format = o.format_name == "csv"    ? OutputFormat::csv
                          : o.format_name == "text" ? OutputFormat::text
                                                    : OutputFormat::json;
        o.config.validate();
        if (factor->parsed()) return detail::cmd_factor(o, out);
        if (vdiv->parsed()) return detail::cmd_verify_divisor(o, out);
        if (vser->parsed()) return detail::cmd_verify_series(o, out);
        if (table->parsed()) return detail::cmd_table(o, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: invalid number: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace omega_sums::cli
