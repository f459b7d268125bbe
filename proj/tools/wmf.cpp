// wmf: expand canonical basis elements and run the congruence verification suites.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wmf/basis.hpp"
#include "wmf/cache.hpp"
#include "wmf/verify.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct ExpandArgs {
    int level = 0;
    int weight = 0;
    long m = 0;
    long terms = 20;
    std::string family = "M";
    std::string format = "csv";
    std::string cache_dir;
};

struct VerifyArgs {
    std::string suite;
    std::optional<int> level;
    std::optional<long> prime;
    std::optional<int> alpha_max, beta_max;
    std::optional<long> mprime_max, nprime_max;
    std::optional<int> k_min, k_max;
    std::optional<long> m_max, n_max;
    std::optional<long> terms;
};

int run_expand(const ExpandArgs& a) {
    const wmf::TowerKey key{a.level, a.weight, wmf::parse_family(a.family)};
    std::optional<std::filesystem::path> dir =
        a.cache_dir.empty() ? wmf::cache::default_dir() : std::optional<std::filesystem::path>(a.cache_dir);
    const wmf::QSeries s = wmf::cache::cached_series(dir, key, a.m, a.terms);

    const std::string fam(wmf::family_tag(key.family));
    if (a.format == "csv") std::cout << "level,weight,family,m,n,coefficient\n";
    for (wmf::Exponent n = s.valuation(); n <= s.precision(); ++n) {
        const wmf::Rational& c = s.coefficient(n);
        if (sgn(c) == 0) continue;
        if (a.format == "csv") {
            std::cout << a.level << ',' << a.weight << ',' << fam << ',' << a.m << ',' << n << ','
                      << wmf::to_decimal(c) << '\n';
        } else {
            nlohmann::ordered_json j;
            j["level"] = a.level;
            j["weight"] = a.weight;
            j["family"] = fam;
            j["m"] = a.m;
            j["n"] = n;
            j["coefficient"] = wmf::to_decimal(c);
            std::cout << j.dump() << '\n';
        }
    }
    return kPass;
}

std::vector<int> levels_or(const VerifyArgs& a, std::vector<int> all) {
    if (a.level) return {*a.level};
    return all;
}

wmf::verify::Grid residue_grid(const VerifyArgs& a, long p, int ab_default, long prime_default, bool prefix) {
    wmf::verify::Grid g;
    g.alpha_max = a.alpha_max.value_or(ab_default);
    g.beta_max = a.beta_max.value_or(ab_default);
    auto pick = [&](const std::optional<long>& max) {
        if (max) return wmf::verify::coprime_up_to(p, *max);
        return prefix ? wmf::verify::coprime_prefix(p, static_cast<std::size_t>(prime_default))
                      : wmf::verify::coprime_up_to(p, prime_default);
    };
    g.mprimes = pick(a.mprime_max);
    g.nprimes = pick(a.nprime_max);
    g.precision = a.terms.value_or(300);
    return g;
}

wmf::SweepResult run_suite(const std::string& suite, const VerifyArgs& a) {
    using namespace wmf::verify;
    wmf::SweepResult out;
    if (suite == "duality") {
        for (int n : levels_or(a, {8, 9, 16, 25}))
            out.append(check_duality(n, a.k_min.value_or(-8), a.k_max.value_or(8), 1, a.m_max.value_or(20), 1,
                                     a.n_max.value_or(20)));
    } else if (suite == "main") {
        for (int n : levels_or(a, {8, 9, 16, 25}))
            out.append(check_main_congruences(n, residue_grid(a, wmf::level_data(n).prime, 3, 4, true)));
    } else if (suite == "prior") {
        for (int n : levels_or(a, {2, 3, 4, 5, 7, 13}))
            out.append(check_prior_congruences(n, residue_grid(a, wmf::level_data(n).prime, 2, 4, true)));
    } else if (suite == "griffin") {
        std::vector<long> primes{2, 3, 5, 7};
        if (a.prime) primes = {*a.prime};
        for (long p : primes) out.append(check_griffin(p, residue_grid(a, p, 2, 10, false)));
    } else if (suite == "griffin-ext") {
        for (int n : levels_or(a, {2, 3, 4, 5, 7, 8, 9, 16, 25}))
            out.append(check_griffin_extension(n, residue_grid(a, wmf::level_data(n).prime, 3, 10, false)));
    } else if (suite == "uv") {
        out.append(check_uv_lemma(a.m_max.value_or(10), a.terms.value_or(25)));
    } else if (suite == "identities") {
        std::vector<long> primes{2, 3, 5, 7};
        if (a.prime) primes = {*a.prime};
        out.append(check_j_identities(primes, a.terms.value_or(50)));
    } else if (suite == "f01") {
        out.append(check_f01(a.terms.value_or(50)));
        out.append(check_fm_lemma(a.m_max.value_or(10), a.terms.value_or(50)));
    } else if (suite == "lehner") {
        out.append(check_lehner(8, 5, 3, 2, a.terms.value_or(300)));
    } else if (suite == "theta-span") {
        for (int n : levels_or(a, {8, 9, 16, 25})) out.append(check_theta_span(n, a.m_max.value_or(15), a.terms.value_or(50)));
    } else {
        throw std::invalid_argument("unknown suite '" + suite + "'");
    }
    return out;
}

int run_verify(const VerifyArgs& a) {
    static const std::vector<std::string> all{"lehner", "identities", "duality", "main",        "prior",
                                              "griffin", "griffin-ext", "uv",     "f01",         "theta-span"};
    std::vector<std::string> suites{a.suite};
    if (a.suite == "all") suites = all;

    bool ok = true;
    for (const auto& s : suites) {
        wmf::SweepResult r = run_suite(s, a);
        for (const auto& rep : r.reports) std::cout << wmf::to_json(rep).dump() << '\n';
        std::cout.flush();
        std::cerr << s << ": " << r.reports.size() << " claims, " << r.failures() << " failed, " << r.out_of_range
                  << " grid points beyond precision\n";
        ok = ok && r.all_pass();
    }
    return ok ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Canonical bases of weakly holomorphic modular forms and their congruences"};
    app.require_subcommand(1);

    ExpandArgs ex;
    auto* expand = app.add_subcommand("expand", "print the coefficients of one basis element");
    expand->add_option("--level", ex.level, "level N")->required();
    expand->add_option("--weight", ex.weight, "even weight k")->required();
    expand->add_option("--m", ex.m, "pole order m")->required();
    expand->add_option("--terms", ex.terms, "highest exponent printed")->capture_default_str();
    expand->add_option("--family", ex.family, "M (f_{k,m}) or S (g_{k,m})")
        ->check(CLI::IsMember({"M", "S"}))
        ->capture_default_str();
    expand->add_option("--format", ex.format, "csv or json-lines")
        ->check(CLI::IsMember({"csv", "json-lines"}))
        ->capture_default_str();
    expand->add_option("--cache-dir", ex.cache_dir, "coefficient cache directory (default $WMF_CACHE_DIR)");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "check a family of claims and stream one JSON report per claim");
    verify->add_option("suite", va.suite, "suite name")
        ->required()
        ->check(CLI::IsMember({"duality", "main", "prior", "griffin", "griffin-ext", "uv", "identities", "f01",
                               "lehner", "theta-span", "all"}));
    verify->add_option("--level", va.level, "restrict to one level");
    verify->add_option("--prime", va.prime, "restrict griffin/identities to one prime");
    verify->add_option("--alpha-max", va.alpha_max);
    verify->add_option("--beta-max", va.beta_max);
    verify->add_option("--mprime-max", va.mprime_max, "m' ranges over integers up to this, coprime to p");
    verify->add_option("--nprime-max", va.nprime_max, "n' ranges over integers up to this, coprime to p");
    verify->add_option("--k-min", va.k_min);
    verify->add_option("--k-max", va.k_max);
    verify->add_option("--m-max", va.m_max);
    verify->add_option("--n-max", va.n_max);
    verify->add_option("--terms", va.terms, "series precision T");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*expand) return run_expand(ex);
        return run_verify(va);
    } catch (const std::exception& e) {
        std::cerr << "wmf: " << e.what() << '\n';
        return kUsage;
    }
}
