// Acceptance run: one [PASS]/[FAIL] line per criterion, with indented detail
// lines underneath. Exit status is nonzero when any criterion fails.

#include <array>
#include <cstdio>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "support/properties.hpp"
#include "wmf/basis.hpp"
#include "wmf/eta.hpp"
#include "wmf/levels.hpp"
#include "wmf/verify.hpp"

#ifndef WMF_CLI_PATH
#error "WMF_CLI_PATH must name the built wmf executable"
#endif

using namespace wmf;
using namespace wmf::verify;

namespace {

int failures = 0;

void verdict(int id, bool ok, const std::string& title, const std::vector<std::string>& details = {}) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << id << ". " << title << '\n';
    for (const auto& d : details) std::cout << "       " << d << '\n';
    std::cout.flush();
    if (!ok) ++failures;
}

std::string counts(const SweepResult& r) {
    return std::to_string(r.reports.size()) + " claims, " + std::to_string(r.failures()) + " failed, " +
           std::to_string(r.out_of_range) + " grid points beyond precision";
}

Grid grid(long p, int ab, std::vector<long> primes, Exponent T) {
    Grid g;
    g.alpha_max = ab;
    g.beta_max = ab;
    g.mprimes = primes;
    g.nprimes = std::move(primes);
    g.precision = T;
    return g;
}

struct LineTally {
    int pass = 0;
    int fail = 0;
    int negated = 0;  // failures where the found residue is minus the asserted one
    std::set<std::pair<int, int>> failing_ab;
};

std::map<std::string, LineTally> tally(const SweepResult& r) {
    std::map<std::string, LineTally> out;
    for (const auto& rep : r.reports) {
        const auto& c = rep.claim;
        std::string key = "level " + std::to_string(c.level);
        if (c.level == 1) key += " p=" + std::to_string(c.prime);
        key += " [" + c.label + "]";
        if (!c.reading.empty()) key += " (" + c.reading + ")";
        auto& t = out[key];
        if (rep.pass) {
            ++t.pass;
            continue;
        }
        ++t.fail;
        if (c.modulus != 0 && mod_floor(rep.residue_found + Integer(c.residue.get_num()), c.modulus) == 0) ++t.negated;
        t.failing_ab.insert({c.alpha.value_or(-1), c.beta.value_or(-1)});
    }
    return out;
}

std::vector<std::string> tally_lines(const SweepResult& r, bool failing_only) {
    std::vector<std::string> lines;
    for (const auto& [key, t] : tally(r)) {
        if (failing_only && t.fail == 0) continue;
        std::ostringstream os;
        os << key << ": " << t.pass << " pass, " << t.fail << " fail";
        if (t.fail > 0) {
            os << "; failing (alpha,beta):";
            for (auto [a, b] : t.failing_ab) os << " (" << a << "," << b << ")";
            if (t.negated == t.fail) os << "; every failure has residue = -(asserted)";
        }
        lines.push_back(os.str());
    }
    return lines;
}

bool terms_match(const QSeries& s, std::vector<std::pair<Exponent, long>> terms, std::string* why) {
    std::map<Exponent, long> want(terms.begin(), terms.end());
    const Exponent top = want.rbegin()->first;
    for (Exponent n = want.begin()->first; n <= top; ++n) {
        auto it = want.find(n);
        const long w = it == want.end() ? 0 : it->second;
        if (s.coefficient(n) != w) {
            *why = "q^" + std::to_string(n) + ": got " + to_decimal(s.coefficient(n)) + ", printed " + std::to_string(w);
            return false;
        }
    }
    return true;
}

std::string run_cli(const std::string& args, int* status) {
    std::string out;
    FILE* pipe = popen((std::string(WMF_CLI_PATH) + " " + args + " 2>/dev/null").c_str(), "r");
    if (!pipe) return out;
    std::array<char, 1 << 16> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    const int st = pclose(pipe);
    *status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return out;
}

void criterion_golden() {
    struct Golden {
        std::string name;
        QSeries series;
        std::vector<std::pair<Exponent, long>> terms;
    };
    const std::vector<Golden> rows{
        {"psi(8)", hauptmodul(8, 3), {{-1, 1}, {0, -4}, {1, 4}, {3, 2}}},
        {"psi(9)", hauptmodul(9, 5), {{-1, 1}, {0, -3}, {2, 5}, {5, -7}}},
        {"S(8)", weight_raiser(8, 10), {{2, 1}, {6, 4}, {10, 6}}},
        {"S(9)", weight_raiser(9, 8), {{2, 1}, {5, 2}, {8, 5}}},
        {"S(16)", weight_raiser(16, 20), {{4, 1}, {12, 4}, {20, 6}}},
        {"S(25)", weight_raiser(25, 25), {{10, 1}, {15, 2}, {20, 5}, {25, 10}}},
        {"E2(25)", e2_25(16), {{4, 1}, {6, 1}, {9, 2}, {14, 3}, {16, 2}}},
    };
    bool ok = true;
    std::vector<std::string> details;
    for (const auto& g : rows) {
        std::string why;
        const bool m = terms_match(g.series, g.terms, &why);
        ok = ok && m;
        details.push_back(g.name + ": " + (m ? "every printed term matches" : why));
    }
    verdict(1, ok, "golden expansions of psi(8), psi(9), S(8), S(9), S(16), S(25), E2(25)", details);
}

void criterion_j() {
    const QSeries j = j_series(300);
    SweepResult r = check_lehner(4, 3, 1, 1, 300);
    const bool c0 = j.coefficient(0) == 744;
    verdict(2, c0 && r.all_pass(), "j has constant term 744 and the Lehner valuations hold",
            {"constant term " + to_decimal(j.coefficient(0)), "Lehner a<=4, b<=3, c<=1, d<=1: " + counts(r)});
}

void criterion_duality(BasisCache& cache) {
    SweepResult all;
    std::vector<std::string> details;
    for (int n : {8, 9, 16, 25}) {
        SweepResult r = check_duality(n, -8, 8, 1, 20, 1, 20, cache);
        details.push_back("level " + std::to_string(n) + ": " + counts(r));
        all.append(std::move(r));
    }
    verdict(3, all.all_pass(), "duality a_k(m,n) + b_{2-k}(n,m) = 0, even |k| <= 8, 1 <= m,n <= 20", details);
}

void criterion_main(BasisCache& cache) {
    SweepResult all;
    std::vector<std::string> details;
    for (int n : {8, 9, 16, 25}) {
        const long p = level_data(n).prime;
        SweepResult r = check_main_congruences(n, grid(p, 3, coprime_prefix(p, 4), 300), cache);
        details.push_back("level " + std::to_string(n) + ": " + counts(r));
        all.append(std::move(r));
    }
    verdict(4, all.all_pass() && !all.reports.empty(),
            "main congruences at levels 8, 9, 16, 25 (alpha,beta <= 3, first four m',n')", details);
}

void criterion_prior(BasisCache& cache) {
    SweepResult all;
    std::vector<std::string> details;
    for (int n : {2, 3, 4, 5, 7, 13}) {
        const long p = level_data(n).prime;
        SweepResult r = check_prior_congruences(n, grid(p, 2, coprime_prefix(p, 4), 300), cache);
        details.push_back("level " + std::to_string(n) + ": " + counts(r));
        all.append(std::move(r));
    }
    verdict(5, all.all_pass() && !all.reports.empty(),
            "prior congruences at levels 2, 3, 4, 5, 7, 13 (alpha,beta <= 2)", details);
}

void criterion_griffin(BasisCache& cache) {
    SweepResult all;
    for (long p : {2L, 3L, 5L, 7L}) all.append(check_griffin(p, grid(p, 2, coprime_up_to(p, 10), 300), cache));
    std::vector<std::string> details{counts(all)};
    for (auto& l : tally_lines(all, false)) details.push_back(l);
    // Printed lines decide the verdict; a corrected reading is reported alongside.
    bool ok = true;
    for (const auto& rep : all.reports)
        if (rep.claim.reading != "corrected") ok = ok && rep.pass;
    verdict(6, ok, "level-1 residues for p = 2, 3, 5, 7 (alpha,beta <= 2, m',n' <= 10)", details);
}

void criterion_griffin_ext(BasisCache& cache) {
    SweepResult all;
    for (int n : {2, 3, 4, 5, 7, 8, 9, 16, 25}) {
        const long p = level_data(n).prime;
        all.append(check_griffin_extension(n, grid(p, 3, coprime_up_to(p, 10), 300), cache));
    }
    std::vector<std::string> details{counts(all)};
    for (auto& l : tally_lines(all, true)) details.push_back(l);
    const auto t = tally(all);
    auto state = [&](const std::string& key) {
        auto it = t.find(key);
        if (it == t.end()) return std::string("no claims");
        return it->second.fail == 0 ? std::string("holds") : std::string("fails");
    };
    details.push_back("level 7 dual-checked line: printed reading " +
                      state("level 7 [0<beta-alpha<=3] (printed)") + ", corrected reading " +
                      state("level 7 [0<beta-alpha<=3] (corrected)"));
    details.push_back("level 8 line with a period read as a conjunction: " +
                      state("level 8 [alpha=beta!=0,m'n'=3(8)]"));
    verdict(7, all.all_pass(), "extended residues at levels 2, 3, 4, 5, 7, 8, 9, 16, 25 (alpha,beta <= 3, m',n' <= 10)",
            details);
}

void criterion_uv(BasisCache& cache) {
    SweepResult r = check_uv_lemma(10, 25, cache);
    verdict(8, r.all_pass(), "U/V lemma for (8,4), (9,3), (16,8), (25,5), m <= 10, to q^25", {counts(r)});
}

void criterion_identities() {
    SweepResult r = check_j_identities({2, 3, 5, 7}, 50);
    std::vector<std::string> details;
    bool printed_ok = true;
    for (const auto& rep : r.reports) {
        details.push_back("p=" + std::to_string(rep.claim.level) +
                          (rep.claim.reading.empty() ? "" : " (" + rep.claim.reading + ")") + ": " +
                          (rep.pass ? "holds" : "fails") + ", " + rep.note);
        if (rep.claim.reading != "corrected") printed_ok = printed_ok && rep.pass;
    }
    verdict(9, printed_ok, "the four printed j identities in psi(p), phi(p) hold to q^50", details);
}

void criterion_cross_level(BasisCache& cache) {
    SweepResult f = check_f01(50, cache);
    SweepResult fm = check_fm_lemma(10, 50, cache);
    verdict(10, f.all_pass() && fm.all_pass() && f.reports.size() == 9,
            "f_{0,1} congruences at nine levels and f_{0,m} congruences (m <= 10) on q^1..q^50",
            {"f_{0,1}: " + counts(f), "f_{0,m}: " + counts(fm)});
}

void criterion_properties(BasisCache& cache) {
    std::vector<std::pair<std::string, std::string>> results{
        {"ring axioms", props::ring_axioms(101, 400)},
        {"precision contract", props::precision_contract(102, 400)},
        {"U_p V_p = identity", props::u_after_v(103, 400)},
        {"theta Leibniz rule", props::theta_leibniz(104, 400)},
        {"canonical gap and integrality", props::canonical_elements(8, 20, 40, cache)},
        {"theta(f_{0,m}) = -m g_{2,m}, m <= 15", props::theta_span(15, 50, cache)},
    };
    bool ok = true;
    std::vector<std::string> details;
    for (const auto& [name, err] : results) {
        ok = ok && err.empty();
        details.push_back(name + ": " + (err.empty() ? "ok" : err));
    }
    verdict(11, ok, "property suites", details);
}

void criterion_determinism() {
    int s1 = -1, s2 = -1;
    const std::string a = run_cli("verify all", &s1);
    const std::string b = run_cli("verify all", &s2);
    const bool same = !a.empty() && a == b && s1 == s2;
    std::size_t lines = 0;
    for (char c : a) lines += c == '\n';
    verdict(12, same, "two runs of `verify all` produce identical report streams",
            {std::to_string(lines) + " report lines, " + std::to_string(a.size()) + " bytes, exit status " +
             std::to_string(s1) + " and " + std::to_string(s2)});
}

}  // namespace

int main() {
    BasisCache cache;
    try {
        criterion_golden();
        criterion_j();
        criterion_duality(cache);
        criterion_main(cache);
        criterion_prior(cache);
        criterion_griffin(cache);
        criterion_griffin_ext(cache);
        criterion_uv(cache);
        criterion_identities();
        criterion_cross_level(cache);
        criterion_properties(cache);
        criterion_determinism();
    } catch (const std::exception& e) {
        std::cout << "[FAIL] aborted: " << e.what() << '\n';
        return 2;
    }
    std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << '\n';
    return failures == 0 ? 0 : 1;
}
