#ifndef WMF_REPORT_HPP
#define WMF_REPORT_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "rational.hpp"
#include "series.hpp"

namespace wmf {

/// How a claim is decided.
///  - Valuation: the examined integer is divisible by prime^exponent.
///  - Residue:   the examined integer is congruent to `residue` mod `modulus`.
///  - Exact:     the examined value equals `residue` exactly.
enum class ClaimKind { Valuation, Residue, Exact };

inline const char* kind_tag(ClaimKind k) {
    switch (k) {
        case ClaimKind::Valuation: return "valuation";
        case ClaimKind::Residue: return "residue";
        default: return "exact";
    }
}

struct CongruenceClaim {
    std::string theorem;  // T1 T2 T3 T4 T5 T7 Lehner L5.1 J-ID F01 FM-LEMMA DUALITY THETA-SPAN
    int level = 0;
    std::string label;    // which case line of the theorem
    std::string reading;  // "printed" or "corrected" for dual-checked lines, else empty
    ClaimKind kind = ClaimKind::Exact;
    std::optional<int> alpha, beta;
    std::optional<long> mprime, nprime, k, m, n;
    unsigned long prime = 0;     // Valuation claims
    unsigned long exponent = 0;  // Valuation claims: modulus = prime^exponent
    Integer modulus = 0;         // Valuation and Residue claims
    Rational residue = 0;        // Residue claims: asserted residue in [0, modulus); Exact: asserted value
    std::string side_condition;

    auto sort_key() const {
        return std::make_tuple(theorem, level, label, reading, alpha.value_or(-1), beta.value_or(-1),
                               mprime.value_or(0), nprime.value_or(0), k.value_or(0), m.value_or(0), n.value_or(0));
    }
};

struct CongruenceReport {
    CongruenceClaim claim;
    Rational value = 0;           // the coefficient (or combination) examined
    Integer residue_found = 0;    // value mod modulus, for Valuation and Residue claims
    PadicValuation valuation;     // v_p(value) when a prime is attached
    bool pass = false;
    Exponent precision = 0;
    std::string note;

    /// Re-derives the verdict from the stored value alone.
    bool recompute_verdict() const {
        switch (claim.kind) {
            case ClaimKind::Valuation:
                return is_integral(value) && padic_val(value, claim.prime).at_least(claim.exponent);
            case ClaimKind::Residue:
                return is_integral(value) &&
                       mod_floor(value.get_num() - Integer(claim.residue.get_num()), claim.modulus) == 0;
            default: return value == claim.residue;
        }
    }
};

/// Fills the derived fields of a report from claim + value.
inline CongruenceReport judge(CongruenceClaim claim, Rational value, Exponent precision, std::string note = {}) {
    CongruenceReport r;
    r.claim = std::move(claim);
    r.value = std::move(value);
    r.precision = precision;
    r.note = std::move(note);
    if (r.claim.kind != ClaimKind::Exact && is_integral(r.value)) {
        r.residue_found = mod_floor(r.value.get_num(), r.claim.modulus);
        if (r.claim.prime >= 2) r.valuation = padic_val(r.value, r.claim.prime);
    }
    r.pass = r.recompute_verdict();
    if (r.claim.kind == ClaimKind::Valuation && sgn(r.value) == 0)
        r.note += r.note.empty() ? "exact zero" : "; exact zero";
    return r;
}

/// Reports of one suite. Grid points whose coefficient indices exceed the
/// precision budget are counted, not silently dropped.
struct SweepResult {
    std::vector<CongruenceReport> reports;
    std::size_t out_of_range = 0;

    void append(SweepResult other) {
        reports.insert(reports.end(), std::make_move_iterator(other.reports.begin()),
                       std::make_move_iterator(other.reports.end()));
        out_of_range += other.out_of_range;
    }
    std::size_t failures() const {
        return static_cast<std::size_t>(
            std::count_if(reports.begin(), reports.end(), [](const CongruenceReport& r) { return !r.pass; }));
    }
    bool all_pass() const { return failures() == 0; }
    void sort() {
        std::stable_sort(reports.begin(), reports.end(), [](const CongruenceReport& a, const CongruenceReport& b) {
            return a.claim.sort_key() < b.claim.sort_key();
        });
    }
};

/// One report as a flat key-value object with a fixed key order.
inline nlohmann::ordered_json to_json(const CongruenceReport& r) {
    nlohmann::ordered_json j;
    const auto& c = r.claim;
    auto opt = [](const auto& o) { return o ? nlohmann::ordered_json(*o) : nlohmann::ordered_json(nullptr); };
    j["theorem"] = c.theorem;
    j["level"] = c.level;
    j["case"] = c.label;
    j["reading"] = c.reading.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(c.reading);
    j["kind"] = kind_tag(c.kind);
    j["alpha"] = opt(c.alpha);
    j["beta"] = opt(c.beta);
    j["mprime"] = opt(c.mprime);
    j["nprime"] = opt(c.nprime);
    j["k"] = opt(c.k);
    j["m"] = opt(c.m);
    j["n"] = opt(c.n);
    j["modulus"] = c.kind == ClaimKind::Exact ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(c.modulus.get_str());
    j["residue_asserted"] = to_decimal(c.residue);
    j["residue_found"] =
        c.kind == ClaimKind::Exact ? nlohmann::ordered_json(to_decimal(r.value)) : nlohmann::ordered_json(r.residue_found.get_str());
    j["valuation_found"] = c.prime >= 2 ? nlohmann::ordered_json(r.valuation.to_string()) : nlohmann::ordered_json(nullptr);
    j["verdict"] = r.pass ? "pass" : "fail";
    j["precision"] = r.precision;
    j["value"] = to_decimal(r.value);
    j["side_condition"] = c.side_condition;
    j["note"] = r.note;
    return j;
}

}  // namespace wmf

#endif
