#ifndef WMF_LEVELS_HPP
#define WMF_LEVELS_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "eta.hpp"
#include "series.hpp"

namespace wmf {

/// Requested level is not one of 1, 2, 3, 4, 5, 7, 8, 9, 13, 16, 25, or the
/// operation is not available at that level.
class UnsupportedLevel : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Integer polynomial, coefficients stored from the constant term up.
class IntPolynomial {
public:
    IntPolynomial() = default;
    IntPolynomial(std::initializer_list<long> low_to_high) {
        for (long c : low_to_high) coeffs_.emplace_back(c);
        trim();
    }
    explicit IntPolynomial(std::vector<Integer> low_to_high) : coeffs_(std::move(low_to_high)) { trim(); }

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Integer>& coefficients() const noexcept { return coeffs_; }
    Integer coefficient(int i) const { return i <= degree() ? coeffs_[static_cast<std::size_t>(i)] : Integer(0); }
    bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }

    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
        if (a.coeffs_.empty() || b.coeffs_.empty()) return {};
        std::vector<Integer> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return IntPolynomial(std::move(out));
    }
    friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

    std::string to_string(const std::string& var = "t") const {
        std::ostringstream os;
        bool first = true;
        for (int i = degree(); i >= 0; --i) {
            const Integer& c = coeffs_[static_cast<std::size_t>(i)];
            if (c == 0) continue;
            os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
            Integer a = abs(c);
            if (a != 1 || i == 0) os << a.get_str();
            if (i > 0) os << var << (i > 1 ? "^" + std::to_string(i) : "");
            first = false;
        }
        if (first) os << "0";
        return os.str();
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }
    std::vector<Integer> coeffs_;
};

/// P(x) for a series x. With x of valuation -1 the result loses deg(P) - 1
/// places of precision relative to x.
inline QSeries evaluate(const IntPolynomial& poly, const QSeries& x) {
    if (poly.degree() < 0) return QSeries::zero(x.precision());
    QSeries acc = QSeries::constant(Rational(poly.coefficient(0)), x.precision());
    if (poly.degree() == 0) return acc;
    QSeries power = x;
    for (int i = 1; i <= poly.degree(); ++i) {
        if (i > 1) power = mul(power, x);
        const Integer c = poly.coefficient(i);
        if (c != 0) acc = add(acc, scale(power, Rational(c)));
    }
    return acc;
}

/// Value of the Hauptmodul at one non-infinite cusp (or a Galois orbit of
/// cusps with irrational values), carried only as the integer factor it
/// contributes to the cusp-product polynomial.
struct CuspValue {
    std::string tag;
    IntPolynomial factor;
};

/// Per-level registry record.
struct LevelData {
    int level = 0;
    int prime = 0;  // the prime dividing the level; 1 at level 1
    int cusp_count = 0;
    std::vector<CuspValue> cusp_values;
    IntPolynomial cusp_poly;
    std::optional<EtaQuotientSpec> hauptmodul_spec;  // absent at level 1, where the Hauptmodul is j
    std::optional<EtaQuotientSpec> weight_raiser_spec;
    int raiser_weight = 0;
    bool full_weight_support = false;

    /// Maximal order of vanishing at infinity in M_k^#(N).
    Exponent n0(int k) const {
        if (k % 2 != 0) throw std::invalid_argument("odd weight " + std::to_string(k));
        switch (level) {
            case 8:
            case 9: return k;
            case 16: return 2 * k;
            case 25: {
                const long ell = detail::floor_div(k, 4);
                const long kp = k - 4 * ell;
                return 10 * ell + 2 * kp;
            }
            default:
                if (k != 0)
                    throw UnsupportedLevel("level " + std::to_string(level) + " is supported in weight 0 only");
                return 0;
        }
    }

    /// Maximal order of vanishing at infinity in S_k^#(N).
    Exponent n1(int k) const {
        if (!full_weight_support)
            throw UnsupportedLevel("S_k^# is not built at level " + std::to_string(level));
        return n0(k) - cusp_count + 1;
    }
};

namespace detail {

inline IntPolynomial product_of(const std::vector<CuspValue>& values) {
    IntPolynomial p{1};
    for (const auto& v : values) p = p * v.factor;
    return p;
}

inline LevelData make_level(int level, int prime, int cusps, std::vector<CuspValue> values,
                            std::optional<EtaQuotientSpec> haupt, std::optional<EtaQuotientSpec> raiser,
                            int raiser_weight, bool full) {
    LevelData d;
    d.level = level;
    d.prime = prime;
    d.cusp_count = cusps;
    d.cusp_poly = product_of(values);
    d.cusp_values = std::move(values);
    d.hauptmodul_spec = std::move(haupt);
    d.weight_raiser_spec = std::move(raiser);
    d.raiser_weight = raiser_weight;
    d.full_weight_support = full;
    return d;
}

// (eta(z)/eta(pz))^{24/(p-1)}
inline EtaQuotientSpec prime_hauptmodul(long p) {
    const long e = 24 / (p - 1);
    return EtaQuotientSpec{{1, e}, {p, -e}};
}

inline const std::map<int, LevelData>& registry() {
    static const std::map<int, LevelData> table = [] {
        std::map<int, LevelData> t;
        t.emplace(1, make_level(1, 1, 1, {}, std::nullopt, std::nullopt, 0, false));
        for (int p : {2, 3, 5, 7, 13})
            t.emplace(p, make_level(p, p, 2, {{"0", IntPolynomial{0, 1}}}, prime_hauptmodul(p), std::nullopt, 0,
                                    false));
        t.emplace(4, make_level(4, 2, 3, {{"0", IntPolynomial{0, 1}}, {"1/2", IntPolynomial{16, 1}}},
                                EtaQuotientSpec{{1, 8}, {4, -8}}, std::nullopt, 0, false));
        t.emplace(8, make_level(8, 2, 4,
                                {{"0", IntPolynomial{0, 1}}, {"1/2", IntPolynomial{8, 1}}, {"1/4", IntPolynomial{4, 1}}},
                                EtaQuotientSpec{{1, 4}, {2, -2}, {4, 2}, {8, -4}},
                                EtaQuotientSpec{{8, 8}, {4, -4}}, 2, true));
        t.emplace(9, make_level(9, 3, 4,
                                {{"0", IntPolynomial{0, 1}},
                                 {"+-1/3: 3sqrt3(-sqrt3 -+ i)/2", IntPolynomial{27, 9, 1}}},
                                EtaQuotientSpec{{1, 3}, {9, -3}}, EtaQuotientSpec{{9, 6}, {3, -2}}, 2, true));
        t.emplace(16, make_level(16, 2, 6,
                                 {{"0", IntPolynomial{0, 1}},
                                  {"1/8", IntPolynomial{2, 1}},
                                  {"1/2", IntPolynomial{4, 1}},
                                  {"+-1/4: -2 -+ 2i", IntPolynomial{8, 4, 1}}},
                                 EtaQuotientSpec{{1, 2}, {2, -1}, {8, 1}, {16, -2}},
                                 EtaQuotientSpec{{16, 8}, {8, -4}}, 2, true));
        t.emplace(25, make_level(25, 5, 6,
                                 {{"0", IntPolynomial{0, 1}},
                                  {"+-1/5, +-2/5: sqrt5((+-1-sqrt5)/4 -+ i sqrt((5+-sqrt5)/8))",
                                   IntPolynomial{25, 25, 15, 5, 1}}},
                                 EtaQuotientSpec{{1, 1}, {25, -1}}, EtaQuotientSpec{{25, 10}, {5, -2}}, 4, true));
        return t;
    }();
    return table;
}

}  // namespace detail

inline const std::vector<int>& supported_levels() {
    static const std::vector<int> levels{1, 2, 3, 4, 5, 7, 8, 9, 13, 16, 25};
    return levels;
}

inline bool is_full_support_level(int level) { return level == 8 || level == 9 || level == 16 || level == 25; }

inline const LevelData& level_data(int level) {
    const auto& reg = detail::registry();
    auto it = reg.find(level);
    if (it == reg.end()) throw UnsupportedLevel("unsupported level " + std::to_string(level));
    return it->second;
}

/// The Hauptmodul psi^(N) = q^{-1} + O(1); j itself at level 1.
inline QSeries hauptmodul(int level, Exponent precision) {
    const LevelData& d = level_data(level);
    if (precision < -1) throw std::invalid_argument("hauptmodul needs precision >= -1");
    if (!d.hauptmodul_spec) return j_series(precision);
    return eta_quotient(*d.hauptmodul_spec, precision);
}

/// S^(N): weight 2 at levels 8, 9, 16 and weight 4 at level 25, with all
/// zeros at infinity.
inline QSeries weight_raiser(int level, Exponent precision) {
    const LevelData& d = level_data(level);
    if (!d.weight_raiser_spec) throw UnsupportedLevel("no weight raiser at level " + std::to_string(level));
    return eta_quotient(*d.weight_raiser_spec, precision);
}

/// C_N(t) = prod (t - c) over the Hauptmodul's values at the non-infinite cusps.
inline const IntPolynomial& cusp_poly(int level) {
    const LevelData& d = level_data(level);
    if (!d.full_weight_support) throw UnsupportedLevel("cusp polynomial is only stored for levels 8, 9, 16, 25");
    return d.cusp_poly;
}

/**
 * Row-reduces a list of series to echelon form over the rationals: the
 * output elements have pairwise distinct valuations, leading coefficient 1,
 * and are sorted by increasing valuation. Zero rows are dropped.
 */
inline std::vector<QSeries> echelon(std::vector<QSeries> rows) {
    std::vector<QSeries> out;
    while (!rows.empty()) {
        auto pivot_it = std::min_element(rows.begin(), rows.end(), [](const QSeries& a, const QSeries& b) {
            return a.valuation() < b.valuation();
        });
        if (pivot_it->is_zero()) break;
        QSeries pivot = scale(*pivot_it, 1 / pivot_it->leading_coefficient());
        rows.erase(pivot_it);
        for (auto& r : rows) {
            if (!r.is_zero() && r.valuation() == pivot.valuation())
                r = sub_scaled(r, r.leading_coefficient(), pivot);
        }
        out.push_back(std::move(pivot));
    }
    // Back-substitute so every pivot column is clear in the other rows.
    for (std::size_t i = out.size(); i-- > 0;) {
        for (std::size_t j = 0; j < i; ++j) {
            const Exponent col = out[i].valuation();
            if (col <= out[j].precision()) {
                Rational c = out[j].coefficient(col);
                if (sgn(c) != 0) out[j] = sub_scaled(out[j], c, out[i]);
            }
        }
    }
    return out;
}

/**
 * E_2^(25) = q^4 + q^6 + 2q^9 + 3q^14 + 2q^16 + ..., the weight-2 level-25
 * form of maximal vanishing order at infinity. Obtained by row-reducing
 * theta(psi) psi^i / C_25(psi), i = 0..4.
 */
inline QSeries e2_25(Exponent precision) {
    if (precision < 4) throw std::invalid_argument("e2_25 needs precision >= 4");
    const QSeries psi = hauptmodul(25, precision);
    const QSeries inv_c = invert(evaluate(cusp_poly(25), psi));
    const QSeries dpsi = theta(psi);
    std::vector<QSeries> span;
    QSeries power = QSeries::constant(1, psi.precision() + 1);
    for (int i = 0; i < 5; ++i) {
        if (i > 0) power = mul(power, psi);
        span.push_back(mul(mul(dpsi, power), inv_c));
    }
    auto rows = echelon(std::move(span));
    const QSeries& top = rows.back();
    if (top.valuation() != 4 || !top.is_integral())
        throw SeriesError("E_2^(25) construction did not produce an integral form of valuation 4");
    if (top.precision() < precision) throw PrecisionError("e2_25: precision shortfall");
    return truncate(top, precision);
}

}  // namespace wmf

#endif
