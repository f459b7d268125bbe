#ifndef WMF_BASIS_HPP
#define WMF_BASIS_HPP

#include <algorithm>
#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "levels.hpp"
#include "series.hpp"

namespace wmf {

/// M_k^# (elements f_{k,m}) or its subspace S_k^# (elements g_{k,m}).
enum class Family { M, S };

inline std::string_view family_tag(Family f) { return f == Family::M ? "M" : "S"; }

inline Family parse_family(std::string_view tag) {
    if (tag == "M") return Family::M;
    if (tag == "S") return Family::S;
    throw std::invalid_argument("unknown family '" + std::string(tag) + "' (expected M or S)");
}

/// A basis element q^{-m} + sum_{n > gap} c(n) q^n.
struct BasisElement {
    int level = 0;
    int weight = 0;
    Exponent order = 0;  // the pole order m
    Family family = Family::M;
    Exponent gap = 0;  // n_0 for M, n_1 for S
    QSeries series;
};

struct TowerKey {
    int level = 0;
    int weight = 0;
    Family family = Family::M;
    auto operator<=>(const TowerKey&) const = default;
};

inline std::string to_string(const TowerKey& key) {
    return "level " + std::to_string(key.level) + ", weight " + std::to_string(key.weight) + ", family " +
           std::string(family_tag(key.family));
}

/// Gap bound for a tower: n_0(k) or n_1(k). Validates level/weight support.
inline Exponent gap_bound(const TowerKey& key) {
    const LevelData& d = level_data(key.level);
    if (key.weight % 2 != 0) throw std::invalid_argument("odd weight " + std::to_string(key.weight));
    if (key.family == Family::S) return d.n1(key.weight);
    return d.n0(key.weight);
}

namespace detail {

inline QSeries settle(const QSeries& s, Exponent precision, const char* what) {
    if (s.precision() < precision)
        throw PrecisionError(std::string(what) + ": reached precision " + std::to_string(s.precision()) +
                             ", needed " + std::to_string(precision));
    return truncate(s, precision);
}

// Input precision for f so that f^e reaches `target`, given valuation v of f.
inline Exponent pow_input_precision(Exponent v, long e, Exponent target) {
    if (e > 0) return target - (e - 1) * v;
    if (e < 0) return target + (-e + 1) * v;
    return target;
}

inline QSeries raiser_power(int level, long e, Exponent precision) {
    if (e == 0) return QSeries::constant(1, precision);
    const Exponent v = level_data(level).weight_raiser_spec->leading_power();
    const Exponent input = std::max(pow_input_precision(v, e, precision), v);
    return settle(pow(weight_raiser(level, input), e), precision, "weight raiser power");
}

}  // namespace detail

/// Series of the first element of M_k^#(N), which has pole order -n_0(k).
inline QSeries first_m_series(int level, int weight, Exponent precision) {
    const LevelData& d = level_data(level);
    if (weight % 2 != 0) throw std::invalid_argument("odd weight " + std::to_string(weight));
    if (!d.full_weight_support) {
        d.n0(weight);  // rejects nonzero weight
        return QSeries::constant(1, precision);
    }
    if (level != 25) return detail::raiser_power(level, weight / 2, precision);

    const long ell = detail::floor_div(weight, 4);
    const bool has_e2 = weight - 4 * ell == 2;
    if (!has_e2) return detail::raiser_power(25, ell, precision);
    const QSeries s = detail::raiser_power(25, ell, precision - 4);
    const QSeries e2 = e2_25(std::max<Exponent>(precision - 10 * ell, 4));
    return detail::settle(mul(e2, s), precision, "first element of M_k^#(25)");
}

/// Series of the first element of S_k^#(N): the first M_k^# element times C_N(psi).
inline QSeries first_s_series(int level, int weight, Exponent precision) {
    const LevelData& d = level_data(level);
    if (!d.full_weight_support) throw UnsupportedLevel("S_k^# is not built at level " + std::to_string(level));
    const int deg = d.cusp_poly.degree();
    const Exponent n0 = d.n0(weight);
    const QSeries fm = first_m_series(level, weight, precision + deg);
    const QSeries psi = hauptmodul(level, std::max<Exponent>(precision - n0 + deg - 1, 1));
    return detail::settle(mul(fm, evaluate(d.cusp_poly, psi)), precision, "first element of S_k^#");
}

/**
 * The canonical basis elements of one (level, weight, family), for pole
 * orders -gap .. max_order, each valid at least to `precision`.
 *
 * Element m is psi * (element m-1) with the coefficients at q^{-m+1} .. q^gap
 * cleared by subtracting earlier elements. The canonical gap, the unit
 * leading coefficient and integrality are checked for every element.
 */
class BasisTower {
public:
    BasisTower(TowerKey key, Exponent max_order, Exponent precision) : key_(key) {
        gap_ = gap_bound(key);
        min_order_ = -gap_;
        if (max_order < min_order_)
            throw std::invalid_argument("pole order " + std::to_string(max_order) + " below the minimum " +
                                        std::to_string(min_order_) + " for " + to_string(key));
        max_order_ = max_order;
        precision_ = std::max(precision, gap_);

        // Each multiplication by psi (valuation -1) costs one place of precision.
        const Exponent depth = max_order_ - min_order_;
        const Exponent start = precision_ + depth;
        const Exponent psi_precision = std::max<Exponent>(start + min_order_, 1);

        QSeries first = key.family == Family::M ? first_m_series(key.level, key.weight, start)
                                                : first_s_series(key.level, key.weight, start);
        elements_.reserve(static_cast<std::size_t>(depth + 1));
        push(min_order_, std::move(first));
        if (depth == 0) return;

        const QSeries psi = hauptmodul(key.level, psi_precision);
        for (Exponent m = min_order_ + 1; m <= max_order_; ++m) {
            SeriesBuilder cand(mul(psi, elements_.back().series));
            for (Exponent mp = m - 1; mp >= min_order_; --mp) {
                const Rational c = cand.get(-mp);
                if (sgn(c) != 0) cand.subtract_scaled(c, element(mp).series);
            }
            push(m, std::move(cand).finish());
        }
    }

    const TowerKey& key() const noexcept { return key_; }
    Exponent gap() const noexcept { return gap_; }
    Exponent min_order() const noexcept { return min_order_; }
    Exponent max_order() const noexcept { return max_order_; }
    /// Every element is valid at least to this exponent.
    Exponent precision() const noexcept { return precision_; }
    std::span<const BasisElement> elements() const noexcept { return elements_; }

    const BasisElement& element(Exponent m) const {
        if (m < min_order_ || m > max_order_)
            throw std::out_of_range("pole order " + std::to_string(m) + " outside [" + std::to_string(min_order_) +
                                    ", " + std::to_string(max_order_) + "] for " + to_string(key_));
        return elements_[static_cast<std::size_t>(m - min_order_)];
    }

    bool covers(Exponent max_order, Exponent precision) const noexcept {
        return max_order <= max_order_ && precision <= precision_;
    }

private:
    void push(Exponent m, QSeries s) {
        check_canonical(m, s);
        elements_.push_back(BasisElement{key_.level, key_.weight, m, key_.family, gap_, std::move(s)});
    }

    void check_canonical(Exponent m, const QSeries& s) const {
        const std::string where = "element m=" + std::to_string(m) + " of " + to_string(key_);
        if (s.is_zero() || s.valuation() != -m || s.leading_coefficient() != 1)
            throw SeriesError(where + " does not start with q^" + std::to_string(-m));
        if (s.precision() < std::max(gap_, precision_))
            throw PrecisionError(where + " reached precision " + std::to_string(s.precision()));
        for (Exponent e = -m + 1; e <= gap_; ++e)
            if (sgn(s.coefficient(e)) != 0)
                throw SeriesError(where + " violates the canonical gap at q^" + std::to_string(e));
        if (!s.is_integral()) throw SeriesError(where + " has a non-integral coefficient");
    }

    TowerKey key_;
    Exponent gap_ = 0;
    Exponent min_order_ = 0;
    Exponent max_order_ = 0;
    Exponent precision_ = 0;
    std::vector<BasisElement> elements_;
};

/// Thread-safe store of towers; a cached tower is reused when it already
/// reaches the requested pole order and precision, and rebuilt larger otherwise.
class BasisCache {
public:
    std::shared_ptr<const BasisTower> tower(const TowerKey& key, Exponent max_order, Exponent precision) {
        {
            std::lock_guard lock(mutex_);
            auto it = towers_.find(key);
            if (it != towers_.end() && it->second->covers(max_order, precision)) return it->second;
            if (it != towers_.end()) {
                max_order = std::max(max_order, it->second->max_order());
                precision = std::max(precision, it->second->precision());
            }
        }
        auto built = std::make_shared<const BasisTower>(key, max_order, precision);
        std::lock_guard lock(mutex_);
        auto& slot = towers_[key];
        if (!slot || !slot->covers(built->max_order(), built->precision())) slot = built;
        return built;
    }

    void clear() {
        std::lock_guard lock(mutex_);
        towers_.clear();
    }

private:
    std::mutex mutex_;
    std::map<TowerKey, std::shared_ptr<const BasisTower>> towers_;
};

inline BasisCache& default_cache() {
    static BasisCache cache;
    return cache;
}

inline BasisElement first_m_element(int level, int weight, Exponent precision) {
    const TowerKey key{level, weight, Family::M};
    return default_cache().tower(key, -gap_bound(key), precision)->element(-gap_bound(key));
}

inline BasisElement first_s_element(int level, int weight, Exponent precision) {
    const TowerKey key{level, weight, Family::S};
    return default_cache().tower(key, -gap_bound(key), precision)->element(-gap_bound(key));
}

/// f_{k,m}^(N), valid at least to q^precision.
inline BasisElement f_element(int level, int weight, Exponent m, Exponent precision) {
    return default_cache().tower({level, weight, Family::M}, m, precision)->element(m);
}

/// g_{k,m}^(N), valid at least to q^precision.
inline BasisElement g_element(int level, int weight, Exponent m, Exponent precision) {
    return default_cache().tower({level, weight, Family::S}, m, precision)->element(m);
}

/// a_k^(N)(m, n): coefficient of q^n in f_{k,m}^(N).
inline Rational a_coeff(int level, int weight, Exponent m, Exponent n) {
    return default_cache().tower({level, weight, Family::M}, m, n)->element(m).series.coefficient(n);
}

/// b_k^(N)(m, n): coefficient of q^n in g_{k,m}^(N).
inline Rational b_coeff(int level, int weight, Exponent m, Exponent n) {
    return default_cache().tower({level, weight, Family::S}, m, n)->element(m).series.coefficient(n);
}

}  // namespace wmf

#endif
