#ifndef WMF_ETA_HPP
#define WMF_ETA_HPP

#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "arith.hpp"
#include "series.hpp"

namespace wmf {

/**
 * Product of rescaled Dedekind eta functions, prod_d eta(d z)^{r_d}.
 *
 * Only quotients whose leading q-power sum_d d r_d / 24 is an integer are
 * representable; this is checked on construction.
 */
class EtaQuotientSpec {
public:
    EtaQuotientSpec(std::initializer_list<std::pair<const long, long>> factors)
        : EtaQuotientSpec(std::map<long, long>(factors)) {}

    explicit EtaQuotientSpec(std::map<long, long> factors) : factors_(std::move(factors)) {
        if (factors_.empty()) throw std::invalid_argument("eta quotient needs at least one factor");
        long weighted = 0;
        for (auto [d, r] : factors_) {
            if (d < 1) throw std::invalid_argument("eta quotient scale must be positive, got " + std::to_string(d));
            if (r == 0) throw std::invalid_argument("eta quotient exponent for scale " + std::to_string(d) + " is 0");
            weighted += d * r;
        }
        if (weighted % 24 != 0)
            throw std::invalid_argument("eta quotient has fractional leading power " + std::to_string(weighted) +
                                        "/24");
        leading_ = weighted / 24;
    }

    const std::map<long, long>& factors() const noexcept { return factors_; }
    Exponent leading_power() const noexcept { return leading_; }

    /// Weight of the quotient, sum r_d / 2 (doubled to stay integral).
    long twice_weight() const noexcept {
        long w = 0;
        for (auto [d, r] : factors_) w += r;
        return w;
    }

    /// The quotient with every scale multiplied by `by`, i.e. z -> by*z.
    EtaQuotientSpec rescaled(long by) const {
        std::map<long, long> out;
        for (auto [d, r] : factors_) out[d * by] = r;
        return EtaQuotientSpec(std::move(out));
    }

    /// The product of two quotients; cancelling factors are dropped.
    friend EtaQuotientSpec operator*(const EtaQuotientSpec& a, const EtaQuotientSpec& b) {
        std::map<long, long> out = a.factors_;
        for (auto [d, r] : b.factors_) {
            if ((out[d] += r) == 0) out.erase(d);
        }
        return EtaQuotientSpec(std::move(out));
    }

    friend bool operator==(const EtaQuotientSpec&, const EtaQuotientSpec&) = default;

private:
    std::map<long, long> factors_;
    Exponent leading_ = 0;
};

/// prod_{n >= 1} (1 - q^n) to precision T, summed over generalized pentagonal
/// numbers: sum_k (-1)^k q^{k(3k-1)/2}.
inline QSeries eta_tail(Exponent precision) {
    if (precision < 0) throw std::invalid_argument("eta_tail needs precision >= 0");
    SeriesBuilder out(0, precision);
    out.at(0) = 1;
    for (long k = 1;; ++k) {
        const long a = k * (3 * k - 1) / 2;
        const long b = k * (3 * k + 1) / 2;
        if (a > precision) break;
        const int sign = (k % 2 == 0) ? 1 : -1;
        out.at(a) = sign;
        if (b <= precision) out.at(b) = sign;
    }
    return std::move(out).finish();
}

/// Expansion of an eta quotient to precision T.
inline QSeries eta_quotient(const EtaQuotientSpec& spec, Exponent precision) {
    const Exponent lead = spec.leading_power();
    if (precision < lead)
        throw PrecisionError("eta quotient starts at q^" + std::to_string(lead) + ", cannot stop at q^" +
                             std::to_string(precision));
    const Exponent inner = precision - lead;
    QSeries product = QSeries::constant(1, inner);
    for (auto [d, r] : spec.factors()) {
        const Exponent tail_prec = (inner + d - 1) / d;
        QSeries factor = truncate(v_op(eta_tail(tail_prec), d), inner);
        product = truncate(mul(product, pow(factor, r)), inner);
    }
    return shift(product, lead);
}

/// E_4 = 1 + 240 sum sigma_3(n) q^n.
inline QSeries eisenstein4(Exponent precision) {
    if (precision < 0) throw std::invalid_argument("eisenstein4 needs precision >= 0");
    auto s3 = sigma_table(precision, 3);
    SeriesBuilder out(0, precision);
    out.at(0) = 1;
    for (Exponent n = 1; n <= precision; ++n) out.at(n) = 240 * s3[static_cast<std::size_t>(n)];
    return std::move(out).finish();
}

/// E_6 = 1 - 504 sum sigma_5(n) q^n. Auxiliary: only used to cross-check Delta.
inline QSeries eisenstein6(Exponent precision) {
    if (precision < 0) throw std::invalid_argument("eisenstein6 needs precision >= 0");
    auto s5 = sigma_table(precision, 5);
    SeriesBuilder out(0, precision);
    out.at(0) = 1;
    for (Exponent n = 1; n <= precision; ++n) out.at(n) = -504 * s5[static_cast<std::size_t>(n)];
    return std::move(out).finish();
}

/// Delta = q prod (1 - q^n)^24.
inline QSeries delta(Exponent precision) {
    if (precision < 1) throw std::invalid_argument("delta needs precision >= 1");
    return eta_quotient(EtaQuotientSpec{{1, 24}}, precision);
}

/// j = E_4^3 / Delta = q^{-1} + 744 + 196884 q + ...
inline QSeries j_series(Exponent precision) {
    if (precision < -1) throw std::invalid_argument("j_series needs precision >= -1");
    QSeries j = mul(pow(eisenstein4(precision + 1), 3), invert(delta(precision + 2)));
    if (j.precision() < precision) throw PrecisionError("j_series: precision shortfall");
    return truncate(j, precision);
}

}  // namespace wmf

#endif
