#ifndef WMF_SERIES_HPP
#define WMF_SERIES_HPP

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace wmf {

using Exponent = long;

/// A coefficient outside a series' validity window was requested, or an
/// operation could not reach the precision its caller asked for.
class PrecisionError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Invalid series construction or a mathematically undefined operation.
class SeriesError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/**
 * Truncated Laurent series in q with exact rational coefficients.
 *
 * A series carries a validity window [valuation, precision]: every
 * coefficient with exponent <= precision is known exactly, and nothing is
 * known beyond it. Coefficients below the valuation are exactly zero.
 * Queries above the precision throw PrecisionError instead of returning a
 * silent zero.
 *
 * Values are always normalized: a nonzero series has a nonzero coefficient
 * at its valuation. A series with no nonzero coefficient up to its precision
 * is "identically zero to precision T"; is_zero() reports it and
 * valuation() returns T + 1 for it (its order is known to exceed T).
 *
 * QSeries is an immutable value type.
 */
class QSeries {
public:
    QSeries() : valuation_(1), precision_(0), integral_(true) {}

    static QSeries zero(Exponent precision) {
        QSeries s;
        s.valuation_ = precision + 1;
        s.precision_ = precision;
        return s;
    }

    static QSeries constant(const Rational& c, Exponent precision) {
        return monomial(c, 0, precision);
    }

    static QSeries monomial(const Rational& c, Exponent exponent, Exponent precision) {
        if (precision < exponent) return zero(precision);
        std::vector<Rational> coeffs(static_cast<std::size_t>(precision - exponent + 1));
        coeffs[0] = c;
        return QSeries(exponent, std::move(coeffs), precision);
    }

    /// Builds a series from the dense coefficients of q^valuation..q^precision.
    static QSeries from_coefficients(Exponent valuation, std::vector<Rational> coeffs, Exponent precision) {
        if (precision < valuation)
            throw SeriesError("precision " + std::to_string(precision) + " below valuation " +
                              std::to_string(valuation));
        if (coeffs.size() != static_cast<std::size_t>(precision - valuation + 1))
            throw SeriesError("expected " + std::to_string(precision - valuation + 1) + " coefficients, got " +
                              std::to_string(coeffs.size()));
        return QSeries(valuation, std::move(coeffs), precision);
    }

    bool is_zero() const noexcept { return coeffs_.empty(); }
    Exponent valuation() const noexcept { return valuation_; }
    Exponent precision() const noexcept { return precision_; }
    bool is_integral() const noexcept { return integral_; }

    /// Coefficients of q^valuation() .. q^precision(); empty for a zero series.
    std::span<const Rational> coefficients() const noexcept { return coeffs_; }

    const Rational& coefficient(Exponent n) const {
        if (n > precision_)
            throw PrecisionError("coefficient of q^" + std::to_string(n) + " requested beyond precision " +
                                 std::to_string(precision_));
        if (n < valuation_) return zero_value();
        return coeffs_[static_cast<std::size_t>(n - valuation_)];
    }
    const Rational& operator[](Exponent n) const { return coefficient(n); }

    const Rational& leading_coefficient() const {
        if (is_zero()) throw SeriesError("zero series has no leading coefficient");
        return coeffs_.front();
    }

    friend bool operator==(const QSeries& a, const QSeries& b) {
        return a.precision_ == b.precision_ && a.valuation_ == b.valuation_ && a.coeffs_ == b.coeffs_;
    }

private:
    QSeries(Exponent valuation, std::vector<Rational> coeffs, Exponent precision)
        : valuation_(valuation), precision_(precision), coeffs_(std::move(coeffs)) {
        normalize();
    }

    void normalize() {
        auto first = std::find_if(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return sgn(c) != 0; });
        if (first == coeffs_.end()) {
            coeffs_.clear();
            valuation_ = precision_ + 1;
        } else if (first != coeffs_.begin()) {
            valuation_ += first - coeffs_.begin();
            coeffs_.erase(coeffs_.begin(), first);
        }
        integral_ = std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return wmf::is_integral(c); });
    }

    static const Rational& zero_value() {
        static const Rational z(0);
        return z;
    }

    Exponent valuation_;
    Exponent precision_;
    std::vector<Rational> coeffs_;
    bool integral_ = true;

    friend class SeriesBuilder;
};

/// Mutable dense buffer used by the arithmetic kernels; produces a
/// normalized QSeries on finish().
class SeriesBuilder {
public:
    SeriesBuilder(Exponent valuation, Exponent precision)
        : valuation_(valuation), precision_(precision),
          coeffs_(precision >= valuation ? static_cast<std::size_t>(precision - valuation + 1) : 0) {}

    /// Mutable copy of an existing series' window.
    explicit SeriesBuilder(const QSeries& f)
        : valuation_(f.is_zero() ? f.precision() + 1 : f.valuation()), precision_(f.precision()),
          coeffs_(f.coefficients().begin(), f.coefficients().end()) {}

    Exponent valuation() const noexcept { return valuation_; }
    Exponent precision() const noexcept { return precision_; }
    Rational& at(Exponent n) { return coeffs_[static_cast<std::size_t>(n - valuation_)]; }
    const Rational& get(Exponent n) const {
        if (n < valuation_) return zero_value();
        return coeffs_[static_cast<std::size_t>(n - valuation_)];
    }

    /// this -= c * g on the part of g's window that overlaps this buffer.
    /// g's nonzero coefficients must not lie below this buffer's valuation.
    void subtract_scaled(const Rational& c, const QSeries& g) {
        if (sgn(c) == 0 || g.is_zero()) return;
        if (g.valuation() < valuation_) throw SeriesError("subtract_scaled: operand starts below the buffer");
        const Exponent top = std::min(precision_, g.precision());
        const bool fast = is_integral(c) && g.is_integral();
        mpz_srcptr cz = mpq_numref(c.get_mpq_t());
        Rational t;
        for (Exponent n = g.valuation(); n <= top; ++n) {
            const Rational& b = g.coefficient(n);
            if (sgn(b) == 0) continue;
            Rational& dst = at(n);
            if (fast && is_integral(dst)) {
                mpz_submul(mpq_numref(dst.get_mpq_t()), cz, mpq_numref(b.get_mpq_t()));
            } else {
                t = c * b;
                dst -= t;
            }
        }
    }
    std::vector<Rational>& raw() noexcept { return coeffs_; }

    QSeries finish() && {
        if (precision_ < valuation_) return QSeries::zero(precision_);
        return QSeries(valuation_, std::move(coeffs_), precision_);
    }

private:
    Exponent valuation_;
    Exponent precision_;
    std::vector<Rational> coeffs_;

    static const Rational& zero_value() {
        static const Rational z(0);
        return z;
    }
};

/// make_series: dense coefficients for q^valuation..q^precision.
inline QSeries make_series(Exponent valuation, std::vector<Rational> coeffs, Exponent precision) {
    return QSeries::from_coefficients(valuation, std::move(coeffs), precision);
}

namespace detail {

template <typename Op>
QSeries combine(const QSeries& f, const QSeries& g, Op op) {
    const Exponent prec = std::min(f.precision(), g.precision());
    const Exponent val = std::min(f.valuation(), g.valuation());
    SeriesBuilder out(val, prec);
    for (Exponent n = val; n <= prec; ++n) out.at(n) = op(f.coefficient(n), g.coefficient(n));
    return std::move(out).finish();
}

inline std::vector<std::size_t> nonzero_positions(std::span<const Rational> c) {
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (sgn(c[i]) != 0) pos.push_back(i);
    return pos;
}

}  // namespace detail

inline QSeries add(const QSeries& f, const QSeries& g) {
    return detail::combine(f, g, [](const Rational& a, const Rational& b) { return Rational(a + b); });
}

inline QSeries sub(const QSeries& f, const QSeries& g) {
    return detail::combine(f, g, [](const Rational& a, const Rational& b) { return Rational(a - b); });
}

inline QSeries scale(const QSeries& f, const Rational& c) {
    if (f.is_zero() || sgn(c) == 0) return QSeries::zero(f.precision());
    std::vector<Rational> coeffs(f.coefficients().begin(), f.coefficients().end());
    for (auto& x : coeffs) x *= c;
    return make_series(f.valuation(), std::move(coeffs), f.precision());
}

inline QSeries negate(const QSeries& f) { return scale(f, Rational(-1)); }

inline QSeries truncate(const QSeries& f, Exponent precision);

/// f - c*g, the elimination step of echelon reductions.
inline QSeries sub_scaled(const QSeries& f, const Rational& c, const QSeries& g) {
    if (sgn(c) == 0 || g.is_zero())
        return f.precision() <= g.precision() ? f : truncate(f, g.precision());
    const Exponent prec = std::min(f.precision(), g.precision());
    const Exponent val = std::min(f.valuation(), g.valuation());
    SeriesBuilder out(val, prec);
    for (Exponent n = val; n <= prec; ++n) out.at(n) = f.coefficient(n);
    const Exponent top = std::min(prec, g.precision());
    for (Exponent n = g.valuation(); n <= top; ++n) {
        const Rational& b = g.coefficient(n);
        if (sgn(b) != 0) out.at(n) -= c * b;
    }
    return std::move(out).finish();
}

/// Multiplication by q^s.
inline QSeries shift(const QSeries& f, Exponent s) {
    if (f.is_zero()) return QSeries::zero(f.precision() + s);
    std::vector<Rational> coeffs(f.coefficients().begin(), f.coefficients().end());
    return make_series(f.valuation() + s, std::move(coeffs), f.precision() + s);
}

/// Restricts the validity window to exponents <= precision.
inline QSeries truncate(const QSeries& f, Exponent precision) {
    if (precision > f.precision())
        throw PrecisionError("cannot truncate a series of precision " + std::to_string(f.precision()) +
                             " to precision " + std::to_string(precision));
    if (precision < f.valuation()) return QSeries::zero(precision);
    auto c = f.coefficients();
    std::vector<Rational> coeffs(c.begin(), c.begin() + (precision - f.valuation() + 1));
    return make_series(f.valuation(), std::move(coeffs), precision);
}

/**
 * Cauchy product. The result is valid up to
 * min(T_f + v_g, T_g + v_f): the largest exponent all of whose contributing
 * coefficient pairs lie inside both input windows.
 */
inline QSeries mul(const QSeries& f, const QSeries& g) {
    const Exponent prec = std::min(f.precision() + g.valuation(), g.precision() + f.valuation());
    if (f.is_zero() || g.is_zero()) return QSeries::zero(prec);
    const Exponent val = f.valuation() + g.valuation();
    if (prec < val) throw SeriesError("product window is empty");

    // Iterate the outer loop over the sparser factor.
    auto fc = f.coefficients();
    auto gc = g.coefficients();
    auto fpos = detail::nonzero_positions(fc);
    auto gpos = detail::nonzero_positions(gc);
    if (gpos.size() < fpos.size()) {
        std::swap(fc, gc);
        std::swap(fpos, gpos);
    }
    const std::size_t len = static_cast<std::size_t>(prec - val + 1);
    const std::size_t glen = std::min(gc.size(), len);

    SeriesBuilder out(val, prec);
    if (f.is_integral() && g.is_integral()) {
        std::vector<Integer> acc(len);
        for (std::size_t i : fpos) {
            if (i >= len) break;
            mpz_srcptr a = mpq_numref(fc[i].get_mpq_t());
            const std::size_t jmax = std::min(glen, len - i);
            for (std::size_t j = 0; j < jmax; ++j) {
                mpz_srcptr b = mpq_numref(gc[j].get_mpq_t());
                if (mpz_sgn(b) != 0) mpz_addmul(acc[i + j].get_mpz_t(), a, b);
            }
        }
        auto& dst = out.raw();
        for (std::size_t n = 0; n < len; ++n) mpq_set_z(dst[n].get_mpq_t(), acc[n].get_mpz_t());
    } else {
        auto& dst = out.raw();
        Rational t;
        for (std::size_t i : fpos) {
            if (i >= len) break;
            const std::size_t jmax = std::min(glen, len - i);
            for (std::size_t j = 0; j < jmax; ++j) {
                if (sgn(gc[j]) == 0) continue;
                t = fc[i] * gc[j];
                dst[i + j] += t;
            }
        }
    }
    return std::move(out).finish();
}

/**
 * Multiplicative inverse. Requires a nonzero series (its leading coefficient
 * is nonzero by normalization). The result has valuation -v and precision
 * T - 2v.
 */
inline QSeries invert(const QSeries& f) {
    if (f.is_zero()) throw SeriesError("series is zero to precision " + std::to_string(f.precision()) +
                                       " and cannot be inverted");
    const Exponent v = f.valuation();
    const Exponent prec = f.precision() - 2 * v;
    auto a = f.coefficients();
    const std::size_t len = a.size();
    std::vector<std::size_t> pos = detail::nonzero_positions(a);

    SeriesBuilder out(-v, prec);
    auto& r = out.raw();
    const bool unit_leading = f.is_integral() && (a[0] == 1 || a[0] == -1);
    if (unit_leading) {
        const bool negative = a[0] < 0;
        std::vector<Integer> ri(len);
        ri[0] = negative ? -1 : 1;
        Integer s;
        for (std::size_t n = 1; n < len; ++n) {
            s = 0;
            for (std::size_t i : pos) {
                if (i == 0) continue;
                if (i > n) break;
                mpz_addmul(s.get_mpz_t(), mpq_numref(a[i].get_mpq_t()), ri[n - i].get_mpz_t());
            }
            // r_n = -s / a_0
            ri[n] = negative ? Integer(s) : Integer(-s);
        }
        for (std::size_t n = 0; n < len; ++n) mpq_set_z(r[n].get_mpq_t(), ri[n].get_mpz_t());
    } else {
        const Rational inv_lead = 1 / a[0];
        r[0] = inv_lead;
        Rational s, t;
        for (std::size_t n = 1; n < len; ++n) {
            s = 0;
            for (std::size_t i : pos) {
                if (i == 0) continue;
                if (i > n) break;
                t = a[i] * r[n - i];
                s += t;
            }
            r[n] = -s * inv_lead;
        }
    }
    return std::move(out).finish();
}

/// f^e by binary powering; negative e inverts first. pow(f, 0) is the
/// constant 1 to the relative precision T - v of f.
inline QSeries pow(const QSeries& f, long e) {
    if (e == 0) {
        if (f.is_zero()) throw SeriesError("zero series raised to the power 0");
        return QSeries::constant(1, f.precision() - f.valuation());
    }
    QSeries base = e < 0 ? invert(f) : f;
    unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
    QSeries result;
    bool have = false;
    while (n) {
        if (n & 1UL) {
            result = have ? mul(result, base) : base;
            have = true;
        }
        n >>= 1;
        if (n) base = mul(base, base);
    }
    return result;
}

/// The operator q d/dq: the coefficient of q^n is multiplied by n.
inline QSeries theta(const QSeries& f) {
    if (f.is_zero()) return f;
    std::vector<Rational> coeffs(f.coefficients().begin(), f.coefficients().end());
    Exponent n = f.valuation();
    for (auto& c : coeffs) c *= n++;
    return make_series(f.valuation(), std::move(coeffs), f.precision());
}

namespace detail {
inline Exponent floor_div(Exponent a, Exponent b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); }
inline Exponent ceil_div(Exponent a, Exponent b) { return -floor_div(-a, b); }
inline void require_prime_step(long p) {
    if (p < 1) throw SeriesError("U/V operator step must be positive, got " + std::to_string(p));
}
}  // namespace detail

/// U_p: the coefficient of q^n in the result is the coefficient of q^{pn} in f.
inline QSeries u_op(const QSeries& f, long p) {
    detail::require_prime_step(p);
    const Exponent prec = detail::floor_div(f.precision(), p);
    if (f.is_zero()) return QSeries::zero(prec);
    const Exponent val = detail::ceil_div(f.valuation(), p);
    SeriesBuilder out(val, prec);
    for (Exponent n = val; n <= prec; ++n) out.at(n) = f.coefficient(p * n);
    return std::move(out).finish();
}

/// V_p: q -> q^p.
inline QSeries v_op(const QSeries& f, long p) {
    detail::require_prime_step(p);
    const Exponent prec = p * f.precision();
    if (f.is_zero()) return QSeries::zero(prec);
    SeriesBuilder out(p * f.valuation(), prec);
    for (Exponent n = f.valuation(); n <= f.precision(); ++n) out.at(p * n) = f.coefficient(n);
    return std::move(out).finish();
}

inline QSeries operator+(const QSeries& f, const QSeries& g) { return add(f, g); }
inline QSeries operator-(const QSeries& f, const QSeries& g) { return sub(f, g); }
inline QSeries operator-(const QSeries& f) { return negate(f); }
inline QSeries operator*(const QSeries& f, const QSeries& g) { return mul(f, g); }
inline QSeries operator*(const Rational& c, const QSeries& f) { return scale(f, c); }

/// p-adic valuation of an integer; zero has infinite valuation, which
/// satisfies every finite lower bound.
struct PadicValuation {
    bool infinite = false;
    unsigned long exponent = 0;

    bool at_least(unsigned long bound) const noexcept { return infinite || exponent >= bound; }
    std::string to_string() const { return infinite ? std::string("inf") : std::to_string(exponent); }
};

inline PadicValuation padic_val(const Integer& x, unsigned long p) {
    if (p < 2) throw SeriesError("p-adic valuation needs p >= 2");
    if (x == 0) return {true, 0};
    Integer pz(p);
    Integer rest;
    return {false, mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), pz.get_mpz_t())};
}

inline PadicValuation padic_val(const Rational& x, unsigned long p) {
    if (!is_integral(x)) throw SeriesError("p-adic valuation of non-integer " + to_decimal(x));
    return padic_val(Integer(x.get_num()), p);
}

namespace detail {
inline void require_window(const QSeries& f, Exponent lo, Exponent hi, const char* what) {
    if (hi > f.precision())
        throw PrecisionError(std::string(what) + ": range end q^" + std::to_string(hi) + " exceeds precision " +
                             std::to_string(f.precision()));
    (void)lo;
}
}  // namespace detail

/// True iff every coefficient of f - g on [lo, hi] is divisible by modulus.
/// All coefficients involved must be integers.
inline bool congruent_mod(const QSeries& f, const QSeries& g, const Integer& modulus, Exponent lo, Exponent hi) {
    if (modulus <= 0) throw SeriesError("modulus must be positive");
    detail::require_window(f, lo, hi, "congruent_mod");
    detail::require_window(g, lo, hi, "congruent_mod");
    Integer d;
    for (Exponent n = lo; n <= hi; ++n) {
        const Rational& a = f.coefficient(n);
        const Rational& b = g.coefficient(n);
        if (!is_integral(a) || !is_integral(b))
            throw SeriesError("non-integral coefficient at q^" + std::to_string(n));
        d = a.get_num() - b.get_num();
        if (!mpz_divisible_p(d.get_mpz_t(), modulus.get_mpz_t())) return false;
    }
    return true;
}

/// Smallest exponent in [lo, hi] where f and g differ, if any.
inline std::optional<Exponent> first_difference(const QSeries& f, const QSeries& g, Exponent lo, Exponent hi) {
    detail::require_window(f, lo, hi, "first_difference");
    detail::require_window(g, lo, hi, "first_difference");
    for (Exponent n = lo; n <= hi; ++n)
        if (f.coefficient(n) != g.coefficient(n)) return n;
    return std::nullopt;
}

inline std::ostream& operator<<(std::ostream& os, const QSeries& f) {
    bool first = true;
    for (Exponent n = f.valuation(); n <= f.precision(); ++n) {
        const Rational& c = f.coefficient(n);
        if (sgn(c) == 0) continue;
        os << (first ? (sgn(c) < 0 ? "-" : "") : (sgn(c) < 0 ? " - " : " + "));
        Rational a = abs(c);
        if (a != 1 || n == 0) os << to_decimal(a);
        if (n != 0) os << (a != 1 ? "*" : "") << "q" << (n != 1 ? "^" + std::to_string(n) : "");
        first = false;
    }
    if (first) os << "0";
    return os << " + O(q^" << f.precision() + 1 << ")";
}

}  // namespace wmf

#endif
