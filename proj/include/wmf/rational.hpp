#ifndef WMF_RATIONAL_HPP
#define WMF_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace wmf {

/// Arbitrary-precision integer.
using Integer = mpz_class;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator (GMP canonical form).
using Rational = mpq_class;

inline bool is_integral(const Rational& x) { return mpz_cmp_ui(x.get_den_mpz_t(), 1) == 0; }

/// Decimal rendering: "n" for integers, "n/d" otherwise.
inline std::string to_decimal(const Rational& x) {
    if (is_integral(x)) return x.get_num().get_str(10);
    return x.get_num().get_str(10) + "/" + x.get_den().get_str(10);
}

inline std::string to_decimal(const Integer& x) { return x.get_str(10); }

/// Parses "n" or "n/d". Throws std::invalid_argument on malformed input.
inline Rational parse_rational(const std::string& text) {
    Rational r;
    if (text.empty() || r.set_str(text, 10) != 0 || r.get_den() == 0)
        throw std::invalid_argument("malformed rational '" + text + "'");
    r.canonicalize();
    return r;
}

/// num/den in lowest terms.
inline Rational fraction(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Integer ipow(long base, unsigned long exponent) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base < 0 ? -base : base), exponent);
    if (base < 0 && (exponent & 1U)) r = -r;
    return r;
}

/// Non-negative remainder of an integer modulo a positive modulus.
inline Integer mod_floor(const Integer& x, const Integer& modulus) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t());
    return r;
}

/// Reduces a rational whose denominator is a unit modulo `modulus` to its
/// least non-negative residue. Throws std::domain_error otherwise.
inline Integer reduce_mod(const Rational& x, const Integer& modulus) {
    Integer inv;
    if (mpz_invert(inv.get_mpz_t(), x.get_den_mpz_t(), modulus.get_mpz_t()) == 0) {
        if (modulus == 1) return 0;
        throw std::domain_error("denominator " + x.get_den().get_str() + " is not invertible modulo " +
                                modulus.get_str());
    }
    return mod_floor(x.get_num() * inv, modulus);
}

}  // namespace wmf

#endif
