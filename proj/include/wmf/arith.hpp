#ifndef WMF_ARITH_HPP
#define WMF_ARITH_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace wmf {

/// Divisor power sum sigma_k(n) = sum_{d | n} d^k.
inline Integer sigma(long n, unsigned long k) {
    if (n < 1) throw std::invalid_argument("sigma needs n >= 1, got " + std::to_string(n));
    Integer total = 0;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        total += ipow(d, k);
        if (d * d != n) total += ipow(n / d, k);
    }
    return total;
}

/// sigma_k(1..limit) by a divisor sieve; entry 0 is unused.
inline std::vector<Integer> sigma_table(long limit, unsigned long k) {
    std::vector<Integer> table(static_cast<std::size_t>(limit > 0 ? limit + 1 : 1), 0);
    for (long d = 1; d <= limit; ++d) {
        Integer dk = ipow(d, k);
        for (long n = d; n <= limit; n += d) table[static_cast<std::size_t>(n)] += dk;
    }
    return table;
}

/// Legendre symbol (a/p) for an odd prime p, by Euler's criterion.
inline int legendre(long a, long p) {
    if (p < 3 || p % 2 == 0) throw std::invalid_argument("legendre needs an odd prime, got " + std::to_string(p));
    Integer base = a, r;
    base = mod_floor(base, p);
    if (base == 0) return 0;
    Integer e = (p - 1) / 2, pz = p;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), pz.get_mpz_t());
    return r == 1 ? 1 : -1;
}

/// Writes n = p^alpha * rest with p not dividing rest.
inline std::pair<int, long> split_prime_power(long n, long p) {
    if (n < 1 || p < 2) throw std::invalid_argument("split_prime_power needs n >= 1 and p >= 2");
    int alpha = 0;
    while (n % p == 0) {
        n /= p;
        ++alpha;
    }
    return {alpha, n};
}

inline long gcd(long a, long b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b) {
        long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace wmf

#endif
