#ifndef PCLAB_NUMBERS_HPP
#define PCLAB_NUMBERS_HPP

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace pclab {

using Int = mpz_class;
using Rat = mpq_class;

inline Int int_gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int int_lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

/// Natural log of a positive big integer, accurate to ~1e-12 absolute.
inline double log_of(const Int& n) {
    signed long exp2;
    double mant = mpz_get_d_2exp(&exp2, n.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp2) * M_LN2;
}

inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

inline size_t bit_size(const Int& n) { return mpz_sizeinbase(n.get_mpz_t(), 2); }

inline bool is_prime(unsigned long p) {
    if (p < 2) return false;
    Int z(static_cast<unsigned long>(p));
    return mpz_probab_prime_p(z.get_mpz_t(), 32) != 0;
}

inline unsigned long euler_phi(unsigned long n) {
    unsigned long result = n, m = n;
    for (unsigned long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            result -= result / p;
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

inline std::vector<unsigned long> divisors(unsigned long n) {
    std::vector<unsigned long> small, large;
    for (unsigned long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d != n / d) large.push_back(n / d);
        }
    }
    for (auto it = large.rbegin(); it != large.rend(); ++it) small.push_back(*it);
    return small;
}

inline Int binomial(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Int factorial(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

}  // namespace pclab

#endif
