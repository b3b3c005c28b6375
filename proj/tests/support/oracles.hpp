#ifndef PCLAB_TESTS_ORACLES_HPP
#define PCLAB_TESTS_ORACLES_HPP

// Test-side oracles, independent of the library's computation paths.

#include <cmath>
#include <random>
#include <vector>

#include <pclab/cyclotomic.hpp>
#include <pclab/linalg.hpp>
#include <pclab/multipoly.hpp>
#include <pclab/series.hpp>

namespace oracles {

using pclab::CycloElement;
using pclab::Int;
using pclab::Rat;

// Determinant by cofactor expansion along the first row.
inline CycloElement naive_determinant(const pclab::Mat& a) {
    const size_t n = a.size();
    if (n == 1) return a[0][0];
    CycloElement det;
    for (size_t j = 0; j < n; ++j) {
        if (a[0][j].is_zero()) continue;
        pclab::Mat minor;
        for (size_t r = 1; r < n; ++r) {
            pclab::Vec row;
            for (size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(a[r][c]);
            minor.push_back(std::move(row));
        }
        CycloElement term = a[0][j] * naive_determinant(minor);
        det = (j % 2 == 0) ? det + term : det - term;
    }
    return det;
}

inline CycloElement naive_hankel(const std::vector<CycloElement>& c, int n) {
    pclab::Mat a(n + 1, pclab::Vec(n + 1));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) a[i][j] = c[i + j];
    return naive_determinant(a);
}

// Chebyshev psi: sum of log p over prime powers <= x, in long double.
inline double chebyshev_psi(unsigned long x) {
    std::vector<bool> sieve(x + 1, true);
    long double acc = 0.0L;
    for (unsigned long p = 2; p <= x; ++p) {
        if (!sieve[p]) continue;
        for (unsigned long q = p * p; q <= x; q += p) sieve[q] = false;
        const long double lp = std::log(static_cast<long double>(p));
        unsigned long pk = p;
        while (pk <= x) {
            acc += lp;
            if (pk > x / p) break;
            pk *= p;
        }
    }
    return static_cast<double>(acc);
}

// Uniform small rational, nonzero when requested.
inline Rat random_rational(std::mt19937_64& rng, long max_abs = 9, bool nonzero = false) {
    for (;;) {
        long num = static_cast<long>(rng() % (2 * max_abs + 1)) - max_abs;
        long den = 1 + static_cast<long>(rng() % max_abs);
        if (nonzero && num == 0) continue;
        Rat q(num, den);
        q.canonicalize();
        return q;
    }
}

inline CycloElement random_cyclo(std::mt19937_64& rng, unsigned long conductor, long max_abs = 5,
                                 bool nonzero = false) {
    const unsigned long phi = pclab::euler_phi(conductor);
    for (;;) {
        std::vector<Rat> coeffs(phi);
        for (Rat& c : coeffs) c = random_rational(rng, max_abs);
        CycloElement a = CycloElement::from_coeffs(conductor, coeffs);
        if (nonzero && a.is_zero()) continue;
        return a;
    }
}

// Truncated convolution of two coefficient tables (total degree <= bound).
inline pclab::CoeffTable convolve(const pclab::CoeffTable& a, const pclab::CoeffTable& b,
                                  int bound) {
    pclab::CoeffTable out;
    out.m = a.m;
    out.N = bound;
    for (const auto& [na, va] : a.values) {
        const int da = pclab::total_degree(na);
        for (const auto& [nb, vb] : b.values) {
            if (da + pclab::total_degree(nb) > bound) continue;
            pclab::MultiIndex n(na.size());
            for (size_t i = 0; i < n.size(); ++i) n[i] = na[i] + nb[i];
            CycloElement prod = va * vb;
            if (prod.is_zero()) continue;
            auto [it, inserted] = out.values.emplace(std::move(n), prod);
            if (!inserted) {
                it->second += prod;
                if (it->second.is_zero()) out.values.erase(it);
            }
        }
    }
    return out;
}

inline std::vector<CycloElement> series_terms(const pclab::SeriesExpr& f, int count) {
    pclab::CoeffTable t = pclab::expand(f, count - 1);
    std::vector<CycloElement> c(count);
    for (int i = 0; i < count; ++i) c[i] = t.at(pclab::MultiIndex{i});
    return c;
}

inline Int catalan(unsigned long n) { return pclab::binomial(2 * n, n) / Int(n + 1); }

}  // namespace oracles

#endif
