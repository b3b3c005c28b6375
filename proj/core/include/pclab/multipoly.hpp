#ifndef PCLAB_MULTIPOLY_HPP
#define PCLAB_MULTIPOLY_HPP

#include <map>
#include <string>
#include <vector>

#include "pclab/cyclotomic.hpp"

namespace pclab {

/// Exponent vector; the entry count is the ambient variable count m.
using MultiIndex = std::vector<int>;

inline int total_degree(const MultiIndex& n) {
    int s = 0;
    for (int e : n) s += e;
    return s;
}

/// Graded-lexicographic order: first by total degree, then lexicographically.
struct GrlexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const {
        int ta = total_degree(a), tb = total_degree(b);
        if (ta != tb) return ta < tb;
        return a < b;
    }
};

struct MultiIndexHash {
    size_t operator()(const MultiIndex& n) const {
        size_t h = 1469598103934665603ull;
        for (int e : n) {
            h ^= static_cast<size_t>(e) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

/// Sparse multivariate polynomial over the cyclotomic coefficient field.
struct MultiPoly {
    int m = 1;
    std::map<MultiIndex, CycloElement, GrlexLess> terms;  // zero values never stored

    MultiPoly() = default;
    explicit MultiPoly(int vars) : m(vars) {}

    static MultiPoly constant(int m, const CycloElement& c);
    static MultiPoly monomial(int m, const MultiIndex& n, const CycloElement& c);

    bool is_zero() const { return terms.empty(); }
    bool is_constant() const;
    int degree() const;  // -1 for the zero polynomial
    CycloElement coeff(const MultiIndex& n) const;
    CycloElement at_origin() const;
    void add_term(const MultiIndex& n, const CycloElement& c);

    MultiPoly scaled(const CycloElement& c) const;
    /// Homogeneous part of the given total degree.
    MultiPoly homogeneous_part(int d) const;

    bool operator==(const MultiPoly& other) const { return m == other.m && terms == other.terms; }
    std::string to_string() const;  // DSL-compatible rendering in x1..xm (or t when m == 1)

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    MultiPoly operator-() const;
};

/// Product with all terms of total degree > bound dropped.
MultiPoly truncated_mul(const MultiPoly& a, const MultiPoly& b, int bound);

MultiPoly poly_pow(const MultiPoly& base, unsigned long e);

/// Exact division; returns false when the divisor does not divide a.
bool try_divide(const MultiPoly& a, const MultiPoly& b, MultiPoly& quotient);

/// Dense univariate polynomial over the cyclotomic field (helper for gcd work).
struct UniPoly {
    std::vector<CycloElement> c;  // c[i] ~ t^i, no trailing zeros

    UniPoly() = default;
    explicit UniPoly(std::vector<CycloElement> coeffs) : c(std::move(coeffs)) { trim(); }
    static UniPoly from_multipoly(const MultiPoly& p);  // requires p.m == 1
    static UniPoly from_int_polynomial(const IntPolynomial& p);
    MultiPoly to_multipoly() const;

    void trim();
    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    CycloElement coeff(size_t i) const { return i < c.size() ? c[i] : CycloElement(); }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    bool operator==(const UniPoly& other) const { return c == other.c; }
};

/// quotient/remainder with remainder degree < divisor degree
void divmod(const UniPoly& num, const UniPoly& den, UniPoly& quot, UniPoly& rem);

/// Monic gcd over the coefficient field.
UniPoly gcd(const UniPoly& a, const UniPoly& b);

UniPoly monic(const UniPoly& p);

}  // namespace pclab

#endif
