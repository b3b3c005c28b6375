#ifndef PCLAB_TESTS_CORPUS_HPP
#define PCLAB_TESTS_CORPUS_HPP

// Deterministic corpus of rational functions whose denominators are products
// of torsion binomials 1 - zeta x^q with m <= 3, zeta of order <= 12, and
// product total degree <= 4.

#include <random>
#include <vector>

#include <pclab/multipoly.hpp>
#include <pclab/rationality.hpp>
#include <pclab/series.hpp>

namespace corpus {

using pclab::CycloElement;
using pclab::MultiIndex;
using pclab::MultiPoly;

struct Member {
    int m = 1;
    MultiPoly num;
    MultiPoly den;
    std::vector<std::pair<CycloElement, MultiIndex>> factors;  // with repetitions

    pclab::SeriesExpr series() const { return pclab::SeriesExpr::rational(num, den); }
};

inline MultiPoly binomial_poly(int m, const CycloElement& zeta, const MultiIndex& q) {
    MultiPoly p = MultiPoly::constant(m, CycloElement(1L));
    p.add_term(q, -zeta);
    return p;
}

namespace detail {

inline MultiIndex random_exponent(std::mt19937_64& rng, int m, int max_total) {
    for (;;) {
        MultiIndex q(m, 0);
        const int kind = static_cast<int>(rng() % 3);
        if (kind == 0 || m == 1) {
            q[rng() % m] = 1 + static_cast<int>(rng() % 2);
        } else if (kind == 1) {
            q[rng() % m] = 1;
            q[rng() % m] = 1;  // may coincide; that gives weight 1 or 2
        } else {
            for (int i = 0; i < m; ++i) q[i] = (i < 2 ? 1 : static_cast<int>(rng() % 2));
        }
        if (pclab::total_degree(q) >= 1 && pclab::total_degree(q) <= max_total) return q;
    }
}

inline unsigned long pick_order(std::mt19937_64& rng, int factor_count, int m) {
    static const unsigned long solo[] = {1, 2, 3, 4, 6, 8, 12};
    static const unsigned long duo[] = {1, 2, 3, 4, 6};
    static const unsigned long crowd[] = {1, 2};
    if (m >= 3) return crowd[rng() % 2];
    if (factor_count == 1) return solo[rng() % 7];
    if (factor_count == 2) return duo[rng() % 5];
    return crowd[rng() % 2];
}

inline CycloElement zeta_of_order(std::mt19937_64& rng, unsigned long order) {
    std::vector<unsigned long> residues;
    for (unsigned long j = 1; j <= order; ++j)
        if (std::gcd(j, order) == 1) residues.push_back(j);
    return CycloElement::zeta(order, residues[rng() % residues.size()]);
}

inline Member make_member(std::mt19937_64& rng, int m) {
    Member mem;
    mem.m = m;
    mem.den = MultiPoly::constant(m, CycloElement(1L));
    const int want = 1 + static_cast<int>(rng() % 3);
    int budget = 4;
    for (int i = 0; i < want && budget > 0; ++i) {
        MultiIndex q = random_exponent(rng, m, budget);
        CycloElement z = zeta_of_order(rng, pick_order(rng, want, m));
        mem.factors.emplace_back(z, q);
        mem.den = mem.den * binomial_poly(m, z, q);
        budget -= pclab::total_degree(q);
        // an occasional repeated factor
        if (budget >= pclab::total_degree(q) && rng() % 5 == 0) {
            mem.factors.emplace_back(z, q);
            mem.den = mem.den * binomial_poly(m, z, q);
            budget -= pclab::total_degree(q);
        }
    }
    // numerator: 1, or 1 +/- a small monomial that shares no binomial factor
    mem.num = MultiPoly::constant(m, CycloElement(1L));
    if (rng() % 10 < 3) {
        MultiIndex q = random_exponent(rng, m, 2);
        MultiPoly cand = MultiPoly::constant(m, CycloElement(1L));
        cand.add_term(q, CycloElement(rng() % 2 == 0 ? 1L : -1L));
        bool shares = false;
        for (const auto& [z, fq] : mem.factors) {
            MultiPoly quot(m);
            if (pclab::try_divide(cand, binomial_poly(m, z, fq), quot)) shares = true;
        }
        if (!shares) mem.num = std::move(cand);
    }
    return mem;
}

}  // namespace detail

/// 24 members: 6 univariate, 13 bivariate, 5 trivariate. Deterministic.
inline std::vector<Member> make_corpus() {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
    std::vector<Member> out;
    const int plan[] = {1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 3, 3, 3, 3, 3};
    for (int m : plan) out.push_back(detail::make_member(rng, m));
    return out;
}

}  // namespace corpus

#endif
