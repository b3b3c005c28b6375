#ifndef PCLAB_RATIONALITY_HPP
#define PCLAB_RATIONALITY_HPP

#include <optional>
#include <utility>
#include <vector>

#include "pclab/linalg.hpp"
#include "pclab/multipoly.hpp"
#include "pclab/series.hpp"

namespace pclab {

/// Constant-coefficient relation sum_i coeffs[i] * g_{n+i} = 0 for n >= offset,
/// with coeffs normalized monic in the top term.
struct Recurrence {
    int order = 0;
    std::vector<CycloElement> coeffs;  // c_0..c_R, c_R != 0
    int offset = 0;

    /// B(t) = sum_i c_{R-i} t^i, the denominator this relation certifies.
    UniPoly denominator() const;
    bool annihilates(const std::vector<CycloElement>& data) const;
};

/// Polynomial-coefficient relation sum_i P_i(n) g_{n+i} = 0 for n >= offset.
struct PRecurrence {
    int order = 0;
    int degree = 0;
    std::vector<std::vector<CycloElement>> polys;  // polys[i][j] ~ coeff of n^j in P_i
    int offset = 0;

    CycloElement eval_poly(int i, long n) const;
    bool annihilates(const std::vector<CycloElement>& data) const;
};

struct TorsionFactor {
    CycloElement zeta;  // root of unity
    MultiIndex q;       // nonzero exponent vector
    int multiplicity = 1;
};

struct RationalForm {
    MultiPoly num;  // A
    MultiPoly den;  // B, normalized with B(0) = 1
    std::vector<TorsionFactor> factors;
    MultiPoly cofactor;  // B = cofactor * prod (1 - zeta x^q)^mult, exactly
    bool torsion_form = false;
    bool cofactor_undetermined_beyond_bound = false;
};

/// Exact determinant of the (n+1) x (n+1) Hankel matrix [c_{i+j}].
CycloElement hankel_determinant(const std::vector<CycloElement>& c, int n);

enum class KroneckerOutcome { rational, not_rational_in_window, inconclusive };

struct KroneckerVerdict {
    KroneckerOutcome outcome = KroneckerOutcome::inconclusive;
    std::optional<Recurrence> recurrence;  // present iff outcome == rational
};

/// Hankel-window rationality test: an all-zero window triggers recurrence
/// guessing (certified against every expanded term); a nonzero determinant at
/// the window end witnesses non-rationality at this resolution.
KroneckerVerdict kronecker_test(const SeriesExpr& f_uni, int window_start, int window_len);

std::optional<Recurrence> guess_constant_recurrence(const std::vector<CycloElement>& c,
                                                    int max_order);

std::optional<PRecurrence> guess_p_recurrence(const std::vector<CycloElement>& c, int max_order,
                                              int max_degree);

/// Pade-style exact reconstruction from n_terms coefficients of a univariate
/// series; the result carries the torsion factor list of its denominator.
/// torsion_bound 0 means the default lcm(2, coefficient conductor) * 12.
std::optional<RationalForm> reconstruct_univariate(const SeriesExpr& f_uni, int max_deg_num,
                                                   int max_deg_den, int n_terms,
                                                   int torsion_bound = 0);

/// Exact sparse-denominator reconstruction from the full coefficient simplex
/// of total degree N.
std::optional<RationalForm> reconstruct_multivariate(const SeriesExpr& f, int max_deg_num,
                                                     int max_deg_den, int n_trunc,
                                                     int torsion_bound = 0);

struct PoleCertificate {
    bool all_roots_of_unity = false;
    std::vector<std::pair<unsigned long, int>> cyclotomic_multiplicities;  // (k, multiplicity)
    MultiPoly residual;  // constant iff all poles certified
};

/// Repeatedly peels gcd(b, Phi_k) over the coefficient field for k up to
/// k_bound; certifies whether every root of b is a root of unity.
PoleCertificate poles_are_roots_of_unity(const MultiPoly& b, int k_bound);

struct BinomialFactorization {
    std::vector<TorsionFactor> factors;
    MultiPoly cofactor;
    bool torsion_form = false;
    bool undetermined_beyond_bound = false;
};

/// Trial division of B (with B(0) = 1) by torsion binomials 1 - zeta x^q,
/// with a weighted univariate screen ahead of each exact division.
BinomialFactorization binomial_factorization(const MultiPoly& b, int torsion_bound);

/// lcm(2, conductor of the coefficients) * 12
int default_torsion_bound(const MultiPoly& b);

}  // namespace pclab

#endif
