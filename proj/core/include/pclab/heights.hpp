#ifndef PCLAB_HEIGHTS_HPP
#define PCLAB_HEIGHTS_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pclab/cyclotomic.hpp"
#include "pclab/series.hpp"

namespace pclab {

struct PrimeSet {
    std::set<unsigned long> primes;

    /// Validates primality and rejects duplicates.
    static PrimeSet from(const std::vector<unsigned long>& ps);
    bool contains(unsigned long p) const { return primes.count(p) != 0; }
};

/// Absolute logarithmic Weil height, within +/- tol. Rationals and roots of
/// unity take exact paths; everything else goes through the Mahler measure of
/// the minimal polynomial with certified root enclosures.
double height(const CycloElement& a, double tol = 1e-9);

/// Exact affine tuple height over Q: coprime integer representatives of
/// [v_1 : ... : v_m : 1], then log of the max absolute value.
double height_tuple_rational(const std::vector<CycloElement>& v);

/// True iff every prime factor of den(a) lies in S.
bool is_s_integer(const CycloElement& a, const PrimeSet& s);

enum class GrowthClass { constant, logarithmic, linear, superlinear, inconclusive };

std::string to_string(GrowthClass c);
GrowthClass growth_class_from_string(const std::string& s);

struct GrowthFit {
    GrowthClass cls = GrowthClass::inconclusive;
    double constant = 0.0;
};

/// Least-squares fit of the tail half against the models c, c*log(N+1), c*N.
GrowthFit classify_growth(const std::vector<double>& seq);

struct HeightProfile {
    int N_max = 0;
    std::vector<double> hN;                    // running max height, index N
    std::vector<double> dN_log;                // log of the running exact lcm
    std::vector<std::optional<Int>> dN_exact;  // exact lcm while it fits the bit cap
    GrowthClass fitted_class = GrowthClass::inconclusive;
    double fitted_constant = 0.0;
};

/// Exact d_N values are kept only up to this many bits; beyond it only the
/// log is tracked (d_N can grow like e^N).
inline constexpr size_t kProfileExactBitCap = 65536;

HeightProfile height_profile(const SeriesExpr& f, int n_max, double tol = 1e-9);

}  // namespace pclab

#endif
