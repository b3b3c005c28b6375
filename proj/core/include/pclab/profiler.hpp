#ifndef PCLAB_PROFILER_HPP
#define PCLAB_PROFILER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pclab/heights.hpp"
#include "pclab/rationality.hpp"
#include "pclab/series.hpp"

namespace pclab {

enum class DichotomyVerdict {
    consistent_rational_torsion,
    rational_nontorsion_denominator,
    height_growth_excludes_hypothesis,
    irrational_in_window,
    inconclusive,
};

std::string to_string(DichotomyVerdict v);
DichotomyVerdict dichotomy_verdict_from_string(const std::string& s);

std::string to_string(KroneckerOutcome o);
KroneckerOutcome kronecker_outcome_from_string(const std::string& s);

struct LineDiagnostic {
    std::vector<CycloElement> omegas;  // root-of-unity tuple
    KroneckerOutcome kronecker = KroneckerOutcome::inconclusive;
    /// True when neither a constant recurrence nor a P-recurrence within the
    /// configured bounds annihilates the expanded line.
    bool recurrence_free = false;
};

struct CertifyConfig {
    int m = 1;
    int profile_N = 128;
    int max_deg_num = 4;
    int max_deg_den = 4;
    int torsion_bound = 24;
    int omega_samples = 5;
    std::uint64_t seed = 0;
    double tol = 1e-9;
    int kronecker_window_len = 8;
    int line_guess_order = 8;     // constant-recurrence bound on lines
    int line_p_order = 4;         // P-recurrence bounds on lines
    int line_p_degree = 4;
    int threads = 1;              // line diagnostics run concurrently when > 1
    std::string expr;             // config snapshot for the report
};

struct DichotomyReport {
    HeightProfile profile;
    std::vector<LineDiagnostic> line_diagnostics;
    std::optional<RationalForm> reconstruction;
    DichotomyVerdict verdict = DichotomyVerdict::inconclusive;
    CertifyConfig parameters;
    /// Fitted exponent alpha of the squared-modulus shell sums
    /// g(n) = sum_{|n| = n} |f(n)|^2 ~ C * n^alpha; reported, never used
    /// for the verdict. Absent when too few shells are nonzero.
    std::optional<double> abs_square_exponent;
};

/// Fitted growth exponent of the abs-square shell sums on the tail half of
/// a log-log least-squares fit. Requires n_max >= 8; needs at least 6
/// nonzero tail shells, otherwise nullopt.
std::optional<double> abs_square_shell_exponent(const SeriesExpr& f, int n_max);

/// Full pipeline: height/denominator profile, root-of-unity line diagnostics,
/// reconstruction, shell-growth exponent, and the combined verdict.
DichotomyReport certify_dichotomy(const SeriesExpr& f, const CertifyConfig& config);

struct RemarkResult {
    int k = 1;
    int N = 1;
    double log_dN = 0.0;
    double target = 0.0;  // N/k
    double ratio = 0.0;   // log_dN / target
    Int dN_exact;         // valid while the profile kept the exact lcm
};

/// Exact-lcm growth experiment on log(1 + x^k) expanded to degree N.
RemarkResult remark_experiment(int k, int n);

}  // namespace pclab

#endif
