#include "pclab/profiler.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>

namespace pclab {

std::string to_string(DichotomyVerdict v) {
    switch (v) {
        case DichotomyVerdict::consistent_rational_torsion: return "consistent_rational_torsion";
        case DichotomyVerdict::rational_nontorsion_denominator:
            return "rational_nontorsion_denominator";
        case DichotomyVerdict::height_growth_excludes_hypothesis:
            return "height_growth_excludes_hypothesis";
        case DichotomyVerdict::irrational_in_window: return "irrational_in_window";
        case DichotomyVerdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

DichotomyVerdict dichotomy_verdict_from_string(const std::string& s) {
    if (s == "consistent_rational_torsion") return DichotomyVerdict::consistent_rational_torsion;
    if (s == "rational_nontorsion_denominator")
        return DichotomyVerdict::rational_nontorsion_denominator;
    if (s == "height_growth_excludes_hypothesis")
        return DichotomyVerdict::height_growth_excludes_hypothesis;
    if (s == "irrational_in_window") return DichotomyVerdict::irrational_in_window;
    if (s == "inconclusive") return DichotomyVerdict::inconclusive;
    throw Error("parse", "unknown verdict " + s);
}

std::string to_string(KroneckerOutcome o) {
    switch (o) {
        case KroneckerOutcome::rational: return "rational";
        case KroneckerOutcome::not_rational_in_window: return "not_rational_in_window";
        case KroneckerOutcome::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

KroneckerOutcome kronecker_outcome_from_string(const std::string& s) {
    if (s == "rational") return KroneckerOutcome::rational;
    if (s == "not_rational_in_window") return KroneckerOutcome::not_rational_in_window;
    if (s == "inconclusive") return KroneckerOutcome::inconclusive;
    throw Error("parse", "unknown kronecker outcome " + s);
}

namespace {

// Orders uniform over the divisors of torsion_bound, primitive residues
// uniform; fully determined by the seed.
std::vector<std::vector<CycloElement>> sample_omega_tuples(int m, int count, int torsion_bound,
                                                           std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const std::vector<unsigned long> divs = divisors(static_cast<unsigned long>(torsion_bound));
    std::vector<std::vector<CycloElement>> out;
    out.reserve(count);
    for (int s = 0; s < count; ++s) {
        std::vector<CycloElement> tuple;
        tuple.reserve(m);
        for (int i = 0; i < m; ++i) {
            const unsigned long d = divs[rng() % divs.size()];
            std::vector<unsigned long> residues;
            for (unsigned long j = 1; j <= d; ++j)
                if (std::gcd(j, d) == 1) residues.push_back(j);
            tuple.push_back(CycloElement::zeta(d, residues[rng() % residues.size()]));
        }
        out.push_back(std::move(tuple));
    }
    return out;
}

std::vector<CycloElement> line_terms(const SeriesExpr& line, int terms) {
    CoeffTable t = expand(line, terms - 1);
    std::vector<CycloElement> c(terms);
    for (int i = 0; i < terms; ++i) c[i] = t.at(MultiIndex{i});
    return c;
}

}  // namespace

std::optional<double> abs_square_shell_exponent(const SeriesExpr& f, int n_max) {
    if (n_max < 8) return std::nullopt;
    SeriesExpr line =
        line_specialize(abs_square(f), std::vector<CycloElement>(f.arity(), CycloElement(1L)));
    CoeffTable t = expand(line, n_max);
    std::vector<std::pair<double, double>> pts;  // (log n, log g(n)) on the tail half
    for (int n = n_max / 2; n <= n_max; ++n) {
        const CycloElement g = t.at(MultiIndex{n});
        if (g.is_zero()) continue;
        const double val = std::max(embedding(g).real(), 1e-300);
        pts.emplace_back(std::log(static_cast<double>(n)), std::log(val));
    }
    if (pts.size() < 6) return std::nullopt;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double count = static_cast<double>(pts.size());
    const double var = sxx - sx * sx / count;
    if (var <= 0) return std::nullopt;
    return (sxy - sx * sy / count) / var;
}

DichotomyReport certify_dichotomy(const SeriesExpr& f, const CertifyConfig& config) {
    CertifyConfig cfg = config;
    cfg.m = f.arity();
    if (cfg.profile_N < cfg.max_deg_num + cfg.max_deg_den + 2)
        throw LengthError("certify needs N >= max_deg_num + max_deg_den + 2 = " +
                          std::to_string(cfg.max_deg_num + cfg.max_deg_den + 2));

    DichotomyReport rep;
    rep.parameters = cfg;
    rep.profile = height_profile(f, cfg.profile_N, cfg.tol);

    const int ws = cfg.max_deg_den;
    const int wl = cfg.kronecker_window_len;
    // line data reaches 2N so the guess validation holds out as much depth as
    // the Hankel window resolution the profile depth suggests
    const int guess_terms =
        std::max({2 * (ws + wl) + 8, 2 * cfg.line_guess_order + 4,
                  (cfg.line_p_order + 1) * (cfg.line_p_degree + 1) + cfg.line_p_order + 8,
                  2 * cfg.profile_N + 8});
    const auto tuples = sample_omega_tuples(cfg.m, cfg.omega_samples, cfg.torsion_bound, cfg.seed);
    auto run_line = [&](const std::vector<CycloElement>& tuple) {
        SeriesExpr line = line_specialize(f, tuple);
        LineDiagnostic diag;
        diag.omegas = tuple;
        KroneckerVerdict kv = kronecker_test(line, ws, wl);
        diag.kronecker = kv.outcome;
        if (kv.outcome != KroneckerOutcome::rational) {
            const std::vector<CycloElement> data = line_terms(line, guess_terms);
            const bool has_const = guess_constant_recurrence(data, cfg.line_guess_order).has_value();
            const bool has_p =
                has_const || guess_p_recurrence(data, cfg.line_p_order, cfg.line_p_degree).has_value();
            diag.recurrence_free = !has_const && !has_p;
        }
        return diag;
    };
    if (cfg.threads > 1 && tuples.size() > 1) {
        std::vector<std::future<LineDiagnostic>> futs;
        futs.reserve(tuples.size());
        for (const auto& tuple : tuples)
            futs.push_back(std::async(std::launch::async, run_line, tuple));
        for (auto& fut : futs) rep.line_diagnostics.push_back(fut.get());  // sample order
    } else {
        for (const auto& tuple : tuples) rep.line_diagnostics.push_back(run_line(tuple));
    }

    rep.abs_square_exponent = abs_square_shell_exponent(f, cfg.profile_N);

    const int recon_n = std::max(cfg.max_deg_num + cfg.max_deg_den + 2, 16);
    try {
        if (cfg.m == 1)
            rep.reconstruction = reconstruct_univariate(f, cfg.max_deg_num, cfg.max_deg_den,
                                                        recon_n + 1, cfg.torsion_bound);
        else
            rep.reconstruction = reconstruct_multivariate(f, cfg.max_deg_num, cfg.max_deg_den,
                                                          recon_n, cfg.torsion_bound);
    } catch (const VerificationError&) {
        // a candidate that fails re-expansion is no reconstruction at all
        rep.reconstruction = std::nullopt;
    }

    const GrowthClass cls = rep.profile.fitted_class;
    const bool growth_small =
        cls == GrowthClass::constant || cls == GrowthClass::logarithmic;
    bool line_counterevidence = false;
    for (const LineDiagnostic& d : rep.line_diagnostics)
        if (d.kronecker == KroneckerOutcome::not_rational_in_window || d.recurrence_free)
            line_counterevidence = true;

    if (cls == GrowthClass::linear || cls == GrowthClass::superlinear) {
        rep.verdict = DichotomyVerdict::height_growth_excludes_hypothesis;
    } else if (rep.reconstruction && !rep.reconstruction->torsion_form) {
        rep.verdict = DichotomyVerdict::rational_nontorsion_denominator;
    } else if (rep.reconstruction && rep.reconstruction->torsion_form && growth_small) {
        rep.verdict = DichotomyVerdict::consistent_rational_torsion;
    } else if (!rep.reconstruction && line_counterevidence) {
        rep.verdict = DichotomyVerdict::irrational_in_window;
    } else {
        rep.verdict = DichotomyVerdict::inconclusive;
    }
    return rep;
}

RemarkResult remark_experiment(int k, int n) {
    if (k < 1) throw LengthError("remark experiment needs k >= 1");
    if (n < k) throw LengthError("remark experiment needs N >= k");
    RemarkResult res;
    res.k = k;
    res.N = n;
    auto cursor = make_shell_cursor(SeriesExpr::log1p(static_cast<unsigned long>(k)));
    Int l(1);
    for (int d = 0; d <= n; ++d)
        for (const auto& [idx, c] : cursor->next()) l = int_lcm(l, den(c));
    res.dN_exact = l;
    res.log_dN = l == 1 ? 0.0 : log_of(l);
    res.target = static_cast<double>(n) / static_cast<double>(k);
    res.ratio = res.log_dN / res.target;
    return res;
}

}  // namespace pclab
