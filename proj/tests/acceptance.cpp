// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <pclab/dsl.hpp>
#include <pclab/heights.hpp>
#include <pclab/profiler.hpp>
#include <pclab/rationality.hpp>
#include <pclab/serialize.hpp>

#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace pclab;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

MultiPoly from_terms(int m, std::vector<std::pair<MultiIndex, long>> terms) {
    MultiPoly p(m);
    for (auto& [n, c] : terms) p.add_term(n, CycloElement(c));
    return p;
}

CycloElement q(long num, long den = 1) { return CycloElement{Rat(num, den)}; }

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        pass = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
};

// --- criterion 1: log d_N ~ N/k for log(1+x^k), cross-checked against psi ---
Outcome criterion1() {
    Outcome out;
    const auto start = Clock::now();
    for (int k : {1, 2, 3}) {
        RemarkResult r = remark_experiment(k, 2000);
        if (r.ratio < 0.90 || r.ratio > 1.10)
            out.fail("k=" + std::to_string(k) + " ratio " + std::to_string(r.ratio) +
                     " outside [0.90, 1.10]");
        const double psi = oracles::chebyshev_psi(2000 / k);
        if (std::fabs(r.log_dN - psi) > 1e-9)
            out.fail("k=" + std::to_string(k) + " log d_N deviates from psi by " +
                     std::to_string(std::fabs(r.log_dN - psi)));
    }
    const double elapsed = seconds_since(start);
    if (elapsed >= 30.0) out.fail("runtime " + std::to_string(elapsed) + " s >= 30 s");
    out.detail = "k in {1,2,3} at N = 2000, " + std::to_string(elapsed) + " s";
    return out;
}

// --- criterion 2: certify round-trips a torsion-denominator corpus ----------
Outcome criterion2(const std::vector<corpus::Member>& corp) {
    Outcome out;
    const auto start = Clock::now();
    for (size_t i = 0; i < corp.size(); ++i) {
        CertifyConfig cfg;
        cfg.profile_N = 16;
        cfg.max_deg_num = 4;
        cfg.max_deg_den = 4;
        cfg.torsion_bound = 24;
        cfg.omega_samples = 5;
        cfg.seed = 0;
        DichotomyReport rep = certify_dichotomy(corp[i].series(), cfg);
        if (rep.verdict != DichotomyVerdict::consistent_rational_torsion)
            out.fail("member " + std::to_string(i) + " verdict " + to_string(rep.verdict));
        else if (!rep.reconstruction || !(rep.reconstruction->den == corp[i].den))
            out.fail("member " + std::to_string(i) + " denominator not recovered exactly");
    }
    const double elapsed = seconds_since(start);
    if (elapsed >= 120.0) out.fail("runtime " + std::to_string(elapsed) + " s >= 120 s");
    out.detail = std::to_string(corp.size()) + " members, " + std::to_string(elapsed) + " s";
    return out;
}

// --- criterion 3: profiles stay constant/logarithmic; trinomial is linear ---
Outcome criterion3(const std::vector<corpus::Member>& corp) {
    Outcome out;
    int profiled = 0;
    for (size_t i = 0; i < corp.size(); ++i) {
        // "non-constant coefficients": more than one distinct coefficient value
        CoeffTable probe = expand(corp[i].series(), 8);
        std::set<CycloElement, CycloRawLess> values;
        for (const auto& [n, c] : probe.values) values.insert(c);
        if (values.size() <= 1) continue;
        ++profiled;
        HeightProfile prof = height_profile(corp[i].series(), 256);
        if (prof.fitted_class != GrowthClass::constant &&
            prof.fitted_class != GrowthClass::logarithmic)
            out.fail("member " + std::to_string(i) + " classifies " +
                     to_string(prof.fitted_class));
    }
    SeriesExpr tri = SeriesExpr::rational(MultiPoly::constant(2, q(1)),
                                          from_terms(2, {{{0, 0}, 1}, {{1, 0}, -1}, {{0, 1}, -1}}));
    HeightProfile tp = height_profile(tri, 512);
    if (tp.fitted_class != GrowthClass::linear)
        out.fail("trinomial classifies " + to_string(tp.fitted_class));
    if (std::fabs(tp.fitted_constant - std::log(2.0)) > 0.05 * std::log(2.0))
        out.fail("trinomial constant " + std::to_string(tp.fitted_constant) +
                 " not within 5% of log 2");
    out.detail = std::to_string(profiled) + " members profiled to 256; trinomial constant " +
                 std::to_string(tp.fitted_constant);
    return out;
}

// --- criterion 4: the polydisc counterexample separates ---------------------
Outcome criterion4() {
    Outcome out;
    CertifyConfig cfg;
    cfg.profile_N = 64;
    DichotomyReport rep = certify_dichotomy(SeriesExpr::gapfact(), cfg);
    if (rep.verdict != DichotomyVerdict::irrational_in_window)
        out.fail("certify verdict " + to_string(rep.verdict));

    SeriesExpr line = line_specialize(SeriesExpr::gapfact(), {q(1), q(1)});
    const std::vector<CycloElement> data = oracles::series_terms(line, 200);
    if (guess_constant_recurrence(data, 8).has_value())
        out.fail("a constant recurrence of order <= 8 annihilates the (1,1)-line");
    if (guess_p_recurrence(data, 4, 4).has_value())
        out.fail("a P-recurrence within (4,4) annihilates the (1,1)-line");
    out.detail = "certify at N = 64 plus guessing on 200 line terms";
    return out;
}

// --- criterion 5: Hankel/Kronecker machinery --------------------------------
Outcome criterion5() {
    Outcome out;
    std::mt19937_64 rng(20260810);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = static_cast<int>(rng() % 5);
        std::vector<CycloElement> c;
        for (int i = 0; i <= 2 * n; ++i) c.emplace_back(oracles::random_rational(rng));
        if (!(hankel_determinant(c, n) == oracles::naive_hankel(c, n))) {
            out.fail("random Hankel determinant disagrees with the cofactor oracle at trial " +
                     std::to_string(trial));
            break;
        }
    }
    std::vector<CycloElement> catalan;
    for (unsigned long k = 0; k <= 20; ++k) catalan.emplace_back(Int(oracles::catalan(k)));
    for (int n = 0; n <= 10; ++n)
        if (!(hankel_determinant(catalan, n) == q(1))) {
            out.fail("Catalan Delta_" + std::to_string(n) + " != 1");
            break;
        }

    SeriesExpr fib = SeriesExpr::rational(from_terms(1, {{{1}, 1}}),
                                          from_terms(1, {{{0}, 1}, {{1}, -1}, {{2}, -1}}));
    KroneckerVerdict kv = kronecker_test(fib, 2, 4);
    const MultiPoly fib_den = from_terms(1, {{{0}, 1}, {{1}, -1}, {{2}, -1}});
    if (kv.outcome != KroneckerOutcome::rational || !kv.recurrence ||
        !(kv.recurrence->denominator().to_multipoly() == fib_den))
        out.fail("Fibonacci does not certify with denominator 1 - t - t^2");
    if (poles_are_roots_of_unity(fib_den, 24).all_roots_of_unity)
        out.fail("1 - t - t^2 wrongly certifies root-of-unity poles");
    if (!poles_are_roots_of_unity(from_terms(1, {{{0}, 1}, {{3}, -1}}), 24).all_roots_of_unity)
        out.fail("1 - t^3 fails the root-of-unity pole check");
    out.detail = "100 random Hankels, Catalan n <= 10, Fibonacci, 1 - t^3";
    return out;
}

// --- criterion 6: height identities ------------------------------------------
Outcome criterion6() {
    Outcome out;
    for (unsigned long k = 1; k <= 24 && out.pass; ++k)
        for (unsigned long j = 1; j <= k; ++j)
            if (std::gcd(j, k) == 1 && height(CycloElement::zeta(k, j)) != 0.0) {
                out.fail("h(zeta_" + std::to_string(k) + "^" + std::to_string(j) +
                         ") not exactly 0");
                break;
            }
    std::mt19937_64 rng(6174);
    for (int trial = 0; trial < 100; ++trial) {
        const Rat r = oracles::random_rational(rng, 5000, true);
        Int n = abs(r.get_num());
        const Int& d = r.get_den();
        const double expect = (n == 1 && d == 1) ? 0.0 : log_of(n >= d ? n : d);
        if (height(CycloElement{r}) != expect) {
            out.fail("h(p/q) misses log max(|p|,|q|) at trial " + std::to_string(trial));
            break;
        }
    }
    const double tol = 1e-9;
    for (int trial = 0; trial < 100; ++trial) {
        const unsigned long n = 1 + rng() % 12;
        const CycloElement a = oracles::random_cyclo(rng, n, 6, true);
        const double ha = height(a, tol);
        if (std::fabs(height(a.inverse(), tol) - ha) > 1e-6 ||
            std::fabs(height(conjugate(a), tol) - ha) > 1e-6 ||
            std::fabs(height(a * a, tol) - 2 * ha) > 1e-6) {
            out.fail("height identity exceeded 1e-6 at trial " + std::to_string(trial));
            break;
        }
    }
    out.detail = "roots of unity k <= 24, 100 fractions, 100 cyclotomic samples";
    return out;
}

// --- criterion 7: abs-square lines are P-recursive; affine substitution -----
Outcome criterion7(const std::vector<corpus::Member>& corp) {
    Outcome out;
    std::mt19937_64 rng(777);
    std::vector<size_t> picks;
    while (picks.size() < 10) {
        size_t i = rng() % corp.size();
        bool seen = false;
        for (size_t p : picks) seen = seen || p == i;
        if (!seen) picks.push_back(i);
    }
    for (size_t i : picks) {
        const corpus::Member& mem = corp[i];
        SeriesExpr line = line_specialize(abs_square(mem.series()),
                                          std::vector<CycloElement>(mem.m, q(1)));
        // 63 training rows for bounds (6,6) plus 50 genuinely held-out terms
        const std::vector<CycloElement> data = oracles::series_terms(line, 126);
        auto rec = guess_p_recurrence(data, 6, 6);
        if (!rec) {
            out.fail("member " + std::to_string(i) + " admits no (6,6) P-recurrence");
            continue;
        }
        // validate on the trailing 50 windows at their genuine indices
        bool ok = true;
        for (size_t n = data.size() - 50 - rec->order; n + rec->order < data.size(); ++n) {
            CycloElement acc;
            for (int j = 0; j <= rec->order; ++j)
                acc += rec->eval_poly(j, static_cast<long>(n)) * data[n + j];
            if (!acc.is_zero()) ok = false;
        }
        if (!ok) out.fail("member " + std::to_string(i) + " fails held-out validation");
    }

    SeriesExpr tri = SeriesExpr::rational(MultiPoly::constant(2, q(1)),
                                          from_terms(2, {{{0, 0}, 1}, {{1, 0}, -1}, {{0, 1}, -1}}));
    CoeffTable sub = expand(affine_substitute(tri, {q(2)}), 24);
    CoeffTable want = expand(SeriesExpr::rational(MultiPoly::constant(1, q(1)),
                                                  from_terms(1, {{{0}, 1}, {{1}, -3}})),
                             24);
    if (!(sub == want)) out.fail("affine substitution does not reproduce 1/(1-3x1) to degree 24");
    out.detail = "10 corpus members, 50 held-out terms each; affine check to degree 24";
    return out;
}

// --- criterion 8: byte-identical reports for identical config + seed --------
Outcome criterion8() {
    Outcome out;
    const char* bin = std::getenv("PCLAB_BIN");
    if (!bin) {
        out.fail("PCLAB_BIN not set; cannot drive the CLI");
        return out;
    }
    const std::string base = std::string(bin) +
                             " certify --m 2 --expr \"1/((1-zeta(3)*x1)*(1-x1*x2))\""
                             " --N 16 --seed 7 --format json -o ";
    auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string p1 = "/tmp/pclab_det_1.json", p2 = "/tmp/pclab_det_2.json";
    if (std::system((base + p1).c_str()) != 0 || std::system((base + p2).c_str()) != 0) {
        out.fail("certify run failed");
        return out;
    }
    const std::string a = slurp(p1), b = slurp(p2);
    if (a.empty() || a != b) out.fail("reports differ between identical runs");
    out.detail = std::to_string(a.size()) + " byte reports compared";
    return out;
}

}  // namespace

int main() {
    const std::vector<corpus::Member> corp = corpus::make_corpus();
    struct Entry {
        const char* name;
        std::function<Outcome()> run;
    };
    const Entry entries[] = {
        {"1 lcm growth of log(1+x^k) denominators", [&] { return criterion1(); }},
        {"2 torsion-denominator certify round trip", [&] { return criterion2(corp); }},
        {"3 height growth regimes", [&] { return criterion3(corp); }},
        {"4 polydisc counterexample separation", [&] { return criterion4(); }},
        {"5 Hankel/Kronecker machinery", [&] { return criterion5(); }},
        {"6 height identities", [&] { return criterion6(); }},
        {"7 abs-square lines and affine substitution", [&] { return criterion7(corp); }},
        {"8 deterministic reports", [&] { return criterion8(); }},
    };
    int failures = 0;
    for (const Entry& e : entries) {
        const auto start = Clock::now();
        Outcome out;
        try {
            out = e.run();
        } catch (const std::exception& ex) {
            out.fail(std::string("exception: ") + ex.what());
        }
        const double elapsed = seconds_since(start);
        std::printf("criterion %s: %s (%.1f s)%s%s\n", e.name, out.pass ? "PASS" : "FAIL", elapsed,
                    out.detail.empty() ? "" : " -- ", out.detail.c_str());
        if (!out.pass) ++failures;
    }
    return failures;
}
