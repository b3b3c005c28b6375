#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <pclab/dsl.hpp>
#include <pclab/errors.hpp>
#include <pclab/heights.hpp>
#include <pclab/profiler.hpp>
#include <pclab/rationality.hpp>
#include <pclab/serialize.hpp>
#include <pclab/series.hpp>

namespace {

using pclab::io::Json;

struct Output {
    std::string format = "text";  // json | csv | text
    std::string path;             // empty = stdout

    void write(const std::string& payload) const {
        if (path.empty()) {
            std::fputs(payload.c_str(), stdout);
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) throw pclab::Error("io", "cannot open output file " + path);
        out << payload;
    }
};

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void add_output_flags(CLI::App* cmd, Output& out) {
    cmd->add_option("--format", out.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    cmd->add_option("--output,-o", out.path, "Write the result to this file instead of stdout");
}

int exit_code_for(const pclab::DichotomyReport& rep, const std::string& expect) {
    if (expect != "torsion") return 0;
    if (rep.verdict == pclab::DichotomyVerdict::rational_nontorsion_denominator ||
        rep.verdict == pclab::DichotomyVerdict::irrational_in_window)
        return 3;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pclab: exact height profiling and rationality certification for power series"};
    app.require_subcommand(1);

    Output out;

    // ---- expand ----------------------------------------------------------
    auto* cmd_expand = app.add_subcommand("expand", "Expand a series to total degree N");
    std::string ex_expr;
    int ex_m = 1, ex_n = 16;
    cmd_expand->add_option("--expr", ex_expr, "Series expression")->required();
    cmd_expand->add_option("--m", ex_m, "Variable count")->capture_default_str();
    cmd_expand->add_option("--N", ex_n, "Truncation total degree")->capture_default_str();
    add_output_flags(cmd_expand, out);

    // ---- profile ---------------------------------------------------------
    auto* cmd_profile = app.add_subcommand("profile", "Height and denominator growth profile");
    std::string pf_expr, pf_sprimes;
    int pf_m = 1, pf_n = 128;
    double pf_tol = 1e-9;
    cmd_profile->add_option("--expr", pf_expr, "Series expression")->required();
    cmd_profile->add_option("--m", pf_m, "Variable count")->capture_default_str();
    cmd_profile->add_option("--N", pf_n, "Profile depth N_max")->capture_default_str();
    cmd_profile->add_option("--tol", pf_tol, "Height tolerance")
        ->envname("PCLAB_TOL")
        ->capture_default_str();
    cmd_profile->add_option("--s-primes", pf_sprimes,
                            "Comma-separated primes: also report S-integrality of the expansion");
    add_output_flags(cmd_profile, out);

    // ---- hankel ----------------------------------------------------------
    auto* cmd_hankel = app.add_subcommand("hankel", "Exact Hankel determinant of a univariate series");
    std::string hk_expr;
    int hk_n = 2;
    cmd_hankel->add_option("--expr", hk_expr, "Univariate series expression")->required();
    cmd_hankel->add_option("--n", hk_n, "Determinant order (matrix is (n+1) x (n+1))")
        ->capture_default_str();
    add_output_flags(cmd_hankel, out);

    // ---- guess-recurrence --------------------------------------------------
    auto* cmd_guess = app.add_subcommand("guess-recurrence", "Guess an exact recurrence from terms");
    std::string gr_expr, gr_kind = "constant";
    int gr_terms = 64, gr_order = 8, gr_degree = 4;
    cmd_guess->add_option("--expr", gr_expr, "Univariate series expression")->required();
    cmd_guess->add_option("--kind", gr_kind, "Recurrence kind")
        ->check(CLI::IsMember({"constant", "p"}))
        ->capture_default_str();
    cmd_guess->add_option("--terms", gr_terms, "Number of terms to expand")->capture_default_str();
    cmd_guess->add_option("--max-order", gr_order, "Order bound")->capture_default_str();
    cmd_guess->add_option("--max-degree", gr_degree, "Degree bound (P-recurrences)")
        ->capture_default_str();
    add_output_flags(cmd_guess, out);

    // ---- reconstruct -------------------------------------------------------
    auto* cmd_recon = app.add_subcommand("reconstruct", "Reconstruct a rational form from the expansion");
    std::string rc_expr;
    int rc_m = 1, rc_n = 16, rc_num = 4, rc_den = 4, rc_torsion = 24;
    cmd_recon->add_option("--expr", rc_expr, "Series expression")->required();
    cmd_recon->add_option("--m", rc_m, "Variable count")->capture_default_str();
    cmd_recon->add_option("--N", rc_n, "Truncation total degree")->capture_default_str();
    cmd_recon->add_option("--max-deg-num", rc_num, "Numerator degree bound")->capture_default_str();
    cmd_recon->add_option("--max-deg-den", rc_den, "Denominator degree bound")->capture_default_str();
    cmd_recon->add_option("--torsion-bound", rc_torsion, "Root-of-unity order bound")
        ->envname("PCLAB_TORSION_BOUND")
        ->capture_default_str();
    add_output_flags(cmd_recon, out);

    // ---- poles-check -------------------------------------------------------
    auto* cmd_poles = app.add_subcommand("poles-check", "Certify that all roots of a polynomial are roots of unity");
    std::string pl_poly;
    int pl_bound = 24;
    cmd_poles->add_option("--poly", pl_poly, "Univariate polynomial expression in t")->required();
    cmd_poles->add_option("--k-bound", pl_bound, "Cyclotomic order bound")->capture_default_str();
    add_output_flags(cmd_poles, out);

    // ---- certify -----------------------------------------------------------
    auto* cmd_certify = app.add_subcommand("certify", "Run the full dichotomy pipeline");
    std::string ct_expr, ct_expect;
    pclab::CertifyConfig ct;
    cmd_certify->add_option("--expr", ct_expr, "Series expression")->required();
    cmd_certify->add_option("--m", ct.m, "Variable count")->capture_default_str();
    cmd_certify->add_option("--N", ct.profile_N, "Profile depth")->capture_default_str();
    cmd_certify->add_option("--max-deg-num", ct.max_deg_num, "Numerator degree bound")
        ->capture_default_str();
    cmd_certify->add_option("--max-deg-den", ct.max_deg_den, "Denominator degree bound")
        ->capture_default_str();
    cmd_certify->add_option("--torsion-bound", ct.torsion_bound, "Root-of-unity order bound")
        ->envname("PCLAB_TORSION_BOUND")
        ->capture_default_str();
    cmd_certify->add_option("--omega-samples", ct.omega_samples, "Number of line diagnostics")
        ->capture_default_str();
    cmd_certify->add_option("--seed", ct.seed, "Sampling seed")->capture_default_str();
    cmd_certify->add_option("--tol", ct.tol, "Height tolerance")
        ->envname("PCLAB_TOL")
        ->capture_default_str();
    cmd_certify->add_option("--threads", ct.threads, "Concurrent line diagnostics")
        ->envname("PCLAB_THREADS")
        ->capture_default_str();
    cmd_certify->add_option("--expect", ct_expect,
                            "Assert the verdict (\"torsion\" exits 3 on refuting verdicts)")
        ->check(CLI::IsMember({"torsion"}));
    add_output_flags(cmd_certify, out);

    // ---- remark ------------------------------------------------------------
    auto* cmd_remark = app.add_subcommand("remark", "Exact lcm growth of log(1+x^k) denominators");
    int rm_k = 1, rm_n = 100;
    cmd_remark->add_option("--k", rm_k, "Gap parameter")->required();
    cmd_remark->add_option("--N", rm_n, "Expansion degree")->required();
    add_output_flags(cmd_remark, out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;  // usage error
    }

    try {
        if (*cmd_expand) {
            pclab::SeriesExpr f = pclab::dsl::lower_to_series(ex_expr, ex_m);
            pclab::CoeffTable t = pclab::expand(f, ex_n);
            if (out.format == "json") {
                out.write(dump(pclab::io::to_json(t)));
            } else if (out.format == "csv") {
                out.write(pclab::io::to_csv(t));
            } else {
                std::ostringstream os;
                for (const auto& [n, c] : t.values) {
                    os << "(";
                    for (size_t i = 0; i < n.size(); ++i) os << (i ? "," : "") << n[i];
                    os << ") " << c.to_string() << "\n";
                }
                out.write(os.str());
            }
        } else if (*cmd_profile) {
            pclab::SeriesExpr f = pclab::dsl::lower_to_series(pf_expr, pf_m);
            pclab::HeightProfile prof = pclab::height_profile(f, pf_n, pf_tol);
            std::optional<bool> s_integral;
            if (!pf_sprimes.empty()) {
                std::vector<unsigned long> ps;
                std::stringstream ss(pf_sprimes);
                std::string item;
                while (std::getline(ss, item, ',')) ps.push_back(std::stoul(item));
                pclab::PrimeSet s = pclab::PrimeSet::from(ps);
                bool ok = true;
                auto cursor = pclab::make_shell_cursor(f);
                for (int d = 0; d <= pf_n && ok; ++d)
                    for (const auto& [n, c] : cursor->next())
                        if (!pclab::is_s_integer(c, s)) {
                            ok = false;
                            break;
                        }
                s_integral = ok;
            }
            if (out.format == "json") {
                Json j = pclab::io::to_json(prof);
                if (s_integral) j["s_integral"] = *s_integral;
                out.write(dump(j));
            } else if (out.format == "csv") {
                out.write(pclab::io::to_csv(prof));
            } else {
                std::ostringstream os;
                os << "class: " << pclab::to_string(prof.fitted_class)
                   << ", constant: " << pclab::io::format_double(prof.fitted_constant) << "\n";
                os << "h_N at " << prof.N_max << ": " << pclab::io::format_double(prof.hN.back())
                   << ", log d_N: " << pclab::io::format_double(prof.dN_log.back()) << "\n";
                if (s_integral)
                    os << "S-integral coefficients: " << (*s_integral ? "yes" : "no") << "\n";
                out.write(os.str());
            }
        } else if (*cmd_hankel) {
            pclab::SeriesExpr f = pclab::dsl::lower_to_series(hk_expr, 1);
            if (f.arity() != 1) throw pclab::ArityError("hankel needs a univariate series");
            pclab::CoeffTable t = pclab::expand(f, 2 * hk_n);
            std::vector<pclab::CycloElement> c(2 * hk_n + 1);
            for (int i = 0; i <= 2 * hk_n; ++i) c[i] = t.at(pclab::MultiIndex{i});
            pclab::CycloElement d = pclab::hankel_determinant(c, hk_n);
            if (out.format == "json") {
                Json j;
                j["n"] = hk_n;
                j["delta"] = d.to_string();
                out.write(dump(j));
            } else if (out.format == "csv") {
                out.write("n,delta\n" + std::to_string(hk_n) + ",\"" + d.to_string() + "\"\n");
            } else {
                out.write(d.to_string() + "\n");
            }
        } else if (*cmd_guess) {
            pclab::SeriesExpr f = pclab::dsl::lower_to_series(gr_expr, 1);
            if (f.arity() != 1) throw pclab::ArityError("guess-recurrence needs a univariate series");
            pclab::CoeffTable t = pclab::expand(f, gr_terms - 1);
            std::vector<pclab::CycloElement> c(gr_terms);
            for (int i = 0; i < gr_terms; ++i) c[i] = t.at(pclab::MultiIndex{i});
            Json j;
            std::string text;
            if (gr_kind == "constant") {
                auto rec = pclab::guess_constant_recurrence(c, gr_order);
                j["found"] = rec.has_value();
                if (rec) {
                    j["recurrence"] = pclab::io::to_json(*rec);
                    text = "order " + std::to_string(rec->order) + ", offset " +
                           std::to_string(rec->offset) + ", denominator " +
                           rec->denominator().to_multipoly().to_string() + "\n";
                } else {
                    text = "no constant recurrence up to order " + std::to_string(gr_order) + "\n";
                }
            } else {
                auto rec = pclab::guess_p_recurrence(c, gr_order, gr_degree);
                j["found"] = rec.has_value();
                if (rec) {
                    j["recurrence"] = pclab::io::to_json(*rec);
                    text = "order " + std::to_string(rec->order) + ", degree " +
                           std::to_string(rec->degree) + ", offset " + std::to_string(rec->offset) +
                           "\n";
                } else {
                    text = "no P-recurrence up to order " + std::to_string(gr_order) +
                           ", degree " + std::to_string(gr_degree) + "\n";
                }
            }
            if (out.format == "json")
                out.write(dump(j));
            else
                out.write(text);
        } else if (*cmd_recon) {
            pclab::SeriesExpr f = pclab::dsl::lower_to_series(rc_expr, rc_m);
            std::optional<pclab::RationalForm> form =
                f.arity() == 1
                    ? pclab::reconstruct_univariate(f, rc_num, rc_den, rc_n + 1, rc_torsion)
                    : pclab::reconstruct_multivariate(f, rc_num, rc_den, rc_n, rc_torsion);
            if (out.format == "json") {
                Json j;
                j["found"] = form.has_value();
                j["form"] = form ? pclab::io::to_json(*form) : Json(nullptr);
                out.write(dump(j));
            } else {
                if (!form) {
                    out.write("no rational form within bounds\n");
                } else {
                    std::ostringstream os;
                    os << "num = " << form->num.to_string() << "\n";
                    os << "den = " << form->den.to_string() << "\n";
                    os << "torsion_form = " << (form->torsion_form ? "true" : "false") << "\n";
                    for (const auto& fac : form->factors) {
                        os << "factor: zeta = " << fac.zeta.to_string() << ", q = [";
                        for (size_t i = 0; i < fac.q.size(); ++i)
                            os << (i ? "," : "") << fac.q[i];
                        os << "], mult = " << fac.multiplicity << "\n";
                    }
                    if (!form->torsion_form)
                        os << "cofactor = " << form->cofactor.to_string() << "\n";
                    out.write(os.str());
                }
            }
        } else if (*cmd_poles) {
            pclab::MultiPoly b = pclab::dsl::parse_polynomial(pl_poly, 1);
            pclab::PoleCertificate cert = pclab::poles_are_roots_of_unity(b, pl_bound);
            if (out.format == "json") {
                out.write(dump(pclab::io::to_json(cert)));
            } else {
                std::ostringstream os;
                os << (cert.all_roots_of_unity ? "true" : "false") << "\n";
                for (const auto& [k, mult] : cert.cyclotomic_multiplicities)
                    os << "Phi_" << k << " multiplicity " << mult << "\n";
                if (!cert.all_roots_of_unity)
                    os << "residual: " << cert.residual.to_string() << "\n";
                out.write(os.str());
            }
        } else if (*cmd_certify) {
            ct.expr = ct_expr;
            pclab::SeriesExpr f = pclab::dsl::lower_to_series(ct_expr, ct.m);
            pclab::DichotomyReport rep = pclab::certify_dichotomy(f, ct);
            if (out.format == "json")
                out.write(dump(pclab::io::to_json(rep)));
            else if (out.format == "csv")
                throw pclab::Error("usage", "certify has no CSV form; use --format json or text");
            else
                out.write(pclab::io::report_text_summary(rep));
            return exit_code_for(rep, ct_expect);
        } else if (*cmd_remark) {
            pclab::RemarkResult res = pclab::remark_experiment(rm_k, rm_n);
            if (out.format == "json")
                out.write(dump(pclab::io::to_json(res)));
            else
                out.write(pclab::io::to_csv(res));
        }
        return 0;
    } catch (const pclab::Error& e) {
        if (out.format == "json") {
            Json j;
            j["error"] = e.what();
            j["kind"] = e.kind();
            std::fprintf(stderr, "%s\n", j.dump().c_str());
        } else {
            std::fprintf(stderr, "error: %s\n", e.what());
        }
        return e.kind() == "usage" ? 1 : 2;
    } catch (const std::exception& e) {
        if (out.format == "json") {
            Json j;
            j["error"] = e.what();
            j["kind"] = "internal";
            std::fprintf(stderr, "%s\n", j.dump().c_str());
        } else {
            std::fprintf(stderr, "error: %s\n", e.what());
        }
        return 2;
    }
}
