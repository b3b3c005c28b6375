#include "pclab/serialize.hpp"

#include <cstdio>
#include <sstream>

#include "pclab/dsl.hpp"

namespace pclab::io {

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

Json to_json(const CoeffTable& t) {
    Json j;
    j["schema"] = "pc-table/1";
    j["m"] = t.m;
    j["N"] = t.N;
    Json entries = Json::array();
    for (const auto& [n, c] : t.values) {
        Json e;
        e["n"] = n;
        e["c"] = c.to_string();
        entries.push_back(std::move(e));
    }
    j["entries"] = std::move(entries);
    return j;
}

std::string to_csv(const CoeffTable& t) {
    std::ostringstream os;
    for (int i = 1; i <= t.m; ++i) os << "n" << i << ",";
    os << "c\n";
    for (const auto& [n, c] : t.values) {
        for (int e : n) os << e << ",";
        os << '"' << c.to_string() << '"' << "\n";
    }
    return os.str();
}

Json to_json(const HeightProfile& p) {
    Json j;
    j["schema"] = "pc-profile/1";
    Json ns = Json::array(), hs = Json::array(), ds = Json::array();
    for (size_t i = 0; i < p.hN.size(); ++i) {
        ns.push_back(i);
        hs.push_back(p.hN[i]);
        ds.push_back(p.dN_log[i]);
    }
    j["N"] = std::move(ns);
    j["hN"] = std::move(hs);
    j["log_dN"] = std::move(ds);
    j["class"] = to_string(p.fitted_class);
    j["constant"] = p.fitted_constant;
    return j;
}

HeightProfile profile_from_json(const Json& j) {
    HeightProfile p;
    const auto& hs = j.at("hN");
    const auto& ds = j.at("log_dN");
    for (size_t i = 0; i < hs.size(); ++i) {
        p.hN.push_back(hs[i].get<double>());
        p.dN_log.push_back(ds[i].get<double>());
        p.dN_exact.emplace_back(std::nullopt);
    }
    p.N_max = static_cast<int>(p.hN.size()) - 1;
    p.fitted_class = growth_class_from_string(j.at("class").get<std::string>());
    p.fitted_constant = j.at("constant").get<double>();
    return p;
}

std::string to_csv(const HeightProfile& p) {
    std::ostringstream os;
    os << "N,hN,log_dN\n";
    for (size_t i = 0; i < p.hN.size(); ++i)
        os << i << "," << format_double(p.hN[i]) << "," << format_double(p.dN_log[i]) << "\n";
    return os.str();
}

Json to_json(const MultiPoly& p) {
    Json j;
    j["m"] = p.m;
    Json terms = Json::array();
    for (const auto& [n, c] : p.terms) {
        Json e;
        e["n"] = n;
        e["c"] = c.to_string();
        terms.push_back(std::move(e));
    }
    j["terms"] = std::move(terms);
    return j;
}

MultiPoly multipoly_from_json(const Json& j) {
    MultiPoly p(j.at("m").get<int>());
    for (const auto& e : j.at("terms")) {
        MultiIndex n = e.at("n").get<MultiIndex>();
        p.add_term(n, dsl::parse_element(e.at("c").get<std::string>()));
    }
    return p;
}

Json to_json(const RationalForm& f) {
    Json j;
    j["num"] = to_json(f.num);
    j["den"] = to_json(f.den);
    Json factors = Json::array();
    for (const TorsionFactor& t : f.factors) {
        Json e;
        e["zeta"] = t.zeta.to_string();
        e["q"] = t.q;
        e["mult"] = t.multiplicity;
        factors.push_back(std::move(e));
    }
    j["factors"] = std::move(factors);
    j["cofactor"] = to_json(f.cofactor);
    j["torsion_form"] = f.torsion_form;
    j["cofactor_undetermined_beyond_bound"] = f.cofactor_undetermined_beyond_bound;
    return j;
}

RationalForm rational_form_from_json(const Json& j) {
    RationalForm f;
    f.num = multipoly_from_json(j.at("num"));
    f.den = multipoly_from_json(j.at("den"));
    for (const auto& e : j.at("factors")) {
        TorsionFactor t;
        t.zeta = dsl::parse_element(e.at("zeta").get<std::string>());
        t.q = e.at("q").get<MultiIndex>();
        t.multiplicity = e.at("mult").get<int>();
        f.factors.push_back(std::move(t));
    }
    f.cofactor = multipoly_from_json(j.at("cofactor"));
    f.torsion_form = j.at("torsion_form").get<bool>();
    f.cofactor_undetermined_beyond_bound =
        j.at("cofactor_undetermined_beyond_bound").get<bool>();
    return f;
}

Json to_json(const Recurrence& r) {
    Json j;
    j["kind"] = "constant";
    j["order"] = r.order;
    j["offset"] = r.offset;
    Json cs = Json::array();
    for (const CycloElement& c : r.coeffs) cs.push_back(c.to_string());
    j["coeffs"] = std::move(cs);
    j["denominator"] = r.denominator().to_multipoly().to_string();
    return j;
}

Json to_json(const PRecurrence& r) {
    Json j;
    j["kind"] = "p";
    j["order"] = r.order;
    j["degree"] = r.degree;
    j["offset"] = r.offset;
    Json polys = Json::array();
    for (const auto& p : r.polys) {
        Json row = Json::array();
        for (const CycloElement& c : p) row.push_back(c.to_string());
        polys.push_back(std::move(row));
    }
    j["polys"] = std::move(polys);
    return j;
}

Json to_json(const PoleCertificate& c) {
    Json j;
    j["all_roots_of_unity"] = c.all_roots_of_unity;
    Json cert = Json::array();
    for (const auto& [k, mult] : c.cyclotomic_multiplicities) {
        Json e;
        e["k"] = k;
        e["mult"] = mult;
        cert.push_back(std::move(e));
    }
    j["certificate"] = std::move(cert);
    j["residual"] = to_json(c.residual);
    return j;
}

Json to_json(const DichotomyReport& r) {
    Json j;
    j["schema"] = "pc-report/1";
    j["verdict"] = to_string(r.verdict);
    j["profile"] = to_json(r.profile);
    Json lines = Json::array();
    for (const LineDiagnostic& d : r.line_diagnostics) {
        Json e;
        Json omegas = Json::array();
        for (const CycloElement& w : d.omegas) omegas.push_back(w.to_string());
        e["omegas"] = std::move(omegas);
        e["kronecker"] = to_string(d.kronecker);
        e["recurrence_free"] = d.recurrence_free;
        lines.push_back(std::move(e));
    }
    j["line_diagnostics"] = std::move(lines);
    j["reconstruction"] = r.reconstruction ? to_json(*r.reconstruction) : Json(nullptr);
    j["abs_square_exponent"] =
        r.abs_square_exponent ? Json(*r.abs_square_exponent) : Json(nullptr);
    Json params;
    params["expr"] = r.parameters.expr;
    params["m"] = r.parameters.m;
    params["N"] = r.parameters.profile_N;
    params["max_deg_num"] = r.parameters.max_deg_num;
    params["max_deg_den"] = r.parameters.max_deg_den;
    params["torsion_bound"] = r.parameters.torsion_bound;
    params["omega_samples"] = r.parameters.omega_samples;
    params["seed"] = r.parameters.seed;
    params["tol"] = r.parameters.tol;
    params["kronecker_window_len"] = r.parameters.kronecker_window_len;
    params["line_guess_order"] = r.parameters.line_guess_order;
    params["line_p_order"] = r.parameters.line_p_order;
    params["line_p_degree"] = r.parameters.line_p_degree;
    j["parameters"] = std::move(params);
    return j;
}

DichotomyReport report_from_json(const Json& j) {
    DichotomyReport r;
    r.verdict = dichotomy_verdict_from_string(j.at("verdict").get<std::string>());
    r.profile = profile_from_json(j.at("profile"));
    for (const auto& e : j.at("line_diagnostics")) {
        LineDiagnostic d;
        for (const auto& w : e.at("omegas"))
            d.omegas.push_back(dsl::parse_element(w.get<std::string>()));
        d.kronecker = kronecker_outcome_from_string(e.at("kronecker").get<std::string>());
        d.recurrence_free = e.at("recurrence_free").get<bool>();
        r.line_diagnostics.push_back(std::move(d));
    }
    if (!j.at("reconstruction").is_null())
        r.reconstruction = rational_form_from_json(j.at("reconstruction"));
    if (!j.at("abs_square_exponent").is_null())
        r.abs_square_exponent = j.at("abs_square_exponent").get<double>();
    const Json& p = j.at("parameters");
    r.parameters.expr = p.at("expr").get<std::string>();
    r.parameters.m = p.at("m").get<int>();
    r.parameters.profile_N = p.at("N").get<int>();
    r.parameters.max_deg_num = p.at("max_deg_num").get<int>();
    r.parameters.max_deg_den = p.at("max_deg_den").get<int>();
    r.parameters.torsion_bound = p.at("torsion_bound").get<int>();
    r.parameters.omega_samples = p.at("omega_samples").get<int>();
    r.parameters.seed = p.at("seed").get<std::uint64_t>();
    r.parameters.tol = p.at("tol").get<double>();
    r.parameters.kronecker_window_len = p.at("kronecker_window_len").get<int>();
    r.parameters.line_guess_order = p.at("line_guess_order").get<int>();
    r.parameters.line_p_order = p.at("line_p_order").get<int>();
    r.parameters.line_p_degree = p.at("line_p_degree").get<int>();
    return r;
}

std::string report_text_summary(const DichotomyReport& r) {
    std::ostringstream os;
    os << "verdict: " << to_string(r.verdict) << "\n";
    os << "profile: class " << to_string(r.profile.fitted_class) << ", constant "
       << format_double(r.profile.fitted_constant) << ", N_max " << r.profile.N_max << "\n";
    os << "  h_N tail: " << format_double(r.profile.hN.back()) << ", log d_N tail: "
       << format_double(r.profile.dN_log.back()) << "\n";
    os << "line diagnostics (" << r.line_diagnostics.size() << "):\n";
    for (const LineDiagnostic& d : r.line_diagnostics) {
        os << "  omega = (";
        for (size_t i = 0; i < d.omegas.size(); ++i) {
            if (i) os << ", ";
            os << d.omegas[i].to_string();
        }
        os << "): kronecker " << to_string(d.kronecker);
        if (d.recurrence_free) os << ", no recurrence within bounds";
        os << "\n";
    }
    if (r.abs_square_exponent)
        os << "abs-square shell growth exponent: " << format_double(*r.abs_square_exponent)
           << "\n";
    if (r.reconstruction) {
        os << "reconstruction: num = " << r.reconstruction->num.to_string() << "\n";
        os << "                den = " << r.reconstruction->den.to_string() << "\n";
        os << "                torsion_form = " << (r.reconstruction->torsion_form ? "true" : "false")
           << "\n";
        for (const TorsionFactor& f : r.reconstruction->factors) {
            os << "                factor (1 - (" << f.zeta.to_string() << ")*x^[";
            for (size_t i = 0; i < f.q.size(); ++i) {
                if (i) os << ",";
                os << f.q[i];
            }
            os << "])^" << f.multiplicity << "\n";
        }
        if (!r.reconstruction->torsion_form)
            os << "                cofactor = " << r.reconstruction->cofactor.to_string() << "\n";
    } else {
        os << "reconstruction: none within bounds\n";
    }
    return os.str();
}

Json to_json(const RemarkResult& r) {
    Json j;
    j["k"] = r.k;
    j["N"] = r.N;
    j["log_dN"] = r.log_dN;
    j["target"] = r.target;
    j["ratio"] = r.ratio;
    j["dN"] = r.dN_exact.get_str();
    return j;
}

std::string to_csv(const RemarkResult& r, bool with_header) {
    std::ostringstream os;
    if (with_header) os << "k,N,log_dN,target,ratio\n";
    os << r.k << "," << r.N << "," << format_double(r.log_dN) << "," << format_double(r.target)
       << "," << format_double(r.ratio) << "\n";
    return os.str();
}

}  // namespace pclab::io
