#include "pclab/heights.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "mahler.hpp"

namespace pclab {

PrimeSet PrimeSet::from(const std::vector<unsigned long>& ps) {
    PrimeSet s;
    for (unsigned long p : ps) {
        if (!is_prime(p)) throw Error("invalid_prime", std::to_string(p) + " is not prime");
        if (!s.primes.insert(p).second)
            throw Error("invalid_prime", "duplicate prime " + std::to_string(p));
    }
    return s;
}

double height(const CycloElement& a, double tol) {
    if (tol <= 0) throw Error("invalid_tolerance", "tolerance must be positive");
    if (a.is_rational()) {
        const Rat& r = a.rational_value();
        if (r == 0) return 0.0;
        Int n = abs(r.get_num());
        const Int& d = r.get_den();
        return log_of(n >= d ? n : d);
    }
    if (root_of_unity_order(a)) return 0.0;
    IntPolynomial p = minimal_polynomial(a);
    const int d = p.degree();
    return detail::log_mahler(p, tol * d) / d;
}

double height_tuple_rational(const std::vector<CycloElement>& v) {
    Int common(1);
    std::vector<Rat> rs;
    rs.reserve(v.size());
    for (const CycloElement& a : v) {
        if (!a.is_rational())
            throw UnsupportedFieldError("tuple heights are exact over Q only; coordinate " +
                                        a.to_string() + " is not rational");
        rs.push_back(a.rational_value());
        common = int_lcm(common, rs.back().get_den());
    }
    Int g = common;
    std::vector<Int> us;
    us.reserve(rs.size());
    for (const Rat& r : rs) {
        us.push_back(Int(r.get_num() * (common / r.get_den())));
        g = int_gcd(g, us.back());
    }
    Int mx = common / g;
    for (const Int& u : us) {
        Int au = abs(u) / g;
        if (au > mx) mx = au;
    }
    return mx == 1 ? 0.0 : log_of(mx);
}

bool is_s_integer(const CycloElement& a, const PrimeSet& s) {
    Int d = den(a);
    for (unsigned long p : s.primes)
        while (mpz_divisible_ui_p(d.get_mpz_t(), p)) mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), p);
    return d == 1;
}

std::string to_string(GrowthClass c) {
    switch (c) {
        case GrowthClass::constant: return "constant";
        case GrowthClass::logarithmic: return "logarithmic";
        case GrowthClass::linear: return "linear";
        case GrowthClass::superlinear: return "superlinear";
        case GrowthClass::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

GrowthClass growth_class_from_string(const std::string& s) {
    if (s == "constant") return GrowthClass::constant;
    if (s == "logarithmic") return GrowthClass::logarithmic;
    if (s == "linear") return GrowthClass::linear;
    if (s == "superlinear") return GrowthClass::superlinear;
    if (s == "inconclusive") return GrowthClass::inconclusive;
    throw Error("parse", "unknown growth class " + s);
}

namespace {

constexpr double kConstantRangeThreshold = 1e-6;
constexpr double kResidualTieMargin = 0.10;
constexpr double kSuperlinearDriftFraction = 0.10;

struct ModelFit {
    GrowthClass cls;
    double constant;
    double residual;  // rms residual over the tail
};

ModelFit fit_through_origin(GrowthClass cls, const std::vector<double>& y, size_t start,
                            double (*basis)(size_t)) {
    double sgy = 0.0, sgg = 0.0;
    for (size_t i = start; i < y.size(); ++i) {
        const double g = basis(i);
        sgy += g * y[i];
        sgg += g * g;
    }
    const double c = sgg > 0 ? sgy / sgg : 0.0;
    double res = 0.0;
    for (size_t i = start; i < y.size(); ++i) {
        const double e = y[i] - c * basis(i);
        res += e * e;
    }
    return {cls, c, std::sqrt(res / static_cast<double>(y.size() - start))};
}

}  // namespace

GrowthFit classify_growth(const std::vector<double>& seq) {
    if (seq.size() < 16)
        throw LengthError("growth classification needs at least 16 samples, got " +
                          std::to_string(seq.size()));
    const size_t start = seq.size() / 2;
    double lo = seq[start], hi = seq[start], mean = 0.0;
    for (size_t i = start; i < seq.size(); ++i) {
        lo = std::min(lo, seq[i]);
        hi = std::max(hi, seq[i]);
        mean += seq[i];
    }
    mean /= static_cast<double>(seq.size() - start);
    if (hi - lo <= kConstantRangeThreshold) return {GrowthClass::constant, mean};

    std::vector<ModelFit> fits;
    {
        double res = 0.0;
        for (size_t i = start; i < seq.size(); ++i) res += (seq[i] - mean) * (seq[i] - mean);
        fits.push_back({GrowthClass::constant, mean,
                        std::sqrt(res / static_cast<double>(seq.size() - start))});
    }
    fits.push_back(fit_through_origin(GrowthClass::logarithmic, seq, start,
                                      [](size_t n) { return std::log(static_cast<double>(n + 1)); }));
    fits.push_back(fit_through_origin(GrowthClass::linear, seq, start,
                                      [](size_t n) { return static_cast<double>(n); }));

    std::sort(fits.begin(), fits.end(),
              [](const ModelFit& a, const ModelFit& b) { return a.residual < b.residual; });
    const ModelFit& best = fits[0];
    const ModelFit& second = fits[1];
    const double worst_of_pair = std::max(best.residual, second.residual);
    if (worst_of_pair > 0 && (second.residual - best.residual) <= kResidualTieMargin * worst_of_pair)
        return {GrowthClass::inconclusive, best.constant};

    if (best.cls == GrowthClass::linear) {
        // systematic positive residual growth on top of the linear fit
        double sn = 0.0, se = 0.0, snn = 0.0, sne = 0.0;
        const double count = static_cast<double>(seq.size() - start);
        for (size_t i = start; i < seq.size(); ++i) {
            const double e = seq[i] - best.constant * static_cast<double>(i);
            sn += static_cast<double>(i);
            se += e;
            snn += static_cast<double>(i) * static_cast<double>(i);
            sne += static_cast<double>(i) * e;
        }
        const double var = snn - sn * sn / count;
        const double slope = var > 0 ? (sne - sn * se / count) / var : 0.0;
        const double span = static_cast<double>(seq.size() - 1 - start);
        const double scale = std::max(std::fabs(hi), std::fabs(lo));
        if (slope > 0 && slope * span > kSuperlinearDriftFraction * scale)
            return {GrowthClass::superlinear, best.constant};
    }
    return {best.cls, best.constant};
}

HeightProfile height_profile(const SeriesExpr& f, int n_max, double tol) {
    if (n_max < 1) throw LengthError("profile needs N_max >= 1");
    HeightProfile prof;
    prof.N_max = n_max;
    prof.hN.reserve(n_max + 1);
    prof.dN_log.reserve(n_max + 1);
    prof.dN_exact.reserve(n_max + 1);

    auto cursor = make_shell_cursor(f);
    double hmax = 0.0;
    Int lcm_exact(1);
    std::map<CycloElement, double, CycloRawLess> memo;  // non-rational heights only
    for (int d = 0; d <= n_max; ++d) {
        for (const auto& [n, c] : cursor->next()) {
            double h;
            if (c.is_rational()) {
                h = height(c, tol);
            } else {
                auto it = memo.find(c);
                if (it == memo.end()) it = memo.emplace(c, height(c, tol)).first;
                h = it->second;
            }
            hmax = std::max(hmax, h);
            Int dn = den(c);
            if (dn != 1) lcm_exact = int_lcm(lcm_exact, dn);
        }
        prof.hN.push_back(hmax);
        prof.dN_log.push_back(lcm_exact == 1 ? 0.0 : log_of(lcm_exact));
        if (bit_size(lcm_exact) <= kProfileExactBitCap)
            prof.dN_exact.emplace_back(lcm_exact);
        else
            prof.dN_exact.emplace_back(std::nullopt);
    }
    if (prof.hN.size() >= 16) {
        GrowthFit fit = classify_growth(prof.hN);
        prof.fitted_class = fit.cls;
        prof.fitted_constant = fit.constant;
    }
    return prof;
}

}  // namespace pclab
