#include "pclab/rationality.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace pclab {

// ---------------------------------------------------------------------------
// Recurrences

UniPoly Recurrence::denominator() const {
    std::vector<CycloElement> b(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) b[i] = coeffs[coeffs.size() - 1 - i];
    return UniPoly(std::move(b));
}

bool Recurrence::annihilates(const std::vector<CycloElement>& data) const {
    for (size_t n = offset; n + order < data.size(); ++n) {
        CycloElement acc;
        for (int i = 0; i <= order; ++i) acc += coeffs[i] * data[n + i];
        if (!acc.is_zero()) return false;
    }
    return true;
}

CycloElement PRecurrence::eval_poly(int i, long n) const {
    CycloElement acc;
    CycloElement np(1L);
    const CycloElement nval{Rat(n)};
    for (int j = 0; j <= degree; ++j) {
        acc += polys[i][j] * np;
        if (j < degree) np = np * nval;
    }
    return acc;
}

bool PRecurrence::annihilates(const std::vector<CycloElement>& data) const {
    for (size_t n = offset; n + order < data.size(); ++n) {
        CycloElement acc;
        for (int i = 0; i <= order; ++i)
            acc += eval_poly(i, static_cast<long>(n)) * data[n + i];
        if (!acc.is_zero()) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Hankel / Kronecker

CycloElement hankel_determinant(const std::vector<CycloElement>& c, int n) {
    if (static_cast<int>(c.size()) < 2 * n + 1)
        throw InsufficientDataError("Hankel determinant of order " + std::to_string(n) +
                                    " needs " + std::to_string(2 * n + 1) + " coefficients, got " +
                                    std::to_string(c.size()));
    Mat a(n + 1, Vec(n + 1));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) a[i][j] = c[i + j];
    return determinant(std::move(a));
}

namespace {

constexpr int kMaxGuessOffset = 4;

// Solves on a training prefix and validates candidates on every supplied
// term; the held-out tail is what refutes witnesses fitted to sparse data.
std::optional<Recurrence> guess_constant_at_offset(const std::vector<CycloElement>& c, int r,
                                                   int offset) {
    const int total = static_cast<int>(c.size());
    const int train = std::min(total, std::max(2 * r + 8, total / 2));
    const int rows = train - r - offset;
    if (rows < r + 2) return std::nullopt;
    Mat a(rows, Vec(r + 1));
    for (int n = 0; n < rows; ++n)
        for (int i = 0; i <= r; ++i) a[n][i] = c[offset + n + i];
    for (const Vec& v : kernel_basis(std::move(a))) {
        if (v[r].is_zero()) continue;
        const CycloElement inv = v[r].inverse();
        std::vector<CycloElement> coeffs(v.size());
        for (size_t i = 0; i < v.size(); ++i) coeffs[i] = v[i] * inv;
        Recurrence rec{r, std::move(coeffs), offset};
        if (rec.annihilates(c)) return rec;
    }
    return std::nullopt;
}

}  // namespace

std::optional<Recurrence> guess_constant_recurrence(const std::vector<CycloElement>& c,
                                                    int max_order) {
    if (static_cast<int>(c.size()) < 2 * max_order + 4)
        throw InsufficientDataError("recurrence guessing up to order " +
                                    std::to_string(max_order) + " needs " +
                                    std::to_string(2 * max_order + 4) + " terms, got " +
                                    std::to_string(c.size()));
    for (int r = 1; r <= max_order; ++r)
        for (int offset = 0; offset <= kMaxGuessOffset; ++offset)
            if (auto rec = guess_constant_at_offset(c, r, offset)) return rec;
    return std::nullopt;
}

std::optional<PRecurrence> guess_p_recurrence(const std::vector<CycloElement>& c, int max_order,
                                              int max_degree) {
    const int needed = (max_order + 1) * (max_degree + 1) + max_order + 8;
    if (static_cast<int>(c.size()) < needed)
        throw InsufficientDataError("P-recurrence guessing with bounds (" +
                                    std::to_string(max_order) + ", " + std::to_string(max_degree) +
                                    ") needs " + std::to_string(needed) + " terms, got " +
                                    std::to_string(c.size()));
    for (int r = 1; r <= max_order; ++r) {
        for (int dd = 0; dd <= max_degree; ++dd) {
            for (int offset = 0; offset <= 1; ++offset) {
                const int cols = (r + 1) * (dd + 1);
                const int total = static_cast<int>(c.size());
                const int train = std::min(total, std::max(cols + r + 8, total / 2));
                const int rows = train - r - offset;
                if (rows < cols + 2) continue;
                Mat a(rows, Vec(cols));
                for (int n = 0; n < rows; ++n) {
                    Int np(1);
                    for (int j = 0; j <= dd; ++j) {
                        const CycloElement npow{Rat(np)};
                        for (int i = 0; i <= r; ++i)
                            a[n][i * (dd + 1) + j] = npow * c[offset + n + i];
                        np *= (offset + n);
                    }
                }
                for (const Vec& v : kernel_basis(std::move(a))) {
                    bool top_nonzero = false;
                    for (int j = 0; j <= dd; ++j)
                        if (!v[r * (dd + 1) + j].is_zero()) top_nonzero = true;
                    if (!top_nonzero) continue;
                    std::vector<std::vector<CycloElement>> polys(
                        r + 1, std::vector<CycloElement>(dd + 1));
                    for (int i = 0; i <= r; ++i)
                        for (int j = 0; j <= dd; ++j) polys[i][j] = v[i * (dd + 1) + j];
                    // normalize: rational systems get primitive integer polys with a
                    // positive top coefficient, others go monic in P_R's top term
                    bool all_rational = true;
                    for (const auto& p : polys)
                        for (const CycloElement& x : p)
                            if (!x.is_rational()) all_rational = false;
                    if (all_rational) {
                        Int l(1);
                        for (const auto& p : polys)
                            for (const CycloElement& x : p)
                                l = int_lcm(l, x.rational_value().get_den());
                        Int g(0);
                        for (const auto& p : polys)
                            for (const CycloElement& x : p)
                                g = int_gcd(g, Int(x.rational_value().get_num() * (l / x.rational_value().get_den())));
                        int top = dd;
                        while (top > 0 && polys[r][top].is_zero()) --top;
                        if (polys[r][top].rational_value() < 0) g = -g;
                        const CycloElement scale{Rat(l, g)};
                        for (auto& p : polys)
                            for (CycloElement& x : p) x = x * scale;
                    } else {
                        int top = dd;
                        while (top > 0 && polys[r][top].is_zero()) --top;
                        const CycloElement inv = polys[r][top].inverse();
                        for (auto& p : polys)
                            for (CycloElement& x : p) x = x * inv;
                    }
                    PRecurrence rec{r, dd, std::move(polys), offset};
                    if (rec.annihilates(c)) return rec;
                }
            }
        }
    }
    return std::nullopt;
}

KroneckerVerdict kronecker_test(const SeriesExpr& f_uni, int window_start, int window_len) {
    if (f_uni.arity() != 1)
        throw ArityError("kronecker test needs a univariate series, got m = " +
                         std::to_string(f_uni.arity()));
    if (window_start < 0 || window_len < 1)
        throw Error("invalid_window", "window must satisfy start >= 0, len >= 1");
    const int terms = 2 * (window_start + window_len) + 8;
    CoeffTable t = expand(f_uni, terms - 1);
    std::vector<CycloElement> c(terms);
    for (int i = 0; i < terms; ++i) c[i] = t.at(MultiIndex{i});

    bool all_zero = true;
    CycloElement last_delta;
    for (int n = window_start; n < window_start + window_len; ++n) {
        CycloElement d = hankel_determinant(c, n);
        if (!d.is_zero()) all_zero = false;
        if (n == window_start + window_len - 1) last_delta = d;
    }
    if (all_zero) {
        if (auto rec = guess_constant_recurrence(c, window_start + 2))
            return {KroneckerOutcome::rational, std::move(rec)};
        return {KroneckerOutcome::inconclusive, std::nullopt};
    }
    if (!last_delta.is_zero()) return {KroneckerOutcome::not_rational_in_window, std::nullopt};
    return {KroneckerOutcome::inconclusive, std::nullopt};
}

// ---------------------------------------------------------------------------
// Pole certification and binomial factorization

namespace {

unsigned long coeff_conductor_lcm(const MultiPoly& p) {
    unsigned long l = 1;
    for (const auto& [n, v] : p.terms) l = std::lcm(l, v.conductor());
    return l;
}

}  // namespace

int default_torsion_bound(const MultiPoly& b) {
    return static_cast<int>(std::lcm(2ul, coeff_conductor_lcm(b)) * 12);
}

PoleCertificate poles_are_roots_of_unity(const MultiPoly& b, int k_bound) {
    if (b.m != 1) throw ArityError("pole certification needs a univariate polynomial");
    if (b.at_origin().is_zero())
        throw InvalidDenominatorError("pole certification needs b(0) != 0");
    PoleCertificate cert;
    UniPoly residual = UniPoly::from_multipoly(b);
    for (unsigned long k = 1; k <= static_cast<unsigned long>(k_bound) && residual.degree() > 0;
         ++k) {
        const UniPoly phi = UniPoly::from_int_polynomial(cyclotomic_polynomial(k));
        int rounds = 0;
        while (residual.degree() > 0) {
            UniPoly g = gcd(residual, phi);
            if (g.degree() < 1) break;
            UniPoly quot, rem;
            divmod(residual, g, quot, rem);
            if (!rem.is_zero()) throw Error("internal", "gcd division left a remainder");
            residual = std::move(quot);
            ++rounds;
        }
        if (rounds > 0) cert.cyclotomic_multiplicities.emplace_back(k, rounds);
    }
    cert.residual = residual.to_multipoly();
    cert.all_roots_of_unity = residual.degree() == 0;
    return cert;
}

namespace {

// 1 - zeta * x^q
MultiPoly torsion_binomial(int m, const CycloElement& zeta, const MultiIndex& q) {
    MultiPoly p = MultiPoly::constant(m, CycloElement(1L));
    p.add_term(q, -zeta);
    return p;
}

std::vector<MultiIndex> candidate_exponents(const MultiPoly& b) {
    std::set<MultiIndex, GrlexLess> cands;
    const MultiIndex origin(b.m, 0);
    for (const auto& [n, v] : b.terms) {
        if (n == origin) continue;
        int g = 0;
        for (int e : n) g = std::gcd(g, e);
        MultiIndex prim(n.size());
        for (size_t i = 0; i < n.size(); ++i) prim[i] = n[i] / g;
        for (unsigned long d : divisors(static_cast<unsigned long>(g))) {
            MultiIndex q(prim.size());
            for (size_t i = 0; i < prim.size(); ++i) q[i] = prim[i] * static_cast<int>(d);
            cands.insert(std::move(q));
        }
    }
    return {cands.begin(), cands.end()};
}

// Image under x_i -> t^{w_i}: a cheap necessary divisibility screen.
UniPoly weighted_image(const MultiPoly& p, const std::vector<int>& w) {
    int maxdeg = 0;
    for (const auto& [n, v] : p.terms) {
        int s = 0;
        for (size_t i = 0; i < n.size(); ++i) s += n[i] * w[i];
        maxdeg = std::max(maxdeg, s);
    }
    std::vector<CycloElement> c(maxdeg + 1);
    for (const auto& [n, v] : p.terms) {
        int s = 0;
        for (size_t i = 0; i < n.size(); ++i) s += n[i] * w[i];
        c[s] += v;
    }
    return UniPoly(std::move(c));
}

bool divides_univariate(const UniPoly& num, const UniPoly& den) {
    if (num.is_zero()) return true;
    if (den.degree() > num.degree()) return false;
    UniPoly q, r;
    divmod(num, den, q, r);
    return r.is_zero();
}

}  // namespace

BinomialFactorization binomial_factorization(const MultiPoly& b, int torsion_bound) {
    if (!(b.at_origin() == CycloElement(1L)))
        throw InvalidDenominatorError("binomial factorization needs B(0) = 1");
    if (torsion_bound < 1) torsion_bound = default_torsion_bound(b);

    BinomialFactorization out;
    MultiPoly residual = b;

    // deterministic positive screen weights
    std::mt19937_64 rng(0x70636c6162ull);  // "pclab"
    std::vector<int> w(b.m);
    for (int& x : w) x = 1 + static_cast<int>(rng() % 37);

    const std::vector<MultiIndex> cands = candidate_exponents(b);
    UniPoly image = weighted_image(residual, w);
    for (const MultiIndex& q : cands) {
        if (residual.is_constant()) break;
        int wq = 0;
        for (size_t i = 0; i < q.size(); ++i) wq += q[i] * w[i];
        for (int k = 1; k <= torsion_bound; ++k) {
            const unsigned long merged =
                std::lcm(static_cast<unsigned long>(k), coeff_conductor_lcm(residual));
            if (euler_phi(merged) > kDefaultPhiCap) continue;  // not representable under the cap
            for (int j = 1; j <= k; ++j) {
                if (std::gcd(j, k) != 1) continue;
                const CycloElement zeta =
                    CycloElement::zeta(static_cast<unsigned long>(k), static_cast<unsigned long>(j));
                int mult = 0;
                while (!residual.is_constant()) {
                    // screen first, then the exact division is the certificate
                    UniPoly screen_div = UniPoly::from_multipoly(
                        torsion_binomial(1, zeta, MultiIndex{wq}));
                    if (!divides_univariate(image, screen_div)) break;
                    MultiPoly quot(b.m);
                    if (!try_divide(residual, torsion_binomial(b.m, zeta, q), quot)) break;
                    residual = std::move(quot);
                    image = weighted_image(residual, w);
                    ++mult;
                }
                if (mult > 0) out.factors.push_back({zeta, q, mult});
            }
        }
    }
    out.cofactor = std::move(residual);
    out.torsion_form = out.cofactor.is_constant() &&
                       out.cofactor.at_origin() == CycloElement(1L);
    out.undetermined_beyond_bound = !out.torsion_form;
    return out;
}

// ---------------------------------------------------------------------------
// Reconstruction

namespace {

void attach_factors(RationalForm& form, int torsion_bound) {
    BinomialFactorization f = binomial_factorization(form.den, torsion_bound);
    form.factors = std::move(f.factors);
    form.cofactor = std::move(f.cofactor);
    form.torsion_form = f.torsion_form;
    form.cofactor_undetermined_beyond_bound = f.undetermined_beyond_bound;
}

}  // namespace

std::optional<RationalForm> reconstruct_univariate(const SeriesExpr& f_uni, int max_deg_num,
                                                   int max_deg_den, int n_terms,
                                                   int torsion_bound) {
    if (f_uni.arity() != 1)
        throw ArityError("univariate reconstruction needs m = 1, got m = " +
                         std::to_string(f_uni.arity()));
    if (n_terms < max_deg_num + max_deg_den + 2)
        throw InsufficientDataError("reconstruction with bounds (" + std::to_string(max_deg_num) +
                                    ", " + std::to_string(max_deg_den) + ") needs at least " +
                                    std::to_string(max_deg_num + max_deg_den + 2) + " terms");
    CoeffTable t = expand(f_uni, n_terms - 1);
    std::vector<CycloElement> c(n_terms);
    for (int i = 0; i < n_terms; ++i) c[i] = t.at(MultiIndex{i});

    std::optional<UniPoly> den;
    for (int d = 0; d <= max_deg_den && !den; ++d) {
        const int rows = n_terms - 1 - max_deg_num;
        Mat a(rows, Vec(d));
        Vec rhs(rows);
        for (int row = 0; row < rows; ++row) {
            const int n = max_deg_num + 1 + row;
            for (int i = 1; i <= d; ++i)
                a[row][i - 1] = n - i >= 0 ? c[n - i] : CycloElement();
            rhs[row] = -c[n];
        }
        if (auto sol = solve(std::move(a), rhs)) {
            std::vector<CycloElement> bc(d + 1);
            bc[0] = CycloElement(1L);
            for (int i = 1; i <= d; ++i) bc[i] = (*sol)[i - 1];
            den = UniPoly(std::move(bc));
        }
    }
    if (!den) return std::nullopt;

    // numerator = low-degree part of B * F
    std::vector<CycloElement> ac(max_deg_num + 1);
    for (int n = 0; n <= max_deg_num; ++n)
        for (int i = 0; i <= std::min(n, den->degree()); ++i) ac[n] += den->c[i] * c[n - i];
    UniPoly num{std::move(ac)};

    // verification against a doubled expansion
    const int verify_terms = 2 * n_terms;
    CoeffTable tv = expand(f_uni, verify_terms - 1);
    for (int n = 0; n < verify_terms; ++n) {
        CycloElement acc;
        for (int i = 0; i <= den->degree() && i <= n; ++i)
            acc += den->c[i] * tv.at(MultiIndex{n - i});
        CycloElement expected = n <= num.degree() ? num.coeff(n) : CycloElement();
        if (acc != expected)
            throw VerificationError("reconstructed form fails re-expansion at degree " +
                                    std::to_string(n));
    }

    RationalForm form;
    form.num = num.to_multipoly();
    form.den = den->to_multipoly();
    form.num.m = 1;
    form.den.m = 1;
    const int bound = torsion_bound > 0 ? torsion_bound : default_torsion_bound(form.den);

    // factor the denominator through cyclotomic peeling: each certified order
    // contributes the linear torsion binomials 1 - zeta_k^j t that actually
    // divide (over an extension field only some conjugates may appear)
    PoleCertificate cert = poles_are_roots_of_unity(form.den, bound);
    MultiPoly remaining = form.den;
    for (const auto& [k, rounds] : cert.cyclotomic_multiplicities) {
        for (unsigned long j = 1; j <= k; ++j) {
            if (std::gcd(j, k) != 1) continue;
            CycloElement z;
            try {
                z = CycloElement::zeta(k, j);
            } catch (const ConductorOverflowError&) {
                continue;  // not representable under the degree cap
            }
            int mult = 0;
            MultiPoly quot(1);
            while (try_divide(remaining, torsion_binomial(1, z, MultiIndex{1}), quot)) {
                remaining = std::move(quot);
                ++mult;
            }
            if (mult > 0) form.factors.push_back({std::move(z), MultiIndex{1}, mult});
        }
    }
    form.cofactor = std::move(remaining);
    form.torsion_form =
        form.cofactor.is_constant() && form.cofactor.at_origin() == CycloElement(1L);
    form.cofactor_undetermined_beyond_bound = !form.torsion_form && form.cofactor.degree() > 0;
    return form;
}

std::optional<RationalForm> reconstruct_multivariate(const SeriesExpr& f, int max_deg_num,
                                                     int max_deg_den, int n_trunc,
                                                     int torsion_bound) {
    if (n_trunc < max_deg_num + max_deg_den + 2)
        throw InsufficientDataError("reconstruction with bounds (" + std::to_string(max_deg_num) +
                                    ", " + std::to_string(max_deg_den) +
                                    ") needs truncation degree at least " +
                                    std::to_string(max_deg_num + max_deg_den + 2));
    const int m = f.arity();
    CoeffTable t = expand(f, n_trunc);

    std::vector<MultiIndex> eq_rows;
    for (int d = max_deg_num + 1; d <= n_trunc; ++d)
        for (const MultiIndex& n : shell_indices(m, d)) eq_rows.push_back(n);

    std::optional<MultiPoly> den;
    for (int d = 0; d <= max_deg_den && !den; ++d) {
        std::vector<MultiIndex> unknowns;
        for (int dd = 1; dd <= d; ++dd)
            for (const MultiIndex& k : shell_indices(m, dd)) unknowns.push_back(k);
        Mat a(eq_rows.size(), Vec(unknowns.size()));
        Vec rhs(eq_rows.size());
        for (size_t row = 0; row < eq_rows.size(); ++row) {
            const MultiIndex& n = eq_rows[row];
            for (size_t col = 0; col < unknowns.size(); ++col) {
                const MultiIndex& k = unknowns[col];
                MultiIndex prev(m);
                bool fits = true;
                for (int i = 0; i < m; ++i) {
                    prev[i] = n[i] - k[i];
                    if (prev[i] < 0) {
                        fits = false;
                        break;
                    }
                }
                if (fits) a[row][col] = t.at(prev);
            }
            rhs[row] = -t.at(n);
        }
        if (auto sol = solve(std::move(a), rhs)) {
            MultiPoly bp = MultiPoly::constant(m, CycloElement(1L));
            for (size_t col = 0; col < unknowns.size(); ++col)
                bp.add_term(unknowns[col], (*sol)[col]);
            den = std::move(bp);
        }
    }
    if (!den) return std::nullopt;

    // numerator = low part of B * F
    MultiPoly num(m);
    for (int d = 0; d <= max_deg_num; ++d) {
        for (const MultiIndex& n : shell_indices(m, d)) {
            CycloElement acc;
            for (const auto& [k, bv] : den->terms) {
                MultiIndex prev(m);
                bool fits = true;
                for (int i = 0; i < m; ++i) {
                    prev[i] = n[i] - k[i];
                    if (prev[i] < 0) {
                        fits = false;
                        break;
                    }
                }
                if (fits) acc += bv * t.at(prev);
            }
            num.add_term(n, acc);
        }
    }

    // verification: re-expand A/B and compare tables exactly
    CoeffTable check = expand(SeriesExpr::rational(num, *den), n_trunc);
    if (!(check == t)) throw VerificationError("reconstructed form fails re-expansion");

    RationalForm form;
    form.num = std::move(num);
    form.den = std::move(*den);
    attach_factors(form, torsion_bound > 0 ? torsion_bound : default_torsion_bound(form.den));
    return form;
}

}  // namespace pclab
