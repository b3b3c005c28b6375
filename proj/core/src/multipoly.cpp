#include "pclab/multipoly.hpp"

#include <algorithm>
#include <sstream>

namespace pclab {

MultiPoly MultiPoly::constant(int m, const CycloElement& c) {
    MultiPoly p(m);
    if (!c.is_zero()) p.terms.emplace(MultiIndex(m, 0), c);
    return p;
}

MultiPoly MultiPoly::monomial(int m, const MultiIndex& n, const CycloElement& c) {
    MultiPoly p(m);
    if (!c.is_zero()) p.terms.emplace(n, c);
    return p;
}

bool MultiPoly::is_constant() const {
    return terms.empty() || (terms.size() == 1 && total_degree(terms.begin()->first) == 0);
}

int MultiPoly::degree() const {
    return terms.empty() ? -1 : total_degree(terms.rbegin()->first);
}

CycloElement MultiPoly::coeff(const MultiIndex& n) const {
    auto it = terms.find(n);
    return it == terms.end() ? CycloElement() : it->second;
}

CycloElement MultiPoly::at_origin() const { return coeff(MultiIndex(m, 0)); }

void MultiPoly::add_term(const MultiIndex& n, const CycloElement& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms.emplace(n, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

MultiPoly MultiPoly::scaled(const CycloElement& c) const {
    MultiPoly r(m);
    if (c.is_zero()) return r;
    for (const auto& [n, v] : terms) r.terms.emplace(n, v * c);
    return r;
}

MultiPoly MultiPoly::homogeneous_part(int d) const {
    MultiPoly r(m);
    for (const auto& [n, v] : terms)
        if (total_degree(n) == d) r.terms.emplace(n, v);
    return r;
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r = a;
    for (const auto& [n, v] : b.terms) r.add_term(n, v);
    return r;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r = a;
    for (const auto& [n, v] : b.terms) r.add_term(n, -v);
    return r;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(m);
    for (const auto& [n, v] : terms) r.terms.emplace(n, -v);
    return r;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) { return truncated_mul(a, b, -1); }

MultiPoly truncated_mul(const MultiPoly& a, const MultiPoly& b, int bound) {
    MultiPoly r(a.m);
    for (const auto& [na, va] : a.terms) {
        int da = total_degree(na);
        for (const auto& [nb, vb] : b.terms) {
            if (bound >= 0 && da + total_degree(nb) > bound) continue;
            MultiIndex n(na.size());
            for (size_t i = 0; i < n.size(); ++i) n[i] = na[i] + nb[i];
            r.add_term(n, va * vb);
        }
    }
    return r;
}

MultiPoly poly_pow(const MultiPoly& base, unsigned long e) {
    MultiPoly acc = MultiPoly::constant(base.m, CycloElement(1L));
    MultiPoly b = base;
    while (e > 0) {
        if (e & 1) acc = acc * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return acc;
}

bool try_divide(const MultiPoly& a, const MultiPoly& b, MultiPoly& quotient) {
    if (b.is_zero()) return false;
    MultiPoly rem = a;
    MultiPoly quot(a.m);
    // grlex-leading-term division
    const auto lead = std::prev(b.terms.end());
    const MultiIndex& lb = lead->first;
    const CycloElement lc_inv = lead->second.inverse();
    while (!rem.is_zero()) {
        const auto lr = std::prev(rem.terms.end());
        MultiIndex q(lb.size());
        bool ok = true;
        for (size_t i = 0; i < q.size(); ++i) {
            q[i] = lr->first[i] - lb[i];
            if (q[i] < 0) {
                ok = false;
                break;
            }
        }
        if (!ok) return false;
        CycloElement c = lr->second * lc_inv;
        quot.add_term(q, c);
        rem = rem - b * MultiPoly::monomial(a.m, q, c);
    }
    quotient = std::move(quot);
    return true;
}

std::string MultiPoly::to_string() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [n, v] : terms) {
        std::string cs = v.to_string();
        bool negated = false;
        if (!v.is_rational() || v.rational_value() < 0) {
            if (cs.size() > 1 && cs[0] == '-' && cs.find(" - ") == std::string::npos &&
                cs.find(" + ") == std::string::npos) {
                negated = true;
                cs = cs.substr(1);
            }
        }
        if (first) {
            if (negated) os << "-";
            first = false;
        } else {
            os << (negated ? " - " : " + ");
        }
        bool needs_parens = cs.find(" + ") != std::string::npos || cs.find(" - ") != std::string::npos;
        bool trivial_coeff = !needs_parens && cs == "1";
        bool has_vars = total_degree(n) > 0;
        if (!has_vars || !trivial_coeff) os << (needs_parens ? "(" + cs + ")" : cs);
        if (has_vars) {
            bool wrote_coeff = !trivial_coeff;
            bool first_var = true;
            for (size_t i = 0; i < n.size(); ++i) {
                if (n[i] == 0) continue;
                if (wrote_coeff || !first_var) os << "*";
                if (m == 1)
                    os << "t";
                else
                    os << "x" << (i + 1);
                if (n[i] > 1) os << "^" << n[i];
                first_var = false;
                wrote_coeff = true;
            }
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// UniPoly

void UniPoly::trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

UniPoly UniPoly::from_multipoly(const MultiPoly& p) {
    if (p.m != 1) throw ArityError("univariate polynomial expected, got m = " + std::to_string(p.m));
    std::vector<CycloElement> c(p.degree() + 1);
    for (const auto& [n, v] : p.terms) c[n[0]] = v;
    return UniPoly(std::move(c));
}

UniPoly UniPoly::from_int_polynomial(const IntPolynomial& p) {
    std::vector<CycloElement> c;
    c.reserve(p.coeffs.size());
    for (const Int& x : p.coeffs) c.emplace_back(x);
    return UniPoly(std::move(c));
}

MultiPoly UniPoly::to_multipoly() const {
    MultiPoly p(1);
    for (size_t i = 0; i < c.size(); ++i)
        if (!c[i].is_zero()) p.terms.emplace(MultiIndex{static_cast<int>(i)}, c[i]);
    return p;
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<CycloElement> c(std::max(a.c.size(), b.c.size()));
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
    return UniPoly(std::move(c));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    std::vector<CycloElement> c(std::max(a.c.size(), b.c.size()));
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
    return UniPoly(std::move(c));
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    std::vector<CycloElement> c(a.c.size() + b.c.size() - 1);
    for (size_t i = 0; i < a.c.size(); ++i)
        if (!a.c[i].is_zero())
            for (size_t j = 0; j < b.c.size(); ++j)
                if (!b.c[j].is_zero()) c[i + j] += a.c[i] * b.c[j];
    return UniPoly(std::move(c));
}

void divmod(const UniPoly& num, const UniPoly& den, UniPoly& quot, UniPoly& rem) {
    if (den.is_zero()) throw DivisionByZeroError("polynomial division");
    rem = num;
    const int db = den.degree();
    std::vector<CycloElement> q(std::max(0, num.degree() - db + 1));
    const CycloElement lead_inv = den.c.back().inverse();
    while (rem.degree() >= db) {
        const int shift = rem.degree() - db;
        CycloElement f = rem.c.back() * lead_inv;
        q[shift] = f;
        for (int i = 0; i <= db; ++i) rem.c[i + shift] -= f * den.c[i];
        rem.trim();
    }
    quot = UniPoly(std::move(q));
}

UniPoly monic(const UniPoly& p) {
    if (p.is_zero()) return p;
    const CycloElement inv = p.c.back().inverse();
    std::vector<CycloElement> c = p.c;
    for (CycloElement& x : c) x = x * inv;
    return UniPoly(std::move(c));
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly x = a, y = b;
    while (!y.is_zero()) {
        UniPoly q, r;
        divmod(x, y, q, r);
        x = std::move(y);
        y = std::move(r);
    }
    return monic(x);
}

}  // namespace pclab
