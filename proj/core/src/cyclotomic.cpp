#include "pclab/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <utility>

namespace pclab {

namespace {

// ---------------------------------------------------------------------------
// Integer polynomial helpers (dense, coeffs[i] ~ x^i)

void ip_trim(std::vector<Int>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division by a monic divisor.
std::vector<Int> ip_div_monic(std::vector<Int> num, const std::vector<Int>& den) {
    std::vector<Int> quot(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Int(0));
    for (int k = static_cast<int>(quot.size()) - 1; k >= 0; --k) {
        Int c = num[k + den.size() - 1];
        quot[k] = c;
        if (c != 0)
            for (size_t i = 0; i < den.size(); ++i) num[k + i] -= c * den[i];
    }
    ip_trim(num);
    if (!num.empty()) throw Error("internal", "inexact cyclotomic division");
    return quot;
}

const std::vector<Int>& phi_poly_raw(unsigned long k) {
    static std::map<unsigned long, std::vector<Int>> cache;
    static std::mutex mtx;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(k);
        if (it != cache.end()) return it->second;
    }
    std::vector<Int> p(k + 1, Int(0));  // x^k - 1
    p[0] = -1;
    p[k] = 1;
    for (unsigned long d : divisors(k))
        if (d < k) p = ip_div_monic(std::move(p), phi_poly_raw(d));
    std::lock_guard<std::mutex> lock(mtx);
    return cache.emplace(k, std::move(p)).first->second;
}

// ---------------------------------------------------------------------------
// Rational polynomial helpers for inversion mod Phi_n

using RatPoly = std::vector<Rat>;

void rp_trim(RatPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int rp_deg(const RatPoly& p) { return static_cast<int>(p.size()) - 1; }

RatPoly rp_divmod(RatPoly& rem, const RatPoly& den) {
    int db = rp_deg(den);
    RatPoly quot(std::max(0, rp_deg(rem) - db + 1), Rat(0));
    while (rp_deg(rem) >= db) {
        Rat c = rem.back() / den.back();
        int shift = rp_deg(rem) - db;
        quot[shift] = c;
        for (int i = 0; i <= db; ++i) rem[i + shift] -= c * den[i];
        rp_trim(rem);
    }
    return quot;
}

RatPoly rp_mul_sub(const RatPoly& x, const RatPoly& q, const RatPoly& y) {  // x - q*y
    RatPoly r = x;
    if (!q.empty() && !y.empty()) {
        r.resize(std::max(r.size(), q.size() + y.size() - 1), Rat(0));
        for (size_t i = 0; i < q.size(); ++i)
            if (q[i] != 0)
                for (size_t j = 0; j < y.size(); ++j) r[i + j] -= q[i] * y[j];
    }
    rp_trim(r);
    return r;
}

// u*a + v*b = g
void rp_xgcd(RatPoly a, RatPoly b, RatPoly& g, RatPoly& u, RatPoly& v) {
    rp_trim(a);
    rp_trim(b);
    RatPoly u0{Rat(1)}, v0, u1, v1{Rat(1)};
    while (!b.empty()) {
        RatPoly r = a;
        RatPoly q = rp_divmod(r, b);
        RatPoly u2 = rp_mul_sub(u0, q, u1);
        RatPoly v2 = rp_mul_sub(v0, q, v1);
        a = std::move(b);
        b = std::move(r);
        u0 = std::move(u1);
        v0 = std::move(v1);
        u1 = std::move(u2);
        v1 = std::move(v2);
    }
    g = std::move(a);
    u = std::move(u0);
    v = std::move(v0);
}

// ---------------------------------------------------------------------------
// Per-conductor reduction data

struct ConductorData {
    unsigned long n = 1;
    unsigned long phi = 1;
    std::vector<Int> phi_poly;                // monic, degree phi
    std::vector<std::vector<Int>> reduction;  // x^j mod Phi_n for j in [phi, n)
};

// Reduction rows are precomputed only for small conductors; larger ones fall
// back to direct polynomial division.
constexpr unsigned long kRowCacheLimit = 256;

std::shared_ptr<const ConductorData> conductor_data(unsigned long n) {
    static std::map<unsigned long, std::shared_ptr<const ConductorData>> cache;
    static std::mutex mtx;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    auto data = std::make_shared<ConductorData>();
    data->n = n;
    data->phi = euler_phi(n);
    data->phi_poly = phi_poly_raw(n);
    if (n <= kRowCacheLimit && n > data->phi) {
        data->reduction.reserve(n - data->phi);
        std::vector<Int> row(data->phi, Int(0));  // x^phi mod Phi_n
        for (unsigned long i = 0; i < data->phi; ++i) row[i] = -data->phi_poly[i];
        for (unsigned long j = data->phi; j < n; ++j) {
            data->reduction.push_back(row);
            std::vector<Int> next(data->phi, Int(0));
            const Int top = row[data->phi - 1];
            for (unsigned long i = data->phi - 1; i > 0; --i) next[i] = row[i - 1];
            if (top != 0)
                for (unsigned long i = 0; i < data->phi; ++i) next[i] -= top * data->phi_poly[i];
            row = std::move(next);
        }
    }
    std::lock_guard<std::mutex> lock(mtx);
    return cache.emplace(n, std::move(data)).first->second;
}

void check_cap(unsigned long n, unsigned long phi_cap) {
    unsigned long phi = euler_phi(n);
    if (phi > phi_cap) throw ConductorOverflowError(n, phi, phi_cap);
}

std::vector<Rat> reduce_scratch(unsigned long n, std::vector<Rat> scratch) {
    if (n == 1) {
        Rat s(0);
        for (const Rat& c : scratch) s += c;
        s.canonicalize();
        return {s};
    }
    for (size_t e = scratch.size(); e-- > n;)
        if (scratch[e] != 0) scratch[e - n] += scratch[e];
    scratch.resize(n, Rat(0));
    auto data = conductor_data(n);
    const unsigned long phi = data->phi;
    if (n == phi) {
        // nothing to fold (n = 1 or 2 handled above / below)
    } else if (!data->reduction.empty()) {
        for (unsigned long e = n; e-- > phi;) {
            if (scratch[e] != 0) {
                const auto& row = data->reduction[e - phi];
                for (unsigned long i = 0; i < phi; ++i)
                    if (row[i] != 0) scratch[i] += scratch[e] * row[i];
                scratch[e] = 0;
            }
        }
    } else {
        RatPoly modp(data->phi_poly.size());
        for (size_t i = 0; i < data->phi_poly.size(); ++i) modp[i] = Rat(data->phi_poly[i]);
        rp_trim(scratch);
        rp_divmod(scratch, modp);
    }
    scratch.resize(phi, Rat(0));
    for (Rat& c : scratch) c.canonicalize();
    return scratch;
}

}  // namespace

// ---------------------------------------------------------------------------
// IntPolynomial

IntPolynomial IntPolynomial::make_primitive(std::vector<Int> c) {
    ip_trim(c);
    if (c.empty()) return IntPolynomial{{Int(0)}};
    Int content(0);
    for (const Int& x : c) content = int_gcd(content, x);
    if (c.back() < 0) content = -content;
    for (Int& x : c) x /= content;
    return IntPolynomial{std::move(c)};
}

std::string IntPolynomial::to_string(const std::string& var) const {
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Int& c = coeffs[i];
        if (c == 0) continue;
        Int a = abs(c);
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (i == 0 || a != 1) os << a.get_str();
        if (i > 0) {
            if (a != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    if (first) os << "0";
    return os.str();
}

// ---------------------------------------------------------------------------
// CycloElement

CycloElement CycloElement::canonical(unsigned long n, std::vector<Rat> exponent_coeffs) {
    std::vector<Rat> coords = reduce_scratch(n, std::move(exponent_coeffs));
    bool rational = true;
    for (size_t i = 1; i < coords.size(); ++i)
        if (coords[i] != 0) {
            rational = false;
            break;
        }
    if (rational) return CycloElement(coords.empty() ? Rat(0) : coords[0]);
    return CycloElement(n, std::move(coords));
}

std::vector<Rat> CycloElement::coords_in(const CycloElement& a, unsigned long target) {
    if (a.conductor_ == target) return a.coeffs_;
    unsigned long step = target / a.conductor_;
    std::vector<Rat> scratch(target, Rat(0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i)
        if (a.coeffs_[i] != 0) scratch[(i * step) % target] += a.coeffs_[i];
    return reduce_scratch(target, std::move(scratch));
}

CycloElement CycloElement::zeta(Conductor c, unsigned long power, unsigned long phi_cap) {
    const unsigned long n = c.n;
    if (n < 1) throw Error("internal", "conductor must be positive");
    check_cap(n, phi_cap);
    std::vector<Rat> scratch(n, Rat(0));
    scratch[power % n] = 1;
    return canonical(n, std::move(scratch));
}

CycloElement CycloElement::from_coeffs(Conductor c, std::vector<Rat> coeffs,
                                       unsigned long phi_cap) {
    const unsigned long n = c.n;
    if (n < 1) throw Error("internal", "conductor must be positive");
    check_cap(n, phi_cap);
    if (coeffs.size() != c.phi())
        throw LengthError("expected phi(" + std::to_string(n) + ") = " +
                          std::to_string(c.phi()) + " coordinates, got " +
                          std::to_string(coeffs.size()));
    for (Rat& x : coeffs) x.canonicalize();
    return canonical(n, std::move(coeffs));
}

const Rat& CycloElement::rational_value() const {
    if (!is_rational()) throw Error("internal", "rational_value on non-rational element");
    return coeffs_[0];
}

namespace {

unsigned long merged_conductor(const CycloElement& a, const CycloElement& b,
                               unsigned long phi_cap) {
    unsigned long l = std::lcm(a.conductor(), b.conductor());
    check_cap(l, phi_cap);
    return l;
}

}  // namespace

CycloElement add(const CycloElement& a, const CycloElement& b, unsigned long phi_cap) {
    if (a.is_rational() && b.is_rational())
        return CycloElement(a.rational_value() + b.rational_value());
    if (a.conductor() == b.conductor()) {
        std::vector<Rat> c = a.coeffs();
        for (size_t i = 0; i < c.size(); ++i) c[i] += b.coeffs()[i];
        return CycloElement::from_coeffs(a.conductor(), std::move(c), phi_cap);
    }
    unsigned long l = merged_conductor(a, b, phi_cap);
    std::vector<Rat> scratch(l, Rat(0));
    for (const CycloElement* e : {&a, &b}) {
        unsigned long step = l / e->conductor();
        const auto& c = e->coeffs();
        for (size_t i = 0; i < c.size(); ++i)
            if (c[i] != 0) scratch[(i * step) % l] += c[i];
    }
    return CycloElement::canonical(l, std::move(scratch));
}

CycloElement sub(const CycloElement& a, const CycloElement& b, unsigned long phi_cap) {
    return add(a, -b, phi_cap);
}

CycloElement mul(const CycloElement& a, const CycloElement& b, unsigned long phi_cap) {
    if (a.is_rational() || b.is_rational()) {
        const CycloElement& scalar = a.is_rational() ? a : b;
        const CycloElement& other = a.is_rational() ? b : a;
        const Rat& s = scalar.rational_value();
        if (s == 0) return CycloElement();
        if (other.is_rational()) return CycloElement(Rat(s * other.rational_value()));
        std::vector<Rat> c = other.coeffs();
        for (Rat& x : c) {
            x *= s;
            x.canonicalize();
        }
        // scaling preserves canonicity (no new rational collapse possible)
        return CycloElement::from_coeffs(other.conductor(), std::move(c), phi_cap);
    }
    unsigned long l = merged_conductor(a, b, phi_cap);
    std::vector<Rat> ca = CycloElement::coords_in(a, l);
    std::vector<Rat> cb = CycloElement::coords_in(b, l);
    std::vector<Rat> prod(ca.size() + cb.size() - 1, Rat(0));
    for (size_t i = 0; i < ca.size(); ++i)
        if (ca[i] != 0)
            for (size_t j = 0; j < cb.size(); ++j)
                if (cb[j] != 0) prod[i + j] += ca[i] * cb[j];
    return CycloElement::canonical(l, std::move(prod));
}

CycloElement CycloElement::inverse(unsigned long phi_cap) const {
    (void)phi_cap;  // inversion never leaves the element's own field
    if (is_zero()) throw DivisionByZeroError(to_string());
    if (is_rational()) return CycloElement(Rat(1 / rational_value()));
    auto data = conductor_data(conductor_);
    RatPoly p = coeffs_;
    RatPoly modp(data->phi_poly.size());
    for (size_t i = 0; i < data->phi_poly.size(); ++i) modp[i] = Rat(data->phi_poly[i]);
    RatPoly g, u, v;
    rp_xgcd(p, modp, g, u, v);
    if (rp_deg(g) != 0) throw Error("internal", "non-invertible element in cyclotomic field");
    const Rat scale = g[0];
    std::vector<Rat> inv(std::move(u));
    for (Rat& c : inv) c /= scale;
    return canonical(conductor_, std::move(inv));
}

CycloElement div(const CycloElement& a, const CycloElement& b, unsigned long phi_cap) {
    if (b.is_zero()) throw DivisionByZeroError(a.to_string());
    return mul(a, b.inverse(phi_cap), phi_cap);
}

CycloElement field_arith(FieldOp op, const CycloElement& a, const CycloElement& b,
                         unsigned long phi_cap) {
    switch (op) {
        case FieldOp::add: return add(a, b, phi_cap);
        case FieldOp::sub: return sub(a, b, phi_cap);
        case FieldOp::mul: return mul(a, b, phi_cap);
        case FieldOp::div: return div(a, b, phi_cap);
    }
    throw Error("internal", "unknown field op");
}

CycloElement operator+(const CycloElement& a, const CycloElement& b) { return add(a, b); }
CycloElement operator-(const CycloElement& a, const CycloElement& b) { return sub(a, b); }
CycloElement operator*(const CycloElement& a, const CycloElement& b) { return mul(a, b); }
CycloElement operator/(const CycloElement& a, const CycloElement& b) { return div(a, b); }

CycloElement CycloElement::operator-() const {
    CycloElement r = *this;
    for (Rat& c : r.coeffs_) c = -c;
    return r;
}

CycloElement CycloElement::pow(long e, unsigned long phi_cap) const {
    if (e == 0) return CycloElement(1L);
    CycloElement base = e < 0 ? inverse(phi_cap) : *this;
    unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    CycloElement acc(1L);
    while (k > 0) {
        if (k & 1) acc = mul(acc, base, phi_cap);
        base = (k >>= 1) ? mul(base, base, phi_cap) : base;
    }
    return acc;
}

bool CycloElement::operator==(const CycloElement& other) const {
    if (conductor_ == other.conductor_) return coeffs_ == other.coeffs_;
    if (is_rational() || other.is_rational()) return false;  // canonical form
    unsigned long l = std::lcm(conductor_, other.conductor_);
    return coords_in(*this, l) == coords_in(other, l);
}

int CycloElement::compare_raw(const CycloElement& other) const {
    if (conductor_ != other.conductor_) return conductor_ < other.conductor_ ? -1 : 1;
    if (coeffs_.size() != other.coeffs_.size()) return coeffs_.size() < other.coeffs_.size() ? -1 : 1;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        int c = cmp(coeffs_[i], other.coeffs_[i]);
        if (c != 0) return c;
    }
    return 0;
}

std::string CycloElement::to_string() const {
    if (is_rational()) return coeffs_[0].get_str();
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        const Rat& c = coeffs_[i];
        if (c == 0) continue;
        Rat a = abs(c);
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (i == 0) {
            os << a.get_str();
        } else {
            if (a != 1) os << a.get_str() << "*";
            os << "zeta(" << conductor_ << ")";
            if (i > 1) os << "^" << i;
        }
    }
    if (first) os << "0";
    return os.str();
}

CycloElement conjugate(const CycloElement& a) {
    if (a.is_rational()) return a;
    unsigned long n = a.conductor_;
    std::vector<Rat> scratch(n, Rat(0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i)
        if (a.coeffs_[i] != 0) scratch[(i * (n - 1)) % n] += a.coeffs_[i];
    return CycloElement::canonical(n, std::move(scratch));
}

Int den(const CycloElement& a) {
    Int l(1);
    for (const Rat& c : a.coeffs()) l = int_lcm(l, c.get_den());
    return l;
}

IntPolynomial minimal_polynomial(const CycloElement& a) {
    const unsigned long n = a.conductor_;
    const unsigned long phi = euler_phi(n);
    std::vector<std::vector<Rat>> basis;   // reduced power coordinates
    std::vector<size_t> pivot;             // pivot column per basis row
    std::vector<std::vector<Rat>> combos;  // expression of basis rows in powers of a
    CycloElement p(1L);
    for (unsigned long k = 0; k <= phi; ++k) {
        std::vector<Rat> v = CycloElement::coords_in(p, n);
        std::vector<Rat> combo(k + 1, Rat(0));
        combo[k] = 1;
        for (size_t i = 0; i < basis.size(); ++i) {
            Rat f = v[pivot[i]];
            if (f != 0) {
                for (size_t j = 0; j < v.size(); ++j) v[j] -= f * basis[i][j];
                for (size_t j = 0; j < combos[i].size(); ++j) combo[j] -= f * combos[i][j];
            }
        }
        size_t piv = v.size();
        for (size_t j = 0; j < v.size(); ++j)
            if (v[j] != 0) {
                piv = j;
                break;
            }
        if (piv == v.size()) {
            // monic rational dependence; clear denominators to a primitive integer polynomial
            Int denlcm(1);
            for (Rat& c : combo) {
                c.canonicalize();
                denlcm = int_lcm(denlcm, c.get_den());
            }
            std::vector<Int> ic(combo.size());
            for (size_t j = 0; j < combo.size(); ++j) {
                Rat scaled = combo[j] * Rat(denlcm);
                scaled.canonicalize();
                ic[j] = scaled.get_num();
            }
            return IntPolynomial::make_primitive(std::move(ic));
        }
        Rat inv = 1 / v[piv];
        for (Rat& x : v) x *= inv;
        for (Rat& x : combo) x *= inv;
        basis.push_back(std::move(v));
        combos.push_back(std::move(combo));
        pivot.push_back(piv);
        p = p * a;
    }
    throw Error("internal", "minimal polynomial search exceeded field degree");
}

std::optional<unsigned long> root_of_unity_order(const CycloElement& a) {
    if (a.is_zero()) return std::nullopt;
    if (a.is_rational()) {
        if (a.rational_value() == 1) return 1;
        if (a.rational_value() == -1) return 2;
        return std::nullopt;
    }
    if (den(a) != 1) return std::nullopt;
    // cheap numeric screen; never rejects a genuine root of unity because the
    // tolerance absorbs the evaluation error bound
    double scale = 1.0;
    for (const Rat& c : a.coeffs()) scale += std::fabs(c.get_d());
    const double tol = 1e-6 + 1e-10 * scale * static_cast<double>(a.coeffs().size());
    for (const auto& z : embeddings(a))
        if (std::fabs(std::abs(z) - 1.0) > tol) return std::nullopt;
    const unsigned long L = std::lcm(2ul, a.conductor());
    const CycloElement one(1L);
    if (a.pow(static_cast<long>(L)) != one) return std::nullopt;
    for (unsigned long d : divisors(L))
        if (a.pow(static_cast<long>(d)) == one) return d;
    return std::nullopt;
}

IntPolynomial cyclotomic_polynomial(unsigned long k) {
    if (k < 1) throw Error("internal", "cyclotomic index must be positive");
    return IntPolynomial{phi_poly_raw(k)};
}

std::complex<double> embedding(const CycloElement& a, unsigned long k) {
    const unsigned long n = a.conductor();
    const double angle = 2.0 * M_PI * static_cast<double>(k % n) / static_cast<double>(n);
    const std::complex<double> z(std::cos(angle), std::sin(angle));
    std::complex<double> acc(0.0, 0.0);
    for (size_t i = a.coeffs().size(); i-- > 0;) acc = acc * z + a.coeffs()[i].get_d();
    return acc;
}

std::vector<std::complex<double>> embeddings(const CycloElement& a) {
    std::vector<std::complex<double>> out;
    const unsigned long n = a.conductor();
    for (unsigned long k = 1; k <= n; ++k)
        if (std::gcd(k, n) == 1) out.push_back(embedding(a, k));
    return out;
}

CycloElement evaluate(const IntPolynomial& p, const CycloElement& a, unsigned long phi_cap) {
    CycloElement acc;
    for (size_t i = p.coeffs.size(); i-- > 0;) acc = add(mul(acc, a, phi_cap), CycloElement(p.coeffs[i]), phi_cap);
    return acc;
}

}  // namespace pclab
