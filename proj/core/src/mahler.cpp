#include "mahler.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

namespace pclab::detail {

namespace {

struct Disk {
    std::complex<double> center;
    double radius;
};

// Per-root modulus intervals from Weierstrass disks, with overlapping disks
// merged into clusters (a connected union of s disks contains exactly s roots).
void disks_to_interval_sum(const std::vector<Disk>& disks, double& value, double& err) {
    const size_t n = disks.size();
    std::vector<size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<size_t(size_t)> find = [&](size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (std::abs(disks[i].center - disks[j].center) <=
                disks[i].radius + disks[j].radius)
                parent[find(i)] = find(j);
    value = 0.0;
    err = 0.0;
    std::vector<double> lo(n, std::numeric_limits<double>::infinity());
    std::vector<double> hi(n, 0.0);
    std::vector<int> count(n, 0);
    for (size_t i = 0; i < n; ++i) {
        size_t r = find(i);
        double c = std::abs(disks[i].center);
        lo[r] = std::min(lo[r], std::max(0.0, c - disks[i].radius));
        hi[r] = std::max(hi[r], c + disks[i].radius);
        ++count[r];
    }
    for (size_t r = 0; r < n; ++r) {
        if (count[r] == 0) continue;
        const double lo_log = std::log(std::max(1.0, lo[r]));
        const double hi_log = std::log(std::max(1.0, hi[r]));
        value += count[r] * 0.5 * (lo_log + hi_log);
        err += count[r] * 0.5 * (hi_log - lo_log);
    }
}

// One Durand-Kerner solve in double precision. Returns false when the
// certified error exceeds the budget or the iteration degenerates.
bool roots_double(const std::vector<Int>& coeffs, double tol, double& value, double& err) {
    const int d = static_cast<int>(coeffs.size()) - 1;
    size_t maxbits = 0;
    for (const Int& c : coeffs) maxbits = std::max(maxbits, bit_size(c));
    if ((maxbits + 1) * static_cast<size_t>(d + 1) > 900) return false;  // double would overflow

    std::vector<double> c(coeffs.size());
    double cmax = 0.0;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        c[i] = coeffs[i].get_d();
        cmax = std::max(cmax, std::fabs(c[i]));
    }
    const double lead = c.back();
    const double radius = 1.0 + cmax / std::fabs(lead);

    std::vector<std::complex<double>> z(d);
    for (int k = 0; k < d; ++k) {
        const double a = 2.0 * M_PI * k / d + 0.4;
        z[k] = radius * std::complex<double>(std::cos(a), std::sin(a));
    }

    auto horner = [&](const std::complex<double>& x, double& absbound) {
        std::complex<double> acc(0.0, 0.0);
        absbound = 0.0;
        const double ax = std::abs(x);
        for (int i = d; i >= 0; --i) {
            acc = acc * x + c[i];
            absbound = absbound * ax + std::fabs(c[i]);
        }
        return acc;
    };

    std::vector<std::complex<double>> w(d);
    for (int iter = 0; iter < 400; ++iter) {
        double worst = 0.0;
        for (int k = 0; k < d; ++k) {
            double absbound;
            std::complex<double> num = horner(z[k], absbound);
            std::complex<double> den(lead, 0.0);
            for (int j = 0; j < d; ++j)
                if (j != k) den *= z[k] - z[j];
            if (den == std::complex<double>(0.0, 0.0)) return false;
            w[k] = num / den;
            z[k] -= w[k];
            worst = std::max(worst, std::abs(w[k]) / (1.0 + std::abs(z[k])));
        }
        if (worst < 1e-15) break;
    }

    std::vector<Disk> disks(d);
    for (int k = 0; k < d; ++k) {
        double absbound;
        std::complex<double> num = horner(z[k], absbound);
        double denall = std::fabs(lead);
        for (int j = 0; j < d; ++j)
            if (j != k) denall *= std::abs(z[k] - z[j]);
        if (!(denall > 0.0)) return false;
        const double eval_err = 4.0 * d * std::numeric_limits<double>::epsilon() * absbound;
        const double wk = (std::abs(num) + eval_err) / (denall * (1.0 - 1e-12));
        disks[k] = {z[k], d * wk * (1.0 + 1e-10)};
        if (!std::isfinite(disks[k].radius)) return false;
    }
    disks_to_interval_sum(disks, value, err);
    return std::isfinite(value) && err <= tol;
}

// Arbitrary-precision fallback on mpf arithmetic.
struct MpComplex {
    mpf_class re, im;
    explicit MpComplex(unsigned long prec) : re(0, prec), im(0, prec) {}
};

bool roots_mpf(const std::vector<Int>& coeffs, unsigned long prec, double tol, double& value,
               double& err) {
    const int d = static_cast<int>(coeffs.size()) - 1;
    std::vector<mpf_class> c;
    c.reserve(coeffs.size());
    for (const Int& x : coeffs) c.emplace_back(x, prec);

    mpf_class cmax(0, prec), tmp(0, prec);
    for (const mpf_class& x : c) {
        tmp = abs(x);
        if (tmp > cmax) cmax = tmp;
    }
    mpf_class radius(0, prec);
    radius = 1 + cmax / abs(c.back());

    std::vector<MpComplex> z(d, MpComplex(prec));
    {
        double rd = radius.get_d();
        if (!std::isfinite(rd) || rd <= 0) rd = 1e12;
        for (int k = 0; k < d; ++k) {
            const double a = 2.0 * M_PI * k / d + 0.4;
            z[k].re = rd * std::cos(a);
            z[k].im = rd * std::sin(a);
        }
    }

    mpf_class t1(0, prec), t2(0, prec), ax(0, prec);
    MpComplex num(prec), den(prec), diff(prec), w(prec);
    auto cmul = [&](MpComplex& a, const MpComplex& b) {
        t1 = a.re * b.re - a.im * b.im;
        t2 = a.re * b.im + a.im * b.re;
        a.re = t1;
        a.im = t2;
    };
    auto cabs = [&](const MpComplex& x, mpf_class& out) {
        out = x.re * x.re + x.im * x.im;
        out = sqrt(out);
    };
    auto horner = [&](const MpComplex& x, MpComplex& out) {
        out.re = 0;
        out.im = 0;
        for (int i = d; i >= 0; --i) {
            cmul(out, x);
            out.re += c[i];
        }
    };

    mpf_class eps(1, prec);
    mpf_div_2exp(eps.get_mpf_t(), eps.get_mpf_t(), prec / 2 + 8);

    const int iters = 300 + static_cast<int>(prec) / 2;
    for (int iter = 0; iter < iters; ++iter) {
        mpf_class worst(0, prec);
        for (int k = 0; k < d; ++k) {
            horner(z[k], num);
            den.re = c.back();
            den.im = 0;
            for (int j = 0; j < d; ++j) {
                if (j == k) continue;
                diff.re = z[k].re - z[j].re;
                diff.im = z[k].im - z[j].im;
                cmul(den, diff);
            }
            t1 = den.re * den.re + den.im * den.im;
            if (t1 == 0) return false;
            w.re = (num.re * den.re + num.im * den.im) / t1;
            w.im = (num.im * den.re - num.re * den.im) / t1;
            z[k].re -= w.re;
            z[k].im -= w.im;
            cabs(w, t2);
            cabs(z[k], ax);
            t2 = t2 / (1 + ax);
            if (t2 > worst) worst = t2;
        }
        if (worst < eps) break;
    }

    std::vector<Disk> disks(d);
    for (int k = 0; k < d; ++k) {
        horner(z[k], num);
        cabs(num, t1);
        mpf_class denall(0, prec);
        denall = abs(c.back());
        for (int j = 0; j < d; ++j) {
            if (j == k) continue;
            diff.re = z[k].re - z[j].re;
            diff.im = z[k].im - z[j].im;
            cabs(diff, t2);
            denall *= t2;
        }
        if (denall == 0) return false;
        t1 = t1 / denall;
        cabs(z[k], ax);
        const double wk = t1.get_d() * (1.0 + 1e-9);
        const double zk = ax.get_d();
        // radius floored at the working precision so conversion underflow
        // can never fake certainty
        const double floor_r = (1.0 + zk) * std::ldexp(1.0, -static_cast<int>(prec / 2));
        disks[k].center = std::complex<double>(z[k].re.get_d(), z[k].im.get_d());
        disks[k].radius = std::max(d * wk, floor_r) + zk * 1e-14;
        if (!std::isfinite(disks[k].radius)) return false;
    }
    disks_to_interval_sum(disks, value, err);
    return std::isfinite(value) && err <= tol;
}

}  // namespace

double log_mahler(const IntPolynomial& p, double tol_abs) {
    std::vector<Int> c = p.coeffs;
    if (c.empty() || (c.size() == 1 && c[0] == 0))
        throw Error("internal", "mahler measure of the zero polynomial");
    size_t shift = 0;
    while (c[shift] == 0) ++shift;  // roots at the origin contribute log max(1,0) = 0
    c.erase(c.begin(), c.begin() + shift);

    const double lead_log = log_of(abs(c.back()));
    if (c.size() == 1) return lead_log;

    const double budget = std::max(tol_abs, 1e-11);
    double value = 0.0, err = 0.0;
    if (roots_double(c, budget, value, err)) return lead_log + value;
    size_t maxbits = 0;
    for (const Int& x : c) maxbits = std::max(maxbits, bit_size(x));
    for (unsigned long prec = std::max<unsigned long>(192, 2 * maxbits + 64); prec <= 6144;
         prec *= 2)
        if (roots_mpf(c, prec, budget, value, err)) return lead_log + value;
    throw Error("internal", "root enclosures failed to certify the requested tolerance");
}

}  // namespace pclab::detail
