#ifndef PCLAB_CYCLOTOMIC_HPP
#define PCLAB_CYCLOTOMIC_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pclab/errors.hpp"
#include "pclab/numbers.hpp"

namespace pclab {

/// Degree cap for merged cyclotomic fields: operations whose result would
/// live in Q(zeta_n) with phi(n) above this bound throw ConductorOverflowError.
inline constexpr unsigned long kDefaultPhiCap = 64;

/// Cyclotomic conductor: zeta_n is a primitive n-th root of unity. Conductors
/// 1 and 2 both denote the rational field; elements whose reduced value is
/// rational normalize to conductor 1.
struct Conductor {
    unsigned long n = 1;
    Conductor(unsigned long value = 1) : n(value) {}
    unsigned long phi() const { return euler_phi(n); }
    bool operator==(const Conductor&) const = default;
};

/// Primitive integer polynomial (content 1, positive leading coefficient).
struct IntPolynomial {
    std::vector<Int> coeffs;  // coeffs[i] is the coefficient of x^i

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    const Int& leading() const { return coeffs.back(); }
    bool operator==(const IntPolynomial&) const = default;

    /// Strips trailing zeros, divides by content, makes the leading coefficient positive.
    static IntPolynomial make_primitive(std::vector<Int> c);
    std::string to_string(const std::string& var = "x") const;
};

/// An element of Q(zeta_n) in the power basis 1, zeta, ..., zeta^{phi(n)-1},
/// reduced modulo the n-th cyclotomic polynomial. Elements whose reduced value
/// is rational are normalized to conductor 1; the zero element has conductor 1.
class CycloElement {
   public:
    CycloElement() : conductor_(1), coeffs_{Rat(0)} {}
    CycloElement(const Rat& r) : conductor_(1), coeffs_{r} { coeffs_[0].canonicalize(); }
    CycloElement(long v) : conductor_(1), coeffs_{Rat(v)} {}
    CycloElement(const Int& v) : conductor_(1), coeffs_{Rat(v)} {}

    /// zeta_n^power, reduced to canonical form.
    static CycloElement zeta(Conductor n, unsigned long power = 1,
                             unsigned long phi_cap = kDefaultPhiCap);

    /// Element with the given power-basis coordinates (length phi(n)).
    static CycloElement from_coeffs(Conductor n, std::vector<Rat> coeffs,
                                    unsigned long phi_cap = kDefaultPhiCap);

    unsigned long conductor() const { return conductor_; }
    const std::vector<Rat>& coeffs() const { return coeffs_; }

    bool is_zero() const { return conductor_ == 1 && coeffs_[0] == 0; }
    bool is_rational() const { return conductor_ == 1; }
    const Rat& rational_value() const;  // requires is_rational()

    CycloElement inverse(unsigned long phi_cap = kDefaultPhiCap) const;
    CycloElement pow(long e, unsigned long phi_cap = kDefaultPhiCap) const;

    bool operator==(const CycloElement& other) const;
    bool operator!=(const CycloElement& other) const { return !(*this == other); }

    /// Raw three-way comparison on (conductor, coordinates); a total order
    /// usable as a map key (equal values always compare equal because the
    /// representation is canonical).
    int compare_raw(const CycloElement& other) const;

    /// Renders as a polynomial expression in zeta(n), e.g. "1/2 + 1/3*zeta(5)".
    std::string to_string() const;

    friend CycloElement operator+(const CycloElement& a, const CycloElement& b);
    friend CycloElement operator-(const CycloElement& a, const CycloElement& b);
    friend CycloElement operator*(const CycloElement& a, const CycloElement& b);
    friend CycloElement operator/(const CycloElement& a, const CycloElement& b);
    CycloElement operator-() const;
    CycloElement& operator+=(const CycloElement& b) { return *this = *this + b; }
    CycloElement& operator-=(const CycloElement& b) { return *this = *this - b; }
    CycloElement& operator*=(const CycloElement& b) { return *this = *this * b; }
    CycloElement& operator/=(const CycloElement& b) { return *this = *this / b; }

   private:
    CycloElement(unsigned long n, std::vector<Rat> coeffs)
        : conductor_(n), coeffs_(std::move(coeffs)) {}

    /// Canonical element from exponent-indexed coefficients (any length):
    /// folds zeta^n = 1, reduces modulo Phi_n, collapses rationals to conductor 1.
    static CycloElement canonical(unsigned long n, std::vector<Rat> exponent_coeffs);

    /// Power-basis coordinates of a inside Q(zeta_target); a's conductor must divide target.
    static std::vector<Rat> coords_in(const CycloElement& a, unsigned long target);

    friend CycloElement conjugate(const CycloElement&);
    friend IntPolynomial minimal_polynomial(const CycloElement&);
    friend CycloElement add(const CycloElement&, const CycloElement&, unsigned long);
    friend CycloElement mul(const CycloElement&, const CycloElement&, unsigned long);

    unsigned long conductor_;
    std::vector<Rat> coeffs_;
};

struct CycloRawLess {
    bool operator()(const CycloElement& a, const CycloElement& b) const {
        return a.compare_raw(b) < 0;
    }
};

enum class FieldOp { add, sub, mul, div };

CycloElement field_arith(FieldOp op, const CycloElement& a, const CycloElement& b,
                         unsigned long phi_cap = kDefaultPhiCap);

CycloElement add(const CycloElement& a, const CycloElement& b,
                 unsigned long phi_cap = kDefaultPhiCap);
CycloElement sub(const CycloElement& a, const CycloElement& b,
                 unsigned long phi_cap = kDefaultPhiCap);
CycloElement mul(const CycloElement& a, const CycloElement& b,
                 unsigned long phi_cap = kDefaultPhiCap);
CycloElement div(const CycloElement& a, const CycloElement& b,
                 unsigned long phi_cap = kDefaultPhiCap);

/// The automorphism zeta_n -> zeta_n^{-1} (complex conjugation on every embedding).
CycloElement conjugate(const CycloElement& a);

/// Smallest positive integer d such that d*a is an algebraic integer; the lcm
/// of the coordinate denominators (the power basis spans the ring of integers).
Int den(const CycloElement& a);

/// Primitive integer minimal polynomial of a over Q.
IntPolynomial minimal_polynomial(const CycloElement& a);

/// k if a is a primitive k-th root of unity, nullopt otherwise.
std::optional<unsigned long> root_of_unity_order(const CycloElement& a);

/// Phi_k, computed by exact division of x^k - 1 by the lower cyclotomics.
IntPolynomial cyclotomic_polynomial(unsigned long k);

/// Numeric image of a under zeta_n -> exp(2*pi*i*k/n); k must be coprime to n.
std::complex<double> embedding(const CycloElement& a, unsigned long k = 1);

/// All phi(n) archimedean embedding images of a.
std::vector<std::complex<double>> embeddings(const CycloElement& a);

CycloElement evaluate(const IntPolynomial& p, const CycloElement& a,
                      unsigned long phi_cap = kDefaultPhiCap);

}  // namespace pclab

#endif
