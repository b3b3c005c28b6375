#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <pclab/cyclotomic.hpp>

#include "support/oracles.hpp"

using namespace pclab;

namespace {

CycloElement q(long num, long den = 1) { return CycloElement{Rat(num, den)}; }

IntPolynomial int_poly(std::vector<long> coeffs) {
    std::vector<Int> c;
    for (long x : coeffs) c.emplace_back(x);
    return IntPolynomial{std::move(c)};
}

}  // namespace

TEST_CASE("field arithmetic on the examples") {
    const CycloElement z4 = CycloElement::zeta(4);
    CHECK(z4 * z4 == q(-1));

    const CycloElement z3 = CycloElement::zeta(3);
    const CycloElement inv = div(q(1), q(1) + z3);
    CHECK(inv == -z3);
    CHECK((q(1) + z3) * (-z3) == q(1));  // oracle: uses 1 + z3 + z3^2 = 0

    const CycloElement sum = add(q(1, 2), CycloElement{Rat(1, 3)} * CycloElement::zeta(5));
    CHECK(sum.conductor() == 5);
    REQUIRE(sum.coeffs().size() == 4);
    CHECK(sum.coeffs()[0] == Rat(1, 2));
    CHECK(sum.coeffs()[1] == Rat(1, 3));
    CHECK(sum.coeffs()[2] == 0);
    CHECK(sum.coeffs()[3] == 0);
}

TEST_CASE("conductor merging and canonical zero") {
    const CycloElement z6 = CycloElement::zeta(6);
    const CycloElement z4 = CycloElement::zeta(4);
    CHECK((z6 * z4).conductor() == 12);
    CHECK((z6 - z6).conductor() == 1);
    CHECK((z6 - z6).is_zero());
    // zeta_2 reduces to the rational -1
    CHECK(CycloElement::zeta(2) == q(-1));
    CHECK(CycloElement::zeta(2).conductor() == 1);
    // equality across representations: zeta_8^2 = zeta_4
    CHECK(CycloElement::zeta(8, 2) == z4);
}

TEST_CASE("division by zero and conductor overflow errors") {
    CHECK_THROWS_AS(div(CycloElement::zeta(3), q(0)), DivisionByZeroError);
    CHECK_THROWS_AS(CycloElement::zeta(97), ConductorOverflowError);
    // phi(lcm(32, 9)) = phi(288) = 96 > 64
    CHECK_THROWS_AS(mul(CycloElement::zeta(32), CycloElement::zeta(9)), ConductorOverflowError);
    try {
        div(CycloElement::zeta(3), q(0));
        FAIL("expected a division error");
    } catch (const DivisionByZeroError& e) {
        CHECK(std::string(e.what()).find("zeta(3)") != std::string::npos);
    }
}

TEST_CASE("conjugation") {
    CHECK(conjugate(CycloElement::zeta(5)) == CycloElement::zeta(5, 4));
    CHECK(conjugate(q(3, 2)) == q(3, 2));
    CHECK(conjugate(q(1) + CycloElement::zeta(4)) == q(1) - CycloElement::zeta(4));

    std::mt19937_64 rng(123);
    for (int i = 0; i < 40; ++i) {
        const unsigned long n = 1 + rng() % 16;
        const CycloElement a = oracles::random_cyclo(rng, n);
        const CycloElement b = oracles::random_cyclo(rng, n);
        CHECK(conjugate(conjugate(a)) == a);
        CHECK(conjugate(a * b) == conjugate(a) * conjugate(b));
        CHECK(conjugate(a + b) == conjugate(a) + conjugate(b));
        // a * conj(a) lies in the maximal real subfield: fixed by conjugation
        CHECK(conjugate(a * conjugate(a)) == a * conjugate(a));
    }
}

TEST_CASE("minimal polynomials") {
    CHECK(minimal_polynomial(CycloElement::zeta(4)) == int_poly({1, 0, 1}));
    CHECK(minimal_polynomial(q(1, 2)) == int_poly({-1, 2}));
    CHECK(minimal_polynomial(q(1) + CycloElement::zeta(4)) == int_poly({2, -2, 1}));

    std::mt19937_64 rng(77);
    for (int i = 0; i < 25; ++i) {
        const unsigned long n = 1 + rng() % 16;
        const CycloElement a = oracles::random_cyclo(rng, n);
        const IntPolynomial p = minimal_polynomial(a);
        CHECK(evaluate(p, a).is_zero());
        CHECK(euler_phi(a.conductor()) % std::max(1, p.degree()) == 0);
    }
}

TEST_CASE("den") {
    CHECK(den(q(1, 2) + CycloElement{Rat(1, 3)} * CycloElement::zeta(5)) == 6);
    CHECK(den(CycloElement::zeta(8)) == 1);
    CHECK(den(q(7, 10)) == 10);

    std::mt19937_64 rng(99);
    for (int i = 0; i < 40; ++i) {
        const unsigned long n = 1 + rng() % 12;
        const CycloElement a = oracles::random_cyclo(rng, n);
        const CycloElement b = oracles::random_cyclo(rng, n);
        CHECK(den(a * b) != 0);
        Int dprod = den(a) * den(b);
        CHECK(dprod % den(a * b) == 0);
        CHECK(int_lcm(den(a), den(b)) % den(a + b) == 0);
    }
}

TEST_CASE("root of unity detection") {
    CHECK(root_of_unity_order(CycloElement::zeta(6).pow(3)) == 2);
    CHECK(!root_of_unity_order(q(1) + CycloElement::zeta(4)));
    const CycloElement mz3 = -CycloElement::zeta(3);
    auto ord = root_of_unity_order(mz3);
    REQUIRE(ord.has_value());
    CHECK(*ord == 6);
    // oracle: (-z3)^6 = 1 and no smaller positive power is 1
    CycloElement p(1L);
    for (int e = 1; e <= 6; ++e) {
        p = p * mz3;
        if (e < 6) CHECK(p != CycloElement(1L));
    }
    CHECK(p == CycloElement(1L));

    CHECK(root_of_unity_order(q(1)) == 1);
    CHECK(root_of_unity_order(q(-1)) == 2);
    CHECK(!root_of_unity_order(q(0)));
    CHECK(!root_of_unity_order(q(1, 2)));
    CHECK(!root_of_unity_order(CycloElement::zeta(5) + CycloElement::zeta(5, 2)));
}

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic_polynomial(1) == int_poly({-1, 1}));
    CHECK(cyclotomic_polynomial(6) == int_poly({1, -1, 1}));
    CHECK(cyclotomic_polynomial(8) == int_poly({1, 0, 0, 0, 1}));

    // peeling oracle: Phi_6 = (x^6 - 1) / (Phi_1 Phi_2 Phi_3), checked by product
    for (unsigned long k = 1; k <= 64; ++k) {
        UniPoly prod{std::vector<CycloElement>{CycloElement(1L)}};
        for (unsigned long d : divisors(k))
            prod = prod * UniPoly::from_int_polynomial(cyclotomic_polynomial(d));
        std::vector<CycloElement> expect(k + 1);
        expect[0] = CycloElement(-1L);
        expect[k] = CycloElement(1L);
        CHECK(prod == UniPoly(std::move(expect)));
    }
}

TEST_CASE("field axioms on random samples") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 30; ++i) {
        const unsigned long n = 1 + rng() % 12;
        const CycloElement a = oracles::random_cyclo(rng, n);
        const CycloElement b = oracles::random_cyclo(rng, n);
        const CycloElement c = oracles::random_cyclo(rng, n);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        if (!a.is_zero()) CHECK(a * a.inverse() == CycloElement(1L));
    }
}

TEST_CASE("pow handles negative exponents") {
    const CycloElement a = q(1) + CycloElement::zeta(3);
    CHECK(a.pow(0) == CycloElement(1L));
    CHECK(a.pow(3) * a.pow(-3) == CycloElement(1L));
    CHECK(CycloElement::zeta(5).pow(-1) == CycloElement::zeta(5, 4));
}

TEST_CASE("embeddings are numerically consistent") {
    const CycloElement a = q(1) + CycloElement::zeta(4);
    auto embs = embeddings(a);
    REQUIRE(embs.size() == 2);
    for (const auto& z : embs) CHECK(std::abs(std::abs(z) - std::sqrt(2.0)) < 1e-12);
}
