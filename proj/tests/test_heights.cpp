#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include <pclab/heights.hpp>

#include "support/oracles.hpp"

using namespace pclab;

namespace {

MultiPoly from_terms(int m, std::vector<std::pair<MultiIndex, long>> terms) {
    MultiPoly p(m);
    for (auto& [n, c] : terms) p.add_term(n, CycloElement(c));
    return p;
}

CycloElement q(long num, long den = 1) { return CycloElement{Rat(num, den)}; }

}  // namespace

TEST_CASE("height of rationals, roots of unity, and 1+i") {
    CHECK(height(q(2, 3)) == doctest::Approx(std::log(3.0)).epsilon(1e-12));
    CHECK(height(CycloElement::zeta(7)) == 0.0);  // exact zero, no floating error
    CHECK(height(q(1) + CycloElement::zeta(4)) ==
          doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-9));
    CHECK(height(q(0)) == 0.0);
    CHECK(height(q(1)) == 0.0);
}

TEST_CASE("roots of unity have exactly zero height") {
    for (unsigned long k = 1; k <= 24; ++k)
        for (unsigned long j = 1; j <= k; ++j)
            if (std::gcd(j, k) == 1) CHECK(height(CycloElement::zeta(k, j)) == 0.0);
}

TEST_CASE("tuple heights over Q") {
    CHECK(height_tuple_rational({q(1, 2), q(3)}) == doctest::Approx(std::log(6.0)).epsilon(1e-12));
    CHECK(height_tuple_rational({q(0), q(0)}) == 0.0);
    CHECK(height_tuple_rational({q(7)}) == doctest::Approx(std::log(7.0)).epsilon(1e-12));
    CHECK_THROWS_AS(height_tuple_rational({CycloElement::zeta(5)}), UnsupportedFieldError);
}

TEST_CASE("S-integrality") {
    const PrimeSet s25 = PrimeSet::from({2, 5});
    CHECK(is_s_integer(q(7, 10), s25));
    CHECK(!is_s_integer(q(1, 3), s25));
    CHECK(is_s_integer(CycloElement::zeta(3) * q(1, 2), PrimeSet::from({2})));
    CHECK(is_s_integer(q(5), PrimeSet::from({})));
    CHECK_THROWS_AS(PrimeSet::from({4}), Error);
    CHECK_THROWS_AS(PrimeSet::from({2, 2}), Error);
}

TEST_CASE("height identities on random cyclotomic elements") {
    std::mt19937_64 rng(314);
    const double tol = 1e-9;
    for (int i = 0; i < 40; ++i) {
        const unsigned long n = 1 + rng() % 12;
        const CycloElement a = oracles::random_cyclo(rng, n, 5, true);
        const double ha = height(a, tol);
        CHECK(std::fabs(height(a.inverse(), tol) - ha) <= 2 * tol);
        CHECK(std::fabs(height(conjugate(a), tol) - ha) <= 2 * tol);
        for (long k = 2; k <= 5; ++k)
            CHECK(std::fabs(height(a.pow(k), tol) - k * ha) <= (k + 1) * tol);
        const CycloElement b = oracles::random_cyclo(rng, n, 5, true);
        const double hb = height(b, tol);
        CHECK(height(a * b, tol) <= ha + hb + 2 * tol);
        CHECK(height(a + b, tol) <= ha + hb + std::log(2.0) + 2 * tol);
    }
}

TEST_CASE("height profiles of the named examples") {
    // 1/(1-2x): h_N = N log 2
    SeriesExpr f = SeriesExpr::rational(MultiPoly::constant(1, q(1)),
                                        from_terms(1, {{{0}, 1}, {{1}, -2}}));
    HeightProfile p = height_profile(f, 8);
    for (int n = 0; n <= 8; ++n)
        CHECK(p.hN[n] == doctest::Approx(n * std::log(2.0)).epsilon(1e-9));

    // 1/((1-x1)(1-x1x2)): all coefficients 0/1
    SeriesExpr g = SeriesExpr::rational(
        MultiPoly::constant(2, q(1)),
        from_terms(2, {{{0, 0}, 1}, {{1, 0}, -1}}) * from_terms(2, {{{0, 0}, 1}, {{1, 1}, -1}}));
    HeightProfile pg = height_profile(g, 8);
    for (double h : pg.hN) CHECK(h == 0.0);

    // log(1+x): d_6 = lcm(1..6) = 60
    HeightProfile pl = height_profile(SeriesExpr::log1p(1), 6);
    REQUIRE(pl.dN_exact[6].has_value());
    CHECK(*pl.dN_exact[6] == 60);
}

TEST_CASE("profile arrays are monotone and divisibility-ordered") {
    HeightProfile p = height_profile(SeriesExpr::log1p(1), 20);
    for (size_t n = 1; n < p.hN.size(); ++n) {
        CHECK(p.hN[n] >= p.hN[n - 1]);
        CHECK(p.dN_log[n] >= p.dN_log[n - 1]);
        REQUIRE(p.dN_exact[n].has_value());
        CHECK(*p.dN_exact[n] % *p.dN_exact[n - 1] == 0);
    }
    HeightProfile pe = height_profile(SeriesExpr::expseries(), 20);
    for (size_t n = 1; n < pe.hN.size(); ++n) {
        CHECK(pe.hN[n] >= pe.hN[n - 1]);
        REQUIRE(pe.dN_exact[n].has_value());
        CHECK(*pe.dN_exact[n] % *pe.dN_exact[n - 1] == 0);
    }
}

TEST_CASE("growth classification of exact model members") {
    std::vector<double> zeros(40, 0.0);
    GrowthFit fz = classify_growth(zeros);
    CHECK(fz.cls == GrowthClass::constant);
    CHECK(fz.constant == 0.0);

    std::vector<double> logs, lins, sup;
    for (int n = 0; n < 64; ++n) {
        logs.push_back(std::log(n + 1.0));
        lins.push_back(0.6931 * n);
        sup.push_back(0.05 * std::pow(n, 1.7));
    }
    GrowthFit fl = classify_growth(logs);
    CHECK(fl.cls == GrowthClass::logarithmic);
    CHECK(fl.constant == doctest::Approx(1.0).epsilon(1e-6));
    GrowthFit fn = classify_growth(lins);
    CHECK(fn.cls == GrowthClass::linear);
    CHECK(fn.constant == doctest::Approx(0.6931).epsilon(1e-6));
    CHECK(classify_growth(sup).cls == GrowthClass::superlinear);

    CHECK_THROWS_AS(classify_growth(std::vector<double>(15, 1.0)), LengthError);
}

TEST_CASE("growth classification is scale-consistent") {
    std::vector<double> logs, lins;
    for (int n = 0; n < 64; ++n) {
        logs.push_back(std::log(n + 1.0));
        lins.push_back(0.25 * n);
    }
    for (double s : {0.5, 3.0, 1000.0}) {
        std::vector<double> a = logs, b = lins;
        for (double& x : a) x *= s;
        for (double& x : b) x *= s;
        CHECK(classify_growth(a).cls == GrowthClass::logarithmic);
        CHECK(classify_growth(b).cls == GrowthClass::linear);
    }
}

TEST_CASE("invalid profile arguments") {
    CHECK_THROWS_AS(height_profile(SeriesExpr::expseries(), 0), LengthError);
    CHECK_THROWS_AS(height(q(1), 0.0), Error);
}
