#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <iomanip>
#include <sstream>

#include "sklab/wp_volumes.hpp"

using namespace sklab::wp;

TEST_CASE("zeta at even integers") {
    // zeta(0) = -1/2, zeta(2) = pi^2/6, zeta(4) = pi^4/90, zeta(6) = pi^6/945
    CHECK(zeta_even_rational(0) == Rational(-1, 2));
    CHECK(zeta_even_rational(1) == Rational(1, 6));
    CHECK(zeta_even_rational(2) == Rational(1, 90));
    CHECK(zeta_even_rational(3) == Rational(1, 945));
    CHECK(zeta_even_rational(4) == Rational(1, 9450));
}

TEST_CASE("base polynomial is the constant 1") {
    VolumeTable t;
    const auto& p = t.get(0, 3);
    REQUIRE(p.terms.size() == 1);
    CHECK(p.at_zero() == Coef{1, 0});
    CHECK(static_cast<double>(p.evaluate({Real(3), Real(7), Real(11)})) == 1.0);
}

TEST_CASE("four-holed sphere volume polynomial") {
    // 2 pi^2 + (x1^2+x2^2+x3^2+x4^2)/2, forced by the kernel moments
    VolumeTable t;
    const auto& p = t.get(0, 4);
    REQUIRE(p.terms.size() == 5);
    CHECK(p.terms.at({0, 0, 0, 0}) == Coef{2, 1});
    CHECK(p.terms.at({1, 0, 0, 0}) == Coef{Rational(1, 2), 0});
    CHECK(p.terms.at({0, 0, 0, 1}) == Coef{Rational(1, 2), 0});
}

TEST_CASE("one-handled torus with two boundaries") {
    // (4 pi^2 + x1^2 + x2^2)(12 pi^2 + x1^2 + x2^2)/192
    VolumeTable t;
    const auto& p = t.get(1, 2);
    CHECK(p.terms.at({0, 0}) == Coef{Rational(1, 4), 2});
    CHECK(p.terms.at({1, 0}) == Coef{Rational(1, 12), 1});
    CHECK(p.terms.at({2, 0}) == Coef{Rational(1, 192), 0});
    CHECK(p.terms.at({1, 1}) == Coef{Rational(1, 96), 0});
}

TEST_CASE("documented torus-with-one-boundary normalization") {
    // the convention forced by boundary-exchange symmetry of higher cells
    VolumeTable t;
    const auto& p = t.get(1, 1);
    CHECK(p.terms.at({1}) == Coef{Rational(1, 48), 0});
    CHECK(p.terms.at({0}) == Coef{Rational(1, 12), 1});
    MESSAGE("V(1,1) at zero = pi^2/12 = ", static_cast<double>(p.at_zero().to_real()));
}

TEST_CASE("evaluation identity: V_{g,1}(2 pi i) vanishes") {
    VolumeTable t;
    for (int g = 1; g <= 4; ++g) {
        const auto z = substitute_two_pi_i(t.get(g, 1), 0);
        CHECK(z.terms.empty());
    }
}

TEST_CASE("string-type identity across cells") {
    // V_{g,n+1}(x, 2 pi i) = sum_k Int_0^{x_k} y V_{g,n}(.., y, ..) dy
    VolumeTable t;
    const std::vector<std::pair<int, int>> cells = {{1, 1}, {0, 3}, {1, 2}, {2, 1},
                                                    {0, 4}, {2, 2}, {3, 1}, {1, 3}};
    for (auto [g, n] : cells) {
        const auto lhs = substitute_two_pi_i(t.get(g, n + 1), n);
        VolumePolynomial rhs = integrate_moment(t.get(g, n), 0);
        for (int k = 1; k < n; ++k) rhs = sum(rhs, integrate_moment(t.get(g, n), k));
        CHECK(lhs.terms == rhs.terms);
    }
}

TEST_CASE("derivative identity across cells") {
    // (1/(2 pi i)) dV_{g,n+1}/dx_{n+1} at 2 pi i = (2g-2+n) V_{g,n}
    VolumeTable t;
    const std::vector<std::pair<int, int>> cells = {{1, 1}, {0, 3}, {1, 2}, {2, 1}, {0, 4}, {2, 2}, {1, 3}};
    for (auto [g, n] : cells) {
        auto lhs = derivative_at_two_pi_i(t.get(g, n + 1), n);
        VolumePolynomial rhs = t.get(g, n);
        for (auto& [d, c] : rhs.terms) c.rat *= (2 * g - 2 + n);
        CHECK(lhs.terms == rhs.terms);
    }
}

TEST_CASE("closed genus-2 volume matches the derivative route") {
    VolumeTable t;
    const auto v2 = t.get(2, 0).at_zero();
    CHECK(v2.pi2 == 3);
    CHECK(v2.rat == Rational(43, 2160));
}

TEST_CASE("evaluate: constants, permutation invariance, high precision") {
    VolumeTable t;
    const auto& p = t.get(1, 2);
    CHECK(static_cast<double>(p.evaluate({Real(0), Real(0)})) ==
          doctest::Approx(static_cast<double>(p.at_zero().to_real())));
    const Real a = p.evaluate({Real(3), Real("7.5")});
    const Real b = p.evaluate({Real("7.5"), Real(3)});
    CHECK(static_cast<double>(abs(a - b) / a) < 1e-90);
    CHECK_THROWS_AS((void)p.evaluate({Real(1)}), std::invalid_argument);
    // pi carried to working precision: spot check the leading digits
    std::ostringstream os;
    os << std::setprecision(55) << pi_value();
    CHECK(os.str().substr(0, 49) == "3.14159265358979323846264338327950288419716939937");
}

TEST_CASE("budget and stability errors") {
    VolumeTable t(6);
    CHECK_THROWS_AS((void)t.get(3, 1), BudgetExceeded);
    CHECK_THROWS_AS((void)t.get(0, 2), std::invalid_argument);
    CHECK_THROWS_AS((void)t.get(1, 0), std::invalid_argument);
    CHECK_NOTHROW((void)t.get(2, 1));
}

TEST_CASE("recomputation is bit-identical") {
    VolumeTable t1, t2;
    CHECK(t1.get(2, 2) == t2.get(2, 2));
    CHECK(t1.get(1, 4) == t2.get(1, 4));
}

TEST_CASE("volume relation report on a reduced budget") {
    VolumeTable t(9);
    const auto rep = check_volume_relations(t, 4, {0.0, 5.0, 10.0});
    CHECK(rep.coefficients_positive);
    CHECK(rep.sandwich_upper_ok);
    CHECK(rep.sinh_upper_ok);
    CHECK(rep.volume_step_ok);
    for (const auto& [n, c] : rep.fitted_c) {
        CHECK(c > 0);
        MESSAGE("fitted c(", n, ") = ", c);
    }
    for (const auto& line : rep.lines) MESSAGE(line);
}

TEST_CASE("tilde W parity matches the table") {
    VolumeTable t;
    CHECK(t.tilde_w(1) == t.get(1, 1).at_zero());
    CHECK(t.tilde_w(2) == t.get(1, 2).at_zero());
    CHECK(t.tilde_w(3) == t.get(2, 1).at_zero());
    CHECK(t.tilde_w(4) == t.get(2, 2).at_zero());
    CHECK(t.tilde_w_available(8));
    CHECK_FALSE(t.tilde_w_available(9)); // V_{5,1} is past the default budget
}

TEST_CASE("pair-sum against the closed-volume scale") {
    VolumeTable t;
    // single-summand case: g = 2, k = 1 forces g1 = g2 = 1
    const auto s = sum_asymptotics(t, 0, 1, Real(0), 2, 0);
    CHECK(s.term_count == 1);
    const Real expect = t.get(1, 1).at_zero().to_real() * t.get(1, 1).at_zero().to_real();
    CHECK(static_cast<double>(s.lhs) == doctest::Approx(static_cast<double>(expect)));

    for (int b : {0, 1})
        for (int k : {1, 2})
            for (double c : {0.0, std::log(2.0)})
                for (int g = 2 + k; g <= 4; ++g) {
                    const auto r = sum_asymptotics(t, b, k, Real(c), g, 0);
                    CHECK(r.ratio > 0);
                    MESSAGE("b=", b, " k=", k, " C=", c, " g=", g,
                            " ratio=", static_cast<double>(r.ratio));
                }
    CHECK_THROWS_AS(sum_asymptotics(t, 0, 1, Real(2), 4, 0), std::invalid_argument);
}

TEST_CASE("table io roundtrip is exact") {
    VolumeTable t;
    std::vector<VolumePolynomial> polys = {t.get(1, 1), t.get(0, 4), t.get(2, 2)};
    std::stringstream ss;
    write_table(ss, polys);
    const auto back = read_table(ss);
    REQUIRE(back.size() == polys.size());
    for (size_t i = 0; i < polys.size(); ++i) {
        CHECK(back[i].g == polys[i].g);
        CHECK(back[i].n == polys[i].n);
        CHECK(back[i].terms == polys[i].terms);
    }
}
