#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "porous/errors.hpp"
#include "porous/thermo.hpp"
#include "support/maxwell_oracle.hpp"

using namespace porous;
using namespace porous::thermo;

TEST_CASE("critical point and basic state fields") {
    CHECK(pressure(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    ThermoState st = state_from_vT(2.0, 0.9);
    CHECK(st.p == doctest::Approx(8.0 * 0.9 / 5.0 - 0.75).epsilon(1e-15));
    CHECK(st.e == doctest::Approx(4.0 * 0.9 - 1.5).epsilon(1e-15));
    // First law de = T dsigma_hat - p dv, checked by central differences.
    GasSpec gas;
    double v = 1.7, T = 0.8, h = 1e-6;
    auto sig_hat = [&](double vv, double TT) {
        return state_from_vT(vv, TT, gas).sigma / gas.R;
    };
    auto en = [&](double vv, double TT) { return state_from_vT(vv, TT, gas).e; };
    double de_dv = (en(v + h, T) - en(v - h, T)) / (2 * h);
    double ds_dv = (sig_hat(v + h, T) - sig_hat(v - h, T)) / (2 * h);
    double p_here = pressure(v, T);
    CHECK(de_dv == doctest::Approx(T * ds_dv - p_here).epsilon(1e-7));
    double de_dT = (en(v, T + h) - en(v, T - h)) / (2 * h);
    double ds_dT = (sig_hat(v, T + h) - sig_hat(v, T - h)) / (2 * h);
    CHECK(de_dT == doctest::Approx(T * ds_dT).epsilon(1e-7));
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(pressure(0.3, 1.0), DomainError);
    CHECK_THROWS_AS(state_from_vT(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(spinodal_roots(1.0), DomainError);
    CHECK_THROWS_AS(coexistence_solve(0.2), DomainError);
    CHECK_THROWS_AS(coexistence_solve(1.0), DomainError);
    GasSpec bad;
    bad.mu = 0.0;
    CHECK_THROWS_AS(state_from_vT(1.0, 1.0, bad), DomainError);
}

TEST_CASE("definiteness classification") {
    // At the critical point the discriminant vanishes identically.
    auto [ph_c, D_c] = kappa_classify(1.0, 1.0);
    CHECK(ph_c == Phase::SpinodalBoundary);
    CHECK(std::fabs(D_c) < 1e-14);
    auto [ph_a, D_a] = kappa_classify(2.0, 0.9);
    CHECK(ph_a == Phase::Applicable);
    CHECK(D_a == doctest::Approx(3.8).epsilon(1e-12));
    auto [ph_n, D_n] = kappa_classify(1.0, 0.9);
    CHECK(ph_n == Phase::NonApplicable);
    CHECK(D_n == doctest::Approx(-0.4).epsilon(1e-12));
}

TEST_CASE("spinodal roots bracket the unstable region") {
    for (double T : {0.5, 0.85, 0.99}) {
        auto [a, b] = spinodal_roots(T);
        CHECK(a > 1.0 / 3.0);
        CHECK(a < 1.0);
        CHECK(b > 1.0);
        CHECK(kappa_classify(a, T).second ==
              doctest::Approx(0.0).epsilon(1e-10));
        CHECK(kappa_classify(b, T).second ==
              doctest::Approx(0.0).epsilon(1e-10));
    }
    auto [a, b] = spinodal_roots(0.9999);
    CHECK(a == doctest::Approx(0.9885629834917247).epsilon(1e-10));
    CHECK(b == doctest::Approx(1.0116592611195685).epsilon(1e-10));
}

TEST_CASE("equal-area oracle reproduces frozen reference values") {
    struct Row {
        double T, v1, v2, p;
    };
    // Frozen from the equal-area construction (independent bisection run).
    const Row rows[] = {
        {0.85, 0.5533604584, 3.1276392924, 0.5044916498},
        {0.90, 0.6034019032, 2.3488423762, 0.6469983519},
        {0.95, 0.6841221137, 1.7270711923, 0.8118792434},
        {0.99, 0.8309140615, 1.2429533101, 0.9604790609},
    };
    for (const auto& r : rows) {
        auto m = testsupport::maxwell_equal_area(r.T);
        CHECK(m.v1 == doctest::Approx(r.v1).epsilon(1e-9));
        CHECK(m.v2 == doctest::Approx(r.v2).epsilon(1e-9));
        CHECK(m.p == doctest::Approx(r.p).epsilon(1e-9));
    }
}

TEST_CASE("coexistence solver agrees with the equal-area oracle") {
    for (double T : {0.85, 0.90, 0.95, 0.99}) {
        auto c = coexistence_solve(T);
        auto m = testsupport::maxwell_equal_area(T);
        CHECK(std::fabs(c.v1 - m.v1) < 1e-9);
        CHECK(std::fabs(c.v2 - m.v2) / m.v2 < 1e-9);
        CHECK(std::fabs(c.p - m.p) / m.p < 1e-9);
        // Defining invariants: equal pressure, equal Gibbs potential.
        CHECK(std::fabs(pressure(c.v1, T) - c.p) < 1e-10);
        CHECK(std::fabs(pressure(c.v2, T) - c.p) < 1e-10);
        CHECK(std::fabs(gibbs(c.v1, T) - gibbs(c.v2, T)) < 1e-9);
        // The Gibbs equality is nontrivial: it fails away from the binodal.
        CHECK(std::fabs(gibbs(0.5 * (c.v1 + c.v2), T) - gibbs(c.v2, T)) >
              1e-4);
    }
}

TEST_CASE("coexistence solver works at hard temperatures") {
    // Near-critical: binodal width shrinks like 2*sqrt(1-T).
    for (double T : {0.999, 0.9999, 0.99999}) {
        auto c = coexistence_solve(T);
        double w = 2.0 * std::sqrt(1.0 - T);
        CHECK(c.v1 < 1.0);
        CHECK(c.v2 > 1.0);
        CHECK(std::fabs(c.v1 - (1.0 - w)) < 0.3 * w);
        CHECK(std::fabs(c.v2 - (1.0 + w)) < 0.3 * w);
        CHECK(std::fabs(gibbs(c.v1, T) - gibbs(c.v2, T)) < 1e-9);
    }
    auto m = testsupport::maxwell_equal_area(0.9999);
    auto c = coexistence_solve(0.9999);
    CHECK(c.v1 == doctest::Approx(m.v1).epsilon(1e-9));
    CHECK(c.v2 == doctest::Approx(m.v2).epsilon(1e-9));

    // Deep subcritical: v2 grows to ~2.5e3 at the cutoff temperature.
    auto low = coexistence_solve(0.3);
    auto mo = testsupport::maxwell_equal_area(0.3);
    CHECK(std::fabs(low.v1 - mo.v1) < 1e-9);
    CHECK(std::fabs(low.v2 - mo.v2) / mo.v2 < 1e-8);
    CHECK(low.v2 > 2000.0);
}

TEST_CASE("coexistence table marches monotonically") {
    auto rows = coexistence_table(0.4, 0.99, 120);
    REQUIRE(rows.size() == 120);
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        CHECK(rows[i].v1 < rows[i + 1].v1);
        CHECK(rows[i].v2 > rows[i + 1].v2);
        CHECK(rows[i].p < rows[i + 1].p);
    }
    for (const auto& r : rows) {
        CHECK(std::fabs(gibbs(r.v1, r.T) - gibbs(r.v2, r.T)) < 1e-9);
        CHECK(std::fabs(pressure(r.v1, r.T) - r.p) < 1e-9);
    }
    auto one = coexistence_table(0.9, 0.9, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].T == 0.9);
}
