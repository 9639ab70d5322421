#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "porous/attractor.hpp"
#include "porous/errors.hpp"
#include "porous/numerics.hpp"
#include "porous/second_order.hpp"

using namespace porous;
using namespace porous::attractor;

TEST_CASE("parameter validation") {
    AttractorParams p;
    CHECK_NOTHROW(p.validate());
    p.q = 0.0;
    CHECK_THROWS_AS(p.validate(), DomainError);
    p.q = 1.0;
    p.c1 = 0.0;
    CHECK_THROWS_AS(p.validate(), DomainError);
    p.c1 = -1.0;
    p.c2 = -0.5;
    CHECK_THROWS_AS(p.validate(), DomainError);
}

TEST_CASE("invariance coefficient reduces to -2 q y2 for a linear law") {
    AttractorParams p;
    p.alpha = 1.0;
    p.b1 = 0.0;
    p.q = 1.7;
    num::UniformRng rng(99);
    for (int i = 0; i < 20; ++i) {
        double y0 = rng.uniform(0.2, 3.0);
        double y1 = rng.uniform(-2.0, 2.0);
        double y2 = rng.uniform(0.3, 2.0);  // keep the denominator alive
        double a = coeff_a(p, {0.0, {y0, y1, y2}});
        CHECK(a == doctest::Approx(-2.0 * p.q * y2).epsilon(1e-12));
    }
}

TEST_CASE("psi1 matches its closed form on the adiabatic wave closure") {
    // alpha = 5/3, b1 = -2/3: psi1 = -(q/9) y0^{-1/3} (3 y0 y2 + 2 y1^2).
    AttractorParams p;
    p.q = 1.4;
    num::UniformRng rng(7);
    for (int i = 0; i < 20; ++i) {
        double y0 = rng.uniform(0.3, 3.0);
        double y1 = rng.uniform(-2.0, 2.0);
        double y2 = rng.uniform(0.2, 1.5);
        Psi psi = psi_functions(p, {0.0, {y0, y1, y2}});
        double expected = -(p.q / 9.0) * std::pow(y0, -1.0 / 3.0) *
                          (3.0 * y0 * y2 + 2.0 * y1 * y1);
        CHECK(psi.psi1 == doctest::Approx(expected).epsilon(1e-11));
        CHECK(psi.psi2 ==
              doctest::Approx(2.0 * p.q * (5.0 / 3.0) * y1 *
                              std::pow(y0, 2.0 / 3.0))
                  .epsilon(1e-13));
        CHECK(psi.psi3 ==
              doctest::Approx(p.q * std::pow(y0, 5.0 / 3.0)).epsilon(1e-13));
    }
}

TEST_CASE("coefficient is singular exactly on the closure surface") {
    AttractorParams p;
    double y0 = 1.3, y1 = 0.8;
    double y2 = p.b1 * y1 * y1 / y0;
    CHECK_THROWS_AS(coeff_a(p, {0.0, {y0, y1, y2}}), SingularDenominator);
    CHECK_FALSE(attractor_test(p, {0.0, {y0, y1, y2}}).has_value());
    CHECK(attractor_test(p, {0.0, {y0, y1, y2 + 0.5}}).has_value());
    CHECK_THROWS_AS(coeff_a(p, {0.0, {-1.0, y1, 1.0}}), DomainError);
    CHECK_THROWS_AS(coeff_a(p, {0.0, {1.0, y1}}), ArityMismatch);
}

TEST_CASE("sign test separates decaying from undecided jets") {
    AttractorParams p;  // q = 1, c1 = -1, c2 = 1
    // psi3 = y0^{5/3} < 1 rules the point out regardless of psi1.
    auto small = attractor_test(p, {0.0, {0.5, 0.5, 2.0}});
    REQUIRE(small.has_value());
    CHECK_FALSE(*small);
    // Large curvature at y0 = 2 drives psi1 below c1 = -1.
    auto strong = attractor_test(p, {0.0, {2.0, 0.5, 2.0}});
    REQUIRE(strong.has_value());
    CHECK(*strong);
    // Same y0 with weak curvature: psi1 = -0.573 stays above c1.
    auto weak = attractor_test(p, {0.0, {2.0, 0.5, 1.0}});
    REQUIRE(weak.has_value());
    CHECK_FALSE(*weak);
}

TEST_CASE("jet-function wrapper agrees with the direct coefficient") {
    AttractorParams p;
    auto fn = make_coeff_a(p);
    jets::JetPoint jet{0.0, {1.5, 0.7, 1.1}};
    CHECK(fn(jet) == doctest::Approx(coeff_a(p, jet)).epsilon(1e-15));
    CHECK(fn.arity() == 2);
}

TEST_CASE("domain mask marks inside, outside, and undecidable cells") {
    AttractorParams p;
    // Positive-curvature slice: the denominator never vanishes, so every
    // cell is decided; psi3 >= 1 requires y0 >= 1.
    DomainMask mask = attractor_domain(p, 1.0, 0.2, 3.0, 15, -2.0, 2.0, 11);
    REQUIRE(mask.code.size() == 15u * 11u);
    int inside = 0, outside = 0, undecided = 0;
    for (int i = 0; i < 15; ++i) {
        for (int j = 0; j < 11; ++j) {
            int c = mask.code[static_cast<std::size_t>(i) * 11 + j];
            if (c == 1) ++inside;
            if (c == 0) ++outside;
            if (c == 2) ++undecided;
            if (mask.y0[i] < 1.0 - 1e-12) CHECK(c == 0);
        }
    }
    CHECK(inside > 0);
    CHECK(outside > 0);
    CHECK(undecided == 0);

    // Spot-check agreement with the pointwise test.
    auto direct = attractor_test(p, {0.0, {mask.y0[14], mask.y1[0], 1.0}});
    REQUIRE(direct.has_value());
    CHECK((mask.code[14 * 11 + 0] == 1) == *direct);

    // A negative-curvature slice crosses the closure surface: place a grid
    // node exactly on it (y2 = b1 y1^2 / y0 at y0 = 1, y1 = sqrt(3)/2).
    double y1s = std::sqrt(3.0) / 2.0;
    DomainMask sing = attractor_domain(p, -0.5, 1.0, 2.0, 2, -y1s, y1s, 3);
    CHECK(sing.code[0] == 2);  // (y0, y1) = (1, -sqrt(3)/2)
    CHECK(sing.code[2] == 2);  // (y0, y1) = (1, +sqrt(3)/2)
    CHECK(sing.code[1] != 2);  // y1 = 0 keeps the denominator alive
}

TEST_CASE("perturbed travelling wave relaxes inside the decay region") {
    dyn2::Dyn2Spec base_spec;
    base_spec.alpha = 1.0;
    base_spec.branch = dyn2::Branch::Wave;
    base_spec.C1 = 0.5;
    base_spec.C2 = 1.0;
    SolutionField base = dyn2::travelling_wave_solution(base_spec);

    AttractorParams p;
    p.alpha = 1.0;
    p.b1 = 0.0;
    p.c1 = -0.01;
    p.c2 = 0.5;

    DecaySpec spec;
    spec.cells = 128;
    spec.t_end = 1.0;
    spec.outputs = 11;

    DecayResult res = decay_experiment(p, base, spec);
    REQUIRE(res.norms.size() == 11);
    // The dip has uniform curvature 2 delta, so the residual norm starts
    // there and the region hypotheses hold on the whole initial profile.
    CHECK(res.norms.front() == doctest::Approx(2.0 * spec.delta).epsilon(1e-8));
    CHECK(res.region_ok_at_start);
    CHECK(res.ratio_end < 0.5);
    CHECK(res.monotone_within_5pct);
    for (std::size_t i = 0; i + 1 < res.times.size(); ++i)
        CHECK(res.times[i] < res.times[i + 1]);
}

TEST_CASE("decay experiment validates its sampling request") {
    dyn2::Dyn2Spec base_spec;
    base_spec.alpha = 1.0;
    base_spec.branch = dyn2::Branch::Wave;
    SolutionField base = dyn2::travelling_wave_solution(base_spec);
    AttractorParams p;
    DecaySpec spec;
    spec.outputs = 1;
    CHECK_THROWS_AS(decay_experiment(p, base, spec), DomainError);
}
