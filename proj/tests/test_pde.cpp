#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "porous/errors.hpp"
#include "porous/first_order.hpp"
#include "porous/pde_fd.hpp"
#include "porous/second_order.hpp"

using namespace porous;
using namespace porous::pde;

namespace {

const double kPi = 3.14159265358979323846;

dyn2::Dyn2Spec wave_spec(double alpha) {
    dyn2::Dyn2Spec s;
    s.alpha = alpha;
    s.branch = dyn2::Branch::Wave;
    s.C1 = 0.5;
    s.C2 = 1.0;
    return s;
}

dyn2::Dyn2Spec blowup_spec(double alpha) {
    dyn2::Dyn2Spec s = wave_spec(alpha);
    s.branch = dyn2::Branch::Blowup;
    return s;
}

}  // namespace

TEST_CASE("march reproduces decaying heat-equation modes") {
    Problem prob;
    prob.A = [](double) { return 1.0; };
    prob.initial = [](double x) { return std::sin(x); };
    prob.bc = DirichletFixed{0.0, 0.0};
    MarchSpec spec;
    spec.x_lo = 0.0;
    spec.x_hi = kPi;
    spec.cells = 200;
    spec.t_end = 0.1;
    auto res = march(prob, spec);
    REQUIRE(res.profiles.size() == 1);
    double worst = 0.0;
    for (std::size_t i = 0; i < res.x.size(); ++i) {
        double exact = std::exp(-0.1) * std::sin(res.x[i]);
        worst = std::max(worst, std::fabs(res.profiles.back()[i] - exact));
    }
    CHECK(worst < 1e-4);
}

TEST_CASE("march records snapshots in order") {
    Problem prob;
    prob.A = [](double) { return 1.0; };
    prob.initial = [](double x) { return std::sin(x); };
    prob.bc = DirichletFixed{0.0, 0.0};
    MarchSpec spec;
    spec.x_lo = 0.0;
    spec.x_hi = kPi;
    spec.cells = 64;
    spec.t_end = 0.3;
    spec.snapshot_times = {0.1, 0.2};
    auto res = march(prob, spec);
    REQUIRE(res.times.size() == 3);
    CHECK(res.times[0] == doctest::Approx(0.1).epsilon(1e-6));
    CHECK(res.times[1] == doctest::Approx(0.2).epsilon(1e-6));
    CHECK(res.times[2] == doctest::Approx(0.3).epsilon(1e-12));
    REQUIRE(res.profiles.size() == 3);
    // Dirichlet decay: each snapshot sits below the previous one.
    double mid0 = res.profiles[0][32], mid1 = res.profiles[1][32];
    CHECK(mid1 < mid0);
}

TEST_CASE("zero-flux march conserves mass to round-off") {
    ProcessSpec proc;
    proc.kind = ProcessKind::Isenthalpic;
    proc.eta0 = 3.0;
    auto coeffs = dyn1::coefficients(proc);
    Problem prob;
    prob.A = coeffs.A;
    prob.initial = [](double x) { return 1.2 + 0.3 * std::cos(kPi * x / 2.0); };
    prob.bc = ZeroFlux{};
    MarchSpec spec;
    spec.x_lo = 0.0;
    spec.x_hi = 2.0;
    spec.cells = 96;
    spec.t_end = 0.5;
    auto res = march(prob, spec);
    CHECK(std::fabs(res.mass_final - res.mass_initial) <
          1e-12 * std::fabs(res.mass_initial));
    // The profile relaxes toward its mean under zero-flux walls.
    double lo = 1e300, hi = -1e300;
    for (double u : res.profiles.back()) {
        lo = std::min(lo, u);
        hi = std::max(hi, u);
    }
    CHECK(hi - lo < 0.6);  // started at spread 0.6, strictly contracting
    CHECK(hi - lo > 0.0);
}

TEST_CASE("march rejects degenerate setups") {
    Problem prob;
    prob.A = [](double) { return 1.0; };
    prob.initial = [](double) { return 1.0; };
    MarchSpec spec;
    spec.cells = 3;
    CHECK_THROWS_AS(march(prob, spec), DomainError);
    spec.cells = 16;
    spec.t_end = 0.0;
    CHECK_THROWS_AS(march(prob, spec), DomainError);
    spec.t_end = 1.0;
    spec.safety = 1.5;
    CHECK_THROWS_AS(march(prob, spec), DomainError);
    spec.safety = 0.9;
    prob.bc = DirichletFromField{};
    CHECK_THROWS_AS(march(prob, spec), DomainError);  // no reference field
}

TEST_CASE("march reports loss of parabolicity") {
    ProcessSpec proc;
    proc.kind = ProcessKind::Isenthalpic;
    proc.eta0 = 0.3;  // below the positivity bound, A(0.3) < 0
    auto coeffs = dyn1::coefficients(proc);
    Problem prob;
    prob.A = coeffs.A;
    prob.initial = [](double) { return 0.3; };
    prob.bc = ZeroFlux{};
    MarchSpec spec;
    spec.x_lo = 0.0;
    spec.x_hi = 1.0;
    spec.cells = 16;
    spec.t_end = 0.1;
    CHECK_THROWS_AS(march(prob, spec), NonParabolic);
}

TEST_CASE("march monitor catches a forced unstable step") {
    Problem prob;
    prob.A = [](double) { return 1.0; };
    prob.initial = [](double x) { return std::sin(x); };
    prob.bc = DirichletFixed{0.0, 0.0};
    MarchSpec spec;
    spec.x_lo = 0.0;
    spec.x_hi = kPi;
    spec.cells = 64;
    spec.t_end = 0.5;
    double dx = kPi / 64.0;
    spec.dt_override = 1.5 * dx * dx;  // three times the stability limit
    CHECK_THROWS_AS(march(prob, spec), StabilityViolation);
}

TEST_CASE("travelling wave with a linear coefficient is exact") {
    auto field = dyn2::travelling_wave_solution(wave_spec(1.0));
    auto rep = verify_field(field, 0.0, 2.0, 0.0, 0.5, 64);
    CHECK(rep.exact_to_roundoff);
    for (double err : rep.sup_errors) CHECK(err < 1e-10);
}

TEST_CASE("blow-up field converges at second order") {
    auto field = dyn2::blowup_solution(blowup_spec(1.0));
    auto rep = verify_field(field, 0.5, 2.0, 0.0, 0.5, 64);
    CHECK_FALSE(rep.exact_to_roundoff);
    CHECK(rep.order > 1.8);
    CHECK(rep.order < 2.2);
    CHECK(rep.sup_errors[2] < rep.sup_errors[0]);
}

TEST_CASE("nonlinear travelling wave converges at second order") {
    auto field = dyn2::travelling_wave_solution(wave_spec(5.0 / 3.0));
    auto rep = verify_field(field, 0.0, 2.0, 0.0, 0.5, 64);
    CHECK(rep.order > 1.7);
    CHECK(rep.order < 2.3);
}

TEST_CASE("strong-form residual of the exact fields vanishes") {
    auto wave = dyn2::travelling_wave_solution(wave_spec(1.0));
    CHECK(instantaneous_residual(wave, 0.25, 0.0, 2.0, 256) < 1e-10);
    auto blow = dyn2::blowup_solution(blowup_spec(1.0));
    CHECK(instantaneous_residual(blow, 0.25, 0.5, 2.0, 256) < 1e-10);
}
