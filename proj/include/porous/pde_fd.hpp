#pragma once

#include <array>
#include <functional>
#include <variant>
#include <vector>

#include "porous/field.hpp"

namespace porous::pde {

// Boundary handling for the explicit march.
struct DirichletFixed {
    double lo = 0.0, hi = 0.0;
};
struct DirichletFromField {};  // sample the reference field at the walls
struct ZeroFlux {};
using BoundarySpec = std::variant<DirichletFixed, DirichletFromField, ZeroFlux>;

struct Problem {
    std::function<double(double)> A;        // diffusivity of rho
    std::function<double(double)> initial;  // rho at t = 0
    BoundarySpec bc = ZeroFlux{};
    const SolutionField* field = nullptr;   // needed for DirichletFromField
    double field_t0 = 0.0;                  // field time corresponding to t=0
};

struct MarchSpec {
    double x_lo = 0.0, x_hi = 1.0;
    int cells = 128;        // grid has cells+1 nodes
    double t_end = 1.0;
    double safety = 0.9;    // fraction of the explicit stability limit
    double dt_override = 0.0;  // 0 = automatic; a fixed step may violate
                               // stability, which the monitor then reports
    std::vector<double> snapshot_times;  // strictly increasing, <= t_end
};

struct MarchResult {
    std::vector<double> x;
    std::vector<double> times;                   // snapshots plus t_end
    std::vector<std::vector<double>> profiles;   // one per entry of times
    long long steps = 0;
    double mass_initial = 0.0;  // Dx * sum(rho), tracked for zero-flux runs
    double mass_final = 0.0;
};

// Explicit conservative march of rho_t = (A(rho) rho_x)_x: per-edge flux
// (rho_{i+1} - rho_i) * A(midpoint density), time step chosen each step as
// safety * Dx^2 / (2 max A).  Throws NonParabolic when A <= 0 on the evolved
// profile and StabilityViolation when the running max-principle monitor
// (checked every 100 steps) sees the profile leave the enclosing data range.
MarchResult march(const Problem& problem, const MarchSpec& spec);

struct ConvergenceReport {
    std::array<int, 3> cells{};
    std::array<double, 3> sup_errors{};
    double order = 0.0;           // log2 slope between successive errors
    bool exact_to_roundoff = false;  // all sup errors below 1e-10
};

// Marches the field's own initial data at N, 2N, 4N cells with moving
// Dirichlet boundaries taken from the field, then compares against the field
// at t_end on interior nodes.
ConvergenceReport verify_field(const SolutionField& field, double x_lo,
                               double x_hi, double t0, double t_end,
                               int base_cells, double safety = 0.9);

// Pointwise strong-form residual rho_t - A rho_xx - A'(rho) rho_x^2 of an
// exact field, evaluated with second-order central differences in x and a
// fourth-order five-point stencil in t.  Returns the sup over interior nodes.
double instantaneous_residual(const SolutionField& field, double t,
                              double x_lo, double x_hi, int cells,
                              double dt_scale = 1e-3);

}  // namespace porous::pde
