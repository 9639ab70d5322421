#pragma once

#include <optional>

#include "porous/field.hpp"
#include "porous/jets.hpp"
#include "porous/process.hpp"

namespace porous::dyn2 {

// Admissible closures y2 = b1 * y1^2 / y0 of the evolution generated by
// A(rho) = q rho^alpha.  Exactly three values of b1 are compatible:
//   Trivial: b1 = -alpha       (constant-flux family, flagged but not solved)
//   Wave:    b1 = -alpha + 1   (travelling waves)
//   Blowup:  b1 = -alpha/2 + 1 (separable family with finite-time blow-up)
enum class Branch { Trivial, Wave, Blowup };

double branch_b1(Branch branch, double alpha);

// Numeric b1 -> branch, or nullopt when it matches none of the three.
std::optional<Branch> classify_branch(double alpha, double b1,
                                      double tol = 1e-12);

struct Dyn2Spec {
    double q = 1.0;
    double alpha = 1.0;
    Branch branch = Branch::Wave;
    double beta = -1.0;  // exponent pairing the closure with the evolution
    double C1 = 1.0;     // integration constants of the reduced dynamics
    double C2 = 1.0;

    double b1() const { return branch_b1(branch, alpha); }
    bool is_trivial() const { return branch == Branch::Trivial; }
    void validate() const;  // q > 0, alpha not in {0, -2}, beta == -1
};

// A(rho) = q rho^alpha from an ideal-gas process.
//   Isenthalpic at eta0: q = 2 eta0 k / (mu (n+2)),        alpha = 1
//   Isentropic at sigma0: q = (R k / mu)(2/n + 1) e^{2 sigma0 / (R n)},
//                          alpha = 2/n + 1
// PowerLaw passes through unchanged.
struct PowerLaw {
    double q = 1.0;
    double alpha = 1.0;
};
PowerLaw power_law_from_process(const ProcessSpec& process);

// Right-hand side of the closure: y2 as a function of (y0, y1).  The trivial
// branch is flagged with a DomainError instead of being evaluated.
double dynamics_rhs(const Dyn2Spec& spec, double y0, double y1);

// Constraint F = y2 - b1 y1^2 / y0 and evolution phi = A y2 + A' y1^2 as
// jet-space functions with analytic first partials.
jets::JetFunction make_constraint(const Dyn2Spec& spec);
jets::JetFunction make_evolution(double q, double alpha);

// First integrals of the blow-up branch reduced ODE:
//   J1 = -x + 2 y0 / (alpha y1)
//   J2 = 2 y0^{2-alpha} / (q alpha (alpha+2) y1^2)
// Requires the Blowup branch and y1 != 0.
struct Integrals {
    double J1 = 0.0;
    double J2 = 0.0;
};
Integrals lie_bianchi_integrals(const Dyn2Spec& spec, const jets::JetPoint& jet);

// Closed-form solution families.  Blowup:
//   rho(t,x) = ( alpha (x + C1)^2 / (2 q (alpha+2) (C2 - t)) )^{1/alpha}
// valid where the radicand is positive; for alpha < 0 the line x = -C1 is a
// singular locus.  Wave:
//   rho(t,x) = ( C1^2 alpha q t + C1 alpha x + C2 alpha )^{1/alpha}
SolutionField blowup_solution(const Dyn2Spec& spec);
SolutionField travelling_wave_solution(const Dyn2Spec& spec);

// Curve y(x) = ( alpha (C1 x + C2) )^{1/alpha} solving the wave-branch
// closure y'' = b1 y'^2 / y; equals the travelling wave at t = 0.  Used to
// seed and cross-check direct ODE integration.
double ode_seed_curve(const Dyn2Spec& spec, double x);

}  // namespace porous::dyn2
