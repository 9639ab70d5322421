#pragma once

#include <utility>
#include <vector>

namespace porous::thermo {

// Reduced van der Waals gas: volumes in units of the critical volume,
// temperature and pressure in critical units.  n counts molecular degrees of
// freedom; k and mu are the transport constants entering the filtration
// coefficient; R is the reduced gas constant.
struct GasSpec {
    double n = 3.0;
    double k = 1.0;
    double mu = 1.0;
    double R = 8.0 / 3.0;

    void validate() const;  // throws DomainError on nonphysical parameters
};

// Sign class of the negative Hessian of entropy with respect to (v, T):
// Applicable where it is negative definite (the model describes a stable
// one-phase state), NonApplicable inside the spinodal region, and
// SpinodalBoundary on the degeneracy locus itself.
enum class Phase { Applicable, NonApplicable, SpinodalBoundary };

struct ThermoState {
    double v = 0.0;
    double T = 0.0;
    double p = 0.0;
    double e = 0.0;
    double sigma = 0.0;
    Phase phase = Phase::Applicable;
};

// Reduced pressure on the (v, T) plane; v > 1/3.
double pressure(double v, double T);

// Discriminant D(v,T) = 4Tv^3 - 9v^2 + 6v - 1 controlling definiteness,
// together with its phase classification.  |D| <= 1e-10 is treated as the
// boundary.
std::pair<Phase, double> kappa_classify(double v, double T);

// Full state on the constitutive surface.  Requires v > 1/3, T > 0.
ThermoState state_from_vT(double v, double T, const GasSpec& gas = {});

// Roots v- < 1 < v+ of D(v,T) = 0 for 0 < T < 1.
std::pair<double, double> spinodal_roots(double T);

// Specific Gibbs potential e - T*sigma + p*v along the constitutive surface,
// with the entropy normalised so that the first law de = T dsigma - p dv
// holds exactly.  Equality of gibbs() at the two coexistence volumes is the
// defining property of the phase transition.
double gibbs(double v, double T, const GasSpec& gas = {});

struct CoexistencePoint {
    double T = 0.0;
    double p = 0.0;
    double v1 = 0.0;  // liquid-side volume, 1/3 < v1 < 1
    double v2 = 0.0;  // gas-side volume, v2 > 1
};

struct CoexistenceOptions {
    double tol = 1e-12;       // max scaled residual at convergence
    int max_iter = 80;        // Newton iterations per attempt
    double T_cutoff = 0.3;    // lowest supported temperature
    double anchor_T = 0.95;   // continuation anchor for hard temperatures
};

// Coexistence (binodal) point at temperature T: equal pressure and equal
// Gibbs potential at two distinct volumes.  Damped Newton on (v1, v2, p)
// with row-scaled residuals; seeded from the spinodal, from near-critical
// asymptotics, or by continuation from anchor_T when direct seeds fail.
// Throws DomainError for T outside [T_cutoff, 1), NoConvergence otherwise.
CoexistencePoint coexistence_solve(double T, const GasSpec& gas = {},
                                   const CoexistenceOptions& opts = {});

// Table of coexistence points on a uniform temperature grid, marched with
// warm starts from row to row.  Row count equals `steps`; v1 is strictly
// increasing and v2 strictly decreasing along increasing T.
std::vector<CoexistencePoint> coexistence_table(
    double T_min, double T_max, int steps, const GasSpec& gas = {},
    const CoexistenceOptions& opts = {});

// Stateful wrapper that warm-starts each solve from the previous result;
// much faster than cold solves when temperatures arrive in smooth order.
class CoexistenceMarcher {
  public:
    explicit CoexistenceMarcher(GasSpec gas = {}, CoexistenceOptions opts = {});
    CoexistencePoint at(double T);

  private:
    GasSpec gas_;
    CoexistenceOptions opts_;
    bool has_last_ = false;
    CoexistencePoint last_;
};

}  // namespace porous::thermo
