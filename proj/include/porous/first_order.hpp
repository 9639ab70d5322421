#pragma once

#include <memory>
#include <vector>

#include "porous/field.hpp"
#include "porous/jets.hpp"
#include "porous/numerics.hpp"
#include "porous/process.hpp"

namespace porous::dyn1 {

// Filtration coefficient A(rho) = (k/mu) rho p'(rho) for a process on the
// van der Waals gas (or the explicit power law), with its first two
// derivatives and the process observables p(rho), T(rho).
struct Coefficients {
    std::function<double(double)> A;
    std::function<double(double)> A1;
    std::function<double(double)> A2;
    std::function<double(double)> p;  // pressure along the process
    std::function<double(double)> T;  // temperature along the process
    bool has_observables = false;     // false for the raw power law
};

Coefficients coefficients(const ProcessSpec& process);

// Positivity of A on the whole density interval (0, 3) holds iff the process
// level clears a closed-form threshold:
//   Isentropic:  exp(3 sigma0 / (4n)) > (1/(4 nu)) (1+nu)^{1+nu} (2-nu)^{2-nu}
//                with nu = 1 + 2/n   (the report carries the exp value)
//   Isenthalpic: eta0 > 2 (n-2)^2 (2n+5) / (3 n (n+2))
//   PowerLaw:    q > 0
struct InvertibilityReport {
    bool ok = false;
    double value = 0.0;      // the quantity being compared
    double threshold = 0.0;  // the closed-form bound it must exceed
    double margin = 0.0;     // value - threshold
};

InvertibilityReport check_invertibility(const ProcessSpec& process);

// Constants of the finite-dimensional dynamics y1 = (C1 y0 + C2) / A(y0).
struct Dyn1Constants {
    double C1 = 1.0;
    double C2 = 0.0;
    double alpha0 = 0.0;   // phase shift of the x coordinate
    double rho_ref = 1.0;  // density at which G vanishes
};

// Potential G with G'(rho) = A(rho) / (C1 (C1 rho + C2)), tabulated on a
// working density interval.  Construction fails with PoleInInterval when
// C1 rho + C2 vanishes inside the interval and with NonMonotone when a dense
// sign scan of G' (1000 points) detects a sign change; otherwise the table
// carries a strict-monotonicity certificate and supports inversion.
class GFunction {
  public:
    GFunction(const ProcessSpec& process, const Dyn1Constants& consts,
              double rho_lo, double rho_hi, int scan_points = 1000);

    double rho_lo() const { return lo_; }
    double rho_hi() const { return hi_; }
    bool increasing() const { return increasing_; }
    double operator()(double rho) const;
    double derivative(double rho) const;

    // Solves G(rho) = target to |G - target| <= 1e-13 * max(1, |target|);
    // throws OutOfRange when target is outside [G(lo), G(hi)].
    double invert(double target) const;

    const Dyn1Constants& constants() const { return consts_; }

  private:
    Dyn1Constants consts_;
    double lo_, hi_;
    bool increasing_;
    std::shared_ptr<num::Antiderivative> table_;
};

double G_invert(const GFunction& G, double target);

// Sign scan of G' over a uniform grid; used both by GFunction construction
// and by threshold tests.
struct SignScan {
    bool one_sign = false;
    double change_location = 0.0;  // midpoint of the first flip interval
    int points = 0;
};

SignScan scan_gprime_sign(const ProcessSpec& process,
                          const Dyn1Constants& consts, double rho_lo,
                          double rho_hi, int points = 1000);

// Exact solution rho(t, x) = G^{-1}((x + alpha0)/C1 + t) on the strip where
// the inversion target stays inside the tabulated range.
SolutionField solve_first_order(const ProcessSpec& process,
                                const Dyn1Constants& consts, double rho_lo,
                                double rho_hi);

// Constraint F = y1 - (C1 y0 + C2)/A(y0) and evolution phi = A y2 + A' y1^2
// as jet-space functions with analytic first partials.
jets::JetFunction make_constraint(const ProcessSpec& process,
                                  const Dyn1Constants& consts);
jets::JetFunction make_evolution(const ProcessSpec& process);

// Thermodynamic phase regions along the flow.
enum class Region { Gas, Liquid, Condensation };
const char* region_name(Region r);

struct GridSpec {
    double t_lo = 0.0, t_hi = 1.0;
    int nt = 2;
    double x_lo = 0.0, x_hi = 1.0;
    int nx = 2;
};

struct PhaseMapPoint {
    double t = 0.0, x = 0.0;
    double rho = 0.0, p = 0.0, T = 0.0;
    Region region = Region::Gas;
    bool valid = false;
};

// Classifies every grid point of the flow: condensation where the specific
// volume falls strictly inside the coexistence interval (v1(T), v2(T)),
// liquid at or below v1, gas at or above v2.  Above the critical temperature
// the interval is empty and points split at v = 1.  Points are marked
// invalid when the field leaves its domain or T drops below the supported
// cutoff.  The van der Waals processes only; PowerLaw has no (p, T).
std::vector<PhaseMapPoint> phase_map(const ProcessSpec& process,
                                     const Dyn1Constants& consts,
                                     double rho_lo, double rho_hi,
                                     const GridSpec& grid);

}  // namespace porous::dyn1
