#pragma once

#include <optional>
#include <vector>

#include "porous/field.hpp"
#include "porous/jets.hpp"

namespace porous::attractor {

// Parameters of the quadratic-form decay test for A(rho) = q rho^alpha with
// closure coefficient b1.  The test certifies decay on jets where
// psi1 <= c1 < 0 and psi3 >= c2 > 0.
struct AttractorParams {
    double q = 1.0;
    double alpha = 5.0 / 3.0;  // 2/n + 1 at n = 3
    double b1 = -2.0 / 3.0;    // wave-branch closure -alpha + 1
    double c1 = -1.0;
    double c2 = 1.0;

    void validate() const;  // q > 0, c1 < 0 < c2, y-independent checks
};

// Closed-form coefficient of the invariance identity on the blow-up/wave
// closures:
//   a = q (alpha+b1) y0^{alpha-2}
//       [ (alpha^2 - alpha (b1+3) + 2) y1^4 + 4 (alpha-1) y0 y1^2 y2
//         + 2 y0^2 y2^2 ] / (b1 y1^2 - y0 y2)
// Throws SingularDenominator when b1 y1^2 - y0 y2 vanishes (in particular on
// the closure surface itself, where the identity degenerates to 0 = 0).
double coeff_a(const AttractorParams& params, const jets::JetPoint& jet);
jets::JetFunction make_coeff_a(const AttractorParams& params);

struct Psi {
    double psi1 = 0.0;
    double psi2 = 0.0;
    double psi3 = 0.0;
};

// psi1 = q alpha y0^{alpha-2} (y0 y2 + (alpha-1) y1^2) + a
// psi2 = 2 q alpha y1 y0^{alpha-1}
// psi3 = q y0^alpha
// Propagates SingularDenominator from the a coefficient.
Psi psi_functions(const AttractorParams& params, const jets::JetPoint& jet);

// True/false when the sign conditions decide; nullopt when the a coefficient
// is singular at the jet and the test is undecidable there.
std::optional<bool> attractor_test(const AttractorParams& params,
                                   const jets::JetPoint& jet);

// Rectangular scan of the (y0, y1) plane at fixed y2.
// code: 1 inside the decay region, 0 outside, 2 undecidable.
struct DomainMask {
    double y2 = 0.0;
    std::vector<double> y0;  // axis values
    std::vector<double> y1;
    std::vector<int> code;   // row-major, index = iy0 * y1.size() + iy1
};

DomainMask attractor_domain(const AttractorParams& params, double y2,
                            double y0_lo, double y0_hi, int ny0,
                            double y1_lo, double y1_hi, int ny1);

struct DecaySpec {
    double x_lo = 0.0, x_hi = 2.0;
    int cells = 256;
    double t_end = 2.0;
    int outputs = 21;     // norm samples, including t = 0 and t = t_end
    double delta = 1e-2;  // amplitude of the parabolic dip perturbation
    double safety = 0.9;
};

struct DecayResult {
    std::vector<double> times;
    std::vector<double> norms;     // sup |F[u]| over interior nodes
    double ratio_end = 0.0;        // norms.back() / norms.front()
    bool region_ok_at_start = false;
    double region_exit_time = 0.0;  // NaN when the region holds throughout
    bool monotone_within_5pct = false;
};

// Perturbs the base solution by -delta (x - x_lo)(x_hi - x) (vanishing at
// the walls, uniform positive curvature, so the decay-region hypotheses are
// satisfiable at t = 0), marches the full nonlinear equation with Dirichlet
// data pinned to the base solution, and tracks the constraint residual
// F[u] = u_xx - b1 u_x^2 / u together with the region conditions.
DecayResult decay_experiment(const AttractorParams& params,
                             const SolutionField& base, const DecaySpec& spec);

}  // namespace porous::attractor
