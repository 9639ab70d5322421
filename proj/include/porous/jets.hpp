#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace porous::jets {

// Point of the jet space of plane curves: base coordinate x and derivative
// coordinates y[0..k] (y[j] plays the role of the j-th derivative).
struct JetPoint {
    double x = 0.0;
    std::vector<double> y;

    int order() const { return static_cast<int>(y.size()) - 1; }
};

// Scalar function on jet space depending on (x, y0..y_arity).  Partial
// derivatives are analytic when supplied, otherwise central finite
// differences with step 1e-6 * max(1, |coordinate|).
class JetFunction {
  public:
    using Value = std::function<double(const JetPoint&)>;
    using PartialY = std::function<double(const JetPoint&, int)>;

    JetFunction(int arity, Value value);
    JetFunction(int arity, Value value, PartialY dy, Value dx);

    int arity() const { return arity_; }
    double operator()(const JetPoint& jet) const;
    double partial_y(const JetPoint& jet, int j) const;
    double partial_x(const JetPoint& jet) const;

  private:
    void require(const JetPoint& jet) const;

    int arity_;
    Value value_;
    PartialY dy_;   // may be null
    Value dx_;      // may be null
};

// Total derivative along x: (Df)(x, y0..y_{m+1}) = f_x + sum y_{j+1} f_{y_j}.
// The value is exact given f's partials; the result's own partials fall back
// to finite differences.
JetFunction total_derivative(const JetFunction& f);

// Components (D^0 phi, ..., D^k phi) evaluated at one jet; k <= 4.
std::vector<double> shuffle_apply(const JetFunction& phi, const JetPoint& jet,
                                  int k);

struct BracketValue {
    double value = 0.0;      // the bracket itself
    double magnitude = 0.0;  // sum of |term| over all contributions
};

// Poisson-Lie bracket [phi, F] = sum_j (phi_{y_j} D^j F - F_{y_j} D^j phi)
// at a single jet.  Throws ArityMismatch when the jet is too short for the
// required prolongation.
BracketValue poisson_lie_bracket(const JetFunction& phi, const JetFunction& F,
                                 const JetPoint& jet);

struct VerifyReport {
    bool pass = false;
    double max_residual = 0.0;  // scaled by max(1, term magnitude)
    double threshold = 0.0;
    JetPoint worst;
    int samples = 0;
};

// Checks the invariance identity [phi, F] = a F + b DF on a sample set.
// a and b may be null (treated as zero).  The a*F term is skipped when
// |F| < 1e-12 * max(1, |y2|) since the identity's right side vanishes with F
// and a itself may be singular exactly on the surface F = 0.
VerifyReport verify_dynamics(const JetFunction& phi, const JetFunction& F,
                             const JetFunction* a, const JetFunction* b,
                             const std::vector<JetPoint>& samples,
                             double threshold = 1e-7);

// Sample jets on the surface of the second-order dynamics y2 = b1 y1^2 / y0,
// prolonged to order 4.  y0 log-uniform on [0.1, 10], y1 uniform on [-5, 5].
std::vector<JetPoint> sample_surface_second_order(double b1, int count,
                                                  std::uint64_t seed);

// Sample jets on the surface of the first-order dynamics y1 = f(y0) with
// f = (C1 y0 + C2) / A(y0), prolonged to order 3.  y0 log-uniform on
// [y0_lo, y0_hi] (clipped to [0.1, 10]).
std::vector<JetPoint> sample_surface_first_order(
    const std::function<double(double)>& A,
    const std::function<double(double)>& A1,
    const std::function<double(double)>& A2, double C1, double C2,
    double y0_lo, double y0_hi, int count, std::uint64_t seed);

}  // namespace porous::jets
