#pragma once

#include <stdexcept>
#include <string>

namespace porous {

// Bad inputs: parameters outside the admissible set for the requested
// operation.  Callers that validated their inputs never see this.
struct DomainError : std::invalid_argument {
    explicit DomainError(const std::string& msg) : std::invalid_argument(msg) {}
};

// An iterative solver exhausted its budget without meeting its tolerance.
struct NoConvergence : std::runtime_error {
    explicit NoConvergence(const std::string& msg) : std::runtime_error(msg) {}
};

// The integrand C1*rho + C2 vanishes inside the requested density interval,
// so the pressure-potential integral does not exist there.
struct PoleInInterval : std::runtime_error {
    explicit PoleInInterval(const std::string& msg) : std::runtime_error(msg) {}
};

// G' changes sign on the working interval; G has no single-valued inverse.
struct NonMonotone : std::runtime_error {
    explicit NonMonotone(const std::string& msg) : std::runtime_error(msg) {}
};

// A requested evaluation point falls outside the tabulated/certified range.
struct OutOfRange : std::runtime_error {
    explicit OutOfRange(const std::string& msg) : std::runtime_error(msg) {}
};

// The closed-form coefficient a(y0,y1,y2) has a vanishing denominator at the
// requested jet.
struct SingularDenominator : std::runtime_error {
    explicit SingularDenominator(const std::string& msg) : std::runtime_error(msg) {}
};

// The explicit scheme left the stable regime (CFL breach or a max-principle
// violation detected by the runtime monitor).
struct StabilityViolation : std::runtime_error {
    explicit StabilityViolation(const std::string& msg) : std::runtime_error(msg) {}
};

// The diffusivity A(rho) is not positive somewhere on the evolved profile,
// so the equation is not parabolic there and explicit marching is meaningless.
struct NonParabolic : std::runtime_error {
    explicit NonParabolic(const std::string& msg) : std::runtime_error(msg) {}
};

// A jet-space operation received a jet shorter than the operation's arity.
struct ArityMismatch : std::invalid_argument {
    explicit ArityMismatch(const std::string& msg) : std::invalid_argument(msg) {}
};

}  // namespace porous
