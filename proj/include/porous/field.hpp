#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>

namespace porous {

// Exact solution of the filtration equation rho_t = (A(rho) rho_x)_x + lower
// order terms, packaged with its diffusivity.  Evaluation returns nullopt
// outside the formula's domain of validity; it never extrapolates.
struct SolutionField {
    std::function<std::optional<double>(double t, double x)> rho;
    std::function<double(double)> A;   // diffusivity as a function of rho
    std::function<double(double)> A1;  // dA/drho

    double t_lo = -std::numeric_limits<double>::infinity();
    double t_hi = std::numeric_limits<double>::infinity();

    // Set when the field has a singular line x = singular_x (density grows
    // without bound approaching it).
    double singular_x = std::numeric_limits<double>::quiet_NaN();
    std::string note;

    bool has_singular_line() const { return std::isfinite(singular_x); }
};

}  // namespace porous
