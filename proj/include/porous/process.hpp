#pragma once

#include "porous/thermo.hpp"

namespace porous {

// Thermodynamic constraint singling out a one-parameter family of states,
// so that pressure becomes a function of density alone and the filtration
// coefficient A(rho) is well defined.
//   Isentropic:  sigma-hat held at sigma0
//   Isenthalpic: specific enthalpy held at eta0
//   PowerLaw:    A(rho) = q * rho^alpha given directly
enum class ProcessKind { Isentropic, Isenthalpic, PowerLaw };

struct ProcessSpec {
    ProcessKind kind = ProcessKind::PowerLaw;
    thermo::GasSpec gas;
    double sigma0 = 0.0;  // Isentropic level
    double eta0 = 0.0;    // Isenthalpic level
    double q = 1.0;       // PowerLaw coefficient
    double alpha = 1.0;   // PowerLaw exponent

    void validate() const;  // throws DomainError
};

}  // namespace porous
