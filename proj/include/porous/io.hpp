#pragma once

#include <string>
#include <vector>

#include "porous/attractor.hpp"
#include "porous/first_order.hpp"
#include "porous/thermo.hpp"

namespace porous::io {

// Shortest round-trippable decimal form (printf %.17g).
std::string g17(double v);

// Writes content verbatim; every writer in this module uses LF line endings
// and a trailing newline so reruns are byte-identical.
void write_text(const std::string& path, const std::string& content);

// Header T,p,v1,v2
void write_coexistence_csv(const std::string& path,
                           const std::vector<thermo::CoexistencePoint>& rows);

// Header t,x,rho,p,T,phase,valid
void write_phase_map_csv(const std::string& path,
                         const std::vector<dyn1::PhaseMapPoint>& rows);

// Header x,rho
void write_profile_csv(const std::string& path, const std::vector<double>& x,
                       const std::vector<double>& rho);

// Header y0,y1,in_domain (row-major over the mask grid)
void write_mask_csv(const std::string& path,
                    const attractor::DomainMask& mask);

// Header t,residual_norm
void write_decay_csv(const std::string& path, const std::vector<double>& t,
                     const std::vector<double>& norms);

}  // namespace porous::io
