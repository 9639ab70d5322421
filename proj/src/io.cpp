#include "porous/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace porous::io {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_coexistence_csv(const std::string& path,
                           const std::vector<thermo::CoexistencePoint>& rows) {
    std::string s = "T,p,v1,v2\n";
    for (const auto& r : rows)
        s += g17(r.T) + "," + g17(r.p) + "," + g17(r.v1) + "," + g17(r.v2) +
             "\n";
    write_text(path, s);
}

void write_phase_map_csv(const std::string& path,
                         const std::vector<dyn1::PhaseMapPoint>& rows) {
    std::string s = "t,x,rho,p,T,phase,valid\n";
    for (const auto& r : rows) {
        s += g17(r.t) + "," + g17(r.x) + "," + g17(r.rho) + "," + g17(r.p) +
             "," + g17(r.T) + ",";
        s += r.valid ? dyn1::region_name(r.region) : "";
        s += r.valid ? ",1\n" : ",0\n";
    }
    write_text(path, s);
}

void write_profile_csv(const std::string& path, const std::vector<double>& x,
                       const std::vector<double>& rho) {
    if (x.size() != rho.size())
        throw std::runtime_error("write_profile_csv: length mismatch");
    std::string s = "x,rho\n";
    for (std::size_t i = 0; i < x.size(); ++i)
        s += g17(x[i]) + "," + g17(rho[i]) + "\n";
    write_text(path, s);
}

void write_mask_csv(const std::string& path,
                    const attractor::DomainMask& mask) {
    std::string s = "y0,y1,in_domain\n";
    for (std::size_t i = 0; i < mask.y0.size(); ++i)
        for (std::size_t j = 0; j < mask.y1.size(); ++j)
            s += g17(mask.y0[i]) + "," + g17(mask.y1[j]) + "," +
                 std::to_string(mask.code[i * mask.y1.size() + j]) + "\n";
    write_text(path, s);
}

void write_decay_csv(const std::string& path, const std::vector<double>& t,
                     const std::vector<double>& norms) {
    if (t.size() != norms.size())
        throw std::runtime_error("write_decay_csv: length mismatch");
    std::string s = "t,residual_norm\n";
    for (std::size_t i = 0; i < t.size(); ++i)
        s += g17(t[i]) + "," + g17(norms[i]) + "\n";
    write_text(path, s);
}

}  // namespace porous::io
