#include "porous/attractor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "porous/errors.hpp"
#include "porous/pde_fd.hpp"

namespace porous::attractor {

void AttractorParams::validate() const {
    if (!(q > 0.0)) throw DomainError("AttractorParams: require q > 0");
    if (!(c1 < 0.0) || !(c2 > 0.0))
        throw DomainError("AttractorParams: require c1 < 0 < c2");
}

double coeff_a(const AttractorParams& params, const jets::JetPoint& jet) {
    params.validate();
    if (jet.order() < 2) throw ArityMismatch("coeff_a: need (y0, y1, y2)");
    double y0 = jet.y[0], y1 = jet.y[1], y2 = jet.y[2];
    if (!(y0 > 0.0)) throw DomainError("coeff_a: y0 must be positive");
    double a = params.alpha, b1 = params.b1, q = params.q;
    double den = b1 * y1 * y1 - y0 * y2;
    double den_scale =
        std::max({std::fabs(b1 * y1 * y1), std::fabs(y0 * y2), 1.0});
    if (std::fabs(den) <= 1e-14 * den_scale)
        throw SingularDenominator("coeff_a: b1 y1^2 - y0 y2 vanishes");
    double num = (a * a - a * (b1 + 3.0) + 2.0) * y1 * y1 * y1 * y1 +
                 4.0 * (a - 1.0) * y0 * y1 * y1 * y2 +
                 2.0 * y0 * y0 * y2 * y2;
    return q * (a + b1) * std::pow(y0, a - 2.0) * num / den;
}

jets::JetFunction make_coeff_a(const AttractorParams& params) {
    return jets::JetFunction(
        2, [params](const jets::JetPoint& j) { return coeff_a(params, j); });
}

Psi psi_functions(const AttractorParams& params, const jets::JetPoint& jet) {
    params.validate();
    if (jet.order() < 2)
        throw ArityMismatch("psi_functions: need (y0, y1, y2)");
    double y0 = jet.y[0], y1 = jet.y[1], y2 = jet.y[2];
    if (!(y0 > 0.0)) throw DomainError("psi_functions: y0 must be positive");
    double a = params.alpha, q = params.q;
    Psi psi;
    psi.psi1 = q * a * std::pow(y0, a - 2.0) *
                   (y0 * y2 + (a - 1.0) * y1 * y1) +
               coeff_a(params, jet);
    psi.psi2 = 2.0 * q * a * y1 * std::pow(y0, a - 1.0);
    psi.psi3 = q * std::pow(y0, a);
    return psi;
}

std::optional<bool> attractor_test(const AttractorParams& params,
                                   const jets::JetPoint& jet) {
    try {
        Psi psi = psi_functions(params, jet);
        return psi.psi1 <= params.c1 && psi.psi3 >= params.c2;
    } catch (const SingularDenominator&) {
        return std::nullopt;
    }
}

DomainMask attractor_domain(const AttractorParams& params, double y2,
                            double y0_lo, double y0_hi, int ny0,
                            double y1_lo, double y1_hi, int ny1) {
    params.validate();
    if (!(y0_lo > 0.0) || !(y0_hi > y0_lo))
        throw DomainError("attractor_domain: need 0 < y0_lo < y0_hi");
    if (ny0 < 2 || ny1 < 2)
        throw DomainError("attractor_domain: need at least 2 points per axis");
    DomainMask mask;
    mask.y2 = y2;
    mask.y0.resize(ny0);
    mask.y1.resize(ny1);
    for (int i = 0; i < ny0; ++i)
        mask.y0[i] = y0_lo + (y0_hi - y0_lo) * i / double(ny0 - 1);
    for (int j = 0; j < ny1; ++j)
        mask.y1[j] = y1_lo + (y1_hi - y1_lo) * j / double(ny1 - 1);
    mask.code.resize(static_cast<std::size_t>(ny0) * ny1);
    for (int i = 0; i < ny0; ++i) {
        for (int j = 0; j < ny1; ++j) {
            jets::JetPoint jet{0.0, {mask.y0[i], mask.y1[j], y2}};
            auto r = attractor_test(params, jet);
            mask.code[static_cast<std::size_t>(i) * ny1 + j] =
                r ? (*r ? 1 : 0) : 2;
        }
    }
    return mask;
}

namespace {

struct ProfileJets {
    double worst_residual = 0.0;
    bool region_ok = true;
};

// Central-difference jets of the profile; residual F = y2 - b1 y1^2 / y0 and
// the region conditions evaluated at every interior node.
ProfileJets scan_profile(const AttractorParams& params,
                         const std::vector<double>& x,
                         const std::vector<double>& u) {
    ProfileJets out;
    double dx = x[1] - x[0];
    for (std::size_t i = 1; i + 1 < u.size(); ++i) {
        double y0 = u[i];
        double y1 = (u[i + 1] - u[i - 1]) / (2.0 * dx);
        double y2 = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (dx * dx);
        double F = y2 - params.b1 * y1 * y1 / y0;
        out.worst_residual = std::max(out.worst_residual, std::fabs(F));
        if (out.region_ok) {
            auto ok = attractor_test(params, {x[i], {y0, y1, y2}});
            if (!ok || !*ok) out.region_ok = false;
        }
    }
    return out;
}

}  // namespace

DecayResult decay_experiment(const AttractorParams& params,
                             const SolutionField& base,
                             const DecaySpec& spec) {
    params.validate();
    if (spec.outputs < 2)
        throw DomainError("decay_experiment: need at least 2 outputs");
    pde::Problem prob;
    prob.A = base.A;
    prob.bc = pde::DirichletFromField{};
    prob.field = &base;
    prob.field_t0 = 0.0;
    double lo = spec.x_lo, hi = spec.x_hi, delta = spec.delta;
    prob.initial = [&base, lo, hi, delta](double x) {
        auto v = base.rho(0.0, x);
        if (!v)
            throw OutOfRange("decay_experiment: base field undefined at t=0");
        return *v - delta * (x - lo) * (hi - x);
    };
    pde::MarchSpec ms;
    ms.x_lo = spec.x_lo;
    ms.x_hi = spec.x_hi;
    ms.cells = spec.cells;
    ms.t_end = spec.t_end;
    ms.safety = spec.safety;
    for (int k = 0; k < spec.outputs - 1; ++k)
        ms.snapshot_times.push_back(spec.t_end * k / double(spec.outputs - 1));
    pde::MarchResult res = pde::march(prob, ms);

    DecayResult out;
    out.region_exit_time = std::numeric_limits<double>::quiet_NaN();
    bool region_still_ok = true;
    for (std::size_t s = 0; s < res.profiles.size(); ++s) {
        ProfileJets pj = scan_profile(params, res.x, res.profiles[s]);
        out.times.push_back(res.times[s]);
        out.norms.push_back(pj.worst_residual);
        if (s == 0) out.region_ok_at_start = pj.region_ok;
        if (region_still_ok && !pj.region_ok) {
            out.region_exit_time = res.times[s];
            region_still_ok = false;
        }
    }
    out.ratio_end = out.norms.back() / out.norms.front();
    out.monotone_within_5pct = true;
    for (std::size_t i = 0; i + 1 < out.norms.size(); ++i)
        if (out.norms[i + 1] > 1.05 * out.norms[i])
            out.monotone_within_5pct = false;
    return out;
}

}  // namespace porous::attractor
