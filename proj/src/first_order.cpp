#include "porous/first_order.hpp"

#include <cmath>
#include <string>

#include "porous/errors.hpp"

namespace porous {

void ProcessSpec::validate() const {
    gas.validate();
    if (kind == ProcessKind::PowerLaw && !(q > 0.0))
        throw DomainError("ProcessSpec: power law requires q > 0");
}

}  // namespace porous

namespace porous::dyn1 {

namespace {

void require_density(double rho) {
    if (!(rho > 0.0) || !(rho < 3.0))
        throw DomainError("density must lie in (0, 3)");
}

Coefficients isentropic_coefficients(const ProcessSpec& sp) {
    double n = sp.gas.n, km = sp.gas.k / sp.gas.mu;
    double nu = 1.0 + 2.0 / n;
    double E = std::exp(3.0 * sp.sigma0 / (4.0 * n));
    auto g = [nu](double r) {
        return std::pow(r, nu) * std::pow(3.0 - r, -1.0 - nu);
    };
    auto g1 = [nu](double r) {
        return std::pow(r, nu - 1.0) * std::pow(3.0 - r, -2.0 - nu) *
               (3.0 * nu + r);
    };
    auto g2 = [nu](double r) {
        return (nu - 1.0) * std::pow(r, nu - 2.0) *
                   std::pow(3.0 - r, -2.0 - nu) * (3.0 * nu + r) +
               (2.0 + nu) * std::pow(r, nu - 1.0) *
                   std::pow(3.0 - r, -3.0 - nu) * (3.0 * nu + r) +
               std::pow(r, nu - 1.0) * std::pow(3.0 - r, -2.0 - nu);
    };
    Coefficients c;
    c.A = [km, E, nu, g](double r) {
        require_density(r);
        return km * (-6.0 * r * r + 24.0 * E * nu * g(r));
    };
    c.A1 = [km, E, nu, g1](double r) {
        require_density(r);
        return km * (-12.0 * r + 24.0 * E * nu * g1(r));
    };
    c.A2 = [km, E, nu, g2](double r) {
        require_density(r);
        return km * (-12.0 + 24.0 * E * nu * g2(r));
    };
    c.p = [E, n](double r) {
        require_density(r);
        return 8.0 * E * std::pow(3.0 / r - 1.0, -1.0 - 2.0 / n) -
               3.0 * r * r;
    };
    c.T = [E, n](double r) {
        require_density(r);
        return E * std::pow(3.0 / r - 1.0, -2.0 / n);
    };
    c.has_observables = true;
    return c;
}

Coefficients isenthalpic_coefficients(const ProcessSpec& sp) {
    double n = sp.gas.n, km = sp.gas.k / sp.gas.mu, h0 = sp.eta0;
    auto D = [n](double r) { return 6.0 + 3.0 * n - n * r; };
    // W = rho * P with P the cubic from eliminating T at constant enthalpy.
    auto W = [n, h0](double r) {
        return 3.0 * h0 * (n + 2.0) * r +
               (6.0 - 3.0 * n) * (6.0 + 3.0 * n) * r * r +
               6.0 * n * (n + 1.0) * r * r * r - n * n * r * r * r * r;
    };
    auto W1 = [n, h0](double r) {
        return 3.0 * h0 * (n + 2.0) +
               2.0 * (6.0 - 3.0 * n) * (6.0 + 3.0 * n) * r +
               18.0 * n * (n + 1.0) * r * r - 4.0 * n * n * r * r * r;
    };
    auto W2 = [n](double r) {
        return 2.0 * (6.0 - 3.0 * n) * (6.0 + 3.0 * n) +
               36.0 * n * (n + 1.0) * r - 12.0 * n * n * r * r;
    };
    Coefficients c;
    c.A = [km, D, W](double r) {
        require_density(r);
        double d = D(r);
        return 6.0 * km * W(r) / (d * d);
    };
    c.A1 = [km, n, D, W, W1](double r) {
        require_density(r);
        double d = D(r);
        return 6.0 * km * (W1(r) / (d * d) + 2.0 * n * W(r) / (d * d * d));
    };
    c.A2 = [km, n, D, W, W1, W2](double r) {
        require_density(r);
        double d = D(r);
        return 6.0 * km *
               (W2(r) / (d * d) + 4.0 * n * W1(r) / (d * d * d) +
                6.0 * n * n * W(r) / (d * d * d * d));
    };
    c.p = [n, h0, D](double r) {
        require_density(r);
        return 3.0 * r * (n * r * r + (6.0 - 3.0 * n) * r + 2.0 * h0) / D(r);
    };
    c.T = [n, h0, D](double r) {
        require_density(r);
        return 3.0 * (h0 + 6.0 * r) * (3.0 - r) / (4.0 * D(r));
    };
    c.has_observables = true;
    return c;
}

Coefficients power_law_coefficients(const ProcessSpec& sp) {
    double q = sp.q, a = sp.alpha;
    Coefficients c;
    c.A = [q, a](double r) { return q * std::pow(r, a); };
    c.A1 = [q, a](double r) { return q * a * std::pow(r, a - 1.0); };
    c.A2 = [q, a](double r) {
        return q * a * (a - 1.0) * std::pow(r, a - 2.0);
    };
    c.has_observables = false;
    return c;
}

}  // namespace

Coefficients coefficients(const ProcessSpec& process) {
    process.validate();
    switch (process.kind) {
        case ProcessKind::Isentropic: return isentropic_coefficients(process);
        case ProcessKind::Isenthalpic:
            return isenthalpic_coefficients(process);
        case ProcessKind::PowerLaw: return power_law_coefficients(process);
    }
    throw DomainError("coefficients: unknown process kind");
}

InvertibilityReport check_invertibility(const ProcessSpec& process) {
    process.validate();
    InvertibilityReport rep;
    double n = process.gas.n;
    switch (process.kind) {
        case ProcessKind::Isentropic: {
            double nu = 1.0 + 2.0 / n;
            rep.value = std::exp(3.0 * process.sigma0 / (4.0 * n));
            rep.threshold = (1.0 / (4.0 * nu)) *
                            std::pow(1.0 + nu, 1.0 + nu) *
                            std::pow(2.0 - nu, 2.0 - nu);
            break;
        }
        case ProcessKind::Isenthalpic:
            rep.value = process.eta0;
            rep.threshold = 2.0 * (n - 2.0) * (n - 2.0) * (2.0 * n + 5.0) /
                            (3.0 * n * (n + 2.0));
            break;
        case ProcessKind::PowerLaw:
            rep.value = process.q;
            rep.threshold = 0.0;
            break;
    }
    rep.margin = rep.value - rep.threshold;
    rep.ok = rep.margin > 0.0;
    return rep;
}

SignScan scan_gprime_sign(const ProcessSpec& process,
                          const Dyn1Constants& consts, double rho_lo,
                          double rho_hi, int points) {
    if (points < 2) throw DomainError("scan_gprime_sign: points >= 2");
    if (consts.C1 == 0.0) throw DomainError("scan_gprime_sign: C1 must be nonzero");
    Coefficients c = coefficients(process);
    auto gp = [&](double r) {
        return c.A(r) / (consts.C1 * (consts.C1 * r + consts.C2));
    };
    SignScan scan;
    scan.points = points;
    scan.one_sign = true;
    double prev = gp(rho_lo);
    for (int i = 1; i < points; ++i) {
        double r = rho_lo + (rho_hi - rho_lo) * i / double(points - 1);
        double cur = gp(r);
        if (std::signbit(cur) != std::signbit(prev) || cur == 0.0) {
            scan.one_sign = false;
            double r_prev = rho_lo + (rho_hi - rho_lo) * (i - 1) /
                                         double(points - 1);
            scan.change_location = 0.5 * (r_prev + r);
            return scan;
        }
        prev = cur;
    }
    return scan;
}

GFunction::GFunction(const ProcessSpec& process, const Dyn1Constants& consts,
                     double rho_lo, double rho_hi, int scan_points)
    : consts_(consts), lo_(rho_lo), hi_(rho_hi) {
    if (!(rho_hi > rho_lo))
        throw DomainError("GFunction: empty density interval");
    if (consts.C1 == 0.0) throw DomainError("GFunction: C1 must be nonzero");
    double pole = -consts.C2 / consts.C1;
    if (pole >= rho_lo && pole <= rho_hi)
        throw PoleInInterval("GFunction: C1 rho + C2 vanishes at rho = " +
                             std::to_string(pole));
    SignScan scan = scan_gprime_sign(process, consts, rho_lo, rho_hi,
                                     scan_points);
    if (!scan.one_sign)
        throw NonMonotone("GFunction: G' changes sign near rho = " +
                          std::to_string(scan.change_location));
    Coefficients c = coefficients(process);
    double C1 = consts.C1, C2 = consts.C2;
    auto A = c.A;
    auto integrand = [A, C1, C2](double r) {
        return A(r) / (C1 * (C1 * r + C2));
    };
    double base = consts.rho_ref;
    if (base < rho_lo || base > rho_hi)
        throw DomainError("GFunction: rho_ref outside the density interval");
    table_ = std::make_shared<num::Antiderivative>(integrand, rho_lo, rho_hi,
                                                   base, 256, 2e-13);
    increasing_ = (*table_)(rho_hi) > (*table_)(rho_lo);
}

double GFunction::operator()(double rho) const { return (*table_)(rho); }

double GFunction::derivative(double rho) const {
    return table_->derivative(rho);
}

double GFunction::invert(double target) const { return table_->invert(target); }

double G_invert(const GFunction& G, double target) { return G.invert(target); }

SolutionField solve_first_order(const ProcessSpec& process,
                                const Dyn1Constants& consts, double rho_lo,
                                double rho_hi) {
    auto G = std::make_shared<GFunction>(process, consts, rho_lo, rho_hi);
    Coefficients c = coefficients(process);
    SolutionField f;
    f.A = c.A;
    f.A1 = c.A1;
    double C1 = consts.C1, a0 = consts.alpha0;
    f.rho = [G, C1, a0](double t, double x) -> std::optional<double> {
        double target = (x + a0) / C1 + t;
        try {
            return G->invert(target);
        } catch (const OutOfRange&) {
            return std::nullopt;
        }
    };
    f.note = "level flow of the potential G";
    return f;
}

jets::JetFunction make_constraint(const ProcessSpec& process,
                                  const Dyn1Constants& consts) {
    Coefficients c = coefficients(process);
    auto A = c.A;
    auto A1 = c.A1;
    double C1 = consts.C1, C2 = consts.C2;
    auto val = [A, C1, C2](const jets::JetPoint& j) {
        return j.y[1] - (C1 * j.y[0] + C2) / A(j.y[0]);
    };
    auto dy = [A, A1, C1, C2](const jets::JetPoint& j, int k) -> double {
        if (k == 1) return 1.0;
        if (k != 0) return 0.0;
        double Av = A(j.y[0]);
        double N = C1 * j.y[0] + C2;
        return -(C1 / Av - N * A1(j.y[0]) / (Av * Av));
    };
    auto dx = [](const jets::JetPoint&) { return 0.0; };
    return jets::JetFunction(1, val, dy, dx);
}

jets::JetFunction make_evolution(const ProcessSpec& process) {
    Coefficients c = coefficients(process);
    auto A = c.A;
    auto A1 = c.A1;
    auto A2 = c.A2;
    auto val = [A, A1](const jets::JetPoint& j) {
        return A(j.y[0]) * j.y[2] + A1(j.y[0]) * j.y[1] * j.y[1];
    };
    auto dy = [A, A1, A2](const jets::JetPoint& j, int k) -> double {
        switch (k) {
            case 0:
                return A1(j.y[0]) * j.y[2] + A2(j.y[0]) * j.y[1] * j.y[1];
            case 1: return 2.0 * A1(j.y[0]) * j.y[1];
            case 2: return A(j.y[0]);
            default: return 0.0;
        }
    };
    auto dx = [](const jets::JetPoint&) { return 0.0; };
    return jets::JetFunction(2, val, dy, dx);
}

const char* region_name(Region r) {
    switch (r) {
        case Region::Gas: return "gas";
        case Region::Liquid: return "liquid";
        case Region::Condensation: return "condensation";
    }
    return "unknown";
}

std::vector<PhaseMapPoint> phase_map(const ProcessSpec& process,
                                     const Dyn1Constants& consts,
                                     double rho_lo, double rho_hi,
                                     const GridSpec& grid) {
    if (process.kind == ProcessKind::PowerLaw)
        throw DomainError("phase_map: requires a van der Waals process");
    if (grid.nt < 1 || grid.nx < 1)
        throw DomainError("phase_map: grid needs nt >= 1, nx >= 1");
    SolutionField field = solve_first_order(process, consts, rho_lo, rho_hi);
    Coefficients c = coefficients(process);
    thermo::CoexistenceOptions copts;
    thermo::CoexistenceMarcher marcher(process.gas, copts);
    std::vector<PhaseMapPoint> out;
    out.reserve(static_cast<std::size_t>(grid.nt) * grid.nx);
    double nan = std::numeric_limits<double>::quiet_NaN();
    for (int it = 0; it < grid.nt; ++it) {
        double t = (grid.nt == 1) ? grid.t_lo
                                  : grid.t_lo + (grid.t_hi - grid.t_lo) * it /
                                                    double(grid.nt - 1);
        for (int ix = 0; ix < grid.nx; ++ix) {
            double x = (grid.nx == 1)
                           ? grid.x_lo
                           : grid.x_lo + (grid.x_hi - grid.x_lo) * ix /
                                             double(grid.nx - 1);
            PhaseMapPoint pt;
            pt.t = t;
            pt.x = x;
            auto r = field.rho(t, x);
            if (!r) {
                pt.rho = pt.p = pt.T = nan;
                out.push_back(pt);
                continue;
            }
            pt.rho = *r;
            pt.p = c.p(*r);
            pt.T = c.T(*r);
            double v = 1.0 / *r;
            if (pt.T >= 1.0) {
                // Supercritical: no coexistence interval, never condensation.
                pt.region = (v < 1.0) ? Region::Liquid : Region::Gas;
                pt.valid = true;
            } else if (pt.T < copts.T_cutoff) {
                pt.valid = false;  // below the supported classification range
            } else {
                auto cx = marcher.at(pt.T);
                if (v > cx.v1 && v < cx.v2)
                    pt.region = Region::Condensation;
                else if (v <= cx.v1)
                    pt.region = Region::Liquid;
                else
                    pt.region = Region::Gas;
                pt.valid = true;
            }
            out.push_back(pt);
        }
    }
    return out;
}

}  // namespace porous::dyn1
