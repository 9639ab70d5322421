#include "porous/second_order.hpp"

#include <cmath>
#include <string>

#include "porous/errors.hpp"

namespace porous::dyn2 {

namespace {

bool near(double a, double b, double tol) {
    return std::fabs(a - b) <= tol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

}  // namespace

double branch_b1(Branch branch, double alpha) {
    switch (branch) {
        case Branch::Trivial: return -alpha;
        case Branch::Wave: return -alpha + 1.0;
        case Branch::Blowup: return -0.5 * alpha + 1.0;
    }
    throw DomainError("branch_b1: unknown branch");
}

std::optional<Branch> classify_branch(double alpha, double b1, double tol) {
    for (Branch br : {Branch::Trivial, Branch::Wave, Branch::Blowup})
        if (near(b1, branch_b1(br, alpha), tol)) return br;
    return std::nullopt;
}

void Dyn2Spec::validate() const {
    if (!(q > 0.0)) throw DomainError("Dyn2Spec: require q > 0");
    if (alpha == 0.0 || alpha == -2.0)
        throw DomainError("Dyn2Spec: alpha in {0, -2} is degenerate");
    if (beta != -1.0) throw DomainError("Dyn2Spec: beta must be -1");
}

PowerLaw power_law_from_process(const ProcessSpec& process) {
    process.validate();
    const auto& g = process.gas;
    switch (process.kind) {
        case ProcessKind::Isenthalpic:
            if (!(process.eta0 > 0.0))
                throw DomainError("power_law_from_process: require eta0 > 0");
            return {2.0 * process.eta0 * g.k / (g.mu * (g.n + 2.0)), 1.0};
        case ProcessKind::Isentropic: {
            double alpha = 2.0 / g.n + 1.0;
            double q = (g.R * g.k / g.mu) * alpha *
                       std::exp(2.0 * process.sigma0 / (g.R * g.n));
            return {q, alpha};
        }
        case ProcessKind::PowerLaw:
            return {process.q, process.alpha};
    }
    throw DomainError("power_law_from_process: unknown process kind");
}

double dynamics_rhs(const Dyn2Spec& spec, double y0, double y1) {
    spec.validate();
    if (spec.is_trivial())
        throw DomainError(
            "dynamics_rhs: trivial branch b1 = -alpha, dynamics reduce to a "
            "constant-flux family and are not solved here");
    if (y0 == 0.0) throw DomainError("dynamics_rhs: y0 must be nonzero");
    return spec.b1() * y1 * y1 / y0;
}

jets::JetFunction make_constraint(const Dyn2Spec& spec) {
    double b1 = spec.b1();
    auto val = [b1](const jets::JetPoint& j) {
        return j.y[2] - b1 * j.y[1] * j.y[1] / j.y[0];
    };
    auto dy = [b1](const jets::JetPoint& j, int k) -> double {
        switch (k) {
            case 0: return b1 * j.y[1] * j.y[1] / (j.y[0] * j.y[0]);
            case 1: return -2.0 * b1 * j.y[1] / j.y[0];
            case 2: return 1.0;
            default: return 0.0;
        }
    };
    auto dx = [](const jets::JetPoint&) { return 0.0; };
    return jets::JetFunction(2, val, dy, dx);
}

jets::JetFunction make_evolution(double q, double alpha) {
    auto A = [q, alpha](double r) { return q * std::pow(r, alpha); };
    auto A1 = [q, alpha](double r) {
        return q * alpha * std::pow(r, alpha - 1.0);
    };
    auto A2 = [q, alpha](double r) {
        return q * alpha * (alpha - 1.0) * std::pow(r, alpha - 2.0);
    };
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

Integrals lie_bianchi_integrals(const Dyn2Spec& spec,
                                const jets::JetPoint& jet) {
    spec.validate();
    if (spec.branch != Branch::Blowup)
        throw DomainError(
            "lie_bianchi_integrals: integrals exist on the blow-up branch "
            "b1 = -alpha/2 + 1 only");
    if (jet.order() < 1)
        throw ArityMismatch("lie_bianchi_integrals: need (x, y0, y1)");
    double y0 = jet.y[0], y1 = jet.y[1];
    if (y1 == 0.0)
        throw DomainError("lie_bianchi_integrals: y1 must be nonzero");
    double a = spec.alpha;
    Integrals out;
    out.J1 = -jet.x + 2.0 * y0 / (a * y1);
    out.J2 = 2.0 * std::pow(y0, 2.0 - a) /
             (spec.q * a * (a + 2.0) * y1 * y1);
    return out;
}

SolutionField blowup_solution(const Dyn2Spec& spec) {
    spec.validate();
    if (spec.branch != Branch::Blowup)
        throw DomainError("blowup_solution: spec must use the Blowup branch");
    double q = spec.q, a = spec.alpha, C1 = spec.C1, C2 = spec.C2;
    SolutionField f;
    f.A = [q, a](double r) { return q * std::pow(r, a); };
    f.A1 = [q, a](double r) { return q * a * std::pow(r, a - 1.0); };
    f.rho = [q, a, C1, C2](double t, double x) -> std::optional<double> {
        double num = a * (x + C1) * (x + C1);
        double den = 2.0 * q * (a + 2.0) * (C2 - t);
        if (den == 0.0) return std::nullopt;
        double radicand = num / den;
        if (!(radicand > 0.0)) return std::nullopt;
        return std::pow(radicand, 1.0 / a);
    };
    if (a > 0.0) {
        // Positive alpha: density is finite for t < C2 and blows up as
        // t -> C2 from below.
        f.t_hi = C2;
        f.note = "finite-time blow-up at t = C2";
    } else {
        // Negative alpha: valid for t > C2, with a singular line x = -C1.
        f.t_lo = C2;
        f.singular_x = -C1;
        f.note = "density diverges on the line x = -C1";
    }
    return f;
}

SolutionField travelling_wave_solution(const Dyn2Spec& spec) {
    spec.validate();
    if (spec.branch != Branch::Wave)
        throw DomainError(
            "travelling_wave_solution: spec must use the Wave branch");
    double q = spec.q, a = spec.alpha, C1 = spec.C1, C2 = spec.C2;
    SolutionField f;
    f.A = [q, a](double r) { return q * std::pow(r, a); };
    f.A1 = [q, a](double r) { return q * a * std::pow(r, a - 1.0); };
    f.rho = [q, a, C1, C2](double t, double x) -> std::optional<double> {
        double arg = C1 * C1 * a * q * t + C1 * a * x + C2 * a;
        if (!(arg > 0.0)) return std::nullopt;
        return std::pow(arg, 1.0 / a);
    };
    f.note = "travelling wave: rho(t, x) = rho(0, x + C1 q t)";
    return f;
}

double ode_seed_curve(const Dyn2Spec& spec, double x) {
    spec.validate();
    double arg = spec.alpha * (spec.C1 * x + spec.C2);
    if (!(arg > 0.0))
        throw DomainError("ode_seed_curve: argument must be positive");
    return std::pow(arg, 1.0 / spec.alpha);
}

}  // namespace porous::dyn2
