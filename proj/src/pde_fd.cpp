#include "porous/pde_fd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "porous/errors.hpp"
#include "porous/numerics.hpp"

namespace porous::pde {

namespace {

double field_at(const SolutionField& f, double t, double x) {
    auto v = f.rho(t, x);
    if (!v)
        throw OutOfRange("field evaluation left the domain at t = " +
                         std::to_string(t) + ", x = " + std::to_string(x));
    return *v;
}

}  // namespace

MarchResult march(const Problem& problem, const MarchSpec& spec) {
    if (spec.cells < 4) throw DomainError("march: need at least 4 cells");
    if (!(spec.x_hi > spec.x_lo)) throw DomainError("march: empty window");
    if (!(spec.t_end > 0.0)) throw DomainError("march: t_end must be positive");
    if (!(spec.safety > 0.0) || spec.safety > 1.0)
        throw DomainError("march: safety must lie in (0, 1]");
    const bool from_field = std::holds_alternative<DirichletFromField>(
        problem.bc);
    if (from_field && problem.field == nullptr)
        throw DomainError("march: DirichletFromField needs a reference field");

    const int N = spec.cells;
    const double dx = (spec.x_hi - spec.x_lo) / N;
    std::vector<double> x(N + 1), u(N + 1);
    for (int i = 0; i <= N; ++i) {
        x[i] = spec.x_lo + i * dx;
        u[i] = problem.initial(x[i]);
    }

    MarchResult out;
    out.x = x;
    out.mass_initial = dx * std::accumulate(u.begin(), u.end(), 0.0);

    // Max-principle bounds: initial data plus every boundary value applied.
    double lo_bound = *std::min_element(u.begin(), u.end());
    double hi_bound = *std::max_element(u.begin(), u.end());

    std::vector<double> snaps = spec.snapshot_times;
    snaps.push_back(spec.t_end);
    std::size_t next_snap = 0;

    std::vector<double> flux(N);
    double t = 0.0;
    long long steps = 0;
    const long long monitor_every = 100;
    while (next_snap < snaps.size()) {
        double target = snaps[next_snap];
        if (t >= target) {
            out.times.push_back(target);
            out.profiles.push_back(u);
            ++next_snap;
            continue;
        }
        // Stability: dt bounded by the explicit limit for the current state.
        double maxA = 0.0;
        for (int i = 0; i < N; ++i) {
            double am = problem.A(0.5 * (u[i] + u[i + 1]));
            if (!(am > 0.0))
                throw NonParabolic(
                    "march: A <= 0 at density " +
                    std::to_string(0.5 * (u[i] + u[i + 1])));
            flux[i] = (u[i + 1] - u[i]) * am;
            maxA = std::max(maxA, am);
        }
        double dt = (spec.dt_override > 0.0)
                        ? spec.dt_override
                        : spec.safety * dx * dx / (2.0 * maxA);
        dt = std::min(dt, target - t);
        double r = dt / (dx * dx);
        for (int i = 1; i < N; ++i) u[i] += r * (flux[i] - flux[i - 1]);
        if (std::holds_alternative<DirichletFixed>(problem.bc)) {
            const auto& d = std::get<DirichletFixed>(problem.bc);
            u[0] = d.lo;
            u[N] = d.hi;
            lo_bound = std::min({lo_bound, d.lo, d.hi});
            hi_bound = std::max({hi_bound, d.lo, d.hi});
        } else if (from_field) {
            double ft = problem.field_t0 + t + dt;
            u[0] = field_at(*problem.field, ft, x[0]);
            u[N] = field_at(*problem.field, ft, x[N]);
            lo_bound = std::min({lo_bound, u[0], u[N]});
            hi_bound = std::max({hi_bound, u[0], u[N]});
        } else {
            // Zero flux: boundary nodes exchange with the interior only.
            u[0] += r * flux[0];
            u[N] -= r * flux[N - 1];
        }
        t += dt;
        ++steps;
        if (steps % monitor_every == 0) {
            double tol = 1e-9 * std::max(1.0, hi_bound - lo_bound);
            for (int i = 0; i <= N; ++i)
                if (!std::isfinite(u[i]) || u[i] < lo_bound - tol ||
                    u[i] > hi_bound + tol)
                    throw StabilityViolation(
                        "march: max principle violated at x = " +
                        std::to_string(x[i]) + ", t = " + std::to_string(t));
        }
    }
    out.steps = steps;
    out.mass_final = dx * std::accumulate(u.begin(), u.end(), 0.0);
    return out;
}

ConvergenceReport verify_field(const SolutionField& field, double x_lo,
                               double x_hi, double t0, double t_end,
                               int base_cells, double safety) {
    ConvergenceReport rep;
    for (int k = 0; k < 3; ++k) {
        int N = base_cells << k;
        rep.cells[k] = N;
        Problem prob;
        prob.A = field.A;
        prob.bc = DirichletFromField{};
        prob.field = &field;
        prob.field_t0 = t0;
        prob.initial = [&field, t0](double xx) {
            return field_at(field, t0, xx);
        };
        MarchSpec spec;
        spec.x_lo = x_lo;
        spec.x_hi = x_hi;
        spec.cells = N;
        spec.t_end = t_end;
        spec.safety = safety;
        MarchResult res = march(prob, spec);
        const auto& u = res.profiles.back();
        double err = 0.0;
        for (int i = 1; i < N; ++i) {
            double exact = field_at(field, t0 + t_end, res.x[i]);
            err = std::max(err, std::fabs(u[i] - exact));
        }
        rep.sup_errors[k] = err;
    }
    rep.exact_to_roundoff = rep.sup_errors[0] < 1e-10 &&
                            rep.sup_errors[1] < 1e-10 &&
                            rep.sup_errors[2] < 1e-10;
    if (!rep.exact_to_roundoff) {
        double o1 = std::log2(rep.sup_errors[0] / rep.sup_errors[1]);
        double o2 = std::log2(rep.sup_errors[1] / rep.sup_errors[2]);
        rep.order = 0.5 * (o1 + o2);
    }
    return rep;
}

double instantaneous_residual(const SolutionField& field, double t,
                              double x_lo, double x_hi, int cells,
                              double dt_scale) {
    if (cells < 4) throw DomainError("instantaneous_residual: cells >= 4");
    double dx = (x_hi - x_lo) / cells;
    double dt = dt_scale * std::max(1.0, std::fabs(t));
    double worst = 0.0;
    for (int i = 1; i < cells; ++i) {
        double x = x_lo + i * dx;
        double um = field_at(field, t, x - dx);
        double u0 = field_at(field, t, x);
        double up = field_at(field, t, x + dx);
        double ux = (up - um) / (2.0 * dx);
        double uxx = (up - 2.0 * u0 + um) / (dx * dx);
        // Fourth-order central stencil in time.
        double tm2 = field_at(field, t - 2.0 * dt, x);
        double tm1 = field_at(field, t - dt, x);
        double tp1 = field_at(field, t + dt, x);
        double tp2 = field_at(field, t + 2.0 * dt, x);
        double ut = (-tp2 + 8.0 * tp1 - 8.0 * tm1 + tm2) / (12.0 * dt);
        double res = ut - field.A(u0) * uxx - field.A1(u0) * ux * ux;
        worst = std::max(worst, std::fabs(res));
    }
    return worst;
}

}  // namespace porous::pde
