#include "porous/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "porous/errors.hpp"
#include "porous/numerics.hpp"

namespace porous::thermo {

namespace {

constexpr double kBoundaryTol = 1e-10;  // |D| below this is the spinodal

double discriminant(double v, double T) {
    return 4.0 * T * v * v * v - 9.0 * v * v + 6.0 * v - 1.0;
}

struct Residuals {
    double f[3];
    double s[3];  // row scales
};

// Equal pressure at both volumes plus the temperature-free coexistence
// relation that encodes equality of the Gibbs potential.
Residuals residuals(double T, double v1, double v2, double p) {
    double lnr = std::log((3.0 * v1 - 1.0) / (3.0 * v2 - 1.0));
    double prod = (3.0 * v1 - 1.0) * (3.0 * v2 - 1.0);
    double area = 3.0 * (v1 - v2) * (6.0 * v1 * v2 - v1 - v2);
    double logterm = prod * (v1 + v2) * lnr;
    Residuals r;
    r.f[0] = p - 8.0 * T / (3.0 * v1 - 1.0) + 3.0 / (v1 * v1);
    r.f[1] = p - 8.0 * T / (3.0 * v2 - 1.0) + 3.0 / (v2 * v2);
    r.f[2] = area - logterm;
    r.s[0] = std::max({std::fabs(p), 8.0 * T / (3.0 * v1 - 1.0),
                       3.0 / (v1 * v1)});
    r.s[1] = std::max({std::fabs(p), 8.0 * T / (3.0 * v2 - 1.0),
                       3.0 / (v2 * v2)});
    r.s[2] = std::max({std::fabs(area), std::fabs(logterm), 1e-300});
    return r;
}

void jacobian(double T, double v1, double v2, double J[3][3]) {
    double lnr = std::log((3.0 * v1 - 1.0) / (3.0 * v2 - 1.0));
    double prod = (3.0 * v1 - 1.0) * (3.0 * v2 - 1.0);
    J[0][0] = 24.0 * T / ((3.0 * v1 - 1.0) * (3.0 * v1 - 1.0)) -
              6.0 / (v1 * v1 * v1);
    J[0][1] = 0.0;
    J[0][2] = 1.0;
    J[1][0] = 0.0;
    J[1][1] = 24.0 * T / ((3.0 * v2 - 1.0) * (3.0 * v2 - 1.0)) -
              6.0 / (v2 * v2 * v2);
    J[1][2] = 1.0;
    J[2][0] = 3.0 * (6.0 * v1 * v2 - v1 - v2) +
              3.0 * (v1 - v2) * (6.0 * v2 - 1.0) -
              (3.0 * (3.0 * v2 - 1.0) * (v1 + v2) + prod) * lnr -
              prod * (v1 + v2) * 3.0 / (3.0 * v1 - 1.0);
    J[2][1] = -3.0 * (6.0 * v1 * v2 - v1 - v2) +
              3.0 * (v1 - v2) * (6.0 * v1 - 1.0) -
              (3.0 * (3.0 * v1 - 1.0) * (v1 + v2) + prod) * lnr +
              prod * (v1 + v2) * 3.0 / (3.0 * v2 - 1.0);
    J[2][2] = 0.0;
}

// 3x3 linear solve with partial pivoting; false on a singular matrix.
bool solve3(double A[3][3], const double b[3], double x[3]) {
    double M[3][4];
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) M[i][j] = A[i][j];
        M[i][3] = b[i];
    }
    for (int c = 0; c < 3; ++c) {
        int piv = c;
        for (int r = c + 1; r < 3; ++r)
            if (std::fabs(M[r][c]) > std::fabs(M[piv][c])) piv = r;
        if (std::fabs(M[piv][c]) < 1e-300) return false;
        if (piv != c)
            for (int j = c; j < 4; ++j) std::swap(M[piv][j], M[c][j]);
        for (int r = c + 1; r < 3; ++r) {
            double m = M[r][c] / M[c][c];
            for (int j = c; j < 4; ++j) M[r][j] -= m * M[c][j];
        }
    }
    for (int i = 2; i >= 0; --i) {
        double acc = M[i][3];
        for (int j = i + 1; j < 3; ++j) acc -= M[i][j] * x[j];
        x[i] = acc / M[i][i];
    }
    return true;
}

struct Triple {
    double v1, v2, p;
};

double scaled_norm(const Residuals& r) {
    double n = 0.0;
    for (int i = 0; i < 3; ++i) n += (r.f[i] / r.s[i]) * (r.f[i] / r.s[i]);
    return std::sqrt(n);
}

double scaled_max(const Residuals& r) {
    double m = 0.0;
    for (int i = 0; i < 3; ++i) m = std::max(m, std::fabs(r.f[i] / r.s[i]));
    return m;
}

std::optional<Triple> newton_from(double T, Triple x,
                                  const CoexistenceOptions& opts,
                                  int max_iter) {
    Residuals r = residuals(T, x.v1, x.v2, x.p);
    double nf = scaled_norm(r);
    for (int it = 0; it < max_iter; ++it) {
        if (scaled_max(r) < opts.tol) return x;
        double J[3][3];
        jacobian(T, x.v1, x.v2, J);
        double rhs[3], step[3];
        for (int i = 0; i < 3; ++i) {
            rhs[i] = -r.f[i] / r.s[i];
            for (int j = 0; j < 3; ++j) J[i][j] /= r.s[i];
        }
        if (!solve3(J, rhs, step)) return std::nullopt;
        double lam = 1.0;
        bool accepted = false;
        while (lam > 1e-12) {
            Triple w{x.v1 + lam * step[0], x.v2 + lam * step[1],
                     x.p + lam * step[2]};
            if (w.v1 > 1.0 / 3.0 && w.v1 < 1.0 && w.v2 > 1.0 && w.p > 0.0) {
                Residuals rn = residuals(T, w.v1, w.v2, w.p);
                double nn = scaled_norm(rn);
                if (nn < nf * (1.0 - 1e-4 * lam) || scaled_max(rn) < opts.tol) {
                    x = w;
                    r = rn;
                    nf = nn;
                    accepted = true;
                    break;
                }
            }
            lam *= 0.5;
        }
        if (!accepted) return std::nullopt;
    }
    if (scaled_max(r) < 100.0 * opts.tol) return x;
    return std::nullopt;
}

std::vector<Triple> direct_seeds(double T) {
    auto [s1, s2] = spinodal_roots(T);
    double p_lo = std::max(0.0, pressure(s1, T));
    double p_hi = pressure(s2, T);
    std::vector<Triple> seeds{{0.9 * s1, 1.1 * s2, 0.5 * (p_lo + p_hi)}};
    double t = 1.0 - T;
    if (t < 0.05) {
        double w = 2.0 * std::sqrt(t);
        seeds.push_back({1.0 - w, 1.0 + w, 1.0 - 4.0 * t});
    }
    return seeds;
}

std::optional<Triple> solve_robust(double T, const CoexistenceOptions& opts) {
    for (const auto& s : direct_seeds(T)) {
        if (auto r = newton_from(T, s, opts, opts.max_iter)) return r;
    }
    // Continuation from an easy anchor temperature with adaptive step.
    std::optional<Triple> cur;
    for (const auto& s : direct_seeds(opts.anchor_T)) {
        if ((cur = newton_from(opts.anchor_T, s, opts, opts.max_iter))) break;
    }
    if (!cur) return std::nullopt;
    double at = opts.anchor_T;
    double dT = 0.02;
    double sgn = (T > at) ? 1.0 : -1.0;
    while (std::fabs(at - T) > 0.0) {
        double step = sgn * std::min(dT, std::fabs(T - at));
        auto nxt = newton_from(at + step, *cur, opts, 25);
        if (!nxt) {
            dT *= 0.5;
            if (dT < 1e-10) return std::nullopt;
            continue;
        }
        cur = nxt;
        at += step;
        dT *= 1.4;
    }
    return cur;
}

}  // namespace

void GasSpec::validate() const {
    if (!(n >= 1.0) || !(k > 0.0) || !(mu > 0.0) || !(R > 0.0))
        throw DomainError("GasSpec: require n >= 1, k > 0, mu > 0, R > 0");
}

double pressure(double v, double T) {
    if (!(v > 1.0 / 3.0) || !(T > 0.0))
        throw DomainError("pressure: require v > 1/3 and T > 0");
    return 8.0 * T / (3.0 * v - 1.0) - 3.0 / (v * v);
}

std::pair<Phase, double> kappa_classify(double v, double T) {
    if (!(v > 1.0 / 3.0) || !(T > 0.0))
        throw DomainError("kappa_classify: require v > 1/3 and T > 0");
    double D = discriminant(v, T);
    if (std::fabs(D) <= kBoundaryTol) return {Phase::SpinodalBoundary, D};
    return {D > 0.0 ? Phase::Applicable : Phase::NonApplicable, D};
}

ThermoState state_from_vT(double v, double T, const GasSpec& gas) {
    gas.validate();
    if (!(v > 1.0 / 3.0) || !(T > 0.0))
        throw DomainError("state_from_vT: require v > 1/3 and T > 0");
    ThermoState st;
    st.v = v;
    st.T = T;
    st.p = pressure(v, T);
    st.e = 0.5 * gas.n * gas.R * T - 3.0 / v;
    st.sigma = gas.R * ((4.0 * gas.n / 3.0) * std::log(T) +
                        (8.0 / 3.0) * std::log(3.0 * v - 1.0));
    st.phase = kappa_classify(v, T).first;
    return st;
}

std::pair<double, double> spinodal_roots(double T) {
    if (!(T > 0.0) || !(T < 1.0))
        throw DomainError("spinodal_roots: require 0 < T < 1");
    auto D = [T](double v) { return discriminant(v, T); };
    // D > 0 just above v = 1/3, D(1) = 4(T-1) < 0, D -> +inf as v grows.
    double lo = 1.0 / 3.0 + 1e-12;
    double r1 = num::bisect(D, lo, 1.0, 1e-15);
    double hi = 2.0;
    while (D(hi) <= 0.0) hi *= 2.0;
    double r2 = num::bisect(D, 1.0, hi, 1e-15);
    return {r1, r2};
}

double gibbs(double v, double T, const GasSpec& gas) {
    gas.validate();
    if (!(v > 1.0 / 3.0) || !(T > 0.0))
        throw DomainError("gibbs: require v > 1/3 and T > 0");
    double sigma_hat = (4.0 * gas.n / 3.0) * std::log(T) +
                       (8.0 / 3.0) * std::log(3.0 * v - 1.0);
    double e = 0.5 * gas.n * gas.R * T - 3.0 / v;
    return e - T * sigma_hat + pressure(v, T) * v;
}

CoexistencePoint coexistence_solve(double T, const GasSpec& gas,
                                   const CoexistenceOptions& opts) {
    gas.validate();
    if (!(T >= opts.T_cutoff) || !(T < 1.0))
        throw DomainError("coexistence_solve: require T in [" +
                          std::to_string(opts.T_cutoff) + ", 1)");
    auto r = solve_robust(T, opts);
    if (!r)
        throw NoConvergence("coexistence_solve: no convergence at T = " +
                            std::to_string(T));
    return {T, r->p, r->v1, r->v2};
}

std::vector<CoexistencePoint> coexistence_table(
    double T_min, double T_max, int steps, const GasSpec& gas,
    const CoexistenceOptions& opts) {
    gas.validate();
    if (steps < 1) throw DomainError("coexistence_table: steps >= 1");
    if (!(T_min >= opts.T_cutoff) || !(T_max < 1.0) || !(T_min <= T_max))
        throw DomainError("coexistence_table: require cutoff <= T_min <= "
                          "T_max < 1");
    std::vector<CoexistencePoint> rows;
    rows.reserve(steps);
    CoexistenceMarcher marcher(gas, opts);
    for (int i = 0; i < steps; ++i) {
        double T = (steps == 1)
                       ? T_min
                       : T_min + (T_max - T_min) * i / double(steps - 1);
        rows.push_back(marcher.at(T));
    }
    return rows;
}

CoexistenceMarcher::CoexistenceMarcher(GasSpec gas, CoexistenceOptions opts)
    : gas_(gas), opts_(opts) {
    gas_.validate();
}

CoexistencePoint CoexistenceMarcher::at(double T) {
    if (!(T >= opts_.T_cutoff) || !(T < 1.0))
        throw DomainError("CoexistenceMarcher: require T in [cutoff, 1)");
    std::optional<Triple> cur;
    if (has_last_)
        cur = newton_from(T, {last_.v1, last_.v2, last_.p}, opts_,
                          opts_.max_iter);
    if (!cur) cur = solve_robust(T, opts_);
    if (!cur)
        throw NoConvergence("CoexistenceMarcher: no convergence at T = " +
                            std::to_string(T));
    last_ = {T, cur->p, cur->v1, cur->v2};
    has_last_ = true;
    return last_;
}

}  // namespace porous::thermo
