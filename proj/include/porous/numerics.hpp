#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace porous::num {

using Fn1 = std::function<double(double)>;

// Root of f on [lo, hi]; requires a sign change at the endpoints.
// Bisection down to a relative bracket width of `tol`, then a few Newton-like
// secant polish steps.  Throws DomainError without a sign change,
// NoConvergence if the budget runs out.
double bisect(const Fn1& f, double lo, double hi, double tol = 1e-14,
              int max_iter = 200);

// Guarded Newton iteration: falls back to bisection inside [lo, hi] whenever
// the Newton step leaves the bracket.  Converges to |f| <= tol_f or a step
// below tol_x * max(1, |x|).
double newton_bracketed(const Fn1& f, const Fn1& df, double x0, double lo,
                        double hi, double tol_f = 1e-14, double tol_x = 1e-15,
                        int max_iter = 100);

// Adaptive Simpson quadrature with the standard Richardson acceptance test;
// `tol` is the absolute error goal for the whole interval.
double adaptive_simpson(const Fn1& f, double a, double b, double tol = 1e-12);

// Antiderivative table for F(x) = \int_base^x f on [lo, hi].  Panel prefix
// sums make repeated evaluations and monotone inversion cheap; each panel is
// integrated adaptively so the cumulative quadrature error stays below
// roughly `panels * panel_tol`.
class Antiderivative {
  public:
    Antiderivative(Fn1 f, double lo, double hi, double base, int panels = 256,
                   double panel_tol = 2e-13);

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double operator()(double x) const;   // throws OutOfRange outside [lo, hi]
    double derivative(double x) const { return f_(x); }

    // Solves F(x) = target on [lo, hi] assuming F is strictly monotone.
    // Bracket search over the stored knot values, then guarded Newton.
    // Throws OutOfRange when target is outside [F(lo), F(hi)].
    double invert(double target) const;

  private:
    double eval(double x) const;

    Fn1 f_;
    double lo_, hi_, base_, dx_;
    std::vector<double> knots_;   // panels+1 grid points
    std::vector<double> prefix_;  // F at each knot
    double panel_tol_;
};

// Deterministic uniform doubles in [0,1).  The 53-bit mapping is fixed here
// (not delegated to a distribution) so streams are identical across standard
// library implementations.
class UniformRng {
  public:
    explicit UniformRng(std::uint64_t seed) : engine_(seed) {}
    double next() { return (engine_() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * next(); }
    double log_uniform(double a, double b);  // log-uniform on [a, b), a > 0

  private:
    std::mt19937_64 engine_;
};

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace porous::num
