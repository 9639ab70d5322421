#include "porous/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "porous/errors.hpp"

namespace porous::num {

double bisect(const Fn1& f, double lo, double hi, double tol, int max_iter) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (std::signbit(flo) == std::signbit(fhi))
        throw DomainError("bisect: no sign change on [" + std::to_string(lo) +
                          ", " + std::to_string(hi) + "]");
    for (int i = 0; i < max_iter; ++i) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fm == 0.0 || (hi - lo) < tol * std::max(1.0, std::fabs(mid)))
            return mid;
        if (std::signbit(fm) == std::signbit(flo)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double newton_bracketed(const Fn1& f, const Fn1& df, double x0, double lo,
                        double hi, double tol_f, double tol_x, int max_iter) {
    double flo = f(lo), fhi = f(hi);
    if (std::signbit(flo) == std::signbit(fhi))
        throw DomainError("newton_bracketed: no sign change on bracket");
    double x = std::clamp(x0, lo, hi);
    for (int i = 0; i < max_iter; ++i) {
        double fx = f(x);
        if (std::fabs(fx) <= tol_f) return x;
        if (std::signbit(fx) == std::signbit(flo)) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
        }
        double d = df(x);
        double step = (d != 0.0) ? -fx / d : 0.0;
        double xn = x + step;
        if (!(xn > lo && xn < hi) || std::fabs(step) > 0.5 * (hi - lo))
            xn = 0.5 * (lo + hi);
        if (std::fabs(xn - x) <= tol_x * std::max(1.0, std::fabs(x))) return xn;
        x = xn;
    }
    throw NoConvergence("newton_bracketed: iteration budget exhausted");
}

namespace {

double simpson(const Fn1& f, double a, double fa, double b, double fb,
               double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_rec(const Fn1& f, double a, double fa, double b, double fb,
                   double m, double fm, double whole, double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson(f, a, fa, m, fm, flm);
    double right = simpson(f, m, fm, b, fb, frm);
    double err = left + right - whole;
    if (depth <= 0 || std::fabs(err) <= 15.0 * tol)
        return left + right + err / 15.0;
    return simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const Fn1& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    double fa = f(a), fb = f(b);
    double m = 0.5 * (a + b), fm = f(m);
    double whole = simpson(f, a, fa, b, fb, fm);
    return simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, 48);
}

Antiderivative::Antiderivative(Fn1 f, double lo, double hi, double base,
                               int panels, double panel_tol)
    : f_(std::move(f)), lo_(lo), hi_(hi), base_(base), panel_tol_(panel_tol) {
    if (!(hi > lo) || panels < 1)
        throw DomainError("Antiderivative: bad interval or panel count");
    if (base < lo || base > hi)
        throw DomainError("Antiderivative: base point outside interval");
    dx_ = (hi - lo) / panels;
    knots_.resize(panels + 1);
    prefix_.resize(panels + 1);
    for (int i = 0; i <= panels; ++i) knots_[i] = lo + i * dx_;
    knots_.back() = hi;
    prefix_[0] = 0.0;
    for (int i = 0; i < panels; ++i)
        prefix_[i + 1] =
            prefix_[i] +
            adaptive_simpson(f_, knots_[i], knots_[i + 1], panel_tol_);
    // Shift so the value at `base` is exactly zero.
    double at_base = eval(base);
    for (auto& v : prefix_) v -= at_base;
}

double Antiderivative::operator()(double x) const { return eval(x); }

double Antiderivative::eval(double x) const {
    if (x < lo_ - 1e-12 || x > hi_ + 1e-12)
        throw OutOfRange("Antiderivative: evaluation point outside table");
    x = std::clamp(x, lo_, hi_);
    int i = std::min<int>(static_cast<int>((x - lo_) / dx_),
                          static_cast<int>(knots_.size()) - 2);
    return prefix_[i] + adaptive_simpson(f_, knots_[i], x, panel_tol_);
}

double Antiderivative::invert(double target) const {
    double vlo = prefix_.front(), vhi = prefix_.back();
    bool increasing = vhi > vlo;
    double a = std::min(vlo, vhi), b = std::max(vlo, vhi);
    double slack = 1e-12 * std::max(1.0, b - a);
    if (target < a - slack || target > b + slack)
        throw OutOfRange("Antiderivative::invert: target outside range");
    target = std::clamp(target, a, b);
    // Bracket within the knot table (prefix_ is monotone when F is).
    auto cmp_target = increasing ? target : -target;
    std::size_t idx = 0;
    {
        std::size_t lo = 0, hi = prefix_.size() - 1;
        while (hi - lo > 1) {
            std::size_t mid = (lo + hi) / 2;
            double v = increasing ? prefix_[mid] : -prefix_[mid];
            if (v <= cmp_target)
                lo = mid;
            else
                hi = mid;
        }
        idx = lo;
    }
    double xl = knots_[idx], xr = knots_[idx + 1];
    auto g = [&](double x) { return eval(x) - target; };
    auto dg = [&](double x) { return f_(x); };
    double gl = g(xl), gr = g(xr);
    if (gl == 0.0) return xl;
    if (gr == 0.0) return xr;
    if (std::signbit(gl) == std::signbit(gr)) {
        // Knot rounding put the target in a neighbour panel.
        xl = knots_[idx > 0 ? idx - 1 : 0];
        xr = knots_[std::min(idx + 2, knots_.size() - 1)];
    }
    return newton_bracketed(g, dg, 0.5 * (xl + xr), xl, xr, 1e-13, 5e-16, 100);
}

double UniformRng::log_uniform(double a, double b) {
    return a * std::exp(next() * std::log(b / a));
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw DomainError("fit_slope: need matching vectors, length >= 2");
    double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace porous::num
