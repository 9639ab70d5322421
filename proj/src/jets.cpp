#include "porous/jets.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "porous/errors.hpp"
#include "porous/numerics.hpp"

namespace porous::jets {

namespace {

constexpr double kFdScale = 1e-6;
constexpr int kMaxChain = 4;

double fd_step(double coord) { return kFdScale * std::max(1.0, std::fabs(coord)); }

}  // namespace

JetFunction::JetFunction(int arity, Value value)
    : arity_(arity), value_(std::move(value)) {}

JetFunction::JetFunction(int arity, Value value, PartialY dy, Value dx)
    : arity_(arity),
      value_(std::move(value)),
      dy_(std::move(dy)),
      dx_(std::move(dx)) {}

void JetFunction::require(const JetPoint& jet) const {
    if (jet.order() < arity_)
        throw ArityMismatch("JetFunction: jet of order " +
                            std::to_string(jet.order()) +
                            " passed to a function of arity " +
                            std::to_string(arity_));
}

double JetFunction::operator()(const JetPoint& jet) const {
    require(jet);
    return value_(jet);
}

double JetFunction::partial_y(const JetPoint& jet, int j) const {
    require(jet);
    if (j < 0 || j > arity_) return 0.0;
    if (dy_) return dy_(jet, j);
    JetPoint w = jet;
    double h = fd_step(w.y[j]);
    w.y[j] = jet.y[j] + h;
    double up = value_(w);
    w.y[j] = jet.y[j] - h;
    double dn = value_(w);
    return (up - dn) / (2.0 * h);
}

double JetFunction::partial_x(const JetPoint& jet) const {
    require(jet);
    if (dx_) return dx_(jet);
    JetPoint w = jet;
    double h = fd_step(w.x);
    w.x = jet.x + h;
    double up = value_(w);
    w.x = jet.x - h;
    double dn = value_(w);
    return (up - dn) / (2.0 * h);
}

JetFunction total_derivative(const JetFunction& f) {
    int m = f.arity();
    auto val = [f, m](const JetPoint& jet) {
        if (jet.order() < m + 1)
            throw ArityMismatch("total_derivative: jet too short");
        double acc = f.partial_x(jet);
        for (int j = 0; j <= m; ++j) acc += jet.y[j + 1] * f.partial_y(jet, j);
        return acc;
    };
    return JetFunction(m + 1, val);
}

std::vector<double> shuffle_apply(const JetFunction& phi, const JetPoint& jet,
                                  int k) {
    if (k < 0 || k > kMaxChain)
        throw DomainError("shuffle_apply: chain length must be in [0, 4]");
    std::vector<double> out;
    out.reserve(k + 1);
    JetFunction cur = phi;
    for (int j = 0; j <= k; ++j) {
        out.push_back(cur(jet));
        if (j < k) cur = total_derivative(cur);
    }
    return out;
}

BracketValue poisson_lie_bracket(const JetFunction& phi, const JetFunction& F,
                                 const JetPoint& jet) {
    int mp = phi.arity(), mf = F.arity();
    if (std::max(mp, mf) > kMaxChain)
        throw DomainError("poisson_lie_bracket: arity above supported cap");
    if (jet.order() < mp + mf)
        throw ArityMismatch("poisson_lie_bracket: jet of order " +
                            std::to_string(jet.order()) + " but prolongation " +
                            std::to_string(mp + mf) + " needed");
    std::vector<double> DF = shuffle_apply(F, jet, mp);
    std::vector<double> Dphi = shuffle_apply(phi, jet, mf);
    BracketValue out;
    for (int j = 0; j <= mp; ++j) {
        double t = phi.partial_y(jet, j) * DF[j];
        out.value += t;
        out.magnitude += std::fabs(t);
    }
    for (int j = 0; j <= mf; ++j) {
        double t = F.partial_y(jet, j) * Dphi[j];
        out.value -= t;
        out.magnitude += std::fabs(t);
    }
    return out;
}

VerifyReport verify_dynamics(const JetFunction& phi, const JetFunction& F,
                             const JetFunction* a, const JetFunction* b,
                             const std::vector<JetPoint>& samples,
                             double threshold) {
    VerifyReport rep;
    rep.threshold = threshold;
    rep.samples = static_cast<int>(samples.size());
    for (const auto& jet : samples) {
        BracketValue br = poisson_lie_bracket(phi, F, jet);
        double rhs = 0.0;
        double Fv = F(jet);
        double coord_scale = 1.0;
        for (std::size_t j = 1; j < std::min<std::size_t>(3, jet.y.size());
             ++j)
            coord_scale = std::max(coord_scale, std::fabs(jet.y[j]));
        double on_surface_tol = 1e-12 * coord_scale;
        if (a != nullptr && std::fabs(Fv) >= on_surface_tol)
            rhs += (*a)(jet) * Fv;
        if (b != nullptr) {
            JetFunction DF = total_derivative(F);
            rhs += (*b)(jet) * DF(jet);
        }
        double scale = std::max(1.0, br.magnitude);
        double res = std::fabs(br.value - rhs) / scale;
        if (res > rep.max_residual) {
            rep.max_residual = res;
            rep.worst = jet;
        }
    }
    rep.pass = rep.max_residual < threshold;
    return rep;
}

std::vector<JetPoint> sample_surface_second_order(double b1, int count,
                                                  std::uint64_t seed) {
    num::UniformRng rng(seed);
    std::vector<JetPoint> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        double y0 = rng.log_uniform(0.1, 10.0);
        double y1 = rng.uniform(-5.0, 5.0);
        double y2 = b1 * y1 * y1 / y0;
        double y3 = b1 * (2.0 * b1 - 1.0) * y1 * y1 * y1 / (y0 * y0);
        double y4 = b1 * (2.0 * b1 - 1.0) * (3.0 * b1 - 2.0) * y1 * y1 * y1 *
                    y1 / (y0 * y0 * y0);
        out.push_back({0.0, {y0, y1, y2, y3, y4}});
    }
    return out;
}

std::vector<JetPoint> sample_surface_first_order(
    const std::function<double(double)>& A,
    const std::function<double(double)>& A1,
    const std::function<double(double)>& A2, double C1, double C2,
    double y0_lo, double y0_hi, int count, std::uint64_t seed) {
    double lo = std::max(y0_lo, 0.1), hi = std::min(y0_hi, 10.0);
    if (!(hi > lo))
        throw DomainError("sample_surface_first_order: empty y0 window");
    num::UniformRng rng(seed);
    std::vector<JetPoint> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        double y0 = rng.log_uniform(lo, hi);
        double Av = A(y0), A1v = A1(y0), A2v = A2(y0);
        double N = C1 * y0 + C2;
        double f = N / Av;
        double fp = C1 / Av - N * A1v / (Av * Av);
        double fpp = -2.0 * C1 * A1v / (Av * Av) - N * A2v / (Av * Av) +
                     2.0 * N * A1v * A1v / (Av * Av * Av);
        double y1 = f;
        double y2 = fp * y1;
        double y3 = fpp * y1 * y1 + fp * y2;
        out.push_back({0.0, {y0, y1, y2, y3}});
    }
    return out;
}

}  // namespace porous::jets
