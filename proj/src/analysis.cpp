#include "epikit/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "epikit/roots.hpp"

namespace epikit {

namespace {
constexpr double kRootTolS = 1e-12;
constexpr double kQuadTol = 1e-10;
constexpr std::size_t kQuadMaxPanels = 10000;
constexpr double kFixedPointStep = 1e-14;
constexpr long kFixedPointMaxIter = 1000000;
constexpr double kSInfMargin = 1e-6;

double final_size_fn(double r, double r0, double s0) {
    return 1.0 - r - s0 * std::exp(-r0 * r);
}
} // namespace

PeakReport peak_values(const ModelParams& p) {
    p.validate();
    const double x = p.r0 * p.s0;
    if (x < 1.0)
        throw NoEpidemicError("no epidemic: r0*S0 <= 1");
    const double s_star = 1.0 / p.r0;
    const double r_star = std::log(x) / p.r0;
    const double i_star = 1.0 - s_star - r_star;
    return {s_star, i_star, r_star, std::nullopt};
}

FinalSizeReport final_size(const ModelParams& p, SolveMethod method) {
    p.validate();
    double r_inf = 0.0;
    int iterations = 0;

    if (method == SolveMethod::FixedPoint) {
        if (!(p.r0 * p.s0 > 1.0))
            throw NoEpidemicError("fixed-point iteration needs r0*S0 > 1");
        double r = 1.0 - 1.0 / p.r0;
        for (long it = 1;; ++it) {
            if (it > kFixedPointMaxIter)
                throw ConvergenceError("final-size fixed point did not settle in 1e6 iterations");
            const double next = 1.0 - p.s0 * std::exp(-p.r0 * r);
            const double step = next - r;
            r = next;
            if (std::abs(step) < kFixedPointStep) {
                iterations = static_cast<int>(it);
                break;
            }
        }
        r_inf = r;
    } else {
        // f(lo) >= 0 (r0*e^{1-r0} <= 1), and f(1) = -s0*exp(-r0) <= 0, so
        // [lo, 1] always brackets.  Any hi pinned strictly below 1 loses the
        // sign change once the root is within an ulp of 1 (r0 around 37 and
        // beyond); when exp(-r0) underflows entirely, 1 is an exact root and
        // the correct answer to double precision.
        const double lo = std::max(p.i0, 1.0 - 1.0 / p.r0);
        const double hi = 1.0;
        const RootResult root = bisect(
            [&](double r) { return final_size_fn(r, p.r0, p.s0); }, lo, hi, 1e-15, 200);
        r_inf = root.x;
        iterations = root.iterations;
    }

    const double s_inf = p.s0 * std::exp(-p.r0 * r_inf);
    const double residual = std::abs(1.0 - r_inf - s_inf);
    return {s_inf, r_inf, iterations, method, residual};
}

std::vector<SweepPoint> final_size_sweep(std::vector<double> r0_grid, double s0) {
    if (!(s0 > 0.0) || s0 > 1.0)
        throw DomainError("final_size_sweep needs s0 in (0,1]");
    std::sort(r0_grid.begin(), r0_grid.end());
    std::vector<SweepPoint> out;
    out.reserve(r0_grid.size());
    for (double r0 : r0_grid) {
        try {
            const ModelParams p = make_params_s0(r0, s0, 1.0 - s0);
            out.push_back({r0, final_size(p, SolveMethod::Bisection).r_inf});
        } catch (const Error& e) {
            throw Error("final_size_sweep at r0=" + std::to_string(r0) + ": " + e.what());
        }
    }
    return out;
}

FastestReport fastest_new_infections(const ModelParams& p) {
    p.validate();
    if (!(p.r0 * p.s0 > 1.0))
        throw NoEpidemicError("no epidemic: r0*S0 <= 1");
    const auto fn = [&](double s) { return p.r0 + 1.0 - 2.0 * p.r0 * s + std::log(s / p.s0); };
    if (fn(p.s0) >= 0.0)
        throw DomainError("fastest increase lies at the start: i0 too large for this query");
    // fn(1/r0) = r0 - 1 - ln(r0*s0) > 0 whenever r0*s0 > 1, so the bracket is sound
    const double s = bisect(fn, 1.0 / p.r0, p.s0, kRootTolS, 200).x;
    return {s, s - 1.0 / p.r0, s * (p.r0 * s - 1.0)};
}

IRateExtrema i_rate_extrema(const ModelParams& p) {
    p.validate();
    if (!(p.r0 * p.s0 > 1.0))
        throw NoEpidemicError("no epidemic: r0*S0 <= 1");
    const auto g = [&](double s) {
        const double d = p.r0 * s - 1.0;
        return d * d - p.r0 * p.r0 * s * i_of_s(s, p);
    };
    const double s_star = 1.0 / p.r0;
    if (g(p.s0) <= 0.0)
        throw DomainError("dI/dtau maximum lies at the start: i0 too large for this query");
    const double upper = bisect(g, s_star, p.s0, kRootTolS, 200).x;
    const double s_inf = final_size(p, SolveMethod::Bisection).s_inf;
    const double lower = bisect(g, s_inf, s_star, kRootTolS, 200).x;
    return {upper, lower};
}

double tau_of_s(double s_target, const ModelParams& p) {
    p.validate();
    if (!(p.i0 > 0.0))
        throw DomainError("tau_of_s needs i0 > 0 (integrand is singular at s0 otherwise)");
    if (s_target > p.s0)
        throw DomainError("tau_of_s: target above s0");
    if (s_target == p.s0)
        return 0.0;
    const double s_inf = final_size(p, SolveMethod::Bisection).s_inf;
    if (!(s_target > s_inf + kSInfMargin))
        throw DomainError("tau_of_s: target within 1e-6 of S_inf, integrand too singular");

    const auto integrand = [&](double s) { return 1.0 / (p.r0 * s * i_of_s(s, p)); };

    // Composite adaptive scheme: keep a worklist of panels, each evaluated by
    // the 15-point Gauss-Kronrod pair, and repeatedly split the panel with the
    // largest error until the summed error meets the tolerance.  The integrand
    // has a layer of width ~i0 under s0 (and steepens again toward S_inf), so
    // panels there end up orders of magnitude narrower than elsewhere.
    struct Panel {
        double a, b, val, l1;
    };
    const auto eval = [&](double a, double b) {
        double e = 0.0, l1 = 0.0;
        const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
            integrand, a, b, 0, 0.0, &e, &l1);
        // the single-panel rule reports its error on the unit interval
        return std::pair<double, Panel>{e * 0.5 * (b - a), Panel{a, b, v, l1}};
    };

    std::multimap<double, Panel> panels;
    panels.insert(eval(s_target, p.s0));
    double total_err = panels.begin()->first;
    double total_l1 = panels.begin()->second.l1;
    while (total_err > kQuadTol * std::max(total_l1, 1.0)) {
        const auto worst = std::prev(panels.end());
        const Panel parent = worst->second;
        const double mid = 0.5 * (parent.a + parent.b);
        if (panels.size() >= kQuadMaxPanels || mid <= parent.a || mid >= parent.b)
            throw QuadratureError("tau_of_s: tolerance 1e-10 not reached within the panel budget");
        total_err -= worst->first;
        total_l1 -= parent.l1;
        panels.erase(worst);
        for (const auto& half : {eval(parent.a, mid), eval(mid, parent.b)}) {
            total_err += half.first;
            total_l1 += half.second.l1;
            panels.insert(half);
        }
    }
    double tau = 0.0;
    for (const auto& [err, panel] : panels)
        tau += panel.val;
    return tau;
}

RStarExtremum r_star_extremum_check(double s0, const std::vector<double>& r0_grid) {
    if (!(s0 > 0.0) || s0 > 1.0)
        throw DomainError("r_star_extremum_check needs s0 in (0,1]");
    if (r0_grid.empty())
        throw DomainError("r_star_extremum_check needs a non-empty grid");
    const auto r_star = [&](double r0) { return std::log(r0 * s0) / r0; };
    double best_r0 = 0.0;
    double best = -1.0;
    for (double r0 : r0_grid) {
        if (r0 * s0 < 1.0 - 1e-12)
            throw DomainError("r_star_extremum_check: grid point below 1/s0");
        const double v = r_star(r0);
        if (v > best) {
            best = v;
            best_r0 = r0;
        }
    }
    const double e = std::exp(1.0);
    if (std::abs(r_star(e / s0) - s0 / e) > 1e-12)
        throw Error("R*(e/S0) = S0/e self-check failed");
    return {best_r0, best};
}

} // namespace epikit
