#include "epikit/integrate.hpp"

#include <cmath>
#include <string>

#include "epikit/roots.hpp"

namespace epikit {

namespace {

constexpr double kBoundary = 0.5 - 1e-12; // accepted modified states stay above this
constexpr int kMaxHalvings = 40;
constexpr int kExtinctStreak = 10;

struct Y {
    double s;
    double i;
};

Y sir_f(const Y& y, double r0) {
    const double flow = r0 * y.s * y.i;
    return {-flow, flow - y.i};
}

// Stage values may poke just below S=1/2; extend sqrt by zero there.  The
// step-rejection rule below keeps accepted endpoints above the boundary.
Y mod_f(const Y& y, double r0) {
    const double x = 2.0 * y.s - 1.0;
    const double flow = x > 0.0 ? r0 * std::sqrt(x) * y.i : 0.0;
    return {-flow, flow - y.i};
}

template <typename F>
Y rk4_step(const Y& y, double h, F f) {
    const Y k1 = f(y);
    const Y k2 = f(Y{y.s + 0.5 * h * k1.s, y.i + 0.5 * h * k1.i});
    const Y k3 = f(Y{y.s + 0.5 * h * k2.s, y.i + 0.5 * h * k2.i});
    const Y k4 = f(Y{y.s + h * k3.s, y.i + h * k3.i});
    return {y.s + (h / 6.0) * (k1.s + 2.0 * k2.s + 2.0 * k3.s + k4.s),
            y.i + (h / 6.0) * (k1.i + 2.0 * k2.i + 2.0 * k3.i + k4.i)};
}

// Advance by exactly h, recursively splitting the step whenever the full
// step would land S below the sqrt domain.
Y advance_modified(const Y& y, double h, double r0, int depth) {
    const Y out = rk4_step(y, h, [r0](const Y& v) { return mod_f(v, r0); });
    if (out.s >= kBoundary)
        return out;
    if (depth >= kMaxHalvings)
        throw ConvergenceError("modified step still undershoots S=1/2 after 40 halvings");
    const Y mid = advance_modified(y, 0.5 * h, r0, depth + 1);
    return advance_modified(mid, 0.5 * h, r0, depth + 1);
}

double logistic_f(double i, double b) {
    return b * i * (1.0 - i);
}

double rk4_scalar(double i, double h, double b) {
    const double k1 = logistic_f(i, b);
    const double k2 = logistic_f(i + 0.5 * h * k1, b);
    const double k3 = logistic_f(i + 0.5 * h * k2, b);
    const double k4 = logistic_f(i + h * k3, b);
    return i + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Deriv deriv_at(const Y& y, ModelKind kind, const ModelParams& p) {
    switch (kind) {
    case ModelKind::SIR: {
        const Y d = sir_f(y, p.r0);
        return {d.s, d.i, y.i};
    }
    case ModelKind::ModifiedSIR: {
        const Y d = mod_f(y, p.r0);
        return {d.s, d.i, y.i};
    }
    case ModelKind::SI: {
        const double f = logistic_f(y.i, p.b());
        return {-f, f, 0.0};
    }
    }
    throw ConfigError("unknown model kind");
}

} // namespace

Trajectory integrate(const ModelParams& params, ModelKind kind, const IntegratorConfig& config) {
    params.validate();
    if (!(config.h > 0.0) || !std::isfinite(config.h))
        throw ConfigError("step size must be positive");
    if (!(config.tau_max > 0.0) || !std::isfinite(config.tau_max))
        throw ConfigError("tau_max must be positive");
    if (!(config.extinction_threshold > 0.0) || !(config.extinction_threshold < params.i0))
        throw ConfigError("extinction threshold must lie in (0, i0)");

    const double h = config.h;
    const long n_full = static_cast<long>(std::floor(config.tau_max / h + 1e-9));
    double rem = config.tau_max - static_cast<double>(n_full) * h;
    if (rem < 1e-12 * h)
        rem = 0.0;
    const long n_steps = n_full + (rem > 0.0 ? 1 : 0);

    Trajectory traj{params, kind, h, Termination::TauMaxReached, {}, {}};
    traj.states.reserve(static_cast<std::size_t>(n_steps) + 1);
    traj.derivs.reserve(static_cast<std::size_t>(n_steps) + 1);

    Y y{params.s0, params.i0};
    auto append = [&](double tau) {
        const double r = (kind == ModelKind::SI) ? 0.0 : 1.0 - (y.s + y.i);
        const State st{tau, y.s, y.i, r};
        validate_state(st);
        if (!traj.states.empty()) {
            const State& prev = traj.states.back();
            if (st.s > prev.s || st.r < prev.r)
                throw DomainError("monotonicity lost at tau=" + std::to_string(tau));
        }
        traj.states.push_back(st);
        traj.derivs.push_back(deriv_at(y, kind, params));
    };

    append(0.0);
    int dec_streak = 0;
    double prev_i = y.i;
    for (long k = 1; k <= n_steps; ++k) {
        const double hk = (k <= n_full) ? h : rem;
        const double tau = (k <= n_full) ? static_cast<double>(k) * h : config.tau_max;
        switch (kind) {
        case ModelKind::SIR:
            y = rk4_step(y, hk, [&](const Y& v) { return sir_f(v, params.r0); });
            break;
        case ModelKind::ModifiedSIR:
            y = advance_modified(y, hk, params.r0, 0);
            break;
        case ModelKind::SI:
            y.i = rk4_scalar(y.i, hk, params.b());
            y.s = 1.0 - y.i;
            break;
        }
        append(tau);
        if (y.i < prev_i)
            ++dec_streak;
        else
            dec_streak = 0;
        prev_i = y.i;
        if (dec_streak >= kExtinctStreak && y.i < config.extinction_threshold) {
            traj.termination = Termination::InfectionExtinct;
            break;
        }
    }
    return traj;
}

namespace {

// cubic Hermite over one step, theta in [0,1]
struct Segment {
    double tau0;
    double width;
    State y0, y1;
    Deriv f0, f1;

    double comp(double theta, double a0, double a1, double d0, double d1) const {
        const double t2 = theta * theta;
        const double t3 = t2 * theta;
        return (2.0 * t3 - 3.0 * t2 + 1.0) * a0 + (t3 - 2.0 * t2 + theta) * width * d0 +
               (-2.0 * t3 + 3.0 * t2) * a1 + (t3 - t2) * width * d1;
    }

    double s(double theta) const { return comp(theta, y0.s, y1.s, f0.ds, f1.ds); }
    double i(double theta) const { return comp(theta, y0.i, y1.i, f0.di, f1.di); }
    double r(double theta) const { return comp(theta, y0.r, y1.r, f0.dr, f1.dr); }

    // d(i)/dtau of the interpolant
    double di(double theta) const {
        const double t2 = theta * theta;
        const double dtheta = (6.0 * t2 - 6.0 * theta) * y0.i +
                              (3.0 * t2 - 4.0 * theta + 1.0) * width * f0.di +
                              (-6.0 * t2 + 6.0 * theta) * y1.i + (3.0 * t2 - 2.0 * theta) * width * f1.di;
        return dtheta / width;
    }

    EventPoint at(double theta) const {
        const double tau = tau0 + theta * width;
        State st{tau, s(theta), i(theta), r(theta)};
        validate_state(st);
        return {tau, st};
    }
};

Segment segment(const Trajectory& traj, std::size_t k) {
    const State& a = traj.states[k];
    const State& b = traj.states[k + 1];
    return {a.tau, b.tau - a.tau, a, b, traj.derivs[k], traj.derivs[k + 1]};
}

template <typename G>
double refine(const Segment& seg, G g) {
    const double theta_tol = std::min(1.0, 1e-12 / seg.width);
    return bisect(g, 0.0, 1.0, theta_tol, 200).x;
}

} // namespace

EventPoint locate_event(const Trajectory& traj, const Event& ev) {
    const std::size_t n = traj.size();
    if (n < 2)
        throw EventNotFound("trajectory too short for event search");

    switch (ev.kind) {
    case Event::Kind::PeakOfI: {
        for (std::size_t k = 0; k + 1 < n; ++k) {
            const double d0 = traj.derivs[k].di;
            const double d1 = traj.derivs[k + 1].di;
            if (d0 == 0.0 && traj.states[k].i > traj.params.i0)
                return {traj.states[k].tau, traj.states[k]};
            if (d0 > 0.0 && d1 <= 0.0) {
                const Segment seg = segment(traj, k);
                const double theta = refine(seg, [&](double th) { return seg.di(th); });
                return seg.at(theta);
            }
        }
        throw EventNotFound("I has no interior maximum on this trajectory");
    }
    case Event::Kind::SCrossesValue: {
        const double v = ev.value;
        if (v > traj.states.front().s)
            throw EventNotFound("S never reaches " + std::to_string(v) + " (starts below it)");
        for (std::size_t k = 0; k + 1 < n; ++k) {
            if (traj.states[k].s == v)
                return {traj.states[k].tau, traj.states[k]};
            if (traj.states[k].s > v && traj.states[k + 1].s <= v) {
                const Segment seg = segment(traj, k);
                const double theta = refine(seg, [&](double th) { return seg.s(th) - v; });
                return seg.at(theta);
            }
        }
        if (traj.states.back().s == v)
            return {traj.states.back().tau, traj.states.back()};
        throw EventNotFound("S never falls to " + std::to_string(v));
    }
    case Event::Kind::IFallsBelow: {
        const double v = ev.value;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            if (traj.states[k].i >= v && traj.states[k + 1].i < v && traj.states[k + 1].i < traj.states[k].i) {
                const Segment seg = segment(traj, k);
                const double theta = refine(seg, [&](double th) { return seg.i(th) - v; });
                return seg.at(theta);
            }
        }
        throw EventNotFound("I never falls below " + std::to_string(v));
    }
    }
    throw EventNotFound("unknown event kind");
}

} // namespace epikit
