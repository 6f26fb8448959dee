#pragma once

#include <vector>

#include "epikit/model.hpp"

namespace epikit {

struct IntegratorConfig {
    double h = 1e-3;
    double tau_max = 100.0;
    double extinction_threshold = 1e-9;
};

// Fixed-step RK4 output.  States sit on the uniform grid tau_k = k*h (the
// last step may be shorter to land exactly on tau_max); derivs[k] is the RHS
// at states[k], kept for dense output.
struct Trajectory {
    ModelParams params;
    ModelKind kind;
    double h;
    Termination termination;
    std::vector<State> states;
    std::vector<Deriv> derivs;

    const State& back() const { return states.back(); }
    std::size_t size() const { return states.size(); }
};

Trajectory integrate(const ModelParams& params, ModelKind kind, const IntegratorConfig& config);

struct Event {
    enum class Kind { PeakOfI, SCrossesValue, IFallsBelow };
    Kind kind;
    double value = 0.0;

    static Event peak_of_i() { return {Kind::PeakOfI, 0.0}; }
    static Event s_crosses(double v) { return {Kind::SCrossesValue, v}; }
    static Event i_falls_below(double v) { return {Kind::IFallsBelow, v}; }
};

struct EventPoint {
    double tau;
    State state;
};

// Cubic Hermite interpolation over the bracketing step, refined by bisection
// on the interpolant to 1e-12 in tau.
EventPoint locate_event(const Trajectory& traj, const Event& ev);

} // namespace epikit
