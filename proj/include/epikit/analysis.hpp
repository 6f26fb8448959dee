#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "epikit/model.hpp"

namespace epikit {

struct PeakReport {
    double s_star;
    double i_star;
    double r_star;
    std::optional<double> tau_star; // filled when located on a trajectory
};

enum class SolveMethod { FixedPoint, Bisection };

struct FinalSizeReport {
    double s_inf;
    double r_inf;
    int iterations;
    SolveMethod method;
    double residual; // |1 - r_inf - s0*exp(-r0*r_inf)|
};

struct FastestReport {
    double s;    // susceptible level at the fastest increase of new infections
    double i;
    double rate; // -dS/dtau there
};

struct IRateExtrema {
    double s_at_dimax; // where dI/dtau is largest (before the peak)
    double s_at_dimin; // where dI/dtau is most negative (after the peak)
};

struct RStarExtremum {
    double argmax_r0;
    double max_r_star;
};

struct SweepPoint {
    double r0;
    double r_inf;
};

// S* = 1/r0, R* = ln(r0*s0)/r0, I* = 1 - S* - R*.  Defined for r0*s0 >= 1;
// at equality the peak sits at the start (R* = 0).
PeakReport peak_values(const ModelParams& p);

// Root of 1 - R = S0*exp(-r0*R).  Bisection (default) brackets
// [max(i0, 1-1/r0), 1] and works for any r0 > 0; the fixed-point iteration
// g(R) = 1 - S0*exp(-r0*R) starts from 1 - 1/r0 and needs r0*s0 > 1.
FinalSizeReport final_size(const ModelParams& p, SolveMethod method = SolveMethod::Bisection);

std::vector<SweepPoint> final_size_sweep(std::vector<double> r0_grid, double s0);

// Solves r0 + 1 - 2*r0*S + ln(S/S0) = 0 on (1/r0, s0): the susceptible level
// where -dS/dtau peaks; there I = S - 1/r0 and rate = S*(r0*S - 1).
FastestReport fastest_new_infections(const ModelParams& p);

// The two roots of (r0*S - 1)^2 = r0^2 * S * I(S), bracketing S* = 1/r0;
// they are the points where dI/dtau is extremal.
IRateExtrema i_rate_extrema(const ModelParams& p);

// tau at which S first reaches s_target: integral of dS'/(r0*S'*I(S')) from
// s_target to s0, adaptive Gauss-Kronrod to 1e-10.  Refuses targets within
// 1e-6 of S_inf where the integrand blows up.
double tau_of_s(double s_target, const ModelParams& p);

// Evaluates R*(r0) over the grid, returns the grid argmax; also verifies the
// analytic extremum R*(e/s0) = s0/e to 1e-12.
RStarExtremum r_star_extremum_check(double s0, const std::vector<double>& r0_grid);

} // namespace epikit
