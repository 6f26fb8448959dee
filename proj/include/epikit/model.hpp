#pragma once

#include <vector>

#include "epikit/errors.hpp"

namespace epikit {

enum class ModelKind { SIR, SI, ModifiedSIR };

enum class Termination { InfectionExtinct, TauMaxReached };

// Parameters in rescaled time tau = a*t.  r0 = b/a is the basic reproduction
// number; the removal rate a only matters when converting back to physical
// time (and for the SI model, where the natural rate is b = r0*a).
struct ModelParams {
    double r0;
    double a = 1.0;
    double s0;
    double i0;

    double b() const { return r0 * a; }

    // s0+i0=1 is required; i0=0 (s0=1) is admitted so the analytic
    // operations can be evaluated in the S0=1 limit used throughout.
    void validate() const;
};

ModelParams make_params(double r0, double i0, double a = 1.0);
ModelParams make_params_s0(double r0, double s0, double i0, double a = 1.0);

struct State {
    double tau;
    double s;
    double i;
    double r;
};

// simplex check: |s+i+r-1| <= 1e-9, s > 0, i >= 0, r >= 0
void validate_state(const State& st);

struct Deriv {
    double ds;
    double di;
    double dr;
};

// dS = -r0*S*I, dI = (r0*S-1)*I, dR = I
Deriv sir_rhs(const State& st, const ModelParams& p);

// dS = -r0*sqrt(2S-1)*I, dI = (r0*sqrt(2S-1)-1)*I, dR = I.
// 2S-1 in [-1e-12, 0) is clamped to 0; below that is a domain error.
Deriv modified_rhs(const State& st, const ModelParams& p);

// r0*S for SIR, r0*sqrt(2S-1) for ModifiedSIR
double effective_r(double s, const ModelParams& p, ModelKind kind);

// S = S0*exp(-r0*R)
double s_of_r(double r, const ModelParams& p);

// R = -(1/r0)*ln(S/S0), inverse of s_of_r
double r_of_s(double s, const ModelParams& p);

// I = 1 - S + (1/r0)*ln(S/S0), valid for S in [S_inf, s0]
double i_of_s(double s, const ModelParams& p);

// modified model, S0 = 1: S = 1 - r0*R + (1/2)*(r0*R)^2
double modified_s_of_r(double r, const ModelParams& p);

} // namespace epikit
