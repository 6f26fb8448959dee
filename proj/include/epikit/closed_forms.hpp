#pragma once

#include <vector>

#include "epikit/integrate.hpp"
#include "epikit/model.hpp"

namespace epikit {

// I(t) = 1/2 + (1/2)tanh(b(t-t*)/2): the SI model in physical time
struct LogisticSolution {
    double b;
    double t_star;

    void validate() const;
};

struct SiPoint {
    double i;
    double di_dt;
};

SiPoint si_solution(const LogisticSolution& sol, double t);

// t = t* + (1/b)*ln(i/(1-i)), inverse of the tanh profile
double si_time_of_i(const LogisticSolution& sol, double i);

// places t* so that I(0) = i0, with b = r0*a
LogisticSolution calibrate_logistic(const ModelParams& p);

// R(tau) = (1/r0)(1-1/r0)(1+tanh(z)), I(tau) = (1/2)(1-1/r0)^2 sech^2(z),
// z = (r0-1)(tau-tau*)/2
struct ModifiedClosedForm {
    double r0;
    double tau_star;

    void validate() const;
};

struct SirPoint {
    double s;
    double i;
    double r;
};

SirPoint modified_solution(const ModifiedClosedForm& cf, double tau);

struct ModifiedFinal {
    double r_inf;  // 2*(1/r0)*(1-1/r0), at most 1/2
    double i_peak; // (1/2)*(1-1/r0)^2
};

ModifiedFinal modified_final_values(double r0);

// places tau* on the pre-peak branch so that I(0) = i0
ModifiedClosedForm calibrate_tau_star(double r0, double i0);

struct CompareRow {
    double tau;
    double i_sir;
    double i_modified;
};

struct CompareTable {
    std::vector<CompareRow> rows;
    double max_abs_diff;
    double r_final_sir;
    double r_final_modified;
};

// SIR integration against the calibrated modified closed form on the same grid
CompareTable compare_models(double r0, double i0, const IntegratorConfig& config);

} // namespace epikit
