#include "epikit/closed_forms.hpp"

#include <cmath>
#include <string>

namespace epikit {

void LogisticSolution::validate() const {
    if (!(b > 0.0) || !std::isfinite(b))
        throw DomainError("logistic rate b must be positive");
    if (!std::isfinite(t_star))
        throw DomainError("logistic t_star must be finite");
}

SiPoint si_solution(const LogisticSolution& sol, double t) {
    sol.validate();
    const double z = 0.5 * sol.b * (t - sol.t_star);
    const double c = std::cosh(z);
    return {0.5 + 0.5 * std::tanh(z), 0.25 * sol.b / (c * c)};
}

double si_time_of_i(const LogisticSolution& sol, double i) {
    sol.validate();
    if (!(i > 0.0) || !(i < 1.0))
        throw DomainError("si_time_of_i needs i strictly inside (0,1)");
    return sol.t_star + std::log(i / (1.0 - i)) / sol.b;
}

LogisticSolution calibrate_logistic(const ModelParams& p) {
    p.validate();
    if (!(p.i0 > 0.0))
        throw DomainError("calibrate_logistic needs i0 > 0");
    const double b = p.b();
    return {b, std::log((1.0 - p.i0) / p.i0) / b};
}

void ModifiedClosedForm::validate() const {
    if (!(r0 > 1.0))
        throw DomainError("modified closed form needs r0 > 1");
    if (!std::isfinite(tau_star))
        throw DomainError("tau_star must be finite");
}

SirPoint modified_solution(const ModifiedClosedForm& cf, double tau) {
    cf.validate();
    const double q = 1.0 - 1.0 / cf.r0;
    const double z = 0.5 * (cf.r0 - 1.0) * (tau - cf.tau_star);
    const double c = std::cosh(z);
    const double r = (q / cf.r0) * (1.0 + std::tanh(z));
    const double i = 0.5 * q * q / (c * c);
    return {1.0 - i - r, i, r};
}

ModifiedFinal modified_final_values(double r0) {
    if (!(r0 > 1.0))
        throw DomainError("modified model needs r0 > 1");
    const double q = 1.0 - 1.0 / r0;
    return {2.0 * q / r0, 0.5 * q * q};
}

ModifiedClosedForm calibrate_tau_star(double r0, double i0) {
    const ModifiedFinal fv = modified_final_values(r0);
    if (!(i0 > 0.0))
        throw DomainError("calibrate_tau_star needs i0 > 0");
    if (i0 > fv.i_peak)
        throw DomainError("calibrate_tau_star: i0 exceeds the closed-form peak " +
                          std::to_string(fv.i_peak));
    // sech^2(-(r0-1)tau*/2) = i0/i_peak, pre-peak branch
    const double tau_star = 2.0 / (r0 - 1.0) * std::acosh(std::sqrt(fv.i_peak / i0));
    return {r0, tau_star};
}

CompareTable compare_models(double r0, double i0, const IntegratorConfig& config) {
    const ModelParams p = make_params(r0, i0);
    if (!(r0 * p.s0 > 1.0))
        throw NoEpidemicError("no epidemic: r0*S0 <= 1");
    const ModifiedClosedForm cf = calibrate_tau_star(r0, i0);
    const Trajectory traj = integrate(p, ModelKind::SIR, config);

    CompareTable table{{}, 0.0, traj.back().r, modified_solution(cf, traj.back().tau).r};
    table.rows.reserve(traj.size());
    for (const State& st : traj.states) {
        const double i_mod = modified_solution(cf, st.tau).i;
        table.rows.push_back({st.tau, st.i, i_mod});
        table.max_abs_diff = std::max(table.max_abs_diff, std::abs(st.i - i_mod));
    }
    return table;
}

} // namespace epikit
