#include "epikit/model.hpp"

#include <cmath>
#include <string>

namespace epikit {

namespace {
constexpr double kSimplexTol = 1e-9;
constexpr double kParamTol = 1e-12;
constexpr double kSqrtClamp = 1e-12;
} // namespace

void ModelParams::validate() const {
    if (!(r0 > 0.0) || !std::isfinite(r0))
        throw DomainError("r0 must be positive, got " + std::to_string(r0));
    if (!(a > 0.0) || !std::isfinite(a))
        throw DomainError("a must be positive, got " + std::to_string(a));
    if (!(i0 >= 0.0) || !(i0 < 1.0))
        throw DomainError("i0 must lie in [0,1), got " + std::to_string(i0));
    if (!(s0 > 0.0) || !(s0 <= 1.0))
        throw DomainError("s0 must lie in (0,1], got " + std::to_string(s0));
    if (std::abs(s0 + i0 - 1.0) > kParamTol)
        throw DomainError("s0 + i0 must equal 1");
}

ModelParams make_params(double r0, double i0, double a) {
    ModelParams p{r0, a, 1.0 - i0, i0};
    p.validate();
    return p;
}

ModelParams make_params_s0(double r0, double s0, double i0, double a) {
    ModelParams p{r0, a, s0, i0};
    p.validate();
    return p;
}

void validate_state(const State& st) {
    if (std::abs(st.s + st.i + st.r - 1.0) > kSimplexTol)
        throw DomainError("state off the S+I+R=1 simplex at tau=" + std::to_string(st.tau));
    if (!(st.s > 0.0) || st.i < 0.0 || st.r < 0.0)
        throw DomainError("state has a negative component at tau=" + std::to_string(st.tau));
}

Deriv sir_rhs(const State& st, const ModelParams& p) {
    const double flow = p.r0 * st.s * st.i;
    return {-flow, flow - st.i, st.i};
}

Deriv modified_rhs(const State& st, const ModelParams& p) {
    double x = 2.0 * st.s - 1.0;
    if (x < 0.0) {
        if (x < -kSqrtClamp)
            throw DomainError("modified model needs S >= 1/2, got S=" + std::to_string(st.s));
        x = 0.0;
    }
    const double flow = p.r0 * std::sqrt(x) * st.i;
    return {-flow, flow - st.i, st.i};
}

double effective_r(double s, const ModelParams& p, ModelKind kind) {
    if (!(s > 0.0) || s > 1.0)
        throw DomainError("effective_r needs s in (0,1]");
    if (kind == ModelKind::ModifiedSIR) {
        const double x = 2.0 * s - 1.0;
        if (x < 0.0)
            throw DomainError("modified effective_r needs s >= 1/2");
        return p.r0 * std::sqrt(x);
    }
    return p.r0 * s;
}

double s_of_r(double r, const ModelParams& p) {
    return p.s0 * std::exp(-p.r0 * r);
}

double r_of_s(double s, const ModelParams& p) {
    if (!(s > 0.0) || s > p.s0 * (1.0 + kParamTol))
        throw DomainError("r_of_s needs s in (0, s0]");
    return -std::log(s / p.s0) / p.r0;
}

double i_of_s(double s, const ModelParams& p) {
    if (!(s > 0.0) || s > p.s0 * (1.0 + kParamTol))
        throw DomainError("i_of_s needs s in (S_inf, s0]");
    const double i = 1.0 - s + std::log(s / p.s0) / p.r0;
    // below S_inf the expression goes negative; allow rounding-level slack
    if (i < -kSimplexTol)
        throw DomainError("i_of_s: s below the final size S_inf");
    return i;
}

double modified_s_of_r(double r, const ModelParams& p) {
    const double x = p.r0 * r;
    if (x < 0.0 || x > 1.0 + kParamTol)
        throw DomainError("modified_s_of_r needs 0 <= r0*r <= 1");
    return 1.0 - x + 0.5 * x * x;
}

} // namespace epikit
