#pragma once

#include <cmath>
#include <string>

#include "epikit/errors.hpp"

namespace epikit {

struct RootResult {
    double x;
    int iterations;
};

// Bisection on [lo, hi]; f(lo) and f(hi) must have opposite signs (an exact
// zero at an endpoint is accepted).  Stops when the bracket is narrower than
// xtol or f hits zero exactly.
template <typename F>
RootResult bisect(F&& f, double lo, double hi, double xtol, int max_iter = 200) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return {lo, 0};
    if (fhi == 0.0) return {hi, 0};
    if ((flo > 0.0) == (fhi > 0.0))
        throw DomainError("bisect: no sign change on [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
    for (int it = 1; it <= max_iter; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo < xtol || mid == lo || mid == hi)
            return {mid, it};
        const double fm = f(mid);
        if (fm == 0.0) return {mid, it};
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    throw ConvergenceError("bisect: bracket not resolved in " + std::to_string(max_iter) +
                           " iterations");
}

} // namespace epikit
