#pragma once

#include <cmath>
#include <cstddef>

#include "ncx2/errors.hpp"

namespace ncx2::detail {

struct BisectResult {
    double root;
    double lo;
    double hi;
    std::size_t iterations;
};

// Bisection on [lo, hi] where sign(f(lo)) == -sign(f(hi)). `width_ok(lo, hi)`
// decides termination. Also stops once the midpoint can no longer split the
// bracket in floating point.
template <class F, class Stop>
BisectResult bisect(F&& f, double lo, double hi, Stop&& width_ok,
                    std::size_t max_iters = 400) {
    const bool lo_negative = f(lo) < 0.0;
    if (lo_negative == (f(hi) < 0.0)) {
        throw BracketError("bisect: endpoints do not straddle a sign change");
    }
    std::size_t iters = 0;
    while (!width_ok(lo, hi)) {
        if (iters == max_iters) {
            throw ConvergenceError("bisect: iteration cap reached");
        }
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) {
            break;
        }
        ++iters;
        if ((f(mid) < 0.0) == lo_negative) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return {lo + 0.5 * (hi - lo), lo, hi, iters};
}

} // namespace ncx2::detail
