#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include "ncx2/density.hpp"

namespace ncx2 {

// Root of g_nu together with the bracket that certifies it.
struct CriticalLambda {
    double nu;
    double lambda_nu;
    std::pair<double, double> bracket;  // final bisection bracket, g < 0 < g
    double tol;
    std::size_t iterations;
};

struct ShapeReport {
    Params params;
    bool log_concave;
    bool decreasing;
    bool bimodal;
    bool convex_then_concave;
    std::optional<double> critical_lambda;  // present iff 0 < nu <= 2
};

inline constexpr double kDefaultCriticalTolerance = 1e-8;

// g_nu(lambda) = r_{nu/2}(t) - (lambda - 2) / t, t = sqrt(lambda (lambda + nu - 4)),
// for 0 < nu < 2 and lambda > 4 - nu. Negative below the critical noncentrality
// and positive above it.
double critical_g(double nu, double lambda);

// Unique root lambda_nu of g_nu by bisection, terminating when the bracket is
// narrower than `tol`. Results are memoized per (nu, tol); the cache is
// internally synchronized.
CriticalLambda critical_lambda(double nu, double tol = kDefaultCriticalTolerance);

// lambda_nu for 0 < nu < 2, and the limiting value 2 at nu = 2.
double critical_lambda_value(double nu, double tol = kDefaultCriticalTolerance);

// Four-way shape classification: log-concave (nu >= 2), decreasing
// (nu <= 2, lambda <= lambda_nu), bimodal (nu < 2, lambda > lambda_nu), and
// log-convex-then-log-concave (nu < 2, lambda > 0).
ShapeReport classify(const Params& p, double tol = kDefaultCriticalTolerance);

// Unique zero of l'' for 0 < nu < 2, lambda > 0; l'' > 0 to its left and
// < 0 to its right.
double inflection_point(const Params& p);

} // namespace ncx2
