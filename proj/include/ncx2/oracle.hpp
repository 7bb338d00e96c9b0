#pragma once

// Brute-force references for the test suites. Everything here evaluates the
// density through the Poisson-mixture series only, so the Bessel-form path
// stays independent until the two are compared.

#include <functional>
#include <utility>
#include <vector>

#include "ncx2/density.hpp"
#include "ncx2/grid.hpp"

namespace ncx2::oracle {

// Central difference estimate of the order-th derivative (order 1..3), error
// O(h^2). Throws DomainError if the stencil leaves (0, inf).
double finite_difference(const std::function<double(double)>& f, double x, int order, double h);

struct GridMaxima {
    std::vector<std::pair<double, double>> interior;  // (x, density) strict local maxima
    bool boundary_max;  // density decreases from the first grid point: proxy for a mode at 0
};

GridMaxima grid_local_maxima(const Params& p, const GridSpec& grid);

// Log-spaced 1e-4 .. 30, 20000 points.
GridSpec default_mode_grid();

// Integral over (0, inf) of x^moment p(x), moment in {0, 1}, absolute
// tolerance 1e-9. Throws ConvergenceError if the error estimate exceeds it.
double adaptive_quadrature(const Params& p, int moment);

} // namespace ncx2::oracle
