#pragma once

#include <cstddef>

namespace ncx2 {

// Degrees of freedom nu > 0 and noncentrality lambda >= 0, both finite.
class Params {
public:
    Params(double nu, double lambda);

    double nu() const noexcept { return nu_; }
    double lambda() const noexcept { return lambda_; }

    // lambda below this is treated as the central distribution.
    static constexpr double kCentralThreshold = 1e-300;
    bool is_central() const noexcept { return lambda_ < kCentralThreshold; }

private:
    double nu_;
    double lambda_;
};

struct LogDensityDerivatives {
    double x;
    double l;   // log p(x)
    double d1;  // l'(x)
    double d2;  // l''(x)
    double d3;  // l'''(x)
};

struct SeriesEval {
    double value;
    std::size_t terms;  // Poisson terms summed, K + 1
};

// Relative agreement required between the two closed forms of l''.
inline constexpr double kSecondDerivativeAgreement = 1e-9;

// Central chi-squared density, evaluated in log space.
double central_density(double nu, double x);
double log_central_density(double nu, double x);

// Poisson mixture of central densities. Truncation is chosen so that the
// discarded tail (Poisson tail mass times a uniform bound on the remaining
// central densities) is below `tol` in absolute terms and negligible
// relative to the partial sum.
SeriesEval density_series(const Params& p, double x, double tol = 1e-15);

// Closed Bessel form, composed in log space. lambda = 0 routes to the
// central density.
double density_bessel(const Params& p, double x);
double log_density(const Params& p, double x);

// Log-density derivatives via the Bessel ratio r_{nu/2}(sqrt(lambda x)).
// lambda = 0 uses the central closed forms.
double log_density_d1(const Params& p, double x);

// Evaluates both closed forms (ratio-substituted and l'-substituted) and
// returns the first; throws ConsistencyError if they disagree beyond
// kSecondDerivativeAgreement.
double log_density_d2(const Params& p, double x);

double log_density_d3(const Params& p, double x);

LogDensityDerivatives log_density_derivatives(const Params& p, double x);

} // namespace ncx2
