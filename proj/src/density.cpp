#include "ncx2/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ncx2/bessel.hpp"
#include "ncx2/errors.hpp"

namespace ncx2 {

namespace {

constexpr std::size_t kMaxSeriesTerms = 1000000;
constexpr double kSeriesRelativeTail = 1e-17;

void require_x(double x, const char* who) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError(std::string(who) + ": x must be finite and > 0");
    }
}

// Peak value of the central density with m = 2a + 2 >= 2 degrees of freedom,
// attained at x = m - 2: e^{-a} a^a / (2 Gamma(a + 1)). Decreasing in a.
double log_central_peak(double m) {
    const double a = 0.5 * m - 1.0;
    const double a_log_a = a > 0.0 ? a * std::log(a) : 0.0;
    return -a + a_log_a - std::numbers::ln2 - std::lgamma(a + 1.0);
}

struct RatioTerms {
    double d1;
    double d2;
};

// l' and l'' for lambda > 0 from one ratio evaluation.
RatioTerms ratio_terms(const Params& p, double x) {
    const double nu = p.nu();
    const double lambda = p.lambda();
    const double s = std::sqrt(lambda * x);
    const double r = bessel_ratio(BesselOrder{0.5 * nu}, s);
    const double root_ratio = std::sqrt(lambda / x);  // sqrt(lambda) / sqrt(x)

    const double d1 = -0.5 + (nu - 2.0) / (2.0 * x) + 0.5 * root_ratio * r;

    const double t0 = (2.0 - nu) / (2.0 * x * x);
    const double t1 = lambda / (4.0 * x);
    const double t2 = nu * root_ratio * r / (4.0 * x);
    const double t3 = lambda * r * r / (4.0 * x);
    const double d2_ratio_form = t0 + t1 - t2 - t3;

    const double u0 = (lambda + nu - 4.0) / (4.0 * x);
    const double u1 = d1 * (d1 + 1.0 - (nu - 4.0) / (2.0 * x));
    const double d2_slope_form = u0 - 0.25 - u1;

    // Relative to the largest summand: near the inflection point both forms
    // are tiny differences of large terms.
    const double scale = std::max({1.0, std::abs(t0), t1, std::abs(t2), t3, std::abs(u0),
                                   std::abs(u1)});
    if (std::abs(d2_ratio_form - d2_slope_form) > kSecondDerivativeAgreement * scale) {
        throw ConsistencyError("log_density_d2: closed forms disagree at x = " +
                               std::to_string(x));
    }
    return {d1, d2_ratio_form};
}

double third_derivative(const Params& p, double x, double d1, double d2) {
    const double nu = p.nu();
    const double lambda = p.lambda();
    return -(lambda + nu - 4.0 + 2.0 * (nu - 4.0) * d1) / (4.0 * x * x) -
           d2 * (2.0 * d1 + 1.0 - (nu - 4.0) / (2.0 * x));
}

} // namespace

Params::Params(double nu, double lambda) : nu_(nu), lambda_(lambda) {
    if (!std::isfinite(nu) || !(nu > 0.0)) {
        throw DomainError("Params: nu must be finite and > 0");
    }
    if (!std::isfinite(lambda) || !(lambda >= 0.0)) {
        throw DomainError("Params: lambda must be finite and >= 0");
    }
}

double log_central_density(double nu, double x) {
    if (!std::isfinite(nu) || !(nu > 0.0)) {
        throw DomainError("central_density: nu must be finite and > 0");
    }
    require_x(x, "central_density");
    const double half_nu = 0.5 * nu;
    return -0.5 * x + (half_nu - 1.0) * std::log(0.5 * x) - std::numbers::ln2 -
           std::lgamma(half_nu);
}

double central_density(double nu, double x) {
    return std::exp(log_central_density(nu, x));
}

SeriesEval density_series(const Params& p, double x, double tol) {
    require_x(x, "density_series");
    if (!(tol > 0.0)) {
        throw DomainError("density_series: tol must be > 0");
    }
    const double nu = p.nu();
    const double log_central0 = log_central_density(nu, x);
    if (p.is_central()) {
        return {std::exp(log_central0), 1};
    }

    const double half_lambda = 0.5 * p.lambda();
    const double log_half_lambda = std::log(half_lambda);
    const double log_half_x = std::log(0.5 * x);
    const double log_tol = std::log(tol);

    double log_weight = -half_lambda;  // log Poisson(k; lambda/2)
    double log_central = log_central0; // log p_{nu+2k,0}(x)
    // Running sum represented as exp(ref) * scaled.
    double ref = log_weight + log_central;
    double scaled = 1.0;

    for (std::size_t k = 0; k < kMaxSeriesTerms; ++k) {
        if (k > 0) {
            const double log_term = log_weight + log_central;
            if (log_term > ref) {
                scaled = scaled * std::exp(ref - log_term) + 1.0;
                ref = log_term;
            } else {
                scaled += std::exp(log_term - ref);
            }
        }

        const double next_k = static_cast<double>(k + 1);
        const double next_log_weight = log_weight + log_half_lambda - std::log(next_k);
        const double decay = half_lambda / (next_k + 1.0);
        if (decay < 1.0) {
            // Weights beyond K decay at least geometrically with ratio `decay`.
            const double log_tail_mass = next_log_weight - std::log1p(-decay);
            const double log_bound = log_tail_mass + log_central_peak(nu + 2.0 * next_k);
            const double log_sum = ref + std::log(scaled);
            const bool absolute_ok = log_bound < log_tol;
            const bool relative_ok = !std::isfinite(log_sum) ||
                                     log_bound < log_sum + std::log(kSeriesRelativeTail);
            if (absolute_ok && relative_ok) {
                return {std::exp(ref) * scaled, k + 1};
            }
        }
        log_weight = next_log_weight;
        log_central += log_half_x - std::log(0.5 * nu + static_cast<double>(k));
    }
    throw ConvergenceError("density_series: truncation point not reached");
}

double log_density(const Params& p, double x) {
    require_x(x, "log_density");
    if (p.is_central()) {
        return log_central_density(p.nu(), x);
    }
    const double nu = p.nu();
    const double lambda = p.lambda();
    return -std::numbers::ln2 - 0.5 * (x + lambda) +
           0.25 * (nu - 2.0) * (std::log(x) - std::log(lambda)) +
           log_bessel_i(BesselOrder{0.5 * (nu - 2.0)}, std::sqrt(lambda * x));
}

double density_bessel(const Params& p, double x) {
    return std::exp(log_density(p, x));
}

double log_density_d1(const Params& p, double x) {
    require_x(x, "log_density_d1");
    const double nu = p.nu();
    if (p.is_central()) {
        return -0.5 + (nu - 2.0) / (2.0 * x);
    }
    const double lambda = p.lambda();
    const double r = bessel_ratio(BesselOrder{0.5 * nu}, std::sqrt(lambda * x));
    return -0.5 + (nu - 2.0) / (2.0 * x) + 0.5 * std::sqrt(lambda / x) * r;
}

double log_density_d2(const Params& p, double x) {
    require_x(x, "log_density_d2");
    if (p.is_central()) {
        return (2.0 - p.nu()) / (2.0 * x * x);
    }
    return ratio_terms(p, x).d2;
}

double log_density_d3(const Params& p, double x) {
    require_x(x, "log_density_d3");
    if (p.is_central()) {
        return (p.nu() - 2.0) / (x * x * x);
    }
    const auto [d1, d2] = ratio_terms(p, x);
    return third_derivative(p, x, d1, d2);
}

LogDensityDerivatives log_density_derivatives(const Params& p, double x) {
    require_x(x, "log_density_derivatives");
    const double l = log_density(p, x);
    if (p.is_central()) {
        const double nu = p.nu();
        return {x, l, -0.5 + (nu - 2.0) / (2.0 * x), (2.0 - nu) / (2.0 * x * x),
                (nu - 2.0) / (x * x * x)};
    }
    const auto [d1, d2] = ratio_terms(p, x);
    return {x, l, d1, d2, third_derivative(p, x, d1, d2)};
}

} // namespace ncx2
