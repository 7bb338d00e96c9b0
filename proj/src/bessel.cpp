#include "ncx2/bessel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ncx2/detail/bessel_branches.hpp"
#include "ncx2/errors.hpp"

namespace ncx2 {

namespace {

constexpr double kSeriesRatioCutoff = 1e-3;
constexpr double kFractionTolerance = 1e-15;
constexpr int kFractionMaxIters = 10000;
constexpr double kSumEpsilon = 1e-17;

void require_positive_x(double x, const char* who) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError(std::string(who) + ": argument must be finite and > 0");
    }
}

// Normalized power series sum_k (x^2/4)^k / (k! (mu+1)_k); I_mu(x) is this
// times (x/2)^mu / Gamma(mu + 1). All terms are positive for mu > -1.
double normalized_series(double mu, double x) {
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 100000; ++k) {
        term *= q / (static_cast<double>(k) * (mu + k));
        sum += term;
        if (term < kSumEpsilon * sum) {
            return sum;
        }
    }
    throw ConvergenceError("bessel series did not converge");
}

// Hankel sum e^{-x} I_mu(x) sqrt(2 pi x) = sum_k (-1)^k a_k(mu) / x^k.
// Asymptotic: summation stops at the smallest term.
double hankel_sum(double mu, double x) {
    const double four_mu2 = 4.0 * mu * mu;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 1000; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = -term * (four_mu2 - odd * odd) / (8.0 * k * x);
        if (next == 0.0) {
            return sum;
        }
        // Terms may grow while 2k - 1 < 2|mu|; past that, growth means the
        // expansion has started to diverge.
        if (odd * odd > four_mu2 && std::abs(next) > std::abs(term)) {
            return sum;
        }
        term = next;
        sum += term;
        if (std::abs(term) < kSumEpsilon * std::abs(sum)) {
            return sum;
        }
    }
    return sum;
}

} // namespace

namespace detail {

double log_bessel_i_series(double mu, double x) {
    return mu * std::log(0.5 * x) - std::lgamma(mu + 1.0) + std::log(normalized_series(mu, x));
}

double log_bessel_i_asymptotic(double mu, double x) {
    return x - 0.5 * std::log(2.0 * std::numbers::pi * x) + std::log(hankel_sum(mu, x));
}

} // namespace detail

namespace {

// r_mu = 1 / (b_0 + 1 / (b_1 + ...)), b_k = 2 (mu + k) / x, modified Lentz.
double ratio_fraction(double mu, double x) {
    constexpr double tiny = 1e-300;
    double f = 2.0 * mu / x;
    double c = f;
    double d = 0.0;
    for (int k = 1; k <= kFractionMaxIters; ++k) {
        const double b = 2.0 * (mu + k) / x;
        d = b + d;
        if (d == 0.0) d = tiny;
        d = 1.0 / d;
        c = b + 1.0 / c;
        if (c == 0.0) c = tiny;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < kFractionTolerance) {
            return 1.0 / f;
        }
    }
    throw ConvergenceError("bessel_ratio: continued fraction hit the iteration cap");
}

double ratio_series(double mu, double x) {
    return x / (2.0 * mu) * normalized_series(mu, x) / normalized_series(mu - 1.0, x);
}

double ratio_impl(double mu, double x) {
    if (x < kSeriesRatioCutoff) {
        return ratio_series(mu, x);
    }
    if (x <= 30.0 + 2.0 * std::abs(mu)) {
        return ratio_fraction(mu, x);
    }
    return hankel_sum(mu, x) / hankel_sum(mu - 1.0, x);
}

void require_positive_order(BesselOrder order, const char* who) {
    if (!(order.value() > 0.0)) {
        throw DomainError(std::string(who) + ": order must be > 0");
    }
}

} // namespace

BesselOrder::BesselOrder(double mu) : mu_(mu) {
    if (!std::isfinite(mu) || !(mu > -1.0)) {
        throw DomainError("BesselOrder: order must be finite and > -1");
    }
}

double bessel_series_crossover(BesselOrder order) noexcept {
    return 30.0 + 2.0 * std::abs(order.value());
}

double bessel_i(BesselOrder order, double x) {
    const double mu = order.value();
    if (!(x >= 0.0) || std::isinf(x)) {
        throw DomainError("bessel_i: argument must be finite and >= 0");
    }
    if (x == 0.0) {
        if (mu == 0.0) return 1.0;
        if (mu > 0.0) return 0.0;
        throw std::overflow_error("bessel_i: I_mu(0) is infinite for mu < 0");
    }
    if (x <= bessel_series_crossover(order)) {
        const double prefactor = std::exp(mu * std::log(0.5 * x) - std::lgamma(mu + 1.0));
        const double value = prefactor * normalized_series(mu, x);
        if (std::isinf(value)) {
            throw std::overflow_error("bessel_i: result overflows");
        }
        return value;
    }
    const double log_value = detail::log_bessel_i_asymptotic(mu, x);
    if (log_value > std::log(std::numeric_limits<double>::max())) {
        throw std::overflow_error("bessel_i: result overflows; use log_bessel_i");
    }
    return std::exp(log_value);
}

double log_bessel_i(BesselOrder order, double x) {
    require_positive_x(x, "log_bessel_i");
    const double mu = order.value();
    if (x <= bessel_series_crossover(order)) {
        return detail::log_bessel_i_series(mu, x);
    }
    return detail::log_bessel_i_asymptotic(mu, x);
}

double bessel_ratio(BesselOrder order, double x) {
    require_positive_order(order, "bessel_ratio");
    require_positive_x(x, "bessel_ratio");
    return ratio_impl(order.value(), x);
}

RatioEval evaluate_ratio(BesselOrder order, double x) {
    const double value = bessel_ratio(order, x);
    return {x, value, log_bessel_i(order, x), log_bessel_i(BesselOrder{order.value() - 1.0}, x)};
}

double bessel_ratio_derivative(BesselOrder order, double x) {
    const double r = bessel_ratio(order, x);
    return 1.0 - (2.0 * order.value() - 1.0) * r / x - r * r;
}

double ratio_asymptotic(BesselOrder order, double x, AsymptoticRegime regime) {
    require_positive_x(x, "ratio_asymptotic");
    const double nu = 2.0 * order.value();
    if (regime == AsymptoticRegime::small) {
        if (!(nu > 0.0)) {
            throw DomainError("ratio_asymptotic: small-x form needs order > 0");
        }
        return x / nu - x * x * x / (nu * nu * (nu + 2.0));
    }
    return 1.0 - (nu - 1.0) / (2.0 * x);
}

} // namespace ncx2
