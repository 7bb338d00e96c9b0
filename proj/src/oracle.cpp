#include "ncx2/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "ncx2/errors.hpp"

namespace ncx2::oracle {

namespace {

constexpr double kQuadratureTolerance = 1e-9;
constexpr double kPanelRelativeTolerance = 1e-13;
constexpr unsigned kMaxDepth = 30;

double series_value(const Params& p, double x) {
    return density_series(p, x).value;
}

} // namespace

double finite_difference(const std::function<double(double)>& f, double x, int order, double h) {
    if (!(h > 0.0)) {
        throw DomainError("finite_difference: step must be > 0");
    }
    if (order < 1 || order > 3) {
        throw DomainError("finite_difference: order must be 1, 2 or 3");
    }
    const double reach = order == 3 ? 2.0 * h : order * h;
    if (!(x - reach > 0.0) || !std::isfinite(x + reach)) {
        throw DomainError("finite_difference: stencil leaves (0, inf)");
    }
    switch (order) {
    case 1:
        return (f(x + h) - f(x - h)) / (2.0 * h);
    case 2:
        return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
    default:
        return (f(x + 2.0 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2.0 * h)) /
               (2.0 * h * h * h);
    }
}

GridSpec default_mode_grid() {
    return {1e-4, 30.0, 20000, Spacing::log};
}

GridMaxima grid_local_maxima(const Params& p, const GridSpec& grid) {
    const auto xs = grid.abscissae();
    std::vector<double> values(xs.size());
    std::transform(xs.begin(), xs.end(), values.begin(),
                   [&p](double x) { return series_value(p, x); });

    GridMaxima result{{}, values[0] > values[1]};
    for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
        if (values[i] > values[i - 1] && values[i] > values[i + 1]) {
            result.interior.emplace_back(xs[i], values[i]);
        }
    }
    return result;
}

double adaptive_quadrature(const Params& p, int moment) {
    if (moment != 0 && moment != 1) {
        throw DomainError("adaptive_quadrature: moment must be 0 or 1");
    }
    using Integrator = boost::math::quadrature::gauss_kronrod<double, 15>;
    const auto weight = [moment](double x) { return moment == 1 ? x : 1.0; };

    double total = 0.0;
    double error_sum = 0.0;
    const auto accumulate = [&](auto&& f, double a, double b) {
        double error = 0.0;
        const double value =
            Integrator::integrate(f, a, b, kMaxDepth, kPanelRelativeTolerance, &error);
        total += value;
        error_sum += error;
        return value;
    };

    // First panel [0, a] under x = a s^q. With q = 2/nu the x^{nu/2 - 1}
    // endpoint behaviour of the density becomes bounded in s, but a
    // fractional power of s usually remains, so tanh-sinh handles this panel.
    const double a = 1.0;
    const double q = std::max(2.0, 2.0 / p.nu());
    {
        boost::math::quadrature::tanh_sinh<double> endpoint_rule;
        double error = 0.0;
        total += endpoint_rule.integrate(
            [&](double s) {
                const double x = a * std::pow(s, q);
                if (!(x > 0.0)) return 0.0;
                return weight(x) * series_value(p, x) * a * q * std::pow(s, q - 1.0);
            },
            0.0, 1.0, kPanelRelativeTolerance, &error);
        error_sum += error;
    }

    // Geometric panels until past the bulk and the contribution is negligible.
    const double bulk = p.nu() + p.lambda();
    double lo = a;
    for (int panel = 0;; ++panel) {
        if (panel == 200) {
            throw ConvergenceError("adaptive_quadrature: tail did not decay");
        }
        const double hi = 2.0 * lo;
        const double contribution =
            accumulate([&](double x) { return weight(x) * series_value(p, x); }, lo, hi);
        lo = hi;
        if (lo > 4.0 * bulk + 50.0 && std::abs(contribution) < 1e-16) {
            break;
        }
    }

    if (!(error_sum <= kQuadratureTolerance)) {
        throw ConvergenceError("adaptive_quadrature: error estimate " + std::to_string(error_sum) +
                               " exceeds tolerance");
    }
    return total;
}

} // namespace ncx2::oracle
