#include "ncx2/modes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ncx2/bessel.hpp"
#include "ncx2/detail/bisect.hpp"
#include "ncx2/errors.hpp"

namespace ncx2 {

namespace {

// The mode bounds can be attained (lambda = 0), so they are widened before use.
constexpr double kBracketInflation = 1e-6;

bool position_converged(double lo, double hi) {
    return hi - lo <= 1e-10 * std::max(1.0, hi) && hi - lo <= 1e-14 * hi;
}

bool is_bimodal(const Params& p) {
    return p.nu() < 2.0 && p.lambda() > critical_lambda_value(p.nu());
}

double grow_until_negative_slope(const Params& p, double x) {
    while (!(log_density_d1(p, x) < 0.0)) {
        x *= 2.0;
        if (x > 1e300) throw BracketError("mode search: l' never turns negative");
    }
    return x;
}

double log_concave_mode(const Params& p) {
    const double nu = p.nu();
    const double lambda = p.lambda();
    const double lower = (nu - 2.0) * (1.0 + lambda / nu);
    const double upper = lambda + nu - 2.0;

    double lo = lower - kBracketInflation * std::max(1.0, lower);
    if (!(lo > 0.0)) {
        lo = lower > 0.0 ? 0.5 * lower : 1e-12;
    }
    while (!(log_density_d1(p, lo) > 0.0)) {
        lo *= 0.5;
        if (lo < 1e-290) throw BracketError("interior_mode: l' never turns positive");
    }
    const double hi =
        grow_until_negative_slope(p, upper + kBracketInflation * std::max(1.0, upper));

    const auto d1 = [&p](double x) { return log_density_d1(p, x); };
    return detail::bisect(d1, lo, hi, position_converged).root;
}

double bimodal_mode(const Params& p, double inflection) {
    const double hi = grow_until_negative_slope(p, 2.0 * inflection);
    const auto d1 = [&p](double x) { return log_density_d1(p, x); };
    return detail::bisect(d1, inflection, hi, position_converged).root;
}

double bimodal_antimode(const Params& p, double inflection) {
    double lo = 0.5 * inflection;
    while (!(log_density_d1(p, lo) < 0.0)) {
        lo *= 0.5;
        if (lo < 1e-290) throw BracketError("antimode: l' never turns negative near zero");
    }
    const auto d1 = [&p](double x) { return log_density_d1(p, x); };
    return detail::bisect(d1, lo, inflection, position_converged).root;
}

} // namespace

std::string_view to_string(BoundSource source) noexcept {
    switch (source) {
    case BoundSource::loose: return "loose";
    case BoundSource::nu_ge_2: return "nu_ge_2";
    case BoundSource::nu_gt_3: return "nu_gt_3";
    case BoundSource::bimodal: return "bimodal";
    }
    return "unknown";
}

bool has_interior_mode(const Params& p) {
    const double nu = p.nu();
    if (nu > 2.0) return true;
    if (nu == 2.0) return p.lambda() > 2.0;
    return is_bimodal(p);
}

std::optional<double> interior_mode(const Params& p) {
    if (p.nu() >= 2.0) {
        if (!has_interior_mode(p)) return std::nullopt;
        return log_concave_mode(p);
    }
    if (!is_bimodal(p)) return std::nullopt;
    return bimodal_mode(p, inflection_point(p));
}

std::optional<double> antimode(const Params& p) {
    if (!is_bimodal(p)) return std::nullopt;
    return bimodal_antimode(p, inflection_point(p));
}

ModeBounds mode_bounds(const Params& p) {
    if (!has_interior_mode(p)) {
        throw DomainError("mode_bounds: no interior mode for these parameters");
    }
    const double nu = p.nu();
    const double lambda = p.lambda();
    const double loose = lambda + nu - 4.0;

    if (nu < 2.0) {
        return {loose, true, lambda + nu - 3.0, true, BoundSource::bimodal};
    }

    ModeBounds bounds{loose, true, lambda + nu - 2.0, false, BoundSource::loose};
    const double sen_lower = (nu - 2.0) * (1.0 + lambda / nu);
    if (sen_lower >= bounds.lower) {
        bounds.lower = sen_lower;
        bounds.lower_strict = false;
        bounds.source = BoundSource::nu_ge_2;
    }
    if (nu > 3.0) {
        const double shifted = lambda + nu - 3.0;
        if (shifted >= bounds.lower) {
            bounds.lower = shifted;
            bounds.lower_strict = true;
            bounds.source = BoundSource::nu_gt_3;
        }
    }
    return bounds;
}

ModeReport analyze_modes(const Params& p) {
    const double nu = p.nu();
    ModeReport report{p, nu < 2.0 || (nu == 2.0 && p.lambda() <= 2.0),
                      std::nullopt, std::nullopt, std::nullopt, std::nullopt};
    if (nu < 2.0 && !p.is_central()) {
        report.inflection = inflection_point(p);
    }
    if (nu >= 2.0) {
        if (has_interior_mode(p)) report.interior_mode = log_concave_mode(p);
    } else if (is_bimodal(p)) {
        report.interior_mode = bimodal_mode(p, *report.inflection);
        report.antimode = bimodal_antimode(p, *report.inflection);
    }
    if (report.interior_mode) {
        report.bounds = mode_bounds(p);
    }
    return report;
}

std::vector<double> mode_monotonicity_probe(double nu, std::span<const double> lambdas) {
    std::vector<double> modes;
    modes.reserve(lambdas.size());
    for (double lambda : lambdas) {
        const auto mode = interior_mode(Params{nu, lambda});
        if (!mode) {
            throw DomainError("mode_monotonicity_probe: no interior mode at lambda = " +
                              std::to_string(lambda));
        }
        modes.push_back(*mode);
    }
    return modes;
}

double prop2_h(double nu, double lambda) {
    if (!std::isfinite(nu) || !(nu > 0.0)) {
        throw DomainError("prop2_h: nu must be finite and > 0");
    }
    const double z = lambda + nu - 3.0;
    if (!std::isfinite(lambda) || !(lambda > std::max(0.0, 3.0 - nu)) || !(lambda * z > 0.0)) {
        throw DomainError("prop2_h: lambda must exceed max(0, 3 - nu)");
    }
    const double s = std::sqrt(lambda * z);
    return bessel_ratio(BesselOrder{0.5 * nu}, s) - (lambda - 1.0) / s;
}

double eq12_limit(double nu) {
    if (!std::isfinite(nu) || !(nu > 0.0 && nu < 2.0)) {
        throw DomainError("eq12_limit: nu must lie in (0, 2)");
    }
    const double s = std::sqrt(4.0 - nu);
    return bessel_ratio(BesselOrder{0.5 * nu}, s) - (3.0 - nu) / s;
}

Eq12Report verify_eq12_negative(std::span<const double> nus) {
    Eq12Report report{-std::numeric_limits<double>::infinity(),
                      std::numeric_limits<double>::quiet_NaN(), 0, true};
    for (double nu : nus) {
        const double value = eq12_limit(nu);
        ++report.evaluated;
        if (value > report.max_value) {
            report.max_value = value;
            report.argmax_nu = nu;
        }
        report.all_negative = report.all_negative && value < 0.0;
    }
    return report;
}

} // namespace ncx2
