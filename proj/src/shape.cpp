#include "ncx2/shape.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "ncx2/bessel.hpp"
#include "ncx2/detail/bisect.hpp"
#include "ncx2/errors.hpp"

namespace ncx2 {

namespace {

void require_open_nu(double nu, const char* who) {
    if (!std::isfinite(nu) || !(nu > 0.0 && nu < 2.0)) {
        throw DomainError(std::string(who) + ": nu must lie in (0, 2)");
    }
}

CriticalLambda solve_critical(double nu, double tol) {
    const double floor = 4.0 - nu;
    const auto g = [nu](double lambda) { return critical_g(nu, lambda); };

    double delta = 1e-2;
    while (!(g(floor + delta) < 0.0)) {
        delta *= 0.5;
        if (floor + delta == floor) {
            throw BracketError("critical_lambda: no negative value of g near 4 - nu");
        }
    }
    const double lo = floor + delta;

    double hi = std::max(8.0, floor + 1.0);
    for (int doublings = 0; !(g(hi) > 0.0); ++doublings) {
        if (doublings == 64) {
            throw BracketError("critical_lambda: no positive value of g found");
        }
        hi *= 2.0;
    }

    const auto result = detail::bisect(
        g, lo, hi, [tol](double a, double b) { return b - a < tol; });
    return {nu, result.root, {result.lo, result.hi}, tol, result.iterations};
}

struct CacheKey {
    double nu;
    double tol;
    auto operator<=>(const CacheKey&) const = default;
};

std::mutex cache_mutex;
std::map<CacheKey, CriticalLambda> cache;

} // namespace

double critical_g(double nu, double lambda) {
    require_open_nu(nu, "critical_g");
    if (!std::isfinite(lambda) || !(lambda > 4.0 - nu)) {
        throw DomainError("critical_g: lambda must exceed 4 - nu");
    }
    const double t = std::sqrt(lambda * (lambda + nu - 4.0));
    return bessel_ratio(BesselOrder{0.5 * nu}, t) - (lambda - 2.0) / t;
}

CriticalLambda critical_lambda(double nu, double tol) {
    require_open_nu(nu, "critical_lambda");
    if (!(tol > 0.0) || !std::isfinite(tol)) {
        throw DomainError("critical_lambda: tol must be finite and > 0");
    }
    const CacheKey key{nu, tol};
    {
        std::lock_guard lock(cache_mutex);
        if (auto it = cache.find(key); it != cache.end()) {
            return it->second;
        }
    }
    // Solved outside the lock; concurrent misses compute identical values.
    CriticalLambda solved = solve_critical(nu, tol);
    std::lock_guard lock(cache_mutex);
    return cache.try_emplace(key, solved).first->second;
}

double critical_lambda_value(double nu, double tol) {
    if (nu == 2.0) {
        return 2.0;
    }
    return critical_lambda(nu, tol).lambda_nu;
}

ShapeReport classify(const Params& p, double tol) {
    const double nu = p.nu();
    const double lambda = p.lambda();
    ShapeReport report{p, nu >= 2.0, false, false, nu < 2.0 && !p.is_central(), std::nullopt};
    if (nu <= 2.0) {
        const double critical = critical_lambda_value(nu, tol);
        report.critical_lambda = critical;
        report.decreasing = lambda <= critical;
        report.bimodal = nu < 2.0 && lambda > critical;
    }
    return report;
}

double inflection_point(const Params& p) {
    const double nu = p.nu();
    if (!(nu > 0.0 && nu < 2.0) || p.is_central()) {
        throw DomainError("inflection_point: requires 0 < nu < 2 and lambda > 0");
    }
    const auto d2 = [&p](double x) { return log_density_d2(p, x); };

    double lo = 1.0;
    double hi = 1.0;
    if (d2(1.0) > 0.0) {
        while (!(d2(hi) < 0.0)) {
            hi *= 2.0;
            if (hi > 1e300) throw BracketError("inflection_point: l'' never turns negative");
        }
    } else {
        while (!(d2(lo) > 0.0)) {
            lo *= 0.5;
            if (lo < 1e-150) throw BracketError("inflection_point: l'' never turns positive");
        }
    }
    const auto result = detail::bisect(d2, lo, hi, [](double a, double b) {
        return b - a <= 1e-10 * std::max(1.0, b) && b - a <= 1e-14 * b;
    });
    return result.root;
}

} // namespace ncx2
