#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ncx2/density.hpp"
#include "ncx2/shape.hpp"

namespace ncx2 {

// Which bound supplied `lower` in ModeBounds. In the bimodal regime the lower
// bound is always lambda + nu - 4 and the distinguishing bound is the strict
// upper bound lambda + nu - 3, so that regime is reported as `bimodal`.
enum class BoundSource { loose, nu_ge_2, nu_gt_3, bimodal };

std::string_view to_string(BoundSource source) noexcept;

// Bounds on the interior mode M:
//   always               lambda + nu - 4 < M
//   nu >= 2              (nu - 2)(1 + lambda/nu) <= M <= lambda + nu - 2
//   nu > 3               lambda + nu - 3 < M
//   nu < 2, bimodal      M < lambda + nu - 3
struct ModeBounds {
    double lower;
    bool lower_strict;
    double upper;
    bool upper_strict;
    BoundSource source;

    bool contains(double mode) const noexcept {
        const bool above = lower_strict ? mode > lower : mode >= lower;
        const bool below = upper_strict ? mode < upper : mode <= upper;
        return above && below;
    }
};

struct ModeReport {
    Params params;
    bool zero_is_mode;
    std::optional<double> interior_mode;
    std::optional<double> antimode;
    std::optional<double> inflection;    // present iff 0 < nu < 2, lambda > 0
    std::optional<ModeBounds> bounds;    // present iff interior_mode is
};

// True when an interior mode exists: nu > 2, or nu = 2 and lambda > 2, or
// nu < 2 and lambda > lambda_nu.
bool has_interior_mode(const Params& p);

// Interior mode M(nu, lambda) by bisection on l', or nullopt when none exists.
std::optional<double> interior_mode(const Params& p);

// Local minimum of the density between the zero mode and the interior mode;
// nullopt unless bimodal.
std::optional<double> antimode(const Params& p);

// Throws DomainError when no interior mode exists.
ModeBounds mode_bounds(const Params& p);

ModeReport analyze_modes(const Params& p);

// M(nu, lambda) for each lambda; throws DomainError if any has no interior mode.
std::vector<double> mode_monotonicity_probe(double nu, std::span<const double> lambdas);

// h(lambda) = r_{nu/2}(sqrt(lambda z)) - (lambda - 1) / sqrt(lambda z),
// z = lambda + nu - 3. Has the sign of l'(z).
double prop2_h(double nu, double lambda);

// r_{nu/2}(sqrt(4 - nu)) - (3 - nu) / sqrt(4 - nu): the limit of h as lambda
// approaches 4 - nu. Negative on (0, 2).
double eq12_limit(double nu);

struct Eq12Report {
    double max_value;
    double argmax_nu;
    std::size_t evaluated;
    bool all_negative;
};

Eq12Report verify_eq12_negative(std::span<const double> nus);

} // namespace ncx2
