#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "ncx2/errors.hpp"

namespace ncx2 {

enum class Spacing { linear, log };

struct GridSpec {
    double x_min;
    double x_max;
    std::size_t points;
    Spacing spacing = Spacing::linear;

    // Throws DomainError unless 0 < x_min < x_max (both finite) and points >= 3.
    void validate() const {
        if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_min > 0.0)) {
            throw DomainError("grid: x_min must be finite and > 0");
        }
        if (!(x_min < x_max)) {
            throw DomainError("grid: x_min must be below x_max");
        }
        if (points < 3) {
            throw DomainError("grid: at least 3 points are required");
        }
    }

    // Grid abscissae, endpoints included exactly.
    std::vector<double> abscissae() const {
        validate();
        std::vector<double> xs(points);
        const double last = static_cast<double>(points - 1);
        for (std::size_t i = 0; i < points; ++i) {
            const double t = static_cast<double>(i) / last;
            xs[i] = spacing == Spacing::linear
                        ? x_min + t * (x_max - x_min)
                        : std::exp(std::log(x_min) + t * (std::log(x_max) - std::log(x_min)));
        }
        xs.front() = x_min;
        xs.back() = x_max;
        return xs;
    }
};

} // namespace ncx2
