#pragma once

#include <algorithm>
#include <cmath>

namespace ncx2 {

// Hybrid absolute/relative comparison: |a - b| <= tol * max(1, |a|, |b|).
inline bool within_tolerance(double a, double b, double tol) {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= tol * scale;
}

inline double hybrid_difference(double a, double b) {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) / scale;
}

} // namespace ncx2
