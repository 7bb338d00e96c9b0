#pragma once

// Modified Bessel function of the first kind I_mu(x) for real order mu > -1,
// its logarithm, and the ratio r_mu(x) = I_mu(x) / I_{mu-1}(x).
//
// Small arguments use the power series. Large arguments use the Hankel
// expansion of the exponentially scaled function e^{-x} I_mu(x), so the log
// and the ratio never form e^{x} explicitly. The crossover is
// x = 30 + 2|mu|, where both branches agree to better than 1e-12.
//
// All functions are pure and thread-safe.

namespace ncx2 {

class BesselOrder {
public:
    // Throws DomainError unless mu is finite and mu > -1.
    explicit BesselOrder(double mu);

    double value() const noexcept { return mu_; }

private:
    double mu_;
};

struct RatioEval {
    double x;
    double value;      // r_mu(x)
    double log_i_num;  // log I_mu(x)
    double log_i_den;  // log I_{mu-1}(x)
};

enum class AsymptoticRegime { small, large };

// Argument beyond which the large-x expansion replaces the series.
double bessel_series_crossover(BesselOrder order) noexcept;

// I_mu(x), x >= 0. Throws DomainError for x < 0 and std::overflow_error when
// the value is not representable (including mu < 0 at x = 0).
double bessel_i(BesselOrder order, double x);

// log I_mu(x), x > 0. Supports x up to at least 1e8.
double log_bessel_i(BesselOrder order, double x);

// r_mu(x) for mu > 0, x > 0. Series ratio below x = 1e-3, forward continued
// fraction up to the crossover, ratio of scaled Hankel sums beyond.
double bessel_ratio(BesselOrder order, double x);

// r_mu(x) together with the logs of the two Bessel values it relates.
RatioEval evaluate_ratio(BesselOrder order, double x);

// r'_mu(x) = 1 - (2 mu - 1) r_mu(x) / x - r_mu(x)^2.
double bessel_ratio_derivative(BesselOrder order, double x);

// Two-term expansions of r_mu(x) with nu = 2 mu:
//   small: x/nu - x^3 / (nu^2 (nu + 2))
//   large: 1 - (nu - 1) / (2x)
// Test oracle only; never used on production paths.
double ratio_asymptotic(BesselOrder order, double x, AsymptoticRegime regime);

} // namespace ncx2
