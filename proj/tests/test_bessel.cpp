#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

#include "ncx2/bessel.hpp"
#include "ncx2/detail/bessel_branches.hpp"
#include "ncx2/errors.hpp"
#include "ncx2/oracle.hpp"
#include "test_support.hpp"

using namespace ncx2;
using ncx2::testing::log_grid;

namespace {

// Direct power series in long double, summed to machine convergence.
long double series_oracle(long double mu, long double x) {
    const long double q = x * x / 4.0L;
    long double term = std::pow(x / 2.0L, mu) / std::tgamma(mu + 1.0L);
    long double sum = term;
    for (int k = 1; k < 2000; ++k) {
        term *= q / (k * (mu + k));
        sum += term;
        if (term < 1e-21L * sum) break;
    }
    return sum;
}

double half_order_i(double x) {
    return std::sqrt(2.0 / (std::numbers::pi * x)) * std::sinh(x);
}

} // namespace

TEST_CASE("bessel_i: worked examples") {
    CHECK(bessel_i(BesselOrder{0.0}, 0.0) == 1.0);
    CHECK(bessel_i(BesselOrder{0.5}, 1.0) == doctest::Approx(half_order_i(1.0)).epsilon(1e-14));
    CHECK(bessel_i(BesselOrder{0.5}, 1.0) == doctest::Approx(0.937674).epsilon(1e-6));
    const double oracle = static_cast<double>(series_oracle(1.0L, 2.0L));
    CHECK(bessel_i(BesselOrder{1.0}, 2.0) == doctest::Approx(oracle).epsilon(1e-14));
    CHECK(bessel_i(BesselOrder{1.0}, 2.0) == doctest::Approx(1.590637).epsilon(1e-6));
}

TEST_CASE("bessel_i: agrees with the long-double series across orders") {
    for (double mu : {-0.9, -0.75, -0.5, -0.25, 0.0, 0.25, 1.0, 2.5, 4.0}) {
        for (double x : log_grid(1e-3, 25.0, 40)) {
            const double expected = static_cast<double>(series_oracle(mu, x));
            CHECK(bessel_i(BesselOrder{mu}, x) == doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("bessel_i: domain and overflow errors") {
    CHECK_THROWS_AS(BesselOrder{-1.0}, DomainError);
    CHECK_THROWS_AS(BesselOrder{-1.5}, DomainError);
    CHECK_THROWS_AS(BesselOrder{std::nan("")}, DomainError);
    CHECK_THROWS_AS(bessel_i(BesselOrder{0.0}, -1.0), DomainError);
    CHECK_THROWS_AS(bessel_i(BesselOrder{-0.5}, 0.0), std::overflow_error);
    CHECK_THROWS_AS(bessel_i(BesselOrder{0.0}, 800.0), std::overflow_error);
    CHECK(bessel_i(BesselOrder{2.0}, 0.0) == 0.0);
}

TEST_CASE("log_bessel_i: examples and large arguments") {
    CHECK(log_bessel_i(BesselOrder{0.0}, 1e-8) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(log_bessel_i(BesselOrder{0.5}, 1.0) == doctest::Approx(std::log(half_order_i(1.0))).epsilon(1e-14));
    CHECK(log_bessel_i(BesselOrder{0.5}, 1.0) == doctest::Approx(-0.0643520).epsilon(1e-5));

    // Leading asymptotic e^x / sqrt(2 pi x) times the first Hankel corrections.
    const double x = 700.0;
    const double leading = x - 0.5 * std::log(2.0 * std::numbers::pi * x);
    const double corrected = leading + std::log1p(1.0 / (8.0 * x) + 9.0 / (128.0 * x * x));
    const double value = log_bessel_i(BesselOrder{0.0}, x);
    CHECK(std::isfinite(value));
    CHECK(value == doctest::Approx(corrected).epsilon(1e-12));
    // mpmath, 40 digits.
    CHECK(value == doctest::Approx(695.8056999984434490768).epsilon(1e-14));
    CHECK(log_bessel_i(BesselOrder{0.0}, 1e8) == doctest::Approx(99999989.87072109606914).epsilon(1e-14));
    CHECK(log_bessel_i(BesselOrder{3.5}, 1e4) == doctest::Approx(9994.475291250810237).epsilon(1e-14));
    CHECK(log_bessel_i(BesselOrder{-0.25}, 1e-3) == doctest::Approx(1.696944996787526806).epsilon(1e-14));

    CHECK_THROWS_AS(log_bessel_i(BesselOrder{0.0}, 0.0), DomainError);
    CHECK_THROWS_AS(log_bessel_i(BesselOrder{0.0}, -2.0), DomainError);
}

TEST_CASE("log_bessel_i: series and asymptotic branches agree in the crossover band") {
    for (double mu : {-0.75, -0.25, 0.0, 0.5, 1.0, 2.0, 4.0}) {
        const double crossover = bessel_series_crossover(BesselOrder{mu});
        for (double x = crossover - 5.0; x <= crossover + 5.0; x += 0.5) {
            const double series = detail::log_bessel_i_series(mu, x);
            const double asymptotic = detail::log_bessel_i_asymptotic(mu, x);
            // Absolute difference of logs is the relative difference of values.
            CHECK(std::abs(series - asymptotic) <= 1e-12);
        }
    }
}

TEST_CASE("bessel_ratio: examples") {
    CHECK(bessel_ratio(BesselOrder{0.5}, 1.0) == doctest::Approx(std::tanh(1.0)).epsilon(1e-14));

    const double small = bessel_ratio(BesselOrder{1.0}, 0.001);
    CHECK(small == doctest::Approx(0.0005).epsilon(1e-6));
    const double small_oracle =
        static_cast<double>(series_oracle(1.0L, 0.001L) / series_oracle(0.0L, 0.001L));
    CHECK(small == doctest::Approx(small_oracle).epsilon(1e-13));

    const double large = bessel_ratio(BesselOrder{1.0}, 100.0);
    CHECK(large == doctest::Approx(0.995).epsilon(1e-4));
    CHECK(large == doctest::Approx(0.99498737300516876559).epsilon(1e-13));
}

TEST_CASE("bessel_ratio: mpmath reference values") {
    struct Case { double mu, x, expected; };
    // mpmath besseli(mu, x) / besseli(mu - 1, x) at 40 digits.
    const Case cases[] = {
        {1.0, 0.001, 0.0004999999375000104166648763},
        {1.0, 100.0, 0.9949873730051687655874},
        {0.25, 3.0, 1.108139977351985883969},
        {2.5, 40.0, 0.9506410256410256410256},
        {5.0, 1.0, 0.09917838239971255864865},
        {0.75, 1e4, 0.9999749990624062354951},
        {10.0, 60.0, 0.8530071544229818712038},
    };
    for (const auto& c : cases) {
        CAPTURE(c.mu);
        CAPTURE(c.x);
        CHECK(bessel_ratio(BesselOrder{c.mu}, c.x) == doctest::Approx(c.expected).epsilon(1e-12));
    }
}

TEST_CASE("bessel_ratio: errors") {
    CHECK_THROWS_AS(bessel_ratio(BesselOrder{0.0}, 1.0), DomainError);
    CHECK_THROWS_AS(bessel_ratio(BesselOrder{-0.5}, 1.0), DomainError);
    CHECK_THROWS_AS(bessel_ratio(BesselOrder{1.0}, 0.0), DomainError);
    CHECK_THROWS_AS(bessel_ratio(BesselOrder{1.0}, -1.0), DomainError);
}

TEST_CASE("evaluate_ratio: value matches the difference of logs") {
    for (double mu : {0.25, 0.5, 1.0, 3.0}) {
        for (double x : log_grid(1e-2, 500.0, 25)) {
            const auto eval = evaluate_ratio(BesselOrder{mu}, x);
            CHECK(eval.value > 0.0);
            CHECK(eval.value == doctest::Approx(std::exp(eval.log_i_num - eval.log_i_den)).epsilon(1e-12));
        }
    }
}

TEST_CASE("bessel_ratio_derivative: examples and finite differences") {
    const double sech = 1.0 / std::cosh(1.0);
    CHECK(bessel_ratio_derivative(BesselOrder{0.5}, 1.0) == doctest::Approx(sech * sech).epsilon(1e-13));
    CHECK(bessel_ratio_derivative(BesselOrder{0.5}, 1.0) == doctest::Approx(0.419974).epsilon(1e-6));
    CHECK(bessel_ratio_derivative(BesselOrder{1.0}, 0.001) == doctest::Approx(0.5).epsilon(1e-5));

    for (double mu : {0.1, 0.25, 0.5, 1.0, 2.0, 5.0}) {
        for (double x : log_grid(1e-2, 200.0, 30)) {
            const double h = 1e-6 * std::max(1.0, x);
            const auto r = [mu](double t) { return bessel_ratio(BesselOrder{mu}, t); };
            const double fd = oracle::finite_difference(r, x, 1, std::min(h, 0.5 * x));
            CAPTURE(mu);
            CAPTURE(x);
            CHECK(within_tolerance(bessel_ratio_derivative(BesselOrder{mu}, x), fd, 1e-6));
        }
    }
}

TEST_CASE("ratio_asymptotic: examples") {
    using enum AsymptoticRegime;
    CHECK(ratio_asymptotic(BesselOrder{1.0}, 0.01, small) == doctest::Approx(0.0049999375).epsilon(1e-12));
    CHECK(ratio_asymptotic(BesselOrder{1.0}, 100.0, large) == doctest::Approx(0.995).epsilon(1e-15));
    CHECK(ratio_asymptotic(BesselOrder{0.5}, 50.0, large) == 1.0);
    CHECK_THROWS_AS(ratio_asymptotic(BesselOrder{1.0}, 0.0, small), DomainError);
}

TEST_CASE("property: half-order ratio is tanh") {
    for (double x : log_grid(1e-4, 50.0, 400)) {
        CHECK(within_tolerance(bessel_ratio(BesselOrder{0.5}, x), std::tanh(x), 1e-12));
    }
}

TEST_CASE("property: x r(x) increases and r(x)/x decreases") {
    const auto xs = log_grid(1e-3, 300.0, 300);
    for (double mu : {0.1, 0.25, 0.5, 0.9, 1.0, 2.0, 5.0}) {
        double previous_product = 0.0;
        double previous_quotient = INFINITY;
        for (double x : xs) {
            const double r = bessel_ratio(BesselOrder{mu}, x);
            CHECK(r > 0.0);
            CHECK(x * r > previous_product);
            previous_product = x * r;
            if (mu >= 1.0) {
                CHECK(r / x < previous_quotient);
                previous_quotient = r / x;
            }
        }
    }
}

TEST_CASE("property: random (mu, x) positivity and derivative identity") {
    testing::Sampler sampler(0x5eed'b355e1ULL);
    for (int i = 0; i < 300; ++i) {
        const double mu = sampler.log_uniform(0.01, 8.0);
        const double x = sampler.log_uniform(1e-3, 1e3);
        const double r = bessel_ratio(BesselOrder{mu}, x);
        CHECK(r > 0.0);
        if (mu >= 0.5) CHECK(r < 1.0 + 1e-15);
        const auto f = [mu](double t) { return bessel_ratio(BesselOrder{mu}, t); };
        const double h = std::min(1e-6 * std::max(1.0, x), 0.5 * x);
        CHECK(within_tolerance(bessel_ratio_derivative(BesselOrder{mu}, x),
                               oracle::finite_difference(f, x, 1, h), 1e-6));
    }
}

TEST_CASE("property: truncation error of the expansions vanishes at the stated order") {
    using enum AsymptoticRegime;
    for (double mu : {0.25, 1.0, 2.0}) {
        const BesselOrder order{mu};
        // Small x: error is o(x^3); halving x shrinks it by far more than 8.
        double previous = std::abs(bessel_ratio(order, 0.4) - ratio_asymptotic(order, 0.4, small));
        for (double x : {0.2, 0.1, 0.05}) {
            const double error = std::abs(bessel_ratio(order, x) - ratio_asymptotic(order, x, small));
            CHECK(error / (x * x * x) < previous / (8.0 * x * x * x));
            previous = error;
        }
        // Large x: error is o(1/x); doubling x must shrink x * error.
        double previous_scaled = 20.0 * std::abs(bessel_ratio(order, 20.0) - ratio_asymptotic(order, 20.0, large));
        for (double x : {40.0, 80.0, 160.0}) {
            const double scaled = x * std::abs(bessel_ratio(order, x) - ratio_asymptotic(order, x, large));
            CHECK(scaled < 0.6 * previous_scaled);
            previous_scaled = scaled;
        }
    }
}

TEST_CASE("concurrency: results are identical across threads") {
    const auto xs = log_grid(1e-3, 1e3, 200);
    std::vector<double> reference;
    for (double x : xs) reference.push_back(bessel_ratio(BesselOrder{0.75}, x) + log_bessel_i(BesselOrder{-0.25}, x));

    std::vector<std::vector<double>> results(4);
    std::vector<std::thread> threads;
    for (auto& out : results) {
        threads.emplace_back([&xs, &out] {
            for (double x : xs) out.push_back(bessel_ratio(BesselOrder{0.75}, x) + log_bessel_i(BesselOrder{-0.25}, x));
        });
    }
    for (auto& t : threads) t.join();
    for (const auto& out : results) CHECK(out == reference);
}
