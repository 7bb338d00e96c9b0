#include <doctest.h>

#include <cmath>

#include "ncx2/errors.hpp"
#include "ncx2/grid.hpp"
#include "ncx2/oracle.hpp"
#include "ncx2/tolerance.hpp"

using namespace ncx2;

TEST_CASE("finite_difference: examples") {
    const auto cube = [](double x) { return x * x * x; };
    CHECK(std::abs(oracle::finite_difference(cube, 1.0, 1, 1e-4) - 3.0) < 1e-7);
    CHECK(std::abs(oracle::finite_difference(cube, 1.0, 2, 1e-4) - 6.0) < 1e-6);
    CHECK(std::abs(oracle::finite_difference(cube, 1.0, 3, 1e-3) - 6.0) < 1e-4);

    const auto square = [](double x) { return x * x; };
    CHECK(std::abs(oracle::finite_difference(square, 3.0, 1, 1e-4) - 6.0) < 1e-7);

    const Params p{1.0, 5.0};
    const auto l = [&p](double x) { return log_density(p, x); };
    CHECK(within_tolerance(oracle::finite_difference(l, 2.0, 1, 1e-4), log_density_d1(p, 2.0), 1e-6));
    CHECK(within_tolerance(oracle::finite_difference(l, 2.0, 2, 1e-3), log_density_d2(p, 2.0), 1e-5));

    CHECK_THROWS_AS(oracle::finite_difference(square, 1e-5, 1, 1e-4), DomainError);
    CHECK_THROWS_AS(oracle::finite_difference(square, 1.0, 4, 1e-4), DomainError);
    CHECK_THROWS_AS(oracle::finite_difference(square, 1.0, 1, 0.0), DomainError);
}

TEST_CASE("finite_difference: error is second order in h") {
    const auto f = [](double x) { return std::exp(std::sin(x)); };
    const double exact = std::cos(1.0) * std::exp(std::sin(1.0));
    double previous = std::abs(oracle::finite_difference(f, 1.0, 1, 1e-2) - exact);
    for (double h : {5e-3, 2.5e-3}) {
        const double error = std::abs(oracle::finite_difference(f, 1.0, 1, h) - exact);
        CHECK(previous / error == doctest::Approx(4.0).epsilon(0.05));
        previous = error;
    }
}

TEST_CASE("grid_local_maxima: examples") {
    const auto grid = oracle::default_mode_grid();

    const auto bimodal = oracle::grid_local_maxima(Params{1.0, 5.0}, grid);
    CHECK(bimodal.boundary_max);
    REQUIRE(bimodal.interior.size() == 1);
    CHECK(bimodal.interior.front().first == doctest::Approx(2.6008).epsilon(1e-3));

    const auto unimodal = oracle::grid_local_maxima(Params{4.0, 5.0}, grid);
    CHECK_FALSE(unimodal.boundary_max);
    REQUIRE(unimodal.interior.size() == 1);
    CHECK(unimodal.interior.front().first > 6.0);
    CHECK(unimodal.interior.front().first < 7.0);

    const auto decreasing = oracle::grid_local_maxima(Params{1.0, 1.0}, grid);
    CHECK(decreasing.boundary_max);
    CHECK(decreasing.interior.empty());
}

TEST_CASE("GridSpec: validation and abscissae") {
    const GridSpec linear{1.0, 2.0, 5};
    const auto xs = linear.abscissae();
    REQUIRE(xs.size() == 5);
    CHECK(xs.front() == 1.0);
    CHECK(xs.back() == 2.0);
    CHECK(xs[2] == doctest::Approx(1.5));

    const GridSpec log{1e-2, 1e2, 5, Spacing::log};
    const auto ls = log.abscissae();
    CHECK(ls.back() == 1e2);
    CHECK(ls[2] == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS((GridSpec{2.0, 1.0, 5}.validate()), DomainError);
    CHECK_THROWS_AS((GridSpec{1.0, 2.0, 1}.validate()), DomainError);
    CHECK_THROWS_AS((GridSpec{0.0, 2.0, 5, Spacing::log}.validate()), DomainError);
}

TEST_CASE("adaptive_quadrature: examples") {
    CHECK(std::abs(oracle::adaptive_quadrature(Params{1.0, 5.0}, 0) - 1.0) < 1e-8);
    CHECK(std::abs(oracle::adaptive_quadrature(Params{1.0, 5.0}, 1) - 6.0) < 1e-6);
    CHECK(std::abs(oracle::adaptive_quadrature(Params{0.5, 0.0}, 0) - 1.0) < 1e-8);
    CHECK(std::abs(oracle::adaptive_quadrature(Params{7.0, 30.0}, 1) - 37.0) < 1e-6);
    CHECK_THROWS_AS(oracle::adaptive_quadrature(Params{1.0, 1.0}, 2), DomainError);
}
