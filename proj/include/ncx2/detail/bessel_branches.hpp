#pragma once

// The two evaluation branches behind log_bessel_i, exposed so tests can
// compare them across the crossover band.

namespace ncx2::detail {

double log_bessel_i_series(double mu, double x);
double log_bessel_i_asymptotic(double mu, double x);

} // namespace ncx2::detail
