#pragma once

#include <span>
#include <utility>
#include <vector>

namespace dbas {

/// erf/erfc via Cody's rational Chebyshev approximations (three intervals).
/// Self-contained so that probability weights and file contents do not depend
/// on the platform's libm; absolute error is below 1e-14 everywhere.
double erf_approx(double x);
double erfc_approx(double x);

/// Standard normal CDF and survival function built on erfc_approx.
double normal_cdf(double z);
double normal_sf(double z);

double log_sum_exp(std::span<const double> log_values);

/// Quantile of the values at rank (n-1)*q on the ascending sort, linearly
/// interpolated between the bracketing order statistics. Throws EmptyInput on
/// an empty span and InvalidArgument for q outside [0, 1].
double linear_quantile(std::span<const double> values, double q);

/// Population mean and standard deviation (divisor n), accumulated in index
/// order so results are bit-reproducible.
std::pair<double, double> mean_std(std::span<const double> values);

}  // namespace dbas
