#pragma once

#include <cstdint>

namespace mvrank {

// Standard normal density.
double norm_pdf(double x);

// Standard normal CDF.
double norm_cdf(double x);

// Standard normal quantile, p in (0, 1).
double norm_quantile(double p);

// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double gamma_p(double a, double x);

// Chi-square CDF with d degrees of freedom.
double chi2_cdf(double x, int d);

// Chi-square quantile, p in [0, 1), solved by bisection to 1e-12.
double chi2_quantile(double p, int d);

} // namespace mvrank
