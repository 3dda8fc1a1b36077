#include "mvrank/distributions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mvrank/errors.hpp"

namespace mvrank {

double norm_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double norm_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double norm_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error("norm_quantile: p must be in (0, 1)");
    }
    double lo = -40.0, hi = 40.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (norm_cdf(mid) < p) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

namespace {

// Series expansion of P(a, x), valid for x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int it = 0; it < 500; ++it) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-16) {
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
        }
    }
    throw numerical_error("gamma_p: series did not converge");
}

// Continued fraction for Q(a, x) = 1 - P(a, x), valid for x >= a + 1.
double gamma_q_contfrac(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) {
            return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
        }
    }
    throw numerical_error("gamma_p: continued fraction did not converge");
}

} // namespace

double gamma_p(double a, double x) {
    if (!(a > 0.0) || x < 0.0 || !std::isfinite(a) || !std::isfinite(x)) {
        throw std::domain_error("gamma_p: requires a > 0 and x >= 0");
    }
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_contfrac(a, x);
}

double chi2_cdf(double x, int d) {
    if (d < 1) throw std::domain_error("chi2_cdf: d must be >= 1");
    if (x <= 0.0) return 0.0;
    return gamma_p(0.5 * d, 0.5 * x);
}

double chi2_quantile(double p, int d) {
    if (d < 1) throw std::domain_error("chi2_quantile: d must be >= 1");
    if (!(p >= 0.0 && p < 1.0)) {
        throw std::domain_error("chi2_quantile: p must be in [0, 1)");
    }
    if (p == 0.0) return 0.0;
    double hi = d + 10.0 * std::sqrt(2.0 * d) + 50.0;
    while (chi2_cdf(hi, d) < p) hi *= 2.0;
    double lo = 0.0;
    while (hi - lo > 1e-12) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (chi2_cdf(mid, d) < p) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace mvrank
