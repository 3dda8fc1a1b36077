#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mvrank/step_curve.hpp"
#include "mvrank/volume.hpp"

namespace mvrank {

// Scores of a sample, kept sorted ascending.
class ScoreSample {
  public:
    explicit ScoreSample(std::vector<double> scores);

    std::size_t size() const { return sorted_.size(); }
    const std::vector<double>& sorted() const { return sorted_; }

    // Order statistic s_(k), 1-based.
    double order_stat(std::size_t k) const;

  private:
    std::vector<double> sorted_;
};

// 1-based order-statistic index ceil(n (1 - alpha)) clamped into [1, n].
// Products within 1e-9 of an integer snap to it so that grid values like
// k/n hit the mathematically intended index.
std::size_t survival_quantile_index(std::size_t n, double alpha);

// Generalized inverse of the empirical score survival function:
// s_(ceil(n * (1 - alpha))) with the index clamped into [1, n], so alpha = 0
// maps to the largest score. alpha in [0, 1].
double empirical_mass_inverse(const ScoreSample& sample, double alpha);

// Empirical mass-volume curve: breakpoints {k/n}, and on [k/n, (k+1)/n) the
// volume of {s >= s_(n-k)}. Nondecreasing by construction.
StepCurve empirical_mv_curve(const ScoreSample& sample, const LevelSetVolume& vol);

// MV curve of a finite nested family: masses strictly increasing in (0, 1],
// volumes nondecreasing; the curve equals volumes[k] on
// [masses[k-1], masses[k]) with masses[-1] := 0.
StepCurve exact_mv_for_partition(std::span<const double> masses,
                                 std::span<const double> volumes);

// Optimal MV curve of a standard normal in one dimension:
// 2 * norm_quantile((1 + alpha) / 2). Scale by sigma for N(mu, sigma^2).
double mv_star_gaussian_1d(double alpha);

// Optimal MV curve of a centered Gaussian with diagonal covariance:
// pi^(d/2) / Gamma(d/2 + 1) * chi2_quantile(alpha, d)^(d/2) * prod(sqrt(cov_ii)).
double mv_star_gaussian_diag(double alpha, std::span<const double> diag_cov);

// Derivative of the optimal curve, 1 / q_star for the density value q_star
// at mass level alpha. Throws std::domain_error if q_star <= 0.
double mv_star_derivative(double q_star);

// Excess mass alpha - q_star * mv at level alpha.
double excess_mass(double alpha, double q_star, double mv);

} // namespace mvrank
