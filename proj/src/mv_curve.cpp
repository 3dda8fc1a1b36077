#include "mvrank/mv_curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mvrank/distributions.hpp"
#include "mvrank/errors.hpp"

namespace mvrank {

ScoreSample::ScoreSample(std::vector<double> scores) : sorted_(std::move(scores)) {
    if (sorted_.empty()) throw std::invalid_argument("ScoreSample: empty");
    for (double s : sorted_) {
        if (!std::isfinite(s)) throw data_error("ScoreSample: non-finite score");
    }
    std::sort(sorted_.begin(), sorted_.end());
}

double ScoreSample::order_stat(std::size_t k) const {
    if (k < 1 || k > sorted_.size()) {
        throw std::invalid_argument("ScoreSample: order statistic index out of range");
    }
    return sorted_[k - 1];
}

std::size_t survival_quantile_index(std::size_t n, double alpha) {
    if (n == 0) throw std::invalid_argument("survival_quantile_index: n must be >= 1");
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw std::domain_error("survival_quantile_index: alpha must be in [0, 1]");
    }
    double x = static_cast<double>(n) * (1.0 - alpha);
    const double nearest = std::round(x);
    if (std::fabs(x - nearest) < 1e-9) x = nearest;
    auto k = static_cast<long long>(std::ceil(x));
    if (k < 1) k = 1;
    if (k > static_cast<long long>(n)) k = static_cast<long long>(n);
    return static_cast<std::size_t>(k);
}

double empirical_mass_inverse(const ScoreSample& sample, double alpha) {
    return sample.order_stat(survival_quantile_index(sample.size(), alpha));
}

StepCurve empirical_mv_curve(const ScoreSample& sample, const LevelSetVolume& vol) {
    const std::size_t n = sample.size();
    std::vector<double> breaks(n + 1);
    std::vector<double> values(n);
    for (std::size_t k = 0; k <= n; ++k) {
        breaks[k] = static_cast<double>(k) / static_cast<double>(n);
    }
    // On [k/n, (k+1)/n) the survival quantile is s_(n-k).
    for (std::size_t k = 0; k < n; ++k) {
        values[k] = vol.at(sample.order_stat(n - k));
    }
    return StepCurve(std::move(breaks), std::move(values));
}

StepCurve exact_mv_for_partition(std::span<const double> masses,
                                 std::span<const double> volumes) {
    if (masses.empty() || masses.size() != volumes.size()) {
        throw std::invalid_argument("exact_mv_for_partition: need equal, non-empty masses and volumes");
    }
    std::vector<double> breaks;
    breaks.reserve(masses.size() + 1);
    breaks.push_back(0.0);
    double prev = 0.0;
    for (double m : masses) {
        if (!(m > prev) || !(m <= 1.0)) {
            throw std::invalid_argument("exact_mv_for_partition: masses must be strictly increasing in (0, 1]");
        }
        breaks.push_back(m);
        prev = m;
    }
    if (!std::is_sorted(volumes.begin(), volumes.end())) {
        throw std::invalid_argument("exact_mv_for_partition: volumes must be nondecreasing");
    }
    return StepCurve(std::move(breaks), std::vector<double>(volumes.begin(), volumes.end()));
}

double mv_star_gaussian_1d(double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0)) {
        throw std::domain_error("mv_star_gaussian_1d: alpha must be in [0, 1)");
    }
    if (alpha == 0.0) return 0.0;
    return 2.0 * norm_quantile(0.5 * (1.0 + alpha));
}

double mv_star_gaussian_diag(double alpha, std::span<const double> diag_cov) {
    if (!(alpha >= 0.0 && alpha < 1.0)) {
        throw std::domain_error("mv_star_gaussian_diag: alpha must be in [0, 1)");
    }
    if (diag_cov.empty()) {
        throw std::invalid_argument("mv_star_gaussian_diag: empty covariance");
    }
    const int d = static_cast<int>(diag_cov.size());
    double axes = 1.0;
    for (double v : diag_cov) {
        if (!(v > 0.0)) {
            throw std::invalid_argument("mv_star_gaussian_diag: diag_cov entries must be > 0");
        }
        axes *= std::sqrt(v);
    }
    const double q = chi2_quantile(alpha, d);
    return std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0) *
           std::pow(q, 0.5 * d) * axes;
}

double mv_star_derivative(double q_star) {
    if (!(q_star > 0.0)) {
        throw std::domain_error("mv_star_derivative: density quantile must be > 0");
    }
    return 1.0 / q_star;
}

double excess_mass(double alpha, double q_star, double mv) {
    return alpha - q_star * mv;
}

} // namespace mvrank
