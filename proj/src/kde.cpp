#include "mvrank/kde.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mvrank/errors.hpp"

namespace mvrank {

double biweight_pdf(double t) {
    if (t < -1.0 || t > 1.0) return 0.0;
    const double w = 1.0 - t * t;
    return 0.9375 * w * w; // 15/16
}

double biweight_cdf(double u) {
    if (u <= -1.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return 0.5 + 0.9375 * (u - 2.0 * u * u * u / 3.0 + std::pow(u, 5) / 5.0);
}

double default_bandwidth(std::size_t n, double scale) {
    if (n < 2) throw std::invalid_argument("default_bandwidth: n must be >= 2");
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw std::invalid_argument("default_bandwidth: scale must be > 0");
    }
    const double nd = static_cast<double>(n);
    return scale * std::pow(std::log(nd) / nd, 0.2);
}

KdeModel::KdeModel(std::vector<double> scores, double h) : scores_(std::move(scores)), h_(h) {
    if (scores_.empty()) throw std::invalid_argument("KdeModel: empty scores");
    if (!(h_ > 0.0) || !std::isfinite(h_)) {
        throw std::invalid_argument("KdeModel: bandwidth must be > 0");
    }
    for (double s : scores_) {
        if (!std::isfinite(s)) throw data_error("KdeModel: non-finite score");
    }
    std::sort(scores_.begin(), scores_.end());
}

double KdeModel::cdf(double t) const {
    // Scores at or below t - h contribute 1, scores at or above t + h
    // contribute 0; only the kernel window in between needs evaluation.
    // Outside the support this degenerates to exactly 0 or 1.
    const auto full = std::upper_bound(scores_.begin(), scores_.end(), t - h_);
    const auto zero = std::lower_bound(full, scores_.end(), t + h_);
    double sum = static_cast<double>(full - scores_.begin());
    for (auto it = full; it != zero; ++it) {
        sum += biweight_cdf((t - *it) / h_);
    }
    return sum / static_cast<double>(scores_.size());
}

double KdeModel::quantile(double p) const {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error("KdeModel::quantile: p must be in (0, 1)");
    }
    double lo = support_min();
    double hi = support_max();
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) return mid; // floating-point resolution
        const double c = cdf(mid);
        if (std::fabs(c - p) <= 1e-10) return mid;
        if (c < p) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    throw numerical_error("KdeModel::quantile: bisection did not converge");
}

std::vector<double> KdeModel::sample(std::size_t m, RandomSource& rng) const {
    std::vector<double> out(m);
    const auto n = static_cast<std::uint64_t>(scores_.size());
    for (std::size_t i = 0; i < m; ++i) {
        const double s = scores_[static_cast<std::size_t>(rng.below(n))];
        double u;
        for (;;) {
            u = rng.uniform(-1.0, 1.0);
            const double y = rng.uniform(0.0, 0.9375);
            if (y <= biweight_pdf(u)) break;
        }
        out[i] = s + h_ * u;
    }
    return out;
}

} // namespace mvrank
