#pragma once

#include <cstddef>
#include <vector>

#include "mvrank/random.hpp"

namespace mvrank {

// Biweight kernel (15/16) (1 - t^2)^2 on [-1, 1].
double biweight_pdf(double t);

// Its CDF: 0 below -1, 1 above 1, else 1/2 + (15/16)(u - 2u^3/3 + u^5/5).
double biweight_cdf(double u);

// Bandwidth scale * (ln n / n)^(1/5). Requires n >= 2 and scale > 0.
double default_bandwidth(std::size_t n, double scale);

// Kernel CDF estimate built on one-dimensional scores with bandwidth h > 0.
class KdeModel {
  public:
    KdeModel(std::vector<double> scores, double h);

    std::size_t size() const { return scores_.size(); }
    double bandwidth() const { return h_; }
    double support_min() const { return scores_.front() - h_; }
    double support_max() const { return scores_.back() + h_; }

    // (1/n) sum biweight_cdf((t - s_i) / h); exactly 0 / 1 outside the
    // support.
    double cdf(double t) const;

    // t with |cdf(t) - p| <= 1e-10, p in (0, 1), by monotone bisection
    // (falls back to the floating-point resolution limit of the bracket).
    double quantile(double p) const;

    // m draws: uniformly chosen score plus h times biweight noise, the noise
    // sampled by rejection from the uniform envelope [-1,1] x [0, 15/16].
    std::vector<double> sample(std::size_t m, RandomSource& rng) const;

  private:
    std::vector<double> scores_; // sorted ascending
    double h_ = 0.0;
};

} // namespace mvrank
