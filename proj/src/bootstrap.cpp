#include "mvrank/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mvrank {

namespace {

// KDE quantile extended to the closed interval: p = 0 and p = 1 map to the
// support edges (only reachable when epsilon = 0).
double quantile_or_edge(const KdeModel& kde, double p) {
    if (p <= 0.0) return kde.support_min();
    if (p >= 1.0) return kde.support_max();
    return kde.quantile(p);
}

} // namespace

StepCurve smoothed_mv_curve(const KdeModel& kde, const LevelSetVolume& vol,
                            std::size_t grid) {
    if (grid < 2) throw std::invalid_argument("smoothed_mv_curve: grid must be >= 2");
    std::vector<double> breaks(grid + 1);
    std::vector<double> values(grid);
    const auto g = static_cast<double>(grid);
    for (std::size_t k = 0; k <= grid; ++k) {
        breaks[k] = static_cast<double>(k) / g;
    }
    for (std::size_t k = 0; k < grid; ++k) {
        const double alpha = breaks[k];
        values[k] = vol.at(quantile_or_edge(kde, 1.0 - alpha));
    }
    return StepCurve(std::move(breaks), std::move(values));
}

std::size_t bootstrap_quantile_index(std::size_t n_reps, double eta) {
    if (n_reps == 0) throw std::invalid_argument("bootstrap_quantile_index: need replicates");
    if (!(eta > 0.0 && eta < 1.0)) {
        throw std::invalid_argument("bootstrap_quantile_index: eta must be in (0, 1)");
    }
    double x = static_cast<double>(n_reps + 1) * (1.0 - eta);
    const double nearest = std::round(x);
    if (std::fabs(x - nearest) < 1e-9) x = nearest;
    auto k = static_cast<long long>(std::ceil(x));
    if (k < 1) k = 1;
    if (k > static_cast<long long>(n_reps)) k = static_cast<long long>(n_reps);
    return static_cast<std::size_t>(k);
}

ConfidenceBand bootstrap_band(const ScoreSample& sample, const KdeModel& kde,
                              const LevelSetVolume& vol, const BandConfig& cfg,
                              const RandomSource& rng, Exec exec) {
    const std::size_t n = sample.size();
    if (!(cfg.epsilon >= 0.0 && cfg.epsilon < 0.5)) {
        throw std::invalid_argument("bootstrap_band: epsilon must be in [0, 0.5)");
    }
    if (cfg.grid < 2) throw std::invalid_argument("bootstrap_band: grid must be >= 2");
    const std::size_t n_reps = cfg.replications == 0 ? n : cfg.replications;
    const std::size_t nu_index = bootstrap_quantile_index(n_reps, cfg.eta);

    std::vector<double> alphas(cfg.grid);
    const double span = 1.0 - 2.0 * cfg.epsilon;
    for (std::size_t g = 0; g < cfg.grid; ++g) {
        alphas[g] = cfg.epsilon +
                    span * static_cast<double>(g) / static_cast<double>(cfg.grid - 1);
    }

    ConfidenceBand band;
    band.center = empirical_mv_curve(sample, vol);
    band.epsilon = cfg.epsilon;
    band.eta = cfg.eta;
    band.replications = n_reps;

    // Reference values the replicate fluctuations are measured against: the
    // smoothed curve, or the empirical curve itself for the naive variant.
    std::vector<double> ref(cfg.grid);
    for (std::size_t g = 0; g < cfg.grid; ++g) {
        if (cfg.naive) {
            const std::size_t k = survival_quantile_index(n, alphas[g]);
            ref[g] = vol.at(sample.order_stat(k));
        } else {
            ref[g] = vol.at(quantile_or_edge(kde, 1.0 - alphas[g]));
        }
    }

    const double sqrt_n = std::sqrt(static_cast<double>(n));
    std::vector<double> sups(n_reps);
    auto replicate = [&](std::int64_t j) {
        RandomSource child = rng.child(static_cast<std::uint64_t>(j));
        std::vector<double> draws;
        if (cfg.naive) {
            draws.resize(n);
            const auto& src = sample.sorted();
            for (std::size_t i = 0; i < n; ++i) {
                draws[i] = src[static_cast<std::size_t>(child.below(n))];
            }
        } else {
            draws = kde.sample(n, child);
        }
        std::sort(draws.begin(), draws.end());
        double sup = 0.0;
        for (std::size_t g = 0; g < cfg.grid; ++g) {
            const std::size_t k = survival_quantile_index(n, alphas[g]);
            const double v = vol.at(draws[k - 1]);
            sup = std::max(sup, std::fabs(sqrt_n * (v - ref[g])));
        }
        sups[static_cast<std::size_t>(j)] = sup;
    };

    const auto reps = static_cast<std::int64_t>(n_reps);
    if (exec == Exec::Serial) {
        for (std::int64_t j = 0; j < reps; ++j) replicate(j);
    } else {
#pragma omp parallel for schedule(static)
        for (std::int64_t j = 0; j < reps; ++j) replicate(j);
    }

    band.sups = sups;
    std::sort(sups.begin(), sups.end());
    band.nu_eta = sups[nu_index - 1];
    band.radius = band.nu_eta / sqrt_n;
    return band;
}

} // namespace mvrank
