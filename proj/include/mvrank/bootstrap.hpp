#pragma once

#include <cstddef>
#include <vector>

#include "mvrank/exec.hpp"
#include "mvrank/kde.hpp"
#include "mvrank/mv_curve.hpp"
#include "mvrank/random.hpp"
#include "mvrank/step_curve.hpp"
#include "mvrank/volume.hpp"

namespace mvrank {

// Uniform confidence band around the empirical MV curve: the ball of radius
// nu_eta / sqrt(n) in sup norm over [epsilon, 1 - epsilon].
struct ConfidenceBand {
    StepCurve center;   // empirical MV curve of the original sample
    double radius = 0;  // nu_eta / sqrt(n)
    double nu_eta = 0;
    double epsilon = 0;
    double eta = 0;
    std::size_t replications = 0;
    std::vector<double> sups; // one sup statistic per replicate, replicate order
};

struct BandConfig {
    double epsilon = 0.05;
    double eta = 0.10;
    std::size_t replications = 0; // 0 means n
    std::size_t grid = 512;
    bool naive = false; // resample the raw scores instead of the KDE
};

// Smoothed MV curve on breakpoints {g/G}: on [g/G, (g+1)/G) the volume of
// {s >= F_tilde^{-1}(1 - g/G)} (the g = 0 piece uses the upper edge of the
// KDE support). Requires G >= 2.
StepCurve smoothed_mv_curve(const KdeModel& kde, const LevelSetVolume& vol,
                            std::size_t grid);

// 1-based index of the order statistic used for nu_eta:
// ceil((N + 1) (1 - eta)) clamped to N.
std::size_t bootstrap_quantile_index(std::size_t n_reps, double eta);

// Smoothed-bootstrap confidence band. Each replicate j draws n scores from
// the KDE (child stream j of rng), takes empirical quantiles on a uniform
// grid over [epsilon, 1 - epsilon], and records
// sup_alpha |sqrt(n) (MV_boot(alpha) - MV_smooth(alpha))|. With cfg.naive
// the replicate resamples the raw scores and fluctuations are measured
// around the empirical curve instead. Replicates are independent of
// execution order, so parallel runs reproduce the serial result exactly.
ConfidenceBand bootstrap_band(const ScoreSample& sample, const KdeModel& kde,
                              const LevelSetVolume& vol, const BandConfig& cfg,
                              const RandomSource& rng, Exec exec = Exec::Parallel);

} // namespace mvrank
