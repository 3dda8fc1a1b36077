#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "mvrank/dataset.hpp"
#include "mvrank/exec.hpp"
#include "mvrank/random.hpp"
#include "mvrank/scorer.hpp"

namespace mvrank {

// Lebesgue volume of the level set {x in box : s(x) >= t} as a function of t.
class LevelSetVolume {
  public:
    virtual ~LevelSetVolume() = default;
    virtual double at(double t) const = 0;
    virtual double box_volume() const = 0;
};

// Monte-Carlo volume backed by one fixed point cloud. The same points serve
// every scorer and every threshold, which makes volumes exactly monotone in
// the threshold and invariant under monotone score transforms.
class VolumeEstimator {
  public:
    VolumeEstimator(Box box, std::size_t n_points, RandomSource& rng);

    const Box& box() const { return box_; }
    std::size_t n_points() const { return n_; }
    std::span<const double> point(std::size_t i) const {
        return {points_.data() + i * box_.dim(), box_.dim()};
    }

    // Scores the cloud once and keeps the sorted scores for threshold counts.
    std::shared_ptr<const LevelSetVolume> volumes_for(const Scorer& s,
                                                      Exec exec = Exec::Parallel) const;

  private:
    Box box_;
    std::size_t n_ = 0;
    std::vector<double> points_; // row-major
};

// Volumes vol(box) * #{j : s(p_j) >= t_i} / N for ascending thresholds.
// Output is nonincreasing. Throws std::invalid_argument if thresholds are
// not sorted ascending.
std::vector<double> mc_level_set_volumes(const VolumeEstimator& est, const Scorer& s,
                                         std::span<const double> thresholds,
                                         Exec exec = Exec::Parallel);

// Exact volume of a union of distinct depth-j cells:
// #cells * vol(box) * 2^(-j*d). Throws std::invalid_argument on an out-of-
// range cell id.
double exact_cellset_volume(std::span<const std::uint64_t> cells, const Box& box,
                            int depth);

// Exact level-set volume for a dyadic piecewise-constant score with the
// given per-cell levels (cells not listed score 0; outside the box scores 0,
// and the reported volume is measured within the box).
class DyadicLevelSetVolume : public LevelSetVolume {
  public:
    DyadicLevelSetVolume(Box box, int depth, std::vector<double> levels_sorted);

    static DyadicLevelSetVolume from_levels(const Box& box, int depth,
                                            std::span<const double> cell_levels);

    double at(double t) const override;
    double box_volume() const override;

  private:
    Box box_;
    int depth_ = 0;
    std::vector<double> levels_; // sorted ascending, one entry per listed cell
};

} // namespace mvrank
