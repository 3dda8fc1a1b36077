#include "mvrank/volume.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mvrank/cells.hpp"
#include "mvrank/kernels.hpp"

namespace mvrank {

namespace {

class McLevelSetVolume final : public LevelSetVolume {
  public:
    McLevelSetVolume(double box_volume, std::vector<double> sorted_scores)
        : box_volume_(box_volume), scores_(std::move(sorted_scores)) {}

    double at(double t) const override {
        auto it = std::lower_bound(scores_.begin(), scores_.end(), t);
        const auto count = static_cast<double>(scores_.end() - it);
        return box_volume_ * (count / static_cast<double>(scores_.size()));
    }

    double box_volume() const override { return box_volume_; }

  private:
    double box_volume_;
    std::vector<double> scores_;
};

} // namespace

VolumeEstimator::VolumeEstimator(Box box, std::size_t n_points, RandomSource& rng)
    : box_(std::move(box)), n_(n_points) {
    if (n_ == 0) throw std::invalid_argument("VolumeEstimator: need at least one point");
    const std::size_t d = box_.dim();
    points_.resize(n_ * d);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            points_[i * d + j] = rng.uniform(box_.lower[j], box_.upper[j]);
        }
    }
}

std::shared_ptr<const LevelSetVolume> VolumeEstimator::volumes_for(const Scorer& s,
                                                                   Exec exec) const {
    std::vector<double> scores(n_);
    score_points_kernel(s, points_, n_, box_.dim(), scores, exec);
    std::sort(scores.begin(), scores.end());
    return std::make_shared<McLevelSetVolume>(box_.volume(), std::move(scores));
}

std::vector<double> mc_level_set_volumes(const VolumeEstimator& est, const Scorer& s,
                                         std::span<const double> thresholds, Exec exec) {
    if (!std::is_sorted(thresholds.begin(), thresholds.end())) {
        throw std::invalid_argument("mc_level_set_volumes: thresholds must be ascending");
    }
    auto vol = est.volumes_for(s, exec);
    std::vector<double> out(thresholds.size());
    for (std::size_t i = 0; i < thresholds.size(); ++i) out[i] = vol->at(thresholds[i]);
    return out;
}

double exact_cellset_volume(std::span<const std::uint64_t> cells, const Box& box, int depth) {
    check_grid_size(depth, box.dim());
    const std::uint64_t bits = static_cast<std::uint64_t>(depth) * box.dim();
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (bits < 64 && (cells[i] >> bits) != 0) {
            throw std::invalid_argument("exact_cellset_volume: cell id out of range");
        }
        if (i > 0 && cells[i] == cells[i - 1]) {
            throw std::invalid_argument("exact_cellset_volume: duplicate cell id");
        }
    }
    return static_cast<double>(cells.size()) * cell_volume(box, depth);
}

DyadicLevelSetVolume::DyadicLevelSetVolume(Box box, int depth, std::vector<double> levels_sorted)
    : box_(std::move(box)), depth_(depth), levels_(std::move(levels_sorted)) {
    check_grid_size(depth_, box_.dim());
    if (!std::is_sorted(levels_.begin(), levels_.end())) {
        throw std::invalid_argument("DyadicLevelSetVolume: levels must be sorted");
    }
    const double max_cells = std::ldexp(1.0, depth_ * static_cast<int>(box_.dim()));
    if (static_cast<double>(levels_.size()) > max_cells) {
        throw std::invalid_argument("DyadicLevelSetVolume: more levels than grid cells");
    }
}

DyadicLevelSetVolume DyadicLevelSetVolume::from_levels(const Box& box, int depth,
                                                       std::span<const double> cell_levels) {
    std::vector<double> sorted(cell_levels.begin(), cell_levels.end());
    std::sort(sorted.begin(), sorted.end());
    return DyadicLevelSetVolume(box, depth, std::move(sorted));
}

double DyadicLevelSetVolume::at(double t) const {
    if (t <= 0.0) return box_.volume();
    auto it = std::lower_bound(levels_.begin(), levels_.end(), t);
    const auto count = static_cast<double>(levels_.end() - it);
    return count * cell_volume(box_, depth_);
}

double DyadicLevelSetVolume::box_volume() const { return box_.volume(); }

} // namespace mvrank
