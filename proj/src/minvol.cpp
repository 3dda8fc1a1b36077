#include "mvrank/minvol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "mvrank/cells.hpp"
#include "mvrank/errors.hpp"
#include "mvrank/kernels.hpp"

namespace mvrank {

double DyadicHistogram::cell_volume() const { return mvrank::cell_volume(box, depth); }

bool CellSet::contains(std::uint64_t cell) const {
    return std::binary_search(cells.begin(), cells.end(), cell);
}

std::string CellSet::to_json() const {
    nlohmann::json tuples = nlohmann::json::array();
    for (std::uint64_t id : cells) {
        tuples.push_back(cell_tuple_from_id(id, depth, box.dim()));
    }
    nlohmann::json j;
    j["depth"] = depth;
    j["box"]["lower"] = box.lower;
    j["box"]["upper"] = box.upper;
    j["cells"] = tuples;
    j["mass"] = empirical_mass;
    j["volume"] = volume;
    return j.dump();
}

DyadicHistogram build_histogram(const Dataset& data, const Box& box, int depth, bool strict) {
    if (data.size() == 0) throw data_error("build_histogram: empty dataset");
    if (data.dim() != box.dim()) {
        throw data_error("build_histogram: data dimension does not match the box");
    }
    DyadicHistogram hist;
    hist.box = box;
    hist.depth = depth;
    hist.n = data.size();
    hist.counts = count_cells_kernel(data, box, depth, strict, Exec::Parallel);
    return hist;
}

double phi_penalty(std::size_t n, double delta, double c) {
    if (n == 0) throw std::invalid_argument("phi_penalty: n must be >= 1");
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("phi_penalty: delta must be in (0, 1)");
    }
    if (!(c >= 0.0) || !std::isfinite(c)) {
        throw std::invalid_argument("phi_penalty: c must be >= 0");
    }
    const double nd = static_cast<double>(n);
    return 2.0 * c / std::sqrt(nd) + std::sqrt(std::log(1.0 / delta) / (2.0 * nd));
}

namespace {

// Count of sample points the greedy prefix must reach for mass alpha - phi,
// with near-integer targets snapped so grid levels hit exact counts.
double target_count(std::size_t n, double alpha, double phi) {
    double t = (alpha - phi) * static_cast<double>(n);
    const double nearest = std::round(t);
    if (std::fabs(t - nearest) < 1e-9 * std::max(1.0, std::fabs(t))) t = nearest;
    return t;
}

} // namespace

MinVolSolver::MinVolSolver(const DyadicHistogram& hist) : hist_(&hist) {
    if (hist.n == 0) throw std::invalid_argument("MinVolSolver: empty histogram");
    order_.reserve(hist.counts.size());
    for (const auto& [cell, count] : hist.counts) {
        if (count > 0) order_.push_back(cell);
    }
    // Fullest cells first; equal counts resolved by ascending cell id. This
    // single order defines every level's solution as one of its prefixes.
    std::stable_sort(order_.begin(), order_.end(), [&](std::uint64_t a, std::uint64_t b) {
        const auto ca = hist.counts.at(a);
        const auto cb = hist.counts.at(b);
        if (ca != cb) return ca > cb;
        return a < b;
    });
    cum_.resize(order_.size());
    std::uint64_t running = 0;
    for (std::size_t i = 0; i < order_.size(); ++i) {
        running += hist.counts.at(order_[i]);
        cum_[i] = running;
    }
}

std::size_t MinVolSolver::prefix_size(double alpha, double phi) const {
    const double target = target_count(hist_->n, alpha, phi);
    if (target <= 0.0) return 0;
    auto it = std::lower_bound(cum_.begin(), cum_.end(), target,
                               [](std::uint64_t cum, double t) {
                                   return static_cast<double>(cum) < t;
                               });
    if (it == cum_.end()) return order_.size(); // target above total mass
    return static_cast<std::size_t>(it - cum_.begin()) + 1;
}

double MinVolSolver::volume_at(double alpha, double phi) const {
    return static_cast<double>(prefix_size(alpha, phi)) * hist_->cell_volume();
}

CellSet MinVolSolver::cell_set(double alpha, double phi) const {
    const std::size_t m = prefix_size(alpha, phi);
    CellSet set;
    set.box = hist_->box;
    set.depth = hist_->depth;
    set.cells.assign(order_.begin(), order_.begin() + m);
    std::sort(set.cells.begin(), set.cells.end());
    set.empirical_mass =
        m == 0 ? 0.0 : static_cast<double>(cum_[m - 1]) / static_cast<double>(hist_->n);
    set.volume = static_cast<double>(m) * hist_->cell_volume();
    return set;
}

double MinVolSolver::q_star(double alpha) const {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw std::domain_error("q_star: alpha must be in (0, 1]");
    }
    const std::size_t m = prefix_size(alpha, 0.0);
    if (m == 0) return 0.0;
    const double count = static_cast<double>(hist_->counts.at(order_[m - 1]));
    return count / (static_cast<double>(hist_->n) * hist_->cell_volume());
}

CellSet min_volume_set(const DyadicHistogram& hist, double alpha, double phi) {
    return MinVolSolver(hist).cell_set(alpha, phi);
}

double q_star_estimate(const DyadicHistogram& hist, double alpha) {
    return MinVolSolver(hist).q_star(alpha);
}

} // namespace mvrank
