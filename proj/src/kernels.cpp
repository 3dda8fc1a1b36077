#include "mvrank/kernels.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "mvrank/cells.hpp"
#include "mvrank/errors.hpp"

namespace mvrank {

void score_points_kernel(const Scorer& s, std::span<const double> points, std::size_t n,
                         std::size_t d, std::span<double> out, Exec exec) {
    if (points.size() != n * d || out.size() != n) {
        throw std::invalid_argument("score_points_kernel: buffer sizes do not match n, d");
    }
    if (n > 0 && d != s.dim()) {
        throw data_error("score_points_kernel: point dimension does not match the scorer");
    }
    const auto nn = static_cast<std::int64_t>(n);
    if (exec == Exec::Serial) {
        for (std::int64_t i = 0; i < nn; ++i) {
            out[i] = s.score(points.subspan(i * d, d));
        }
        return;
    }
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < nn; ++i) {
        out[i] = s.score(points.subspan(i * d, d));
    }
}

std::map<std::uint64_t, std::uint64_t> count_cells_kernel(const Dataset& data, const Box& box,
                                                          int depth, bool strict, Exec exec) {
    check_grid_size(depth, box.dim());
    if (data.size() > 0 && data.dim() != box.dim()) {
        throw data_error("count_cells_kernel: data dimension does not match the box");
    }
    const auto n = static_cast<std::int64_t>(data.size());
    constexpr std::uint64_t outside = ~std::uint64_t{0};

    // Cell ids are computed in parallel (strict violations become a sentinel
    // so no exception crosses the parallel region); counting then runs in a
    // fixed order, which keeps the result independent of the schedule.
    std::vector<std::uint64_t> ids(data.size());
    auto assign = [&](std::int64_t i) {
        auto row = data.row(static_cast<std::size_t>(i));
        if (strict && !box.contains(row)) {
            ids[i] = outside;
        } else {
            ids[i] = cell_of_point(row, box, depth);
        }
    };
    if (exec == Exec::Serial) {
        for (std::int64_t i = 0; i < n; ++i) assign(i);
    } else {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) assign(i);
    }

    std::map<std::uint64_t, std::uint64_t> counts;
    for (std::int64_t i = 0; i < n; ++i) {
        if (ids[i] == outside) {
            throw data_error("histogram: point on row " + std::to_string(i + 1) +
                             " lies outside the box (strict mode)");
        }
        ++counts[ids[i]];
    }
    return counts;
}

void count_at_least_kernel(std::span<const double> sorted_values,
                           std::span<const double> thresholds, std::span<std::size_t> out,
                           Exec exec) {
    if (out.size() != thresholds.size()) {
        throw std::invalid_argument("count_at_least_kernel: output size mismatch");
    }
    const auto m = static_cast<std::int64_t>(thresholds.size());
    auto count = [&](std::int64_t i) {
        auto it = std::lower_bound(sorted_values.begin(), sorted_values.end(), thresholds[i]);
        out[i] = static_cast<std::size_t>(sorted_values.end() - it);
    };
    if (exec == Exec::Serial) {
        for (std::int64_t i = 0; i < m; ++i) count(i);
        return;
    }
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < m; ++i) count(i);
}

} // namespace mvrank
