#pragma once

#include <cstdint>
#include <map>
#include <span>

#include "mvrank/dataset.hpp"
#include "mvrank/exec.hpp"
#include "mvrank/scorer.hpp"

namespace mvrank {

// Data-parallel kernels. Each has a serial reference path (Exec::Serial)
// and an OpenMP path (Exec::Parallel) that are bit-identical for any thread
// count: outputs are written by element index and merges follow a fixed
// order that does not depend on the schedule.

// out[i] = s(points[i * d .. i * d + d)).
void score_points_kernel(const Scorer& s, std::span<const double> points,
                         std::size_t n, std::size_t d, std::span<double> out,
                         Exec exec);

// Per-cell counts of the data on the dyadic grid. strict makes out-of-box
// points an error instead of clipping them.
std::map<std::uint64_t, std::uint64_t> count_cells_kernel(const Dataset& data,
                                                          const Box& box, int depth,
                                                          bool strict, Exec exec);

// out[i] = #{j : sorted_values[j] >= thresholds[i]} for ascending sorted
// input values (thresholds may be in any order).
void count_at_least_kernel(std::span<const double> sorted_values,
                           std::span<const double> thresholds,
                           std::span<std::size_t> out, Exec exec);

} // namespace mvrank
