#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mvrank/dataset.hpp"

namespace mvrank {

// Dyadic grid helpers. A box at depth j splits into 2^(j*d) congruent cells.
// A cell is addressed either by its per-axis index tuple in [0, 2^j)^d or by
// the linear id with axis 0 most significant, so ascending linear ids match
// ascending lexicographic tuples.

// Requires j * d <= 62 so linear ids fit in an int64.
void check_grid_size(int depth, std::size_t dim);

std::uint64_t cell_id_from_tuple(std::span<const std::uint32_t> tuple, int depth);

std::vector<std::uint32_t> cell_tuple_from_id(std::uint64_t id, int depth, std::size_t dim);

// Cell containing x: per axis floor((x_i - lo_i) / (up_i - lo_i) * 2^j),
// clamped into [0, 2^j - 1] so points on the upper face (or outside, when
// clipping) land in a boundary cell.
std::uint64_t cell_of_point(std::span<const double> x, const Box& box, int depth);

// Volume of one depth-j cell: vol(box) * 2^(-j*d).
double cell_volume(const Box& box, int depth);

} // namespace mvrank
