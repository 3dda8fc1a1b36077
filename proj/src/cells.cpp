#include "mvrank/cells.hpp"

#include <cmath>
#include <stdexcept>

namespace mvrank {

void check_grid_size(int depth, std::size_t dim) {
    if (depth < 0) throw std::invalid_argument("dyadic depth must be >= 0");
    if (dim == 0) throw std::invalid_argument("dyadic grid needs dimension >= 1");
    if (static_cast<std::size_t>(depth) * dim > 62) {
        throw std::invalid_argument("dyadic grid too fine: depth * dim must be <= 62");
    }
}

std::uint64_t cell_id_from_tuple(std::span<const std::uint32_t> tuple, int depth) {
    check_grid_size(depth, tuple.size());
    const std::uint64_t side = std::uint64_t{1} << depth;
    std::uint64_t id = 0;
    for (std::uint32_t t : tuple) {
        if (t >= side) throw std::invalid_argument("cell index out of range for depth");
        id = (id << depth) | t;
    }
    return id;
}

std::vector<std::uint32_t> cell_tuple_from_id(std::uint64_t id, int depth, std::size_t dim) {
    check_grid_size(depth, dim);
    const std::uint64_t mask = (std::uint64_t{1} << depth) - 1;
    std::vector<std::uint32_t> tuple(dim);
    for (std::size_t i = dim; i-- > 0;) {
        tuple[i] = static_cast<std::uint32_t>(id & mask);
        id >>= depth;
    }
    if (id != 0) throw std::invalid_argument("cell id out of range for depth and dim");
    return tuple;
}

std::uint64_t cell_of_point(std::span<const double> x, const Box& box, int depth) {
    check_grid_size(depth, box.dim());
    if (x.size() != box.dim()) throw std::invalid_argument("point dimension mismatch");
    const std::int64_t side = std::int64_t{1} << depth;
    std::uint64_t id = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double u = (x[i] - box.lower[i]) / (box.upper[i] - box.lower[i]);
        auto c = static_cast<std::int64_t>(std::floor(u * static_cast<double>(side)));
        if (c < 0) c = 0;
        if (c >= side) c = side - 1;
        id = (id << depth) | static_cast<std::uint64_t>(c);
    }
    return id;
}

double cell_volume(const Box& box, int depth) {
    check_grid_size(depth, box.dim());
    return box.volume() * std::ldexp(1.0, -depth * static_cast<int>(box.dim()));
}

} // namespace mvrank
