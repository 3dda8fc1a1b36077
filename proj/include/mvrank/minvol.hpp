#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mvrank/dataset.hpp"

namespace mvrank {

// Counts of sample points per nonempty dyadic cell.
struct DyadicHistogram {
    Box box;
    int depth = 0;
    std::map<std::uint64_t, std::uint64_t> counts; // cell id -> count
    std::size_t n = 0;

    double cell_volume() const;
};

// A union of distinct depth-j cells of a box, kept sorted by cell id.
struct CellSet {
    Box box;
    int depth = 0;
    std::vector<std::uint64_t> cells; // sorted ascending
    double empirical_mass = 0;        // fraction of the sample inside
    double volume = 0;                // exact Lebesgue volume

    bool contains(std::uint64_t cell) const;
    std::string to_json() const;
};

// Histogram of the data at the given depth. Points outside the box throw
// data_error when strict, otherwise they are clipped into boundary cells.
DyadicHistogram build_histogram(const Dataset& data, const Box& box, int depth,
                                bool strict = false);

// Mass-deficit penalty 2 c / sqrt(n) + sqrt(ln(1/delta) / (2n)).
// Requires delta in (0, 1) and c >= 0.
double phi_penalty(std::size_t n, double delta, double c);

// Greedy empirical minimum-volume set at mass level alpha - phi: cells
// sorted by count descending (ties by cell id ascending), shortest prefix
// with cumulative mass >= max(alpha - phi, 0). A target <= 0 gives the
// empty set; a target > 1 returns all nonempty cells (the mass constraint
// is then unattainable, visible as empirical_mass < alpha - phi).
CellSet min_volume_set(const DyadicHistogram& hist, double alpha, double phi);

// Density of the last cell the greedy solution includes at level alpha:
// count / (n * cell volume); 0 for an empty solution. alpha in (0, 1].
double q_star_estimate(const DyadicHistogram& hist, double alpha);

// Shared machinery for repeated minimum-volume queries against one
// histogram: the greedy cell order is computed once and every level is a
// prefix of it.
class MinVolSolver {
  public:
    explicit MinVolSolver(const DyadicHistogram& hist);

    const DyadicHistogram& hist() const { return *hist_; }

    // Number of cells in the greedy solution at mass target alpha - phi.
    std::size_t prefix_size(double alpha, double phi) const;

    // Volume of the greedy solution (exact, prefix_size * cell volume).
    double volume_at(double alpha, double phi) const;

    CellSet cell_set(double alpha, double phi) const;

    double q_star(double alpha) const;

  private:
    const DyadicHistogram* hist_;
    std::vector<std::uint64_t> order_;   // cell ids, count desc then id asc
    std::vector<std::uint64_t> cum_;     // cumulative counts along the order
};

} // namespace mvrank
