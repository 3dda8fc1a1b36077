#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mvrank {

// Axis-aligned box. lower[i] < upper[i] for every axis.
struct Box {
    std::vector<double> lower;
    std::vector<double> upper;

    Box() = default;
    Box(std::vector<double> lo, std::vector<double> up);

    std::size_t dim() const { return lower.size(); }
    double volume() const;
    bool contains(std::span<const double> x) const;
};

// Dense n x d sample, row-major. All entries finite.
class Dataset {
  public:
    Dataset() = default;
    Dataset(std::vector<double> values, std::size_t n, std::size_t d);

    std::size_t size() const { return n_; }
    std::size_t dim() const { return d_; }
    std::span<const double> row(std::size_t i) const {
        return {values_.data() + i * d_, d_};
    }
    const std::vector<double>& values() const { return values_; }

  private:
    std::vector<double> values_;
    std::size_t n_ = 0;
    std::size_t d_ = 0;
};

// Smallest box containing the data, widened per axis by padding * range.
// A zero-range axis is widened by 1.0 on each side instead.
Box bounding_box(const Dataset& data, double padding);

} // namespace mvrank
