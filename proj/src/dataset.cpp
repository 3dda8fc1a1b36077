#include "mvrank/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mvrank/errors.hpp"

namespace mvrank {

Box::Box(std::vector<double> lo, std::vector<double> up)
    : lower(std::move(lo)), upper(std::move(up)) {
    if (lower.empty() || lower.size() != upper.size()) {
        throw std::invalid_argument("Box: lower and upper must be non-empty and equal length");
    }
    for (std::size_t i = 0; i < lower.size(); ++i) {
        if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]) || !(lower[i] < upper[i])) {
            throw std::invalid_argument("Box: requires finite lower < upper on every axis");
        }
    }
}

double Box::volume() const {
    double v = 1.0;
    for (std::size_t i = 0; i < lower.size(); ++i) v *= upper[i] - lower[i];
    return v;
}

bool Box::contains(std::span<const double> x) const {
    if (x.size() != lower.size()) return false;
    for (std::size_t i = 0; i < lower.size(); ++i) {
        if (x[i] < lower[i] || x[i] > upper[i]) return false;
    }
    return true;
}

Dataset::Dataset(std::vector<double> values, std::size_t n, std::size_t d)
    : values_(std::move(values)), n_(n), d_(d) {
    if (d_ == 0) throw std::invalid_argument("Dataset: dimension must be >= 1");
    if (values_.size() != n_ * d_) {
        throw std::invalid_argument("Dataset: value count does not match n * d");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) throw data_error("Dataset: non-finite value");
    }
}

Box bounding_box(const Dataset& data, double padding) {
    if (data.size() == 0) throw data_error("bounding_box: empty dataset");
    if (!(padding >= 0.0) || !std::isfinite(padding)) {
        throw std::invalid_argument("bounding_box: padding must be >= 0");
    }
    const std::size_t d = data.dim();
    std::vector<double> lo(d), hi(d);
    for (std::size_t j = 0; j < d; ++j) {
        lo[j] = hi[j] = data.row(0)[j];
    }
    for (std::size_t i = 1; i < data.size(); ++i) {
        auto row = data.row(i);
        for (std::size_t j = 0; j < d; ++j) {
            lo[j] = std::min(lo[j], row[j]);
            hi[j] = std::max(hi[j], row[j]);
        }
    }
    for (std::size_t j = 0; j < d; ++j) {
        const double range = hi[j] - lo[j];
        const double pad = range > 0.0 ? padding * range : 1.0;
        lo[j] -= pad;
        hi[j] += pad;
        if (!(lo[j] < hi[j])) { // padding 0 on a zero-range axis
            lo[j] -= 1.0;
            hi[j] += 1.0;
        }
    }
    return Box(std::move(lo), std::move(hi));
}

} // namespace mvrank
