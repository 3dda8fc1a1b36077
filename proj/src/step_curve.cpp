#include "mvrank/step_curve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "mvrank/errors.hpp"
#include "mvrank/io.hpp"

namespace mvrank {

StepCurve::StepCurve(std::vector<double> breakpoints, std::vector<double> values)
    : breaks_(std::move(breakpoints)), values_(std::move(values)) {
    if (breaks_.size() < 2 || values_.size() + 1 != breaks_.size()) {
        throw std::invalid_argument("StepCurve: need K+1 breakpoints and K values, K >= 1");
    }
    if (breaks_.front() != 0.0) {
        throw std::invalid_argument("StepCurve: breakpoints must start at 0");
    }
    if (!(breaks_.back() <= 1.0)) {
        throw std::invalid_argument("StepCurve: breakpoints must end at or below 1");
    }
    for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
        if (!(breaks_[i] < breaks_[i + 1])) {
            throw std::invalid_argument("StepCurve: breakpoints must be strictly increasing");
        }
    }
    for (double v : values_) {
        if (!std::isfinite(v) || v < 0.0) {
            throw std::invalid_argument("StepCurve: values must be finite and >= 0");
        }
    }
}

double StepCurve::value_at(double alpha) const {
    if (!(alpha >= 0.0) || !(alpha < breaks_.back())) {
        throw std::domain_error("StepCurve: alpha outside [0, domain end)");
    }
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), alpha);
    return values_[static_cast<std::size_t>(it - breaks_.begin()) - 1];
}

bool StepCurve::is_nondecreasing() const {
    return std::is_sorted(values_.begin(), values_.end());
}

std::string StepCurve::to_csv() const {
    std::string out = "alpha,value\n";
    for (std::size_t k = 0; k < breaks_.size(); ++k) {
        const double v = values_[std::min(k, values_.size() - 1)];
        out += format_double(breaks_[k]);
        out += ',';
        out += format_double(v);
        out += '\n';
    }
    return out;
}

std::string StepCurve::to_json() const {
    nlohmann::json j;
    j["breakpoints"] = breaks_;
    j["values"] = values_;
    return j.dump();
}

StepCurve StepCurve::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
        return StepCurve(j.at("breakpoints").get<std::vector<double>>(),
                         j.at("values").get<std::vector<double>>());
    } catch (const nlohmann::json::exception& e) {
        throw data_error(std::string("StepCurve: bad JSON: ") + e.what());
    }
}

namespace {

// Shared walk over the merged breakpoints of [a, b); fn(value_f, value_g,
// piece_start, piece_end) is called once per constant piece.
template <typename Fn>
void merged_pieces(const StepCurve& f, const StepCurve& g, double a, double b, Fn fn) {
    if (!(a >= 0.0) || !(a <= b) || !(b <= f.domain_end()) || !(b <= g.domain_end())) {
        throw std::domain_error("curve distance: interval outside the common domain");
    }
    if (a == b) return;
    std::vector<double> pts;
    pts.push_back(a);
    for (double t : f.breakpoints()) {
        if (t > a && t < b) pts.push_back(t);
    }
    for (double t : g.breakpoints()) {
        if (t > a && t < b) pts.push_back(t);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    pts.push_back(b);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        fn(f.value_at(pts[i]), g.value_at(pts[i]), pts[i], pts[i + 1]);
    }
}

} // namespace

double sup_distance(const StepCurve& f, const StepCurve& g, double a, double b) {
    double sup = 0.0;
    merged_pieces(f, g, a, b, [&](double vf, double vg, double, double) {
        sup = std::max(sup, std::fabs(vf - vg));
    });
    return sup;
}

double l1_distance(const StepCurve& f, const StepCurve& g, double a, double b) {
    double total = 0.0;
    merged_pieces(f, g, a, b, [&](double vf, double vg, double lo, double hi) {
        total += std::fabs(vf - vg) * (hi - lo);
    });
    return total;
}

} // namespace mvrank
