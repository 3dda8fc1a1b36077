#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mvrank/dataset.hpp"
#include "mvrank/minvol.hpp"
#include "mvrank/scorer.hpp"
#include "mvrank/step_curve.hpp"

namespace mvrank {

// Node of the adaptive dyadic tree on the mass axis. Node (j, k) covers
// [k (1-eps) / 2^j, (k+1) (1-eps) / 2^j); children are (j+1, 2k) and
// (j+1, 2k+1).
struct MVTreeNode {
    int j = 0;
    std::uint64_t k = 0;
    double alpha_lo = 0;
    double alpha_hi = 0;
    double vol_lo = 0;
    double vol_hi = 0;
    double error_hat = 0; // vol_hi - vol_lo, only meaningful below the depth cap
    bool leaf = true;
    int child_lo = -1;
    int child_hi = -1;
};

struct MVTree {
    double epsilon = 0;
    int depth_cap = 0; // floor(log2 n) + 1
    std::vector<MVTreeNode> nodes; // breadth-first, root at 0

    std::size_t leaf_count() const;
    // Leaf node indices ordered by alpha_lo.
    std::vector<int> leaves_in_order() const;
};

// Local error of a mass interval: volume difference of the greedy sets at
// its endpoints. Negative input violates nestedness and throws
// std::logic_error.
double local_error_hat(double vol_hi, double vol_lo);

// Breadth-first adaptive refinement of [0, 1 - epsilon]: a node splits when
// its local error exceeds tau and it is above the depth cap. Returns the
// tree and the piecewise-constant curve taking, on each leaf interval, the
// volume of the greedy set at the interval's right endpoint. Requires
// tau > 0 and epsilon in [0, 1).
struct AdaptiveResult {
    MVTree tree;
    StepCurve curve;
};
AdaptiveResult adaptive_estimate(const MinVolSolver& solver, double phi, double tau,
                                 double epsilon);

// Cumulative unions: out[k] = in[0] | ... | in[k]. Inputs share box and
// depth.
std::vector<CellSet> monotonize(std::span<const CellSet> sets);

struct ARankConfig {
    int depth = 5;
    double epsilon = 0.05;
    double delta = 0.05;
    double rademacher_c = 0.0;
    std::optional<double> phi;  // overrides the delta/c penalty
    std::optional<double> tau;  // overrides 5 phi / q_star(1 - epsilon)
    std::optional<Box> box;     // overrides the padded bounding box
    double padding = 0.05;
    bool strict = false;
};

// Fitted ranking model: nested cell sets at the adaptive mass breakpoints.
struct ARankModel {
    double epsilon = 0;
    int depth = 0;
    Box box;
    double tau = 0;
    double phi = 0;
    std::vector<double> breakpoints; // 0 = a_0 < ... < a_K = 1 - epsilon
    std::vector<CellSet> layers;     // layers[k] = union set at a_k, nested

    std::size_t levels() const { return breakpoints.size() - 1; } // K

    std::string to_json() const;
    static ARankModel from_json(const std::string& text);
};

ARankModel fit_arank(const Dataset& data, const ARankConfig& cfg);

// Piecewise-constant score: K - k + 1 for the first layer k containing x
// (so deeper layers score higher), 0 when x is outside every layer or
// outside the box.
double score_arank(const ARankModel& model, std::span<const double> x);

// Riemann-sum approximation of the density CDF at x:
// sum over k >= 1 of (a_k - a_{k-1}) for layers k containing x.
double density_cdf_approx(const ARankModel& model, std::span<const double> x);

// Wraps the model as a Scorer (useful for batch scoring and MV evaluation).
ScorerPtr arank_scorer(const ARankModel& model);

// MV curve of the model's nested layers: layer masses from a dataset (or
// supplied reference masses) with exact cell volumes. Layers whose mass does
// not increase are dropped. append_box_layer extends the curve to mass 1
// with the full box volume, matching the score-0 level set.
StepCurve mv_curve_of_model(const ARankModel& model, std::span<const double> masses,
                            bool append_box_layer = false);
std::vector<double> layer_masses(const ARankModel& model, const Dataset& data);

} // namespace mvrank
