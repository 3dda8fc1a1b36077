#include "mvrank/arank.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "mvrank/cells.hpp"
#include "mvrank/errors.hpp"
#include "mvrank/mv_curve.hpp"

namespace mvrank {

std::size_t MVTree::leaf_count() const {
    std::size_t count = 0;
    for (const auto& node : nodes) count += node.leaf ? 1 : 0;
    return count;
}

std::vector<int> MVTree::leaves_in_order() const {
    std::vector<int> leaves;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].leaf) leaves.push_back(static_cast<int>(i));
    }
    std::sort(leaves.begin(), leaves.end(), [&](int a, int b) {
        return nodes[a].alpha_lo < nodes[b].alpha_lo;
    });
    return leaves;
}

double local_error_hat(double vol_hi, double vol_lo) {
    const double err = vol_hi - vol_lo;
    if (err < 0.0) {
        throw std::logic_error("local_error_hat: nested set volumes out of order");
    }
    return err;
}

AdaptiveResult adaptive_estimate(const MinVolSolver& solver, double phi, double tau,
                                 double epsilon) {
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw std::invalid_argument("adaptive_estimate: tau must be > 0");
    }
    if (!(epsilon >= 0.0 && epsilon < 1.0)) {
        throw std::invalid_argument("adaptive_estimate: epsilon must be in [0, 1)");
    }
    if (!(phi >= 0.0) || !std::isfinite(phi)) {
        throw std::invalid_argument("adaptive_estimate: phi must be >= 0");
    }

    const std::size_t n = solver.hist().n;
    const int j_max = static_cast<int>(std::bit_width(n)); // floor(log2 n) + 1
    if (j_max > 62) throw std::invalid_argument("adaptive_estimate: sample too large");
    const double scale = 1.0 - epsilon;
    const std::uint64_t full = std::uint64_t{1} << j_max;

    // Mass levels are addressed by the integer key m = k * 2^(j_max - j), so
    // a level shared between depths maps to the same double and volume.
    std::unordered_map<std::uint64_t, double> vol_cache;
    auto alpha_of = [&](std::uint64_t m) {
        return scale * (static_cast<double>(m) / static_cast<double>(full));
    };
    auto vol_of = [&](std::uint64_t m) {
        auto it = vol_cache.find(m);
        if (it != vol_cache.end()) return it->second;
        const double v = solver.volume_at(alpha_of(m), phi);
        vol_cache.emplace(m, v);
        return v;
    };

    MVTree tree;
    tree.epsilon = epsilon;
    tree.depth_cap = j_max;

    auto make_node = [&](int j, std::uint64_t k) {
        MVTreeNode node;
        node.j = j;
        node.k = k;
        const int shift = j_max - j;
        const std::uint64_t m_lo = k << shift;
        const std::uint64_t m_hi = (k + 1) << shift;
        node.alpha_lo = alpha_of(m_lo);
        node.alpha_hi = alpha_of(m_hi);
        node.vol_lo = vol_of(m_lo);
        node.vol_hi = vol_of(m_hi);
        node.error_hat = local_error_hat(node.vol_hi, node.vol_lo);
        return node;
    };

    std::deque<std::size_t> queue;
    tree.nodes.push_back(make_node(0, 0));
    queue.push_back(0);
    while (!queue.empty()) {
        const std::size_t idx = queue.front();
        queue.pop_front();
        const int j = tree.nodes[idx].j;
        const std::uint64_t k = tree.nodes[idx].k;
        if (j < j_max && tree.nodes[idx].error_hat > tau) {
            const auto base = tree.nodes.size();
            tree.nodes[idx].leaf = false;
            tree.nodes[idx].child_lo = static_cast<int>(base);
            tree.nodes[idx].child_hi = static_cast<int>(base + 1);
            tree.nodes.push_back(make_node(j + 1, 2 * k));
            tree.nodes.push_back(make_node(j + 1, 2 * k + 1));
            queue.push_back(base);
            queue.push_back(base + 1);
        }
    }

    const auto leaves = tree.leaves_in_order();
    std::vector<double> breaks;
    std::vector<double> values;
    breaks.reserve(leaves.size() + 1);
    values.reserve(leaves.size());
    for (int leaf : leaves) {
        breaks.push_back(tree.nodes[leaf].alpha_lo);
        values.push_back(tree.nodes[leaf].vol_hi);
    }
    breaks.push_back(scale);
    return AdaptiveResult{std::move(tree), StepCurve(std::move(breaks), std::move(values))};
}

std::vector<CellSet> monotonize(std::span<const CellSet> sets) {
    std::vector<CellSet> out;
    out.reserve(sets.size());
    for (const auto& set : sets) {
        if (out.empty()) {
            out.push_back(set);
            continue;
        }
        const CellSet& prev = out.back();
        if (set.depth != prev.depth || set.box.dim() != prev.box.dim()) {
            throw std::invalid_argument("monotonize: sets must share box and depth");
        }
        CellSet merged;
        merged.box = set.box;
        merged.depth = set.depth;
        merged.cells.reserve(prev.cells.size() + set.cells.size());
        std::set_union(prev.cells.begin(), prev.cells.end(), set.cells.begin(),
                       set.cells.end(), std::back_inserter(merged.cells));
        merged.volume = static_cast<double>(merged.cells.size()) * cell_volume(set.box, set.depth);
        // Exact for nested inputs (the fitting path); a lower bound otherwise.
        merged.empirical_mass = std::max(prev.empirical_mass, set.empirical_mass);
        out.push_back(std::move(merged));
    }
    return out;
}

ARankModel fit_arank(const Dataset& data, const ARankConfig& cfg) {
    if (!(cfg.epsilon >= 0.0 && cfg.epsilon < 1.0)) {
        throw std::invalid_argument("fit_arank: epsilon must be in [0, 1)");
    }
    const Box box = cfg.box ? *cfg.box : bounding_box(data, cfg.padding);
    DyadicHistogram hist = build_histogram(data, box, cfg.depth, cfg.strict);
    const double phi = cfg.phi ? *cfg.phi : phi_penalty(hist.n, cfg.delta, cfg.rademacher_c);
    if (!(phi >= 0.0)) throw std::invalid_argument("fit_arank: phi must be >= 0");
    MinVolSolver solver(hist);

    double tau;
    if (cfg.tau) {
        tau = *cfg.tau;
    } else {
        const double q_star = solver.q_star(1.0 - cfg.epsilon);
        if (!(q_star > 0.0)) {
            throw numerical_error("fit_arank: boundary density estimate is zero; pass tau");
        }
        tau = 5.0 * phi / q_star;
    }
    if (!(tau > 0.0)) {
        throw std::invalid_argument("fit_arank: tau must be > 0 (pass tau explicitly when phi = 0)");
    }

    AdaptiveResult adaptive = adaptive_estimate(solver, phi, tau, cfg.epsilon);

    ARankModel model;
    model.epsilon = cfg.epsilon;
    model.depth = cfg.depth;
    model.box = box;
    model.tau = tau;
    model.phi = phi;
    model.breakpoints = adaptive.curve.breakpoints();

    std::vector<CellSet> raw;
    raw.reserve(model.breakpoints.size());
    for (double alpha : model.breakpoints) {
        raw.push_back(solver.cell_set(alpha, phi));
    }
    model.layers = monotonize(raw);
    return model;
}

namespace {

// Smallest layer index containing x's cell, or npos.
std::size_t first_layer(const ARankModel& model, std::span<const double> x) {
    if (x.size() != model.box.dim()) {
        throw data_error("arank: point dimension does not match the model");
    }
    if (!model.box.contains(x)) return static_cast<std::size_t>(-1);
    const std::uint64_t cell = cell_of_point(x, model.box, model.depth);
    for (std::size_t k = 0; k < model.layers.size(); ++k) {
        if (model.layers[k].contains(cell)) return k;
    }
    return static_cast<std::size_t>(-1);
}

} // namespace

double score_arank(const ARankModel& model, std::span<const double> x) {
    const std::size_t k = first_layer(model, x);
    if (k == static_cast<std::size_t>(-1)) return 0.0;
    const std::size_t levels = model.levels(); // K
    return static_cast<double>(levels - k + 1);
}

double density_cdf_approx(const ARankModel& model, std::span<const double> x) {
    const std::size_t k = first_layer(model, x);
    if (k == static_cast<std::size_t>(-1)) return 0.0;
    // Right-endpoint Riemann rule: each gap (a_{k-1}, a_k] counts when x lies
    // in layer k; with nested layers the sum telescopes.
    const std::size_t start = k == 0 ? 1 : k;
    return model.breakpoints.back() - model.breakpoints[start - 1];
}

ScorerPtr arank_scorer(const ARankModel& model) {
    std::map<std::uint64_t, double> levels;
    const std::size_t n_levels = model.levels();
    for (std::size_t k = model.layers.size(); k-- > 0;) {
        const double score = static_cast<double>(n_levels - k + 1);
        for (std::uint64_t cell : model.layers[k].cells) {
            levels[cell] = score; // lower k overwrites: first containing layer
        }
    }
    return make_dyadic_piecewise(model.box, model.depth, std::move(levels));
}

std::vector<double> layer_masses(const ARankModel& model, const Dataset& data) {
    if (data.size() == 0) throw data_error("layer_masses: empty dataset");
    if (data.dim() != model.box.dim()) {
        throw data_error("layer_masses: data dimension does not match the model");
    }
    std::unordered_map<std::uint64_t, std::size_t> first;
    for (std::size_t k = model.layers.size(); k-- > 0;) {
        for (std::uint64_t cell : model.layers[k].cells) first[cell] = k;
    }
    std::vector<std::size_t> hits(model.layers.size(), 0);
    for (std::size_t i = 0; i < data.size(); ++i) {
        auto row = data.row(i);
        if (!model.box.contains(row)) continue;
        auto it = first.find(cell_of_point(row, model.box, model.depth));
        if (it != first.end()) ++hits[it->second];
    }
    std::vector<double> masses(model.layers.size());
    std::size_t running = 0;
    for (std::size_t k = 0; k < masses.size(); ++k) {
        running += hits[k];
        masses[k] = static_cast<double>(running) / static_cast<double>(data.size());
    }
    return masses;
}

StepCurve mv_curve_of_model(const ARankModel& model, std::span<const double> masses,
                            bool append_box_layer) {
    if (masses.size() != model.layers.size()) {
        throw std::invalid_argument("mv_curve_of_model: need one mass per layer");
    }
    std::vector<double> kept_masses;
    std::vector<double> kept_volumes;
    double prev = 0.0;
    for (std::size_t k = 0; k < masses.size(); ++k) {
        if (masses[k] > prev) {
            kept_masses.push_back(masses[k]);
            kept_volumes.push_back(model.layers[k].volume);
            prev = masses[k];
        }
    }
    if (append_box_layer && (kept_masses.empty() || kept_masses.back() < 1.0)) {
        kept_masses.push_back(1.0);
        kept_volumes.push_back(model.box.volume());
    }
    if (kept_masses.empty()) {
        throw data_error("mv_curve_of_model: layers cover no mass");
    }
    return exact_mv_for_partition(kept_masses, kept_volumes);
}

std::string ARankModel::to_json() const {
    nlohmann::json layers_json = nlohmann::json::array();
    nlohmann::json masses_json = nlohmann::json::array();
    for (const auto& layer : layers) {
        nlohmann::json tuples = nlohmann::json::array();
        for (std::uint64_t id : layer.cells) {
            tuples.push_back(cell_tuple_from_id(id, depth, box.dim()));
        }
        layers_json.push_back(tuples);
        masses_json.push_back(layer.empirical_mass);
    }
    nlohmann::json j;
    j["epsilon"] = epsilon;
    j["depth"] = depth;
    j["tau"] = tau;
    j["phi"] = phi;
    j["box"]["lower"] = box.lower;
    j["box"]["upper"] = box.upper;
    j["breakpoints"] = breakpoints;
    j["layers"] = layers_json;
    j["layer_masses"] = masses_json;
    return j.dump();
}

ARankModel ARankModel::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
        ARankModel model;
        model.epsilon = j.at("epsilon").get<double>();
        model.depth = j.at("depth").get<int>();
        model.tau = j.at("tau").get<double>();
        model.phi = j.at("phi").get<double>();
        model.box = Box(j.at("box").at("lower").get<std::vector<double>>(),
                        j.at("box").at("upper").get<std::vector<double>>());
        model.breakpoints = j.at("breakpoints").get<std::vector<double>>();
        const auto layers = j.at("layers");
        const auto masses = j.at("layer_masses").get<std::vector<double>>();
        if (model.breakpoints.size() < 2 || layers.size() != model.breakpoints.size() ||
            masses.size() != layers.size()) {
            throw data_error("ARankModel: inconsistent breakpoints and layers");
        }
        const double cv = cell_volume(model.box, model.depth);
        for (std::size_t k = 0; k < layers.size(); ++k) {
            CellSet set;
            set.box = model.box;
            set.depth = model.depth;
            for (const auto& tuple : layers[k]) {
                set.cells.push_back(
                    cell_id_from_tuple(tuple.get<std::vector<std::uint32_t>>(), model.depth));
            }
            std::sort(set.cells.begin(), set.cells.end());
            set.empirical_mass = masses[k];
            set.volume = static_cast<double>(set.cells.size()) * cv;
            if (k > 0 && !std::includes(set.cells.begin(), set.cells.end(),
                                        model.layers[k - 1].cells.begin(),
                                        model.layers[k - 1].cells.end())) {
                throw data_error("ARankModel: layers are not nested");
            }
            model.layers.push_back(std::move(set));
        }
        return model;
    } catch (const nlohmann::json::exception& e) {
        throw data_error(std::string("ARankModel: bad JSON: ") + e.what());
    }
}

} // namespace mvrank
