#include "mvrank/scorer.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "mvrank/cells.hpp"
#include "mvrank/distributions.hpp"
#include "mvrank/errors.hpp"
#include "mvrank/kernels.hpp"

namespace mvrank {

using nlohmann::json;

void GaussianParams::validate() const {
    if (mean.empty() || mean.size() != diag_cov.size()) {
        throw std::invalid_argument("GaussianParams: mean and diag_cov must be non-empty, equal length");
    }
    for (double m : mean) {
        if (!std::isfinite(m)) throw std::invalid_argument("GaussianParams: non-finite mean");
    }
    for (double v : diag_cov) {
        if (!std::isfinite(v) || !(v > 0.0)) {
            throw std::invalid_argument("GaussianParams: diag_cov entries must be > 0");
        }
    }
}

GaussianComponent GaussianComponent::from_diag(const GaussianParams& p) {
    p.validate();
    const std::size_t d = p.mean.size();
    GaussianComponent c;
    c.mean = p.mean;
    c.chol.assign(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) c.chol[i * d + i] = std::sqrt(p.diag_cov[i]);
    return c;
}

void GaussianComponent::validate() const {
    const std::size_t d = mean.size();
    if (d == 0 || chol.size() != d * d) {
        throw std::invalid_argument("GaussianComponent: chol must be d x d");
    }
    for (double m : mean) {
        if (!std::isfinite(m)) throw std::invalid_argument("GaussianComponent: non-finite mean");
    }
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            const double v = chol[i * d + j];
            if (!std::isfinite(v)) throw std::invalid_argument("GaussianComponent: non-finite chol");
            if (j > i && v != 0.0) {
                throw std::invalid_argument("GaussianComponent: chol must be lower triangular");
            }
        }
        if (!(chol[i * d + i] > 0.0)) {
            throw std::invalid_argument("GaussianComponent: chol diagonal must be > 0");
        }
    }
}

double GaussianComponent::log_density(std::span<const double> x) const {
    const std::size_t d = mean.size();
    // Forward-substitute L y = x - mean, then use |x - mean|_Sigma^2 = |y|^2.
    double quad = 0.0;
    double log_det = 0.0;
    std::vector<double> y(d);
    for (std::size_t i = 0; i < d; ++i) {
        double r = x[i] - mean[i];
        for (std::size_t j = 0; j < i; ++j) r -= chol[i * d + j] * y[j];
        y[i] = r / chol[i * d + i];
        quad += y[i] * y[i];
        log_det += std::log(chol[i * d + i]);
    }
    return -0.5 * quad - 0.5 * d * std::log(2.0 * std::numbers::pi) - log_det;
}

void MixtureParams::validate() const {
    if (weights.empty() || weights.size() != components.size()) {
        throw std::invalid_argument("MixtureParams: need one weight per component");
    }
    double sum = 0.0;
    for (double w : weights) {
        if (!std::isfinite(w) || w < 0.0) {
            throw std::invalid_argument("MixtureParams: weights must be >= 0");
        }
        sum += w;
    }
    if (std::fabs(sum - 1.0) > 1e-12) {
        throw std::invalid_argument("MixtureParams: weights must sum to 1 within 1e-12");
    }
    const std::size_t d = components.front().mean.size();
    for (const auto& c : components) {
        c.validate();
        if (c.mean.size() != d) {
            throw std::invalid_argument("MixtureParams: components must share a dimension");
        }
    }
}

MonotoneTransform MonotoneTransform::atan_rescaled() {
    MonotoneTransform t;
    t.kind = Kind::AtanRescaled;
    return t;
}

MonotoneTransform MonotoneTransform::rational() {
    MonotoneTransform t;
    t.kind = Kind::Rational;
    return t;
}

MonotoneTransform MonotoneTransform::affine(double a, double b) {
    if (!(a > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
        throw std::invalid_argument("affine transform: slope must be finite and > 0");
    }
    MonotoneTransform t;
    t.kind = Kind::Affine;
    t.a = a;
    t.b = b;
    return t;
}

MonotoneTransform MonotoneTransform::power(double p) {
    if (!(p > 0.0) || !std::isfinite(p)) {
        throw std::invalid_argument("power transform: exponent must be finite and > 0");
    }
    MonotoneTransform t;
    t.kind = Kind::Power;
    t.p = p;
    return t;
}

double MonotoneTransform::apply(double s) const {
    switch (kind) {
        case Kind::AtanRescaled: return 2.0 * std::numbers::inv_pi * std::atan(s);
        case Kind::Rational: return s / (1.0 + s);
        case Kind::Affine: return a * s + b;
        case Kind::Power: return std::pow(s, p);
    }
    throw std::logic_error("MonotoneTransform: unknown kind");
}

std::string MonotoneTransform::name() const {
    switch (kind) {
        case Kind::AtanRescaled: return "atan";
        case Kind::Rational: return "rational";
        case Kind::Affine: return "affine";
        case Kind::Power: return "power";
    }
    throw std::logic_error("MonotoneTransform: unknown kind");
}

namespace {

void check_dim(std::span<const double> x, std::size_t d) {
    if (x.size() != d) throw data_error("scorer: point dimension mismatch");
}

class GaussianDensityScorer final : public Scorer {
  public:
    explicit GaussianDensityScorer(GaussianParams p) : params_(std::move(p)) {
        params_.validate();
        log_norm_ = 0.0;
        for (double v : params_.diag_cov) {
            log_norm_ += 0.5 * std::log(2.0 * std::numbers::pi * v);
        }
    }

    std::size_t dim() const override { return params_.mean.size(); }

    double score(std::span<const double> x) const override {
        check_dim(x, dim());
        double quad = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double r = x[i] - params_.mean[i];
            quad += r * r / params_.diag_cov[i];
        }
        return std::exp(-0.5 * quad - log_norm_);
    }

    std::string to_json() const override {
        json j;
        j["kind"] = "gaussian_density";
        j["params"]["mean"] = params_.mean;
        j["params"]["diag_cov"] = params_.diag_cov;
        return j.dump();
    }

  private:
    GaussianParams params_;
    double log_norm_ = 0.0;
};

class MixtureDensityScorer final : public Scorer {
  public:
    explicit MixtureDensityScorer(MixtureParams p) : params_(std::move(p)) {
        params_.validate();
    }

    std::size_t dim() const override { return params_.components.front().mean.size(); }

    double score(std::span<const double> x) const override {
        check_dim(x, dim());
        double density = 0.0;
        for (std::size_t k = 0; k < params_.weights.size(); ++k) {
            density += params_.weights[k] * std::exp(params_.components[k].log_density(x));
        }
        return density;
    }

    std::string to_json() const override {
        json comps = json::array();
        const std::size_t d = dim();
        for (const auto& c : params_.components) {
            json jc;
            jc["mean"] = c.mean;
            json rows = json::array();
            for (std::size_t i = 0; i < d; ++i) {
                rows.push_back(std::vector<double>(c.chol.begin() + i * d,
                                                   c.chol.begin() + (i + 1) * d));
            }
            jc["chol"] = rows;
            comps.push_back(jc);
        }
        json j;
        j["kind"] = "mixture_density";
        j["params"]["weights"] = params_.weights;
        j["params"]["components"] = comps;
        return j.dump();
    }

    const MixtureParams& params() const { return params_; }

  private:
    MixtureParams params_;
};

class DyadicPiecewiseScorer final : public Scorer {
  public:
    DyadicPiecewiseScorer(Box box, int depth, std::map<std::uint64_t, double> levels)
        : box_(std::move(box)), depth_(depth), levels_(std::move(levels)) {
        check_grid_size(depth_, box_.dim());
        const std::uint64_t n_cells_log2 = static_cast<std::uint64_t>(depth_) * box_.dim();
        for (const auto& [cell, level] : levels_) {
            if (cell >> n_cells_log2 != 0) {
                throw std::invalid_argument("DyadicPiecewise: cell id out of range");
            }
            if (!std::isfinite(level) || !(level > 0.0)) {
                throw std::invalid_argument("DyadicPiecewise: levels must be > 0");
            }
        }
    }

    std::size_t dim() const override { return box_.dim(); }

    double score(std::span<const double> x) const override {
        check_dim(x, dim());
        if (!box_.contains(x)) return 0.0;
        auto it = levels_.find(cell_of_point(x, box_, depth_));
        return it == levels_.end() ? 0.0 : it->second;
    }

    std::string to_json() const override {
        json cells = json::array();
        json levels = json::array();
        for (const auto& [cell, level] : levels_) {
            cells.push_back(cell_tuple_from_id(cell, depth_, box_.dim()));
            levels.push_back(level);
        }
        json j;
        j["kind"] = "dyadic_piecewise";
        j["params"]["box"]["lower"] = box_.lower;
        j["params"]["box"]["upper"] = box_.upper;
        j["params"]["depth"] = depth_;
        j["params"]["cells"] = cells;
        j["params"]["levels"] = levels;
        return j.dump();
    }

    const Box& box() const { return box_; }
    int depth() const { return depth_; }
    const std::map<std::uint64_t, double>& levels() const { return levels_; }

  private:
    Box box_;
    int depth_;
    std::map<std::uint64_t, double> levels_;
};

class MonotoneTransformedScorer final : public Scorer {
  public:
    MonotoneTransformedScorer(ScorerPtr base, MonotoneTransform t)
        : base_(std::move(base)), t_(t) {
        if (!base_) throw std::invalid_argument("MonotoneTransformed: null base scorer");
    }

    std::size_t dim() const override { return base_->dim(); }

    double score(std::span<const double> x) const override {
        return t_.apply(base_->score(x));
    }

    std::string to_json() const override {
        json j;
        j["kind"] = "monotone_transformed";
        j["params"]["transform"] = t_.name();
        if (t_.kind == MonotoneTransform::Kind::Affine) {
            j["params"]["a"] = t_.a;
            j["params"]["b"] = t_.b;
        }
        if (t_.kind == MonotoneTransform::Kind::Power) {
            j["params"]["p"] = t_.p;
        }
        j["params"]["base"] = json::parse(base_->to_json());
        return j.dump();
    }

  private:
    ScorerPtr base_;
    MonotoneTransform t_;
};

class TruncatedGaussian1dScorer final : public Scorer {
  public:
    TruncatedGaussian1dScorer(double mean, double sd, double lo, double hi)
        : mean_(mean), sd_(sd), lo_(lo), hi_(hi) {
        if (!std::isfinite(mean) || !(sd > 0.0) || !std::isfinite(sd) || !(lo < hi) ||
            !std::isfinite(lo) || !std::isfinite(hi)) {
            throw std::invalid_argument("TruncatedGaussian1d: need sd > 0 and lo < hi");
        }
        z_ = norm_cdf((hi_ - mean_) / sd_) - norm_cdf((lo_ - mean_) / sd_);
        if (!(z_ > 0.0)) {
            throw std::invalid_argument("TruncatedGaussian1d: no mass on [lo, hi]");
        }
    }

    std::size_t dim() const override { return 1; }

    double score(std::span<const double> x) const override {
        check_dim(x, 1);
        if (x[0] < lo_ || x[0] > hi_) return 0.0;
        return norm_pdf((x[0] - mean_) / sd_) / (sd_ * z_);
    }

    std::string to_json() const override {
        json j;
        j["kind"] = "truncated_gaussian_1d";
        j["params"]["mean"] = mean_;
        j["params"]["sd"] = sd_;
        j["params"]["lo"] = lo_;
        j["params"]["hi"] = hi_;
        return j.dump();
    }

  private:
    double mean_, sd_, lo_, hi_;
    double z_ = 1.0;
};

GaussianComponent component_from_json(const json& jc) {
    GaussianComponent c;
    c.mean = jc.at("mean").get<std::vector<double>>();
    const std::size_t d = c.mean.size();
    if (jc.contains("chol")) {
        auto rows = jc.at("chol").get<std::vector<std::vector<double>>>();
        if (rows.size() != d) throw data_error("scorer spec: chol must have d rows");
        c.chol.assign(d * d, 0.0);
        for (std::size_t i = 0; i < d; ++i) {
            if (rows[i].size() != d) throw data_error("scorer spec: chol rows must have d entries");
            for (std::size_t j = 0; j < d; ++j) c.chol[i * d + j] = rows[i][j];
        }
    } else {
        GaussianParams p;
        p.mean = c.mean;
        p.diag_cov = jc.at("diag_cov").get<std::vector<double>>();
        c = GaussianComponent::from_diag(p);
    }
    return c;
}

ScorerPtr parse_scorer_json(const json& j) {
    const auto kind = j.at("kind").get<std::string>();
    const json& p = j.at("params");
    if (kind == "gaussian_density") {
        GaussianParams g;
        g.mean = p.at("mean").get<std::vector<double>>();
        g.diag_cov = p.at("diag_cov").get<std::vector<double>>();
        return make_gaussian_density(std::move(g));
    }
    if (kind == "mixture_density") {
        MixtureParams m;
        m.weights = p.at("weights").get<std::vector<double>>();
        for (const auto& jc : p.at("components")) {
            m.components.push_back(component_from_json(jc));
        }
        return make_mixture_density(std::move(m));
    }
    if (kind == "dyadic_piecewise") {
        Box box(p.at("box").at("lower").get<std::vector<double>>(),
                p.at("box").at("upper").get<std::vector<double>>());
        const int depth = p.at("depth").get<int>();
        auto cells = p.at("cells").get<std::vector<std::vector<std::uint32_t>>>();
        auto levels = p.at("levels").get<std::vector<double>>();
        if (cells.size() != levels.size()) {
            throw data_error("scorer spec: cells and levels must have equal length");
        }
        std::map<std::uint64_t, double> by_id;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (cells[i].size() != box.dim()) {
                throw data_error("scorer spec: cell tuple dimension mismatch");
            }
            by_id[cell_id_from_tuple(cells[i], depth)] = levels[i];
        }
        return make_dyadic_piecewise(std::move(box), depth, std::move(by_id));
    }
    if (kind == "monotone_transformed") {
        const auto name = p.at("transform").get<std::string>();
        MonotoneTransform t;
        if (name == "atan") {
            t = MonotoneTransform::atan_rescaled();
        } else if (name == "rational") {
            t = MonotoneTransform::rational();
        } else if (name == "affine") {
            t = MonotoneTransform::affine(p.at("a").get<double>(), p.at("b").get<double>());
        } else if (name == "power") {
            t = MonotoneTransform::power(p.at("p").get<double>());
        } else {
            throw data_error("scorer spec: unknown transform " + name);
        }
        return make_monotone_transformed(parse_scorer_json(p.at("base")), t);
    }
    if (kind == "truncated_gaussian_1d") {
        return make_truncated_gaussian_1d(p.at("mean").get<double>(), p.at("sd").get<double>(),
                                          p.at("lo").get<double>(), p.at("hi").get<double>());
    }
    throw data_error("scorer spec: unknown kind " + kind);
}

} // namespace

ScorerPtr make_gaussian_density(GaussianParams params) {
    return std::make_shared<GaussianDensityScorer>(std::move(params));
}

ScorerPtr make_mixture_density(MixtureParams params) {
    return std::make_shared<MixtureDensityScorer>(std::move(params));
}

ScorerPtr make_dyadic_piecewise(Box box, int depth, std::map<std::uint64_t, double> levels) {
    return std::make_shared<DyadicPiecewiseScorer>(std::move(box), depth, std::move(levels));
}

ScorerPtr make_monotone_transformed(ScorerPtr base, MonotoneTransform t) {
    return std::make_shared<MonotoneTransformedScorer>(std::move(base), t);
}

ScorerPtr make_truncated_gaussian_1d(double mean, double sd, double lo, double hi) {
    return std::make_shared<TruncatedGaussian1dScorer>(mean, sd, lo, hi);
}

ScorerPtr parse_scorer(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw data_error(std::string("scorer spec: bad JSON: ") + e.what());
    }
    try {
        return parse_scorer_json(j);
    } catch (const json::exception& e) {
        throw data_error(std::string("scorer spec: ") + e.what());
    }
}

std::vector<double> score_batch(const Scorer& s, const Dataset& data, Exec exec) {
    if (data.size() > 0 && data.dim() != s.dim()) {
        throw data_error("score_batch: data dimension does not match the scorer");
    }
    std::vector<double> out(data.size());
    score_points_kernel(s, data.values(), data.size(), data.dim(), out, exec);
    return out;
}

Dataset simulate_mixture(const MixtureParams& params, std::size_t n, RandomSource& rng) {
    params.validate();
    if (n == 0) throw std::invalid_argument("simulate_mixture: n must be >= 1");
    const std::size_t d = params.components.front().mean.size();
    std::vector<double> values(n * d);
    std::vector<double> z(d);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.uniform();
        std::size_t k = 0;
        double cum = 0.0;
        for (; k + 1 < params.weights.size(); ++k) {
            cum += params.weights[k];
            if (u < cum) break;
        }
        const auto& comp = params.components[k];
        for (std::size_t a = 0; a < d; ++a) z[a] = rng.normal();
        for (std::size_t r = 0; r < d; ++r) {
            double v = comp.mean[r];
            for (std::size_t c = 0; c <= r; ++c) v += comp.chol[r * d + c] * z[c];
            values[i * d + r] = v;
        }
    }
    return Dataset(std::move(values), n, d);
}

} // namespace mvrank
