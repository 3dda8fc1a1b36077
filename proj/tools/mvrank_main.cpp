#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mvrank/arank.hpp"
#include "mvrank/bootstrap.hpp"
#include "mvrank/dataset.hpp"
#include "mvrank/errors.hpp"
#include "mvrank/io.hpp"
#include "mvrank/kde.hpp"
#include "mvrank/minvol.hpp"
#include "mvrank/mv_curve.hpp"
#include "mvrank/random.hpp"
#include "mvrank/scorer.hpp"
#include "mvrank/step_curve.hpp"
#include "mvrank/volume.hpp"

namespace {

using namespace mvrank;

// Shared option values across subcommands.
struct Options {
    std::uint64_t seed = 20240101;
    std::size_t mc_samples = 1000000;
    std::size_t n = 0;
    int depth = 5;
    double epsilon = 0.05;
    double eta = 0.10;
    double delta = 0.05;
    double padding = 0.05;
    double rademacher_c = 0.0;
    std::size_t grid = 512;
    std::size_t reps = 0;
    std::size_t n_ref = 50000;
    std::optional<double> tau;
    std::optional<double> bandwidth;
    std::string scorer_spec;
    std::string mixture_spec;
    std::string family;
    double sigma = 1.0;
    std::vector<double> diag_cov;
    std::vector<double> box_min;
    std::vector<double> box_max;
    std::string data_path;
    std::string model_path;
    std::string out_path;
    std::string summary_path;
    bool naive = false;
    bool strict = false;
};

// Option values may name a file with "@path".
std::string spec_text(const std::string& arg) {
    if (!arg.empty() && arg.front() == '@') return read_file(arg.substr(1));
    return arg;
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
    } else {
        write_file(out_path, text);
    }
}

MixtureParams benchmark_mixture() {
    // Two-component 2-d Gaussian mixture used across the examples: equal
    // weights, one correlated and one spherical component.
    MixtureParams mix;
    mix.weights = {0.5, 0.5};
    GaussianComponent c1;
    c1.mean = {0.0, 0.0};
    const double r2 = std::sqrt(2.0);
    c1.chol = {r2, 0.0, r2, r2}; // covariance [[2, 2], [2, 4]]
    GaussianComponent c2;
    c2.mean = {-1.0, -1.0};
    c2.chol = {r2, 0.0, 0.0, r2}; // covariance [[2, 0], [0, 2]]
    mix.components = {c1, c2};
    return mix;
}

MixtureParams mixture_from_spec(const std::string& spec) {
    if (spec.empty()) return benchmark_mixture();
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(spec_text(spec));
    } catch (const nlohmann::json::exception& e) {
        throw data_error(std::string("mixture spec: bad JSON: ") + e.what());
    }
    auto scorer = parse_scorer(nlohmann::json{{"kind", "mixture_density"}, {"params", j}}.dump());
    // Re-extract validated params by parsing the scorer's own serialization.
    nlohmann::json round = nlohmann::json::parse(scorer->to_json());
    MixtureParams mix;
    mix.weights = round["params"]["weights"].get<std::vector<double>>();
    for (const auto& jc : round["params"]["components"]) {
        GaussianComponent c;
        c.mean = jc["mean"].get<std::vector<double>>();
        auto rows = jc["chol"].get<std::vector<std::vector<double>>>();
        for (const auto& row : rows) c.chol.insert(c.chol.end(), row.begin(), row.end());
        mix.components.push_back(std::move(c));
    }
    return mix;
}

Box resolve_box(const Options& opt, const Dataset& data) {
    if (opt.box_min.empty() && opt.box_max.empty()) {
        return bounding_box(data, opt.padding);
    }
    return Box(opt.box_min, opt.box_max);
}

int cmd_simulate(const Options& opt) {
    if (opt.n == 0) throw std::invalid_argument("simulate: --n must be >= 1");
    MixtureParams mix = mixture_from_spec(opt.mixture_spec);
    RandomSource rng(opt.seed);
    Dataset data = simulate_mixture(mix, opt.n, rng);
    emit(opt.out_path, write_data_csv(data));
    return 0;
}

int cmd_mvcurve(const Options& opt) {
    Dataset data = parse_data_csv(read_file(opt.data_path));
    ScorerPtr scorer = parse_scorer(spec_text(opt.scorer_spec));
    RandomSource rng(opt.seed);
    VolumeEstimator est(resolve_box(opt, data), opt.mc_samples, rng);
    auto vol = est.volumes_for(*scorer);
    ScoreSample sample(score_batch(*scorer, data));
    StepCurve curve = empirical_mv_curve(sample, *vol);
    emit(opt.out_path, curve.to_csv());
    return 0;
}

int cmd_band(const Options& opt) {
    Dataset data = parse_data_csv(read_file(opt.data_path));
    ScorerPtr scorer = parse_scorer(spec_text(opt.scorer_spec));
    RandomSource rng(opt.seed);
    VolumeEstimator est(resolve_box(opt, data), opt.mc_samples, rng);
    auto vol = est.volumes_for(*scorer);
    ScoreSample sample(score_batch(*scorer, data));

    double h;
    if (opt.bandwidth) {
        h = *opt.bandwidth;
    } else {
        // Scale rule: sample standard deviation of the scores.
        const auto& s = sample.sorted();
        double mean = 0.0;
        for (double v : s) mean += v;
        mean /= static_cast<double>(s.size());
        double var = 0.0;
        for (double v : s) var += (v - mean) * (v - mean);
        var /= static_cast<double>(s.size() - 1);
        const double sd = std::sqrt(var);
        if (!(sd > 0.0)) {
            throw numerical_error("band: constant scores, pass --bandwidth explicitly");
        }
        h = default_bandwidth(s.size(), sd);
    }
    KdeModel kde(sample.sorted(), h);

    BandConfig cfg;
    cfg.epsilon = opt.epsilon;
    cfg.eta = opt.eta;
    cfg.replications = opt.reps;
    cfg.grid = opt.grid;
    cfg.naive = opt.naive;
    ConfidenceBand band = bootstrap_band(sample, kde, *vol, cfg, rng.child(1));

    std::string csv = "alpha,center,lower,upper\n";
    for (std::size_t g = 0; g < opt.grid; ++g) {
        const double alpha = cfg.epsilon + (1.0 - 2.0 * cfg.epsilon) * static_cast<double>(g) /
                                               static_cast<double>(opt.grid - 1);
        const double center = band.center.value_at(alpha);
        const double lower = std::max(center - band.radius, 0.0);
        csv += format_double(alpha);
        csv += ',';
        csv += format_double(center);
        csv += ',';
        csv += format_double(lower);
        csv += ',';
        csv += format_double(center + band.radius);
        csv += '\n';
    }
    emit(opt.out_path, csv);

    nlohmann::json summary;
    summary["nu_eta"] = band.nu_eta;
    summary["radius"] = band.radius;
    summary["epsilon"] = band.epsilon;
    summary["eta"] = band.eta;
    summary["reps"] = band.replications;
    summary["seed"] = opt.seed;
    const std::string summary_text = summary.dump() + "\n";
    if (!opt.summary_path.empty()) {
        write_file(opt.summary_path, summary_text);
    } else {
        std::cout << summary_text;
    }
    return 0;
}

int cmd_arank_fit(const Options& opt) {
    Dataset data = parse_data_csv(read_file(opt.data_path));
    ARankConfig cfg;
    cfg.depth = opt.depth;
    cfg.epsilon = opt.epsilon;
    cfg.delta = opt.delta;
    cfg.rademacher_c = opt.rademacher_c;
    cfg.tau = opt.tau;
    cfg.padding = opt.padding;
    cfg.strict = opt.strict;
    if (!opt.box_min.empty() || !opt.box_max.empty()) {
        cfg.box = Box(opt.box_min, opt.box_max);
    }
    ARankModel model = fit_arank(data, cfg);
    emit(opt.out_path, model.to_json() + "\n");
    return 0;
}

int cmd_arank_score(const Options& opt) {
    ARankModel model = ARankModel::from_json(read_file(opt.model_path));
    Dataset data = parse_data_csv(read_file(opt.data_path));
    std::string csv = "score,density_cdf\n";
    for (std::size_t i = 0; i < data.size(); ++i) {
        csv += format_double(score_arank(model, data.row(i)));
        csv += ',';
        csv += format_double(density_cdf_approx(model, data.row(i)));
        csv += '\n';
    }
    emit(opt.out_path, csv);
    return 0;
}

int cmd_oracle(const Options& opt) {
    const std::size_t grid = opt.grid;
    if (grid < 2) throw std::invalid_argument("oracle: --grid must be >= 2");
    const double top = 1.0 - opt.epsilon;
    std::vector<double> breaks(grid + 1);
    std::vector<double> values(grid);
    for (std::size_t g = 0; g <= grid; ++g) {
        breaks[g] = top * static_cast<double>(g) / static_cast<double>(grid);
    }

    if (opt.family == "gaussian-1d") {
        if (!(opt.sigma > 0.0)) throw std::invalid_argument("oracle: --sigma must be > 0");
        for (std::size_t g = 0; g < grid; ++g) {
            values[g] = opt.sigma * mv_star_gaussian_1d(breaks[g]);
        }
    } else if (opt.family == "gaussian-diag") {
        if (opt.diag_cov.empty()) {
            throw std::invalid_argument("oracle: --diag-cov is required for gaussian-diag");
        }
        for (std::size_t g = 0; g < grid; ++g) {
            values[g] = mv_star_gaussian_diag(breaks[g], opt.diag_cov);
        }
    } else if (opt.family == "mixture") {
        // Numerical reference: empirical MV curve of the exact density on a
        // large simulated sample.
        MixtureParams mix = mixture_from_spec(opt.mixture_spec);
        RandomSource rng(opt.seed);
        Dataset ref = simulate_mixture(mix, opt.n_ref, rng);
        ScorerPtr density = make_mixture_density(mix);
        VolumeEstimator est(bounding_box(ref, opt.padding), opt.mc_samples, rng);
        auto vol = est.volumes_for(*density);
        ScoreSample sample(score_batch(*density, ref));
        StepCurve curve = empirical_mv_curve(sample, *vol);
        for (std::size_t g = 0; g < grid; ++g) {
            values[g] = curve.value_at(breaks[g]);
        }
    } else {
        throw std::invalid_argument("oracle: --family must be gaussian-1d, gaussian-diag, or mixture");
    }
    emit(opt.out_path, StepCurve(std::move(breaks), std::move(values)).to_csv());
    return 0;
}

void add_common(CLI::App* cmd, Options& opt) {
    cmd->add_option("--seed", opt.seed, "RNG seed");
    cmd->add_option("--out", opt.out_path, "output path ('-' for stdout)");
}

void add_volume_opts(CLI::App* cmd, Options& opt) {
    cmd->add_option("--mc-samples", opt.mc_samples, "Monte Carlo points for volumes")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--padding", opt.padding, "bounding box padding fraction");
    cmd->add_option("--box-min", opt.box_min, "box lower corner (overrides padding)")
        ->delimiter(',');
    cmd->add_option("--box-max", opt.box_max, "box upper corner")->delimiter(',');
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mass-volume curve toolkit: anomaly ranking without labels"};
    app.require_subcommand(1);
    Options opt;

    CLI::App* simulate = app.add_subcommand("simulate", "draw a sample from a Gaussian mixture");
    simulate->add_option("--n", opt.n, "sample size")->required();
    simulate->add_option("--mixture", opt.mixture_spec,
                         "mixture params JSON or @file (default: built-in benchmark mixture)");
    add_common(simulate, opt);

    CLI::App* mvcurve = app.add_subcommand("mvcurve", "empirical mass-volume curve of a scorer");
    mvcurve->add_option("--data", opt.data_path, "input CSV")->required();
    mvcurve->add_option("--scorer", opt.scorer_spec, "scorer JSON or @file")->required();
    add_volume_opts(mvcurve, opt);
    add_common(mvcurve, opt);

    CLI::App* band = app.add_subcommand("band", "smoothed-bootstrap confidence band");
    band->add_option("--data", opt.data_path, "input CSV")->required();
    band->add_option("--scorer", opt.scorer_spec, "scorer JSON or @file")->required();
    band->add_option("--epsilon", opt.epsilon, "trim the mass axis to [eps, 1-eps]");
    band->add_option("--eta", opt.eta, "band miss level");
    band->add_option("--reps", opt.reps, "bootstrap replicates (default: n)");
    band->add_option("--grid", opt.grid, "sup-norm evaluation grid size");
    band->add_option("--bandwidth", [&opt](const std::vector<std::string>& vals) {
        opt.bandwidth = std::stod(vals.front());
        return true;
    }, "KDE bandwidth (default: sd * (ln n / n)^(1/5))");
    band->add_flag("--naive", opt.naive, "resample raw scores instead of the KDE");
    band->add_option("--summary-out", opt.summary_path, "write the JSON summary here");
    add_volume_opts(band, opt);
    add_common(band, opt);

    CLI::App* fit = app.add_subcommand("arank-fit", "fit the adaptive ranking model");
    fit->add_option("--data", opt.data_path, "input CSV")->required();
    fit->add_option("--depth", opt.depth, "dyadic histogram depth");
    fit->add_option("--epsilon", opt.epsilon, "top mass level 1 - epsilon");
    fit->add_option("--delta", opt.delta, "penalty confidence level");
    fit->add_option("--rademacher-c", opt.rademacher_c, "penalty complexity constant");
    fit->add_option("--tau", [&opt](const std::vector<std::string>& vals) {
        opt.tau = std::stod(vals.front());
        return true;
    }, "split tolerance (default: 5 phi / q_star(1 - epsilon))");
    fit->add_option("--padding", opt.padding, "bounding box padding fraction");
    fit->add_option("--box-min", opt.box_min, "box lower corner")->delimiter(',');
    fit->add_option("--box-max", opt.box_max, "box upper corner")->delimiter(',');
    fit->add_flag("--strict", opt.strict, "error on points outside the box");
    add_common(fit, opt);

    CLI::App* score = app.add_subcommand("arank-score", "score points with a fitted model");
    score->add_option("--model", opt.model_path, "model JSON path")->required();
    score->add_option("--data", opt.data_path, "input CSV")->required();
    add_common(score, opt);

    CLI::App* oracle = app.add_subcommand("oracle", "reference optimal mass-volume curves");
    oracle->add_option("--family", opt.family, "gaussian-1d | gaussian-diag | mixture")
        ->required();
    oracle->add_option("--sigma", opt.sigma, "standard deviation for gaussian-1d");
    oracle->add_option("--diag-cov", opt.diag_cov, "diagonal covariance for gaussian-diag")
        ->delimiter(',');
    oracle->add_option("--mixture", opt.mixture_spec, "mixture params JSON or @file");
    oracle->add_option("--n-ref", opt.n_ref, "reference sample size for mixture")
        ->check(CLI::PositiveNumber);
    oracle->add_option("--grid", opt.grid, "number of output grid steps");
    oracle->add_option("--epsilon", opt.epsilon, "grid covers [0, 1 - epsilon]");
    add_volume_opts(oracle, opt);
    add_common(oracle, opt);

    try {
        app.parse(argc, argv);
        if (simulate->parsed()) return cmd_simulate(opt);
        if (mvcurve->parsed()) return cmd_mvcurve(opt);
        if (band->parsed()) return cmd_band(opt);
        if (fit->parsed()) return cmd_arank_fit(opt);
        if (score->parsed()) return cmd_arank_score(opt);
        if (oracle->parsed()) return cmd_oracle(opt);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const mvrank::data_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const mvrank::numerical_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
