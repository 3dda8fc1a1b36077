#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "mvrank/dataset.hpp"
#include "mvrank/exec.hpp"
#include "mvrank/random.hpp"

namespace mvrank {

// Gaussian with diagonal covariance.
struct GaussianParams {
    std::vector<double> mean;
    std::vector<double> diag_cov; // entries > 0

    void validate() const;
};

// Mixture component: mean plus lower-triangular Cholesky factor of the
// covariance (row-major d x d). Diagonal covariances use a diagonal factor.
struct GaussianComponent {
    std::vector<double> mean;
    std::vector<double> chol; // row-major lower triangular, L L^T = cov

    static GaussianComponent from_diag(const GaussianParams& p);
    void validate() const;
    double log_density(std::span<const double> x) const;
};

struct MixtureParams {
    std::vector<double> weights; // sum to 1 within 1e-12
    std::vector<GaussianComponent> components;

    void validate() const;
};

// Strictly increasing transform from the fixed catalogue.
struct MonotoneTransform {
    enum class Kind { AtanRescaled, Rational, Affine, Power };

    Kind kind = Kind::AtanRescaled;
    double a = 1.0; // affine slope, > 0
    double b = 0.0; // affine offset
    double p = 1.0; // power exponent, > 0

    static MonotoneTransform atan_rescaled();
    static MonotoneTransform rational();
    static MonotoneTransform affine(double a, double b);
    static MonotoneTransform power(double p);

    double apply(double s) const;
    std::string name() const;
};

// A scoring function on R^d. Implementations are pure: score() depends only
// on x and the parameters, so equal inputs give bit-equal outputs.
class Scorer {
  public:
    virtual ~Scorer() = default;
    virtual std::size_t dim() const = 0;
    virtual double score(std::span<const double> x) const = 0;
    virtual std::string to_json() const = 0;
};

using ScorerPtr = std::shared_ptr<const Scorer>;

// Density of a diagonal-covariance Gaussian.
ScorerPtr make_gaussian_density(GaussianParams params);

// Density of a Gaussian mixture (full covariance via Cholesky factors).
ScorerPtr make_mixture_density(MixtureParams params);

// Piecewise-constant score on the dyadic cells of a box: level of the cell
// containing x, 0 outside the box or on unlisted cells. Levels must be > 0.
ScorerPtr make_dyadic_piecewise(Box box, int depth,
                                std::map<std::uint64_t, double> levels);

// psi o base for a catalogue transform psi.
ScorerPtr make_monotone_transformed(ScorerPtr base, MonotoneTransform t);

// One-dimensional Gaussian density truncated to [lo, hi] (zero outside).
// Covers shifted truncated densities: the density of X + c truncated to
// [lo + c, hi + c] is this scorer with mean + c.
ScorerPtr make_truncated_gaussian_1d(double mean, double sd, double lo, double hi);

// Parse {"kind": ..., "params": ...}. Throws data_error on malformed specs.
ScorerPtr parse_scorer(const std::string& json_text);

// Scores for every row, in row order. Parallel and serial results are
// bit-identical.
std::vector<double> score_batch(const Scorer& s, const Dataset& data,
                                Exec exec = Exec::Parallel);

// n draws from the mixture: component chosen by weight, then mean + L z for
// a vector z of standard normals. Consumes rng sequentially, so a fixed seed
// fixes the sample.
Dataset simulate_mixture(const MixtureParams& params, std::size_t n,
                         RandomSource& rng);

} // namespace mvrank
