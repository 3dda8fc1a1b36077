#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "mvrank/bootstrap.hpp"
#include "mvrank/kde.hpp"
#include "mvrank/mv_curve.hpp"
#include "mvrank/random.hpp"
#include "mvrank/scorer.hpp"
#include "mvrank/volume.hpp"

using namespace mvrank;

namespace {

struct Fixture {
    ScoreSample sample;
    KdeModel kde;
    std::shared_ptr<const LevelSetVolume> vol;

    // N(0,1) data scored by the oracle density, with an MC volume table on
    // [-6, 6]; the score KDE uses a bandwidth scaled to the density range.
    static Fixture make(std::size_t n, std::uint64_t seed) {
        auto scorer = make_gaussian_density(GaussianParams{{0.0}, {1.0}});
        RandomSource rng(seed);
        std::vector<double> scores(n);
        for (double& s : scores) {
            const double x = rng.normal();
            s = scorer->score({&x, 1});
        }
        ScoreSample sample(std::move(scores));
        KdeModel kde(sample.sorted(), default_bandwidth(n, 0.1));
        RandomSource mc(seed + 1);
        VolumeEstimator est(Box({-6.0}, {6.0}), 40000, mc);
        return Fixture{std::move(sample), std::move(kde),
                       est.volumes_for(*scorer, Exec::Serial)};
    }
};

} // namespace

TEST_CASE("bootstrap quantile index snaps and clamps") {
    // (19 + 1) * 0.9 floats to 18.000000000000004; the index must be 18.
    CHECK(bootstrap_quantile_index(19, 0.1) == 18);
    CHECK(bootstrap_quantile_index(99, 0.05) == 95);
    CHECK(bootstrap_quantile_index(100, 0.1) == 91);
    CHECK(bootstrap_quantile_index(10, 0.9) == 2); // ceil(11 * 0.1) = 2
    CHECK(bootstrap_quantile_index(5, 1e-9) == 5); // clamped to N
}

TEST_CASE("smoothed curve is a nondecreasing step function on the grid") {
    Fixture f = Fixture::make(400, 2024);
    StepCurve smooth = smoothed_mv_curve(f.kde, *f.vol, 64);
    REQUIRE(smooth.breakpoints().size() == 65);
    CHECK(smooth.breakpoints().front() == 0.0);
    CHECK(smooth.breakpoints().back() == 1.0);
    CHECK(smooth.is_nondecreasing());

    // The smoothed curve should track the empirical curve loosely.
    StepCurve empirical = empirical_mv_curve(f.sample, *f.vol);
    CHECK(sup_distance(smooth, empirical, 0.1, 0.9) < 1.5);
}

TEST_CASE("band is deterministic and identical across serial and parallel") {
    Fixture f = Fixture::make(200, 7);
    BandConfig cfg;
    cfg.replications = 40;
    cfg.grid = 64;

    ConfidenceBand b1 = bootstrap_band(f.sample, f.kde, *f.vol, cfg,
                                       RandomSource(5), Exec::Serial);
    ConfidenceBand b2 = bootstrap_band(f.sample, f.kde, *f.vol, cfg,
                                       RandomSource(5), Exec::Parallel);
    ConfidenceBand b3 = bootstrap_band(f.sample, f.kde, *f.vol, cfg,
                                       RandomSource(5), Exec::Serial);

    CHECK(b1.sups == b2.sups); // bit-exact across execution policies
    CHECK(b1.sups == b3.sups); // and across reruns
    CHECK(b1.nu_eta == b2.nu_eta);
    REQUIRE(b1.sups.size() == 40);
    CHECK(b1.replications == 40);

    // nu_eta is the ceil((N+1)(1-eta))-th smallest sup.
    std::vector<double> sorted = b1.sups;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t idx = bootstrap_quantile_index(40, cfg.eta);
    CHECK(b1.nu_eta == sorted[idx - 1]);
    CHECK(b1.radius == b1.nu_eta / std::sqrt(200.0));
    CHECK(b1.epsilon == cfg.epsilon);
    CHECK(b1.eta == cfg.eta);

    // The center is the empirical curve of the original sample.
    StepCurve empirical = empirical_mv_curve(f.sample, *f.vol);
    CHECK(b1.center.breakpoints() == empirical.breakpoints());
    CHECK(b1.center.values() == empirical.values());
}

TEST_CASE("different seeds give different sup statistics") {
    Fixture f = Fixture::make(150, 99);
    BandConfig cfg;
    cfg.replications = 10;
    cfg.grid = 32;
    ConfidenceBand a = bootstrap_band(f.sample, f.kde, *f.vol, cfg,
                                      RandomSource(1), Exec::Serial);
    ConfidenceBand b = bootstrap_band(f.sample, f.kde, *f.vol, cfg,
                                      RandomSource(2), Exec::Serial);
    CHECK(a.sups != b.sups);
}

TEST_CASE("replications default to the sample size") {
    Fixture f = Fixture::make(60, 3);
    BandConfig cfg;
    cfg.replications = 0;
    cfg.grid = 16;
    ConfidenceBand b = bootstrap_band(f.sample, f.kde, *f.vol, cfg,
                                      RandomSource(8), Exec::Serial);
    CHECK(b.replications == 60);
    CHECK(b.sups.size() == 60);
}

TEST_CASE("naive band resamples raw scores around the empirical curve") {
    Fixture f = Fixture::make(120, 31);
    BandConfig cfg;
    cfg.replications = 30;
    cfg.grid = 32;
    cfg.naive = true;
    ConfidenceBand b = bootstrap_band(f.sample, f.kde, *f.vol, cfg,
                                      RandomSource(4), Exec::Serial);
    CHECK(b.sups.size() == 30);
    CHECK(b.nu_eta > 0.0);
    for (double s : b.sups) CHECK(s >= 0.0);

    cfg.naive = false;
    ConfidenceBand smooth = bootstrap_band(f.sample, f.kde, *f.vol, cfg,
                                           RandomSource(4), Exec::Serial);
    CHECK(b.sups != smooth.sups);
}

TEST_CASE("band configuration is validated") {
    Fixture f = Fixture::make(50, 12);
    BandConfig cfg;
    cfg.epsilon = -0.1;
    CHECK_THROWS_AS((void)bootstrap_band(f.sample, f.kde, *f.vol, cfg,
                                         RandomSource(1), Exec::Serial),
                    std::invalid_argument);
    cfg = BandConfig{};
    cfg.epsilon = 0.5;
    CHECK_THROWS_AS((void)bootstrap_band(f.sample, f.kde, *f.vol, cfg,
                                         RandomSource(1), Exec::Serial),
                    std::invalid_argument);
    cfg = BandConfig{};
    cfg.eta = 1.0;
    CHECK_THROWS_AS((void)bootstrap_band(f.sample, f.kde, *f.vol, cfg,
                                         RandomSource(1), Exec::Serial),
                    std::invalid_argument);
    cfg = BandConfig{};
    cfg.grid = 1;
    CHECK_THROWS_AS((void)bootstrap_band(f.sample, f.kde, *f.vol, cfg,
                                         RandomSource(1), Exec::Serial),
                    std::invalid_argument);
}
