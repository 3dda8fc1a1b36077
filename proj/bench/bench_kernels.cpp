// Benchmarks comparing the serial reference kernels against the
// OpenMP-parallel ones. Not registered with ctest; run manually:
//   ./build/bench/bench_kernels
#include <benchmark/benchmark.h>

#include <vector>

#include "mvrank/bootstrap.hpp"
#include "mvrank/dataset.hpp"
#include "mvrank/kde.hpp"
#include "mvrank/kernels.hpp"
#include "mvrank/random.hpp"
#include "mvrank/scorer.hpp"

using namespace mvrank;

namespace {

Dataset make_points(std::size_t n, std::size_t d, std::uint64_t seed) {
    RandomSource rng(seed);
    std::vector<double> values(n * d);
    for (double& v : values) v = rng.normal();
    return Dataset(std::move(values), n, d);
}

ScorerPtr make_scorer() {
    MixtureParams mix;
    mix.weights = {0.5, 0.5};
    mix.components.push_back(
        GaussianComponent::from_diag(GaussianParams{{0.0, 0.0}, {2.0, 4.0}}));
    mix.components.push_back(
        GaussianComponent::from_diag(GaussianParams{{-1.0, -1.0}, {2.0, 2.0}}));
    return make_mixture_density(mix);
}

void bench_score_points(benchmark::State& state, Exec exec) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Dataset points = make_points(n, 2, 11);
    ScorerPtr scorer = make_scorer();
    std::vector<double> out(n);
    for (auto _ : state) {
        score_points_kernel(*scorer, points.values(), n, 2, out, exec);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}

void bench_count_cells(benchmark::State& state, Exec exec) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Dataset points = make_points(n, 2, 13);
    Box box = bounding_box(points, 0.05);
    for (auto _ : state) {
        auto counts = count_cells_kernel(points, box, 6, false, exec);
        benchmark::DoNotOptimize(counts.size());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}

void bench_band(benchmark::State& state, Exec exec) {
    const auto n = static_cast<std::size_t>(state.range(0));
    RandomSource rng(17);
    std::vector<double> scores(n);
    for (double& s : scores) s = rng.normal();
    ScoreSample sample(scores);
    KdeModel kde(sample.sorted(), default_bandwidth(n, 1.0));
    RandomSource mc(5);
    VolumeEstimator est(Box({-6.0}, {6.0}), 20000, mc);
    auto gauss = make_gaussian_density(GaussianParams{{0.0}, {1.0}});
    auto volumes = est.volumes_for(*gauss, Exec::Serial);
    BandConfig cfg;
    cfg.replications = 50;
    cfg.grid = 128;
    for (auto _ : state) {
        ConfidenceBand band =
            bootstrap_band(sample, kde, *volumes, cfg, RandomSource(23), exec);
        benchmark::DoNotOptimize(band.nu_eta);
    }
}

} // namespace

BENCHMARK_CAPTURE(bench_score_points, serial, Exec::Serial)->Arg(1 << 14)->Arg(1 << 17);
BENCHMARK_CAPTURE(bench_score_points, parallel, Exec::Parallel)->Arg(1 << 14)->Arg(1 << 17);
BENCHMARK_CAPTURE(bench_count_cells, serial, Exec::Serial)->Arg(1 << 14)->Arg(1 << 17);
BENCHMARK_CAPTURE(bench_count_cells, parallel, Exec::Parallel)->Arg(1 << 14)->Arg(1 << 17);
BENCHMARK_CAPTURE(bench_band, serial, Exec::Serial)->Arg(512);
BENCHMARK_CAPTURE(bench_band, parallel, Exec::Parallel)->Arg(512);

BENCHMARK_MAIN();
