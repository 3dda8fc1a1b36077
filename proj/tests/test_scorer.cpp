#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "mvrank/errors.hpp"
#include "mvrank/random.hpp"
#include "mvrank/scorer.hpp"

using namespace mvrank;

TEST_CASE("diagonal gaussian density values") {
    ScorerPtr s = make_gaussian_density(GaussianParams{{0.0}, {1.0}});
    const double x0 = 0.0;
    CHECK(s->score({&x0, 1}) == doctest::Approx(0.3989422804014327).epsilon(1e-15));

    ScorerPtr s2 = make_gaussian_density(GaussianParams{{0.0, 0.0}, {1.0, 1.0}});
    const double origin[] = {0.0, 0.0};
    CHECK(s2->score(origin) ==
          doctest::Approx(1.0 / (2.0 * std::numbers::pi)).epsilon(1e-15));

    // N(1, 4) at x = 3: pdf((3-1)/2) / 2.
    ScorerPtr s3 = make_gaussian_density(GaussianParams{{1.0}, {4.0}});
    const double x3 = 3.0;
    CHECK(s3->score({&x3, 1}) ==
          doctest::Approx(std::exp(-0.5) / (2.0 * std::sqrt(2.0 * std::numbers::pi)))
              .epsilon(1e-14));

    CHECK_THROWS_AS(make_gaussian_density(GaussianParams{{0.0}, {0.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_gaussian_density(GaussianParams{{0.0, 0.0}, {1.0}}),
                    std::invalid_argument);
}

TEST_CASE("full-covariance component density via cholesky") {
    // Sigma = [[2, 2], [2, 4]] has det 4 and Cholesky [[r, 0], [r, r]],
    // r = sqrt(2). Density at the mean is 1 / (2 pi sqrt(det)).
    const double r = std::sqrt(2.0);
    GaussianComponent c{{0.0, 0.0}, {r, 0.0, r, r}};
    const double origin[] = {0.0, 0.0};
    CHECK(std::exp(c.log_density(origin)) ==
          doctest::Approx(1.0 / (4.0 * std::numbers::pi)).epsilon(1e-14));

    // At x = (2, 2): quadratic form x' Sigma^{-1} x with
    // Sigma^{-1} = [[1, -0.5], [-0.5, 0.5]] gives 4 - 4 + 2 = 2.
    const double x[] = {2.0, 2.0};
    CHECK(std::exp(c.log_density(x)) ==
          doctest::Approx(std::exp(-1.0) / (4.0 * std::numbers::pi)).epsilon(1e-13));

    // from_diag reproduces the diagonal density.
    GaussianComponent d = GaussianComponent::from_diag(GaussianParams{{1.0}, {4.0}});
    const double x1 = 3.0;
    ScorerPtr ref = make_gaussian_density(GaussianParams{{1.0}, {4.0}});
    CHECK(std::exp(d.log_density({&x1, 1})) ==
          doctest::Approx(ref->score({&x1, 1})).epsilon(1e-14));
}

TEST_CASE("mixture density is the weighted component sum") {
    MixtureParams mix;
    mix.weights = {0.25, 0.75};
    mix.components.push_back(GaussianComponent::from_diag(GaussianParams{{0.0}, {1.0}}));
    mix.components.push_back(GaussianComponent::from_diag(GaussianParams{{2.0}, {1.0}}));
    ScorerPtr s = make_mixture_density(mix);
    const double x = 1.0;
    const double expected = 0.25 * std::exp(mix.components[0].log_density({&x, 1})) +
                            0.75 * std::exp(mix.components[1].log_density({&x, 1}));
    CHECK(s->score({&x, 1}) == doctest::Approx(expected).epsilon(1e-15));

    MixtureParams bad = mix;
    bad.weights = {0.5, 0.6};
    CHECK_THROWS_AS(make_mixture_density(bad), std::invalid_argument);
}

TEST_CASE("monotone transform catalogue") {
    CHECK(MonotoneTransform::atan_rescaled().apply(1.0) ==
          doctest::Approx(0.5).epsilon(1e-15));
    CHECK(MonotoneTransform::rational().apply(1.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(MonotoneTransform::rational().apply(3.0) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(MonotoneTransform::affine(2.0, 3.0).apply(1.5) == 6.0);
    CHECK(MonotoneTransform::power(0.5).apply(4.0) == 2.0);
    CHECK_THROWS_AS(MonotoneTransform::affine(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(MonotoneTransform::power(-1.0), std::invalid_argument);

    // Strict monotonicity on a grid.
    for (auto t : {MonotoneTransform::atan_rescaled(), MonotoneTransform::rational(),
                   MonotoneTransform::affine(0.3, -2.0), MonotoneTransform::power(2.0)}) {
        double prev = t.apply(0.0);
        for (double s = 0.01; s < 3.0; s += 0.01) {
            const double cur = t.apply(s);
            CHECK(cur > prev);
            prev = cur;
        }
    }
}

TEST_CASE("transformed scorer composes") {
    ScorerPtr base = make_gaussian_density(GaussianParams{{0.0}, {1.0}});
    ScorerPtr t = make_monotone_transformed(base, MonotoneTransform::affine(2.0, 1.0));
    const double x = 0.7;
    CHECK(t->score({&x, 1}) == 2.0 * base->score({&x, 1}) + 1.0);
    CHECK(t->dim() == 1);
}

TEST_CASE("truncated 1-d gaussian density") {
    // N(0.5, 0.15^2) truncated to [0, 1].
    ScorerPtr s = make_truncated_gaussian_1d(0.5, 0.15, 0.0, 1.0);
    const double z = (1.0 - 0.5) / 0.15;
    const double mass = std::erf(z / std::sqrt(2.0)); // Phi(z) - Phi(-z)
    const double at_mode = 0.3989422804014327 / (0.15 * mass);
    const double x_mid = 0.5, x_out = 1.25, x_edge = 0.0;
    CHECK(s->score({&x_mid, 1}) == doctest::Approx(at_mode).epsilon(1e-13));
    CHECK(s->score({&x_out, 1}) == 0.0);
    CHECK(s->score({&x_edge, 1}) > 0.0);
    CHECK_THROWS_AS(make_truncated_gaussian_1d(0.5, 0.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_truncated_gaussian_1d(0.5, 0.1, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("dyadic piecewise scorer") {
    Box box({0.0, 0.0}, {1.0, 1.0});
    // Depth 1: cells (0,0)=0, (0,1)=1, (1,0)=2, (1,1)=3.
    ScorerPtr s = make_dyadic_piecewise(box, 1, {{0, 4.0}, {3, 1.0}});
    const double a[] = {0.25, 0.25};
    const double b[] = {0.75, 0.75};
    const double c[] = {0.75, 0.25};
    const double outside[] = {1.5, 0.5};
    CHECK(s->score(a) == 4.0);
    CHECK(s->score(b) == 1.0);
    CHECK(s->score(c) == 0.0);
    CHECK(s->score(outside) == 0.0);
    CHECK_THROWS_AS(make_dyadic_piecewise(box, 1, {{4, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(make_dyadic_piecewise(box, 1, {{0, 0.0}}), std::invalid_argument);
}

TEST_CASE("scorer json round trips preserve scores") {
    RandomSource rng(5);
    std::vector<ScorerPtr> scorers;
    scorers.push_back(make_gaussian_density(GaussianParams{{0.5, -1.0}, {1.0, 2.0}}));
    MixtureParams mix;
    mix.weights = {0.5, 0.5};
    const double r = std::sqrt(2.0);
    mix.components.push_back(GaussianComponent{{0.0, 0.0}, {r, 0.0, r, r}});
    mix.components.push_back(
        GaussianComponent::from_diag(GaussianParams{{-1.0, -1.0}, {2.0, 2.0}}));
    scorers.push_back(make_mixture_density(mix));
    scorers.push_back(make_dyadic_piecewise(Box({0.0, 0.0}, {1.0, 1.0}), 2,
                                            {{0, 1.0}, {5, 2.0}, {15, 3.0}}));
    scorers.push_back(make_monotone_transformed(scorers[0],
                                                MonotoneTransform::atan_rescaled()));
    scorers.push_back(make_monotone_transformed(scorers[1],
                                                MonotoneTransform::power(1.5)));

    for (const auto& s : scorers) {
        ScorerPtr back = parse_scorer(s->to_json());
        REQUIRE(back->dim() == s->dim());
        for (int i = 0; i < 50; ++i) {
            std::vector<double> x(s->dim());
            for (double& v : x) v = 3.0 * rng.uniform() - 1.0;
            CHECK(back->score(x) == s->score(x)); // bit-exact
        }
    }
    CHECK_THROWS_AS(parse_scorer("{\"kind\":\"nope\",\"params\":{}}"), data_error);
    CHECK_THROWS_AS(parse_scorer("not json"), data_error);
}

TEST_CASE("truncated gaussian survives a json round trip") {
    ScorerPtr s = make_truncated_gaussian_1d(0.55, 0.15, 0.05, 1.05);
    ScorerPtr back = parse_scorer(s->to_json());
    for (double x : {0.05, 0.3, 0.55, 1.0, 1.2}) {
        CHECK(back->score({&x, 1}) == s->score({&x, 1}));
    }
}

TEST_CASE("mixture simulation is seed-deterministic with sane moments") {
    MixtureParams mix;
    mix.weights = {0.5, 0.5};
    mix.components.push_back(GaussianComponent::from_diag(GaussianParams{{0.0}, {1.0}}));
    mix.components.push_back(GaussianComponent::from_diag(GaussianParams{{4.0}, {1.0}}));

    RandomSource r1(77), r2(77);
    Dataset a = simulate_mixture(mix, 20000, r1);
    Dataset b = simulate_mixture(mix, 20000, r2);
    CHECK(a.values() == b.values());

    double mean = 0.0;
    for (double v : a.values()) mean += v;
    mean /= static_cast<double>(a.size());
    CHECK(mean == doctest::Approx(2.0).epsilon(0.02));

    RandomSource r3(1);
    CHECK_THROWS_AS(simulate_mixture(mix, 0, r3), std::invalid_argument);
}
