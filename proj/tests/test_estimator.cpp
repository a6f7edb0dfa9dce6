#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qclmc/estimator.hpp"
#include "qclmc/rng.hpp"
#include "qclmc/synthetic.hpp"

using namespace qclmc;

namespace {

SyntheticParams row1(double delta, double c2 = 4.13e-4) {
    SyntheticParams p;
    p.c1 = 5.21e-2; p.alpha = 1.85;
    p.c2 = c2; p.beta = 3.69;
    p.c3 = 1.0; p.gamma = 1.83;
    p.delta = delta;
    return p;
}

LevelPath two_level_path(double q) {
    LevelPath path;
    path.levels = {0.0, 1.0};
    path.values = {0.0, q};
    path.step_costs = {0.0, 1.0};
    return path;
}

}  // namespace

TEST_CASE("per-sample contribution: partial last weight") {
    const double q = 0.37;
    const double got = per_sample_contribution(two_level_path(q), 0.5, 1.0, kInfinity);
    CHECK(got == doctest::Approx((std::exp(0.5) - 1.0) * q).epsilon(1e-14));
}

TEST_CASE("per-sample contribution vanishes at cutoff zero") {
    CHECK(per_sample_contribution(two_level_path(1.0), 0.0, 2.0, kInfinity) == 0.0);
}

TEST_CASE("integer levels reproduce the piecewise exponential integral") {
    LevelPath path;
    path.levels = {0.0, 1.0, 2.0, 3.0};
    path.values = {0.0, 1.0, 1.5, 1.75};
    path.step_costs = {0.0, 0.0, 0.0, 0.0};
    const double r = 0.8;
    const double got = per_sample_contribution(path, 10.0, r, kInfinity);
    double want = 0.0;
    for (std::size_t j = 1; j <= 3; ++j) {
        const double w = (std::exp(r * j) - std::exp(r * (j - 1.0))) / r;
        want += w * (path.values[j] - path.values[j - 1]);
    }
    CHECK(got == doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("l_max truncates the weights") {
    const double q = 1.0, r = 1.0;
    const double got = per_sample_contribution(two_level_path(q), 5.0, r, 0.25);
    CHECK(got == doctest::Approx(std::exp(0.25) - 1.0).epsilon(1e-14));
}

TEST_CASE("zero-length steps are rejected") {
    LevelPath path;
    path.levels = {0.0, 0.0};
    path.values = {0.0, 1.0};
    path.step_costs = {0.0, 0.0};
    CHECK_THROWS_AS(per_sample_contribution(path, 1.0, 1.0, kInfinity), std::invalid_argument);
}

TEST_CASE("explicit cutoff zero gives a zero estimate") {
    SyntheticProcess model(row1(0.5));
    EstimatorConfig cfg;
    cfg.m = 1;
    cfg.rate = 2.76;
    cfg.level_source = LevelSource::explicit_list;
    cfg.explicit_levels = {0.0};
    const auto res = qclmc_estimate(model, cfg);
    CHECK(res.estimate == 0.0);
    CHECK(res.j_stops[0] == 1);
}

TEST_CASE("noise-free estimator telescopes deterministically") {
    const auto p = row1(1.0, 0.0);
    SyntheticProcess model(p);
    EstimatorConfig cfg;
    cfg.m = 3;
    cfg.rate = 2.0;
    cfg.level_source = LevelSource::explicit_list;
    cfg.explicit_levels = {1.0, 2.0, 3.0};
    const auto res = run_estimator(model, cfg);
    // all paths are the same deterministic sequence Q_j - Q_{j-1} = c1 e^{-a j}
    double want = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
        const double lr = cfg.explicit_levels[k];
        double acc = 0.0;
        for (std::size_t j = 1; j <= static_cast<std::size_t>(lr); ++j) {
            const double w = (std::exp(cfg.rate * std::min(static_cast<double>(j), lr)) -
                              std::exp(cfg.rate * (j - 1.0))) / cfg.rate;
            acc += w * p.c1 * std::exp(-p.alpha * static_cast<double>(j));
        }
        want += acc;
    }
    want /= 3.0;
    CHECK(res.estimate == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("estimates are bit-reproducible and sources are guarded") {
    SyntheticProcess model(row1(0.5));
    EstimatorConfig cfg;
    cfg.m = 64;
    cfg.rate = 2.76;
    cfg.seed = 99;
    cfg.level_source = LevelSource::pseudo;
    const auto a = clmc_estimate(model, cfg);
    const auto b = clmc_estimate(model, cfg);
    CHECK(a.estimate == b.estimate);
    CHECK(a.contributions == b.contributions);
    CHECK_THROWS_AS(qclmc_estimate(model, cfg), std::invalid_argument);
    cfg.level_source = LevelSource::quasi;
    CHECK_THROWS_AS(clmc_estimate(model, cfg), std::invalid_argument);
}

TEST_CASE("contributions have spread when the process is noisy") {
    SyntheticProcess model(row1(0.5));
    EstimatorConfig cfg;
    cfg.m = 256;
    cfg.rate = 2.76;
    cfg.seed = 5;
    cfg.level_source = LevelSource::pseudo;
    const auto res = clmc_estimate(model, cfg);
    double var = 0.0;
    for (double c : res.contributions) var += (c - res.estimate) * (c - res.estimate);
    CHECK(var > 0.0);
    CHECK(res.realized_max_level > 0.0);
    CHECK(res.total_cost > 0.0);
}

TEST_CASE("scaling the process scales the estimate exactly") {
    auto p = row1(0.5);
    SyntheticProcess base(p);
    // doubling c1 and quadrupling c2 doubles every path value difference
    p.c1 *= 2.0;
    p.c2 *= 4.0;
    SyntheticProcess scaled(p);
    EstimatorConfig cfg;
    cfg.m = 128;
    cfg.rate = 2.76;
    cfg.seed = 31;
    cfg.level_source = LevelSource::quasi;
    const auto a = qclmc_estimate(base, cfg);
    const auto b = qclmc_estimate(scaled, cfg);
    for (std::size_t k = 0; k < cfg.m; ++k)
        CHECK(b.contributions[k] == doctest::Approx(2.0 * a.contributions[k]).epsilon(1e-15));
}

TEST_CASE("path streams do not depend on the level source") {
    SyntheticProcess model(row1(0.5));
    EstimatorConfig cfg;
    cfg.m = 16;
    cfg.rate = 2.76;
    cfg.seed = 404;
    cfg.level_source = LevelSource::quasi;
    const auto quasi = run_estimator(model, cfg);
    cfg.level_source = LevelSource::pseudo;
    const auto pseudo = run_estimator(model, cfg);
    CHECK(quasi.cutoff_levels != pseudo.cutoff_levels);
    // recompute each contribution from the documented path seed
    for (const auto* res : {&quasi, &pseudo}) {
        for (std::size_t k = 0; k < cfg.m; ++k) {
            const double l_r = res->cutoff_levels[k];
            const auto path = model.sample_path(rng::mix(cfg.seed, rng::tag_path, k), l_r);
            CHECK(res->contributions[k] ==
                  per_sample_contribution(path, l_r, cfg.rate, cfg.l_max));
        }
    }
}

TEST_CASE("ensemble of scrambled runs is centred on the analytic limit") {
    const auto p = row1(1.25);
    SyntheticProcess model(p);
    const int runs = 64;
    double sum = 0.0, sum2 = 0.0;
    for (int t = 0; t < runs; ++t) {
        EstimatorConfig cfg;
        cfg.m = 128;
        cfg.rate = 2.76;
        cfg.seed = rng::mix(2025, t);
        cfg.level_source = LevelSource::quasi;
        const double e = qclmc_estimate(model, cfg).estimate;
        sum += e;
        sum2 += e * e;
    }
    const double mean = sum / runs;
    const double sd = std::sqrt((sum2 - runs * mean * mean) / (runs - 1.0));
    CHECK(std::abs(mean - synthetic_analytic_limit(p)) < 4.0 * sd / std::sqrt(runs));
}

TEST_CASE("uniform-level reduction matches the telescoped form") {
    // M = 4, P(L>=1) = 1, P(L>=2) = 0.5: two samples reach level 2
    std::vector<LevelPath> paths(4);
    for (std::size_t k = 0; k < 4; ++k) {
        paths[k].levels = {0.0, 1.0};
        paths[k].values = {0.0, 0.1 * static_cast<double>(k + 1)};
        paths[k].step_costs = {0.0, 1.0};
        if (k < 2) {
            paths[k].levels.push_back(2.0);
            paths[k].values.push_back(paths[k].values.back() + 0.01 * static_cast<double>(k + 1));
            paths[k].step_costs.push_back(1.0);
        }
    }
    const auto res = mlmc_reduction_check(paths, {1.0, 0.5});
    CHECK(res.clmc_value == doctest::Approx(res.mlmc_value).epsilon(1e-15));
    // hand value: mean(dQ1) + (1/(4*0.5)) * (0.01 + 0.02)
    CHECK(res.clmc_value == doctest::Approx(0.25 * (0.1 + 0.2 + 0.3 + 0.4) + 0.5 * 0.03));
}

TEST_CASE("single-level reduction is the plain Monte Carlo mean") {
    std::vector<LevelPath> paths(3);
    for (std::size_t k = 0; k < 3; ++k) {
        paths[k].levels = {0.0, 1.0};
        paths[k].values = {0.0, static_cast<double>(k)};
        paths[k].step_costs = {0.0, 0.0};
    }
    const auto res = mlmc_reduction_check(paths, {1.0});
    CHECK(res.clmc_value == doctest::Approx(1.0));
    CHECK(res.mlmc_value == doctest::Approx(1.0));
}

TEST_CASE("reduction requires integer levels") {
    std::vector<LevelPath> paths(1);
    paths[0].levels = {0.0, 1.5};
    paths[0].values = {0.0, 1.0};
    paths[0].step_costs = {0.0, 0.0};
    CHECK_THROWS_AS(mlmc_reduction_check(paths, {1.0, 0.5}), std::invalid_argument);
}

TEST_CASE("random small reduction instances agree to 1e-12") {
    for (std::uint64_t inst = 0; inst < 30; ++inst) {
        const std::size_t m = 1 + rng::mix(inst, 1) % 8;
        const std::size_t j_max = 1 + rng::mix(inst, 2) % 3;
        std::vector<double> tail(j_max);
        std::vector<std::size_t> counts(j_max);  // samples reaching level j
        counts[0] = m;
        tail[0] = 1.0;
        for (std::size_t j = 1; j < j_max; ++j) {
            counts[j] = 1 + rng::mix(inst, 10 + j) % counts[j - 1];
            tail[j] = static_cast<double>(counts[j]) / static_cast<double>(m);
        }
        std::vector<LevelPath> paths(m);
        for (std::size_t k = 0; k < m; ++k) {
            paths[k].levels = {0.0};
            paths[k].values = {0.0};
            paths[k].step_costs = {0.0};
            for (std::size_t j = 1; j <= j_max; ++j) {
                if (k >= counts[j - 1]) break;
                paths[k].levels.push_back(static_cast<double>(j));
                paths[k].values.push_back(paths[k].values.back() +
                                          rng::to_unit(rng::mix(inst, 100 * j + k)) - 0.5);
                paths[k].step_costs.push_back(1.0);
            }
        }
        const auto res = mlmc_reduction_check(paths, tail);
        CHECK(std::abs(res.clmc_value - res.mlmc_value) < 1e-12);
    }
}

namespace {

// Q(0) = 0 and Q(l) = c for every computed refinement.
class JumpToConstProcess final : public LevelProcess {
public:
    explicit JumpToConstProcess(double c) : c_(c) {}

    LevelPath sample_path(std::uint64_t, double stop_level) const override {
        LevelPath path;
        path.levels = {0.0};
        path.values = {0.0};
        path.step_costs = {1.0};
        double l = 0.0;
        while (l <= stop_level) {
            l += 1.0;
            path.levels.push_back(l);
            path.values.push_back(c_);
            path.step_costs.push_back(1.0);
        }
        return path;
    }

private:
    double c_;
};

}  // namespace

TEST_CASE("mlmc reference: noise-free model converges to the analytic limit") {
    const auto p = row1(0.5, 0.0);
    SyntheticProcess model(p);
    MlmcReferenceOptions opts;
    opts.level_step = p.delta;
    const double tol = 1e-6;
    const double ref = mlmc_reference(model, tol, 1, opts);
    CHECK(std::abs(ref - synthetic_analytic_limit(p)) < tol);
}

TEST_CASE("mlmc reference: constant-after-one-step model returns the constant") {
    JumpToConstProcess model(3.25);
    CHECK(mlmc_reference(model, 1e-3, 9) == doctest::Approx(3.25).epsilon(1e-12));
}

TEST_CASE("mlmc reference: halving the tolerance rarely hurts") {
    const auto p = row1(0.5);
    SyntheticProcess model(p);
    MlmcReferenceOptions opts;
    opts.level_step = p.delta;
    const double truth = synthetic_analytic_limit(p);
    int better = 0;
    const int trials = 20;
    for (int t = 0; t < trials; ++t) {
        const double coarse = mlmc_reference(model, 2e-3, rng::mix(77, t), opts);
        const double fine = mlmc_reference(model, 1e-3, rng::mix(78, t), opts);
        if (std::abs(fine - truth) <= std::abs(coarse - truth)) ++better;
    }
    CHECK(better * 100 >= trials * 80);
}

TEST_CASE("mlmc reference: exhausted budgets carry a partial result") {
    const auto p = row1(0.5);
    SyntheticProcess model(p);
    MlmcReferenceOptions opts;
    opts.level_step = p.delta;
    opts.max_total_samples = 50;
    opts.warmup_samples = 16;
    try {
        mlmc_reference(model, 1e-9, 3, opts);
        FAIL("expected BudgetError");
    } catch (const BudgetError& e) {
        CHECK(std::isfinite(e.partial_result));
    }
}
