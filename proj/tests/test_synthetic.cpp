#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qclmc/rng.hpp"
#include "qclmc/synthetic.hpp"

using namespace qclmc;

namespace {

SyntheticParams row1(double delta) {
    SyntheticParams p;
    p.c1 = 5.21e-2; p.alpha = 1.85;
    p.c2 = 4.13e-4; p.beta = 3.69;
    p.c3 = 1.0; p.gamma = 1.83;
    p.delta = delta;
    return p;
}

}  // namespace

TEST_CASE("noise-free increments follow the mean envelope exactly") {
    SyntheticParams p;
    p.c1 = 1.0; p.alpha = std::log(2.0); p.c2 = 0.0; p.delta = 1.0;
    const auto path = sample_synthetic_path(p, 42, 1.5);
    REQUIRE(path.j_stop() == 2);
    CHECK(path.values[1] - path.values[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(path.values[2] - path.values[1] == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("stop level zero still takes one step") {
    const auto path = sample_synthetic_path(row1(0.5), 7, 0.0);
    CHECK(path.j_stop() == 1);
    CHECK(path.levels.back() == 0.5);
    path.validate();
}

TEST_CASE("the loop overshoots: the last level covers the stop level") {
    for (double stop : {0.3, 0.5, 1.2, 3.7}) {
        const auto path = sample_synthetic_path(row1(0.5), 11, stop);
        CHECK(path.levels.back() >= stop);
        CHECK(path.levels[path.j_stop() - 1] <= stop);
    }
}

TEST_CASE("step costs integrate c3 e^{gamma l}") {
    const auto p = row1(0.25);
    const auto path = sample_synthetic_path(p, 3, 1.0);
    CHECK(path.step_costs[0] == doctest::Approx(p.c3 / p.gamma));
    for (std::size_t j = 1; j <= path.j_stop(); ++j) {
        const double expected = p.c3 / p.gamma *
                                (std::exp(p.gamma * path.levels[j]) -
                                 std::exp(p.gamma * path.levels[j - 1]));
        CHECK(path.step_costs[j] == doctest::Approx(expected).epsilon(1e-13));
    }
}

TEST_CASE("paths are bit-identical for equal seeds") {
    const auto a = sample_synthetic_path(row1(0.5), 1234, 2.0);
    const auto b = sample_synthetic_path(row1(0.5), 1234, 2.0);
    CHECK(a.values == b.values);
    const auto c = sample_synthetic_path(row1(0.5), 1235, 2.0);
    CHECK(a.values != c.values);
}

TEST_CASE("path randomness is a prefix-stable stream") {
    // sampling deeper must not change the shared early steps
    const auto shallow = sample_synthetic_path(row1(0.5), 99, 0.6);
    const auto deep = sample_synthetic_path(row1(0.5), 99, 3.0);
    for (std::size_t j = 0; j < shallow.levels.size(); ++j) {
        CHECK(shallow.levels[j] == deep.levels[j]);
        CHECK(shallow.values[j] == deep.values[j]);
    }
}

TEST_CASE("sample moments match the envelopes") {
    const auto p = row1(0.5);
    const std::size_t n = 10000;
    const std::size_t j_max = 6;
    std::vector<double> sum(j_max + 1, 0.0), sum2(j_max + 1, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const auto path = sample_synthetic_path(p, rng::mix(555, k), (j_max + 0.5) * p.delta);
        for (std::size_t j = 1; j <= j_max; ++j) {
            const double d = (path.values[j] - path.values[j - 1]) / p.delta;
            sum[j] += d;
            sum2[j] += d * d;
        }
    }
    for (std::size_t j = 1; j <= j_max; ++j) {
        const double lj = static_cast<double>(j) * p.delta;
        const double mean = sum[j] / n;
        const double var = (sum2[j] - n * mean * mean) / (n - 1.0);
        const double mean_target = p.c1 * std::exp(-p.alpha * lj);
        const double var_target = p.c2 * std::exp(-p.beta * lj);
        const double se = std::sqrt(var / n);
        CHECK(std::abs(mean - mean_target) < 4.0 * se);
        CHECK(std::abs(var - var_target) < 0.15 * var_target);
    }
}

TEST_CASE("analytic limit is the geometric series of the mean increments") {
    const auto p = row1(0.5);
    const double rho = std::exp(-p.alpha * p.delta);
    CHECK(synthetic_analytic_limit(p) ==
          doctest::Approx(p.delta * p.c1 * rho / (1.0 - rho)).epsilon(1e-15));
}

TEST_CASE("parameter validation") {
    SyntheticParams p = row1(0.5);
    p.delta = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = row1(0.5);
    p.alpha = -1.0;
    CHECK_THROWS_AS(sample_synthetic_path(p, 0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(sample_synthetic_path(row1(0.5), 0, -1.0), std::invalid_argument);
}
