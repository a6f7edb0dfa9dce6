#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "qclmc/lowdisc.hpp"
#include "qclmc/rng.hpp"

using namespace qclmc;

TEST_CASE("grid points are (2k-1)/(2M)") {
    const auto seq = generate_sequence(SequenceKind::grid, 2, 12345);
    REQUIRE(seq.points.size() == 2);
    CHECK(seq.points[0] == 0.25);
    CHECK(seq.points[1] == 0.75);
}

TEST_CASE("plain Sobol starts 0, 1/2, 3/4, 1/4 in generation order") {
    // radical inverse of the Gray code of 0,1,2,3
    const auto seq = generate_sequence(SequenceKind::sobol_plain, 4, 0);
    CHECK(seq.points == std::vector<double>{0.0, 0.5, 0.75, 0.25});
}

TEST_CASE("plain Sobol has the dyadic net property at powers of two") {
    for (std::size_t m : {8u, 64u, 1024u}) {
        const auto seq = generate_sequence(SequenceKind::sobol_plain, m, 0);
        std::set<std::size_t> cells;
        for (double x : seq.points) cells.insert(static_cast<std::size_t>(x * m));
        CHECK(cells.size() == m);
    }
}

TEST_CASE("Owen scrambling keeps the net property and separates seeds") {
    std::set<std::vector<double>> sequences;
    for (std::uint64_t seed : {1ull, 2ull, 99ull, 123456789ull}) {
        const auto seq = generate_sequence(SequenceKind::sobol_owen, 8, seed);
        std::set<std::size_t> cells;
        for (double x : seq.points) {
            CHECK(x >= 0.0);
            CHECK(x < 1.0);
            cells.insert(static_cast<std::size_t>(x * 8));
        }
        CHECK(cells.size() == 8);
        auto sorted = seq.points;
        std::sort(sorted.begin(), sorted.end());
        sequences.insert(sorted);
    }
    CHECK(sequences.size() == 4);  // distinct seeds give distinct multisets
}

TEST_CASE("sequences are deterministic and chunkable") {
    for (auto kind : {SequenceKind::sobol_owen, SequenceKind::pseudo}) {
        const auto a = generate_sequence(kind, 257, 777);
        const auto b = generate_sequence(kind, 257, 777);
        CHECK(a.points == b.points);
        // point k depends only on (kind, k, seed)
        for (std::size_t k : {0u, 100u, 256u})
            CHECK(a.points[k] == sequence_point(kind, k, 257, 777));
    }
}

TEST_CASE("generate_sequence rejects m = 0") {
    CHECK_THROWS_AS(generate_sequence(SequenceKind::grid, 0, 0), std::invalid_argument);
}

TEST_CASE("exponential inverse transform values") {
    UnitSequence seq;
    seq.points = {0.0, 0.5, 1.0 - std::exp(-2.6)};
    const auto levels = exp_inverse_transform(seq, 1.3);
    CHECK(levels.levels[0] == 0.0);
    CHECK(levels.levels[2] == doctest::Approx(2.0).epsilon(1e-12));
    const auto unit_rate = exp_inverse_transform(seq, 1.0);
    CHECK(unit_rate.levels[1] == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK_THROWS_AS(exp_inverse_transform(seq, 0.0), std::invalid_argument);
}

TEST_CASE("transform is monotone in x and in the rate") {
    UnitSequence seq;
    seq.points = {0.1, 0.2, 0.5, 0.9, 0.99};
    const auto l1 = exp_inverse_transform(seq, 1.0);
    const auto l2 = exp_inverse_transform(seq, 2.0);
    for (std::size_t i = 1; i < seq.points.size(); ++i)
        CHECK(l1.levels[i] > l1.levels[i - 1]);
    for (std::size_t i = 0; i < seq.points.size(); ++i)
        CHECK(l2.levels[i] < l1.levels[i]);
}

TEST_CASE("star discrepancy: single point and exact grid") {
    UnitSequence one;
    one.points = {0.5};
    CHECK(star_discrepancy(one).value == 0.5);

    for (std::size_t m : {2u, 100u, 1000u}) {
        const auto grid = generate_sequence(SequenceKind::grid, m, 0);
        CHECK(star_discrepancy(grid).value == 1.0 / (2.0 * static_cast<double>(m)));
    }
    UnitSequence empty;
    CHECK_THROWS_AS(star_discrepancy(empty), std::invalid_argument);
}

TEST_CASE("star discrepancy agrees with the sorted-order formula") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const std::size_t m = 1 + (rng::mix(seed, 1) % 200);
        auto seq = generate_sequence(SequenceKind::pseudo, m, seed);
        const double d = star_discrepancy(seq).value;
        std::sort(seq.points.begin(), seq.points.end());
        double ref = 0.0;
        for (std::size_t i = 1; i <= m; ++i) {
            const double x = seq.points[i - 1];
            ref = std::max(ref, std::max(x - (static_cast<double>(i) - 1.0) / m,
                                         static_cast<double>(i) / m - x));
        }
        CHECK(d == doctest::Approx(ref).epsilon(1e-14));
    }
}

TEST_CASE("F-discrepancy equals the star discrepancy of the source points") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const std::size_t m = 1 + (rng::mix(seed, 7) % 500);
        const auto kind = seed % 2 ? SequenceKind::pseudo : SequenceKind::sobol_owen;
        const auto seq = generate_sequence(kind, m, seed);
        const double star = star_discrepancy(seq).value;
        for (double r : {0.5, 1.3, 2.76}) {
            const double f = f_discrepancy_exponential(exp_inverse_transform(seq, r)).value;
            CHECK(std::abs(f - star) < 1e-12);
        }
    }
}

TEST_CASE("F-discrepancy spot values") {
    const auto grid = generate_sequence(SequenceKind::grid, 2, 0);
    CHECK(f_discrepancy_exponential(exp_inverse_transform(grid, 0.7)).value ==
          doctest::Approx(0.25).epsilon(1e-13));

    LevelSampleSet single;
    single.levels = {std::log(2.0)};
    single.rate = 1.0;
    CHECK(f_discrepancy_exponential(single).value == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("max level of the grid sequence is ln(2M)/r") {
    const auto grid = generate_sequence(SequenceKind::grid, 8, 0);
    const auto l1 = exp_inverse_transform(grid, 1.0);
    const auto l2 = exp_inverse_transform(grid, 2.0);
    CHECK(max_level(l1) == doctest::Approx(std::log(16.0)).epsilon(1e-12));
    CHECK(max_level(l2) == doctest::Approx(0.5 * std::log(16.0)).epsilon(1e-12));
    for (double l : l1.levels) CHECK(max_level(l1) >= l);
}

TEST_CASE("discrepancy study: grid means are 1/(2M) and slope is -1") {
    const auto study =
        discrepancy_convergence_study(SequenceKind::grid, {10, 100}, 1.3, 1, 0);
    REQUIRE(study.rows.size() == 2);
    CHECK(study.rows[0].mean_discrepancy == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(study.rows[1].mean_discrepancy == doctest::Approx(0.005).epsilon(1e-12));
    CHECK(study.fitted_slope == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK_THROWS_AS(discrepancy_convergence_study(SequenceKind::grid, {}, 1.0, 1, 0),
                    std::invalid_argument);
}

TEST_CASE("scrambled Sobol converges with rate one, pseudo with rate one half") {
    std::vector<std::size_t> ms;
    for (unsigned i = 4; i <= 11; ++i) ms.push_back(std::size_t{1} << i);
    const auto sobol =
        discrepancy_convergence_study(SequenceKind::sobol_owen, ms, 1.3, 4, 2024);
    CHECK(sobol.fitted_slope <= -0.9);
    const auto pseudo = discrepancy_convergence_study(SequenceKind::pseudo, ms, 1.3, 16, 2024);
    CHECK(pseudo.fitted_slope <= -0.35);
    CHECK(pseudo.fitted_slope >= -0.65);
}
