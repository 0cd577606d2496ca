#include <doctest.h>

#include <cmath>
#include <set>

#include "qmc/negdep.hpp"
#include "qmc/randomize.hpp"
#include "qmc/sequences.hpp"
#include "support/helpers.hpp"

using namespace qmc;

TEST_CASE("derive_stream golden values and determinism") {
    CHECK(derive_stream(0, 0, 0) == 0xd3dba57c69eec72eull);
    CHECK(derive_stream(0, 0, 0) == derive_stream(0, 0, 0));
    CHECK(derive_stream(1, 2, 3) != derive_stream(1, 2, 4));
    CHECK(derive_stream(1, 2, 3) != derive_stream(1, 3, 3));
    CHECK(derive_stream(1, 2, 3) != derive_stream(2, 2, 3));
}

TEST_CASE("derive_stream has no collisions over many tuples") {
    std::set<std::uint64_t> seen;
    int count = 0;
    for (std::uint64_t m = 0; m < 10; ++m)
        for (std::uint64_t v = 0; v < 100; ++v)
            for (std::uint64_t c = 0; c < 100; ++c) {
                seen.insert(derive_stream(m, v, c));
                ++count;
            }
    CHECK(static_cast<int>(seen.size()) == count);
}

TEST_CASE("digital shift digit arithmetic") {
    const std::vector<double> reals = {0.5, 0.75};  // base-2 digits [1,0...] and [1,1,0...]
    const std::vector<std::uint32_t> bases = {2, 2};
    PointSet p = qmctest::point_set_from_reals(reals, 1, 2, bases);
    RandomizerSpec spec{42, 0};
    PointSet q = digital_shift(p, spec);
    // shifted digits equal source plus the per-coordinate shift mod 2
    Rng rng0(derive_stream(42, 0, 0));
    CHECK(q.coord_digits(0, 0)[0] == (p.coord_digits(0, 0)[0] + rng0.below(2)) % 2);
}

TEST_CASE("randomizers are deterministic in the spec") {
    PointSet p = faure_set(50, 3, 5);
    RandomizerSpec spec{123, 7};
    CHECK(digital_shift(p, spec).digits == digital_shift(p, spec).digits);
    CHECK(owen_scramble(p, spec).digits == owen_scramble(p, spec).digits);
    CHECK(linear_scramble(p, spec).digits == linear_scramble(p, spec).digits);
    RandomizerSpec other{123, 8};
    CHECK(digital_shift(p, spec).digits != digital_shift(p, other).digits);
}

TEST_CASE("all randomizers preserve pairwise gamma in the construction base") {
    PointSet p = faure_set(25, 2, 5);
    RandomizerSpec spec{99, 1};
    for (RandKind kind : {RandKind::shift, RandKind::owen, RandKind::linear}) {
        PointSet q = apply_randomizer(kind, p, spec);
        for (int i = 0; i < p.n; ++i)
            for (int l = i + 1; l < p.n; ++l)
                for (int j = 0; j < p.s; ++j)
                    CHECK(gamma_digits(p.coord_digits(i, j), p.coord_digits(l, j)) ==
                          gamma_digits(q.coord_digits(i, j), q.coord_digits(l, j)));
    }
}

TEST_CASE("criterion in the construction base is scramble invariant") {
    PointSet p = faure_set(25, 2, 5);
    auto before = criterion(p, 5u, 2, 2, 2);
    for (RandKind kind : {RandKind::shift, RandKind::owen, RandKind::linear}) {
        PointSet q = apply_randomizer(kind, p, RandomizerSpec{7, 0});
        auto after = criterion(q, 5u, 2, 2, 2);
        CHECK(after.values == before.values);
    }
}

TEST_CASE("owen scrambling gives uniform first digits") {
    const std::vector<double> reals = {0.3, 0.6};
    const std::vector<std::uint32_t> bases = {5, 3};
    PointSet p = qmctest::point_set_from_reals(reals, 1, 2, bases);
    const int trials = 10000;
    std::vector<std::vector<int>> counts = {std::vector<int>(5, 0), std::vector<int>(3, 0)};
    for (int t = 0; t < trials; ++t) {
        PointSet q = owen_scramble(p, RandomizerSpec{5150, static_cast<std::uint64_t>(t)});
        for (int j = 0; j < 2; ++j) ++counts[static_cast<std::size_t>(j)][q.coord_digits(0, j)[0]];
    }
    for (int j = 0; j < 2; ++j) {
        const double b = static_cast<double>(p.bases[static_cast<std::size_t>(j)]);
        const double expect = trials / b;
        const double se = std::sqrt(trials * (1.0 / b) * (1.0 - 1.0 / b));
        for (int v : counts[static_cast<std::size_t>(j)])
            CHECK(std::abs(v - expect) <= 4.0 * se);
    }
}

TEST_CASE("digital shift marginal uniformity") {
    const std::vector<double> reals = {0.3};
    const std::vector<std::uint32_t> bases = {5};
    PointSet p = qmctest::point_set_from_reals(reals, 1, 1, bases);
    const int trials = 10000;
    std::vector<int> counts(5, 0);
    for (int t = 0; t < trials; ++t) {
        PointSet q = digital_shift(p, RandomizerSpec{17, static_cast<std::uint64_t>(t)});
        ++counts[q.coord_digits(0, 0)[0]];
    }
    const double expect = trials / 5.0;
    const double se = std::sqrt(trials * 0.2 * 0.8);
    for (int v : counts) CHECK(std::abs(v - expect) <= 4.0 * se);
}

TEST_CASE("linear scramble requires prime bases") {
    const std::vector<double> reals = {0.5};
    const std::vector<std::uint32_t> bases = {4};
    PointSet p = qmctest::point_set_from_reals(reals, 1, 1, bases);
    CHECK_THROWS_AS(linear_scramble(p, RandomizerSpec{0, 0}), std::domain_error);
}

TEST_CASE("owen equal prefixes see the identical permutation") {
    // two points sharing a 2-digit prefix still share it after scrambling
    const std::vector<double> reals = {0.25, 0.26, 0.80};
    const std::vector<std::uint32_t> bases = {2};
    PointSet p = qmctest::point_set_from_reals(reals, 3, 1, bases);
    PointSet q = owen_scramble(p, RandomizerSpec{8, 0});
    const int g = gamma_digits(p.coord_digits(0, 0), p.coord_digits(1, 0));
    CHECK(gamma_digits(q.coord_digits(0, 0), q.coord_digits(1, 0)) == g);
}
