#include <doctest.h>

#include <cmath>

#include "qnet/degree.hpp"

using namespace qnet;

namespace {

WeightedAdjacency cycle(std::size_t n) {
    WeightedAdjacency w(n, WeightKind::BinaryClassical);
    for (std::size_t i = 0; i < n; ++i) w.set(i, (i + 1) % n, 1.0);
    return w;
}

WeightedAdjacency star(std::size_t leaves) {
    WeightedAdjacency w(leaves + 1, WeightKind::BinaryClassical);
    for (std::size_t i = 1; i <= leaves; ++i) w.set(0, i, 1.0);
    return w;
}

} // namespace

TEST_CASE("k-regular graph has <k> = k and <k^2> = k^2") {
    DegreeStats stats = degree_stats(cycle(8));
    CHECK(stats.mean_degree == 2.0);
    CHECK(stats.second_moment == 4.0);
    CHECK(stats.histogram.size() == 1);
    CHECK(stats.histogram.at(2) == doctest::Approx(1.0));
}

TEST_CASE("star with 4 leaves") {
    DegreeStats stats = degree_stats(star(4));
    CHECK(stats.mean_degree == doctest::Approx(1.6));
    CHECK(stats.second_moment == doctest::Approx((16.0 + 4.0) / 5.0));
    CHECK(stats.histogram.at(4) == doctest::Approx(0.2));
    CHECK(stats.histogram.at(1) == doctest::Approx(0.8));
}

TEST_CASE("weighted matrices use expected degrees") {
    WeightedAdjacency w(3, WeightKind::ProbabilityWeighted);
    w.set(0, 1, 0.5);
    w.set(0, 2, 0.75);
    DegreeStats stats = degree_stats(w);
    // degrees: 1.25, 0.5, 0.75
    CHECK(stats.mean_degree == doctest::Approx((1.25 + 0.5 + 0.75) / 3.0));
    CHECK(stats.second_moment ==
          doctest::Approx((1.25 * 1.25 + 0.25 + 0.75 * 0.75) / 3.0));
    // histogram bins are floored, moments are not
    CHECK(stats.histogram.at(0) == doctest::Approx(2.0 / 3.0));
    CHECK(stats.histogram.at(1) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("histogram normalization and moment inequality") {
    for (int seed = 0; seed < 5; ++seed) {
        WeightedAdjacency w(20, WeightKind::ProbabilityWeighted);
        // pseudo-random sparse weights
        for (std::size_t i = 0; i < 20; ++i)
            for (std::size_t j = i + 1; j < 20; ++j)
                if ((i * 7 + j * 13 + seed) % 5 == 0)
                    w.set(i, j, ((i + j + seed) % 10 + 1) / 10.0);
        DegreeStats stats = degree_stats(w);
        double total = 0.0;
        for (const auto& [k, p] : stats.histogram) total += p;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(stats.second_moment >= stats.mean_degree * stats.mean_degree - 1e-12);
    }
}

TEST_CASE("empty and edgeless graphs") {
    WeightedAdjacency w(3, WeightKind::BinaryClassical);
    DegreeStats stats = degree_stats(w);
    CHECK(stats.mean_degree == 0.0);
    CHECK(stats.histogram.at(0) == doctest::Approx(1.0));

    WeightedAdjacency empty(0, WeightKind::BinaryClassical);
    CHECK(degree_stats(empty).mean_degree == 0.0);
}
