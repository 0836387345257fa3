#include <doctest.h>

#include <cmath>
#include <vector>

#include "qnet/dynamics.hpp"
#include "qnet/errors.hpp"

using namespace qnet;

namespace {

WeightedAdjacency path(std::size_t n) {
    WeightedAdjacency w(n, WeightKind::BinaryClassical);
    for (std::size_t i = 0; i + 1 < n; ++i) w.set(i, i + 1, 1.0);
    return w;
}

} // namespace

TEST_CASE("single node decays geometrically") {
    WeightedAdjacency one(1, WeightKind::BinaryClassical);
    EpidemicParams params;
    params.beta = 0.3;
    params.delta = 0.2;
    InfectionTrajectory traj = exact_markov_expectation(one, params, {1.0}, 10);
    for (int t = 0; t <= 10; ++t)
        CHECK(traj.eta[t] == doctest::Approx(std::pow(0.8, t)).epsilon(1e-12));
}

TEST_CASE("beta = 0 decouples the nodes") {
    WeightedAdjacency two = path(2);
    EpidemicParams params;
    params.beta = 0.0;
    params.delta = 0.35;
    InfectionTrajectory traj = exact_markov_expectation(two, params, {0.6, 0.6}, 8);
    for (int t = 0; t <= 8; ++t)
        CHECK(traj.eta[t] == doctest::Approx(0.6 * std::pow(0.65, t)).epsilon(1e-12));
}

TEST_CASE("exact distribution agrees with a long direct-simulation average") {
    WeightedAdjacency graph = path(3);
    EpidemicParams params;
    params.beta = 0.3;
    params.delta = 0.1;
    params.initial_infection = 0.5;
    const int t_max = 5;

    InfectionTrajectory exact =
        exact_markov_expectation(graph, params, {0.5, 0.5, 0.5}, t_max);
    const int runs = 20000;
    InfectionTrajectory mc = run_direct_sim(graph, params, t_max, runs, 2026);

    for (int t = 0; t <= t_max; ++t) {
        double se = mc.eta_std[t] / std::sqrt(double(runs));
        CHECK(std::abs(mc.eta[t] - exact.eta[t]) < std::max(3.0 * se, 1e-4));
    }
}

TEST_CASE("mnlds tracks the exact expectation closely on a small tree") {
    WeightedAdjacency tree = path(4);
    EpidemicParams params;
    params.beta = 0.15;
    params.delta = 0.1;
    params.initial_infection = 0.3;

    InfectionTrajectory exact =
        exact_markov_expectation(tree, params, {0.3, 0.3, 0.3, 0.3}, 10);
    InfectionTrajectory approx = run_mnlds(tree, params, 10, 1e-16);

    // one step from a product initial state is exact; afterwards the
    // independence closure overestimates the infection, so only the gap is
    // bounded, not equality
    CHECK(approx.eta[1] == doctest::Approx(exact.eta[1]).epsilon(1e-9));
    double gap = 0.0;
    for (int t = 0; t <= 10; ++t) {
        CHECK(approx.eta[t] >= exact.eta[t] - 1e-9);
        gap = std::max(gap, std::abs(exact.eta[t] - approx.eta[t]));
    }
    CHECK(gap < 0.25);
    MESSAGE("mNLDS vs exact gap on the 4-path: ", gap);
}

TEST_CASE("weighted links enter the exact kernel") {
    WeightedAdjacency w(2, WeightKind::ProbabilityWeighted);
    w.set(0, 1, 0.5);
    EpidemicParams params;
    params.beta = 0.4;
    params.delta = 0.0;
    // node 1 infected for sure; node 0 healthy: P(infect) = beta * w = 0.2
    InfectionTrajectory traj = exact_markov_expectation(w, params, {0.0, 1.0}, 1);
    CHECK(traj.eta[1] == doctest::Approx((1.0 + 0.2) / 2.0).epsilon(1e-12));
}

TEST_CASE("state-space cap") {
    WeightedAdjacency big(13, WeightKind::BinaryClassical);
    EpidemicParams params;
    CHECK_THROWS_AS(exact_markov_expectation(big, params, std::vector<double>(13, 0.5), 3),
                    too_large_error);
}
