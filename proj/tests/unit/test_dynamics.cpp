#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracle/jacobi.hpp"
#include "oracle/rk4.hpp"
#include "qnet/dynamics.hpp"
#include "qnet/graph.hpp"
#include "qnet/photonic.hpp"
#include "qnet/spectral.hpp"

using namespace qnet;

namespace {

std::vector<double> unit_grid(int t_max) {
    std::vector<double> g(static_cast<std::size_t>(t_max) + 1);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = static_cast<double>(i);
    return g;
}

WeightedAdjacency single_edge(double w = 1.0) {
    WeightedAdjacency m(2, w == 1.0 ? WeightKind::BinaryClassical
                                    : WeightKind::ProbabilityWeighted);
    m.set(0, 1, w);
    return m;
}

WeightedAdjacency star(std::size_t leaves) {
    WeightedAdjacency w(leaves + 1, WeightKind::BinaryClassical);
    for (std::size_t i = 1; i <= leaves; ++i) w.set(0, i, 1.0);
    return w;
}

} // namespace

TEST_CASE("kw_solution fixed points and limits") {
    EpidemicParams params;
    params.beta = 0.1;
    params.delta = 0.25;

    // eta0 = 0 is the disease-free fixed point
    InfectionTrajectory zero = kw_solution(params, 5.0, 0.0, unit_grid(20));
    for (double e : zero.eta) CHECK(e == 0.0);

    // beta<k> = 0.5, delta = 0.25: eta_inf = 0.5
    InfectionTrajectory traj = kw_solution(params, 5.0, 0.2, unit_grid(200));
    CHECK(traj.eta.back() == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(traj.eta.front() == doctest::Approx(0.2));

    // subcritical: monotone decay to zero from any starting point
    EpidemicParams sub;
    sub.beta = 0.05;
    sub.delta = 0.5;
    for (double eta0 : {0.05, 0.4, 0.95}) {
        InfectionTrajectory down = kw_solution(sub, 4.0, eta0, unit_grid(100));
        for (std::size_t t = 1; t < down.eta.size(); ++t) CHECK(down.eta[t] <= down.eta[t - 1]);
        CHECK(down.eta.back() < 1e-6);
    }
}

TEST_CASE("kw_solution agrees with RK4 integration across regimes") {
    // includes supercritical, critical, and subcritical parameter sets
    for (double b : {0.2, 0.5, 1.0}) {
        for (double ratio : {0.5, 1.0, 1.5}) {
            double delta = std::min(1.0, b * ratio);
            for (double eta0 : {0.01, 0.3, 0.9}) {
                EpidemicParams params;
                params.beta = b / 4.0;
                params.delta = delta;
                InfectionTrajectory traj = kw_solution(params, 4.0, eta0, unit_grid(100));
                std::vector<double> reference = oracle::rk4_kw(b, delta, eta0, unit_grid(100));
                for (std::size_t t = 0; t < reference.size(); ++t)
                    CHECK(std::abs(traj.eta[t] - reference[t]) < 1e-6);
            }
        }
    }
}

TEST_CASE("kw_solution critical and beta-zero special cases") {
    // r = 0: power-law decay eta0 / (1 + b eta0 t)
    EpidemicParams crit;
    crit.beta = 0.1;
    crit.delta = 0.4;
    InfectionTrajectory traj = kw_solution(crit, 4.0, 0.5, unit_grid(50));
    for (std::size_t t = 0; t < traj.eta.size(); ++t)
        CHECK(traj.eta[t] ==
              doctest::Approx(0.5 / (1.0 + 0.4 * 0.5 * double(t))).epsilon(1e-12));

    // beta = 0: pure exponential decay
    EpidemicParams decay;
    decay.beta = 0.0;
    decay.delta = 0.3;
    InfectionTrajectory exp_traj = kw_solution(decay, 4.0, 0.8, unit_grid(30));
    for (std::size_t t = 0; t < exp_traj.eta.size(); ++t)
        CHECK(exp_traj.eta[t] == doctest::Approx(0.8 * std::exp(-0.3 * double(t))).epsilon(1e-12));
}

TEST_CASE("mnlds_step hand-computed examples") {
    // isolated node: xi = 1, pure decay
    WeightedAdjacency isolated(1, WeightKind::BinaryClassical);
    EpidemicParams params;
    params.beta = 0.1;
    params.delta = 0.2;
    auto next = mnlds_step(isolated, {0.5}, params);
    CHECK(next[0] == doctest::Approx(0.4).epsilon(1e-14));

    // two nodes, beta=0.1, delta=0: xi = 0.95, p' = 1 - 0.5*0.95
    EpidemicParams nocure;
    nocure.beta = 0.1;
    nocure.delta = 0.0;
    auto two = mnlds_step(single_edge(), {0.5, 0.5}, nocure);
    CHECK(two[0] == doctest::Approx(0.525).epsilon(1e-14));
    CHECK(two[1] == doctest::Approx(0.525).epsilon(1e-14));
}

TEST_CASE("mnlds reduces to the classical recursion on binary weights") {
    SpatialGraph g = generate_er(12, 0.4, 3);
    WeightedAdjacency binary = g.adjacency();
    WeightedAdjacency weighted(12, WeightKind::ProbabilityWeighted);
    binary.for_each_edge([&](std::size_t i, std::size_t j, double) { weighted.set(i, j, 1.0); });

    EpidemicParams params;
    params.beta = 0.07;
    params.delta = 0.13;
    std::vector<double> p(12);
    for (std::size_t i = 0; i < 12; ++i) p[i] = 0.1 + 0.05 * double(i);

    CHECK(mnlds_step(binary, p, params) == mnlds_step(weighted, p, params));
}

TEST_CASE("mnlds_step guards its preconditions") {
    EpidemicParams params;
    params.beta = 0.5;
    CHECK_THROWS_AS(mnlds_step(single_edge(), {0.5}, params), std::invalid_argument);
    CHECK_THROWS_AS(mnlds_step(single_edge(), {0.5, 1.5}, params), std::invalid_argument);
    EpidemicParams hot;
    hot.beta = 1.5; // beta itself must lie in [0,1]
    CHECK_THROWS_AS(mnlds_step(single_edge(), {0.5, 0.5}, hot), std::invalid_argument);
}

TEST_CASE("disease-free state is a fixed point; delta=0 grows monotonically") {
    SpatialGraph g = generate_er(15, 0.3, 9);
    EpidemicParams params;
    params.beta = 0.2;
    params.delta = 0.4;
    std::vector<double> zeros(15, 0.0);
    CHECK(mnlds_step(g.adjacency(), zeros, params) == zeros);

    EpidemicParams growth;
    growth.beta = 0.2;
    growth.delta = 0.0;
    growth.initial_infection = 0.05;
    InfectionTrajectory traj = run_mnlds(g.adjacency(), growth, 50, 1e-12);
    for (std::size_t t = 1; t < traj.eta.size(); ++t) CHECK(traj.eta[t] >= traj.eta[t - 1]);
}

TEST_CASE("probability closure under random parameters") {
    Rng rng(77);
    for (int trial = 0; trial < 10; ++trial) {
        SpatialGraph g = generate_er(20, 0.3, 100 + trial);
        EpidemicParams params;
        params.beta = rng.uniform01();
        params.delta = rng.uniform01();
        params.initial_infection = rng.uniform01();
        InfectionTrajectory traj = run_mnlds(g.adjacency(), params, 60, 1e-14);
        for (double e : traj.eta) {
            CHECK(e >= 0.0);
            CHECK(e <= 1.0);
        }
    }
}

TEST_CASE("run_mnlds reports convergence and eta_final") {
    EpidemicParams params;
    params.beta = 0.05;
    params.delta = 0.9; // strongly subcritical
    params.initial_infection = 0.5;
    InfectionTrajectory traj = run_mnlds(single_edge(), params, 10000, 1e-10);
    CHECK(traj.converged);
    CHECK(traj.eta_final < 1e-6);
    CHECK(traj.steps < 10000);
    CHECK(traj.eta_final == traj.eta.back());

    // starved budget: flag off, no exception
    InfectionTrajectory cut = run_mnlds(single_edge(), params, 2, 1e-16);
    CHECK_FALSE(cut.converged);
    CHECK(cut.steps == 2);
}

TEST_CASE("mnlds linear stability matches the spectral threshold") {
    // Jacobian at p=0 is (1-delta) I + beta A; stable iff beta/delta < 1/lambda_1
    SpatialGraph g = generate_er(10, 0.5, 21);
    double lambda1 = largest_eigenvalue(g.adjacency()).lambda1;
    double beta = 0.05;

    for (double factor : {0.8, 1.25}) {
        double delta = std::min(1.0, factor * beta * lambda1);
        // spectral radius of the symmetric Jacobian via the oracle
        std::vector<double> jac(10 * 10, 0.0);
        const auto& a = g.adjacency().data();
        for (std::size_t i = 0; i < 10; ++i) {
            jac[i * 10 + i] = 1.0 - delta;
            for (std::size_t j = 0; j < 10; ++j)
                if (i != j) jac[i * 10 + j] = beta * a[i * 10 + j];
        }
        auto eig = oracle::jacobi_eigenvalues(jac, 10);
        double radius = std::max(std::abs(eig.front()), std::abs(eig.back()));
        bool stable = radius < 1.0;
        bool below_threshold = beta / delta < 1.0 / lambda1;
        CHECK(stable == below_threshold);
    }
}

TEST_CASE("direct_sim_step event rules") {
    EpidemicParams params;
    params.beta = 0.3;
    params.delta = 0.4;
    Rng rng(1);

    // all-healthy network is absorbing
    BinaryState healthy{std::vector<std::uint8_t>(5, 0)};
    SpatialGraph g = generate_er(5, 0.8, 2);
    CHECK(direct_sim_step(g.adjacency(), healthy, params, rng).sigma == healthy.sigma);

    // certain cure, no infection: everyone heals in one step
    EpidemicParams cureall;
    cureall.beta = 0.0;
    cureall.delta = 1.0;
    BinaryState infected{std::vector<std::uint8_t>(5, 1)};
    CHECK(direct_sim_step(g.adjacency(), infected, cureall, rng).sigma == healthy.sigma);

    // certain transmission from an infected hub, no cure
    EpidemicParams spread;
    spread.beta = 1.0;
    spread.delta = 0.0;
    WeightedAdjacency hub = star(4);
    BinaryState seed{std::vector<std::uint8_t>{1, 0, 0, 0, 0}};
    BinaryState next = direct_sim_step(hub, seed, spread, rng);
    CHECK(next.sigma == std::vector<std::uint8_t>{1, 1, 1, 1, 1});

    // cured-but-reinfected stays infected: delta=1 and beta=1 on a pair of
    // infected neighbors keeps both infected
    BinaryState pair{std::vector<std::uint8_t>{1, 1}};
    EpidemicParams both;
    both.beta = 1.0;
    both.delta = 1.0;
    CHECK(direct_sim_step(single_edge(), pair, both, rng).sigma ==
          std::vector<std::uint8_t>{1, 1});
}

TEST_CASE("frozen dynamics keep eta constant") {
    EpidemicParams params;
    params.beta = 0.0;
    params.delta = 0.0;
    params.initial_infection = 0.5;
    SpatialGraph g = generate_er(30, 0.2, 8);
    InfectionTrajectory traj = run_direct_sim(g.adjacency(), params, 50, 1, 4);
    for (double e : traj.eta) CHECK(e == traj.eta.front());
}

TEST_CASE("run_direct_sim is deterministic per master seed") {
    SpatialGraph g = generate_er(25, 0.3, 5);
    EpidemicParams params;
    params.beta = 0.2;
    params.delta = 0.3;
    InfectionTrajectory a = run_direct_sim(g.adjacency(), params, 40, 5, 0);
    InfectionTrajectory b = run_direct_sim(g.adjacency(), params, 40, 5, 0);
    CHECK(a.eta == b.eta);
    CHECK(a.eta_std == b.eta_std);
}
