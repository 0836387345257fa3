#pragma once

#include <cstdint>
#include <vector>

#include "qnet/matrix.hpp"
#include "qnet/rng.hpp"

namespace qnet {

// SIS rates plus the initial infection. When initial_vector is nonempty it
// overrides the uniform per-node probability.
struct EpidemicParams {
    double beta = 0.05;  // infection rate per contact per step
    double delta = 0.0;  // curing rate per step
    double initial_infection = 0.5;
    std::vector<double> initial_vector;

    void validate() const; // throws std::invalid_argument
    std::vector<double> initial_probs(std::size_t n) const;
};

struct InfectionTrajectory {
    std::vector<double> eta;     // infected fraction, index = time step
    std::vector<double> eta_std; // across-run spread (direct simulation only)
    std::vector<std::vector<double>> node_probs; // per-node snapshots, optional
    int steps = 0;
    bool converged = false;
    double eta_final = 0.0;
};

struct BinaryState {
    std::vector<std::uint8_t> sigma; // entries in {0,1}
};

// Closed-form solution of the Kephart-White equation
//   deta/dt = beta <k> eta (1 - eta) - delta eta
// evaluated on t_grid. Uses the standard logistic solution
//   eta(t) = eta0 etaI / (eta0 + (etaI - eta0) exp(-(beta<k> - delta) t)),
// etaI = 1 - delta/(beta<k>), with exact special cases for beta<k> = delta
// and beta = 0. eta_final reports max(0, etaI) reached on the grid.
InfectionTrajectory kw_solution(const EpidemicParams& params, double mean_degree,
                                double eta0, const std::vector<double>& t_grid);

// One synchronous update of the discrete-time infection-probability
// recursion on a weighted adjacency:
//   xi_i = prod_j (1 - beta A_ij p_j),  p_i' = 1 - (1 - p_i) xi_i - delta p_i xi_i.
// Requires beta * max(A_ij) <= 1 so every factor stays in [0,1].
std::vector<double> mnlds_step(const WeightedAdjacency& w, const std::vector<double>& p_prev,
                               const EpidemicParams& params);

// Iterates mnlds_step until t_max or until max_i |p_i(t) - p_i(t-1)| <
// conv_tol. Non-convergence is reported through the flag, never an error.
InfectionTrajectory run_mnlds(const WeightedAdjacency& w, const EpidemicParams& params,
                              int t_max = 10000, double conv_tol = 1e-8,
                              bool record_node_probs = false);

// One step of the direct binary-state simulation. Per node: an infection
// draw against P_i = 1 - prod_j (1 - beta A_ij sigma_j), then an independent
// cure draw against delta. An infected node heals only if it is cured and
// not reinfected in the same step; a healthy node becomes infected if the
// infection draw succeeds.
BinaryState direct_sim_step(const WeightedAdjacency& w, const BinaryState& state,
                            const EpidemicParams& params, Rng& rng);

// Monte-Carlo average of n_runs independent binary-state trajectories, each
// started from Bernoulli(p_{i,0}) initial states. eta is the across-run mean
// per step, eta_std the across-run standard deviation.
InfectionTrajectory run_direct_sim(const WeightedAdjacency& w, const EpidemicParams& params,
                                   int t_max, int n_runs, std::uint64_t master_seed);

// Exact expected infected fraction from the full 2^N-state Markov chain
// whose per-node transition events match direct_sim_step. Test oracle for
// tiny networks; throws too_large_error for N > 12.
InfectionTrajectory exact_markov_expectation(const WeightedAdjacency& w,
                                             const EpidemicParams& params,
                                             const std::vector<double>& p0, int t_max);

} // namespace qnet
