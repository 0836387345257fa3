#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "qnet/dynamics.hpp"
#include "qnet/errors.hpp"

namespace qnet {

namespace {
constexpr std::size_t kMaxExactNodes = 12;
}

InfectionTrajectory exact_markov_expectation(const WeightedAdjacency& w,
                                             const EpidemicParams& params,
                                             const std::vector<double>& p0, int t_max) {
    params.validate();
    std::size_t n = w.size();
    if (n > kMaxExactNodes)
        throw too_large_error("exact Markov evolution supports at most " +
                              std::to_string(kMaxExactNodes) + " nodes (state space 2^N)");
    if (p0.size() != n)
        throw std::invalid_argument("p0 length does not match node count");
    for (double p : p0)
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("p0 entries must lie in [0,1]");
    if (params.beta * w.max_entry() > 1.0)
        throw std::invalid_argument("beta * max(A_ij) exceeds 1");
    if (t_max < 0) throw std::invalid_argument("t_max must be >= 0");

    SparseLinks links = SparseLinks::from(w);
    const std::size_t n_states = std::size_t{1} << n;

    // initial product distribution over bit strings
    std::vector<double> mu(n_states, 0.0);
    mu[0] = 1.0;
    std::size_t len = 1;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t s = 0; s < len; ++s) {
            double v = mu[s];
            mu[s] = v * (1.0 - p0[i]);
            mu[s | (std::size_t{1} << i)] = v * p0[i];
        }
        len <<= 1;
    }

    auto expected_fraction = [&](const std::vector<double>& dist) {
        double acc = 0.0;
        for (std::size_t s = 0; s < n_states; ++s)
            if (dist[s] != 0.0) acc += dist[s] * static_cast<double>(std::popcount(s));
        return acc / static_cast<double>(n);
    };

    InfectionTrajectory traj;
    traj.eta.push_back(expected_fraction(mu));

    std::vector<double> mu_next(n_states, 0.0);
    std::vector<double> scratch(n_states, 0.0);
    std::vector<double> q(n, 0.0);

    for (int t = 1; t <= t_max; ++t) {
        std::fill(mu_next.begin(), mu_next.end(), 0.0);
        for (std::size_t s = 0; s < n_states; ++s) {
            double mass = mu[s];
            if (mass == 0.0) continue;

            // per-node infection probability at the next step, given s
            for (std::size_t i = 0; i < n; ++i) {
                double xi = 1.0;
                for (std::uint32_t e = links.offsets[i]; e < links.offsets[i + 1]; ++e)
                    if (s >> links.neighbor[e] & 1)
                        xi *= 1.0 - params.beta * links.weight[e];
                bool infected = s >> i & 1;
                // infected stays infected unless cured and not reinfected;
                // healthy becomes infected unless every neighbor draw fails
                q[i] = infected ? 1.0 - params.delta * xi : 1.0 - xi;
            }

            // distribute the mass over the factorized target distribution
            scratch[0] = mass;
            std::size_t width = 1;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t x = 0; x < width; ++x) {
                    double v = scratch[x];
                    scratch[x] = v * (1.0 - q[i]);
                    scratch[x | (std::size_t{1} << i)] = v * q[i];
                }
                width <<= 1;
            }
            for (std::size_t x = 0; x < n_states; ++x) mu_next[x] += scratch[x];
        }
        mu.swap(mu_next);
        traj.eta.push_back(expected_fraction(mu));
    }

    traj.steps = t_max;
    traj.converged = true;
    traj.eta_final = traj.eta.back();
    return traj;
}

} // namespace qnet
