#pragma once

#include <cstdint>
#include <vector>

#include "qnet/graph.hpp"
#include "qnet/matrix.hpp"

namespace qnet {

// Probability that one photon survives a fiber of length d km: 10^(-gamma d/10).
double photon_success_prob(double d, const PhotonicParams& ph);

// Probability that at least one of n_photons survives: 1 - (1 - P)^n_p.
// Evaluated as -expm1(n_p * log1p(-P)) so it stays accurate when P is close
// to 0 or 1.
double quantum_link_prob(double d, const PhotonicParams& ph);

// Probability adjacency matrix on a fixed fiber topology: weight(i,j) = p_ij
// on existing edges, 0 elsewhere (quenched topology, averaged photonics).
WeightedAdjacency apply_quantum_weights(const SpatialGraph& g, const PhotonicParams& ph);

// Expected adjacency over both layers of randomness: weight(i,j) =
// Pi_ij * p_ij for every pair, no sampling anywhere (annealed regime).
WeightedAdjacency expected_adjacency(const GeoParams& geo, const PhotonicParams& ph,
                                     const std::vector<Point>& positions);

// Independent Bernoulli draw per link: each edge of a probability-weighted
// matrix is kept with probability p_ij and becomes weight 1, else dropped
// (fully sampled regime).
WeightedAdjacency sample_link_realization(const WeightedAdjacency& w, std::uint64_t seed);

} // namespace qnet
