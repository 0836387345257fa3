#include "qnet/photonic.hpp"

#include <cmath>
#include <stdexcept>

#include "qnet/rng.hpp"

namespace qnet {

double photon_success_prob(double d, const PhotonicParams& ph) {
    ph.validate();
    if (d < 0.0) throw std::invalid_argument("distance must be >= 0");
    return std::pow(10.0, -ph.gamma * d / 10.0);
}

double quantum_link_prob(double d, const PhotonicParams& ph) {
    double single = photon_success_prob(d, ph);
    if (single >= 1.0) return 1.0;
    // 1 - (1-P)^n without cancellation for P near 0 or 1
    return -std::expm1(static_cast<double>(ph.n_photons) * std::log1p(-single));
}

WeightedAdjacency apply_quantum_weights(const SpatialGraph& g, const PhotonicParams& ph) {
    ph.validate();
    WeightedAdjacency out(g.size(), WeightKind::ProbabilityWeighted);
    g.adjacency().for_each_edge([&](std::size_t i, std::size_t j, double) {
        out.set(i, j, quantum_link_prob(g.distance(i, j), ph));
    });
    return out;
}

WeightedAdjacency expected_adjacency(const GeoParams& geo, const PhotonicParams& ph,
                                     const std::vector<Point>& positions) {
    geo.validate();
    ph.validate();
    std::size_t n = positions.size();
    WeightedAdjacency out(n, WeightKind::ProbabilityWeighted);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double d = euclidean(positions[i], positions[j]);
            double pi = geo.beta_l * std::exp(-d / geo.alpha_l);
            out.set(i, j, pi * quantum_link_prob(d, ph));
        }
    return out;
}

WeightedAdjacency sample_link_realization(const WeightedAdjacency& w, std::uint64_t seed) {
    if (w.kind() != WeightKind::ProbabilityWeighted)
        throw std::invalid_argument("link sampling needs a probability-weighted matrix");
    WeightedAdjacency out(w.size(), WeightKind::SampledRealization);
    Rng rng(seed);
    w.for_each_edge([&](std::size_t i, std::size_t j, double p) {
        if (rng.bernoulli(p)) out.set(i, j, 1.0);
    });
    return out;
}

} // namespace qnet
