#include "qnet/graph.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qnet/rng.hpp"

namespace qnet {

double euclidean(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

void GeoParams::validate() const {
    if (!(r_max > 0.0)) throw std::invalid_argument("r_max must be positive");
    if (!(alpha_l > 0.0)) throw std::invalid_argument("alpha_l must be positive");
    if (!(beta_l >= 0.0 && beta_l <= 1.0))
        throw std::invalid_argument("beta_l must lie in [0,1]");
    if (n_nodes < 1) throw std::invalid_argument("n_nodes must be >= 1");
}

void PhotonicParams::validate() const {
    if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be >= 0");
    if (n_photons < 1) throw std::invalid_argument("n_photons must be >= 1");
}

SpatialGraph::SpatialGraph(std::vector<Point> positions, WeightedAdjacency adjacency,
                           double disk_radius)
    : positions_(std::move(positions)), adjacency_(std::move(adjacency)),
      disk_radius_(disk_radius) {
    std::size_t n = positions_.size();
    if (adjacency_.size() != n)
        throw std::invalid_argument("adjacency size does not match node count");
    if (adjacency_.kind() == WeightKind::ProbabilityWeighted)
        throw std::invalid_argument("spatial graph adjacency must be binary");
    const double limit = disk_radius_ * (1.0 + 1e-12) + 1e-12;
    for (const Point& p : positions_)
        if (std::hypot(p.x, p.y) > limit)
            throw std::invalid_argument("node position outside the disk");
    distances_.resize(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double d = euclidean(positions_[i], positions_[j]);
            distances_[i * n + j] = d;
            distances_[j * n + i] = d;
        }
}

std::vector<Point> sample_disk_positions(std::size_t n, double r, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Point> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
        // radius r*sqrt(u) makes the density uniform over the disk area
        double rad = r * std::sqrt(rng.uniform01());
        double ang = 2.0 * std::numbers::pi * rng.uniform01();
        pts[i] = {rad * std::cos(ang), rad * std::sin(ang)};
    }
    return pts;
}

SpatialGraph generate_er(int n, double p, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");

    auto positions = sample_disk_positions(static_cast<std::size_t>(n), 1.0,
                                           derive_seed(seed, stream::positions));
    WeightedAdjacency adj(static_cast<std::size_t>(n), WeightKind::BinaryClassical);
    Rng edges(derive_seed(seed, stream::topology));
    for (std::size_t i = 0; i < adj.size(); ++i)
        for (std::size_t j = i + 1; j < adj.size(); ++j)
            if (edges.bernoulli(p)) adj.set(i, j, 1.0);
    return SpatialGraph(std::move(positions), std::move(adj), 1.0);
}

SpatialGraph generate_waxman(const GeoParams& geo, std::uint64_t seed) {
    geo.validate();
    std::size_t n = static_cast<std::size_t>(geo.n_nodes);
    auto positions = sample_disk_positions(n, geo.r_max, derive_seed(seed, stream::positions));
    WeightedAdjacency adj(n, WeightKind::BinaryClassical);
    Rng edges(derive_seed(seed, stream::topology));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double d = euclidean(positions[i], positions[j]);
            double prob = geo.beta_l * std::exp(-d / geo.alpha_l);
            if (edges.bernoulli(prob)) adj.set(i, j, 1.0);
        }
    return SpatialGraph(std::move(positions), std::move(adj), geo.r_max);
}

} // namespace qnet
