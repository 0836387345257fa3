#pragma once

#include <cstdint>
#include <vector>

#include "qnet/matrix.hpp"

namespace qnet {

struct Point {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Point&) const = default;
};

double euclidean(const Point& a, const Point& b);

// Waxman geometry: nodes uniform in a disk of radius r_max (km); pair (i,j)
// is wired with probability beta_l * exp(-d_ij / alpha_l).
struct GeoParams {
    double r_max = 1600.0;  // km
    double alpha_l = 226.0; // km
    double beta_l = 1.0;
    int n_nodes = 1;

    void validate() const; // throws std::invalid_argument
};

// Photonic link physics: single-photon survival 10^(-gamma d / 10) over a
// fiber of length d km, n_photons attempts per communication.
struct PhotonicParams {
    double gamma = 0.2; // dB/km
    long long n_photons = 1000;

    void validate() const; // throws std::invalid_argument
};

// Node positions in a disk plus the binary fiber adjacency. Pairwise
// distances are derived from the positions once and cached.
class SpatialGraph {
public:
    SpatialGraph(std::vector<Point> positions, WeightedAdjacency adjacency,
                 double disk_radius);

    std::size_t size() const { return positions_.size(); }
    const std::vector<Point>& positions() const { return positions_; }
    const WeightedAdjacency& adjacency() const { return adjacency_; }
    double disk_radius() const { return disk_radius_; }
    double distance(std::size_t i, std::size_t j) const {
        return distances_[i * positions_.size() + j];
    }

private:
    std::vector<Point> positions_;
    WeightedAdjacency adjacency_;
    double disk_radius_;
    std::vector<double> distances_;
};

// Uniform positions in a disk of radius r (area-uniform: radius r*sqrt(u)).
std::vector<Point> sample_disk_positions(std::size_t n, double r, std::uint64_t seed);

// Erdos-Renyi: every unordered pair wired independently with probability p.
// Positions are drawn in the unit disk but carry no meaning for ER.
SpatialGraph generate_er(int n, double p, std::uint64_t seed);

// Waxman spatial graph per GeoParams.
SpatialGraph generate_waxman(const GeoParams& geo, std::uint64_t seed);

} // namespace qnet
