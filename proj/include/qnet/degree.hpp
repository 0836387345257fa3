#pragma once

#include <map>
#include <vector>

#include "qnet/matrix.hpp"

namespace qnet {

// Degree distribution summary. For probability-weighted matrices the degree
// of node i is its expected degree sum_j w_ij; the histogram floors those to
// integer bins for display while the moments use the raw values.
struct DegreeStats {
    std::map<int, double> histogram; // degree bin -> p_k, sums to 1
    double mean_degree = 0.0;        // <k>
    double second_moment = 0.0;      // <k^2>
};

std::vector<double> node_degrees(const WeightedAdjacency& w);

DegreeStats degree_stats(const WeightedAdjacency& w);

} // namespace qnet
