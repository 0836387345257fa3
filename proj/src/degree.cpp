#include "qnet/degree.hpp"

#include <cmath>

namespace qnet {

std::vector<double> node_degrees(const WeightedAdjacency& w) {
    std::size_t n = w.size();
    std::vector<double> deg(n, 0.0);
    const auto& data = w.data();
    if (w.is_binary_kind()) {
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t count = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (data[i * n + j] != 0.0) ++count;
            deg[i] = static_cast<double>(count);
        }
    } else {
        // expected degree: sum of link success probabilities
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += data[i * n + j];
            deg[i] = s;
        }
    }
    return deg;
}

DegreeStats degree_stats(const WeightedAdjacency& w) {
    DegreeStats stats;
    auto deg = node_degrees(w);
    if (deg.empty()) return stats;

    double inv_n = 1.0 / static_cast<double>(deg.size());
    for (double k : deg) {
        stats.mean_degree += k;
        stats.second_moment += k * k;
        // histogram bins floor weighted degrees; moments stay unbinned
        stats.histogram[static_cast<int>(std::floor(k))] += inv_n;
    }
    stats.mean_degree *= inv_n;
    stats.second_moment *= inv_n;
    return stats;
}

} // namespace qnet
