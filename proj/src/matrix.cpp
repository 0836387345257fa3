#include "qnet/matrix.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qnet {

const char* to_string(WeightKind kind) {
    switch (kind) {
        case WeightKind::BinaryClassical: return "binary";
        case WeightKind::ProbabilityWeighted: return "weighted";
        case WeightKind::SampledRealization: return "sampled";
    }
    return "?";
}

WeightedAdjacency::WeightedAdjacency(std::size_t n, WeightKind kind)
    : n_(n), kind_(kind), data_(n * n, 0.0) {}

void WeightedAdjacency::set(std::size_t i, std::size_t j, double w) {
    if (i >= n_ || j >= n_)
        throw std::invalid_argument("adjacency index out of range");
    if (i == j)
        throw std::invalid_argument("self-loops are not allowed");
    if (!(w >= 0.0 && w <= 1.0))
        throw std::invalid_argument("edge weight must lie in [0,1], got " + std::to_string(w));
    if (is_binary_kind() && w != 0.0 && w != 1.0)
        throw std::invalid_argument("binary adjacency accepts only weights 0 and 1");
    data_[i * n_ + j] = w;
    data_[j * n_ + i] = w;
}

std::size_t WeightedAdjacency::edge_count() const {
    std::size_t count = 0;
    for_each_edge([&](std::size_t, std::size_t, double) { ++count; });
    return count;
}

double WeightedAdjacency::max_entry() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, v);
    return m;
}

double WeightedAdjacency::max_row_sum() const {
    double m = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n_; ++j) s += data_[i * n_ + j];
        m = std::max(m, s);
    }
    return m;
}

SparseLinks SparseLinks::from(const WeightedAdjacency& w) {
    std::size_t n = w.size();
    SparseLinks links;
    links.offsets.assign(n + 1, 0);

    const auto& data = w.data();
    for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t deg = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (data[i * n + j] != 0.0) ++deg;
        links.offsets[i + 1] = links.offsets[i] + deg;
    }
    links.neighbor.resize(links.offsets[n]);
    links.weight.resize(links.offsets[n]);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t at = links.offsets[i];
        for (std::size_t j = 0; j < n; ++j) {
            double v = data[i * n + j];
            if (v != 0.0) {
                links.neighbor[at] = static_cast<std::uint32_t>(j);
                links.weight[at] = v;
                ++at;
            }
        }
    }
    return links;
}

} // namespace qnet
