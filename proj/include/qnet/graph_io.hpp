#pragma once

#include <string>
#include <vector>

#include "qnet/graph.hpp"
#include "qnet/matrix.hpp"

namespace qnet {

struct StoredGraph {
    WeightedAdjacency weights;
    std::vector<Point> positions;
};

// Text format, UTF-8, LF line endings:
//   qnet-graph v1
//   n=<N> kind=<binary|weighted|sampled>
//   <node_id> <x_km> <y_km>          (N lines)
//   <i> <j> <weight>                 (one line per edge, i < j)
// Numbers use the shortest round-trip decimal form, so save/load is
// bit-exact.
void save_graph(const WeightedAdjacency& w, const std::vector<Point>& positions,
                const std::string& path);

StoredGraph load_graph(const std::string& path);

} // namespace qnet
