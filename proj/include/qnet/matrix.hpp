#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace qnet {

enum class WeightKind {
    BinaryClassical,     // fiber adjacency, entries in {0,1}
    ProbabilityWeighted, // photonic success probabilities on existing edges
    SampledRealization,  // Bernoulli-sampled links, entries in {0,1}
};

const char* to_string(WeightKind kind);

// Symmetric nonnegative matrix with zero diagonal and entries in [0,1].
// This is the one effective-adjacency representation shared by the binary
// classical topology, the probability adjacency matrix, and sampled link
// realizations.
class WeightedAdjacency {
public:
    WeightedAdjacency(std::size_t n, WeightKind kind);

    std::size_t size() const { return n_; }
    WeightKind kind() const { return kind_; }

    double at(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    // Sets both (i,j) and (j,i). Rejects the diagonal, weights outside
    // [0,1], and non-binary weights on binary kinds.
    void set(std::size_t i, std::size_t j, double w);

    bool is_binary_kind() const { return kind_ != WeightKind::ProbabilityWeighted; }

    std::size_t edge_count() const; // nonzero entries above the diagonal
    double max_entry() const;
    double max_row_sum() const;

    const std::vector<double>& data() const { return data_; }

    // Visits upper-triangle nonzeros as f(i, j, w) with i < j.
    template <typename F>
    void for_each_edge(F&& f) const {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j)
                if (double w = data_[i * n_ + j]; w != 0.0) f(i, j, w);
    }

    bool operator==(const WeightedAdjacency& other) const = default;

private:
    std::size_t n_;
    WeightKind kind_;
    std::vector<double> data_; // row-major n*n, kept symmetric by set()
};

// Compressed neighbor lists. Built once per matrix; spectral iteration and
// the dynamics integrators touch only nonzero links through this view.
struct SparseLinks {
    std::vector<std::uint32_t> offsets; // size n+1
    std::vector<std::uint32_t> neighbor;
    std::vector<double> weight;

    std::size_t size() const { return offsets.size() - 1; }

    static SparseLinks from(const WeightedAdjacency& w);
};

} // namespace qnet
