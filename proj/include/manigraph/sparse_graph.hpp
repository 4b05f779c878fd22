#pragma once

#include "manigraph/common.hpp"

#include <span>
#include <utility>
#include <vector>

namespace manigraph {

// Undirected simple graph in compressed sparse row form. Rows are sorted,
// every edge is stored in both endpoint rows, a self-loop once. Immutable
// after construction and safe to share across threads.
class SparseGraph {
public:
    SparseGraph() = default;

    // Symmetrizes and deduplicates; self-loops are kept only when allowed.
    static SparseGraph from_edges(NodeId n, const std::vector<std::pair<NodeId, NodeId>>& edges,
                                  bool allow_self_loops = false);

    // rows[i] holds sorted, unique neighbors j >= i (the upper triangle).
    static SparseGraph from_upper_rows(const std::vector<std::vector<NodeId>>& upper,
                                       bool allow_self_loops = false);

    NodeId num_nodes() const { return n_; }
    std::size_t edge_count() const { return edge_count_; }
    bool allows_self_loops() const { return allows_self_loops_; }
    std::size_t self_loop_count() const { return self_loops_; }

    std::span<const NodeId> neighbors(NodeId v) const {
        return {adj_.data() + offsets_[static_cast<std::size_t>(v)],
                adj_.data() + offsets_[static_cast<std::size_t>(v) + 1]};
    }
    // adjacency-row length; a self-loop contributes one
    NodeId degree(NodeId v) const {
        return static_cast<NodeId>(offsets_[static_cast<std::size_t>(v) + 1] -
                                   offsets_[static_cast<std::size_t>(v)]);
    }
    bool has_edge(NodeId u, NodeId v) const;

    const std::vector<std::size_t>& offsets() const { return offsets_; }
    const std::vector<NodeId>& adjacency() const { return adj_; }

    // y = A x, deterministic and parallel over rows
    void multiply(const double* x, double* y, int threads = 0) const;

    std::uint64_t fingerprint() const;

    // induced subgraph on `ids` (order defines the new labels); relabel map
    // is ids itself (new label -> original id)
    SparseGraph induced(const std::vector<NodeId>& ids) const;

private:
    NodeId n_ = 0;
    std::vector<std::size_t> offsets_{0};
    std::vector<NodeId> adj_;
    std::size_t edge_count_ = 0;
    std::size_t self_loops_ = 0;
    bool allows_self_loops_ = false;
};

// Component label per node plus the size of the largest component.
struct ComponentInfo {
    std::vector<NodeId> label;
    NodeId count = 0;
    NodeId largest_size = 0;
};
ComponentInfo connected_components(const SparseGraph& g);

}  // namespace manigraph
