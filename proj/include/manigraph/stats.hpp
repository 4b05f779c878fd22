#pragma once

#include "manigraph/common.hpp"
#include "manigraph/sparse_graph.hpp"

#include <cstddef>
#include <vector>

namespace manigraph {

struct GraphStats {
    NodeId n = 0;
    double avg_degree = 0.0;          // = n * rho_hat; self-loops excluded
    std::size_t triangle_count = 0;
    double triangle_density = 0.0;    // T / n
    std::size_t connected_triples = 0;
    double clustering_coefficient = 0.0;  // 3T / triples, 0 when no triples
    std::vector<std::size_t> degree_histogram;
};

// Exact triangle count. Degree-ordered merge on sorted neighborhoods, with a
// packed-bitmap path for small dense graphs. Self-loops are ignored.
std::size_t count_triangles(const SparseGraph& g, int threads = 0);

GraphStats graph_stats(const SparseGraph& g, int threads = 0);

// Induced subgraph on the nodes of degree <= c, degrees measured in the
// original graph; `peel` switches to iterated peeling instead.
struct InducedSubgraph {
    SparseGraph graph;
    std::vector<NodeId> ids;  // new label -> original id
};
InducedSubgraph low_degree_subgraph(const SparseGraph& g, NodeId c, bool peel = false);

// For each embedding dimension: embed, resample, and report the mean
// percentage of the source graph's triangles reproduced.
struct RecoveryPoint {
    int d = 0;
    double mean_percent = 0.0;
    std::vector<std::size_t> resample_counts;
};
struct RecoveryCurve {
    std::size_t source_triangles = 0;
    std::vector<RecoveryPoint> points;
};
RecoveryCurve triangle_recovery_curve(const SparseGraph& g, const std::vector<int>& embed_dims,
                                      int resamples, std::uint64_t seed, int threads = 0);

}  // namespace manigraph
