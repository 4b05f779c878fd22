#pragma once

#include "manigraph/common.hpp"
#include "manigraph/graphgen.hpp"
#include "manigraph/sparse_graph.hpp"
#include "manigraph/spectral.hpp"

#include <vector>

namespace manigraph {

// The k nodes sharing the most neighbors with a query node (query included,
// listed first). Ties break towards the smaller node id.
struct Neighborhood {
    NodeId query = 0;
    std::vector<NodeId> core_ids;    // query first, then score-descending
    std::vector<std::size_t> score;  // common-neighbor count per member
    int k = 0;
};

Neighborhood common_neighbor_neighborhood(const SparseGraph& g, NodeId query, int k);

// Induced core subgraph plus its relabel map.
struct CoreSubgraph {
    SparseGraph graph;
    std::vector<NodeId> ids;  // new label -> original id
};
CoreSubgraph extract_core(const SparseGraph& g, const std::vector<NodeId>& core_ids);

// Rectangular slice: the core nodes' full adjacency rows against all nodes.
struct CorePeripherySlice {
    SparseRect matrix;             // m x n
    std::vector<NodeId> row_map;   // slice row -> original id
    Eigen::Index full_n = 0;       // column space is the original node set
};
CorePeripherySlice extract_cp_slice(const SparseGraph& g, const std::vector<NodeId>& core_ids);

// Nodes whose latent position lies within `radius` of the center, using the
// domain metric (geodesic on the circle and the sphere, Euclidean on flats).
std::vector<NodeId> latent_ball_core(const LatentSample& latents, NodeId center, double radius);
std::vector<NodeId> latent_ball_core(const LatentSample& latents, const VectorXd& center,
                                     double radius);

double latent_distance(const LatentModel& model, const double* a, const double* b);

}  // namespace manigraph
