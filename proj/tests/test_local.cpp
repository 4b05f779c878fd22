#include "doctest.h"

#include "manigraph/local.hpp"
#include "manigraph/rng.hpp"
#include "manigraph/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace manigraph;

namespace {

SparseGraph complete_graph(NodeId n, NodeId offset = 0, NodeId total = 0) {
    std::vector<std::pair<NodeId, NodeId>> e;
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j) e.emplace_back(offset + i, offset + j);
    return SparseGraph::from_edges(total > 0 ? total : n, e);
}

// brute-force |N(q) ∩ N(v)|
std::size_t common_count(const SparseGraph& g, NodeId q, NodeId v) {
    std::size_t c = 0;
    for (const NodeId w : g.neighbors(q))
        if (w != q && w != v && g.has_edge(v, w)) ++c;
    return c;
}

}  // namespace

TEST_CASE("common-neighbor neighborhoods") {
    // K5, query 0, k = 3: all candidates tie, ids break the tie
    const SparseGraph k5 = complete_graph(5);
    const Neighborhood nb = common_neighbor_neighborhood(k5, 0, 3);
    CHECK(nb.core_ids == std::vector<NodeId>{0, 1, 2});
    CHECK(nb.score[0] == 4);  // deg(query)
    CHECK(nb.score[1] == 3);
    for (std::size_t i = 1; i < nb.score.size(); ++i) CHECK(nb.score[i] <= nb.score[i - 1]);

    // two disjoint K4s: the neighborhood stays within the query's clique
    std::vector<std::pair<NodeId, NodeId>> e;
    for (NodeId i = 0; i < 4; ++i)
        for (NodeId j = i + 1; j < 4; ++j) {
            e.emplace_back(i, j);
            e.emplace_back(4 + i, 4 + j);
        }
    const SparseGraph two = SparseGraph::from_edges(8, e);
    const Neighborhood nb2 = common_neighbor_neighborhood(two, 1, 4);
    for (const NodeId id : nb2.core_ids) CHECK(id < 4);

    // 12-node random graph against the brute-force oracle
    Rng rng(5);
    std::vector<std::pair<NodeId, NodeId>> re;
    for (NodeId i = 0; i < 12; ++i)
        for (NodeId j = i + 1; j < 12; ++j)
            if (rng.uniform() < 0.4) re.emplace_back(i, j);
    const SparseGraph g = SparseGraph::from_edges(12, re);
    const NodeId q = 3;
    REQUIRE(g.degree(q) > 0);
    const Neighborhood nb3 = common_neighbor_neighborhood(g, q, 6);
    // oracle: sort all candidates by (count desc, id asc)
    std::vector<NodeId> cand;
    for (NodeId v = 0; v < 12; ++v)
        if (v != q) cand.push_back(v);
    std::stable_sort(cand.begin(), cand.end(), [&](NodeId x, NodeId y) {
        const std::size_t cx = common_count(g, q, x), cy = common_count(g, q, y);
        if (cx != cy) return cx > cy;
        return x < y;
    });
    for (int i = 0; i < 5; ++i) {
        CHECK(nb3.core_ids[static_cast<std::size_t>(i + 1)] == cand[static_cast<std::size_t>(i)]);
        CHECK(nb3.score[static_cast<std::size_t>(i + 1)] ==
              common_count(g, q, cand[static_cast<std::size_t>(i)]));
    }

    // isolated query is an error
    const SparseGraph iso = SparseGraph::from_edges(3, {{0, 1}});
    CHECK_THROWS(common_neighbor_neighborhood(iso, 2, 2));
    CHECK_THROWS(common_neighbor_neighborhood(g, 99, 2));
}

TEST_CASE("neighborhood is equivariant under relabeling when scores are untied") {
    // build a graph with strictly decreasing common-neighbor counts from node 0:
    // node v shares v common neighbors with the query via dedicated paths
    std::vector<std::pair<NodeId, NodeId>> e;
    const NodeId q = 0;
    NodeId next = 10;
    std::vector<std::pair<NodeId, int>> targets = {{1, 5}, {2, 4}, {3, 3}, {4, 2}, {5, 1}};
    for (const auto& [v, cnt] : targets)
        for (int c = 0; c < cnt; ++c) {
            e.emplace_back(q, next);
            e.emplace_back(v, next);
            ++next;
        }
    const SparseGraph g = SparseGraph::from_edges(next, e);
    const Neighborhood nb = common_neighbor_neighborhood(g, q, 4);
    CHECK(nb.core_ids == std::vector<NodeId>{0, 1, 2, 3});

    // permute labels, recompute, map back
    std::vector<NodeId> perm(static_cast<std::size_t>(next));
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(2);
    for (std::size_t i = perm.size(); i > 1; --i)
        std::swap(perm[i - 1], perm[static_cast<std::size_t>(rng.below(i))]);
    std::vector<std::pair<NodeId, NodeId>> pe;
    for (const auto& [a, b] : e)
        pe.emplace_back(perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(b)]);
    const SparseGraph pg = SparseGraph::from_edges(next, pe);
    const Neighborhood pnb = common_neighbor_neighborhood(pg, perm[0], 4);
    std::vector<NodeId> mapped_back;
    std::vector<NodeId> inverse(static_cast<std::size_t>(next));
    for (NodeId i = 0; i < next; ++i) inverse[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = i;
    for (const NodeId id : pnb.core_ids) mapped_back.push_back(inverse[static_cast<std::size_t>(id)]);
    std::sort(mapped_back.begin(), mapped_back.end());
    CHECK(mapped_back == std::vector<NodeId>{0, 1, 2, 3});
}

TEST_CASE("core and core-periphery extractors") {
    const SparseGraph k4 = complete_graph(4);
    std::vector<NodeId> all = {0, 1, 2, 3};
    CHECK(extract_core(k4, all).graph.fingerprint() == k4.fingerprint());

    const CoreSubgraph single = extract_core(k4, {2});
    CHECK(single.graph.num_nodes() == 1);
    CHECK(single.graph.edge_count() == 0);

    const CoreSubgraph k3 = extract_core(k4, {0, 1, 3});
    CHECK(k3.graph.edge_count() == 3);
    CHECK(count_triangles(k3.graph) == 1);

    // slice: rows are full adjacency rows of the core nodes
    Rng rng(23);
    std::vector<std::pair<NodeId, NodeId>> e;
    for (NodeId i = 0; i < 30; ++i)
        for (NodeId j = i + 1; j < 30; ++j)
            if (rng.uniform() < 0.2) e.emplace_back(i, j);
    const SparseGraph g = SparseGraph::from_edges(30, e);
    std::vector<NodeId> core_ids = {3, 7, 11, 12, 20};
    const CorePeripherySlice slice = extract_cp_slice(g, core_ids);
    CHECK(slice.matrix.rows == 5);
    CHECK(slice.matrix.cols == 30);
    // row sums equal the core nodes' degrees
    for (std::size_t r = 0; r < 5; ++r)
        CHECK(slice.matrix.offsets[r + 1] - slice.matrix.offsets[r] ==
              static_cast<std::size_t>(g.degree(core_ids[r])));
    // full-core slice equals the adjacency
    std::vector<NodeId> everything(30);
    std::iota(everything.begin(), everything.end(), 0);
    const CorePeripherySlice full = extract_cp_slice(g, everything);
    std::size_t nnz = 0;
    for (NodeId u = 0; u < 30; ++u) nnz += static_cast<std::size_t>(g.degree(u));
    CHECK(full.matrix.colidx.size() == nnz);

    // core columns of the slice reproduce the core adjacency
    const CoreSubgraph core = extract_core(g, core_ids);
    const MatrixXd dense_slice = slice.matrix.dense();
    for (std::size_t a = 0; a < core_ids.size(); ++a)
        for (std::size_t b = 0; b < core_ids.size(); ++b) {
            const bool in_core = core.graph.has_edge(static_cast<NodeId>(a), static_cast<NodeId>(b));
            CHECK(dense_slice(static_cast<Eigen::Index>(a), core_ids[b]) ==
                  (in_core ? 1.0 : 0.0));
        }
}

TEST_CASE("latent ball cores") {
    auto [lat, ker] = make_model(ExampleId::Ex2, 20000, 1.0);
    const LatentSample s = sample_latents(lat, 20000, 99);

    // radius beyond the diameter: everything
    CHECK(latent_ball_core(s, 0, 4.0).size() == 20000);
    // radius 0 around a node: just the node
    const auto self_only = latent_ball_core(s, 5, 0.0);
    CHECK(self_only == std::vector<NodeId>{5});

    // arc of half-angle pi/8 around angle 0 captures ~n/8 nodes
    VectorXd center(2);
    center << 1.0, 0.0;
    const auto ball = latent_ball_core(s, center, 3.14159265358979323846 / 8.0);
    const double expect = 20000.0 / 8.0;
    const double sd = std::sqrt(20000.0 * (1.0 / 8.0) * (7.0 / 8.0));
    CHECK(std::abs(static_cast<double>(ball.size()) - expect) < 4.0 * sd);

    // geodesic metric on the circle: antipodal distance is pi r, not 2r
    double a[2] = {1.0, 0.0}, b[2] = {-1.0, 0.0};
    CHECK(latent_distance(lat, a, b) == doctest::Approx(3.14159265358979323846).epsilon(1e-12));
}

TEST_CASE("ball-core growth follows the local density law" * doctest::test_suite("slow")) {
    // circle with fixed radius 3 and growing n: core size and core mean degree
    // grow linearly, core triangle density quadratically
    const double r = 3.0, ball_radius = 0.4;
    const std::vector<int> ns = {1000, 2000, 4000, 8000};
    const int seeds = 3;
    std::vector<double> sizes, degrees, deltas, xs;
    for (const int n : ns) {
        double size_acc = 0.0, deg_acc = 0.0, delta_acc = 0.0;
        for (int s = 0; s < seeds; ++s) {
            auto [lat, ker] = make_model(ExampleId::Ex2, n, r);
            const LatentSample ls =
                sample_latents(lat, n, 7000 + static_cast<std::uint64_t>(100 * s + n / 100));
            const SparseGraph g =
                sample_graph(ls, ker, false, 8000 + static_cast<std::uint64_t>(100 * s + n / 100), 2);
            VectorXd center(2);
            center << r, 0.0;
            const auto ids = latent_ball_core(ls, center, ball_radius);
            REQUIRE(ids.size() > 3);
            const CoreSubgraph core = extract_core(g, ids);
            const GraphStats st = graph_stats(core.graph, 2);
            size_acc += static_cast<double>(ids.size());
            deg_acc += st.avg_degree;
            delta_acc += st.triangle_density;
        }
        xs.push_back(n);
        sizes.push_back(size_acc / seeds);
        degrees.push_back(deg_acc / seeds);
        deltas.push_back(delta_acc / seeds);
    }
    auto slope = [&](const std::vector<double>& ys) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double lx = std::log(xs[i]), ly = std::log(ys[i]);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        const double k = static_cast<double>(xs.size());
        return (sxy - sx * sy / k) / (sxx - sx * sx / k);
    };
    CHECK(std::abs(slope(sizes) - 1.0) < 0.2);
    CHECK(std::abs(slope(degrees) - 1.0) < 0.2);
    CHECK(std::abs(slope(deltas) - 2.0) < 0.3);
}
