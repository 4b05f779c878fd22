#include "doctest.h"

#include "manigraph/graphgen.hpp"
#include "manigraph/rng.hpp"
#include "manigraph/stats.hpp"

#include <algorithm>
#include <numeric>

using namespace manigraph;

namespace {

SparseGraph complete_graph(NodeId n) {
    std::vector<std::pair<NodeId, NodeId>> e;
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return SparseGraph::from_edges(n, e);
}

SparseGraph random_graph(NodeId n, double p, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::pair<NodeId, NodeId>> e;
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j)
            if (rng.uniform() < p) e.emplace_back(i, j);
    return SparseGraph::from_edges(n, e);
}

// O(n^3) oracle over all unordered triples
std::size_t brute_force_triangles(const SparseGraph& g) {
    std::size_t t = 0;
    const NodeId n = g.num_nodes();
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j) {
            if (!g.has_edge(i, j)) continue;
            for (NodeId k = j + 1; k < n; ++k)
                if (g.has_edge(j, k) && g.has_edge(i, k)) ++t;
        }
    return t;
}

}  // namespace

TEST_CASE("triangle counts on canonical graphs") {
    CHECK(count_triangles(complete_graph(3)) == 1);
    CHECK(count_triangles(complete_graph(4)) == 4);
    CHECK(count_triangles(complete_graph(10)) == 120);

    // star S5: hub plus five leaves, no triangles
    std::vector<std::pair<NodeId, NodeId>> star;
    for (NodeId leaf = 1; leaf <= 5; ++leaf) star.emplace_back(0, leaf);
    CHECK(count_triangles(SparseGraph::from_edges(6, star)) == 0);

    // self-loops are ignored, on both counting paths
    std::vector<std::pair<NodeId, NodeId>> tri = {{0, 1}, {1, 2}, {2, 0}, {1, 1}};
    CHECK(count_triangles(SparseGraph::from_edges(3, tri, true)) == 1);  // bitmap path
    std::vector<std::pair<NodeId, NodeId>> sparse_tri = {{0, 1}, {1, 2}, {2, 0}, {1, 1}, {7, 299}};
    CHECK(count_triangles(SparseGraph::from_edges(300, sparse_tri, true)) == 1);  // merge path
}

TEST_CASE("fast triangle count equals brute force (both code paths)") {
    const SparseGraph g = random_graph(150, 0.1, 42);
    CHECK(count_triangles(g) == brute_force_triangles(g));

    Rng rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const NodeId n = 4 + static_cast<NodeId>(rng.below(197));
        const double p = trial % 2 == 0 ? 0.4 : 0.03;  // bitset path and merge path
        const SparseGraph h = random_graph(n, p, 1000 + static_cast<std::uint64_t>(trial));
        REQUIRE(count_triangles(h) == brute_force_triangles(h));
        REQUIRE(count_triangles(h, 2) == brute_force_triangles(h));
    }
}

TEST_CASE("graph_stats fields") {
    const GraphStats k3 = graph_stats(complete_graph(3));
    CHECK(k3.clustering_coefficient == doctest::Approx(1.0));
    CHECK(k3.triangle_density == doctest::Approx(1.0 / 3.0));
    CHECK(k3.connected_triples == 3);
    CHECK(k3.avg_degree == doctest::Approx(2.0));

    // path P3: one triple, no triangle
    const SparseGraph p3 = SparseGraph::from_edges(3, {{0, 1}, {1, 2}});
    const GraphStats ps = graph_stats(p3);
    CHECK(ps.clustering_coefficient == doctest::Approx(0.0));
    CHECK(ps.connected_triples == 1);

    // connected_triples = sum C(deg, 2) on a random graph
    const SparseGraph g = random_graph(80, 0.15, 5);
    const GraphStats gs = graph_stats(g);
    std::size_t triples = 0;
    for (NodeId i = 0; i < g.num_nodes(); ++i) {
        const std::size_t d = static_cast<std::size_t>(g.degree(i));
        triples += d * (d - 1) / 2;
    }
    CHECK(gs.connected_triples == triples);
    CHECK(gs.clustering_coefficient >= 0.0);
    CHECK(gs.clustering_coefficient <= 1.0);
    std::size_t hist_total = 0;
    for (const auto c : gs.degree_histogram) hist_total += c;
    CHECK(hist_total == static_cast<std::size_t>(g.num_nodes()));
}

TEST_CASE("clustering coefficient is invariant under relabeling") {
    const SparseGraph g = random_graph(60, 0.2, 9);
    std::vector<NodeId> perm(60);
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(13);
    for (std::size_t i = perm.size(); i > 1; --i)
        std::swap(perm[i - 1], perm[static_cast<std::size_t>(rng.below(i))]);
    std::vector<std::pair<NodeId, NodeId>> relabeled;
    for (NodeId u = 0; u < 60; ++u)
        for (const NodeId v : g.neighbors(u))
            if (v > u)
                relabeled.emplace_back(perm[static_cast<std::size_t>(u)],
                                       perm[static_cast<std::size_t>(v)]);
    const SparseGraph h = SparseGraph::from_edges(60, relabeled);
    CHECK(graph_stats(g).clustering_coefficient == graph_stats(h).clustering_coefficient);
    CHECK(graph_stats(g).triangle_count == graph_stats(h).triangle_count);
}

TEST_CASE("low-degree subgraphs") {
    const SparseGraph g = random_graph(100, 0.08, 3);
    NodeId maxdeg = 0;
    for (NodeId i = 0; i < g.num_nodes(); ++i) maxdeg = std::max(maxdeg, g.degree(i));

    const InducedSubgraph all = low_degree_subgraph(g, maxdeg);
    CHECK(all.graph.num_nodes() == g.num_nodes());
    CHECK(all.graph.fingerprint() == g.fingerprint());

    const InducedSubgraph iso = low_degree_subgraph(g, 0);
    CHECK(iso.graph.edge_count() == 0);

    // K4 + K3 at c = 2 keeps exactly the K3 component
    std::vector<std::pair<NodeId, NodeId>> e;
    for (NodeId i = 0; i < 4; ++i)
        for (NodeId j = i + 1; j < 4; ++j) e.emplace_back(i, j);
    e.insert(e.end(), {{4, 5}, {5, 6}, {6, 4}});
    const SparseGraph two = SparseGraph::from_edges(7, e);
    const InducedSubgraph k3 = low_degree_subgraph(two, 2);
    CHECK(k3.ids == std::vector<NodeId>{4, 5, 6});
    CHECK(count_triangles(k3.graph) == 1);

    // node set shrinks monotonically as c decreases
    std::size_t prev = static_cast<std::size_t>(g.num_nodes()) + 1;
    for (NodeId c = maxdeg;; --c) {
        const std::size_t size = low_degree_subgraph(g, c).ids.size();
        CHECK(size <= prev);
        prev = size;
        if (c == 0) break;
    }

    // peeling never keeps a node whose subgraph degree exceeds c
    const InducedSubgraph peeled = low_degree_subgraph(g, 3, true);
    for (NodeId i = 0; i < peeled.graph.num_nodes(); ++i) CHECK(peeled.graph.degree(i) <= 3);
}

TEST_CASE("triangle recovery curve") {
    // K5 embedded at d = 5: the signature makes recovery exact
    const SparseGraph k5 = complete_graph(5);
    const RecoveryCurve exact = triangle_recovery_curve(k5, {5}, 4, 77);
    CHECK(exact.source_triangles == 10);
    CHECK(exact.points.at(0).mean_percent == doctest::Approx(100.0));

    // no triangles: error
    const SparseGraph p3 = SparseGraph::from_edges(3, {{0, 1}, {1, 2}});
    CHECK_THROWS_WITH_AS(triangle_recovery_curve(p3, {1}, 2, 1), doctest::Contains("no triangles"),
                         std::runtime_error);
}

TEST_CASE("recovery is non-decreasing in dimension on average" * doctest::test_suite("slow")) {
    // planted two-dimensional RBF model, d = 1 vs d = 12
    auto [lat, ker] = make_model(ExampleId::Square2D, 400, 4.0);
    double lo_acc = 0.0, hi_acc = 0.0;
    const int seeds = 8;
    for (int s = 0; s < seeds; ++s) {
        const LatentSample ls = sample_latents(lat, 400, 500 + static_cast<std::uint64_t>(s));
        const SparseGraph g = sample_graph(ls, ker, false, 600 + static_cast<std::uint64_t>(s));
        if (count_triangles(g) == 0) continue;
        const RecoveryCurve c =
            triangle_recovery_curve(g, {1, 12}, 6, 700 + static_cast<std::uint64_t>(s));
        lo_acc += c.points.at(0).mean_percent;
        hi_acc += c.points.at(1).mean_percent;
    }
    CHECK(hi_acc > lo_acc);
}
