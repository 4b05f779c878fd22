#include "manigraph/stats.hpp"

#include "manigraph/graphgen.hpp"
#include "manigraph/rng.hpp"
#include "manigraph/spectral.hpp"

#include <algorithm>
#include <numeric>

namespace manigraph {

namespace {

// triangles u<v<w in rank order, counted once via sorted-merge intersection
std::size_t count_triangles_merge(const SparseGraph& g, int threads) {
    const NodeId n = g.num_nodes();
    std::vector<NodeId> rank(static_cast<std::size_t>(n));
    {
        std::vector<NodeId> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
            if (g.degree(a) != g.degree(b)) return g.degree(a) < g.degree(b);
            return a < b;
        });
        for (NodeId r = 0; r < n; ++r) rank[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])] = r;
    }

    // forward adjacency in rank space, rows sorted by rank
    std::vector<std::size_t> offsets(static_cast<std::size_t>(n) + 1, 0);
    for (NodeId u = 0; u < n; ++u) {
        std::size_t fwd = 0;
        for (const NodeId v : g.neighbors(u))
            if (v != u && rank[static_cast<std::size_t>(v)] > rank[static_cast<std::size_t>(u)]) ++fwd;
        offsets[static_cast<std::size_t>(rank[static_cast<std::size_t>(u)]) + 1] = fwd;
    }
    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) offsets[i + 1] += offsets[i];
    std::vector<NodeId> fwd(offsets.back());
    {
        std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
        for (NodeId u = 0; u < n; ++u) {
            const NodeId ru = rank[static_cast<std::size_t>(u)];
            for (const NodeId v : g.neighbors(u)) {
                const NodeId rv = rank[static_cast<std::size_t>(v)];
                if (v != u && rv > ru) fwd[cursor[static_cast<std::size_t>(ru)]++] = rv;
            }
        }
        parallel_for_blocks(static_cast<std::size_t>(n), threads, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t r = lo; r < hi; ++r)
                std::sort(fwd.begin() + static_cast<std::ptrdiff_t>(offsets[r]),
                          fwd.begin() + static_cast<std::ptrdiff_t>(offsets[r + 1]));
        });
    }

    const std::size_t nblocks =
        (static_cast<std::size_t>(n) + kParallelBlock - 1) / kParallelBlock;
    std::vector<std::size_t> partial(nblocks, 0);
    parallel_for_blocks(static_cast<std::size_t>(n), threads, [&](std::size_t lo, std::size_t hi) {
        std::size_t acc = 0;
        for (std::size_t ru = lo; ru < hi; ++ru) {
            const NodeId* ubeg = fwd.data() + offsets[ru];
            const NodeId* uend = fwd.data() + offsets[ru + 1];
            for (const NodeId* pv = ubeg; pv != uend; ++pv) {
                const std::size_t rv = static_cast<std::size_t>(*pv);
                const NodeId* a = pv + 1;  // candidates past v in u's row
                const NodeId* b = fwd.data() + offsets[rv];
                const NodeId* bend = fwd.data() + offsets[rv + 1];
                while (a != uend && b != bend) {
                    if (*a < *b)
                        ++a;
                    else if (*b < *a)
                        ++b;
                    else {
                        ++acc;
                        ++a;
                        ++b;
                    }
                }
            }
        }
        partial[lo / kParallelBlock] = acc;
    });
    std::size_t total = 0;
    for (const std::size_t p : partial) total += p;
    return total;
}

std::size_t count_triangles_bitset(const SparseGraph& g, int threads) {
    const std::size_t n = static_cast<std::size_t>(g.num_nodes());
    const std::size_t words = (n + 63) / 64;
    std::vector<std::uint64_t> bits(n * words, 0);
    for (std::size_t u = 0; u < n; ++u)
        for (const NodeId v : g.neighbors(static_cast<NodeId>(u)))
            if (static_cast<std::size_t>(v) != u)
                bits[u * words + static_cast<std::size_t>(v) / 64] |= 1ULL
                                                                      << (static_cast<std::size_t>(v) % 64);

    const std::size_t nblocks = (n + kParallelBlock - 1) / kParallelBlock;
    std::vector<std::size_t> partial(nblocks, 0);
    parallel_for_blocks(n, threads, [&](std::size_t lo, std::size_t hi) {
        std::size_t acc = 0;
        for (std::size_t u = lo; u < hi; ++u) {
            const std::uint64_t* ru = bits.data() + u * words;
            for (const NodeId vn : g.neighbors(static_cast<NodeId>(u))) {
                const std::size_t v = static_cast<std::size_t>(vn);
                if (v <= u) continue;
                const std::uint64_t* rv = bits.data() + v * words;
                // count common neighbors w > v
                std::size_t w0 = (v + 1) / 64;
                const std::uint64_t head_mask = ~0ULL << ((v + 1) % 64);
                if ((v + 1) % 64 == 0) {
                    if (w0 >= words) continue;
                } else {
                    acc += static_cast<std::size_t>(
                        __builtin_popcountll(ru[w0] & rv[w0] & head_mask));
                    ++w0;
                }
                for (std::size_t w = w0; w < words; ++w)
                    acc += static_cast<std::size_t>(__builtin_popcountll(ru[w] & rv[w]));
            }
        }
        partial[lo / kParallelBlock] = acc;
    });
    std::size_t total = 0;
    for (const std::size_t p : partial) total += p;
    return total;
}

}  // namespace

std::size_t count_triangles(const SparseGraph& g, int threads) {
    const std::size_t n = static_cast<std::size_t>(g.num_nodes());
    if (n < 3) return 0;
    const double density =
        n > 1 ? (2.0 * static_cast<double>(g.edge_count())) / (double(n) * double(n - 1)) : 0.0;
    if (n <= 8192 && density >= 0.02) return count_triangles_bitset(g, threads);
    return count_triangles_merge(g, threads);
}

GraphStats graph_stats(const SparseGraph& g, int threads) {
    GraphStats s;
    s.n = g.num_nodes();
    if (s.n == 0) return s;
    std::size_t degsum = 0, triples = 0, maxdeg = 0;
    std::vector<std::size_t> degs(static_cast<std::size_t>(s.n));
    for (NodeId i = 0; i < s.n; ++i) {
        std::size_t d = static_cast<std::size_t>(g.degree(i));
        if (g.has_edge(i, i)) --d;  // self-loops excluded from all statistics
        degs[static_cast<std::size_t>(i)] = d;
        degsum += d;
        triples += d * (d - (d > 0 ? 1 : 0)) / 2;
        maxdeg = std::max(maxdeg, d);
    }
    s.avg_degree = static_cast<double>(degsum) / static_cast<double>(s.n);
    s.triangle_count = count_triangles(g, threads);
    s.triangle_density = static_cast<double>(s.triangle_count) / static_cast<double>(s.n);
    s.connected_triples = triples;
    s.clustering_coefficient =
        triples > 0 ? 3.0 * static_cast<double>(s.triangle_count) / static_cast<double>(triples)
                    : 0.0;
    s.degree_histogram.assign(maxdeg + 1, 0);
    for (const std::size_t d : degs) s.degree_histogram[d] += 1;
    return s;
}

InducedSubgraph low_degree_subgraph(const SparseGraph& g, NodeId c, bool peel) {
    require(c >= 0, "low_degree_subgraph: c >= 0");
    auto nonloop_degree = [](const SparseGraph& h, NodeId i) {
        NodeId d = h.degree(i);
        if (h.has_edge(i, i)) --d;
        return d;
    };
    InducedSubgraph out;
    out.ids.reserve(static_cast<std::size_t>(g.num_nodes()));
    for (NodeId i = 0; i < g.num_nodes(); ++i)
        if (nonloop_degree(g, i) <= c) out.ids.push_back(i);
    out.graph = g.induced(out.ids);
    if (!peel) return out;
    for (;;) {
        std::vector<NodeId> keep;
        for (NodeId i = 0; i < out.graph.num_nodes(); ++i)
            if (nonloop_degree(out.graph, i) <= c) keep.push_back(i);
        if (keep.size() == static_cast<std::size_t>(out.graph.num_nodes())) return out;
        std::vector<NodeId> new_ids(keep.size());
        for (std::size_t j = 0; j < keep.size(); ++j)
            new_ids[j] = out.ids[static_cast<std::size_t>(keep[j])];
        out.graph = out.graph.induced(keep);
        out.ids = std::move(new_ids);
    }
}

RecoveryCurve triangle_recovery_curve(const SparseGraph& g, const std::vector<int>& embed_dims,
                                      int resamples, std::uint64_t seed, int threads) {
    require(resamples >= 1, "triangle_recovery_curve: resamples >= 1");
    RecoveryCurve curve;
    curve.source_triangles = count_triangles(g, threads);
    if (curve.source_triangles == 0)
        throw std::runtime_error("triangle_recovery_curve: no triangles to recover");
    for (const int d : embed_dims) {
        require(d >= 1 && d <= g.num_nodes(), "triangle_recovery_curve: dim out of range");
        LanczosOptions opts;
        opts.threads = threads;
        const Embedding emb = ase(g, d, opts);
        RecoveryPoint pt;
        pt.d = d;
        double acc = 0.0;
        for (int rep = 0; rep < resamples; ++rep) {
            const std::uint64_t rep_seed =
                derive_stream(derive_stream(seed, static_cast<std::uint64_t>(d)),
                              static_cast<std::uint64_t>(rep));
            const SparseGraph rg = sample_graph_from_embedding(emb, rep_seed, threads);
            const std::size_t t = count_triangles(rg, threads);
            pt.resample_counts.push_back(t);
            acc += static_cast<double>(t);
        }
        pt.mean_percent =
            100.0 * (acc / resamples) / static_cast<double>(curve.source_triangles);
        curve.points.push_back(std::move(pt));
    }
    return curve;
}

}  // namespace manigraph
