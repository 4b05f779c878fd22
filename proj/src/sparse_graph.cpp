#include "manigraph/sparse_graph.hpp"

#include <algorithm>

namespace manigraph {

SparseGraph SparseGraph::from_edges(NodeId n, const std::vector<std::pair<NodeId, NodeId>>& edges,
                                    bool allow_self_loops) {
    require(n >= 0, "from_edges: n >= 0");
    std::vector<std::vector<NodeId>> upper(static_cast<std::size_t>(n));
    for (const auto& [a, b] : edges) {
        require(a >= 0 && a < n && b >= 0 && b < n, "from_edges: node id out of range");
        if (a == b) {
            if (allow_self_loops) upper[static_cast<std::size_t>(a)].push_back(a);
            continue;
        }
        const NodeId u = std::min(a, b), v = std::max(a, b);
        upper[static_cast<std::size_t>(u)].push_back(v);
    }
    for (auto& row : upper) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    return from_upper_rows(upper, allow_self_loops);
}

SparseGraph SparseGraph::from_upper_rows(const std::vector<std::vector<NodeId>>& upper,
                                         bool allow_self_loops) {
    SparseGraph g;
    g.n_ = static_cast<NodeId>(upper.size());
    g.allows_self_loops_ = allow_self_loops;

    std::vector<std::size_t> deg(upper.size(), 0);
    for (std::size_t i = 0; i < upper.size(); ++i) {
        for (const NodeId v : upper[i]) {
            require(v >= static_cast<NodeId>(i) && v < g.n_, "from_upper_rows: row not upper-triangular");
            if (v == static_cast<NodeId>(i)) {
                require(allow_self_loops, "from_upper_rows: self-loop in a loop-free graph");
                deg[i] += 1;
                g.self_loops_ += 1;
            } else {
                deg[i] += 1;
                deg[static_cast<std::size_t>(v)] += 1;
            }
            g.edge_count_ += 1;
        }
    }
    g.offsets_.assign(upper.size() + 1, 0);
    for (std::size_t i = 0; i < upper.size(); ++i) g.offsets_[i + 1] = g.offsets_[i] + deg[i];
    g.adj_.resize(g.offsets_.back());

    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (std::size_t i = 0; i < upper.size(); ++i) {
        for (const NodeId v : upper[i]) {
            g.adj_[cursor[i]++] = v;
            if (v != static_cast<NodeId>(i)) g.adj_[cursor[static_cast<std::size_t>(v)]++] = static_cast<NodeId>(i);
        }
    }
    // lower entries arrive in ascending row order, so rows are already sorted
    return g;
}

bool SparseGraph::has_edge(NodeId u, NodeId v) const {
    const auto row = neighbors(u);
    return std::binary_search(row.begin(), row.end(), v);
}

void SparseGraph::multiply(const double* x, double* y, int threads) const {
    parallel_for_blocks(static_cast<std::size_t>(n_), threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            double acc = 0.0;
            for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k)
                acc += x[static_cast<std::size_t>(adj_[k])];
            y[i] = acc;
        }
    });
}

std::uint64_t SparseGraph::fingerprint() const {
    std::uint64_t h = fnv1a(&n_, sizeof(n_));
    h = fnv1a_span(offsets_, h);
    h = fnv1a_span(adj_, h);
    return h;
}

SparseGraph SparseGraph::induced(const std::vector<NodeId>& ids) const {
    std::vector<NodeId> to_new(static_cast<std::size_t>(n_), -1);
    for (std::size_t i = 0; i < ids.size(); ++i) {
        require(ids[i] >= 0 && ids[i] < n_, "induced: node id out of range");
        require(to_new[static_cast<std::size_t>(ids[i])] == -1, "induced: duplicate node id");
        to_new[static_cast<std::size_t>(ids[i])] = static_cast<NodeId>(i);
    }
    std::vector<std::vector<NodeId>> upper(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        for (const NodeId w : neighbors(ids[i])) {
            const NodeId nw = to_new[static_cast<std::size_t>(w)];
            if (nw >= static_cast<NodeId>(i)) upper[i].push_back(nw);
        }
        std::sort(upper[i].begin(), upper[i].end());
    }
    return from_upper_rows(upper, allows_self_loops_);
}

ComponentInfo connected_components(const SparseGraph& g) {
    ComponentInfo info;
    const NodeId n = g.num_nodes();
    info.label.assign(static_cast<std::size_t>(n), -1);
    std::vector<NodeId> stack;
    std::vector<NodeId> sizes;
    for (NodeId s = 0; s < n; ++s) {
        if (info.label[static_cast<std::size_t>(s)] != -1) continue;
        const NodeId c = info.count++;
        sizes.push_back(0);
        stack.push_back(s);
        info.label[static_cast<std::size_t>(s)] = c;
        while (!stack.empty()) {
            const NodeId u = stack.back();
            stack.pop_back();
            sizes[static_cast<std::size_t>(c)] += 1;
            for (const NodeId v : g.neighbors(u)) {
                if (info.label[static_cast<std::size_t>(v)] == -1) {
                    info.label[static_cast<std::size_t>(v)] = c;
                    stack.push_back(v);
                }
            }
        }
    }
    for (const NodeId s : sizes) info.largest_size = std::max(info.largest_size, s);
    return info;
}

}  // namespace manigraph
