#include "manigraph/local.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace manigraph {

Neighborhood common_neighbor_neighborhood(const SparseGraph& g, NodeId query, int k) {
    const NodeId n = g.num_nodes();
    require(query >= 0 && query < n, "common_neighbor_neighborhood: bad query id");
    require(k >= 1 && k <= n, "common_neighbor_neighborhood: need 1 <= k <= n");
    std::size_t query_degree = 0;
    for (const NodeId u : g.neighbors(query))
        if (u != query) ++query_degree;
    if (query_degree == 0)
        throw std::runtime_error("common_neighbor_neighborhood: query node is isolated");

    // score[w] = |N(query) ∩ N(w)|; two-hop walk from the query
    std::vector<std::size_t> score(static_cast<std::size_t>(n), 0);
    for (const NodeId u : g.neighbors(query)) {
        if (u == query) continue;
        for (const NodeId w : g.neighbors(u))
            if (w != query && w != u) score[static_cast<std::size_t>(w)] += 1;
    }

    std::vector<NodeId> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    order.erase(std::remove(order.begin(), order.end(), query), order.end());
    std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        const std::size_t sa = score[static_cast<std::size_t>(a)];
        const std::size_t sb = score[static_cast<std::size_t>(b)];
        if (sa != sb) return sa > sb;
        return a < b;
    });

    Neighborhood nb;
    nb.query = query;
    nb.k = k;
    nb.core_ids.push_back(query);
    nb.score.push_back(query_degree);  // |N(q) ∩ N(q)| = deg(q)
    for (int i = 0; i < k - 1; ++i) {
        nb.core_ids.push_back(order[static_cast<std::size_t>(i)]);
        nb.score.push_back(score[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])]);
    }
    return nb;
}

CoreSubgraph extract_core(const SparseGraph& g, const std::vector<NodeId>& core_ids) {
    CoreSubgraph out;
    out.graph = g.induced(core_ids);
    out.ids = core_ids;
    return out;
}

CorePeripherySlice extract_cp_slice(const SparseGraph& g, const std::vector<NodeId>& core_ids) {
    CorePeripherySlice slice;
    slice.full_n = g.num_nodes();
    slice.row_map = core_ids;
    slice.matrix.rows = static_cast<Eigen::Index>(core_ids.size());
    slice.matrix.cols = g.num_nodes();
    slice.matrix.offsets.assign(1, 0);
    for (const NodeId id : core_ids) {
        require(id >= 0 && id < g.num_nodes(), "extract_cp_slice: node id out of range");
        const auto row = g.neighbors(id);
        slice.matrix.colidx.insert(slice.matrix.colidx.end(), row.begin(), row.end());
        slice.matrix.offsets.push_back(slice.matrix.colidx.size());
    }
    return slice;
}

double latent_distance(const LatentModel& model, const double* a, const double* b) {
    switch (model.domain_kind) {
        case DomainKind::Circle: {
            const double ta = std::atan2(a[1], a[0]);
            const double tb = std::atan2(b[1], b[0]);
            double d = std::abs(ta - tb);
            if (d > 3.14159265358979323846) d = 2.0 * 3.14159265358979323846 - d;
            return model.scale * d;
        }
        case DomainKind::Sphere2: {
            double dot = 0.0;
            for (int c = 0; c < 3; ++c) dot += a[c] * b[c];
            const double cosang = std::clamp(dot / (model.scale * model.scale), -1.0, 1.0);
            return model.scale * std::acos(cosang);
        }
        default: {
            double d2 = 0.0;
            for (int c = 0; c < model.ambient_dim; ++c) {
                const double d = a[c] - b[c];
                d2 += d * d;
            }
            return std::sqrt(d2);
        }
    }
}

std::vector<NodeId> latent_ball_core(const LatentSample& latents, const VectorXd& center,
                                     double radius) {
    require(center.size() == latents.positions.cols(), "latent_ball_core: center dimension");
    require(radius >= 0.0, "latent_ball_core: radius >= 0");
    std::vector<NodeId> ids;
    double row[3];
    for (Eigen::Index i = 0; i < latents.positions.rows(); ++i) {
        for (Eigen::Index c = 0; c < latents.positions.cols(); ++c) row[c] = latents.positions(i, c);
        if (latent_distance(latents.model, row, center.data()) <= radius)
            ids.push_back(static_cast<NodeId>(i));
    }
    return ids;
}

std::vector<NodeId> latent_ball_core(const LatentSample& latents, NodeId center, double radius) {
    require(center >= 0 && center < latents.positions.rows(), "latent_ball_core: bad center id");
    VectorXd c = latents.positions.row(center).transpose();
    return latent_ball_core(latents, c, radius);
}

}  // namespace manigraph
