#include "manigraph/graph_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace manigraph {

void save_edge_list(const std::string& path, const SparseGraph& g,
                    const std::vector<std::pair<std::string, std::string>>& header) {
    std::ofstream out(path);
    if (!out) fail("save_edge_list: cannot open " + path);
    for (const auto& [k, v] : header) out << "# " << k << " " << v << "\n";
    out << "# nodes " << g.num_nodes() << " edges " << g.edge_count() << "\n";
    for (NodeId u = 0; u < g.num_nodes(); ++u)
        for (const NodeId v : g.neighbors(u))
            if (v >= u) out << u << " " << v << "\n";
}

SparseGraph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("load_edge_list: cannot open " + path);
    std::vector<std::pair<NodeId, NodeId>> edges;
    NodeId max_id = -1;
    bool has_loop = false;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        long long a, b;
        if (!(ss >> a >> b))
            fail("load_edge_list: malformed line " + std::to_string(lineno) + " in " + path);
        edges.emplace_back(static_cast<NodeId>(a), static_cast<NodeId>(b));
        max_id = std::max({max_id, static_cast<NodeId>(a), static_cast<NodeId>(b)});
        if (a == b) has_loop = true;
    }
    return SparseGraph::from_edges(max_id + 1, edges, has_loop);
}

IngestResult ingest_edge_list(const std::string& path, EdgeListFormat format) {
    std::ifstream in(path);
    if (!in) fail("ingest_edge_list: cannot open " + path);
    std::vector<std::pair<long long, long long>> raw;
    std::string line;
    std::size_t lineno = 0;
    IngestResult res;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#' || line[0] == '%') continue;
        long long a = 0, b = 0;
        bool ok = false;
        if (format == EdgeListFormat::Csv) {
            const auto comma = line.find(',');
            if (comma != std::string::npos) {
                try {
                    a = std::stoll(line.substr(0, comma));
                    b = std::stoll(line.substr(comma + 1));
                    ok = true;
                } catch (const std::exception&) {
                    ok = false;
                }
            }
        } else {
            std::istringstream ss(line);
            ok = static_cast<bool>(ss >> a >> b);
        }
        if (!ok || a < 0 || b < 0)
            fail("ingest_edge_list: malformed line " + std::to_string(lineno) + " in " + path);
        ++res.lines_parsed;
        if (a == b) {
            ++res.self_loops_dropped;
            continue;
        }
        raw.emplace_back(std::min(a, b), std::max(a, b));
    }
    if (res.lines_parsed == 0) fail("ingest_edge_list: no edges in " + path);

    // reindex original ids to 0..n-1 (sorted order)
    std::map<long long, NodeId> index;
    for (const auto& [a, b] : raw) {
        index.emplace(a, 0);
        index.emplace(b, 0);
    }
    res.id_map.reserve(index.size());
    for (auto& [orig, newid] : index) {
        newid = static_cast<NodeId>(res.id_map.size());
        res.id_map.push_back(static_cast<NodeId>(orig));
    }

    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(raw.size());
    for (const auto& [a, b] : raw) edges.emplace_back(index.at(a), index.at(b));
    std::sort(edges.begin(), edges.end());
    std::size_t unique_count = 0;
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (i == 0 || edges[i] != edges[i - 1]) ++unique_count;
    res.duplicate_edges = edges.size() - unique_count;
    res.graph = SparseGraph::from_edges(static_cast<NodeId>(res.id_map.size()), edges, false);
    return res;
}

void save_slice(const std::string& path, const SparseRect& slice,
                const std::vector<std::pair<std::string, std::string>>& header) {
    std::ofstream out(path);
    if (!out) fail("save_slice: cannot open " + path);
    for (const auto& [k, v] : header) out << "# " << k << " " << v << "\n";
    out << "# rows " << slice.rows << " cols " << slice.cols << " nnz " << slice.colidx.size()
        << "\n";
    for (Eigen::Index i = 0; i < slice.rows; ++i)
        for (std::size_t k = slice.offsets[static_cast<std::size_t>(i)];
             k < slice.offsets[static_cast<std::size_t>(i) + 1]; ++k)
            out << i << " " << slice.colidx[k] << "\n";
}

}  // namespace manigraph
