#pragma once

#include "manigraph/sparse_graph.hpp"
#include "manigraph/spectral.hpp"

#include <string>
#include <vector>

namespace manigraph {

// SNAP-style edge list: `# key value` comment headers, then one whitespace-
// separated pair per line, upper triangle, sorted. Loader accepts the same.
void save_edge_list(const std::string& path, const SparseGraph& g,
                    const std::vector<std::pair<std::string, std::string>>& header = {});
SparseGraph load_edge_list(const std::string& path);

enum class EdgeListFormat { SnapTsv, Csv };

struct IngestResult {
    SparseGraph graph;
    std::vector<NodeId> id_map;        // new label -> original id
    std::size_t self_loops_dropped = 0;
    std::size_t duplicate_edges = 0;
    std::size_t lines_parsed = 0;
};

// Symmetrizes, deduplicates and reindexes an external edge list. Malformed
// lines raise with the line number; an empty file is an error.
IngestResult ingest_edge_list(const std::string& path, EdgeListFormat format);

// Coordinate-list text format for rectangular slices: "row col" per line.
void save_slice(const std::string& path, const SparseRect& slice,
                const std::vector<std::pair<std::string, std::string>>& header = {});

}  // namespace manigraph
