#pragma once

#include "manigraph/common.hpp"
#include "manigraph/lanczos.hpp"
#include "manigraph/sparse_graph.hpp"

#include <string>
#include <vector>

namespace manigraph {

enum class EmbeddingKind { ASE, LSE, SliceLeft, SliceRight };

std::string embedding_kind_name(EmbeddingKind k);

// Node positions from a spectral decomposition. `values` keeps the signed
// eigenvalues (or singular values), sorted by magnitude, so the spectrum
// signature survives into downstream resampling.
struct Embedding {
    MatrixXd rows;                 // n x d
    VectorXd values;               // d leading values, |.| descending
    EmbeddingKind kind;
    std::uint64_t source_hash = 0;
    std::uint64_t solver_seed = 0;
    std::vector<NodeId> node_ids;  // new label -> original id; empty = identity
};

struct Scree {
    VectorXd values;  // non-negative, descending
};

// Rectangular sparse matrix in CSR form (core-periphery slices).
struct SparseRect {
    Eigen::Index rows = 0;
    Eigen::Index cols = 0;
    std::vector<std::size_t> offsets{0};
    std::vector<NodeId> colidx;

    LinOp op(int threads = 0) const;
    MatrixXd dense() const;
};

// Adjacency spectral embedding: rows of (|l1|^{1/2} u1, ..., |ld|^{1/2} ud),
// eigenvalues of largest magnitude first.
Embedding ase(const SparseGraph& g, int d, const LanczosOptions& opts = {});
Embedding ase_of(const LinOp& op, int d, std::uint64_t source_hash = 0,
                 const LanczosOptions& opts = {});

// Laplacian spectral embedding: ASE of D^{-1/2} A D^{-1/2}. Degree-zero
// nodes are dropped (with a warning) and recorded in node_ids.
Embedding lse(const SparseGraph& g, int d, const LanczosOptions& opts = {});

// Rectangular embedding: left = U_d S_d^{1/2}, right = V_d S_d^{1/2}.
std::pair<Embedding, Embedding> slice_svd(const SparseRect& slice, int d,
                                          const LanczosOptions& opts = {});
std::pair<Embedding, Embedding> slice_svd(const MatrixXd& slice, int d,
                                          const LanczosOptions& opts = {});

// Top-m singular values.
Scree scree(const SparseGraph& g, int m, const LanczosOptions& opts = {});
Scree scree(const SparseRect& slice, int m, const LanczosOptions& opts = {});
Scree scree(const MatrixXd& m_dense, int m, const LanczosOptions& opts = {});

// Orthogonal Procrustes: the W minimizing |source W - target|_F over
// orthogonal matrices (reflections allowed).
struct ProcrustesResult {
    MatrixXd aligned;
    MatrixXd rotation;
    double residual = 0.0;
};
ProcrustesResult procrustes_align(const MatrixXd& source, const MatrixXd& target);
ProcrustesResult procrustes_align(const Embedding& source, const MatrixXd& target);

// CSV persistence (node id + coordinates) with a sidecar .meta file.
void save_embedding(const std::string& csv_path, const Embedding& emb);
Embedding load_embedding(const std::string& csv_path);

}  // namespace manigraph
