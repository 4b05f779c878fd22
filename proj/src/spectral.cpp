#include "manigraph/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace manigraph {

std::string embedding_kind_name(EmbeddingKind k) {
    switch (k) {
        case EmbeddingKind::ASE: return "ase";
        case EmbeddingKind::LSE: return "lse";
        case EmbeddingKind::SliceLeft: return "slice_left";
        case EmbeddingKind::SliceRight: return "slice_right";
    }
    return "?";
}

LinOp SparseRect::op(int threads) const {
    const SparseRect* self = this;
    LinOp o;
    o.rows = rows;
    o.cols = cols;
    o.apply = [self, threads](const double* x, double* y) {
        parallel_for_blocks(static_cast<std::size_t>(self->rows), threads,
                            [&](std::size_t lo, std::size_t hi) {
                                for (std::size_t i = lo; i < hi; ++i) {
                                    double acc = 0.0;
                                    for (std::size_t k = self->offsets[i]; k < self->offsets[i + 1]; ++k)
                                        acc += x[static_cast<std::size_t>(self->colidx[k])];
                                    y[i] = acc;
                                }
                            });
    };
    o.apply_adjoint = [self](const double* x, double* y) {
        // scatter form; serial keeps it deterministic
        std::fill(y, y + self->cols, 0.0);
        for (std::size_t i = 0; i < static_cast<std::size_t>(self->rows); ++i)
            for (std::size_t k = self->offsets[i]; k < self->offsets[i + 1]; ++k)
                y[static_cast<std::size_t>(self->colidx[k])] += x[i];
    };
    return o;
}

MatrixXd SparseRect::dense() const {
    MatrixXd m = MatrixXd::Zero(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (std::size_t k = offsets[static_cast<std::size_t>(i)];
             k < offsets[static_cast<std::size_t>(i) + 1]; ++k)
            m(i, colidx[k]) = 1.0;
    return m;
}

namespace {

// reproducible output: each vector's largest-magnitude entry is made positive
void canonicalize_sign(MatrixXd& vectors) {
    for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
        Eigen::Index at = 0;
        vectors.col(c).cwiseAbs().maxCoeff(&at);
        if (vectors(at, c) < 0.0) vectors.col(c) = -vectors.col(c);
    }
}

Embedding embedding_from_pairs(EigenPairs pairs, EmbeddingKind kind, std::uint64_t hash,
                               std::uint64_t solver_seed) {
    canonicalize_sign(pairs.vectors);
    Embedding emb;
    emb.kind = kind;
    emb.source_hash = hash;
    emb.solver_seed = solver_seed;
    emb.values = pairs.values;
    emb.rows = pairs.vectors;
    for (Eigen::Index c = 0; c < emb.rows.cols(); ++c)
        emb.rows.col(c) *= std::sqrt(std::abs(pairs.values(c)));
    return emb;
}

}  // namespace

Embedding ase_of(const LinOp& op, int d, std::uint64_t source_hash, const LanczosOptions& opts) {
    require(d >= 1 && d <= op.rows, "ase: need 1 <= d <= n");
    EigenPairs pairs = lanczos_largest(op, d, opts);
    return embedding_from_pairs(std::move(pairs), EmbeddingKind::ASE, source_hash, opts.seed);
}

Embedding ase(const SparseGraph& g, int d, const LanczosOptions& opts) {
    return ase_of(graph_op(g, opts.threads), d, g.fingerprint(), opts);
}

Embedding lse(const SparseGraph& g, int d, const LanczosOptions& opts) {
    const NodeId n = g.num_nodes();
    std::vector<NodeId> kept;
    kept.reserve(static_cast<std::size_t>(n));
    for (NodeId i = 0; i < n; ++i)
        if (g.degree(i) > 0) kept.push_back(i);
    if (kept.empty()) fail("lse: graph has no edges (all nodes isolated)");
    SparseGraph sub;
    const SparseGraph* work = &g;
    if (static_cast<NodeId>(kept.size()) < n) {
        std::cerr << "lse: dropping " << (n - static_cast<NodeId>(kept.size()))
                  << " degree-zero node(s)\n";
        sub = g.induced(kept);
        work = &sub;
    }
    require(d >= 1 && d <= work->num_nodes(), "lse: need 1 <= d <= n (after dropping)");

    const NodeId m = work->num_nodes();
    VectorXd dinv_sqrt(m);
    for (NodeId i = 0; i < m; ++i) dinv_sqrt(i) = 1.0 / std::sqrt(double(work->degree(i)));

    LinOp lop;
    lop.rows = m;
    lop.cols = m;
    VectorXd scaled(m), prod(m);
    const int threads = opts.threads;
    lop.apply = [&](const double* x, double* y) {
        for (NodeId i = 0; i < m; ++i) scaled(i) = x[static_cast<std::size_t>(i)] * dinv_sqrt(i);
        work->multiply(scaled.data(), prod.data(), threads);
        for (NodeId i = 0; i < m; ++i) y[static_cast<std::size_t>(i)] = prod(i) * dinv_sqrt(i);
    };
    lop.apply_adjoint = lop.apply;

    Embedding emb = ase_of(lop, d, g.fingerprint(), opts);
    emb.kind = EmbeddingKind::LSE;
    if (static_cast<NodeId>(kept.size()) < n) emb.node_ids = kept;
    return emb;
}

namespace {

std::pair<Embedding, Embedding> slice_svd_op(const LinOp& op, int d, std::uint64_t hash,
                                             const LanczosOptions& opts) {
    require(d >= 1 && d <= std::min(op.rows, op.cols), "slice_svd: need 1 <= d <= min(dims)");
    SingularTriplets t = svd_largest(op, d, opts);
    // joint sign fix keeps left * right^T invariant
    for (int c = 0; c < d; ++c) {
        Eigen::Index at = 0;
        t.left.col(c).cwiseAbs().maxCoeff(&at);
        if (t.left(at, c) < 0.0) {
            t.left.col(c) = -t.left.col(c);
            t.right.col(c) = -t.right.col(c);
        }
    }
    Embedding left, right;
    left.kind = EmbeddingKind::SliceLeft;
    right.kind = EmbeddingKind::SliceRight;
    left.source_hash = right.source_hash = hash;
    left.solver_seed = right.solver_seed = opts.seed;
    left.values = right.values = t.values;
    left.rows = t.left;
    right.rows = t.right;
    for (int c = 0; c < d; ++c) {
        const double s = std::sqrt(std::max(0.0, t.values(c)));
        left.rows.col(c) *= s;
        right.rows.col(c) *= s;
    }
    return {std::move(left), std::move(right)};
}

}  // namespace

std::pair<Embedding, Embedding> slice_svd(const SparseRect& slice, int d,
                                          const LanczosOptions& opts) {
    std::uint64_t h = fnv1a(&slice.rows, sizeof(slice.rows));
    h = fnv1a(&slice.cols, sizeof(slice.cols), h);
    h = fnv1a_span(slice.colidx, h);
    return slice_svd_op(slice.op(opts.threads), d, h, opts);
}

std::pair<Embedding, Embedding> slice_svd(const MatrixXd& slice, int d,
                                          const LanczosOptions& opts) {
    return slice_svd_op(dense_op(slice), d, 0, opts);
}

namespace {

Scree scree_op(const LinOp& op, int m, const LanczosOptions& opts) {
    require(m >= 1 && m <= std::min(op.rows, op.cols), "scree: need 1 <= m <= min(dims)");
    SingularTriplets t = svd_largest(op, m, opts);
    Scree s;
    s.values = t.values.cwiseMax(0.0);
    return s;
}

}  // namespace

Scree scree(const SparseGraph& g, int m, const LanczosOptions& opts) {
    return scree_op(graph_op(g, opts.threads), m, opts);
}

Scree scree(const SparseRect& slice, int m, const LanczosOptions& opts) {
    return scree_op(slice.op(opts.threads), m, opts);
}

Scree scree(const MatrixXd& mat, int m, const LanczosOptions& opts) {
    return scree_op(dense_op(mat), m, opts);
}

ProcrustesResult procrustes_align(const MatrixXd& source, const MatrixXd& target) {
    require(source.rows() == target.rows() && source.cols() == target.cols(),
            "procrustes_align: shape mismatch");
    const MatrixXd cross = source.transpose() * target;
    Eigen::JacobiSVD<MatrixXd> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
    ProcrustesResult out;
    out.rotation = svd.matrixU() * svd.matrixV().transpose();
    out.aligned = source * out.rotation;
    out.residual = (out.aligned - target).norm();
    return out;
}

ProcrustesResult procrustes_align(const Embedding& source, const MatrixXd& target) {
    return procrustes_align(source.rows, target);
}

void save_embedding(const std::string& csv_path, const Embedding& emb) {
    std::ofstream out(csv_path);
    if (!out) fail("save_embedding: cannot open " + csv_path);
    const Eigen::Index n = emb.rows.rows(), d = emb.rows.cols();
    out << "node";
    for (Eigen::Index c = 0; c < d; ++c) out << ",x" << (c + 1);
    out << "\n";
    char buf[40];
    for (Eigen::Index i = 0; i < n; ++i) {
        const NodeId id = emb.node_ids.empty() ? static_cast<NodeId>(i)
                                               : emb.node_ids[static_cast<std::size_t>(i)];
        out << id;
        for (Eigen::Index c = 0; c < d; ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", emb.rows(i, c));
            out << ',' << buf;
        }
        out << "\n";
    }
    std::ofstream meta(csv_path + ".meta");
    if (!meta) fail("save_embedding: cannot open " + csv_path + ".meta");
    meta << "kind = " << embedding_kind_name(emb.kind) << "\n";
    meta << "d = " << d << "\n";
    meta << "solver_seed = " << emb.solver_seed << "\n";
    meta << "source_hash = " << emb.source_hash << "\n";
    meta << "values =";
    for (Eigen::Index c = 0; c < emb.values.size(); ++c) {
        std::snprintf(buf, sizeof buf, "%.17g", emb.values(c));
        meta << ' ' << buf;
    }
    meta << "\n";
}

Embedding load_embedding(const std::string& csv_path) {
    std::ifstream in(csv_path);
    if (!in) fail("load_embedding: cannot open " + csv_path);
    std::string line;
    if (!std::getline(in, line)) fail("load_embedding: empty file " + csv_path);
    std::vector<std::vector<double>> rows;
    std::vector<NodeId> ids;
    bool identity_ids = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> vals;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) vals.push_back(std::stod(field));
        if (vals.size() < 2) fail("load_embedding: malformed row in " + csv_path);
        const NodeId id = static_cast<NodeId>(vals[0]);
        if (id != static_cast<NodeId>(rows.size())) identity_ids = false;
        ids.push_back(id);
        rows.emplace_back(vals.begin() + 1, vals.end());
    }
    if (rows.empty()) fail("load_embedding: no data rows in " + csv_path);
    Embedding emb;
    emb.kind = EmbeddingKind::ASE;
    emb.rows.resize(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        require(rows[i].size() == rows.front().size(), "load_embedding: ragged rows");
        for (std::size_t c = 0; c < rows[i].size(); ++c)
            emb.rows(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = rows[i][c];
    }
    if (!identity_ids) emb.node_ids = ids;

    std::ifstream meta(csv_path + ".meta");
    if (meta) {
        std::string key, eq;
        while (meta >> key >> eq) {
            if (key == "kind") {
                std::string v;
                meta >> v;
                if (v == "lse") emb.kind = EmbeddingKind::LSE;
                else if (v == "slice_left") emb.kind = EmbeddingKind::SliceLeft;
                else if (v == "slice_right") emb.kind = EmbeddingKind::SliceRight;
            } else if (key == "solver_seed") {
                meta >> emb.solver_seed;
            } else if (key == "source_hash") {
                meta >> emb.source_hash;
            } else if (key == "values") {
                std::vector<double> vs;
                double v;
                while (meta >> v) vs.push_back(v);
                emb.values.resize(static_cast<Eigen::Index>(vs.size()));
                for (std::size_t i = 0; i < vs.size(); ++i)
                    emb.values(static_cast<Eigen::Index>(i)) = vs[i];
            } else {
                std::string rest;
                std::getline(meta, rest);
            }
        }
    }
    return emb;
}

}  // namespace manigraph
