#pragma once

#include "manigraph/common.hpp"
#include "manigraph/kernels.hpp"
#include "manigraph/rng.hpp"
#include "manigraph/sparse_graph.hpp"

namespace manigraph {

// Latent positions X_1..X_n drawn i.i.d. from G_n.
struct LatentSample {
    MatrixXd positions;  // n x ambient_dim
    std::uint64_t seed = 0;
    LatentModel model;

    // intrinsic coordinate of row i (x for intervals, angle for the circle)
    double intrinsic_coordinate(NodeId i) const;
};

// One draw from G_n into `out` (length model.ambient_dim).
void sample_point(const LatentModel& model, Rng& rng, double* out);

LatentSample sample_latents(const LatentModel& model, int n, std::uint64_t seed);

// Bernoulli graph on the sampled positions: edge i~j with probability
// f(X_i, X_j). Streams are derived per row, so the result is bit-identical
// for any thread count. A kernel value outside [0,1] is a model bug and
// raises with the offending pair.
SparseGraph sample_graph(const LatentSample& latents, const KernelModel& kernel,
                         bool self_loops, std::uint64_t seed, int threads = 0);

enum class Pairing { Symmetric, LeftRight };

// Resamples a graph from embedding rows: p_ij = clamp(<x_i, y_j>, 0, 1).
// Symmetric pairing uses left twice; LeftRight takes the upper triangle of
// the (generally asymmetric) left * right^T. Self-loops are never drawn.
SparseGraph sample_graph_from_embedding(const MatrixXd& left, const MatrixXd& right,
                                        Pairing pairing, std::uint64_t seed, int threads = 0);
SparseGraph sample_graph_from_embedding(const MatrixXd& rows, std::uint64_t seed,
                                        int threads = 0);

// Resample honoring the embedding's eigenvalue signature:
// p_ij = clamp(sum_k sign(lambda_k) x_ik x_jk, 0, 1). For PSD spectra this
// coincides with the plain inner product; with negative eigenvalues present
// it reproduces the best rank-d approximation the embedding came from.
struct Embedding;  // defined in spectral.hpp
SparseGraph sample_graph_from_embedding(const Embedding& emb, std::uint64_t seed,
                                        int threads = 0);

}  // namespace manigraph
