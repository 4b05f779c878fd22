#pragma once

#include "manigraph/common.hpp"
#include "manigraph/sparse_graph.hpp"

namespace manigraph {

// Matrix-free linear operator. `apply_adjoint` is only set for rectangular
// operators (it equals `apply` for symmetric ones).
struct LinOp {
    Eigen::Index rows = 0;
    Eigen::Index cols = 0;
    std::function<void(const double* x, double* y)> apply;
    std::function<void(const double* x, double* y)> apply_adjoint;
};

LinOp dense_op(MatrixXd m);
LinOp graph_op(const SparseGraph& g, int threads = 0);

struct LanczosOptions {
    double tol = 1e-10;      // relative residual |A v - theta v| <= tol * |theta_max|
    int max_restarts = 1000;
    int max_basis = 0;       // 0: choose from nev
    std::uint64_t seed = 0x5eeded;
    int threads = 0;
};

struct EigenPairs {
    VectorXd values;     // nev eigenvalues, sorted by |value| descending
    MatrixXd vectors;    // n x nev, orthonormal
    VectorXd residuals;  // |A v - theta v| per pair
    int matvecs = 0;
};

// Largest-magnitude eigenpairs of a symmetric operator, via Krylov bases
// with full reorthogonalization, Rayleigh-Ritz extraction, deflation
// restarts on breakdown and thick restarts when the basis fills up.
// Throws on non-convergence, reporting the residual norms.
EigenPairs lanczos_largest(const LinOp& op, int nev, const LanczosOptions& opts = {});

// Top singular triplets of a (possibly rectangular) operator, computed from
// the Gram operator on the smaller side.
struct SingularTriplets {
    VectorXd values;  // descending, non-negative
    MatrixXd left;    // rows x k
    MatrixXd right;   // cols x k
};
SingularTriplets svd_largest(const LinOp& op, int k, const LanczosOptions& opts = {});

}  // namespace manigraph
