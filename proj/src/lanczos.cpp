#include "manigraph/lanczos.hpp"

#include "manigraph/rng.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <sstream>

namespace manigraph {

LinOp dense_op(MatrixXd m) {
    auto mat = std::make_shared<MatrixXd>(std::move(m));
    LinOp op;
    op.rows = mat->rows();
    op.cols = mat->cols();
    op.apply = [mat](const double* x, double* y) {
        Eigen::Map<const VectorXd> xv(x, mat->cols());
        Eigen::Map<VectorXd> yv(y, mat->rows());
        yv.noalias() = (*mat) * xv;
    };
    op.apply_adjoint = [mat](const double* x, double* y) {
        Eigen::Map<const VectorXd> xv(x, mat->rows());
        Eigen::Map<VectorXd> yv(y, mat->cols());
        yv.noalias() = mat->transpose() * xv;
    };
    return op;
}

LinOp graph_op(const SparseGraph& g, int threads) {
    // caller keeps the graph alive for the lifetime of the operator
    const SparseGraph* gp = &g;
    LinOp op;
    op.rows = g.num_nodes();
    op.cols = g.num_nodes();
    op.apply = [gp, threads](const double* x, double* y) { gp->multiply(x, y, threads); };
    op.apply_adjoint = op.apply;
    return op;
}

namespace {

struct RitzSet {
    VectorXd theta;      // selected Ritz values, |theta| descending
    MatrixXd y;          // k x sel coefficient vectors
    VectorXd residuals;  // |A (V y) - theta (V y)|
};

// Rayleigh-Ritz on the projected matrix, with explicit residuals for the
// `sel` largest-magnitude pairs.
RitzSet rayleigh_ritz(const MatrixXd& v, const MatrixXd& w, const MatrixXd& h, int k, int sel) {
    MatrixXd hk = 0.5 * (h.topLeftCorner(k, k) + h.topLeftCorner(k, k).transpose());
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(hk);
    if (es.info() != Eigen::Success) fail("lanczos: projected eigensolve failed");
    std::vector<int> order(static_cast<std::size_t>(k));
    std::iota(order.begin(), order.end(), 0);
    const VectorXd& all = es.eigenvalues();
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (std::abs(all(a)) != std::abs(all(b))) return std::abs(all(a)) > std::abs(all(b));
        return all(a) > all(b);
    });
    RitzSet out;
    out.theta.resize(sel);
    out.y.resize(k, sel);
    for (int i = 0; i < sel; ++i) {
        out.theta(i) = all(order[static_cast<std::size_t>(i)]);
        out.y.col(i) = es.eigenvectors().col(order[static_cast<std::size_t>(i)]);
    }
    // residual of pair i: || W y_i - theta_i V y_i ||
    MatrixXd wy = w.leftCols(k) * out.y;
    MatrixXd vy = v.leftCols(k) * out.y;
    out.residuals.resize(sel);
    for (int i = 0; i < sel; ++i) out.residuals(i) = (wy.col(i) - out.theta(i) * vy.col(i)).norm();
    return out;
}

}  // namespace

EigenPairs lanczos_largest(const LinOp& op, int nev, const LanczosOptions& opts) {
    const Eigen::Index n = op.rows;
    require(op.cols == n, "lanczos_largest: operator must be square");
    require(nev >= 1 && nev <= n, "lanczos_largest: need 1 <= nev <= n");

    const int max_basis =
        opts.max_basis > 0 ? std::min<Eigen::Index>(opts.max_basis, n)
                           : std::min<Eigen::Index>(n, std::max(2 * nev + 30, 60));
    require(max_basis >= nev, "lanczos_largest: basis smaller than nev");

    MatrixXd v(n, max_basis), w(n, max_basis), h = MatrixXd::Zero(max_basis, max_basis);
    Rng rng(opts.seed);
    int k = 0, restarts = 0, matvecs = 0;
    VectorXd pending(n);
    bool have_pending = false;
    double wnorm_max = 0.0;
    const int stride = std::max(2, std::min(10, nev));

    VectorXd cand(n), av(n);
    for (;;) {
        // next basis vector: Krylov continuation if healthy, else random
        bool got = false;
        if (have_pending && pending.norm() > 1e-13 * std::max(1.0, wnorm_max)) {
            cand = pending;
            got = true;
        }
        if (!got) {
            for (int attempt = 0; attempt < 8 && !got; ++attempt) {
                for (Eigen::Index i = 0; i < n; ++i) cand(i) = rng.uniform(-1.0, 1.0);
                if (k > 0) {
                    cand -= v.leftCols(k) * (v.leftCols(k).transpose() * cand);
                    cand -= v.leftCols(k) * (v.leftCols(k).transpose() * cand);
                }
                if (cand.norm() > 1e-8) got = true;
            }
            if (!got) fail("lanczos_largest: could not extend the basis");
        }
        if (k > 0) {
            cand -= v.leftCols(k) * (v.leftCols(k).transpose() * cand);
            const double nrm = cand.norm();
            if (nrm <= 1e-13 * std::max(1.0, wnorm_max)) {
                have_pending = false;  // degenerate direction, draw random next round
                continue;
            }
            cand /= nrm;
        } else {
            cand.normalize();
        }
        v.col(k) = cand;
        op.apply(cand.data(), av.data());
        ++matvecs;
        w.col(k) = av;
        wnorm_max = std::max(wnorm_max, av.norm());
        h.col(k).head(k + 1) = v.leftCols(k + 1).transpose() * av;
        h.row(k).head(k + 1) = h.col(k).head(k + 1).transpose();
        ++k;

        // two-pass orthogonalization of the Krylov continuation
        pending = av - v.leftCols(k) * h.col(k - 1).head(k);
        pending -= v.leftCols(k) * (v.leftCols(k).transpose() * pending);
        have_pending = true;

        const bool basis_full = (k == max_basis || k == n);
        if (k >= nev && ((k - nev) % stride == 0 || basis_full)) {
            RitzSet ritz = rayleigh_ritz(v, w, h, k, nev);
            const double scale = std::max(std::abs(ritz.theta(0)), 1e-300);
            const bool converged = (ritz.residuals.array() <= opts.tol * scale).all();
            if (converged || k == n) {
                EigenPairs out;
                out.values = ritz.theta;
                out.vectors = v.leftCols(k) * ritz.y;
                out.residuals = ritz.residuals;
                out.matvecs = matvecs;
                return out;
            }
            if (k == max_basis) {
                if (++restarts > opts.max_restarts) {
                    std::ostringstream msg;
                    msg << "lanczos_largest: no convergence after " << opts.max_restarts
                        << " restarts; residual norms:";
                    for (int i = 0; i < ritz.residuals.size(); ++i) msg << ' ' << ritz.residuals(i);
                    fail(msg.str());
                }
                // thick restart: keep the best Ritz vectors, stay coupled
                // through the pending Krylov residual (orthogonal to all of V)
                const int keep = std::min(k - 1, nev + std::min(nev, 15));
                RitzSet full = rayleigh_ritz(v, w, h, k, keep);
                MatrixXd vnew = v.leftCols(k) * full.y;
                MatrixXd wnew = w.leftCols(k) * full.y;
                v.leftCols(keep) = vnew;
                w.leftCols(keep) = wnew;
                h.setZero();
                h.topLeftCorner(keep, keep) = full.theta.asDiagonal();
                k = keep;
            }
        }
    }
}

SingularTriplets svd_largest(const LinOp& op, int k, const LanczosOptions& opts) {
    const Eigen::Index rows = op.rows, cols = op.cols;
    require(k >= 1 && k <= std::min(rows, cols), "svd_largest: need 1 <= k <= min(dims)");
    const bool tall = rows >= cols;
    const Eigen::Index small_dim = tall ? cols : rows;
    require(static_cast<bool>(op.apply_adjoint), "svd_largest: operator needs apply_adjoint");

    // Gram operator on the smaller side
    LinOp gram;
    gram.rows = small_dim;
    gram.cols = small_dim;
    VectorXd tmp(tall ? rows : cols);
    auto tmp_ptr = std::make_shared<VectorXd>(std::move(tmp));
    if (tall) {
        gram.apply = [&op, tmp_ptr](const double* x, double* y) {
            op.apply(x, tmp_ptr->data());
            op.apply_adjoint(tmp_ptr->data(), y);
        };
    } else {
        gram.apply = [&op, tmp_ptr](const double* x, double* y) {
            op.apply_adjoint(x, tmp_ptr->data());
            op.apply(tmp_ptr->data(), y);
        };
    }
    gram.apply_adjoint = gram.apply;

    LanczosOptions gopts = opts;
    gopts.tol = std::min(opts.tol, 1e-12);  // squared spectrum needs the extra headroom
    EigenPairs pairs = lanczos_largest(gram, k, gopts);

    SingularTriplets out;
    out.values.resize(k);
    out.left.resize(rows, k);
    out.right.resize(cols, k);
    VectorXd other(tall ? rows : cols);
    for (int i = 0; i < k; ++i) {
        const VectorXd small_vec = pairs.vectors.col(i);
        if (tall) {
            op.apply(small_vec.data(), other.data());
            const double s = other.norm();
            out.values(i) = s;
            out.right.col(i) = small_vec;
            out.left.col(i) = s > 1e-300 ? VectorXd(other / s) : VectorXd::Zero(rows);
        } else {
            op.apply_adjoint(small_vec.data(), other.data());
            const double s = other.norm();
            out.values(i) = s;
            out.left.col(i) = small_vec;
            out.right.col(i) = s > 1e-300 ? VectorXd(other / s) : VectorXd::Zero(cols);
        }
    }
    // Gram eigenvalues arrive |.|-sorted; singular values recomputed from the
    // matvec can swap neighbours at roundoff scale, so re-sort.
    std::vector<int> order(static_cast<std::size_t>(k));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return out.values(a) > out.values(b); });
    SingularTriplets sorted;
    sorted.values.resize(k);
    sorted.left.resize(rows, k);
    sorted.right.resize(cols, k);
    for (int i = 0; i < k; ++i) {
        sorted.values(i) = out.values(order[static_cast<std::size_t>(i)]);
        sorted.left.col(i) = out.left.col(order[static_cast<std::size_t>(i)]);
        sorted.right.col(i) = out.right.col(order[static_cast<std::size_t>(i)]);
    }
    return sorted;
}

}  // namespace manigraph
