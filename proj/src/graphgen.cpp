#include "manigraph/graphgen.hpp"

#include "manigraph/special.hpp"
#include "manigraph/spectral.hpp"

#include <cmath>
#include <sstream>

namespace manigraph {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

double LatentSample::intrinsic_coordinate(NodeId i) const {
    switch (model.domain_kind) {
        case DomainKind::Circle:
            return std::atan2(positions(i, 1), positions(i, 0));
        default:
            return positions(i, 0);
    }
}

void sample_point(const LatentModel& model, Rng& rng, double* out) {
    switch (model.domain_kind) {
        case DomainKind::IntervalSym: {
            if (model.dist == LatentDist::TruncatedGaussian) {
                const double sigma = model.scale, t = model.truncation;
                const double plo = normal_cdf(-t / sigma);
                const double p = plo + rng.uniform() * (1.0 - 2.0 * plo);
                out[0] = std::clamp(sigma * normal_quantile(p), -t, t);
            } else {
                out[0] = rng.uniform(-model.truncation, model.truncation);
            }
            return;
        }
        case DomainKind::IntervalPos:
            out[0] = rng.uniform(0.0, model.scale);
            return;
        case DomainKind::Circle: {
            const double theta = rng.uniform(0.0, kTwoPi);
            out[0] = model.scale * std::cos(theta);
            out[1] = model.scale * std::sin(theta);
            return;
        }
        case DomainKind::Square:
            out[0] = rng.uniform(-model.scale, model.scale);
            out[1] = rng.uniform(-model.scale, model.scale);
            return;
        case DomainKind::Sphere2: {
            double v[3], norm = 0.0;
            do {
                norm = 0.0;
                for (double& c : v) {
                    c = normal_quantile(rng.uniform());
                    norm += c * c;
                }
            } while (norm < 1e-300);
            norm = std::sqrt(norm);
            for (int c = 0; c < 3; ++c) out[c] = model.scale * v[c] / norm;
            return;
        }
    }
}

LatentSample sample_latents(const LatentModel& model, int n, std::uint64_t seed) {
    require(n >= 1, "sample_latents: n >= 1");
    LatentSample sample;
    sample.model = model;
    sample.seed = seed;
    sample.positions.resize(n, model.ambient_dim);
    Rng rng(derive_stream(seed, 0x1a7e27));
    double buf[3];
    for (int i = 0; i < n; ++i) {
        sample_point(model, rng, buf);
        for (int c = 0; c < model.ambient_dim; ++c) sample.positions(i, c) = buf[c];
    }
    return sample;
}

namespace {

[[noreturn]] void bad_probability(double p, NodeId i, NodeId j) {
    std::ostringstream msg;
    msg << "sample_graph: kernel value " << p << " outside [0,1] for pair (" << i << ", " << j
        << ")";
    throw std::runtime_error(msg.str());
}

}  // namespace

SparseGraph sample_graph(const LatentSample& latents, const KernelModel& kernel, bool self_loops,
                         std::uint64_t seed, int threads) {
    const NodeId n = static_cast<NodeId>(latents.positions.rows());
    const int dim = static_cast<int>(latents.positions.cols());
    std::vector<std::vector<NodeId>> upper(static_cast<std::size_t>(n));

    parallel_for_blocks(static_cast<std::size_t>(n), threads, [&](std::size_t lo, std::size_t hi) {
        double xi[3], xj[3];
        for (std::size_t i = lo; i < hi; ++i) {
            Rng row_rng(derive_stream(seed, i));
            for (int c = 0; c < dim; ++c) xi[c] = latents.positions(static_cast<Eigen::Index>(i), c);
            auto& row = upper[i];
            const NodeId start = self_loops ? static_cast<NodeId>(i) : static_cast<NodeId>(i) + 1;
            for (NodeId j = start; j < n; ++j) {
                for (int c = 0; c < dim; ++c) xj[c] = latents.positions(j, c);
                const double p = kernel.evaluate(xi, xj, dim);
                if (!(p >= 0.0 && p <= 1.0)) bad_probability(p, static_cast<NodeId>(i), j);
                if (row_rng.uniform() < p) row.push_back(j);
            }
        }
    });
    return SparseGraph::from_upper_rows(upper, self_loops);
}

SparseGraph sample_graph_from_embedding(const MatrixXd& left, const MatrixXd& right,
                                        Pairing pairing, std::uint64_t seed, int threads) {
    require(left.cols() == right.cols(), "sample_graph_from_embedding: dimension mismatch");
    require(left.rows() == right.rows(), "sample_graph_from_embedding: row-count mismatch");
    require(left.allFinite() && right.allFinite(), "sample_graph_from_embedding: non-finite rows");
    const NodeId n = static_cast<NodeId>(left.rows());
    const Eigen::Index d = left.cols();
    std::vector<std::vector<NodeId>> upper(static_cast<std::size_t>(n));
    const MatrixXd& rhs = (pairing == Pairing::Symmetric) ? left : right;

    parallel_for_blocks(static_cast<std::size_t>(n), threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            Rng row_rng(derive_stream(seed, i));
            auto& row = upper[i];
            for (NodeId j = static_cast<NodeId>(i) + 1; j < n; ++j) {
                double dot = 0.0;
                for (Eigen::Index c = 0; c < d; ++c)
                    dot += left(static_cast<Eigen::Index>(i), c) * rhs(j, c);
                const double p = std::clamp(dot, 0.0, 1.0);
                if (row_rng.uniform() < p) row.push_back(j);
            }
        }
    });
    return SparseGraph::from_upper_rows(upper, false);
}

SparseGraph sample_graph_from_embedding(const MatrixXd& rows, std::uint64_t seed, int threads) {
    return sample_graph_from_embedding(rows, rows, Pairing::Symmetric, seed, threads);
}

SparseGraph sample_graph_from_embedding(const Embedding& emb, std::uint64_t seed, int threads) {
    if (emb.values.size() == 0 || (emb.values.array() >= 0.0).all())
        return sample_graph_from_embedding(emb.rows, seed, threads);
    MatrixXd right = emb.rows;
    for (Eigen::Index c = 0; c < right.cols() && c < emb.values.size(); ++c)
        if (emb.values(c) < 0.0) right.col(c) = -right.col(c);
    return sample_graph_from_embedding(emb.rows, right, Pairing::LeftRight, seed, threads);
}

}  // namespace manigraph
