#include "manigraph/kernels.hpp"

#include "manigraph/expr.hpp"
#include "manigraph/special.hpp"

#include <cmath>
#include <memory>

namespace manigraph {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kGoldenAngle = 2.39996322972865332;  // pi (3 - sqrt 5)
}  // namespace

bool LatentModel::contains(const double* x) const {
    const double tol = 1e-9 * std::max(1.0, scale);
    switch (domain_kind) {
        case DomainKind::IntervalSym:
            return std::abs(x[0]) <= truncation + tol;
        case DomainKind::IntervalPos:
            return x[0] >= -tol && x[0] <= scale + tol;
        case DomainKind::Circle:
            return std::abs(std::hypot(x[0], x[1]) - scale) <= 1e-9 * scale;
        case DomainKind::Square:
            return std::abs(x[0]) <= scale + tol && std::abs(x[1]) <= scale + tol;
        case DomainKind::Sphere2:
            return std::abs(std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) - scale) <=
                   1e-9 * scale;
    }
    return false;
}

double LatentModel::diameter() const {
    switch (domain_kind) {
        case DomainKind::IntervalSym: return 2.0 * truncation;
        case DomainKind::IntervalPos: return scale;
        case DomainKind::Circle: return kPi * scale;
        case DomainKind::Square: return 2.0 * scale * std::sqrt(2.0);
        case DomainKind::Sphere2: return kPi * scale;
    }
    return 0.0;
}

double ClosedFormSpectrum::gamma(int k) const {
    require(k >= 1, "ClosedFormSpectrum::gamma: k >= 1");
    return gamma1 * std::pow(ratio, k - 1);
}

double ClosedFormSpectrum::sum_cubes() const {
    const double r3 = ratio * ratio * ratio;
    return gamma1 * gamma1 * gamma1 / (1.0 - r3);
}

double ClosedFormSpectrum::tail_mass(int trunc) const {
    require(trunc >= 0, "ClosedFormSpectrum::tail_mass: trunc >= 0");
    return gamma1 * std::pow(ratio, trunc) / (1.0 - ratio);
}

double KernelModel::evaluate(const double* x, const double* y, int dim) const {
    switch (kind) {
        case KernelKind::GaussianRBF:
        case KernelKind::CircleHeat: {
            double d2 = 0.0;
            for (int i = 0; i < dim; ++i) {
                const double d = x[i] - y[i];
                d2 += d * d;
            }
            return std::exp(-0.5 * d2);
        }
        case KernelKind::Logistic: {
            double dot = 0.0;
            for (int i = 0; i < dim; ++i) dot += x[i] * y[i];
            return 1.0 / (1.0 + std::exp(-dot));
        }
        case KernelKind::GraphonConstant:
            return constant;
    }
    return 0.0;
}

ExampleId parse_example_id(const std::string& name) {
    if (name == "Ex1" || name == "ex1") return ExampleId::Ex1;
    if (name == "Ex2" || name == "ex2") return ExampleId::Ex2;
    if (name == "Ex3" || name == "ex3") return ExampleId::Ex3;
    if (name == "Ex4" || name == "ex4") return ExampleId::Ex4;
    if (name == "Logistic" || name == "logistic") return ExampleId::Logistic;
    if (name == "Square2D" || name == "square2d") return ExampleId::Square2D;
    throw std::invalid_argument("unknown example id '" + name + "'");
}

std::string example_id_name(ExampleId id) {
    switch (id) {
        case ExampleId::Ex1: return "Ex1";
        case ExampleId::Ex2: return "Ex2";
        case ExampleId::Ex3: return "Ex3";
        case ExampleId::Ex4: return "Ex4";
        case ExampleId::Logistic: return "Logistic";
        case ExampleId::Square2D: return "Square2D";
    }
    return "?";
}

std::pair<LatentModel, KernelModel> make_model(ExampleId id, int n, const std::string& scale_rule) {
    return make_model(id, n, eval_scale_expr(scale_rule, static_cast<double>(n)));
}

std::pair<LatentModel, KernelModel> make_model(ExampleId id, int n, double scale) {
    require(n >= 3, "make_model: n >= 3");
    require(scale > 0.0 && std::isfinite(scale), "make_model: scale must be a positive real");
    LatentModel lat{};
    KernelModel ker{};
    lat.scale = scale;
    switch (id) {
        case ExampleId::Ex1:
            // Gaussian(0, sigma^2) truncated to [-t, t] with t = sigma^2
            lat.domain_kind = DomainKind::IntervalSym;
            lat.dist = LatentDist::TruncatedGaussian;
            lat.dim = 1;
            lat.ambient_dim = 1;
            lat.truncation = scale * scale;
            lat.volume = 2.0 * lat.truncation;
            ker.kind = KernelKind::GaussianRBF;
            ker.spectral = rbf_spectrum(scale);
            break;
        case ExampleId::Ex2:
            lat.domain_kind = DomainKind::Circle;
            lat.dist = LatentDist::Uniform;
            lat.dim = 1;
            lat.ambient_dim = 2;
            lat.truncation = scale;
            lat.volume = 2.0 * kPi * scale;
            ker.kind = KernelKind::CircleHeat;
            break;
        case ExampleId::Ex3:
            lat.domain_kind = DomainKind::IntervalPos;
            lat.dist = LatentDist::Uniform;
            lat.dim = 1;
            lat.ambient_dim = 1;
            lat.truncation = scale;
            lat.volume = scale;
            ker.kind = KernelKind::GaussianRBF;
            break;
        case ExampleId::Ex4:
            lat.domain_kind = DomainKind::Sphere2;
            lat.dist = LatentDist::Uniform;
            lat.dim = 2;
            lat.ambient_dim = 3;
            lat.truncation = scale;
            lat.volume = 4.0 * kPi * scale * scale;
            ker.kind = KernelKind::GaussianRBF;
            break;
        case ExampleId::Logistic:
            lat.domain_kind = DomainKind::IntervalSym;
            lat.dist = LatentDist::Uniform;
            lat.dim = 1;
            lat.ambient_dim = 1;
            lat.truncation = scale;
            lat.volume = 2.0 * scale;
            ker.kind = KernelKind::Logistic;
            break;
        case ExampleId::Square2D:
            lat.domain_kind = DomainKind::Square;
            lat.dist = LatentDist::Uniform;
            lat.dim = 2;
            lat.ambient_dim = 2;
            lat.truncation = scale;
            lat.volume = 4.0 * scale * scale;
            ker.kind = KernelKind::GaussianRBF;
            break;
    }
    return {lat, ker};
}

std::pair<LatentModel, KernelModel> make_graphon_constant(double rho) {
    require(rho >= 0.0 && rho <= 1.0, "graphon constant must lie in [0,1]");
    LatentModel lat{DomainKind::IntervalPos, LatentDist::Uniform, 1, 1, 1.0, 1.0, 1.0};
    KernelModel ker{KernelKind::GraphonConstant, rho, std::nullopt};
    return {lat, ker};
}

ClosedFormSpectrum rbf_spectrum(double sigma) {
    require(sigma > 0.0, "rbf_spectrum: sigma > 0");
    const double s2 = sigma * sigma;
    const double denom = 1.0 + 2.0 * s2 + std::sqrt(1.0 + 4.0 * s2);
    return ClosedFormSpectrum{std::sqrt(2.0 / denom), 2.0 * s2 / denom};
}

std::vector<double> rbf_eigenvalues(double sigma, int K) {
    require(K >= 1, "rbf_eigenvalues: K >= 1");
    const ClosedFormSpectrum sp = rbf_spectrum(sigma);
    std::vector<double> out(static_cast<std::size_t>(K));
    double g = sp.gamma1;
    for (int k = 0; k < K; ++k) {
        out[static_cast<std::size_t>(k)] = g;
        g *= sp.ratio;
    }
    return out;
}

FeatureMap circle_feature_map(double r, int K) {
    require(r > 0.0, "circle_feature_map: r > 0");
    require(K >= 3 && K % 2 == 1, "circle_feature_map: K must be odd and >= 3");
    const int modes = (K - 1) / 2;
    const std::vector<double> ibes = bessel_i_scaled(r * r, modes);
    VectorXd amp(K);
    amp(0) = std::sqrt(ibes[0]);
    double captured = ibes[0];
    for (int m = 1; m <= modes; ++m) {
        const double a = std::sqrt(2.0 * ibes[static_cast<std::size_t>(m)]);
        amp(2 * m - 1) = a;
        amp(2 * m) = a;
        captured += 2.0 * ibes[static_cast<std::size_t>(m)];
    }
    FeatureMap map;
    map.trunc_dim = K;
    map.residual = std::max(0.0, 1.0 - captured);
    map.coordinates = [amp, modes, K](const double* x, int dim) {
        require(dim == 2, "circle feature map expects 2-d latent points");
        const double theta = std::atan2(x[1], x[0]);
        VectorXd out(K);
        out(0) = amp(0);
        for (int m = 1; m <= modes; ++m) {
            out(2 * m - 1) = amp(2 * m - 1) * std::cos(m * theta);
            out(2 * m) = amp(2 * m) * std::sin(m * theta);
        }
        return out;
    };
    return map;
}

MatrixXd equal_mass_grid(const LatentModel& latent, int m) {
    require(m >= 1, "equal_mass_grid: m >= 1");
    switch (latent.domain_kind) {
        case DomainKind::IntervalSym: {
            MatrixXd grid(m, 1);
            if (latent.dist == LatentDist::TruncatedGaussian) {
                const double sigma = latent.scale, t = latent.truncation;
                const double plo = normal_cdf(-t / sigma);
                for (int i = 0; i < m; ++i) {
                    const double u = (i + 0.5) / m;
                    const double p = plo + u * (1.0 - 2.0 * plo);
                    double x = sigma * normal_quantile(p);
                    grid(i, 0) = std::clamp(x, -t, t);
                }
            } else {
                for (int i = 0; i < m; ++i)
                    grid(i, 0) = -latent.truncation + 2.0 * latent.truncation * (i + 0.5) / m;
            }
            return grid;
        }
        case DomainKind::IntervalPos: {
            MatrixXd grid(m, 1);
            for (int i = 0; i < m; ++i) grid(i, 0) = latent.scale * (i + 0.5) / m;
            return grid;
        }
        case DomainKind::Circle: {
            MatrixXd grid(m, 2);
            for (int i = 0; i < m; ++i) {
                const double theta = 2.0 * kPi * (i + 0.5) / m;
                grid(i, 0) = latent.scale * std::cos(theta);
                grid(i, 1) = latent.scale * std::sin(theta);
            }
            return grid;
        }
        case DomainKind::Square: {
            // tensor grid; effective size is the square below m
            const int side = std::max(1, static_cast<int>(std::floor(std::sqrt(double(m)))));
            MatrixXd grid(side * side, 2);
            const double a = latent.scale;
            for (int i = 0; i < side; ++i)
                for (int j = 0; j < side; ++j) {
                    grid(i * side + j, 0) = -a + 2.0 * a * (i + 0.5) / side;
                    grid(i * side + j, 1) = -a + 2.0 * a * (j + 0.5) / side;
                }
            return grid;
        }
        case DomainKind::Sphere2: {
            // Fibonacci lattice: near-equal-area, deterministic
            MatrixXd grid(m, 3);
            const double r = latent.scale;
            for (int i = 0; i < m; ++i) {
                const double z = 1.0 - 2.0 * (i + 0.5) / m;
                const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
                const double phi = kGoldenAngle * i;
                grid(i, 0) = r * rho * std::cos(phi);
                grid(i, 1) = r * rho * std::sin(phi);
                grid(i, 2) = r * z;
            }
            return grid;
        }
    }
    fail("equal_mass_grid: unhandled domain");
}

NystromFeatures nystrom_features(const LatentModel& latent, const KernelModel& kernel,
                                 int grid_size, int K) {
    require(grid_size >= K && K >= 1, "nystrom_features: need grid_size >= K >= 1");
    MatrixXd grid = equal_mass_grid(latent, grid_size);
    const int m = static_cast<int>(grid.rows());
    const int dim = static_cast<int>(grid.cols());
    require(m >= K, "nystrom_features: effective grid smaller than K");

    MatrixXd gram(m, m);
    for (int i = 0; i < m; ++i) {
        gram(i, i) = kernel.evaluate(grid.row(i).data(), grid.row(i).data(), dim);
        for (int j = i + 1; j < m; ++j) {
            // row(i).data() is not contiguous for row vectors; copy to locals
            double xi[3], xj[3];
            for (int c = 0; c < dim; ++c) {
                xi[c] = grid(i, c);
                xj[c] = grid(j, c);
            }
            const double v = kernel.evaluate(xi, xj, dim);
            gram(i, j) = v;
            gram(j, i) = v;
        }
    }

    Eigen::SelfAdjointEigenSolver<MatrixXd> es(gram);
    if (es.info() != Eigen::Success) fail("nystrom_features: Gram matrix eigensolve failed");

    // Eigen sorts ascending; operator eigenvalues are eig/m, descending.
    VectorXd opvals(m);
    MatrixXd scaled(m, K);  // column k: u_k / sqrt(eig_k)
    VectorXd gram_eigs = es.eigenvalues();
    MatrixXd vecs = es.eigenvectors();
    for (int k = 0; k < m; ++k) opvals(k) = gram_eigs(m - 1 - k) / m;
    for (int k = 0; k < K; ++k) {
        const double eig = gram_eigs(m - 1 - k);
        if (eig > 0.0)
            scaled.col(k) = vecs.col(m - 1 - k) / std::sqrt(eig);
        else
            scaled.col(k).setZero();
    }

    double residual = 0.0;
    for (int k = K; k < m; ++k) residual += std::max(0.0, opvals(k));

    NystromFeatures out;
    out.operator_eigenvalues = opvals;
    out.map.trunc_dim = K;
    out.map.residual = residual;
    auto grid_copy = std::make_shared<MatrixXd>(std::move(grid));
    auto scaled_copy = std::make_shared<MatrixXd>(std::move(scaled));
    out.map.coordinates = [grid_copy, scaled_copy, kernel, dim](const double* x, int d) {
        require(d == dim, "nystrom feature map: latent dimension mismatch");
        const int mm = static_cast<int>(grid_copy->rows());
        VectorXd kvec(mm);
        double gj[3];
        for (int j = 0; j < mm; ++j) {
            for (int c = 0; c < dim; ++c) gj[c] = (*grid_copy)(j, c);
            kvec(j) = kernel.evaluate(x, gj, dim);
        }
        return VectorXd(scaled_copy->transpose() * kvec);
    };
    out.grid = *grid_copy;
    return out;
}

}  // namespace manigraph
