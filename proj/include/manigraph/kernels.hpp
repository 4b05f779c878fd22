#pragma once

#include "manigraph/common.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace manigraph {

enum class DomainKind {
    IntervalSym,   // [-t, t]
    IntervalPos,   // [0, a]
    Circle,        // { x in R^2 : |x| = r }
    Square,        // [-a, a]^2
    Sphere2,       // { x in R^3 : |x| = r }
};

enum class LatentDist { TruncatedGaussian, Uniform };

// A latent domain Z_n, its sampling distribution G_n and scale parameters.
struct LatentModel {
    DomainKind domain_kind;
    LatentDist dist;
    int dim;            // intrinsic dimension (1 or 2)
    int ambient_dim;    // columns of a latent sample (circle: 2, sphere: 3)
    double scale;       // sigma_n, r_n or a_n depending on the example
    double truncation;  // half-width t for IntervalSym; domain extent otherwise
    double volume;      // intrinsic volume (length or area)

    bool contains(const double* x) const;
    double diameter() const;  // geodesic diameter, in latent length units
};

enum class KernelKind { GaussianRBF, CircleHeat, Logistic, GraphonConstant };

struct ClosedFormSpectrum {
    double gamma1;  // leading eigenvalue
    double ratio;   // geometric ratio in (0,1)

    double gamma(int k) const;        // k >= 1
    double sum_cubes() const;         // gamma1^3 / (1 - ratio^3)
    double tail_mass(int trunc) const;  // sum_{k > trunc} gamma_k
};

// Symmetric link-probability kernel on the latent domain.
struct KernelModel {
    KernelKind kind;
    double constant = 0.0;  // edge probability for GraphonConstant
    std::optional<ClosedFormSpectrum> spectral;

    // x, y are ambient latent coordinates of length dim
    double evaluate(const double* x, const double* y, int dim) const;
};

enum class ExampleId { Ex1, Ex2, Ex3, Ex4, Logistic, Square2D };

ExampleId parse_example_id(const std::string& name);
std::string example_id_name(ExampleId id);

// Configures the latent model and kernel of one of the built-in examples.
// scale_rule is an expression over n, e.g. "n/2000".
std::pair<LatentModel, KernelModel> make_model(ExampleId id, int n, const std::string& scale_rule);
std::pair<LatentModel, KernelModel> make_model(ExampleId id, int n, double scale);

// Constant-probability graphon kernel (latents uniform on [0,1]).
std::pair<LatentModel, KernelModel> make_graphon_constant(double rho);

// Closed-form eigenvalues of the RBF kernel against an untruncated Gaussian
// with standard deviation sigma: gamma_1, ..., gamma_K.
std::vector<double> rbf_eigenvalues(double sigma, int K);
ClosedFormSpectrum rbf_spectrum(double sigma);

// Truncated Mercer feature map: coordinates approximate the first trunc_dim
// entries of phi, so feature inner products approach the kernel from below.
struct FeatureMap {
    int trunc_dim;
    double residual;  // tail eigenvalue mass past trunc_dim (NaN when unknown)
    std::function<VectorXd(const double* x, int dim)> coordinates;

    VectorXd operator()(const VectorXd& x) const {
        return coordinates(x.data(), static_cast<int>(x.size()));
    }
};

// Fourier feature map of the circle kernel exp(-|x-y|^2/2) on radius r:
// (sqrt(I0~), sqrt(2 I1~) cos t, sqrt(2 I1~) sin t, ...) with Im~ = e^-r^2 Im(r^2).
// K must be odd and >= 3 (constant mode plus cos/sin pairs).
FeatureMap circle_feature_map(double r, int K);

// Nystrom feature map over a deterministic equal-probability-mass grid of
// G_n: eigendecomposes the m x m Gram matrix and returns top-K coordinates.
struct NystromFeatures {
    FeatureMap map;
    MatrixXd grid;             // m x ambient_dim grid points
    VectorXd operator_eigenvalues;  // all m Nystrom eigenvalue estimates, descending
    double sum_cubes() const { return operator_eigenvalues.array().cube().sum(); }
};

NystromFeatures nystrom_features(const LatentModel& latent, const KernelModel& kernel,
                                 int grid_size, int K);

// The equal-mass grid used by nystrom_features (exposed for the oracles).
MatrixXd equal_mass_grid(const LatentModel& latent, int m);

}  // namespace manigraph
