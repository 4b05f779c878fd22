#pragma once

#include "manigraph/common.hpp"
#include "manigraph/kernels.hpp"
#include "manigraph/graphgen.hpp"

#include <string>
#include <vector>

namespace manigraph {

enum class OracleQuantity { Rho, DeltaPerN2, SumLambdaCubed, Hausdorff, GraphonBound };
enum class OracleMethod { ClosedForm, Quadrature, MonteCarlo, Nystrom };

std::string oracle_quantity_name(OracleQuantity q);
std::string oracle_method_name(OracleMethod m);

struct OracleReport {
    OracleQuantity quantity;
    double value = 0.0;
    OracleMethod method;
    // Monte Carlo standard error, or a Richardson (half-grid) estimate for
    // quadrature; zero for closed forms.
    double error = 0.0;
    std::string model;
};

// Oracles for the Gaussian-kernel examples can target either the model's own
// truncated measure G_n or the untruncated Gaussian reference used by the
// closed forms.
enum class GaussianMeasure { Truncated, Untruncated };

struct OracleModel {
    LatentModel latent;
    KernelModel kernel;
    bool untruncated_gaussian = false;
    std::string name() const;
};

OracleModel oracle_model(const LatentModel& latent, const KernelModel& kernel,
                         GaussianMeasure measure = GaussianMeasure::Truncated);

// --- closed forms ------------------------------------------------------

// untruncated Gaussian: rho = 1 / sqrt(2 sigma^2 + 1)
double gaussian_rho_closed_form(double sigma);

// Both readings of the circle sparsity factor; the plain Bessel form is the
// one that matches Monte Carlo (the 1/r variant is reported alongside).
struct CircleRhoCandidates {
    double bessel;         // e^{-r^2} I_0(r^2)
    double bessel_over_r;  // e^{-r^2} I_0(r^2) / r
};
CircleRhoCandidates circle_rho_candidates(double r);

struct CircleRhoAdjudication {
    CircleRhoCandidates candidates;
    double monte_carlo;
    double mc_std_error;
    bool bessel_wins;  // candidate closer to the Monte Carlo estimate
};
CircleRhoAdjudication adjudicate_circle_rho(double r, std::size_t pairs, std::uint64_t seed);

OracleReport rho_closed_form(const OracleModel& model);

// Fourier reference for the circle triple integral:
// sum_m (e^{-r^2} I_m(r^2))^3 over m in Z.
double circle_sum_cubes_bessel(double r);
// analytic lower bound 1 / (8 sqrt(3) pi r^2)
double circle_sum_cubes_lower_bound(double r);

// --- quadrature ---------------------------------------------------------

// Tensor Gauss-Legendre against the density of G_n (1-d intrinsic domains).
// The node count is raised automatically when the domain is much wider than
// the kernel bandwidth. Non-1-d domains fall back to Monte Carlo with a
// warning (method is reported accordingly).
struct RhoDeltaQuad {
    OracleReport rho;
    OracleReport delta;  // the triple-product integrand; scale by C(n,3)/n for Delta_n
    bool fell_back_to_monte_carlo = false;
};
RhoDeltaQuad rho_delta_quadrature(const OracleModel& model, int grid = 256,
                                  std::size_t mc_samples = 1'000'000, std::uint64_t mc_seed = 7);

OracleReport rho_quadrature(const OracleModel& model, int grid = 256);

// Delta_n at finite n from the triple integrand, with the exact C(n,3)/n factor.
double delta_n_from_integrand(double triple_integrand, long n);

// The identities rho_trunc = (1 - 2 Phi(-t/sigma))^{-2} I'_t and
// triple_trunc = (1 - 2 Phi(-t/sigma))^{-3} I_t with t = sigma^2, every
// integral by quadrature (truncated-normalized vs raw Gaussian weights on
// the same nodes).
struct TruncationCorrection {
    double rho_truncated;            // pair integral, renormalized truncated density
    double restricted_untruncated;   // same box, raw Gaussian weights (I'_t)
    double factor_measured;          // ratio of the two
    double factor_expected;          // (1 - 2 Phi(-sigma))^{-2}
    double triple_truncated;         // triple integral, truncated density
    double triple_restricted;        // same box, raw Gaussian weights (I_t)
    double factor3_measured;
    double factor3_expected;         // (1 - 2 Phi(-sigma))^{-3}
};
TruncationCorrection truncation_correction(double sigma, int grid = 256);
// cubic variant of the factor, for the triple integral
double truncation_factor_cubed(double sigma);

// --- eigenvalue power sums ----------------------------------------------

OracleReport sum_lambda_cubed_closed_form(double sigma);
// trace of the cubed Gram operator over the equal-mass grid (equal to the
// sum of its cubed eigenvalues)
OracleReport sum_lambda_cubed_nystrom(const OracleModel& model, int grid_size = 600);
OracleReport sum_lambda_cubed_monte_carlo(const OracleModel& model, std::size_t triples,
                                          std::uint64_t seed);
OracleReport rho_monte_carlo(const OracleModel& model, std::size_t pairs, std::uint64_t seed);

// --- rates ----------------------------------------------------------------

struct RateFit {
    std::vector<double> x_values, y_values;  // raw (not logged)
    double slope = 0.0, intercept = 0.0, r2 = 0.0;
    double claimed_slope = 0.0, tolerance = 0.0;
    bool pass = false;
};
// OLS on log-log values; needs >= 4 positive grid points.
RateFit rate_fit(const std::vector<double>& xs, const std::vector<double>& ys,
                 double claimed_slope, double tolerance);

// --- graphon bound ---------------------------------------------------------

// ((n-1)(n-2)/6) rho^3, the triangle-density ceiling of a scaled graphon
double graphon_delta_bound(double rho, long n);
OracleReport graphon_bound_report(double rho, long n);

// --- Hausdorff gap ----------------------------------------------------------

// largest geodesic distance from a manifold point to its nearest sample, for
// interval-homeomorphic 1-d domains
double hausdorff_gap_interval(std::vector<double> points, double lo, double hi);
OracleReport hausdorff_gap(const LatentSample& latents);

}  // namespace manigraph
