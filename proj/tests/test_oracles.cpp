#include "doctest.h"

#include "manigraph/graphgen.hpp"
#include "manigraph/oracles.hpp"
#include "manigraph/stats.hpp"

#include <cmath>

using namespace manigraph;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("Gaussian rho closed form") {
    CHECK(gaussian_rho_closed_form(2.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(gaussian_rho_closed_form(1e-4) == doctest::Approx(1.0).epsilon(1e-7));
    CHECK_THROWS(gaussian_rho_closed_form(0.0));
}

TEST_CASE("circle rho: both candidates, Monte Carlo adjudication") {
    const CircleRhoCandidates c1 = circle_rho_candidates(1.0);
    CHECK(c1.bessel == doctest::Approx(0.46576).epsilon(1e-4));
    CHECK(c1.bessel == doctest::Approx(c1.bessel_over_r).epsilon(1e-14));  // coincide at r=1

    // r = 2 separates the candidates decisively
    const CircleRhoAdjudication adj = adjudicate_circle_rho(2.0, 400000, 99);
    CHECK(adj.bessel_wins);
    CHECK(std::abs(adj.candidates.bessel - adj.monte_carlo) < 4.0 * adj.mc_std_error);
    CHECK(std::abs(adj.candidates.bessel_over_r - adj.monte_carlo) > 20.0 * adj.mc_std_error);

    // and at r = 0.5 (the 1/r variant overshoots above 1)
    const CircleRhoAdjudication adj2 = adjudicate_circle_rho(0.5, 400000, 7);
    CHECK(adj2.bessel_wins);
}

TEST_CASE("quadrature rho and triple integrand") {
    // constant kernel: rho = 1, triple = 1, Delta_n = C(n,3)/n
    auto [glat, gker] = make_graphon_constant(1.0);
    const RhoDeltaQuad rdq = rho_delta_quadrature(oracle_model(glat, gker), 128);
    CHECK(rdq.rho.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rdq.delta.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(delta_n_from_integrand(rdq.delta.value, 5) == doctest::Approx(10.0 / 5.0).epsilon(1e-12));
    CHECK(!rdq.fell_back_to_monte_carlo);

    // untruncated Gaussian matches the closed form to 1e-6 relative
    for (double sigma : {1.0, 2.0, 5.0}) {
        auto [lat, ker] = make_model(ExampleId::Ex1, 100, sigma);
        const OracleModel om = oracle_model(lat, ker, GaussianMeasure::Untruncated);
        const OracleReport rho = rho_quadrature(om, 256);
        CHECK(std::abs(rho.value - gaussian_rho_closed_form(sigma)) <
              1e-6 * gaussian_rho_closed_form(sigma));
        CHECK(rho.error < 1e-4);  // Richardson estimate is dominated by the half grid
    }

    // truncated model: quadrature agrees with a Monte Carlo cross-oracle
    auto [lat1, ker1] = make_model(ExampleId::Ex1, 100, 1.0);
    const OracleModel om1 = oracle_model(lat1, ker1);
    const OracleReport q = rho_quadrature(om1, 256);
    const OracleReport mc = rho_monte_carlo(om1, 2000000, 3);
    CHECK(std::abs(q.value - mc.value) < 4.0 * mc.error);

    // circle model: quadrature equals the Bessel closed form
    auto [lat2, ker2] = make_model(ExampleId::Ex2, 100, 1.3);
    const OracleReport qc = rho_quadrature(oracle_model(lat2, ker2), 256);
    CHECK(qc.value == doctest::Approx(circle_rho_candidates(1.3).bessel).epsilon(1e-10));

    // 2-d domain falls back to Monte Carlo with a warning
    auto [lat3, ker3] = make_model(ExampleId::Square2D, 100, 2.0);
    const RhoDeltaQuad fb = rho_delta_quadrature(oracle_model(lat3, ker3), 128, 200000, 5);
    CHECK(fb.fell_back_to_monte_carlo);
    CHECK(fb.rho.method == OracleMethod::MonteCarlo);
    CHECK(fb.rho.error > 0.0);
}

TEST_CASE("truncation correction factors match the density renormalization") {
    for (double sigma : {1.0, 2.0, 3.0, 5.0}) {
        const TruncationCorrection tc = truncation_correction(sigma, 256);
        CHECK(std::abs(tc.factor_measured - tc.factor_expected) < 1e-4);
        CHECK(std::abs(tc.factor3_measured - tc.factor3_expected) < 1e-4);
    }
    // the factor itself: (1 - 2 Phi(-sigma))^-2, and its cubed variant
    const TruncationCorrection t2 = truncation_correction(2.0, 256);
    CHECK(t2.factor_expected == doctest::Approx(1.0976100).epsilon(1e-6));
    CHECK(truncation_factor_cubed(2.0) ==
          doctest::Approx(std::pow(t2.factor_expected, 1.5)).epsilon(1e-12));
}

TEST_CASE("sum of cubed eigenvalues: closed form vs quadrature trace") {
    for (double sigma : {1.0, 2.0}) {
        auto [lat, ker] = make_model(ExampleId::Ex1, 100, sigma);
        const OracleModel om = oracle_model(lat, ker, GaussianMeasure::Untruncated);
        const RhoDeltaQuad rdq = rho_delta_quadrature(om, 256);
        const double closed = sum_lambda_cubed_closed_form(sigma).value;
        CHECK(rdq.delta.value == doctest::Approx(closed).epsilon(1e-6));
    }
    // sigma = 1 evaluates to 1/4
    CHECK(sum_lambda_cubed_closed_form(1.0).value == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("trace identity: Nystrom, Monte Carlo and closed form agree") {
    auto [lat, ker] = make_model(ExampleId::Ex1, 100, 1.0);
    const OracleModel om = oracle_model(lat, ker, GaussianMeasure::Untruncated);
    const double closed = sum_lambda_cubed_closed_form(1.0).value;
    const OracleReport ny = sum_lambda_cubed_nystrom(om, 600);
    const OracleReport mc = sum_lambda_cubed_monte_carlo(om, 400000, 17);
    CHECK(std::abs(ny.value - closed) < 0.01 * closed);
    CHECK(std::abs(mc.value - closed) < 3.0 * mc.error);
    CHECK(std::abs(ny.value - mc.value) < std::max(0.01 * closed, 3.0 * mc.error));

    // circle r = 1: Nystrom and Monte Carlo against the Fourier reference,
    // and all above the analytic lower bound
    auto [latc, kerc] = make_model(ExampleId::Ex2, 100, 1.0);
    const OracleModel omc = oracle_model(latc, kerc);
    const double fourier = circle_sum_cubes_bessel(1.0);
    const OracleReport nyc = sum_lambda_cubed_nystrom(omc, 600);
    const OracleReport mcc = sum_lambda_cubed_monte_carlo(omc, 400000, 29);
    CHECK(std::abs(nyc.value - fourier) < 0.01 * fourier);
    CHECK(std::abs(mcc.value - fourier) < 3.0 * mcc.error);
    CHECK(nyc.value > circle_sum_cubes_lower_bound(1.0));
    CHECK(fourier > circle_sum_cubes_lower_bound(1.0));

    // the truncated measure shifts the Gaussian value; quadrature confirms it
    const OracleModel om_trunc = oracle_model(lat, ker);
    const OracleReport ny_tr = sum_lambda_cubed_nystrom(om_trunc, 600);
    const RhoDeltaQuad rdq_tr = rho_delta_quadrature(om_trunc, 256);
    CHECK(std::abs(ny_tr.value - rdq_tr.delta.value) < 0.01 * rdq_tr.delta.value);

    // constant kernel: a single unit eigenvalue, so the cube sum is 1
    auto [glat, gker] = make_graphon_constant(1.0);
    CHECK(sum_lambda_cubed_nystrom(oracle_model(glat, gker), 64).value ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("trace identity holds for the remaining 1-d models") {
    // uniform interval with the RBF kernel, and the logistic kernel
    for (const auto& [id, rule] : std::vector<std::pair<ExampleId, std::string>>{
             {ExampleId::Ex3, "6"}, {ExampleId::Logistic, "3"}}) {
        auto [lat, ker] = make_model(id, 100, rule);
        const OracleModel om = oracle_model(lat, ker);
        const OracleReport ny = sum_lambda_cubed_nystrom(om, 500);
        const OracleReport mc = sum_lambda_cubed_monte_carlo(om, 300000, 51);
        const double quad = rho_delta_quadrature(om, 256).delta.value;
        INFO(om.name());
        CHECK(std::abs(ny.value - quad) < 0.01 * quad);
        CHECK(std::abs(mc.value - quad) < std::max(0.01 * quad, 3.0 * mc.error));
    }
}

TEST_CASE("rate fits") {
    const std::vector<double> sigmas = {2, 4, 8, 16, 32};
    std::vector<double> rho_q, cubes;
    for (const double s : sigmas) {
        auto [lat, ker] = make_model(ExampleId::Ex1, 100, s);
        rho_q.push_back(rho_quadrature(oracle_model(lat, ker, GaussianMeasure::Untruncated), 256).value);
        cubes.push_back(sum_lambda_cubed_closed_form(s).value);
    }
    const RateFit fr = rate_fit(sigmas, rho_q, -1.0, 0.05);
    CHECK(fr.pass);
    CHECK(fr.slope == doctest::Approx(-0.9807).epsilon(1e-3));
    const RateFit fc = rate_fit(sigmas, cubes, -2.0, 0.05);
    CHECK(fc.pass);
    CHECK(fc.r2 > 0.999);

    // constant series fits slope zero exactly
    const RateFit f0 = rate_fit({1, 2, 3, 4}, {5, 5, 5, 5}, 0.0, 1e-12);
    CHECK(f0.pass);
    CHECK(f0.slope == doctest::Approx(0.0));
    CHECK(f0.r2 == doctest::Approx(1.0));

    CHECK_THROWS(rate_fit({1, 2, 3}, {1, 2, 3}, 1.0, 0.1));       // too few points
    CHECK_THROWS(rate_fit({1, 1, 1, 1}, {1, 2, 3, 4}, 1.0, 0.1));  // degenerate grid
}

TEST_CASE("graphon triangle-density bound") {
    CHECK(graphon_delta_bound(1.0, 4) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(graphon_delta_bound(0.0, 100) == 0.0);

    // complete graph attains the bound with equality
    auto [lat, ker] = make_graphon_constant(1.0);
    const SparseGraph k4 = sample_graph(sample_latents(lat, 4, 1), ker, false, 2);
    const double delta_hat = static_cast<double>(count_triangles(k4)) / 4.0;
    CHECK(delta_hat == doctest::Approx(graphon_delta_bound(1.0, 4)));

    // sparse regime: sampled density stays below the bound (mean level)
    const int n = 500, seeds = 20;
    const double rho = 1.0 / n;
    auto [glat, gker] = make_graphon_constant(rho);
    double acc = 0.0, acc2 = 0.0;
    for (int s = 0; s < seeds; ++s) {
        const SparseGraph g = sample_graph(sample_latents(glat, n, 100 + static_cast<std::uint64_t>(s)),
                                           gker, false, 200 + static_cast<std::uint64_t>(s));
        const double d = static_cast<double>(count_triangles(g)) / n;
        acc += d;
        acc2 += d * d;
    }
    const double mean = acc / seeds;
    const double var = std::max(0.0, acc2 / seeds - mean * mean);
    const double se = std::sqrt(var / seeds);
    CHECK(mean <= graphon_delta_bound(rho, n) + 3.0 * se + 1e-12);
}

TEST_CASE("Hausdorff gap on interval samples") {
    CHECK(hausdorff_gap_interval({0.5}, 0.0, 1.0) == doctest::Approx(0.5));
    const int n = 64;
    std::vector<double> grid;
    for (int i = 1; i <= n; ++i) grid.push_back((2.0 * i - 1.0) / (2.0 * n));
    CHECK(hausdorff_gap_interval(grid, 0.0, 1.0) == doctest::Approx(1.0 / (2.0 * n)).epsilon(1e-12));
    CHECK_THROWS(hausdorff_gap_interval({}, 0.0, 1.0));

    // LatentSample plumbing: Ex3 uniform interval
    auto [lat, ker] = make_model(ExampleId::Ex3, 100, 10.0);
    const LatentSample s = sample_latents(lat, 5000, 77);
    const OracleReport rep = hausdorff_gap(s);
    CHECK(rep.quantity == OracleQuantity::Hausdorff);
    CHECK(rep.value > 0.0);
    CHECK(rep.value < 0.1);  // 5000 uniform points on [0, 10]: gaps ~ log(n) * 10/n

    // circle domains are rejected
    auto [latc, kerc] = make_model(ExampleId::Ex2, 100, 1.0);
    const LatentSample sc = sample_latents(latc, 100, 1);
    CHECK_THROWS(hausdorff_gap(sc));
}

TEST_CASE("sampled mean degree matches the oracle rho across all examples" *
          doctest::test_suite("slow")) {
    struct Cfg {
        ExampleId id;
        int n;
        std::string rule;
    };
    const std::vector<Cfg> cfgs = {
        {ExampleId::Ex1, 800, "2"},        {ExampleId::Ex2, 800, "2"},
        {ExampleId::Ex3, 800, "20"},       {ExampleId::Ex4, 600, "sqrt(n)/10"},
        {ExampleId::Logistic, 500, "3"},   {ExampleId::Square2D, 600, "5"},
    };
    for (const auto& cfg : cfgs) {
        auto [lat, ker] = make_model(cfg.id, cfg.n, cfg.rule);
        const OracleModel om = oracle_model(lat, ker);
        const double rho = lat.dim == 1 ? rho_quadrature(om, 256).value
                                        : rho_monte_carlo(om, 400000, 5).value;
        const int seeds = 20;
        double acc = 0.0, acc2 = 0.0;
        for (int s = 0; s < seeds; ++s) {
            const LatentSample ls =
                sample_latents(lat, cfg.n, 300 + static_cast<std::uint64_t>(s));
            const SparseGraph g =
                sample_graph(ls, ker, false, 400 + static_cast<std::uint64_t>(s), 2);
            const double deg = 2.0 * static_cast<double>(g.edge_count()) / cfg.n;
            acc += deg;
            acc2 += deg * deg;
        }
        const double mean = acc / seeds;
        const double sd = std::sqrt(std::max(0.0, acc2 / seeds - mean * mean));
        const double se = sd / std::sqrt(double(seeds));
        // expected degree of the loop-free graph is (n-1) rho
        const double expect = (cfg.n - 1) * rho;
        INFO(example_id_name(cfg.id), " mean=", mean, " expect=", expect, " se=", se);
        CHECK(std::abs(mean - expect) < std::max(3.0 * se, 0.02 * expect));
    }
}
