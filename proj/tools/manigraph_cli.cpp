// manigraph: latent-manifold random graphs, spectral embeddings and the
// theoretical oracles validating them. See README.md for examples.

#include "CLI11.hpp"

#include "manigraph/csv.hpp"
#include "manigraph/experiments.hpp"
#include "manigraph/graph_io.hpp"
#include "manigraph/graphgen.hpp"
#include "manigraph/kernels.hpp"
#include "manigraph/local.hpp"
#include "manigraph/oracles.hpp"
#include "manigraph/spectral.hpp"
#include "manigraph/stats.hpp"

#include <filesystem>
#include <iostream>

using namespace manigraph;

namespace {

std::string out_path(const std::string& out_dir, const std::string& name) {
    std::filesystem::create_directories(out_dir);
    return (std::filesystem::path(out_dir) / name).string();
}

void write_oracle_rows(CsvWriter& csv, const std::vector<OracleReport>& reports) {
    for (const auto& r : reports) {
        csv.field(oracle_quantity_name(r.quantity))
            .field(r.value)
            .field(oracle_method_name(r.method))
            .field(r.error)
            .field(r.model);
        csv.end_row();
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sparse triangle-dense random graphs on latent manifolds"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key=value config file; flags win");

    std::uint64_t seed = 1;
    std::string out_dir = ".";
    int threads = 0;
    app.add_option("--seed", seed, "master seed")->capture_default_str();
    app.add_option("--out-dir", out_dir, "output directory")->capture_default_str();
    app.add_option("--threads", threads, "worker threads (0 = hardware)")->capture_default_str();

    // ---- generate ----------------------------------------------------------
    auto* gen = app.add_subcommand("generate", "sample a graph from a built-in model");
    std::string gen_example = "Ex2", gen_scale, gen_out = "graph.txt", gen_latents_out;
    int gen_n = 2000;
    bool gen_loops = false;
    gen->add_option("--example", gen_example, "Ex1|Ex2|Ex3|Ex4|Logistic|Square2D")
        ->capture_default_str();
    gen->add_option("--n", gen_n, "node count")->capture_default_str();
    gen->add_option("--scale", gen_scale, "scale rule over n (default per example)");
    gen->add_flag("--self-loops", gen_loops, "allow i = j pairs");
    gen->add_option("--out", gen_out, "edge list output")->capture_default_str();
    gen->add_option("--latents-out", gen_latents_out, "also write latent positions CSV");

    // ---- stats -------------------------------------------------------------
    auto* st = app.add_subcommand("stats", "degree / triangle / clustering statistics");
    std::string st_graph, st_out = "stats.csv", st_curve_out, st_sub_out;
    std::vector<int> st_dims;
    int st_resamples = 10, st_cap = -1;
    bool st_peel = false;
    st->add_option("--graph", st_graph, "edge list input")->required();
    st->add_option("--out", st_out, "single-row stats CSV")->capture_default_str();
    st->add_option("--recovery-dims", st_dims, "triangle-recovery dimensions")->delimiter(',');
    st->add_option("--resamples", st_resamples, "resamples per dimension")->capture_default_str();
    st->add_option("--recovery-out", st_curve_out, "recovery curve CSV (long format)");
    st->add_option("--cap", st_cap, "degree cap; write the low-degree subgraph");
    st->add_flag("--peel", st_peel, "iterated peeling instead of single-pass");
    st->add_option("--subgraph-out", st_sub_out, "low-degree subgraph edge list");

    // ---- embed -------------------------------------------------------------
    auto* em = app.add_subcommand("embed", "adjacency / Laplacian spectral embedding");
    std::string em_graph, em_kind = "ase", em_out = "embedding.csv", em_scree_out;
    int em_d = 3, em_scree = 0;
    em->add_option("--graph", em_graph, "edge list input")->required();
    em->add_option("--kind", em_kind, "ase|lse")->capture_default_str();
    em->add_option("--d", em_d, "embedding dimension")->capture_default_str();
    em->add_option("--out", em_out, "embedding CSV (+ .meta sidecar)")->capture_default_str();
    em->add_option("--scree", em_scree, "also write the top-m singular values");
    em->add_option("--scree-out", em_scree_out, "scree CSV path");

    // ---- local -------------------------------------------------------------
    auto* lo = app.add_subcommand("local", "common-neighbor core and core-periphery slice");
    std::string lo_graph, lo_core_out = "core.txt", lo_slice_out = "slice.txt";
    int lo_query = 0, lo_k = 100;
    lo->add_option("--graph", lo_graph, "edge list input")->required();
    lo->add_option("--query", lo_query, "query node id")->capture_default_str();
    lo->add_option("--k", lo_k, "neighborhood size (query included)")->capture_default_str();
    lo->add_option("--core-out", lo_core_out, "core edge list output")->capture_default_str();
    lo->add_option("--slice-out", lo_slice_out, "slice coordinate list output")
        ->capture_default_str();

    // ---- oracle ------------------------------------------------------------
    auto* orc = app.add_subcommand("oracle", "theoretical rho / Delta / spectrum values");
    std::string orc_example = "Ex1", orc_scale, orc_out = "oracle.csv", orc_fit_out;
    int orc_n = 2000, orc_grid = 256, orc_nystrom = 600;
    std::size_t orc_mc = 1000000;
    std::vector<double> orc_sigmas;
    std::string orc_fit_quantity = "rho";
    orc->add_option("--example", orc_example, "Ex1|Ex2|Ex3|Ex4|Logistic|Square2D")
        ->capture_default_str();
    orc->add_option("--n", orc_n, "node count (for Delta_n scaling)")->capture_default_str();
    orc->add_option("--scale", orc_scale, "scale rule over n");
    orc->add_option("--grid", orc_grid, "quadrature nodes per axis")->capture_default_str();
    orc->add_option("--nystrom-grid", orc_nystrom, "Nystrom grid size")->capture_default_str();
    orc->add_option("--mc-samples", orc_mc, "Monte Carlo sample count")->capture_default_str();
    orc->add_option("--out", orc_out, "oracle report CSV")->capture_default_str();
    orc->add_option("--fit-sigmas", orc_sigmas, "rate fit over this sigma grid")->delimiter(',');
    orc->add_option("--fit-quantity", orc_fit_quantity, "rho|sum_lambda_cubed")
        ->capture_default_str();
    orc->add_option("--fit-out", orc_fit_out, "rate fit CSV");

    // ---- experiment ----------------------------------------------------------
    auto* ex = app.add_subcommand("experiment", "figure reproductions as CSV artifacts");
    ExperimentSpec spec;
    ex->add_option("--name", spec.name,
                   "fig1_manifold|fig2_local_vs_global|fig3_low_degree|graphon_check|"
                   "appendix_constant_regime|appendix_histograms")
        ->required();
    ex->add_option("--n", spec.n, "override node count");
    ex->add_option("--seeds", spec.seeds_count, "override replication count");
    ex->add_option("--resamples", spec.resamples, "override resample count");
    ex->add_option("--k", spec.k_neighborhood, "override neighborhood size");
    ex->add_option("--dims", spec.dims, "override embedding dimensions")->delimiter(',');
    ex->add_option("--scree-top", spec.scree_top, "override scree length");
    ex->add_option("--feature-dim", spec.feature_dim, "manifold truncation K (odd, >= 3)");
    ex->add_option("--graph", spec.graph_path, "fig3: ingest this edge list");
    ex->add_flag("--full-scale", spec.full_scale,
                 "paper-scale sizes (fig2 ~n=20000: expect tens of minutes)");

    // ---- ingest ---------------------------------------------------------------
    auto* ing = app.add_subcommand("ingest", "normalize an external edge list");
    std::string ing_in, ing_format = "snap", ing_out = "ingested.txt";
    ing->add_option("--in", ing_in, "raw edge list")->required();
    ing->add_option("--format", ing_format, "snap|csv")->capture_default_str();
    ing->add_option("--out", ing_out, "normalized edge list output")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            const ExampleId id = parse_example_id(gen_example);
            std::string rule = gen_scale;
            if (rule.empty()) {
                switch (id) {
                    case ExampleId::Ex1:
                    case ExampleId::Ex2: rule = "n/2000"; break;
                    case ExampleId::Ex3: rule = "n/10"; break;
                    case ExampleId::Ex4: rule = "sqrt(n)/10"; break;
                    case ExampleId::Logistic: rule = "3"; break;
                    case ExampleId::Square2D: rule = "10"; break;
                }
            }
            auto [latent, kernel] = make_model(id, gen_n, rule);
            const LatentSample lat = sample_latents(latent, gen_n, seed);
            const SparseGraph g = sample_graph(lat, kernel, gen_loops, derive_stream(seed, 1), threads);
            save_edge_list(out_path(out_dir, gen_out), g,
                           {{"model", gen_example},
                            {"scale_rule", rule},
                            {"n", std::to_string(gen_n)},
                            {"seed", std::to_string(seed)}});
            if (!gen_latents_out.empty()) {
                CsvWriter csv(out_path(out_dir, gen_latents_out), {"node", "x1", "x2", "x3"});
                for (int i = 0; i < gen_n; ++i) {
                    csv.field(static_cast<long long>(i));
                    for (int c = 0; c < 3; ++c)
                        csv.field(c < latent.ambient_dim ? lat.positions(i, c) : 0.0);
                    csv.end_row();
                }
            }
            std::cout << "generated " << g.num_nodes() << " nodes, " << g.edge_count()
                      << " edges -> " << out_path(out_dir, gen_out) << "\n";
        } else if (*st) {
            const SparseGraph g = load_edge_list(st_graph);
            const GraphStats s = graph_stats(g, threads);
            CsvWriter csv(out_path(out_dir, st_out),
                          {"n", "avg_degree", "triangles", "triangle_density",
                           "connected_triples", "clustering_coefficient", "max_degree"});
            csv.field(static_cast<long long>(s.n))
                .field(s.avg_degree)
                .field(s.triangle_count)
                .field(s.triangle_density)
                .field(s.connected_triples)
                .field(s.clustering_coefficient)
                .field(static_cast<long long>(s.degree_histogram.empty()
                                                  ? 0
                                                  : s.degree_histogram.size() - 1));
            csv.end_row();
            if (!st_dims.empty() && !st_curve_out.empty()) {
                const RecoveryCurve curve = triangle_recovery_curve(g, st_dims, st_resamples, seed, threads);
                CsvWriter ccsv(out_path(out_dir, st_curve_out), {"x", "series", "value"});
                for (const auto& pt : curve.points)
                    ccsv.field(static_cast<long long>(pt.d))
                        .field(std::string("percent_triangles"))
                        .field(pt.mean_percent),
                        ccsv.end_row();
            }
            if (st_cap >= 0 && !st_sub_out.empty()) {
                const InducedSubgraph sub = low_degree_subgraph(g, st_cap, st_peel);
                save_edge_list(out_path(out_dir, st_sub_out), sub.graph,
                               {{"low_degree_cap", std::to_string(st_cap)}});
            }
            std::cout << "n=" << s.n << " triangles=" << s.triangle_count
                      << " clustering=" << s.clustering_coefficient << "\n";
        } else if (*em) {
            const SparseGraph g = load_edge_list(em_graph);
            LanczosOptions opts;
            opts.threads = threads;
            const Embedding emb = em_kind == "lse" ? lse(g, em_d, opts) : ase(g, em_d, opts);
            save_embedding(out_path(out_dir, em_out), emb);
            if (em_scree > 0) {
                const Scree s = scree(g, em_scree, opts);
                CsvWriter csv(out_path(out_dir, em_scree_out.empty() ? "scree.csv" : em_scree_out),
                              {"rank", "value"});
                for (Eigen::Index i = 0; i < s.values.size(); ++i)
                    csv.field(static_cast<long long>(i + 1)).field(s.values(i)), csv.end_row();
            }
            std::cout << "embedded " << emb.rows.rows() << " nodes into d=" << em_d << "\n";
        } else if (*lo) {
            const SparseGraph g = load_edge_list(lo_graph);
            const Neighborhood nb = common_neighbor_neighborhood(g, lo_query, lo_k);
            const CoreSubgraph core = extract_core(g, nb.core_ids);
            const CorePeripherySlice slice = extract_cp_slice(g, nb.core_ids);
            save_edge_list(out_path(out_dir, lo_core_out), core.graph,
                           {{"query", std::to_string(lo_query)}, {"k", std::to_string(lo_k)}});
            save_slice(out_path(out_dir, lo_slice_out), slice.matrix,
                       {{"query", std::to_string(lo_query)}, {"k", std::to_string(lo_k)}});
            std::cout << "core " << core.graph.num_nodes() << " nodes, "
                      << core.graph.edge_count() << " edges; slice " << slice.matrix.rows << "x"
                      << slice.matrix.cols << "\n";
        } else if (*orc) {
            const ExampleId id = parse_example_id(orc_example);
            std::string rule = orc_scale.empty() ? "n/2000" : orc_scale;
            auto [latent, kernel] = make_model(id, orc_n, rule);
            const OracleModel om = oracle_model(latent, kernel);
            std::vector<OracleReport> reports;
            if (kernel.kind == KernelKind::GaussianRBF && latent.dist == LatentDist::TruncatedGaussian) {
                const OracleModel untrunc = oracle_model(latent, kernel, GaussianMeasure::Untruncated);
                reports.push_back(rho_closed_form(untrunc));
                reports.push_back(sum_lambda_cubed_closed_form(latent.scale));
                reports.push_back(sum_lambda_cubed_nystrom(untrunc, orc_nystrom));
                reports.push_back(sum_lambda_cubed_monte_carlo(untrunc, orc_mc, seed));
            }
            if (kernel.kind == KernelKind::CircleHeat) {
                const CircleRhoCandidates cand = circle_rho_candidates(latent.scale);
                OracleReport a{OracleQuantity::Rho, cand.bessel, OracleMethod::ClosedForm, 0.0,
                               om.name() + "[bessel]"};
                OracleReport b{OracleQuantity::Rho, cand.bessel_over_r, OracleMethod::ClosedForm,
                               0.0, om.name() + "[bessel/r]"};
                reports.push_back(a);
                reports.push_back(b);
            }
            RhoDeltaQuad rd = rho_delta_quadrature(om, orc_grid, orc_mc, seed);
            reports.push_back(rd.rho);
            reports.push_back(rd.delta);
            OracleReport delta_n = rd.delta;
            delta_n.value = delta_n_from_integrand(rd.delta.value, orc_n);
            delta_n.model += "[Delta_n,n=" + std::to_string(orc_n) + "]";
            reports.push_back(delta_n);
            reports.push_back(rho_monte_carlo(om, orc_mc, derive_stream(seed, 2)));
            reports.push_back(sum_lambda_cubed_nystrom(om, orc_nystrom));
            CsvWriter csv(out_path(out_dir, orc_out),
                          {"quantity", "value", "method", "error", "model"});
            write_oracle_rows(csv, reports);
            if (orc_sigmas.size() >= 4 && !orc_fit_out.empty()) {
                std::vector<double> ys;
                double claimed = 0.0;
                for (const double s : orc_sigmas) {
                    auto [l2, k2] = make_model(ExampleId::Ex1, 3, s);
                    if (orc_fit_quantity == "sum_lambda_cubed") {
                        ys.push_back(sum_lambda_cubed_closed_form(s).value);
                        claimed = -2.0;
                    } else {
                        ys.push_back(
                            rho_quadrature(oracle_model(l2, k2, GaussianMeasure::Untruncated), orc_grid)
                                .value);
                        claimed = -1.0;
                    }
                }
                const RateFit fit = rate_fit(orc_sigmas, ys, claimed, 0.05);
                CsvWriter fcsv(out_path(out_dir, orc_fit_out),
                               {"sigma", "value", "fit_value", "residual_log", "slope",
                                "intercept", "r2", "claimed_slope", "tolerance", "pass"});
                for (std::size_t i = 0; i < orc_sigmas.size(); ++i) {
                    const double fit_log = fit.intercept + fit.slope * std::log(orc_sigmas[i]);
                    fcsv.field(orc_sigmas[i])
                        .field(ys[i])
                        .field(std::exp(fit_log))
                        .field(std::log(ys[i]) - fit_log)
                        .field(fit.slope)
                        .field(fit.intercept)
                        .field(fit.r2)
                        .field(fit.claimed_slope)
                        .field(fit.tolerance)
                        .field(std::string(fit.pass ? "yes" : "no"));
                    fcsv.end_row();
                }
                std::cout << "rate fit slope=" << fit.slope << " (claimed " << fit.claimed_slope
                          << ") r2=" << fit.r2 << (fit.pass ? " PASS" : " FAIL") << "\n";
            }
            std::cout << "wrote " << reports.size() << " oracle rows -> "
                      << out_path(out_dir, orc_out) << "\n";
        } else if (*ex) {
            spec.seed = seed;
            spec.out_dir = out_dir;
            spec.threads = threads;
            const ExperimentResult res = run_experiment(spec);
            for (const auto& a : res.artifacts) std::cout << "artifact " << a << "\n";
            std::cout << "manifest " << res.manifest_path << "\n";
        } else if (*ing) {
            const EdgeListFormat fmt =
                ing_format == "csv" ? EdgeListFormat::Csv : EdgeListFormat::SnapTsv;
            const IngestResult res = ingest_edge_list(ing_in, fmt);
            save_edge_list(out_path(out_dir, ing_out), res.graph,
                           {{"source", ing_in},
                            {"self_loops_dropped", std::to_string(res.self_loops_dropped)},
                            {"duplicate_edges", std::to_string(res.duplicate_edges)}});
            const ComponentInfo comp = connected_components(res.graph);
            std::cout << "nodes " << res.graph.num_nodes() << " edges " << res.graph.edge_count()
                      << " duplicates " << res.duplicate_edges << " self_loops_dropped "
                      << res.self_loops_dropped << " largest_component " << comp.largest_size
                      << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
