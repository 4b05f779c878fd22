#include "manigraph/experiments.hpp"

#include "manigraph/csv.hpp"
#include "manigraph/graph_io.hpp"
#include "manigraph/graphgen.hpp"
#include "manigraph/local.hpp"
#include "manigraph/oracles.hpp"
#include "manigraph/spectral.hpp"
#include "manigraph/stats.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace manigraph {

const std::vector<std::string> kExperimentNames = {
    "fig1_manifold",   "fig2_local_vs_global",    "fig3_low_degree",
    "graphon_check",   "appendix_constant_regime", "appendix_histograms",
};

MeanStderr mean_stderr(const std::vector<double>& xs) {
    MeanStderr ms;
    if (xs.empty()) return ms;
    double sum = 0.0;
    for (const double x : xs) sum += x;
    ms.mean = sum / static_cast<double>(xs.size());
    if (xs.size() < 2) return ms;
    double ss = 0.0;
    for (const double x : xs) ss += (x - ms.mean) * (x - ms.mean);
    ms.stderr_mean = std::sqrt(ss / (static_cast<double>(xs.size() - 1)) /
                               static_cast<double>(xs.size()));
    return ms;
}

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Manifest {
    std::string experiment;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<std::string> artifacts;
    std::vector<std::pair<std::string, double>> runtimes_s;

    void write(const std::string& path) const {
        std::ofstream out(path);
        if (!out) fail("manifest: cannot open " + path);
        out << "experiment " << experiment << "\n";
        out << "seed " << seed << "\n";
        out << "library manigraph 0.1.0\n";
        for (const auto& [k, v] : params) out << "param " << k << " " << v << "\n";
        for (const auto& a : artifacts) {
            std::error_code ec;
            const auto size = fs::file_size(a, ec);
            out << "artifact " << a << " bytes " << (ec ? 0 : size) << "\n";
        }
        for (const auto& [k, v] : runtimes_s) out << "runtime_s " << k << " " << format_double(v)
                                                  << "\n";
    }
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string join_path(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

double nonloop_avg_degree(const SparseGraph& g) {
    // 2 * edges / n with self-loops excluded
    const double loops = static_cast<double>(g.self_loop_count());
    return (2.0 * (static_cast<double>(g.edge_count()) - loops)) /
           static_cast<double>(g.num_nodes());
}

// Deterministic query choice: a random node with degree at least the median.
NodeId pick_query_node(const SparseGraph& g, std::uint64_t seed) {
    std::vector<NodeId> degs(static_cast<std::size_t>(g.num_nodes()));
    for (NodeId i = 0; i < g.num_nodes(); ++i) degs[static_cast<std::size_t>(i)] = g.degree(i);
    std::vector<NodeId> sorted = degs;
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    const NodeId median = sorted[sorted.size() / 2];
    Rng rng(derive_stream(seed, 0x9e97));
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const NodeId cand = static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(g.num_nodes())));
        if (degs[static_cast<std::size_t>(cand)] >= median) return cand;
    }
    return 0;
}

double recovery_percent(const Embedding& emb, std::size_t source_triangles, int resamples,
                        std::uint64_t seed, int threads) {
    double acc = 0.0;
    for (int rep = 0; rep < resamples; ++rep) {
        const SparseGraph rg =
            sample_graph_from_embedding(emb, derive_stream(seed, static_cast<std::uint64_t>(rep)), threads);
        acc += static_cast<double>(count_triangles(rg, threads));
    }
    return 100.0 * (acc / resamples) / static_cast<double>(source_triangles);
}

}  // namespace

std::vector<ConstantRegimeRow> constant_regime_table(const std::vector<int>& ns, int seeds,
                                                     std::uint64_t seed, int threads) {
    std::vector<ConstantRegimeRow> rows;
    for (const ExampleId ex : {ExampleId::Ex1, ExampleId::Ex2}) {
        const std::string rule = ex == ExampleId::Ex1 ? "n/20" : "n/50";
        for (const int n : ns) {
            auto [latent, kernel] = make_model(ex, n, rule);
            std::vector<double> degrees, deltas;
            for (int s = 0; s < seeds; ++s) {
                const std::uint64_t run_seed = derive_stream(
                    derive_stream(derive_stream(seed, static_cast<std::uint64_t>(ex)), static_cast<std::uint64_t>(n)),
                    static_cast<std::uint64_t>(s));
                const LatentSample lat = sample_latents(latent, n, run_seed);
                const SparseGraph g = sample_graph(lat, kernel, false, derive_stream(run_seed, 1), threads);
                degrees.push_back(nonloop_avg_degree(g));
                deltas.push_back(static_cast<double>(count_triangles(g, threads)) / n);
            }
            const MeanStderr md = mean_stderr(degrees), mt = mean_stderr(deltas);
            rows.push_back({ex, n, md.mean, md.stderr_mean, mt.mean, mt.stderr_mean});
        }
    }
    return rows;
}

Fig2SeedResult fig2_seed_run(int n, double half_width, int k, int d_check, int resamples,
                             std::uint64_t seed, int threads) {
    auto [latent, kernel] = make_model(ExampleId::Square2D, n, half_width);
    const LatentSample lat = sample_latents(latent, n, seed);
    const SparseGraph g = sample_graph(lat, kernel, false, derive_stream(seed, 1), threads);

    Fig2SeedResult out;
    out.full_triangles = count_triangles(g, threads);
    out.query = pick_query_node(g, derive_stream(seed, 2));

    const Neighborhood nb = common_neighbor_neighborhood(g, out.query, k);
    const CoreSubgraph core = extract_core(g, nb.core_ids);
    out.core_triangles = count_triangles(core.graph, threads);

    const CorePeripherySlice slice = extract_cp_slice(g, nb.core_ids);
    LanczosOptions opts;
    opts.threads = threads;
    const int top = std::min<int>(10, static_cast<int>(slice.matrix.rows));
    out.slice_scree = scree(slice.matrix, top, opts).values;
    out.slice_s3_over_s4 = out.slice_scree(2) / out.slice_scree(3);

    const Embedding core_emb = ase(core.graph, d_check, opts);
    out.core_recovery_pct = recovery_percent(core_emb, out.core_triangles, resamples,
                                             derive_stream(seed, 3), threads);
    const Embedding full_emb = ase(g, d_check, opts);
    out.full_recovery_pct = recovery_percent(full_emb, out.full_triangles, resamples,
                                             derive_stream(seed, 4), threads);
    return out;
}

std::vector<GraphonCheckRow> graphon_check_runs(double rho, int n, int seeds, std::uint64_t seed,
                                                int threads) {
    auto [latent, kernel] = make_graphon_constant(rho);
    const double bound = graphon_delta_bound(rho, n);
    std::vector<GraphonCheckRow> rows;
    for (int s = 0; s < seeds; ++s) {
        const std::uint64_t run_seed =
            derive_stream(derive_stream(seed, static_cast<std::uint64_t>(s)), 0xb0a7);
        const LatentSample lat = sample_latents(latent, n, run_seed);
        const SparseGraph g = sample_graph(lat, kernel, false, derive_stream(run_seed, 1), threads);
        const std::size_t t = count_triangles(g, threads);
        rows.push_back({rho, s, t, static_cast<double>(t) / n, bound});
    }
    return rows;
}

// ---------------------------------------------------------------------------
// fig3: low-degree triangle recovery

namespace {

// triangle density of the degree-capped subgraphs, for a fixed cap grid;
// emits both normalizations (subgraph size and host size)
struct CapCurve {
    std::vector<double> delta_sub;   // T(sub) / n_sub
    std::vector<double> delta_host;  // T(sub) / n_host
};

CapCurve cap_curve(const SparseGraph& g, const std::vector<NodeId>& caps, int threads) {
    CapCurve c;
    for (const NodeId cap : caps) {
        const InducedSubgraph sub = low_degree_subgraph(g, cap);
        const std::size_t t = count_triangles(sub.graph, threads);
        const double nsub = std::max<std::size_t>(1, static_cast<std::size_t>(sub.graph.num_nodes()));
        c.delta_sub.push_back(static_cast<double>(t) / static_cast<double>(nsub));
        c.delta_host.push_back(static_cast<double>(t) / static_cast<double>(g.num_nodes()));
    }
    return c;
}

CapCurve mean_resampled_cap_curve(const Embedding& emb, const std::vector<NodeId>& caps,
                                  int resamples, std::uint64_t seed, int threads) {
    CapCurve acc;
    acc.delta_sub.assign(caps.size(), 0.0);
    acc.delta_host.assign(caps.size(), 0.0);
    for (int rep = 0; rep < resamples; ++rep) {
        const SparseGraph rg = sample_graph_from_embedding(
            emb, derive_stream(seed, static_cast<std::uint64_t>(rep)), threads);
        const CapCurve one = cap_curve(rg, caps, threads);
        for (std::size_t i = 0; i < caps.size(); ++i) {
            acc.delta_sub[i] += one.delta_sub[i];
            acc.delta_host[i] += one.delta_host[i];
        }
    }
    for (auto& v : acc.delta_sub) v /= resamples;
    for (auto& v : acc.delta_host) v /= resamples;
    return acc;
}

double percentile(std::vector<double> xs, double p) {
    if (xs.empty()) return 0.0;
    std::sort(xs.begin(), xs.end());
    const double idx = p * (static_cast<double>(xs.size()) - 1.0);
    const std::size_t lo = static_cast<std::size_t>(std::floor(idx));
    const std::size_t hi = std::min(xs.size() - 1, lo + 1);
    const double frac = idx - std::floor(idx);
    return xs[lo] * (1.0 - frac) + xs[hi] * frac;
}

}  // namespace

Fig3Result fig3_low_degree_recovery(const SparseGraph& g, const Fig3Params& p,
                                    const std::string& out_dir) {
    require(!p.global_dims.empty() && !p.local_dims.empty(), "fig3: dims must be non-empty");
    if (count_triangles(g, p.threads) == 0)
        throw std::runtime_error("fig3_low_degree_recovery: graph has no triangles");
    fs::create_directories(out_dir);
    Fig3Result result;
    LanczosOptions opts;
    opts.threads = p.threads;

    // global: true curve plus ASE recoveries
    {
        const std::string path = join_path(out_dir, "fig3_global.csv");
        CsvWriter csv(path, {"series", "c", "delta_sub_n", "delta_full_n"});
        const CapCurve truth = cap_curve(g, p.degree_caps, p.threads);
        for (std::size_t i = 0; i < p.degree_caps.size(); ++i)
            csv.field(std::string("true"))
                .field(static_cast<long long>(p.degree_caps[i]))
                .field(truth.delta_sub[i])
                .field(truth.delta_host[i]),
                csv.end_row();
        for (const int d : p.global_dims) {
            const Embedding emb = ase(g, d, opts);
            const CapCurve rec = mean_resampled_cap_curve(
                emb, p.degree_caps, p.resamples,
                derive_stream(p.seed, 0x91 + static_cast<std::uint64_t>(d)), p.threads);
            for (std::size_t i = 0; i < p.degree_caps.size(); ++i)
                csv.field("ase_d" + std::to_string(d))
                    .field(static_cast<long long>(p.degree_caps[i]))
                    .field(rec.delta_sub[i])
                    .field(rec.delta_host[i]),
                    csv.end_row();
        }
        result.artifacts.push_back(path);
    }

    // local: sampled neighborhoods, core embeddings, percentile bands
    {
        const std::string raw_path = join_path(out_dir, "fig3_local_raw.csv");
        CsvWriter raw(raw_path, {"neighborhood", "query", "series", "c", "delta_sub_n",
                                 "delta_core_n"});
        // bands: map (series, cap index) -> values over neighborhoods
        std::vector<std::string> series_names;
        std::vector<std::vector<std::vector<double>>> series_values;  // [series][cap][nbhd]
        auto series_slot = [&](const std::string& name) -> std::vector<std::vector<double>>& {
            for (std::size_t i = 0; i < series_names.size(); ++i)
                if (series_names[i] == name) return series_values[i];
            series_names.push_back(name);
            series_values.emplace_back(p.degree_caps.size());
            return series_values.back();
        };

        for (int nbhd = 0; nbhd < p.neighborhoods; ++nbhd) {
            const std::uint64_t nb_seed =
                derive_stream(derive_stream(p.seed, 0x10ca1), static_cast<std::uint64_t>(nbhd));
            const NodeId query = pick_query_node(g, nb_seed);
            const int k_eff = std::min<int>(p.k, g.num_nodes());
            const Neighborhood nb = common_neighbor_neighborhood(g, query, k_eff);
            const CoreSubgraph core = extract_core(g, nb.core_ids);

            auto emit = [&](const std::string& series, const CapCurve& curve) {
                auto& slot = series_slot(series);
                for (std::size_t i = 0; i < p.degree_caps.size(); ++i) {
                    raw.field(static_cast<long long>(nbhd))
                        .field(static_cast<long long>(query))
                        .field(series)
                        .field(static_cast<long long>(p.degree_caps[i]))
                        .field(curve.delta_sub[i])
                        .field(curve.delta_host[i]);
                    raw.end_row();
                    slot[i].push_back(curve.delta_host[i]);
                }
            };

            emit("true", cap_curve(core.graph, p.degree_caps, p.threads));
            if (count_triangles(core.graph, p.threads) == 0) continue;
            for (const int d : p.local_dims) {
                if (d > core.graph.num_nodes()) continue;
                const Embedding emb = ase(core.graph, d, opts);
                emit("core_d" + std::to_string(d),
                     mean_resampled_cap_curve(emb, p.degree_caps, p.resamples,
                                              derive_stream(nb_seed, 0xd0 + static_cast<std::uint64_t>(d)),
                                              p.threads));
            }
        }
        result.artifacts.push_back(raw_path);

        const std::string bands_path = join_path(out_dir, "fig3_local_bands.csv");
        CsvWriter bands(bands_path, {"series", "c", "p25", "p50", "p75"});
        for (std::size_t s = 0; s < series_names.size(); ++s)
            for (std::size_t i = 0; i < p.degree_caps.size(); ++i)
                bands.field(series_names[s])
                    .field(static_cast<long long>(p.degree_caps[i]))
                    .field(percentile(series_values[s][i], 0.25))
                    .field(percentile(series_values[s][i], 0.50))
                    .field(percentile(series_values[s][i], 0.75)),
                    bands.end_row();
        result.artifacts.push_back(bands_path);
    }
    return result;
}

// ---------------------------------------------------------------------------
// experiment dispatch

namespace {

ExperimentResult run_constant_regime(const ExperimentSpec& spec, Manifest& mf) {
    const std::vector<int> ns = spec.n > 0 ? std::vector<int>{spec.n}
                                           : std::vector<int>{500, 1000, 2000, 3000};
    const int seeds = spec.seeds_count > 0 ? spec.seeds_count : 20;
    mf.params.emplace_back("seeds", std::to_string(seeds));
    const auto t0 = Clock::now();
    const auto rows = constant_regime_table(ns, seeds, spec.seed, spec.threads);
    mf.runtimes_s.emplace_back("simulation", seconds_since(t0));

    const std::string path = join_path(spec.out_dir, "constant_regime_summary.csv");
    CsvWriter csv(path, {"example", "n", "mean_n_rho_hat", "stderr_n_rho_hat", "mean_delta_hat",
                         "stderr_delta_hat"});
    for (const auto& r : rows)
        csv.field(example_id_name(r.example))
            .field(static_cast<long long>(r.n))
            .field(r.mean_degree)
            .field(r.stderr_degree)
            .field(r.mean_delta)
            .field(r.stderr_delta),
            csv.end_row();
    return {{path}, {}};
}

ExperimentResult run_histograms(const ExperimentSpec& spec, Manifest& mf) {
    const int n = spec.n > 0 ? spec.n : 500;
    const int samples = spec.seeds_count > 0 ? spec.seeds_count : 100;
    mf.params.emplace_back("n", std::to_string(n));
    mf.params.emplace_back("samples", std::to_string(samples));

    const std::string runs_path = join_path(spec.out_dir, "histogram_runs.csv");
    const std::string summary_path = join_path(spec.out_dir, "histogram_summary.csv");
    CsvWriter runs(runs_path, {"example", "sample", "n_rho_hat", "delta_hat"});
    CsvWriter summary(summary_path, {"example", "mean_n_rho_hat", "stderr_n_rho_hat",
                                     "mean_delta_hat", "stderr_delta_hat"});
    const auto t0 = Clock::now();
    for (const ExampleId ex : {ExampleId::Ex1, ExampleId::Ex2}) {
        auto [latent, kernel] = make_model(ex, n, ex == ExampleId::Ex1 ? "n/20" : "n/50");
        std::vector<double> degrees, deltas;
        for (int s = 0; s < samples; ++s) {
            const std::uint64_t run_seed = derive_stream(
                derive_stream(spec.seed, static_cast<std::uint64_t>(ex)), static_cast<std::uint64_t>(s));
            const LatentSample lat = sample_latents(latent, n, run_seed);
            const SparseGraph g =
                sample_graph(lat, kernel, false, derive_stream(run_seed, 1), spec.threads);
            const double deg = nonloop_avg_degree(g);
            const double delta = static_cast<double>(count_triangles(g, spec.threads)) / n;
            degrees.push_back(deg);
            deltas.push_back(delta);
            runs.field(example_id_name(ex))
                .field(static_cast<long long>(s))
                .field(deg)
                .field(delta);
            runs.end_row();
        }
        const MeanStderr md = mean_stderr(degrees), mt = mean_stderr(deltas);
        summary.field(example_id_name(ex))
            .field(md.mean)
            .field(md.stderr_mean)
            .field(mt.mean)
            .field(mt.stderr_mean);
        summary.end_row();
    }
    mf.runtimes_s.emplace_back("simulation", seconds_since(t0));
    return {{runs_path, summary_path}, {}};
}

ExperimentResult run_graphon_check(const ExperimentSpec& spec, Manifest& mf) {
    const int n = spec.n > 0 ? spec.n : 1000;
    const int seeds = spec.seeds_count > 0 ? spec.seeds_count : 20;
    mf.params.emplace_back("n", std::to_string(n));
    mf.params.emplace_back("seeds", std::to_string(seeds));
    const std::vector<std::pair<std::string, double>> rhos = {
        {"n^-1", 1.0 / n}, {"n^-2/3", std::pow(double(n), -2.0 / 3.0)}};

    const std::string runs_path = join_path(spec.out_dir, "graphon_runs.csv");
    const std::string summary_path = join_path(spec.out_dir, "graphon_summary.csv");
    CsvWriter runs(runs_path, {"rho_rule", "rho", "n", "seed", "triangles", "delta_hat", "bound"});
    CsvWriter summary(summary_path,
                      {"rho_rule", "rho", "n", "mean_delta_hat", "stderr_delta_hat", "bound",
                       "mean_below_bound_plus_3se"});
    const auto t0 = Clock::now();
    for (const auto& [label, rho] : rhos) {
        const auto rows = graphon_check_runs(rho, n, seeds, spec.seed, spec.threads);
        std::vector<double> deltas;
        for (const auto& r : rows) {
            deltas.push_back(r.delta_hat);
            runs.field(label)
                .field(rho)
                .field(static_cast<long long>(n))
                .field(static_cast<long long>(r.seed_index))
                .field(r.triangles)
                .field(r.delta_hat)
                .field(r.bound);
            runs.end_row();
        }
        const MeanStderr ms = mean_stderr(deltas);
        const double bound = graphon_delta_bound(rho, n);
        summary.field(label)
            .field(rho)
            .field(static_cast<long long>(n))
            .field(ms.mean)
            .field(ms.stderr_mean)
            .field(bound)
            .field(std::string(ms.mean <= bound + 3.0 * ms.stderr_mean ? "yes" : "no"));
        summary.end_row();
    }
    mf.runtimes_s.emplace_back("simulation", seconds_since(t0));
    return {{runs_path, summary_path}, {}};
}

ExperimentResult run_fig1(const ExperimentSpec& spec, Manifest& mf) {
    const int n = spec.n > 0 ? spec.n : 2000;
    const int K = spec.feature_dim > 0 ? spec.feature_dim : 3;
    require(K >= 3 && K % 2 == 1, "fig1: feature_dim must be odd and >= 3");
    const int grid_points = 513;
    mf.params.emplace_back("n", std::to_string(n));
    mf.params.emplace_back("feature_dim", std::to_string(K));
    ExperimentResult res;
    const auto t0 = Clock::now();
    for (const ExampleId ex : {ExampleId::Ex1, ExampleId::Ex2}) {
        const std::string tag = ex == ExampleId::Ex1 ? "ex1" : "ex2";
        auto [latent, kernel] = make_model(ex, n, "n/2000");

        // the leading manifold coordinates along a fine parameter grid
        FeatureMap fmap = ex == ExampleId::Ex2
                              ? circle_feature_map(latent.scale, K)
                              : nystrom_features(latent, kernel, std::max(400, 4 * K), K).map;
        const std::string curve_path = join_path(spec.out_dir, "fig1_" + tag + "_manifold.csv");
        {
            std::vector<std::string> cols = {"param"};
            for (int c = 1; c <= K; ++c) cols.push_back("phi" + std::to_string(c));
            CsvWriter csv(curve_path, cols);
            for (int i = 0; i < grid_points; ++i) {
                double param = 0.0, pt[2];
                if (ex == ExampleId::Ex1) {
                    param = -latent.truncation +
                            2.0 * latent.truncation * i / (grid_points - 1);
                    pt[0] = param;
                } else {
                    param = -3.14159265358979323846 + 6.28318530717958647692 * i / (grid_points - 1);
                    pt[0] = latent.scale * std::cos(param);
                    pt[1] = latent.scale * std::sin(param);
                }
                const VectorXd phi = fmap.coordinates(pt, latent.ambient_dim);
                csv.field(param);
                for (int c = 0; c < K; ++c) csv.field(phi(c));
                csv.end_row();
            }
        }
        res.artifacts.push_back(curve_path);

        // spectral embedding of one simulated graph, aligned to the manifold
        const std::uint64_t ex_seed = derive_stream(spec.seed, static_cast<std::uint64_t>(ex));
        const LatentSample lat = sample_latents(latent, n, ex_seed);
        const SparseGraph g = sample_graph(lat, kernel, false, derive_stream(ex_seed, 1), spec.threads);
        LanczosOptions opts;
        opts.threads = spec.threads;
        const Embedding emb = ase(g, 3, opts);
        MatrixXd target(n, 3);
        double pt[2];
        for (int i = 0; i < n; ++i) {
            for (int c = 0; c < latent.ambient_dim; ++c) pt[c] = lat.positions(i, c);
            target.row(i) = fmap.coordinates(pt, latent.ambient_dim).head(3).transpose();
        }
        const ProcrustesResult aligned = procrustes_align(emb.rows, target);
        mf.params.emplace_back("procrustes_residual_" + tag, format_double(aligned.residual));

        const std::string emb_path = join_path(spec.out_dir, "fig1_" + tag + "_embedding.csv");
        {
            CsvWriter csv(emb_path, {"node", "param", "ase1", "ase2", "ase3"});
            for (int i = 0; i < n; ++i)
                csv.field(static_cast<long long>(i))
                    .field(lat.intrinsic_coordinate(i))
                    .field(aligned.aligned(i, 0))
                    .field(aligned.aligned(i, 1))
                    .field(aligned.aligned(i, 2)),
                    csv.end_row();
        }
        res.artifacts.push_back(emb_path);

        // intrinsic-coordinate histogram
        const std::string hist_path = join_path(spec.out_dir, "fig1_" + tag + "_hist.csv");
        {
            const int bins = 40;
            double lo = ex == ExampleId::Ex1 ? -latent.truncation : -3.14159265358979323846;
            double hi = -lo;
            std::vector<long long> counts(bins, 0);
            for (int i = 0; i < n; ++i) {
                const double x = lat.intrinsic_coordinate(i);
                int b = static_cast<int>((x - lo) / (hi - lo) * bins);
                b = std::clamp(b, 0, bins - 1);
                counts[static_cast<std::size_t>(b)] += 1;
            }
            CsvWriter csv(hist_path, {"bin_lo", "bin_hi", "count"});
            for (int b = 0; b < bins; ++b)
                csv.field(lo + (hi - lo) * b / bins)
                    .field(lo + (hi - lo) * (b + 1) / bins)
                    .field(counts[static_cast<std::size_t>(b)]),
                    csv.end_row();
        }
        res.artifacts.push_back(hist_path);
    }
    mf.runtimes_s.emplace_back("total", seconds_since(t0));
    return res;
}

ExperimentResult run_fig2(const ExperimentSpec& spec, Manifest& mf) {
    const int n = spec.n > 0 ? spec.n : (spec.full_scale ? 20000 : 5000);
    const int k = spec.k_neighborhood > 0 ? spec.k_neighborhood : (spec.full_scale ? 200 : 100);
    const int scree_top = spec.scree_top > 0 ? spec.scree_top : (spec.full_scale ? 100 : 60);
    const int resamples = spec.resamples > 0 ? spec.resamples : 10;
    const std::vector<int> dims =
        !spec.dims.empty() ? spec.dims : std::vector<int>{1, 2, 3, 4, 5, 6, 8, 10, 15, 20, 30, 50};
    mf.params.emplace_back("n", std::to_string(n));
    mf.params.emplace_back("k", std::to_string(k));
    mf.params.emplace_back("scree_top", std::to_string(scree_top));

    auto [latent, kernel] = make_model(ExampleId::Square2D, n, 10.0);
    const auto t0 = Clock::now();
    const LatentSample lat = sample_latents(latent, n, spec.seed);
    const SparseGraph g = sample_graph(lat, kernel, false, derive_stream(spec.seed, 1), spec.threads);
    const NodeId query = pick_query_node(g, derive_stream(spec.seed, 2));
    const Neighborhood nb = common_neighbor_neighborhood(g, query, std::min<int>(k, g.num_nodes()));
    const CoreSubgraph core = extract_core(g, nb.core_ids);
    const CorePeripherySlice slice = extract_cp_slice(g, nb.core_ids);
    mf.params.emplace_back("query", std::to_string(query));
    mf.runtimes_s.emplace_back("generation", seconds_since(t0));

    LanczosOptions opts;
    opts.threads = spec.threads;
    ExperimentResult res;

    // screes of the full graph, core, and core-periphery slice
    const auto t1 = Clock::now();
    const std::string scree_path = join_path(spec.out_dir, "fig2_scree.csv");
    {
        LanczosOptions full_opts = opts;
        full_opts.tol = 1e-8;  // interior bulk values converge slowly at 1e-10
        const Scree full = scree(g, std::min<int>(scree_top, g.num_nodes()), full_opts);
        const Scree core_s = scree(core.graph, std::min<int>(scree_top, core.graph.num_nodes()), opts);
        const Scree slice_s =
            scree(slice.matrix, std::min<int>(scree_top, static_cast<int>(slice.matrix.rows)), opts);
        CsvWriter csv(scree_path, {"series", "rank", "value"});
        auto emit = [&](const std::string& name, const Scree& s) {
            for (Eigen::Index i = 0; i < s.values.size(); ++i)
                csv.field(name).field(static_cast<long long>(i + 1)).field(s.values(i)),
                    csv.end_row();
        };
        emit("full", full);
        emit("core", core_s);
        emit("cp_slice", slice_s);
    }
    res.artifacts.push_back(scree_path);
    mf.runtimes_s.emplace_back("scree", seconds_since(t1));

    // triangle recovery against embedding dimension
    const auto t2 = Clock::now();
    const std::string rec_path = join_path(spec.out_dir, "fig2_recovery.csv");
    {
        CsvWriter csv(rec_path, {"series", "d", "percent_triangles"});
        const std::size_t t_full = count_triangles(g, spec.threads);
        const std::size_t t_core = count_triangles(core.graph, spec.threads);
        require(t_core > 0, "fig2: core has no triangles");
        std::vector<NodeId> core_cols = nb.core_ids;
        for (const int d : dims) {
            if (d <= core.graph.num_nodes()) {
                const Embedding ce = ase(core.graph, d, opts);
                csv.field(std::string("core"))
                    .field(static_cast<long long>(d))
                    .field(recovery_percent(ce, t_core, resamples,
                                            derive_stream(spec.seed, 0xc0 + static_cast<std::uint64_t>(d)),
                                            spec.threads));
                csv.end_row();
                // slice factorization resampling the core block
                auto [left, right] = slice_svd(slice.matrix, d, opts);
                MatrixXd right_core(core_cols.size(), right.rows.cols());
                for (std::size_t i = 0; i < core_cols.size(); ++i)
                    right_core.row(static_cast<Eigen::Index>(i)) =
                        right.rows.row(core_cols[i]);
                double acc = 0.0;
                for (int rep = 0; rep < resamples; ++rep) {
                    const SparseGraph rg = sample_graph_from_embedding(
                        left.rows, right_core, Pairing::LeftRight,
                        derive_stream(spec.seed, 0x51 + static_cast<std::uint64_t>(d) * 131 +
                                                     static_cast<std::uint64_t>(rep)),
                        spec.threads);
                    acc += static_cast<double>(count_triangles(rg, spec.threads));
                }
                csv.field(std::string("cp_slice"))
                    .field(static_cast<long long>(d))
                    .field(100.0 * (acc / resamples) / static_cast<double>(t_core));
                csv.end_row();
            }
            if (d <= g.num_nodes() && t_full > 0) {
                const Embedding fe = ase(g, d, opts);
                csv.field(std::string("full"))
                    .field(static_cast<long long>(d))
                    .field(recovery_percent(fe, t_full, resamples,
                                            derive_stream(spec.seed, 0xf0 + static_cast<std::uint64_t>(d)),
                                            spec.threads));
                csv.end_row();
            }
        }
    }
    res.artifacts.push_back(rec_path);
    mf.runtimes_s.emplace_back("recovery", seconds_since(t2));
    return res;
}

ExperimentResult run_fig3(const ExperimentSpec& spec, Manifest& mf) {
    SparseGraph g;
    if (!spec.graph_path.empty()) {
        IngestResult ing = ingest_edge_list(spec.graph_path, EdgeListFormat::SnapTsv);
        mf.params.emplace_back("graph", spec.graph_path);
        mf.params.emplace_back("ingested_nodes", std::to_string(ing.graph.num_nodes()));
        g = std::move(ing.graph);
    } else {
        const int n = spec.n > 0 ? spec.n : (spec.full_scale ? 12000 : 2000);
        auto [latent, kernel] = make_model(ExampleId::Square2D, n, 10.0);
        const LatentSample lat = sample_latents(latent, n, derive_stream(spec.seed, 0xf19));
        g = sample_graph(lat, kernel, false, derive_stream(spec.seed, 0xf3a), spec.threads);
        mf.params.emplace_back("graph", "planted square2d n=" + std::to_string(n));
    }
    Fig3Params p;
    p.seed = spec.seed;
    p.threads = spec.threads;
    if (spec.k_neighborhood > 0) p.k = spec.k_neighborhood;
    else if (!spec.full_scale) p.k = std::min<int>(500, g.num_nodes() / 4);
    if (spec.resamples > 0) p.resamples = spec.resamples;
    if (!spec.dims.empty()) {
        p.global_dims = spec.dims;
        p.local_dims = spec.dims;
    }
    if (spec.seeds_count > 0) p.neighborhoods = spec.seeds_count;
    if (spec.full_scale) {
        p.neighborhoods = 50;
        p.resamples = 100;
        p.global_dims = {5, 50, 100, 1000};
        p.local_dims = {5, 50};
    }
    mf.params.emplace_back("k", std::to_string(p.k));
    mf.params.emplace_back("neighborhoods", std::to_string(p.neighborhoods));
    const auto t0 = Clock::now();
    Fig3Result fr = fig3_low_degree_recovery(g, p, spec.out_dir);
    mf.runtimes_s.emplace_back("total", seconds_since(t0));
    return {fr.artifacts, {}};
}

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    require(std::find(kExperimentNames.begin(), kExperimentNames.end(), spec.name) !=
                kExperimentNames.end(),
            "run_experiment: unknown experiment '" + spec.name + "'");
    fs::create_directories(spec.out_dir);
    Manifest mf;
    mf.experiment = spec.name;
    mf.seed = spec.seed;

    ExperimentResult res;
    try {
        if (spec.name == "appendix_constant_regime") res = run_constant_regime(spec, mf);
        else if (spec.name == "appendix_histograms") res = run_histograms(spec, mf);
        else if (spec.name == "graphon_check") res = run_graphon_check(spec, mf);
        else if (spec.name == "fig1_manifold") res = run_fig1(spec, mf);
        else if (spec.name == "fig2_local_vs_global") res = run_fig2(spec, mf);
        else if (spec.name == "fig3_low_degree") res = run_fig3(spec, mf);
    } catch (const std::exception& e) {
        throw std::runtime_error("experiment '" + spec.name + "' failed: " + e.what());
    }

    mf.artifacts = res.artifacts;
    res.manifest_path = join_path(spec.out_dir, spec.name + "_manifest.txt");
    mf.write(res.manifest_path);
    return res;
}

}  // namespace manigraph
