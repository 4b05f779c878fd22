#pragma once

#include "manigraph/common.hpp"
#include "manigraph/kernels.hpp"
#include "manigraph/sparse_graph.hpp"

#include <string>
#include <vector>

namespace manigraph {

// Experiment driver configuration. Zero / empty fields take the
// experiment's desk-scale defaults; --full-scale switches to the sizes the
// figures were produced at (slow).
struct ExperimentSpec {
    std::string name;
    std::string out_dir = ".";
    std::uint64_t seed = 1;
    int threads = 0;
    bool full_scale = false;

    int n = 0;
    int seeds_count = 0;
    int resamples = 0;
    int k_neighborhood = 0;
    int scree_top = 0;
    int feature_dim = 0;  // fig1 manifold truncation K (odd, >= 3)
    std::vector<int> dims;
    std::string graph_path;  // fig3: embed this edge list instead of a planted graph
};

struct ExperimentResult {
    std::vector<std::string> artifacts;  // CSV paths
    std::string manifest_path;
};

extern const std::vector<std::string> kExperimentNames;

ExperimentResult run_experiment(const ExperimentSpec& spec);

// ---- building blocks shared with the test suites ----

struct ConstantRegimeRow {
    ExampleId example;
    int n = 0;
    double mean_degree = 0.0, stderr_degree = 0.0;
    double mean_delta = 0.0, stderr_delta = 0.0;
};
std::vector<ConstantRegimeRow> constant_regime_table(const std::vector<int>& ns, int seeds,
                                                     std::uint64_t seed, int threads = 0);

struct Fig2SeedResult {
    VectorXd slice_scree;       // leading singular values of the C-P slice
    double slice_s3_over_s4 = 0.0;
    double core_recovery_pct = 0.0;  // at d = d_check
    double full_recovery_pct = 0.0;
    NodeId query = 0;
    std::size_t core_triangles = 0;
    std::size_t full_triangles = 0;
};
Fig2SeedResult fig2_seed_run(int n, double half_width, int k, int d_check, int resamples,
                             std::uint64_t seed, int threads = 0);

struct GraphonCheckRow {
    double rho = 0.0;
    int seed_index = 0;
    std::size_t triangles = 0;
    double delta_hat = 0.0;
    double bound = 0.0;
};
std::vector<GraphonCheckRow> graphon_check_runs(double rho, int n, int seeds, std::uint64_t seed,
                                                int threads = 0);

struct Fig3Params {
    std::vector<int> global_dims{5, 25, 100};
    std::vector<int> local_dims{5, 25};
    int neighborhoods = 10;
    int k = 500;
    int resamples = 10;
    std::vector<NodeId> degree_caps{5, 10, 15, 20, 25, 30, 40, 50, 75, 100};
    std::uint64_t seed = 1;
    int threads = 0;
};
struct Fig3Result {
    std::vector<std::string> artifacts;
};
Fig3Result fig3_low_degree_recovery(const SparseGraph& g, const Fig3Params& params,
                                    const std::string& out_dir);

// mean / sample-standard-error over a vector (ddof = 1)
struct MeanStderr {
    double mean = 0.0;
    double stderr_mean = 0.0;
};
MeanStderr mean_stderr(const std::vector<double>& xs);

}  // namespace manigraph
