#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "manigraph/experiments.hpp"
#include "manigraph/graph_io.hpp"
#include "manigraph/graphgen.hpp"
#include "manigraph/kernels.hpp"
#include "manigraph/local.hpp"
#include "manigraph/oracles.hpp"
#include "manigraph/spectral.hpp"
#include "manigraph/stats.hpp"

namespace py = pybind11;
using namespace manigraph;

namespace {

Eigen::MatrixX2i edges_matrix(const SparseGraph& g) {
    Eigen::MatrixX2i out(static_cast<Eigen::Index>(g.edge_count()), 2);
    Eigen::Index at = 0;
    for (NodeId u = 0; u < g.num_nodes(); ++u)
        for (const NodeId v : g.neighbors(u))
            if (v >= u) {
                out(at, 0) = u;
                out(at, 1) = v;
                ++at;
            }
    return out;
}

SparseGraph graph_from_edges(int n, const Eigen::Ref<const Eigen::MatrixX2i>& edges,
                             bool self_loops) {
    std::vector<std::pair<NodeId, NodeId>> e;
    e.reserve(static_cast<std::size_t>(edges.rows()));
    for (Eigen::Index i = 0; i < edges.rows(); ++i) e.emplace_back(edges(i, 0), edges(i, 1));
    return SparseGraph::from_edges(n, e, self_loops);
}

}  // namespace

PYBIND11_MODULE(manigraph, m) {
    m.doc() = "sparse triangle-dense random graphs on latent manifolds";

    py::class_<SparseGraph>(m, "SparseGraph")
        .def_static("from_edges", &graph_from_edges, py::arg("n"), py::arg("edges"),
                    py::arg("self_loops") = false)
        .def_property_readonly("n", &SparseGraph::num_nodes)
        .def_property_readonly("edge_count", &SparseGraph::edge_count)
        .def("degree", &SparseGraph::degree)
        .def("has_edge", &SparseGraph::has_edge)
        .def("edges", &edges_matrix)
        .def("fingerprint", &SparseGraph::fingerprint);

    py::class_<LatentModel>(m, "LatentModel")
        .def_readonly("dim", &LatentModel::dim)
        .def_readonly("ambient_dim", &LatentModel::ambient_dim)
        .def_readonly("scale", &LatentModel::scale)
        .def_readonly("truncation", &LatentModel::truncation)
        .def_readonly("volume", &LatentModel::volume);
    py::class_<KernelModel>(m, "KernelModel")
        .def("evaluate", [](const KernelModel& k, const VectorXd& x, const VectorXd& y) {
            return k.evaluate(x.data(), y.data(), static_cast<int>(x.size()));
        });
    py::class_<LatentSample>(m, "LatentSample")
        .def_readonly("positions", &LatentSample::positions)
        .def_readonly("seed", &LatentSample::seed);

    m.def(
        "make_model",
        [](const std::string& example, int n, const std::string& scale_rule) {
            return make_model(parse_example_id(example), n, scale_rule);
        },
        py::arg("example"), py::arg("n"), py::arg("scale_rule"));
    m.def("make_graphon_constant", &make_graphon_constant, py::arg("rho"));
    m.def("sample_latents", &sample_latents, py::arg("model"), py::arg("n"), py::arg("seed"));
    m.def("sample_graph", &sample_graph, py::arg("latents"), py::arg("kernel"),
          py::arg("self_loops") = false, py::arg("seed") = 1, py::arg("threads") = 0);
    m.def(
        "sample_graph_from_embedding",
        [](const MatrixXd& rows, std::uint64_t seed) {
            return sample_graph_from_embedding(rows, seed);
        },
        py::arg("rows"), py::arg("seed"));

    m.def("count_triangles", &count_triangles, py::arg("graph"), py::arg("threads") = 0);
    py::class_<GraphStats>(m, "GraphStats")
        .def_readonly("n", &GraphStats::n)
        .def_readonly("avg_degree", &GraphStats::avg_degree)
        .def_readonly("triangle_count", &GraphStats::triangle_count)
        .def_readonly("triangle_density", &GraphStats::triangle_density)
        .def_readonly("connected_triples", &GraphStats::connected_triples)
        .def_readonly("clustering_coefficient", &GraphStats::clustering_coefficient)
        .def_readonly("degree_histogram", &GraphStats::degree_histogram);
    m.def("graph_stats", &graph_stats, py::arg("graph"), py::arg("threads") = 0);
    m.def(
        "low_degree_subgraph",
        [](const SparseGraph& g, NodeId c, bool peel) {
            InducedSubgraph s = low_degree_subgraph(g, c, peel);
            return py::make_tuple(std::move(s.graph), std::move(s.ids));
        },
        py::arg("graph"), py::arg("cap"), py::arg("peel") = false);

    py::class_<Embedding>(m, "Embedding")
        .def_readonly("rows", &Embedding::rows)
        .def_readonly("values", &Embedding::values)
        .def_readonly("node_ids", &Embedding::node_ids)
        .def_property_readonly("kind",
                               [](const Embedding& e) { return embedding_kind_name(e.kind); });
    m.def(
        "ase", [](const SparseGraph& g, int d) { return ase(g, d); }, py::arg("graph"),
        py::arg("d"));
    m.def(
        "lse", [](const SparseGraph& g, int d) { return lse(g, d); }, py::arg("graph"),
        py::arg("d"));
    m.def(
        "scree", [](const SparseGraph& g, int k) { return scree(g, k).values; }, py::arg("graph"),
        py::arg("top"));
    m.def(
        "procrustes_align",
        [](const MatrixXd& source, const MatrixXd& target) {
            ProcrustesResult r = procrustes_align(source, target);
            return py::make_tuple(std::move(r.aligned), std::move(r.rotation), r.residual);
        },
        py::arg("source"), py::arg("target"));

    py::class_<Neighborhood>(m, "Neighborhood")
        .def_readonly("query", &Neighborhood::query)
        .def_readonly("core_ids", &Neighborhood::core_ids)
        .def_readonly("score", &Neighborhood::score);
    m.def("common_neighbor_neighborhood", &common_neighbor_neighborhood, py::arg("graph"),
          py::arg("query"), py::arg("k"));
    m.def(
        "extract_core",
        [](const SparseGraph& g, const std::vector<NodeId>& ids) {
            CoreSubgraph c = extract_core(g, ids);
            return py::make_tuple(std::move(c.graph), std::move(c.ids));
        },
        py::arg("graph"), py::arg("core_ids"));
    m.def(
        "cp_slice_dense",
        [](const SparseGraph& g, const std::vector<NodeId>& ids) {
            return extract_cp_slice(g, ids).matrix.dense();
        },
        py::arg("graph"), py::arg("core_ids"));
    m.def(
        "slice_svd_dense",
        [](const MatrixXd& slice, int d) {
            auto [l, r] = slice_svd(slice, d);
            return py::make_tuple(std::move(l.rows), std::move(r.rows), l.values);
        },
        py::arg("slice"), py::arg("d"));
    m.def("latent_ball_core",
          py::overload_cast<const LatentSample&, NodeId, double>(&latent_ball_core),
          py::arg("latents"), py::arg("center"), py::arg("radius"));

    m.def("rbf_eigenvalues", &rbf_eigenvalues, py::arg("sigma"), py::arg("k"));
    m.def("gaussian_rho_closed_form", &gaussian_rho_closed_form, py::arg("sigma"));
    m.def(
        "circle_rho_candidates",
        [](double r) {
            const CircleRhoCandidates c = circle_rho_candidates(r);
            return py::make_tuple(c.bessel, c.bessel_over_r);
        },
        py::arg("r"));
    m.def("graphon_delta_bound", &graphon_delta_bound, py::arg("rho"), py::arg("n"));
    m.def("hausdorff_gap_interval", &hausdorff_gap_interval, py::arg("points"), py::arg("lo"),
          py::arg("hi"));
    m.def(
        "rho_quadrature",
        [](const LatentModel& lat, const KernelModel& ker, int grid, bool untruncated) {
            return rho_quadrature(oracle_model(lat, ker,
                                               untruncated ? GaussianMeasure::Untruncated
                                                           : GaussianMeasure::Truncated),
                                  grid)
                .value;
        },
        py::arg("latent"), py::arg("kernel"), py::arg("grid") = 256,
        py::arg("untruncated") = false);
    m.def(
        "sum_lambda_cubed",
        [](const LatentModel& lat, const KernelModel& ker, const std::string& method, int grid,
           std::size_t samples, std::uint64_t seed, bool untruncated) {
            const OracleModel om = oracle_model(
                lat, ker, untruncated ? GaussianMeasure::Untruncated : GaussianMeasure::Truncated);
            if (method == "closed_form") return sum_lambda_cubed_closed_form(lat.scale).value;
            if (method == "nystrom") return sum_lambda_cubed_nystrom(om, grid).value;
            if (method == "monte_carlo")
                return sum_lambda_cubed_monte_carlo(om, samples, seed).value;
            throw std::invalid_argument("method must be closed_form|nystrom|monte_carlo");
        },
        py::arg("latent"), py::arg("kernel"), py::arg("method"), py::arg("grid") = 600,
        py::arg("samples") = 200000, py::arg("seed") = 1, py::arg("untruncated") = false);

    m.def(
        "ingest_edge_list",
        [](const std::string& path, const std::string& format) {
            IngestResult r = ingest_edge_list(
                path, format == "csv" ? EdgeListFormat::Csv : EdgeListFormat::SnapTsv);
            return py::make_tuple(std::move(r.graph), std::move(r.id_map), r.self_loops_dropped,
                                  r.duplicate_edges);
        },
        py::arg("path"), py::arg("format") = "snap");
    m.def("save_edge_list",
          [](const std::string& path, const SparseGraph& g) { save_edge_list(path, g); });
    m.def("load_edge_list", &load_edge_list, py::arg("path"));
}
