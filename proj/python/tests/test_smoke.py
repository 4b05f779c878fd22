import math

import numpy as np
import pytest

import manigraph as mg


def test_model_and_generation():
    lat, ker = mg.make_model("Ex2", 2000, "n/2000")
    assert lat.scale == pytest.approx(1.0)
    assert lat.volume == pytest.approx(2 * math.pi)
    xs = mg.sample_latents(lat, 500, seed=7)
    assert xs.positions.shape == (500, 2)
    assert np.allclose(np.linalg.norm(xs.positions, axis=1), 1.0)
    g = mg.sample_graph(xs, ker, seed=8)
    assert g.n == 500
    # dense circle graph: clustering near the paper's 0.53
    st = mg.graph_stats(g)
    assert 0.4 < st.clustering_coefficient < 0.65


def test_triangles_and_subgraph():
    edges = np.array([[0, 1], [1, 2], [2, 0], [2, 3]], dtype=np.int32)
    g = mg.SparseGraph.from_edges(4, edges)
    assert mg.count_triangles(g) == 1
    sub, ids = mg.low_degree_subgraph(g, 1)
    assert ids == [3]


def test_spectral_roundtrip():
    lat, ker = mg.make_model("Ex2", 300, "n/2000")
    g = mg.sample_graph(mg.sample_latents(lat, 300, seed=1), ker, seed=2)
    emb = mg.ase(g, 3)
    assert emb.rows.shape == (300, 3)
    assert emb.values[0] >= abs(emb.values[1])
    resampled = mg.sample_graph_from_embedding(emb.rows, seed=3)
    assert resampled.n == 300
    sv = mg.scree(g, 5)
    assert all(sv[i] >= sv[i + 1] - 1e-9 for i in range(4))

    aligned, rot, resid = mg.procrustes_align(emb.rows, emb.rows[:, [1, 0, 2]])
    assert resid < 1e-8


def test_local_views():
    lat, ker = mg.make_model("Square2D", 800, "10")
    xs = mg.sample_latents(lat, 800, seed=5)
    g = mg.sample_graph(xs, ker, seed=6)
    nb = mg.common_neighbor_neighborhood(g, nb_query(g), 40)
    assert len(nb.core_ids) == 40
    core, ids = mg.extract_core(g, nb.core_ids)
    assert core.n == 40
    slice_ = mg.cp_slice_dense(g, nb.core_ids)
    assert slice_.shape == (40, 800)
    left, right, values = mg.slice_svd_dense(slice_, 3)
    assert left.shape == (40, 3) and right.shape == (800, 3)

    ball = mg.latent_ball_core(xs, nb.query, 1.5)
    assert nb.query in ball


def nb_query(g):
    degs = [g.degree(i) for i in range(g.n)]
    return int(np.argmax(degs))


def test_oracles():
    assert mg.gaussian_rho_closed_form(2.0) == pytest.approx(1 / 3)
    bessel, over_r = mg.circle_rho_candidates(1.0)
    assert bessel == pytest.approx(0.46576, abs=1e-4)
    lat, ker = mg.make_model("Ex1", 100, "1")
    rho = mg.rho_quadrature(lat, ker, grid=256, untruncated=True)
    assert rho == pytest.approx(1 / math.sqrt(3), rel=1e-6)
    cubes = mg.sum_lambda_cubed(lat, ker, "closed_form")
    assert cubes == pytest.approx(0.25, rel=1e-9)
    ny = mg.sum_lambda_cubed(lat, ker, "nystrom", grid=400, untruncated=True)
    assert ny == pytest.approx(cubes, rel=0.02)
    assert mg.graphon_delta_bound(1.0, 4) == pytest.approx(1.0)
    assert mg.hausdorff_gap_interval([0.5], 0.0, 1.0) == pytest.approx(0.5)


def test_edge_list_io(tmp_path):
    raw = tmp_path / "raw.txt"
    raw.write_text("# comment\n10 20\n20 10\n10 10\n20 30\n")
    g, id_map, loops, dups = mg.ingest_edge_list(str(raw))
    assert g.n == 3
    assert loops == 1
    assert dups == 1
    assert id_map == [10, 20, 30]

    out = tmp_path / "clean.txt"
    mg.save_edge_list(str(out), g)
    again = mg.load_edge_list(str(out))
    assert again.fingerprint() == g.fingerprint()
