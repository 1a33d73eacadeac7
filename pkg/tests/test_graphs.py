"""Graph density matrices and the rank-2 tabulation."""

import numpy as np
import pytest

from lroof import graphs, herm
from lroof.errors import InvalidInputError
from lroof.graphs import GridGraph
from lroof.herm import BipartiteShape, HermitianMatrix


def test_gridgraph_validation():
    with pytest.raises(InvalidInputError):
        GridGraph(rows=2, cols=2, edges=((0, 0),))
    with pytest.raises(InvalidInputError):
        GridGraph(rows=2, cols=2, edges=((0, 4),))
    with pytest.raises(InvalidInputError):
        GridGraph(rows=2, cols=2, edges=((0, 1), (1, 0)))


def test_laplacian_examples():
    g = GridGraph(rows=1, cols=2, edges=((0, 1),))
    assert np.array_equal(graphs.laplacian(g).entries.real, [[1, -1], [-1, 1]])
    g = GridGraph(rows=1, cols=3, edges=((0, 1), (1, 2)))
    assert np.array_equal(
        graphs.laplacian(g).entries.real, [[1, -1, 0], [-1, 2, -1], [0, -1, 1]]
    )
    g = GridGraph(rows=1, cols=3, edges=((0, 1), (1, 2), (0, 2)))
    lap = graphs.laplacian(g).entries.real
    assert np.array_equal(np.diag(lap), [2, 2, 2])
    assert np.allclose(lap @ np.ones(3), 0.0)
    with pytest.raises(InvalidInputError):
        graphs.laplacian(GridGraph(rows=2, cols=2, edges=()))


def test_density_matrix_examples():
    g = GridGraph(rows=1, cols=2, edges=((0, 1),))
    assert np.allclose(graphs.density_matrix(g).entries.real, [[0.5, -0.5], [-0.5, 0.5]])
    # two disjoint edges: eigenvalues {1/2, 1/2, 0, 0}, Q2 = 1/2
    g = GridGraph(rows=2, cols=2, edges=((0, 1), (2, 3)))
    rho = graphs.density_matrix(g)
    w, _ = herm.eigen_hermitian(rho)
    assert np.allclose(w, [0.5, 0.5, 0.0, 0.0], atol=1e-12)
    assert abs((np.trace(rho.entries).real ** 2 - np.vdot(rho.entries, rho.entries).real) - 0.5) <= 1e-12
    # path of 2 edges: eigenvalues {3/4, 1/4, 0}, Q2 = 3/8
    g = GridGraph(rows=1, cols=3, edges=((0, 1), (1, 2)))
    rho = graphs.density_matrix(g)
    w, _ = herm.eigen_hermitian(rho)
    assert np.allclose(w, [0.75, 0.25, 0.0], atol=1e-12)
    q2 = np.trace(rho.entries).real ** 2 - np.vdot(rho.entries, rho.entries).real
    assert abs(q2 - 0.375) <= 1e-12


def test_density_matrices_are_states_of_rank_two():
    for g in graphs.enumerate_rank2_graphs(2, 3):
        rho = graphs.density_matrix(g)
        assert abs(np.trace(rho.entries).real - 1.0) <= 1e-14
        assert herm.is_psd(rho)
        assert herm.rank_within(rho) <= 2


def test_enumeration_counts():
    gs = graphs.enumerate_rank2_graphs(2, 2)
    two_edge = [g for g in gs if g.n_edges == 2]
    triangles = [g for g in gs if g.n_edges == 3]
    assert len(two_edge) == 15 and len(triangles) == 4
    gs = graphs.enumerate_rank2_graphs(1, 3)
    assert sum(g.n_edges == 2 for g in gs) == 3
    assert sum(g.n_edges == 3 for g in gs) == 1
    gs = graphs.enumerate_rank2_graphs(2, 3)
    assert sum(g.n_edges == 2 for g in gs) == 105
    assert sum(g.n_edges == 3 for g in gs) == 20
    assert len(set(gs)) == len(gs)
    assert graphs.enumerate_rank2_graphs(1, 2) == []


def test_graph_report_two_edge_on_2x2_matches_a_table_row():
    rows_q2_38 = {
        (1 / 3, 1 / 3, -1 / 3, -1 / 3, 1 / 8, 3 / 8, 0.0, 0.5),
        (1 / 3, 1 / 3, -1 / 3, -1 / 3, 3 / 8, 3 / 8, 0.5, np.sqrt(2) / 2),
        (0.0, 0.0, 0.0, 0.0, 0.0, 0.5, 0.0, 0.0),
        (1.0, 1.0, -1.0, -1.0, 0.5, 0.5, 0.0, 1.0),
    }
    g = GridGraph(rows=2, cols=2, edges=((0, 1), (0, 2)))
    t = graphs.graph_report(g).as_tuple()
    assert any(all(abs(a - b) <= 1e-9 for a, b in zip(t, row)) for row in rows_q2_38)


def test_graph_report_known_realizations():
    # triangles on the 2x2 grid share the range of the vertex-sharing pairs
    # and land on the (1/3, 1/3, -1/3, -1/3) spectrum with Q1 = 5/18
    g = GridGraph(rows=2, cols=2, edges=((0, 1), (1, 2), (0, 2)))
    t = graphs.graph_report(g).as_tuple()
    want = (1 / 3, 1 / 3, -1 / 3, -1 / 3, 5 / 18, 0.5, 1 / 3, 2 / 3)
    assert all(abs(a - b) <= 1e-9 for a, b in zip(t, want))
    # the (1, 1, -1, -1) row with Q1 = 1/2, C = 0, F = 1 comes from the
    # disjoint diagonal pair
    g = GridGraph(rows=2, cols=2, edges=((0, 3), (1, 2)))
    t = graphs.graph_report(g).as_tuple()
    want = (1.0, 1.0, -1.0, -1.0, 0.5, 0.5, 0.0, 1.0)
    assert all(abs(a - b) <= 1e-9 for a, b in zip(t, want))
    # 4x4: the (2, 0, -1, -1) row with C = 1, F = sqrt(6)/2
    g = GridGraph(rows=4, cols=4, edges=((0, 5), (10, 15)))
    t = graphs.graph_report(g).as_tuple()
    want = (2.0, 0.0, -1.0, -1.0, 1.0, 0.5, 1.0, np.sqrt(6) / 2)
    assert all(abs(a - b) <= 1e-9 for a, b in zip(t, want))


def test_report_consistency_identity():
    from helpers import sqrt_with_zero_band

    for g in graphs.enumerate_rank2_graphs(2, 2):
        rep = graphs.graph_report(g)
        lam = rep.eigenvalues
        assert abs(rep.concurrence - sqrt_with_zero_band(rep.q1 - lam[1] * rep.q2)) <= 1e-10
        assert abs(rep.fidelity - sqrt_with_zero_band(rep.q1 - lam[3] * rep.q2)) <= 1e-10


def test_table_multiset_contains_paper_rows():
    tab22 = graphs.table_multiset(2, 2)
    expected22 = [
        (1 / 3, 1 / 3, -1 / 3, -1 / 3, 1 / 8, 3 / 8, 0.0, 0.5),
        (1 / 3, 1 / 3, -1 / 3, -1 / 3, 3 / 8, 3 / 8, 0.5, np.sqrt(2) / 2),
        (1 / 3, 1 / 3, -1 / 3, -1 / 3, 5 / 18, 0.5, 1 / 3, 2 / 3),
        (0.0, 0.0, 0.0, 0.0, 0.0, 0.5, 0.0, 0.0),
        (1.0, 1.0, -1.0, -1.0, 0.5, 0.5, 0.0, 1.0),
    ]
    for row in expected22:
        assert any(all(abs(a - b) <= 1e-9 for a, b in zip(t, row)) for t in tab22)
    tab23 = graphs.table_multiset(2, 3)
    ix = (1.25, -0.25, -0.25, -0.75, 0.625, 0.5, np.sqrt(3) / 2, 1.0)
    assert any(all(abs(a - b) <= 1e-9 for a, b in zip(t, ix)) for t in tab23)
    tab33 = graphs.table_multiset(3, 3)
    xiiia = (5 / 3, -1 / 3, -1 / 3, -1.0, 7 / 8, 3 / 8, 1.0, np.sqrt(5) / 2)
    assert any(all(abs(a - b) <= 1e-9 for a, b in zip(t, xiiia)) for t in tab33)


def test_local_relabeling_invariance():
    rng = np.random.default_rng(0)
    gs = graphs.enumerate_rank2_graphs(2, 3)
    for _ in range(20):
        g = gs[rng.integers(len(gs))]
        rep = graphs.graph_report(g)
        p1 = np.eye(2)[rng.permutation(2)]
        p2 = np.eye(3)[rng.permutation(3)]
        perm = np.kron(p1, p2)
        rho = graphs.density_matrix(g)
        rho_p = HermitianMatrix.from_entries(perm @ rho.entries @ perm.T)
        from lroof import roof
        from lroof.roof import RoofKind

        shape = BipartiteShape(2, 3)
        c = roof.roof_bipartite(rho_p, shape, RoofKind.CONCURRENCE).value
        f = roof.roof_bipartite(rho_p, shape, RoofKind.FIDELITY).value
        assert abs(c - rep.concurrence) <= 1e-10 * max(1.0, rep.concurrence)
        assert abs(f - rep.fidelity) <= 1e-10 * max(1.0, rep.fidelity)


def test_same_range_shares_spectrum():
    by_range = {}
    for g in graphs.enumerate_rank2_graphs(2, 2):
        rho = graphs.density_matrix(g)
        basis = herm.range_subspace(rho)
        proj = basis.vectors @ basis.vectors.conj().T
        key = tuple(np.round(proj, 9).ravel().tolist())
        by_range.setdefault(key, []).append(graphs.graph_report(g).eigenvalues)
    for specs in by_range.values():
        for s in specs[1:]:
            assert np.allclose(s, specs[0], atol=1e-9)


def test_graph_json_roundtrip():
    g = GridGraph(rows=2, cols=3, edges=((0, 4), (1, 5)))
    back = graphs.graph_from_json(graphs.graph_to_json(g))
    assert back == g
    with pytest.raises(InvalidInputError):
        graphs.graph_from_json({"rows": 2, "cols": 2})
