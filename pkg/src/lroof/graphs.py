"""Density matrices of graphs on a rectangular vertex grid.

A graph on rows x cols vertices (vertex (r, c) -> index r*cols + c) has the
normalized combinatorial Laplacian L(G)/(2 n_e) as its density matrix, which
inherits the rows (x) cols bipartite structure.  All graphs with two edges,
and all three-edge closed loops, have rank-2 density matrices, so their
concurrence and I-fidelity come out of the bipartite roof formula; the
tabulation collects the resulting pencil spectra, form values and roofs.
"""

import itertools
from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import roof
from .errors import InvalidInputError
from .herm import BipartiteShape, HermitianMatrix
from .roof import Q1Variant, RoofKind


@dataclass(frozen=True)
class GridGraph:
    """Edge set over a rows x cols vertex grid; edges need not follow the grid."""

    rows: int
    cols: int
    edges: tuple

    def __post_init__(self):
        n = self.rows * self.cols
        seen = set()
        canon = []
        for e in self.edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise InvalidInputError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInputError(f"vertex index out of range in edge {(u, v)}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InvalidInputError(f"duplicate edge {key}")
            seen.add(key)
            canon.append(key)
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    @property
    def n_vertices(self):
        return self.rows * self.cols

    @property
    def n_edges(self):
        return len(self.edges)


@dataclass(frozen=True)
class GraphReport:
    """Pencil spectrum, form values and both roofs of one graph density matrix."""

    eigenvalues: tuple
    q1: float
    q2: float
    concurrence: float
    fidelity: float

    def as_tuple(self, digits: int = 12):
        vals = self.eigenvalues + (self.q1, self.q2, self.concurrence, self.fidelity)
        return tuple(round(float(v), digits) + 0.0 for v in vals)  # +0.0 kills -0.0


def laplacian(g: GridGraph) -> HermitianMatrix:
    """Combinatorial Laplacian: degree matrix minus adjacency matrix."""
    if g.n_edges == 0:
        raise InvalidInputError("graph has no edges")
    n = g.n_vertices
    l = np.zeros((n, n))
    for u, v in g.edges:
        l[u, u] += 1.0
        l[v, v] += 1.0
        l[u, v] -= 1.0
        l[v, u] -= 1.0
    return HermitianMatrix.from_entries(l)


def density_matrix(g: GridGraph) -> HermitianMatrix:
    """Laplacian normalized to unit trace."""
    l = laplacian(g)
    return HermitianMatrix.from_entries(l.entries / (2.0 * g.n_edges))


def graph_report(g: GridGraph, tol: float = 1e-9) -> GraphReport:
    """Spectrum of the (Q1, Q2) pencil on the range of the density matrix,
    both form values and both roofs, with Q1 in the universal-inverter form."""
    rho = density_matrix(g)
    shape = BipartiteShape(d1=g.rows, d2=g.cols)
    conc = roof.roof_bipartite(
        rho, shape, RoofKind.CONCURRENCE, q1_variant=Q1Variant.UNIVERSAL_INVERTER, tol=tol
    )
    fid = roof.roof_bipartite(
        rho, shape, RoofKind.FIDELITY, q1_variant=Q1Variant.UNIVERSAL_INVERTER, tol=tol
    )
    q1 = roof.q1_form(rho.entries, shape, Q1Variant.UNIVERSAL_INVERTER)
    q2 = roof.q2_form(rho.entries)
    return GraphReport(
        eigenvalues=tuple(float(v) for v in conc.spectrum.eigenvalues),
        q1=float(q1),
        q2=float(q2),
        concurrence=conc.value,
        fidelity=fid.value,
    )


def enumerate_rank2_graphs(rows: int, cols: int):
    """All two-edge graphs and all triangles on the grid's vertex set.

    Edges range over the complete graph on the vertices; graphs are
    deduplicated by labeled edge set only, since placement determines the
    bipartite structure.  Two-edge graphs come first, in lexicographic
    order, then the triangles.
    """
    n = rows * cols
    all_edges = list(itertools.combinations(range(n), 2))
    out = [
        GridGraph(rows=rows, cols=cols, edges=pair)
        for pair in itertools.combinations(all_edges, 2)
    ]
    for a, b, c in itertools.combinations(range(n), 3):
        out.append(GridGraph(rows=rows, cols=cols, edges=((a, b), (b, c), (a, c))))
    return out


def table_multiset(rows: int, cols: int, digits: int = 12) -> Counter:
    """Multiset of report tuples (l1..l4, Q1, Q2, C, F) over all rank-2 graphs."""
    counts = Counter()
    for g in enumerate_rank2_graphs(rows, cols):
        counts[graph_report(g).as_tuple(digits)] += 1
    return counts


def graph_to_json(g: GridGraph) -> dict:
    return {"rows": g.rows, "cols": g.cols, "edges": [[u, v] for u, v in g.edges]}


def graph_from_json(obj) -> GridGraph:
    try:
        return GridGraph(
            rows=int(obj["rows"]),
            cols=int(obj["cols"]),
            edges=tuple((int(e[0]), int(e[1])) for e in obj["edges"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed graph object: {exc}") from exc
