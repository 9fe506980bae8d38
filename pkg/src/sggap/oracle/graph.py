"""Level-m gasket graphs and the matrices of their negative graph Laplacian."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TextIO

import numpy as np

from ..errors import DomainError
from ..spectra import BC

Point = tuple[int, int]


@dataclass(frozen=True)
class GasketGraph:
    """Vertices are integer lattice points ``(i, j)`` standing for
    ``(i * e1 + j * e2) / 2**level`` with ``e1, e2`` the sides of the unit
    triangle, so coordinates are exact dyadics."""

    level: int
    vertices: tuple[Point, ...]
    edges: tuple[tuple[int, int], ...]
    boundary: tuple[int, int, int]

    @property
    def n(self) -> int:
        return len(self.vertices)

    def coordinates(self, v: int) -> tuple[Fraction, Fraction]:
        i, j = self.vertices[v]
        s = 2**self.level
        return Fraction(i, s), Fraction(j, s)

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def is_connected(self) -> bool:
        adj = self.adjacency()
        seen = {0}
        stack = [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n


def build_graph(m: int) -> GasketGraph:
    """Three translated copies of the level ``m-1`` graph, glued at shared corners."""
    if m < 0:
        raise DomainError("level must be non-negative")
    pts: set[Point] = {(0, 0), (1, 0), (0, 1)}
    edges: set[tuple[Point, Point]] = {((0, 0), (1, 0)), ((0, 0), (0, 1)), ((1, 0), (0, 1))}
    for k in range(1, m + 1):
        s = 2 ** (k - 1)
        shifts = ((0, 0), (s, 0), (0, s))
        pts = {(i + a, j + b) for a, b in shifts for i, j in pts}
        edges = {
            tuple(sorted(((p[0] + a, p[1] + b), (q[0] + a, q[1] + b))))
            for a, b in shifts
            for p, q in edges
        }
    verts = tuple(sorted(pts))
    index = {p: n for n, p in enumerate(verts)}
    e = tuple(sorted((index[p], index[q]) for p, q in edges))
    side = 2**m
    boundary = (index[(0, 0)], index[(side, 0)], index[(0, side)])
    return GasketGraph(m, verts, e, boundary)


def laplacian_matrix(g: GasketGraph, bc, symmetric: bool = True) -> np.ndarray:
    """Matrix of ``-Laplacian`` on ``g``.

    Dirichlet drops the three boundary rows and columns.  Neumann doubles the
    difference terms in the boundary rows; that operator has zero row sums but
    is not symmetric, so by default it is returned in the similar symmetric form
    ``D^(1/2) L D^(1/2)`` (``D`` = 2 on the corners, 1 elsewhere).
    """
    bc = BC.parse(bc)
    n = g.n
    lap = np.zeros((n, n))
    for u, v in g.edges:
        lap[u, v] -= 1.0
        lap[v, u] -= 1.0
        lap[u, u] += 1.0
        lap[v, v] += 1.0
    if bc is BC.DIRICHLET:
        keep = [v for v in range(n) if v not in set(g.boundary)]
        return lap[np.ix_(keep, keep)]
    w = np.ones(n)
    w[list(g.boundary)] = 2.0
    if not symmetric:
        return w[:, None] * lap
    r = np.sqrt(w)
    out = r[:, None] * lap * r[None, :]
    return (out + out.T) / 2


def write_edge_list(g: GasketGraph, fh: TextIO) -> None:
    fh.write(f"# level {g.level}, vertices {g.n}\n")
    for u, v in g.edges:
        fh.write(f"{u} {v}\n")


def write_matrix(a: np.ndarray, fh: TextIO) -> None:
    for row in a:
        fh.write(" ".join(repr(float(x)) for x in row) + "\n")
