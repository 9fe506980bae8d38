"""Compare oracle eigenvalues with the decimation sets."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DomainError, MismatchError
from ..spectra import BC, spectrum
from .graph import build_graph, laplacian_matrix
from .jacobi import DEFAULT_TOL as JACOBI_TOL
from .jacobi import dense_eigenvalues

LEVEL_CAP = 5
CLUSTER_TOL = 1e-6


@dataclass(frozen=True)
class ValueMatch:
    expected: float
    oracle: float
    multiplicity: int
    distance: float


@dataclass(frozen=True)
class OracleReport:
    level: int
    bc: BC
    dimension: int
    hausdorff: float
    tol: float
    matches: tuple[ValueMatch, ...]

    @property
    def ok(self) -> bool:
        return self.hausdorff <= self.tol

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "bc": self.bc.value,
            "dimension": self.dimension,
            "hausdorff": float(f"{self.hausdorff:.3e}"),
            "tol": self.tol,
            "match": self.ok,
            "values": [
                {"expected": round(v.expected, 12), "multiplicity": v.multiplicity,
                 "distance": float(f"{v.distance:.3e}")}
                for v in self.matches
            ],
        }


def cluster(eigs, gap: float = CLUSTER_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Group sorted eigenvalues closer than ``gap``; returns means and sizes."""
    eigs = np.sort(np.asarray(eigs, dtype=float))
    if eigs.size == 0:
        return eigs, np.zeros(0, dtype=int)
    cuts = np.flatnonzero(np.diff(eigs) > gap) + 1
    groups = np.split(eigs, cuts)
    return np.array([g.mean() for g in groups]), np.array([g.size for g in groups])


def hausdorff(a, b) -> float:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    d = np.abs(a[:, None] - b[None, :])
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


def oracle_eigenvalues(m: int, bc) -> np.ndarray:
    return dense_eigenvalues(laplacian_matrix(build_graph(m), bc), JACOBI_TOL)


def cross_check(m: int, bc, tol: float = 1e-9, cap: int = LEVEL_CAP) -> OracleReport:
    """Distinct oracle eigenvalues against the level-``m`` decimation set.

    Raises :class:`MismatchError` naming the worst value when the Hausdorff
    distance exceeds ``tol``.
    """
    bc = BC.parse(bc)
    if m > cap:
        raise DomainError(f"level {m} is above the oracle cap {cap}")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    eigs = oracle_eigenvalues(m, bc)
    distinct, mult = cluster(eigs)
    expected = np.array([float(v) for v in spectrum(m, bc).values])
    d = np.abs(expected[:, None] - distinct[None, :])
    nearest = d.argmin(axis=1)
    matches = tuple(
        ValueMatch(float(e), float(distinct[k]), int(mult[k]), float(d[i, k]))
        for i, (e, k) in enumerate(zip(expected, nearest))
    )
    h = hausdorff(distinct, expected)
    rep = OracleReport(m, bc, len(eigs), h, tol, matches)
    if not rep.ok:
        miss = d.min(axis=1)
        extra = d.min(axis=0)
        if miss.max() >= extra.max():
            worst = f"decimation value {expected[miss.argmax()]:.12g} has no oracle match"
        else:
            worst = f"oracle value {distinct[extra.argmax()]:.12g} is not in the decimation set"
        raise MismatchError(f"level {m} {bc.value}: {worst} (distance {h:.3e})")
    return rep
