"""Cyclic Jacobi eigenvalue solver for dense symmetric matrices.

Each sweep visits all index pairs in round-robin order, so the pairs of one
round are disjoint.  The numba kernel rotates them one at a time; the numpy
fallback applies a whole round at once.  Set ``SGGAP_DISABLE_NUMBA=1`` to force
the fallback.
"""

from __future__ import annotations

import os

import numpy as np

from ..errors import NoConvergence

DEFAULT_TOL = 1e-14
DEFAULT_MAX_SWEEPS = 60

_DISABLED = os.environ.get("SGGAP_DISABLE_NUMBA", "").lower() not in ("", "0", "false", "no")

try:
    if _DISABLED:
        raise ImportError("disabled by SGGAP_DISABLE_NUMBA")
    from numba import njit
except ImportError:
    njit = None

HAVE_NUMBA = njit is not None


def round_robin(n: int) -> np.ndarray:
    """Pairs (p, q), p < q, grouped into rounds of disjoint pairs.

    Shape ``(rounds, n // 2, 2)`` for even ``n``; odd ``n`` gets a dummy index
    whose pairs are dropped, leaving ``(n - 1) // 2`` pairs per round.
    """
    size = n + (n % 2)
    idx = list(range(size))
    rounds = []
    for _ in range(size - 1):
        pairs = []
        for k in range(size // 2):
            p, q = idx[k], idx[size - 1 - k]
            if p < n and q < n:
                pairs.append((min(p, q), max(p, q)))
        rounds.append(sorted(pairs))
        idx = [idx[0], idx[-1]] + idx[1:-1]
    if not rounds:
        return np.zeros((0, 0, 2), dtype=np.int64)
    return np.array(rounds, dtype=np.int64).reshape(len(rounds), -1, 2)


def _sweep_py(a: np.ndarray, sched: np.ndarray) -> None:
    for rnd in sched:
        p, q = rnd[:, 0], rnd[:, 1]
        apq = a[p, q]
        live = apq != 0.0
        if not live.any():
            continue
        p, q, apq = p[live], q[live], apq[live]
        app, aqq = a[p, p], a[q, q]
        with np.errstate(over="ignore"):
            theta = (aqq - app) / (2.0 * apq)
        big = np.abs(theta) > 1e150
        safe = np.where(big, 0.0, theta)
        t = np.sign(safe + (safe == 0)) / (np.abs(safe) + np.sqrt(safe * safe + 1.0))
        t = np.where(big, 0.5 / np.where(big, theta, 1.0), t)
        c = 1.0 / np.sqrt(t * t + 1.0)
        s = t * c
        ap, aq = a[:, p].copy(), a[:, q].copy()
        a[:, p] = c * ap - s * aq
        a[:, q] = s * ap + c * aq
        ap, aq = a[p, :].copy(), a[q, :].copy()
        a[p, :] = c[:, None] * ap - s[:, None] * aq
        a[q, :] = s[:, None] * ap + c[:, None] * aq


def _off_py(a: np.ndarray) -> float:
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


if HAVE_NUMBA:

    @njit(cache=True)
    def _sweep_nb(a, sched):
        n = a.shape[0]
        for r in range(sched.shape[0]):
            for k in range(sched.shape[1]):
                p = sched[r, k, 0]
                q = sched[r, k, 1]
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                    if theta < 0:
                        t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                for i in range(n):
                    x = a[i, p]
                    y = a[i, q]
                    a[i, p] = c * x - s * y
                    a[i, q] = s * x + c * y
                for j in range(n):
                    x = a[p, j]
                    y = a[q, j]
                    a[p, j] = c * x - s * y
                    a[q, j] = s * x + c * y

    @njit(cache=True)
    def _off_nb(a):
        n = a.shape[0]
        acc = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    acc += a[i, j] * a[i, j]
        return np.sqrt(acc)


def backend_name(use_numba: bool | None = None) -> str:
    return "numba" if _pick(use_numba) else "numpy"


def _pick(use_numba):
    if use_numba is None:
        return HAVE_NUMBA
    if use_numba and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but unavailable")
    return use_numba


def jacobi_diagonalize(
    a, tol: float = DEFAULT_TOL, max_sweeps: int = DEFAULT_MAX_SWEEPS,
    use_numba: bool | None = None,
) -> tuple[np.ndarray, int]:
    """Rotate ``a`` until its off-diagonal norm is at most ``tol * ||a||_F``.

    Returns the final matrix and the number of sweeps used.
    """
    a = np.array(a, dtype=np.float64, order="C", copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    if not np.array_equal(a, a.T):
        raise ValueError("matrix is not symmetric")
    n = a.shape[0]
    if n < 2:
        return a, 0
    fast = _pick(use_numba)
    sweep, off = (_sweep_nb, _off_nb) if fast else (_sweep_py, _off_py)
    sched = round_robin(n)
    target = tol * float(np.linalg.norm(a))
    for k in range(max_sweeps + 1):
        if off(a) <= target:
            return a, k
        if k == max_sweeps:
            break
        sweep(a, sched)
    raise NoConvergence(f"off-diagonal norm {off(a):.3e} above {target:.3e} after {max_sweeps} sweeps")


def dense_eigenvalues(
    a, tol: float = DEFAULT_TOL, max_sweeps: int = DEFAULT_MAX_SWEEPS,
    use_numba: bool | None = None,
) -> np.ndarray:
    """All eigenvalues of the symmetric matrix ``a``, increasing."""
    d, _ = jacobi_diagonalize(a, tol, max_sweeps, use_numba)
    return np.sort(np.diag(d).copy())
