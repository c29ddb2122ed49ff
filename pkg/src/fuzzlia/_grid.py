"""Sampling grids, tolerances and certification metadata for grid-based checks."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TOL_CLOSED = 1e-9
TOL_TABULATED = 1e-6
GRID_2D = 101
GRID_3D = 41
GRID_NEGATION = 1001
MIN_GRID = 11


def unit_grid(n: int) -> np.ndarray:
    """``n`` equally spaced points on [0, 1], each correctly rounded (``i/(n-1)``)."""
    if n < 2:
        raise ValueError(f"grid needs at least 2 points, got {n}")
    return np.arange(n, dtype=float) / (n - 1)


def mesh2(n: int) -> tuple[np.ndarray, np.ndarray]:
    g = unit_grid(n)
    return np.meshgrid(g, g, indexing="ij")


def mesh3(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    g = unit_grid(n)
    return np.meshgrid(g, g, g, indexing="ij")


def default_tol(*operators) -> float:
    """1e-9 for closed forms, 1e-6 as soon as one operator is tabulated."""
    if any(getattr(op, "tabulated", False) for op in operators):
        return TOL_TABULATED
    return TOL_CLOSED


@dataclass(frozen=True)
class Certification:
    """How a property verdict was reached.

    ``method`` is ``"grid"`` (sampled) or ``"analytic"`` (taken from the
    operator catalog). Grid verdicts are evidence, not proof.
    """

    method: str
    points: int = 0
    dims: int = 0
    tol: float = 0.0
    random_points: int = 0

    @property
    def label(self) -> str:
        return "grid-consistent" if self.method == "grid" else "analytic-from-catalog"

    def __str__(self) -> str:
        if self.method != "grid":
            return "analytic-from-catalog"
        extra = f" + {self.random_points} random" if self.random_points else ""
        return f"grid-checked({self.points}^{self.dims}{extra}, tol={self.tol:g})"

    def as_dict(self) -> dict:
        return {
            "method": self.method,
            "points": self.points,
            "dims": self.dims,
            "tol": self.tol,
            "random_points": self.random_points,
            "label": self.label,
        }


ANALYTIC = Certification("analytic")


def argmax_point(gap: np.ndarray, *coords: np.ndarray) -> tuple[float, tuple[float, ...]]:
    """Largest entry of ``gap`` and the coordinates where it occurs."""
    idx = np.unravel_index(int(np.argmax(gap)), gap.shape)
    return float(gap[idx]), tuple(float(c[idx]) for c in coords)


def sup_bisect(pred, shape, iters: int = 64) -> np.ndarray:
    """Vectorised ``sup{t in [0,1] : pred(t)}`` for a downward-closed predicate.

    ``pred`` maps an array of candidate ``t`` (broadcast to ``shape``) to a
    boolean array. ``sup`` of the empty set is 0.
    """
    ones = np.ones(shape)
    zeros = np.zeros(shape)
    top = pred(ones)
    bottom = pred(zeros)
    lo, hi = zeros.copy(), ones.copy()
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        ok = pred(mid)
        lo = np.where(ok, mid, lo)
        hi = np.where(ok, hi, mid)
    return np.where(top, 1.0, np.where(bottom, lo, 0.0))


def as_unit(value, name: str = "argument") -> np.ndarray:
    """Convert to a float array and reject anything outside [0, 1] (NaN included)."""
    from .errors import DomainError

    arr = np.asarray(value, dtype=float)
    bad = ~((arr >= 0.0) & (arr <= 1.0))
    if np.any(bad):
        first = arr[bad].ravel()[0] if arr.ndim else float(arr)
        raise DomainError(f"{name} must lie in [0, 1], got {first!r}")
    return arr


def scalar_or_array(arr: np.ndarray):
    return float(arr) if np.ndim(arr) == 0 else arr
