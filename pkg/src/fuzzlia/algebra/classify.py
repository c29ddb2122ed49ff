"""Grid-based classification of aggregation functions."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .._grid import (GRID_2D, MIN_GRID, Certification, argmax_point, default_tol, mesh2,
                     unit_grid)
from ..errors import ConstructionError
from .aggregations import Aggregation
from .negations import Negation

RANDOM_POINTS = 10_000
SEED = 20240611


@dataclass(frozen=True)
class ClassificationRecord:
    """What a grid sweep found out about an aggregation.

    ``neutral_elements`` holds pairs such as ``("two-sided", 1.0)`` or
    ``("left", 0.5)``. Witness fields hold the first point found for each
    positive divisor verdict.
    """

    is_conjunctor: bool
    is_disjunctor: bool
    is_commutative: bool
    is_associative: bool
    neutral_elements: frozenset
    has_zero_divisors: bool
    has_one_divisors: bool
    satisfies_lem_with: Negation | None
    certification: Certification
    zero_divisor_witness: tuple[float, float] | None = None
    one_divisor_witness: tuple[float, float] | None = None
    associativity_gap: float = 0.0
    associativity_witness: tuple[float, float, float] | None = field(default=None)

    def __post_init__(self):
        if self.is_conjunctor and self.is_disjunctor:
            raise ConstructionError("an aggregation cannot be both a conjunctor and a disjunctor")

    def has_neutral(self, e: float, side: str = "two-sided") -> bool:
        for s, v in self.neutral_elements:
            if abs(v - e) <= 1e-12 and (s == side or s == "two-sided"):
                return True
        return False

    @property
    def is_semicopula(self) -> bool:
        return self.has_neutral(1.0)

    @property
    def is_tnorm(self) -> bool:
        return self.is_semicopula and self.is_associative and self.is_commutative

    def as_dict(self) -> dict:
        return {
            "is_conjunctor": self.is_conjunctor,
            "is_disjunctor": self.is_disjunctor,
            "is_commutative": self.is_commutative,
            "is_associative": self.is_associative,
            "neutral_elements": sorted([list(p) for p in self.neutral_elements]),
            "has_zero_divisors": self.has_zero_divisors,
            "has_one_divisors": self.has_one_divisors,
            "satisfies_lem_with": (self.satisfies_lem_with.kind
                                   if self.satisfies_lem_with is not None else None),
            "zero_divisor_witness": self.zero_divisor_witness,
            "one_divisor_witness": self.one_divisor_witness,
            "certification": self.certification.as_dict(),
        }


def associativity_gap(a: Aggregation, grid: int) -> tuple[float, tuple[float, float, float]]:
    """Max of |A(A(x,y),z) - A(x,A(y,z))| over the full ``grid``^3 cube."""
    g = unit_grid(grid)
    x, y = mesh2(grid)
    xy = np.asarray(a(x, y))
    worst, where = -1.0, (0.0, 0.0, 0.0)
    # one z-slice at a time keeps memory at grid^2
    for z in g:
        zz = np.full_like(x, z)
        left = np.asarray(a(xy, zz))
        right = np.asarray(a(x, np.asarray(a(y, zz))))
        gap = np.abs(left - right)
        m, (px, py) = argmax_point(gap, x, y)
        if m > worst:
            worst, where = m, (px, py, float(z))
    return worst, where


def neutral_elements(a: Aggregation, grid: int, tol: float) -> frozenset:
    """Grid candidates e with A(e,x)=x (left) and/or A(x,e)=x (right).

    The test points include cell midpoints so that the first interior grid
    point is not mistaken for a neutral element of operators that are flat
    near 0.
    """
    g = unit_grid(grid)
    t = np.sort(np.concatenate([g, 0.5 * (g[1:] + g[:-1])]))
    e, xs = np.meshgrid(g, t, indexing="ij")
    left = np.max(np.abs(np.asarray(a(e, xs)) - xs), axis=1) <= tol
    right = np.max(np.abs(np.asarray(a(xs, e)) - xs), axis=1) <= tol
    out = set()
    for k, v in enumerate(g):
        if left[k] and right[k]:
            out.add(("two-sided", float(v)))
        elif left[k]:
            out.add(("left", float(v)))
        elif right[k]:
            out.add(("right", float(v)))
    return frozenset(out)


def _divisor_candidates(grid: int, lo_open: bool, seed: int):
    g = unit_grid(grid)
    g = g[1:] if lo_open else g[:-1]
    x, y = np.meshgrid(g, g, indexing="ij")
    rng = np.random.default_rng(seed)
    r = rng.random((2, RANDOM_POINTS))
    if lo_open:
        r = 1.0 - r  # (0, 1]
    return np.concatenate([x.ravel(), r[0]]), np.concatenate([y.ravel(), r[1]])


def find_zero_divisor(a: Aggregation, grid: int = GRID_2D, tol: float = 0.0, seed: int = SEED):
    """A point (x, y) in (0,1]^2 with A(x,y) = 0, or None."""
    x, y = _divisor_candidates(grid, True, seed)
    v = np.asarray(a(x, y))
    hits = np.flatnonzero(v <= tol)
    return None if hits.size == 0 else (float(x[hits[0]]), float(y[hits[0]]))


def find_one_divisor(a: Aggregation, grid: int = GRID_2D, tol: float = 0.0, seed: int = SEED):
    """A point (x, y) in [0,1)^2 with A(x,y) = 1, or None."""
    x, y = _divisor_candidates(grid, False, seed)
    v = np.asarray(a(x, y))
    hits = np.flatnonzero(v >= 1.0 - tol)
    return None if hits.size == 0 else (float(x[hits[0]]), float(y[hits[0]]))


def satisfies_lem(a: Aggregation, n: Negation, grid: int = GRID_2D, tol: float = 1e-9) -> bool:
    u = unit_grid(grid)
    return bool(np.all(np.asarray(a(np.asarray(n(u)), u)) >= 1.0 - tol))


def classify(a: Aggregation, grid: int = GRID_2D, tol: float | None = None,
             negation: Negation | None = None, seed: int = SEED) -> ClassificationRecord:
    """Fill a ClassificationRecord by exhaustive grid sweeps.

    Associativity is checked on the full ``grid``^3 cube; divisors are
    searched on the grid plus 10^4 seeded random points. Divisor tests are
    exact (no tolerance) since they ask for the value 0 or 1.
    """
    if grid < MIN_GRID:
        raise ValueError(f"classification needs at least {MIN_GRID} grid points, got {grid}")
    tol = default_tol(a) if tol is None else tol
    c01, c10 = float(a(0.0, 1.0)), float(a(1.0, 0.0))
    x, y = mesh2(grid)
    v = np.asarray(a(x, y))
    commutative = bool(np.max(np.abs(v - v.T)) <= tol)
    gap, where = associativity_gap(a, grid)
    zd = find_zero_divisor(a, grid, seed=seed)
    od = find_one_divisor(a, grid, seed=seed)
    lem = negation if negation is not None and satisfies_lem(a, negation, grid, tol) else None
    return ClassificationRecord(
        is_conjunctor=(c01 == 0.0 and c10 == 0.0),
        is_disjunctor=(c01 == 1.0 and c10 == 1.0),
        is_commutative=commutative,
        is_associative=gap <= tol,
        neutral_elements=neutral_elements(a, grid, tol),
        has_zero_divisors=zd is not None,
        has_one_divisors=od is not None,
        satisfies_lem_with=lem,
        certification=Certification("grid", grid, 3, tol, RANDOM_POINTS),
        zero_divisor_witness=zd,
        one_divisor_witness=od,
        associativity_gap=gap,
        associativity_witness=None if gap <= tol else where,
    )


@dataclass(frozen=True)
class CheckResult:
    holds: bool
    witness: tuple | None
    gap: float
    certification: Certification


def check_copula(a: Aggregation, grid: int = GRID_2D, tol: float | None = None) -> CheckResult:
    """Boundary conditions C(x,1)=x, C(1,y)=y, C(x,0)=C(0,y)=0 and 2-increasingness.

    On a grid every rectangle volume is a sum of adjacent-cell volumes, so
    checking the adjacent cells covers all grid rectangles.
    """
    tol = default_tol(a) if tol is None else tol
    u = unit_grid(grid)
    ones, zeros = np.ones_like(u), np.zeros_like(u)
    bgap = max(np.max(np.abs(np.asarray(a(u, ones)) - u)),
               np.max(np.abs(np.asarray(a(ones, u)) - u)),
               np.max(np.abs(np.asarray(a(u, zeros)))),
               np.max(np.abs(np.asarray(a(zeros, u)))))
    if bgap > tol:
        return CheckResult(False, None, float(bgap), Certification("grid", grid, 2, tol))
    x, y = mesh2(grid)
    v = np.asarray(a(x, y))
    vol = v[1:, 1:] - v[1:, :-1] - v[:-1, 1:] + v[:-1, :-1]
    worst, (px, py) = argmax_point(-vol, x[:-1, :-1], y[:-1, :-1])
    holds = worst <= tol
    step = 1.0 / (grid - 1)
    witness = None if holds else (px, px + step, py, py + step)
    return CheckResult(holds, witness, max(worst, 0.0), Certification("grid", grid, 2, tol))


def left_continuity_check(a: Aggregation, grid: int = GRID_2D, delta: float = 1e-10,
                          jump: float = 1e-6) -> CheckResult:
    """Heuristic: no jump between A(x,y) and A(x-delta,y) or A(x,y-delta) at grid points.

    Catalog knowledge (``meta["left_continuous"]`` or ``meta["continuous"]``)
    takes precedence and is reported as analytic.
    """
    from .._grid import ANALYTIC

    if "left_continuous" in a.meta:
        return CheckResult(bool(a.meta["left_continuous"]), None, 0.0, ANALYTIC)
    if a.meta.get("continuous"):
        return CheckResult(True, None, 0.0, ANALYTIC)
    x, y = mesh2(grid)
    x, y = x[1:, 1:], y[1:, 1:]
    v = np.asarray(a(x, y))
    dx = v - np.asarray(a(np.maximum(x - delta, 0.0), y))
    dy = v - np.asarray(a(x, np.maximum(y - delta, 0.0)))
    d = np.maximum(dx, dy)
    worst, where = argmax_point(d, x, y)
    holds = worst <= jump
    return CheckResult(holds, None if holds else where, worst,
                       Certification("grid", grid, 2, jump))
