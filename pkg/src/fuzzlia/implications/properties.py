"""Grid checks of implication properties: I1-I5, NP, IP, EP, OP, OP_U, CP(N), RP(A), LIA(A)."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .._grid import (GRID_2D, GRID_3D, MIN_GRID, Certification, argmax_point, default_tol,
                     mesh2, mesh3, unit_grid)
from ..algebra.aggregations import Aggregation
from ..algebra.negations import Negation
from .base import Implication, axiom_failures


@dataclass(frozen=True)
class PropertyEntry:
    """Verdict for one property.

    ``witness`` is the grid point of largest violation (absent when the
    property holds) and ``max_violation`` its size. ``extra_witnesses``
    carries further labelled evidence, e.g. LIA violations at x = y = 1,
    which refute LIA for every aggregation at once.
    """

    name: str
    holds: bool
    witness: tuple[float, ...] | None
    max_violation: float
    certification: Certification
    detail: str = ""
    extra_witnesses: tuple = field(default=())

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "holds": self.holds,
            "witness": list(self.witness) if self.witness is not None else None,
            "max_violation": self.max_violation,
            "detail": self.detail,
            "extra_witnesses": [list(w) for w in self.extra_witnesses],
            "certification": self.certification.as_dict(),
        }


@dataclass(frozen=True)
class PropertyReport:
    implication: Implication
    entries: dict

    def __getitem__(self, name: str) -> PropertyEntry:
        return self.entries[name]

    def __contains__(self, name: str) -> bool:
        return name in self.entries

    def holds(self, name: str) -> bool:
        return self.entries[name].holds

    def failures(self) -> list[PropertyEntry]:
        return [e for e in self.entries.values() if not e.holds]

    def as_dict(self) -> dict:
        return {k: v.as_dict() for k, v in self.entries.items()}


def _entry(name, gap, coords, grid, dims, tol, detail="", extra=()):
    m, where = argmax_point(gap, *coords)
    holds = m <= tol
    cert = Certification("grid", grid, dims, tol)
    return PropertyEntry(name, bool(holds), None if holds else where, max(m, 0.0), cert,
                         detail, tuple(extra))


def _check_grid(grid: int) -> None:
    if grid < MIN_GRID:
        raise ValueError(f"property checks need at least {MIN_GRID} grid points, got {grid}")


# -- two-dimensional properties ----------------------------------------------------

def check_axioms(i: Implication, grid: int = GRID_2D, tol: float | None = None) -> dict:
    tol = default_tol(i) if tol is None else tol
    fails = {f.axiom: f for f in axiom_failures(i.func, grid, tol)}
    out = {}
    for ax in ("I1", "I2", "I3", "I4", "I5"):
        f = fails.get(ax)
        out[ax] = PropertyEntry(ax, f is None, None if f is None else f.witness,
                                0.0 if f is None else f.amount,
                                Certification("grid", grid, 2, tol))
    return out


def check_np(i: Implication, grid: int = GRID_2D, tol: float | None = None) -> PropertyEntry:
    tol = default_tol(i) if tol is None else tol
    y = unit_grid(grid)
    gap = np.abs(np.asarray(i(np.ones_like(y), y)) - y)
    return _entry("NP", gap, (np.ones_like(y), y), grid, 1, tol)


def check_ip(i: Implication, grid: int = GRID_2D, tol: float | None = None) -> PropertyEntry:
    tol = default_tol(i) if tol is None else tol
    x = unit_grid(grid)
    gap = 1.0 - np.asarray(i(x, x))
    return _entry("IP", gap, (x, x), grid, 1, tol)


def check_op(i: Implication, grid: int = GRID_2D, tol: float | None = None,
             e: float | None = None) -> PropertyEntry:
    """OP (``e`` None): I(x,y)=1 iff x<=y. OP_U(e): I(x,y)>=e iff x<=y.

    A violation of the forward direction is measured by how far I falls
    short of the threshold; of the backward direction by x - y.
    """
    tol = default_tol(i) if tol is None else tol
    level = 1.0 if e is None else e
    x, y = mesh2(grid)
    v = np.asarray(i(x, y))
    below = x <= y
    fwd = np.where(below, level - v, 0.0)
    bwd = np.where(~below & (v >= level - tol), x - y, 0.0)
    name = "OP" if e is None else f"OP_U({e:g})"
    return _entry(name, np.maximum(fwd, bwd), (x, y), grid, 2, tol)


def check_cp(i: Implication, n: Negation, grid: int = GRID_2D,
             tol: float | None = None) -> PropertyEntry:
    tol = default_tol(i, n) if tol is None else tol
    x, y = mesh2(grid)
    gap = np.abs(np.asarray(i(x, y)) - np.asarray(i(np.asarray(n(y)), np.asarray(n(x)))))
    return _entry(f"CP({n.kind})", gap, (x, y), grid, 2, tol)


def check_right_continuity(i: Implication, grid: int = GRID_2D, delta: float = 1e-10,
                           jump: float = 1e-6) -> PropertyEntry:
    """Heuristic for right-continuity in the second argument.

    Compares I(x,y) with I(x,y+delta) at grid points. The verdict is only
    ever grid-consistent, never a proof.
    """
    x, y = mesh2(grid)
    x, y = x[:, :-1], y[:, :-1]
    gap = np.abs(np.asarray(i(x, np.minimum(y + delta, 1.0))) - np.asarray(i(x, y)))
    ent = _entry("RC2", gap, (x, y), grid, 2, jump,
                 detail=f"grid-consistent heuristic, delta={delta:g}")
    return ent


def check_continuity_first_row(i: Implication, grid: int = 1001, jump: float | None = None):
    """Heuristic continuity of z -> I(1, z): adjacent jumps below a few grid steps."""
    z = unit_grid(grid)
    v = np.asarray(i(np.ones_like(z), z))
    bound = 4.0 / (grid - 1) if jump is None else jump
    d = np.abs(np.diff(v))
    return _entry("continuous I(1,.)", d, (z[:-1],), grid, 1, bound,
                  detail="grid-consistent heuristic")


# -- three-dimensional properties --------------------------------------------------

def check_ep(i: Implication, grid: int = GRID_3D, tol: float | None = None) -> PropertyEntry:
    tol = default_tol(i) if tol is None else tol
    x, y, z = mesh3(grid)
    gap = np.abs(np.asarray(i(x, np.asarray(i(y, z)))) - np.asarray(i(y, np.asarray(i(x, z)))))
    return _entry("EP", gap, (x, y, z), grid, 3, tol)


def check_rp(i: Implication, a: Aggregation, grid: int = GRID_3D,
             tol: float | None = None) -> PropertyEntry:
    """RP: A(x,y) <= z iff x <= I(y,z), both sides read with tolerance ``tol``."""
    tol = default_tol(i, a) if tol is None else tol
    x, y, z = mesh3(grid)
    axy = np.asarray(a(x, y))
    iyz = np.asarray(i(y, z))
    left = axy <= z + tol
    right = x <= iyz + tol
    gap = np.where(left & ~right, x - iyz, np.where(right & ~left, axy - z, 0.0))
    return _entry(f"RP({a.kind})", gap, (x, y, z), grid, 3, tol)


def lia_sides(i: Implication, a: Aggregation, x, y, z):
    """(I(A(x,y),z), I(x,I(y,z)))."""
    lhs = i(np.asarray(a(x, y)), z)
    rhs = i(x, np.asarray(i(y, z)))
    return lhs, rhs


def check_lia(i: Implication, a: Aggregation, grid: int = GRID_3D,
              tol: float | None = None) -> PropertyEntry:
    """LIA: max over the grid cube of |I(A(x,y),z) - I(x,I(y,z))| within ``tol``.

    On failure, violations on the line x = y = 1 are listed separately as
    ``(1, 1, z, lhs, rhs)``: since every aggregation has A(1,1) = 1 they
    rule out every partner, not just ``a``.
    """
    _check_grid(grid)
    tol = default_tol(i, a) if tol is None else tol
    x, y, z = mesh3(grid)
    lhs, rhs = lia_sides(i, a, x, y, z)
    gap = np.abs(np.asarray(lhs) - np.asarray(rhs))
    ent = _entry(f"LIA({a.kind})", gap, (x, y, z), grid, 3, tol)
    if ent.holds:
        return ent
    zz = unit_grid(grid)
    ones = np.ones_like(zz)
    l1 = np.asarray(i(ones, zz))
    r1 = np.asarray(i(ones, l1))
    bad = np.abs(l1 - r1) > tol
    extra = tuple((1.0, 1.0, float(zv), float(lv), float(rv))
                  for zv, lv, rv in zip(zz[bad], l1[bad], r1[bad]))
    lv, rv = lia_sides(i, a, *ent.witness)
    detail = f"I(A(x,y),z)={float(lv):.6f} vs I(x,I(y,z))={float(rv):.6f}"
    return PropertyEntry(ent.name, False, ent.witness, ent.max_violation, ent.certification,
                         detail, extra)


def lia_gap(i: Implication, a: Aggregation, grid: int = GRID_3D) -> float:
    x, y, z = mesh3(grid)
    lhs, rhs = lia_sides(i, a, x, y, z)
    return float(np.max(np.abs(np.asarray(lhs) - np.asarray(rhs))))


def check_properties(i: Implication, negation: Negation | None = None,
                     aggregation: Aggregation | None = None, e: float | None = None,
                     grid: int = GRID_2D, grid3: int = GRID_3D,
                     tol: float | None = None) -> PropertyReport:
    """Run every applicable check; CP, RP/LIA and OP_U need their extra operator."""
    _check_grid(grid)
    _check_grid(grid3)
    entries = dict(check_axioms(i, grid, tol))
    entries["NP"] = check_np(i, grid, tol)
    entries["IP"] = check_ip(i, grid, tol)
    entries["EP"] = check_ep(i, grid3, tol)
    entries["OP"] = check_op(i, grid, tol)
    entries["RC2"] = check_right_continuity(i, grid)
    if e is not None:
        entries["OP_U"] = check_op(i, grid, tol, e=e)
    if negation is not None:
        entries["CP"] = check_cp(i, negation, grid, tol)
    if aggregation is not None:
        entries["RP"] = check_rp(i, aggregation, grid3, tol)
        entries["LIA"] = check_lia(i, aggregation, grid3, tol)
    return PropertyReport(i, entries)
