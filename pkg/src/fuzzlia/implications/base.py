"""The Implication type, axiom validation and descriptor plumbing."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Mapping

import numpy as np

from .._grid import GRID_2D, TOL_CLOSED, TOL_TABULATED, as_unit, mesh2, scalar_or_array
from ..errors import ConstructionError, DescriptorError

BinaryFn = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class AxiomFailure:
    axiom: str
    witness: tuple[float, ...]
    amount: float

    def __str__(self) -> str:
        pt = ", ".join(f"{v:g}" for v in self.witness)
        return f"{self.axiom} fails at ({pt}) by {self.amount:.6g}"


@dataclass(frozen=True, eq=False)
class Implication:
    """A map I: [0,1]^2 -> [0,1] checked against I1-I5 at construction.

    ``valid`` is False only for operators built with ``strict=False`` whose
    grid check found an axiom violation (listed in ``failures``). Valid
    implications return the boundary values I(0,y)=1, I(x,1)=1 and
    I(1,0)=0 exactly; invalid ones return raw values everywhere.
    """

    family: str
    params: Mapping[str, Any]
    func: BinaryFn = field(repr=False)
    valid: bool = True
    failures: tuple[AxiomFailure, ...] = ()
    meta: Mapping[str, Any] = field(default_factory=dict, repr=False)
    tabulated: bool = False

    def __call__(self, x, y):
        xa = as_unit(x, "implication first argument")
        ya = as_unit(y, "implication second argument")
        xa, ya = np.broadcast_arrays(xa, ya)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            out = np.clip(np.asarray(self.func(xa, ya), dtype=float), 0.0, 1.0)
        if self.valid:
            out = np.where((xa == 0.0) | (ya == 1.0), 1.0, out)
            out = np.where((xa == 1.0) & (ya == 0.0), 0.0, out)
        return scalar_or_array(out)

    @property
    def tol(self) -> float:
        return TOL_TABULATED if self.tabulated else TOL_CLOSED

    def descriptor(self) -> dict:
        if self.family == "tabulated":
            return {"family": "tabulated", "grid": list(self.params["grid"]),
                    "values": [list(r) for r in self.params["values"]]}
        if self.family == "closed-form" and "expr" not in self.params:
            raise DescriptorError("implication built from a Python callable has no JSON form")
        out = {}
        for key, value in self.params.items():
            out[key] = value.descriptor() if hasattr(value, "descriptor") else value
        return {"family": self.family, "params": out}


def eval_implication(i: Implication, x, y):
    """I(x, y); raises DomainError outside the unit square."""
    return i(x, y)


def axiom_failures(func: BinaryFn, grid: int = GRID_2D, tol: float = TOL_CLOSED,
                   axioms=("I1", "I2", "I3", "I4", "I5")) -> list[AxiomFailure]:
    """Grid check of the implication axioms on raw values of ``func``."""
    x, y = mesh2(grid)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        v = np.asarray(func(x, y), dtype=float)
    out = []
    if not np.all(np.isfinite(v)) or np.any(v < -tol) or np.any(v > 1 + tol):
        bad = ~np.isfinite(v) | (v < -tol) | (v > 1 + tol)
        k = np.unravel_index(int(np.argmax(bad)), bad.shape)
        out.append(AxiomFailure("range", (float(x[k]), float(y[k])), float("nan")))
        v = np.nan_to_num(np.clip(v, 0, 1), nan=0.0)
    if "I1" in axioms:
        rise = np.diff(v, axis=0)
        if np.max(rise) > tol:
            k = np.unravel_index(int(np.argmax(rise)), rise.shape)
            out.append(AxiomFailure("I1", (float(x[k]), float(x[k[0] + 1, k[1]]), float(y[k])),
                                    float(rise[k])))
    if "I2" in axioms:
        drop = -np.diff(v, axis=1)
        if np.max(drop) > tol:
            k = np.unravel_index(int(np.argmax(drop)), drop.shape)
            out.append(AxiomFailure("I2", (float(x[k]), float(y[k]), float(y[k[0], k[1] + 1])),
                                    float(drop[k])))
    for name, (ix, iy), want in (("I3", (0, 0), 1.0), ("I4", (-1, -1), 1.0),
                                 ("I5", (-1, 0), 0.0)):
        if name in axioms and abs(v[ix, iy] - want) > tol:
            out.append(AxiomFailure(name, (float(x[ix, iy]), float(y[ix, iy])),
                                    float(abs(v[ix, iy] - want))))
    return out


def make_implication(family: str, params: Mapping[str, Any], func: BinaryFn, *,
                     meta: Mapping[str, Any] | None = None, tabulated: bool = False,
                     strict: bool = True, validate: bool = True,
                     axioms=("I1", "I2", "I3", "I4", "I5"), grid: int = GRID_2D) -> Implication:
    """Wrap ``func`` after a grid check of I1-I5.

    With ``strict`` a failed axiom raises ConstructionError naming it and
    its witness; otherwise the result is marked invalid and keeps the list.
    """
    fails: list[AxiomFailure] = []
    if validate:
        tol = TOL_TABULATED if tabulated else TOL_CLOSED
        fails = axiom_failures(func, grid, tol, axioms)
        if fails and strict:
            first = fails[0]
            raise ConstructionError(f"{family} is not a fuzzy implication: {first}",
                                    first.axiom, first.witness)
    return Implication(family, dict(params), func, not fails, tuple(fails), dict(meta or {}),
                       tabulated)


_FAMILIES: dict[str, Callable[..., Implication]] = {}
ALIASES: dict[str, str] = {}


def register_family(name: str, builder: Callable[..., Implication], *aliases: str) -> None:
    _FAMILIES[name] = builder
    for a in aliases:
        ALIASES[a] = name


def implication(family: str, **params) -> Implication:
    """Build an implication by family name, e.g. ``implication("kleene-dienes")``."""
    family = ALIASES.get(family, family)
    try:
        build = _FAMILIES[family]
    except KeyError:
        raise DescriptorError(f"unknown implication family {family!r}") from None
    try:
        return build(**params)
    except TypeError as exc:
        raise DescriptorError(f"bad parameters for implication {family!r}: {exc}") from exc


def implication_from_descriptor(desc) -> Implication:
    if isinstance(desc, Implication):
        return desc
    if isinstance(desc, str):
        return implication(desc)
    if not isinstance(desc, Mapping) or "family" not in desc:
        raise DescriptorError(
            f"implication descriptor must be an object with 'family', got {desc!r}")
    if desc["family"] == "tabulated":
        return implication("tabulated", grid=desc.get("grid"), values=desc.get("values"))
    return implication(desc["family"], **dict(desc.get("params", {})))
