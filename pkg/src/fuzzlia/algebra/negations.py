"""Fuzzy negations: catalog, evaluation and the pseudo-inverse transform."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Mapping

import numpy as np

from .._expr import compile_expr
from .._grid import (GRID_NEGATION, TOL_CLOSED, TOL_TABULATED, as_unit, scalar_or_array,
                     sup_bisect, unit_grid)
from ..errors import ConstructionError, DescriptorError, ParameterError
from .generators import generator_from_descriptor, require_shape

ArrayFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True, eq=False)
class Negation:
    """A non-increasing map of [0, 1] with N(0)=1 and N(1)=0.

    Instances are immutable and compare by identity. Flags left as ``None``
    were not known from the catalog; :func:`negation_flags` estimates them
    on a grid.
    """

    kind: str
    params: Mapping[str, Any]
    func: ArrayFn = field(repr=False)
    continuous: bool | None = None
    strictly_decreasing: bool | None = None
    involutive: bool | None = None
    pinv: ArrayFn | None = field(default=None, repr=False)
    tabulated: bool = False

    def __call__(self, x):
        arr = as_unit(x, "negation argument")
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            raw = np.clip(self.func(arr), 0.0, 1.0)
        out = np.where(arr == 0.0, 1.0, np.where(arr == 1.0, 0.0, raw))
        return scalar_or_array(out)

    @property
    def strict(self) -> bool:
        return bool(self.continuous and self.strictly_decreasing)

    @property
    def strong(self) -> bool:
        return bool(self.involutive)

    def descriptor(self) -> dict:
        if self.kind == "tabulated":
            return {"kind": "tabulated", "grid": list(self.params["grid"]),
                    "values": list(self.params["values"])}
        if self.kind == "closed-form" and "expr" not in self.params:
            raise DescriptorError("negation built from a Python callable has no JSON form")
        return {"kind": self.kind, "params": _jsonable(self.params)}


def _jsonable(params: Mapping[str, Any]) -> dict:
    out = {}
    for key, value in params.items():
        if hasattr(value, "descriptor"):
            out[key] = value.descriptor()
        else:
            out[key] = value
    return out


def eval_negation(n: Negation, x):
    """N(x); raises DomainError outside [0, 1]."""
    return n(x)


def _grid_continuous(func: ArrayFn, samples: int = 10001, max_jump: float = 0.05) -> bool:
    u = unit_grid(samples)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        v = func(u)
    return bool(np.all(np.abs(np.diff(v)) <= max_jump))


def make_negation(kind: str, params: Mapping[str, Any], func: ArrayFn, *,
                  continuous=None, strictly_decreasing=None, involutive=None,
                  pinv=None, tabulated=False, validate=True) -> Negation:
    """Wrap ``func`` as a Negation after checking N1 and N2 on a 1001-point grid."""
    tol = TOL_TABULATED if tabulated else TOL_CLOSED
    if validate:
        u = unit_grid(GRID_NEGATION)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            v = np.asarray(func(u), dtype=float)
        if abs(v[0] - 1.0) > tol or abs(v[-1]) > tol:
            raise ConstructionError(
                f"{kind} negation violates N1: N(0)={v[0]!r}, N(1)={v[-1]!r}", "N1", (0.0, 1.0))
        rises = np.diff(v)
        if np.any(rises > tol):
            k = int(np.argmax(rises))
            raise ConstructionError(f"{kind} negation violates N2 near x={u[k]:.4f}", "N2",
                                    (float(u[k]), float(u[k + 1])))
        if np.any(v < -tol) or np.any(v > 1 + tol):
            raise ConstructionError(f"{kind} negation leaves [0, 1]", "range")
        if continuous is None:
            continuous = _grid_continuous(func)
        if strictly_decreasing is None:
            strictly_decreasing = bool(np.all(rises < 0))
    return Negation(kind, dict(params), func, continuous, strictly_decreasing, involutive,
                    pinv, tabulated)


# -- catalog -----------------------------------------------------------------

def _standard():
    f = lambda x: 1.0 - x  # noqa: E731
    return make_negation("standard", {}, f, continuous=True, strictly_decreasing=True,
                         involutive=True, pinv=f)


def _smallest():
    return make_negation("smallest", {}, lambda x: np.where(x == 0.0, 1.0, 0.0),
                         continuous=False, strictly_decreasing=False, involutive=False)


def _greatest():
    return make_negation("greatest", {}, lambda x: np.where(x == 1.0, 0.0, 1.0),
                         continuous=False, strictly_decreasing=False, involutive=False)


def _sugeno(lam: float):
    if not lam > -1:
        raise ParameterError(f"Sugeno negation needs lambda > -1, got {lam}")
    f = lambda x: (1.0 - x) / (1.0 + lam * x)  # noqa: E731
    return make_negation("sugeno", {"lam": lam}, f, continuous=True, strictly_decreasing=True,
                         involutive=True, pinv=f)


def _yager(w: float):
    if not w > 0:
        raise ParameterError(f"Yager negation needs w > 0, got {w}")
    f = lambda x: (1.0 - x ** w) ** (1.0 / w)  # noqa: E731
    return make_negation("yager", {"w": w}, f, continuous=True, strictly_decreasing=True,
                         involutive=True, pinv=f)


def _power(p: float):
    if not p > 0:
        raise ParameterError(f"power negation needs p > 0, got {p}")
    return make_negation("power", {"p": p}, lambda x: 1.0 - x ** p, continuous=True,
                         strictly_decreasing=True, involutive=(p == 1),
                         pinv=lambda y: (1.0 - y) ** (1.0 / p))


def _generator_based(g):
    gen = require_shape(generator_from_descriptor(g), "increasing-from-zero")
    if not np.isfinite(gen.at1):
        raise ParameterError("generator-based negation needs a bounded generator (g(1) < inf)")
    f = lambda x: gen.inv(gen.at1 - gen(x))  # noqa: E731
    return make_negation("generator-based", {"g": gen}, f, continuous=True,
                         strictly_decreasing=True, involutive=True, pinv=f)


def _tabulated(grid, values):
    grid = np.asarray(grid, dtype=float)
    values = np.asarray(values, dtype=float)
    if grid.ndim != 1 or grid.shape != values.shape or len(grid) < 2:
        raise ParameterError("tabulated negation needs equal-length 1-D grid and values")
    if grid[0] != 0.0 or grid[-1] != 1.0 or np.any(np.diff(grid) <= 0):
        raise ParameterError("tabulated negation grid must increase strictly from 0 to 1")
    return make_negation("tabulated", {"grid": tuple(grid), "values": tuple(values)},
                         lambda x: np.interp(x, grid, values), continuous=True,
                         strictly_decreasing=bool(np.all(np.diff(values) < 0)),
                         tabulated=True)


def _closed_form(expr=None, func=None):
    if (expr is None) == (func is None):
        raise ParameterError("closed-form negation needs exactly one of expr or func")
    fn = compile_expr(expr, ("x",)) if expr is not None else func
    params = {"expr": expr} if expr is not None else {}
    return make_negation("closed-form", params, fn)


_CATALOG: dict[str, Callable[..., Negation]] = {
    "standard": _standard,
    "smallest": _smallest,
    "greatest": _greatest,
    "sugeno": _sugeno,
    "yager": _yager,
    "power": _power,
    "generator-based": _generator_based,
    "closed-form": _closed_form,
}


def register_negation_kind(kind: str, builder: Callable[..., Negation]) -> None:
    """Let other modules add descriptor kinds (e.g. natural negations of implications)."""
    _CATALOG[kind] = builder


def negation(kind: str, **params) -> Negation:
    """Build a catalog negation, e.g. ``negation("sugeno", lam=2.0)``."""
    if kind == "tabulated":
        return _tabulated(params["grid"], params["values"])
    try:
        build = _CATALOG[kind]
    except KeyError:
        raise DescriptorError(f"unknown negation kind {kind!r}") from None
    try:
        return build(**params)
    except TypeError as exc:
        raise DescriptorError(f"bad parameters for negation {kind!r}: {exc}") from exc


def negation_from_descriptor(desc) -> Negation:
    if isinstance(desc, Negation):
        return desc
    if isinstance(desc, str):
        return negation(desc)
    if not isinstance(desc, Mapping) or "kind" not in desc:
        raise DescriptorError(f"negation descriptor must be an object with 'kind', got {desc!r}")
    if desc["kind"] == "tabulated":
        return negation("tabulated", grid=desc.get("grid"), values=desc.get("values"))
    return negation(desc["kind"], **dict(desc.get("params", {})))


STANDARD = _standard()
SMALLEST = _smallest()
GREATEST = _greatest()


# -- transforms --------------------------------------------------------------

def pseudo_inverse(n: Negation) -> Negation:
    """The strictly decreasing negation ``x -> sup{y : N(y) > x}`` with value 1 at 0.

    Accepts continuous negations and strictly decreasing ones (the latter
    covers taking the pseudo-inverse twice). Uses the catalog inverse when
    there is one, bisection on the monotone predicate otherwise.
    """
    if not (n.continuous or n.strictly_decreasing):
        raise ParameterError(
            f"pseudo-inverse needs a continuous negation; {n.kind!r} is not continuous")
    if n.pinv is not None:
        fn = n.pinv
    else:
        def fn(x):
            x = np.asarray(x, dtype=float)
            return sup_bisect(lambda y: n(y) > x, x.shape)
    pinv_back = n.func if n.involutive else None
    return make_negation("pseudo-inverse-of", {"negation": n}, fn,
                         continuous=bool(n.strictly_decreasing and n.continuous),
                         strictly_decreasing=True, involutive=n.involutive,
                         pinv=pinv_back, tabulated=n.tabulated)


def _pseudo_inverse_kind(negation):
    return pseudo_inverse(negation_from_descriptor(negation))


register_negation_kind("pseudo-inverse-of", _pseudo_inverse_kind)


@dataclass(frozen=True)
class NegationFlags:
    n1: bool
    n2: bool
    strict: bool
    strong: bool
    non_filling: bool
    non_vanishing: bool
    points: int
    tol: float


def negation_flags(n: Negation, points: int = GRID_NEGATION, tol: float | None = None) -> NegationFlags:
    """Grid estimate of N1, N2, strictness (N3-N4), strength (N5) and (non-)filling."""
    tol = (TOL_TABULATED if n.tabulated else TOL_CLOSED) if tol is None else tol
    u = unit_grid(points)
    v = np.asarray(n(u))
    n1 = v[0] == 1.0 and v[-1] == 0.0
    n2 = bool(np.all(np.diff(v) <= tol))
    # the continuity flag is set at construction (catalog knowledge or a fine scan)
    strict = bool(np.all(np.diff(v) < 0)) and bool(n.continuous)
    strong = bool(np.max(np.abs(np.asarray(n(v)) - u)) <= max(tol, 1e-9))
    non_filling = bool(np.all(v[1:] < 1.0 - tol))
    non_vanishing = bool(np.all(v[:-1] > tol))
    return NegationFlags(bool(n1), n2, strict, strong, non_filling, non_vanishing, points, tol)
