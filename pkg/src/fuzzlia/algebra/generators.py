"""Monotone generator functions on [0, 1] and automorphisms of the unit interval.

Generators feed the parametrised operator families: f- and g-implications,
additive generators of Archimedean t-norms, weighted quasi-arithmetic means,
representable aggregations and generator-based negations. Values may be
infinite at one end point (``-ln u`` at 0, for instance).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Mapping

import numpy as np

from .._expr import compile_expr
from .._grid import sup_bisect
from ..errors import DescriptorError, ParameterError


@dataclass(frozen=True, eq=False)
class Generator:
    kind: str
    params: Mapping[str, Any]
    forward: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    inverse: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    increasing: bool
    at0: float
    at1: float
    tabulated: bool = False

    def __call__(self, u):
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            return self.forward(np.asarray(u, dtype=float))

    def inv(self, v):
        """Inverse, with arguments clipped into the generator's range first."""
        lo, hi = sorted((self.at0, self.at1))
        v = np.clip(np.asarray(v, dtype=float), lo, hi)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            out = self.inverse(v)
        # end points of the range map back exactly; sums landing a few ulps short
        # of a finite end point are rounding, and inverses with infinite slope there
        # (1 - u^p, say) would blow that up to ~1e-8
        out = np.where(_near(v, self.at0), 0.0, out)
        out = np.where(_near(v, self.at1), 1.0, out)
        return np.clip(out, 0.0, 1.0)

    @property
    def range_max(self) -> float:
        return max(self.at0, self.at1)

    def descriptor(self) -> dict:
        if self.kind == "tabulated":
            return {"kind": "tabulated", "grid": list(self.params["grid"]),
                    "values": list(self.params["values"])}
        return {"kind": self.kind, "params": dict(self.params)}


def _near(v, end):
    if not np.isfinite(end):
        return v == end
    return np.abs(v - end) <= 8 * np.finfo(float).eps * max(1.0, abs(end))


def _numeric_inverse(fwd, increasing):
    def inv(v):
        v = np.asarray(v, dtype=float)
        if increasing:
            return sup_bisect(lambda t: fwd(t) <= v, v.shape)
        return sup_bisect(lambda t: fwd(t) >= v, v.shape)
    return inv


def _identity():
    return Generator("identity", {}, lambda u: u, lambda v: v, True, 0.0, 1.0)


def _power(p: float):
    if not p > 0:
        raise ParameterError(f"power generator needs p > 0, got {p}")
    return Generator("power", {"p": p}, lambda u: u ** p, lambda v: v ** (1.0 / p), True, 0.0, 1.0)


def _neg_log():
    return Generator("neg-log", {}, lambda u: -np.log(u), lambda v: np.exp(-v), False, np.inf, 0.0)


def _one_minus():
    return Generator("one-minus", {}, lambda u: 1.0 - u, lambda v: 1.0 - v, False, 1.0, 0.0)


def _one_minus_power(p: float):
    if not p > 0:
        raise ParameterError(f"one-minus-power generator needs p > 0, got {p}")
    return Generator("one-minus-power", {"p": p}, lambda u: 1.0 - u ** p,
                     lambda v: (1.0 - v) ** (1.0 / p), False, 1.0, 0.0)


def _neg_log_complement():
    return Generator("neg-log-complement", {}, lambda u: -np.log1p(-u),
                     lambda v: -np.expm1(-v), True, 0.0, np.inf)


def _tabulated(grid, values):
    grid = np.asarray(grid, dtype=float)
    values = np.asarray(values, dtype=float)
    if grid.ndim != 1 or grid.shape != values.shape or len(grid) < 2:
        raise ParameterError("tabulated generator needs equal-length 1-D grid and values")
    if grid[0] != 0.0 or grid[-1] != 1.0 or np.any(np.diff(grid) <= 0):
        raise ParameterError("tabulated generator grid must increase strictly from 0 to 1")
    d = np.diff(values)
    if not (np.all(d > 0) or np.all(d < 0)) or not np.all(np.isfinite(values)):
        raise ParameterError("tabulated generator values must be finite and strictly monotone")
    increasing = bool(d[0] > 0)
    if increasing:
        inv = lambda v: np.interp(v, values, grid)  # noqa: E731
    else:
        inv = lambda v: np.interp(v, values[::-1], grid[::-1])  # noqa: E731
    return Generator("tabulated", {"grid": tuple(grid), "values": tuple(values)},
                     lambda u: np.interp(u, grid, values), inv, increasing,
                     float(values[0]), float(values[-1]), tabulated=True)


def _closed_form(expr: str, increasing: bool | None = None):
    fwd = compile_expr(expr, ("u",))
    with np.errstate(divide="ignore", invalid="ignore"):
        a0, a1 = float(fwd(0.0)), float(fwd(1.0))
    if increasing is None:
        increasing = a1 > a0
    return Generator("closed-form", {"expr": expr, "increasing": bool(increasing)}, fwd,
                     _numeric_inverse(fwd, increasing), bool(increasing), a0, a1)


_CATALOG: dict[str, Callable[..., Generator]] = {
    "identity": _identity,
    "power": _power,
    "neg-log": _neg_log,
    "one-minus": _one_minus,
    "one-minus-power": _one_minus_power,
    "neg-log-complement": _neg_log_complement,
    "closed-form": _closed_form,
}


def generator(kind: str, **params) -> Generator:
    """Build a catalog generator, e.g. ``generator("power", p=2)``."""
    if kind == "tabulated":
        return _tabulated(params["grid"], params["values"])
    try:
        build = _CATALOG[kind]
    except KeyError:
        raise DescriptorError(f"unknown generator kind {kind!r}") from None
    try:
        return build(**params)
    except TypeError as exc:
        raise DescriptorError(f"bad parameters for generator {kind!r}: {exc}") from exc


def generator_from_descriptor(desc) -> Generator:
    if isinstance(desc, Generator):
        return desc
    if isinstance(desc, str):
        return generator(desc)
    if not isinstance(desc, Mapping) or "kind" not in desc:
        raise DescriptorError(f"generator descriptor must be an object with 'kind', got {desc!r}")
    if desc["kind"] == "tabulated":
        return generator("tabulated", grid=desc.get("grid"), values=desc.get("values"))
    return generator(desc["kind"], **dict(desc.get("params", {})))


def require_shape(g: Generator, role: str, samples: int = 1001) -> Generator:
    """Check ``g`` has the shape an operator family needs; raise ParameterError otherwise.

    Roles: ``"decreasing-to-zero"`` (f-implications, additive generators:
    strictly decreasing, value 0 at 1), ``"increasing-from-zero"``
    (g-implications, representable aggregations: strictly increasing, value 0
    at 0), ``"automorphism"`` (increasing bijection of [0, 1]) and
    ``"monotone"`` (strictly monotone, WQAM generators).
    """
    u = np.arange(samples, dtype=float) / (samples - 1)
    v = g(u)
    d = np.diff(v)
    finite = np.isfinite(d)
    if role == "decreasing-to-zero":
        ok = not g.increasing and g.at1 == 0.0
        ok = ok and bool(np.all(d[finite] < 0))
    elif role == "increasing-from-zero":
        ok = g.increasing and g.at0 == 0.0
        ok = ok and bool(np.all(d[finite] > 0))
    elif role == "automorphism":
        ok = g.increasing and g.at0 == 0.0 and g.at1 == 1.0
        ok = ok and bool(np.all(d > 0))
    elif role == "monotone":
        ok = bool(np.all(d[finite] > 0) or np.all(d[finite] < 0))
    else:
        raise ValueError(f"unknown generator role {role!r}")
    if not ok:
        raise ParameterError(f"generator {g.kind!r} {dict(g.params)} is not {role}")
    return g


def automorphism(desc) -> Generator:
    """An increasing bijection of [0, 1] (for conjugation)."""
    return require_shape(generator_from_descriptor(desc), "automorphism")
