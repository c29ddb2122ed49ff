"""Binary aggregation functions on the unit square: catalog, evaluation, transforms."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Mapping

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from .._expr import compile_expr
from .._grid import TOL_CLOSED, TOL_TABULATED, as_unit, mesh2, scalar_or_array
from ..errors import ConstructionError, DescriptorError, ParameterError
from .generators import Generator, automorphism, generator_from_descriptor, require_shape
from .negations import STANDARD, Negation, negation_from_descriptor, pseudo_inverse

BinaryFn = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True, eq=False)
class Aggregation:
    """A non-decreasing map A: [0,1]^2 -> [0,1] with A(0,0)=0 and A(1,1)=1.

    ``meta`` carries catalog knowledge a grid cannot establish: continuity
    flags, the t-norm class (``"min"``, ``"strict"``, ``"nilpotent"``) and
    the additive generator for Archimedean t-norms, copula membership.
    """

    kind: str
    params: Mapping[str, Any]
    func: BinaryFn = field(repr=False)
    meta: Mapping[str, Any] = field(default_factory=dict, repr=False)
    tabulated: bool = False

    def __call__(self, x, y):
        xa = as_unit(x, "aggregation first argument")
        ya = as_unit(y, "aggregation second argument")
        xa, ya = np.broadcast_arrays(xa, ya)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            raw = np.clip(np.asarray(self.func(xa, ya), dtype=float), 0.0, 1.0)
        out = np.where((xa == 0.0) & (ya == 0.0), 0.0, raw)
        out = np.where((xa == 1.0) & (ya == 1.0), 1.0, out)
        return scalar_or_array(out)

    @property
    def tol(self) -> float:
        return TOL_TABULATED if self.tabulated else TOL_CLOSED

    def descriptor(self) -> dict:
        if self.kind == "tabulated":
            return {"kind": "tabulated", "grid": list(self.params["grid"]),
                    "values": [list(r) for r in self.params["values"]]}
        if self.kind == "closed-form" and "expr" not in self.params:
            raise DescriptorError("aggregation built from a Python callable has no JSON form")
        out = {}
        for key, value in self.params.items():
            out[key] = value.descriptor() if hasattr(value, "descriptor") else value
        return {"kind": self.kind, "params": out}


def eval_aggregation(a: Aggregation, x, y):
    """A(x, y); raises DomainError outside the unit square."""
    return a(x, y)


def make_aggregation(kind: str, params: Mapping[str, Any], func: BinaryFn, *,
                     meta: Mapping[str, Any] | None = None, tabulated: bool = False,
                     validate: bool = True, grid: int = 101) -> Aggregation:
    """Wrap ``func`` after checking A1 exactly and A2 on a ``grid``-point square."""
    tol = TOL_TABULATED if tabulated else TOL_CLOSED
    if validate:
        x, y = mesh2(grid)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            v = np.asarray(func(x, y), dtype=float)
        if abs(v[0, 0]) > tol or abs(v[-1, -1] - 1.0) > tol:
            raise ConstructionError(
                f"{kind} violates A1: A(0,0)={v[0, 0]!r}, A(1,1)={v[-1, -1]!r}", "A1")
        if np.any(~np.isfinite(v)) or np.any(v < -tol) or np.any(v > 1 + tol):
            raise ConstructionError(f"{kind} leaves [0, 1] on the grid", "range")
        for axis in (0, 1):
            drop = -np.diff(v, axis=axis)
            if np.any(drop > tol):
                idx = np.unravel_index(int(np.argmax(drop)), drop.shape)
                raise ConstructionError(
                    f"{kind} violates A2 (not non-decreasing in argument {axis + 1}) "
                    f"near ({x[idx]:.4f}, {y[idx]:.4f})", "A2", (float(x[idx]), float(y[idx])))
    return Aggregation(kind, dict(params), func, dict(meta or {}), tabulated)


# -- catalog -----------------------------------------------------------------

_TNORM = {"conjunctor": True, "associative": True, "commutative": True, "neutral": 1.0}
_TCONORM = {"disjunctor": True, "associative": True, "commutative": True, "neutral": 0.0}


def _min():
    return make_aggregation("min", {}, np.minimum, validate=False,
                            meta={**_TNORM, "tnorm_class": "min", "continuous": True,
                                  "copula": True})


def _product():
    return make_aggregation("product", {}, lambda x, y: x * y, validate=False,
                            meta={**_TNORM, "tnorm_class": "strict", "continuous": True,
                                  "copula": True, "additive_generator": {"kind": "neg-log"}})


def _lukasiewicz():
    return make_aggregation("lukasiewicz-tnorm", {}, lambda x, y: np.maximum(0.0, x + y - 1.0),
                            validate=False,
                            meta={**_TNORM, "tnorm_class": "nilpotent", "continuous": True,
                                  "copula": True, "additive_generator": {"kind": "one-minus"}})


def _max():
    return make_aggregation("max", {}, np.maximum, validate=False,
                            meta={**_TCONORM, "continuous": True})


def _probabilistic_sum():
    return make_aggregation("probabilistic-sum", {}, lambda x, y: 1.0 - (1.0 - x) * (1.0 - y),
                            validate=False,
                            meta={**_TCONORM, "continuous": True})


def _bounded_sum():
    return make_aggregation("bounded-sum", {}, lambda x, y: np.minimum(1.0, x + y),
                            validate=False, meta={**_TCONORM, "continuous": True})


def _drastic():
    f = lambda x, y: np.where(np.maximum(x, y) == 1.0, np.minimum(x, y), 0.0)  # noqa: E731
    return make_aggregation("drastic", {}, f, validate=False,
                            meta={**_TNORM, "continuous": False, "left_continuous": False})


def _smallest_conjunctor():
    f = lambda x, y: np.where((x == 1.0) & (y == 1.0), 1.0, 0.0)  # noqa: E731
    return make_aggregation("smallest-conjunctor", {}, f, validate=False,
                            meta={"conjunctor": True, "associative": True, "commutative": True,
                                  "continuous": False, "left_continuous": False})


def _greatest_averaging_conjunctor():
    f = lambda x, y: np.where((x == 0.0) | (y == 0.0), 0.0, np.maximum(x, y))  # noqa: E731
    return make_aggregation("greatest-averaging-conjunctor", {}, f, validate=False,
                            meta={"conjunctor": True, "associative": True, "commutative": True,
                                  "continuous": False})


def _threshold_mean(threshold: float = 0.5):
    """0 below the hyperbola ``xy = threshold``, the arithmetic mean above it."""
    if not 0 < threshold <= 1:
        raise ParameterError(f"threshold-mean needs 0 < threshold <= 1, got {threshold}")
    f = lambda x, y: np.where(x * y < threshold, 0.0, 0.5 * (x + y))  # noqa: E731
    return make_aggregation("threshold-mean", {"threshold": threshold}, f,
                            meta={"commutative": True, "left_continuous": False,
                                  "continuous": False})


def _generated_tnorm(t):
    gen = require_shape(generator_from_descriptor(t), "decreasing-to-zero")
    f = lambda x, y: gen.inv(np.minimum(gen.at0, gen(x) + gen(y)))  # noqa: E731
    cls = "strict" if np.isinf(gen.at0) else "nilpotent"
    return make_aggregation("generated-tnorm", {"t": gen}, f,
                            meta={**_TNORM, "tnorm_class": cls, "continuous": True,
                                  "additive_generator": gen.descriptor()})


def _representable(g, negation=None):
    gen = require_shape(generator_from_descriptor(g), "increasing-from-zero")
    if not np.isfinite(gen.at1):
        raise ParameterError("representable aggregation needs a bounded generator (g(1) < inf)")
    if negation is None:
        from .negations import negation as make_neg
        neg = make_neg("generator-based", g=gen)
    else:
        neg = negation_from_descriptor(negation)
        if not neg.strong:
            raise ParameterError("representable aggregation needs a strong negation")

    def f(x, y):
        lo, hi = np.minimum(x, y), np.maximum(x, y)
        return gen.inv(np.maximum(0.0, gen(lo) - gen(neg(hi))))

    params = {"g": gen} if negation is None else {"g": gen, "negation": neg}
    return make_aggregation("representable", params, f,
                            meta={"commutative": True, "continuous": True})


def _mix(gen: Generator, lam: float, a, b):
    fa, fb = gen(a), gen(b)
    s = (1.0 - lam) * fa + lam * fb
    # opposite infinities: resolve toward the generator's value at 0
    s = np.where(np.isnan(s), gen.at0, s)
    return gen.inv(s)


def _wqam(f, lam: float):
    if not 0 < lam < 1:
        raise ParameterError(f"WQAM needs 0 < lambda < 1, got {lam}")
    gen = require_shape(generator_from_descriptor(f), "monotone")
    return make_aggregation("wqam", {"f": gen, "lam": lam},
                            lambda x, y: _mix(gen, lam, x, y), meta={"continuous": True})


def _ts_function(tnorm, tconorm, f, lam: float):
    if not 0 < lam < 1:
        raise ParameterError(f"TS-function needs 0 < lambda < 1, got {lam}")
    t = aggregation_from_descriptor(tnorm)
    s = aggregation_from_descriptor(tconorm)
    gen = require_shape(generator_from_descriptor(f), "monotone")
    return make_aggregation("ts-function", {"tnorm": t, "tconorm": s, "f": gen, "lam": lam},
                            lambda x, y: _mix(gen, lam, t(x, y), s(x, y)),
                            meta={"commutative": True})


def _uninorm(family: str = "three-pi", e: float = 0.5):
    if family == "three-pi":
        def f(x, y):
            num = x * y
            den = num + (1.0 - x) * (1.0 - y)
            return np.where(den == 0.0, 0.0, num / np.where(den == 0.0, 1.0, den))
        return make_aggregation("uninorm", {"family": family}, f,
                                meta={"associative": True, "commutative": True, "neutral": 0.5})
    if not 0 < e < 1:
        raise ParameterError(f"uninorm neutral element must lie in (0, 1), got {e}")
    if family == "min-conjunctive":
        f = lambda x, y: np.where((x >= e) & (y >= e), np.maximum(x, y), np.minimum(x, y))  # noqa: E731
    elif family == "max-disjunctive":
        f = lambda x, y: np.where((x <= e) & (y <= e), np.minimum(x, y), np.maximum(x, y))  # noqa: E731
    else:
        raise ParameterError(f"unknown uninorm family {family!r}")
    return make_aggregation("uninorm", {"family": family, "e": e}, f,
                            meta={"associative": True, "commutative": True, "neutral": e})


def _copula(name: str = "product", theta: float | None = None):
    meta = {"copula": True, "commutative": True, "neutral": 1.0, "continuous": True}
    if name == "product":
        f = lambda x, y: x * y  # noqa: E731
    elif name == "min":
        f = np.minimum
    elif name == "lukasiewicz":
        f = lambda x, y: np.maximum(0.0, x + y - 1.0)  # noqa: E731
    elif name == "fgm":
        if theta is None or not -1 <= theta <= 1:
            raise ParameterError("FGM copula needs -1 <= theta <= 1")
        f = lambda x, y: x * y * (1.0 + theta * (1.0 - x) * (1.0 - y))  # noqa: E731
    elif name == "clayton":
        if theta is None or not theta > 0:
            raise ParameterError("Clayton copula needs theta > 0")

        def f(x, y):
            safe = (x > 0) & (y > 0)
            xs, ys = np.where(safe, x, 1.0), np.where(safe, y, 1.0)
            return np.where(safe, (xs ** -theta + ys ** -theta - 1.0) ** (-1.0 / theta), 0.0)
    elif name == "frank":
        if theta is None or theta == 0:
            raise ParameterError("Frank copula needs theta != 0")
        f = lambda x, y: -np.log1p(np.expm1(-theta * x) * np.expm1(-theta * y)  # noqa: E731
                                   / np.expm1(-theta)) / theta
    else:
        raise ParameterError(f"unknown copula {name!r}")
    params = {"name": name} if theta is None else {"name": name, "theta": theta}
    return make_aggregation("copula", params, f, meta=meta)


def _tabulated(grid, values):
    grid = np.asarray(grid, dtype=float)
    values = np.asarray(values, dtype=float)
    if grid.ndim != 1 or values.shape != (len(grid), len(grid)):
        raise ParameterError("tabulated aggregation needs a 1-D grid and a square value table")
    if grid[0] != 0.0 or grid[-1] != 1.0 or np.any(np.diff(grid) <= 0):
        raise ParameterError("tabulated aggregation grid must increase strictly from 0 to 1")
    interp = RegularGridInterpolator((grid, grid), values)

    def f(x, y):
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        pts = np.stack([x.ravel(), y.ravel()], axis=-1)
        return interp(pts).reshape(x.shape)

    return make_aggregation("tabulated", {"grid": tuple(grid),
                                          "values": tuple(map(tuple, values))},
                            f, tabulated=True, meta={"continuous": True})


def _closed_form(expr=None, func=None):
    if (expr is None) == (func is None):
        raise ParameterError("closed-form aggregation needs exactly one of expr or func")
    fn = compile_expr(expr, ("x", "y")) if expr is not None else func
    return make_aggregation("closed-form", {"expr": expr} if expr is not None else {}, fn)


def _n_dual_kind(aggregation, negation):
    return n_dual_of(aggregation_from_descriptor(aggregation), negation_from_descriptor(negation),
                     require_strict=False)


def _conjugate_kind(aggregation, phi):
    return conjugate(aggregation_from_descriptor(aggregation), phi)


_CATALOG: dict[str, Callable[..., Aggregation]] = {
    "min": _min,
    "product": _product,
    "lukasiewicz-tnorm": _lukasiewicz,
    "max": _max,
    "probabilistic-sum": _probabilistic_sum,
    "bounded-sum": _bounded_sum,
    "drastic": _drastic,
    "smallest-conjunctor": _smallest_conjunctor,
    "greatest-averaging-conjunctor": _greatest_averaging_conjunctor,
    "threshold-mean": _threshold_mean,
    "generated-tnorm": _generated_tnorm,
    "representable": _representable,
    "wqam": _wqam,
    "ts-function": _ts_function,
    "uninorm": _uninorm,
    "copula": _copula,
    "closed-form": _closed_form,
    "n-dual-of": _n_dual_kind,
    "conjugate-of": _conjugate_kind,
}

ALIASES = {
    "minimum": "min", "tm": "min", "prod": "product", "tp": "product",
    "lukasiewicz": "lukasiewicz-tnorm", "tl": "lukasiewicz-tnorm",
    "maximum": "max", "sp": "probabilistic-sum", "sl": "bounded-sum",
    "cavg": "greatest-averaging-conjunctor",
}


def register_aggregation_kind(kind: str, builder: Callable[..., Aggregation]) -> None:
    """Let other modules add descriptor kinds (e.g. companion constructions)."""
    _CATALOG[kind] = builder


def aggregation(kind: str, **params) -> Aggregation:
    """Build a catalog aggregation, e.g. ``aggregation("copula", name="fgm", theta=0.5)``."""
    kind = ALIASES.get(kind, kind)
    if kind == "tabulated":
        return _tabulated(params["grid"], params["values"])
    try:
        build = _CATALOG[kind]
    except KeyError:
        raise DescriptorError(f"unknown aggregation kind {kind!r}") from None
    try:
        return build(**params)
    except TypeError as exc:
        raise DescriptorError(f"bad parameters for aggregation {kind!r}: {exc}") from exc


def aggregation_from_descriptor(desc) -> Aggregation:
    if isinstance(desc, Aggregation):
        return desc
    if isinstance(desc, str):
        return aggregation(desc)
    if not isinstance(desc, Mapping) or "kind" not in desc:
        raise DescriptorError(f"aggregation descriptor must be an object with 'kind', got {desc!r}")
    if desc["kind"] == "tabulated":
        return aggregation("tabulated", grid=desc.get("grid"), values=desc.get("values"))
    return aggregation(desc["kind"], **dict(desc.get("params", {})))


MIN = _min()
PRODUCT = _product()
LUKASIEWICZ = _lukasiewicz()
MAX = _max()


# -- transforms --------------------------------------------------------------

def n_dual_of(a: Aggregation, n: Negation, require_strict: bool = True) -> Aggregation:
    """``(x, y) -> Ñ(A(N(x), N(y)))``; equals the N-dual when N is strict."""
    if require_strict and not n.strict:
        raise ParameterError(f"N-dual needs a strict negation; {n.kind!r} is not strict")
    if not n.continuous:
        raise ParameterError(f"N-dual needs a continuous negation; {n.kind!r} is not")
    back = pseudo_inverse(n)
    meta = {k: a.meta[k] for k in ("associative", "commutative", "continuous") if k in a.meta}
    return make_aggregation("n-dual-of", {"aggregation": a, "negation": n},
                            lambda x, y: back(a(n(x), n(y))), meta=meta,
                            tabulated=a.tabulated or n.tabulated)


def n_dual(a: Aggregation, n: Negation) -> Aggregation:
    """The N-dual ``N^{-1}(A(N(x), N(y)))`` for a strict negation N."""
    return n_dual_of(a, n, require_strict=True)


def conjugate(a: Aggregation, phi) -> Aggregation:
    """The phi-conjugate ``phi^{-1}(A(phi(x), phi(y)))`` for an automorphism phi."""
    phi = automorphism(phi)
    meta = {k: a.meta[k] for k in ("associative", "commutative", "continuous", "conjunctor",
                                   "disjunctor") if k in a.meta}
    return make_aggregation("conjugate-of", {"aggregation": a, "phi": phi},
                            lambda x, y: phi.inv(a(phi(x), phi(y))), meta=meta,
                            tabulated=a.tabulated or phi.tabulated)


def standard_dual(a: Aggregation) -> Aggregation:
    return n_dual(a, STANDARD)
