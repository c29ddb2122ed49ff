"""Constructors for every implication family, plus the named implications."""

from __future__ import annotations

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from .._expr import compile_expr
from .._grid import GRID_NEGATION, sup_bisect, unit_grid
from ..algebra.aggregations import Aggregation, aggregation_from_descriptor
from ..algebra.generators import automorphism, generator_from_descriptor, require_shape
from ..algebra.negations import (STANDARD, Negation, make_negation, negation_from_descriptor,
                                 pseudo_inverse, register_negation_kind)
from ..errors import ParameterError
from .base import Implication, implication_from_descriptor, make_implication, register_family

# -- named implications --------------------------------------------------------

_RC = {"right_continuous": True}


def kleene_dienes() -> Implication:
    return make_implication("kleene-dienes", {}, lambda x, y: np.maximum(1.0 - x, y),
                            validate=False, meta=_RC)


def lukasiewicz() -> Implication:
    return make_implication("lukasiewicz", {}, lambda x, y: np.minimum(1.0, 1.0 - x + y),
                            validate=False, meta=_RC)


def goedel() -> Implication:
    return make_implication("goedel", {}, lambda x, y: np.where(x <= y, 1.0, y),
                            validate=False, meta=_RC)


def goguen() -> Implication:
    def f(x, y):
        safe = np.where(x == 0.0, 1.0, x)
        return np.where(x <= y, 1.0, y / safe)
    return make_implication("goguen", {}, f, validate=False, meta=_RC)


def reichenbach() -> Implication:
    return make_implication("reichenbach", {}, lambda x, y: 1.0 - x + x * y,
                            validate=False, meta=_RC)


def weber() -> Implication:
    return make_implication("weber", {}, lambda x, y: np.where(x < 1.0, 1.0, y),
                            validate=False, meta=_RC)


def yager() -> Implication:
    f = lambda x, y: np.where((x == 0.0) & (y == 0.0), 1.0, y ** x)  # noqa: E731
    return make_implication("yager", {}, f, validate=False, meta=_RC)


def greatest() -> Implication:
    return make_implication("greatest", {},
                            lambda x, y: np.where((x == 1.0) & (y == 0.0), 0.0, 1.0),
                            validate=False, meta={"right_continuous": False})


def least() -> Implication:
    return make_implication("least", {},
                            lambda x, y: np.where((x == 0.0) | (y == 1.0), 1.0, 0.0),
                            validate=False, meta={"right_continuous": False})


# -- (A,N)- and A-implications -----------------------------------------------------

def _require_disjunctor(a: Aggregation, role: str) -> None:
    if not (float(a(0.0, 1.0)) == 1.0 and float(a(1.0, 0.0)) == 1.0):
        raise ParameterError(f"{role} needs a disjunctor (A(0,1)=A(1,0)=1); {a.kind!r} is not")


def an_implication(aggregation, negation) -> Implication:
    """I(x,y) = A(N(x), y) for a disjunctor A and a negation N."""
    a = aggregation_from_descriptor(aggregation)
    n = negation_from_descriptor(negation)
    _require_disjunctor(a, "(A,N)-implication")
    return make_implication("an", {"aggregation": a, "negation": n},
                            lambda x, y: a(n(x), y), tabulated=a.tabulated or n.tabulated)


def a_implication(aggregation) -> Implication:
    """The (A,N)-implication with the standard negation."""
    a = aggregation_from_descriptor(aggregation)
    _require_disjunctor(a, "A-implication")
    return make_implication("a", {"aggregation": a}, lambda x, y: a(1.0 - x, y),
                            tabulated=a.tabulated)


# -- residual implications ---------------------------------------------------------

def _residual_func(a: Aggregation):
    kind = a.kind
    name = a.params.get("name") if kind == "copula" else None
    if kind == "min" or name == "min":
        return goedel().func, True
    if kind == "product" or name == "product":
        return goguen().func, True
    if kind == "lukasiewicz-tnorm" or name == "lukasiewicz":
        return lukasiewicz().func, True
    if kind == "threshold-mean":
        th = float(a.params["threshold"])

        def f(x, y):
            safe = np.where(x == 0.0, 1.0, x)
            return np.where(x < th, 1.0, np.minimum(1.0, np.maximum(2.0 * y - x, th / safe)))
        return f, True
    if kind == "generated-tnorm":
        gen = a.params["t"]

        def f(x, y):
            x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
            with np.errstate(invalid="ignore"):
                gap = np.where(x <= y, 0.0, gen(y) - gen(x))
            return np.where(x <= y, 1.0, gen.inv(np.maximum(0.0, gap)))
        return f, True

    def f(x, y):
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        return sup_bisect(lambda t: np.asarray(a(x, t)) <= y, x.shape)
    return f, False


def residual_implication(aggregation, strict: bool = True) -> Implication:
    """I_A(x,y) = sup{t : A(x,t) <= y}.

    Closed forms are used for min, product, the Lukasiewicz t-norm, t-norms
    with an additive generator and the threshold mean; anything else is computed by bisection on t, which is
    valid because A(x, .) is non-decreasing. With ``strict=False`` an
    operator failing I1-I5 is returned marked invalid instead of rejected.
    """
    a = aggregation_from_descriptor(aggregation)
    func, analytic = _residual_func(a)
    return make_implication("r", {"aggregation": a}, func, strict=strict,
                            tabulated=a.tabulated, meta={"analytic": analytic})


def ql_implication(a1, a2, negation) -> Implication:
    """I(x,y) = A1(N(x), A2(x,y)), accepted only if I1 and I3-I5 hold on the grid."""
    s = aggregation_from_descriptor(a1)
    t = aggregation_from_descriptor(a2)
    n = negation_from_descriptor(negation)
    return make_implication("ql", {"a1": s, "a2": t, "negation": n},
                            lambda x, y: s(n(x), t(x, y)),
                            axioms=("I1", "I3", "I4", "I5"),
                            tabulated=s.tabulated or t.tabulated or n.tabulated)


# -- generated implications --------------------------------------------------------

def f_implication(f) -> Implication:
    """I(x,y) = f^{-1}(x f(y)) with 0 * inf = 0."""
    gen = require_shape(generator_from_descriptor(f), "decreasing-to-zero")

    def func(x, y):
        fy = gen(y)
        prod = np.where(x == 0.0, 0.0, x * np.where(x == 0.0, 0.0, fy))
        return gen.inv(prod)
    return make_implication("f-generated", {"f": gen}, func, tabulated=gen.tabulated,
                            meta=_RC)


def g_implication(g) -> Implication:
    """I(x,y) = g^{(-1)}(g(y)/x) with 0 * inf = inf, g^{(-1)} = 1 above g(1)."""
    gen = require_shape(generator_from_descriptor(g), "increasing-from-zero")

    def func(x, y):
        gy = gen(y)
        safe = np.where(x == 0.0, 1.0, x)
        ratio = np.where(x == 0.0, np.inf, gy / safe)
        return gen.inv(ratio)
    return make_implication("g-generated", {"g": gen}, func, tabulated=gen.tabulated,
                            meta=_RC)


def probabilistic_implication(copula) -> Implication:
    """I_C(x,y) = C(x,y)/x for x > 0 and 1 at x = 0; rejected unless I1 holds."""
    c = aggregation_from_descriptor(copula)
    if not c.meta.get("copula"):
        raise ParameterError(f"probabilistic implication needs a copula, got {c.kind!r}")

    def func(x, y):
        safe = np.where(x == 0.0, 1.0, x)
        return np.where(x == 0.0, 1.0, np.asarray(c(x, y)) / safe)
    return make_implication("probabilistic", {"copula": c}, func, tabulated=c.tabulated)


def probabilistic_s_implication(copula) -> Implication:
    """I(x,y) = C(x,y) - x + 1."""
    c = aggregation_from_descriptor(copula)
    if not c.meta.get("copula"):
        raise ParameterError(f"probabilistic S-implication needs a copula, got {c.kind!r}")
    return make_implication("probabilistic-s", {"copula": c},
                            lambda x, y: np.asarray(c(x, y)) - x + 1.0, tabulated=c.tabulated)


def power_implication(tnorm) -> Implication:
    """T-power implication in closed form: min or an Archimedean t-norm with known generator."""
    t = aggregation_from_descriptor(tnorm)
    cls = t.meta.get("tnorm_class")
    if cls == "min":
        return make_implication("t-power", {"tnorm": t}, lambda x, y: np.where(x <= y, 1.0, 0.0),
                                validate=False, meta={"tnorm_class": cls})
    if cls in ("strict", "nilpotent") and "additive_generator" in t.meta:
        gen = generator_from_descriptor(t.meta["additive_generator"])

        def func(x, y):
            tx, ty = gen(x), gen(y)
            ratio = np.where(np.isinf(ty), 0.0, tx / np.where(ty == 0.0, 1.0, ty))
            return np.where(x <= y, 1.0, ratio)
        return make_implication("t-power", {"tnorm": t}, func,
                                meta={"tnorm_class": cls, "generator": gen.descriptor()})
    raise ParameterError(
        f"T-power implication is only available for min and catalog Archimedean t-norms "
        f"with a known additive generator; got {t.kind!r}")


# -- implications built from a conjunctor and a negation -----------------------

def from_aggregation(aggregation, negation) -> Implication:
    """I(x,y) = N(A(x, Ñ(y))) for a conjunctor A and a continuous negation N."""
    a = aggregation_from_descriptor(aggregation)
    n = negation_from_descriptor(negation)
    back = pseudo_inverse(n)
    return make_implication("from-aggregation", {"aggregation": a, "negation": n},
                            lambda x, y: n(a(x, back(y))), tabulated=a.tabulated or n.tabulated)


def negation_meet(negation, strict: bool = True) -> Implication:
    """1 if x=0 or y=1, N(x) if y=0, min(N(x), y) otherwise.

    For any negation with N(x) > 0 somewhere in (0,1) this violates I2 near
    y = 0, so it is normally built with ``strict=False`` to exhibit that.
    """
    n = negation_from_descriptor(negation)

    def func(x, y):
        nx = np.asarray(n(x))
        return np.where((x == 0.0) | (y == 1.0), 1.0, np.where(y == 0.0, nx, np.minimum(nx, y)))
    return make_implication("negation-meet", {"negation": n}, func, tabulated=n.tabulated,
                            strict=strict)


def representable_companion(g, negation=None) -> Implication:
    """Two-branch implication paired with g^{-1}((g(x)+g(y)-g(1)) v 0).

    With f = g o N^{-1}: I(x,y) = 1 if f(N(x)) + f(y) <= f(0), otherwise
    f^{-1}(f(N(x)) + f(y) - f(0)). N must be strict; it defaults to the
    standard negation.
    """
    gen = require_shape(generator_from_descriptor(g), "increasing-from-zero")
    if not np.isfinite(gen.at1):
        raise ParameterError("representable companion needs a bounded generator (g(1) < inf)")
    n = STANDARD if negation is None else negation_from_descriptor(negation)
    if not n.strict:
        raise ParameterError(f"representable companion needs a strict negation; "
                             f"{n.kind!r} is not strict")
    ninv = pseudo_inverse(n)
    f = lambda v: gen(ninv(v))  # noqa: E731
    f0 = gen.at1

    def func(x, y):
        s = f(n(x)) + f(y)
        # slack keeps round-off on the branch boundary from flipping the branch
        return np.where(s <= f0 * (1 + 1e-12), 1.0, np.asarray(n(gen.inv(s - f0))))
    params = {"g": gen} if negation is None else {"g": gen, "negation": n}
    return make_implication("representable-companion", params, func,
                            tabulated=gen.tabulated or n.tabulated)


def conjugate_implication(implication, phi) -> Implication:
    """phi^{-1}(I(phi(x), phi(y))) for an automorphism phi."""
    i = implication_from_descriptor(implication)
    p = automorphism(phi)
    return make_implication("conjugate-of", {"implication": i, "phi": p},
                            lambda x, y: p.inv(i(p(x), p(y))), meta=dict(i.meta),
                            tabulated=i.tabulated or p.tabulated)


# -- user-supplied forms -----------------------------------------------------------

def closed_form(expr=None, func=None, strict: bool = True) -> Implication:
    if (expr is None) == (func is None):
        raise ParameterError("closed-form implication needs exactly one of expr or func")
    fn = compile_expr(expr, ("x", "y")) if expr is not None else func
    return make_implication("closed-form", {"expr": expr} if expr is not None else {}, fn,
                            strict=strict)


def tabulated(grid, values) -> Implication:
    grid = np.asarray(grid, dtype=float)
    values = np.asarray(values, dtype=float)
    if grid.ndim != 1 or values.shape != (len(grid), len(grid)):
        raise ParameterError("tabulated implication needs a 1-D grid and a square value table")
    if grid[0] != 0.0 or grid[-1] != 1.0 or np.any(np.diff(grid) <= 0):
        raise ParameterError("tabulated implication grid must increase strictly from 0 to 1")
    interp = RegularGridInterpolator((grid, grid), values)

    def f(x, y):
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        return interp(np.stack([x.ravel(), y.ravel()], axis=-1)).reshape(x.shape)
    return make_implication("tabulated", {"grid": tuple(grid),
                                          "values": tuple(map(tuple, values))},
                            f, tabulated=True)


# -- natural negation --------------------------------------------------------------

def natural_negation(impl) -> Negation:
    """N_I(x) = I(x, 0)."""
    i = implication_from_descriptor(impl)
    func = lambda x: np.asarray(i(x, np.zeros_like(np.asarray(x, dtype=float))))  # noqa: E731
    u = unit_grid(GRID_NEGATION)
    v = func(u)
    involutive = bool(np.max(np.abs(func(v) - u)) <= 1e-9)
    return make_negation("natural-of-implication", {"implication": i}, func,
                         involutive=involutive, pinv=func if involutive else None,
                         tabulated=i.tabulated)


register_negation_kind("natural-of-implication", lambda implication: natural_negation(implication))

for _name, _builder, _aliases in (
    ("kleene-dienes", kleene_dienes, ("kd", "kleene")),
    ("lukasiewicz", lukasiewicz, ("lukasiewicz-implication", "luk")),
    ("goedel", goedel, ("godel", "gödel")),
    ("goguen", goguen, ()),
    ("reichenbach", reichenbach, ()),
    ("weber", weber, ()),
    ("yager", yager, ()),
    ("greatest", greatest, ()),
    ("least", least, ("smallest",)),
    ("an", an_implication, ("an-implication",)),
    ("a", a_implication, ("a-implication",)),
    ("r", residual_implication, ("r-implication", "residual")),
    ("ql", ql_implication, ("ql-operation", "ql-implication")),
    ("f-generated", f_implication, ("f-implication",)),
    ("g-generated", g_implication, ("g-implication",)),
    ("probabilistic", probabilistic_implication, ()),
    ("probabilistic-s", probabilistic_s_implication, ()),
    ("t-power", power_implication, ("power",)),
    ("from-aggregation", from_aggregation, ()),
    ("negation-meet", negation_meet, ()),
    ("representable-companion", representable_companion, ()),
    ("conjugate-of", conjugate_implication, ()),
    ("closed-form", closed_form, ()),
    ("tabulated", tabulated, ()),
):
    register_family(_name, _builder, *_aliases)
