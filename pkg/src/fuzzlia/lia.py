"""Law-of-importation partners: I(A(x,y),z) = I(x, I(y,z)).

Every construction checks its preconditions on grids first and records
them in ``hypotheses_checked``; the returned pair is then certified with
:func:`check_lia` before it is handed back. Uniqueness is taken from the
construction that was applied, never inferred from a grid.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any

import numpy as np

from ._grid import (GRID_2D, GRID_3D, TOL_CLOSED, Certification, default_tol, mesh2, mesh3,
                    unit_grid)
from .algebra.aggregations import (PRODUCT, MIN, Aggregation, aggregation_from_descriptor,
                                   make_aggregation, n_dual_of, register_aggregation_kind)
from .algebra.classify import (associativity_gap, find_one_divisor, find_zero_divisor,
                               left_continuity_check, check_copula)
from .algebra.generators import generator_from_descriptor, require_shape
from .algebra.negations import (GREATEST, SMALLEST, Negation, negation_flags,
                                negation_from_descriptor, pseudo_inverse)
from .errors import ConstructionError, DescriptorError, HypothesisError, ParameterError
from .implications.base import Implication, implication_from_descriptor
from .implications.families import (an_implication, f_implication, from_aggregation,
                                    g_implication, natural_negation, power_implication,
                                    probabilistic_implication, probabilistic_s_implication,
                                    ql_implication, representable_companion,
                                    residual_implication)
from .implications.properties import PropertyEntry, check_ep, check_lia, check_op


@dataclass(frozen=True)
class Hypothesis:
    name: str
    holds: bool
    certification: str
    detail: str = ""

    def as_dict(self) -> dict:
        return {"name": self.name, "holds": self.holds, "certification": self.certification,
                "detail": self.detail}


@dataclass(frozen=True)
class CompanionResult:
    """Outcome of a companion construction.

    ``partner`` is the constructed operator (aggregation or implication),
    ``implication``/``aggregation`` the certified pair. With
    ``uniqueness == "none"`` there is no partner and ``counterexample``
    or ``source_theorem`` explains why.
    """

    partner: Aggregation | Implication | None
    uniqueness: str
    hypotheses_checked: tuple[Hypothesis, ...]
    source_theorem: str
    implication: Implication | None = None
    aggregation: Aggregation | None = None
    certification: PropertyEntry | None = None
    family_description: str = ""
    counterexample: Any = None
    notes: tuple[str, ...] = field(default=())

    def as_dict(self) -> dict:
        def desc(op):
            if op is None:
                return None
            try:
                return op.descriptor()
            except DescriptorError:
                return repr(op)
        return {
            "partner": desc(self.partner),
            "uniqueness": self.uniqueness,
            "source_theorem": self.source_theorem,
            "implication": desc(self.implication),
            "aggregation": desc(self.aggregation),
            "hypotheses_checked": [h.as_dict() for h in self.hypotheses_checked],
            "certification": None if self.certification is None else self.certification.as_dict(),
            "family_description": self.family_description,
            "counterexample": self.counterexample,
            "notes": list(self.notes),
        }


# -- cached grid facts, keyed by operator identity -----------------------------

@lru_cache(maxsize=512)
def _assoc(a: Aggregation, grid: int) -> tuple[float, tuple]:
    return associativity_gap(a, grid)


@lru_cache(maxsize=512)
def _commutative(a: Aggregation, grid: int, tol: float) -> bool:
    x, y = mesh2(grid)
    v = np.asarray(a(x, y))
    return bool(np.max(np.abs(v - v.T)) <= tol)


class _Ledger:
    def __init__(self):
        self.items: list[Hypothesis] = []

    def record(self, name: str, holds: bool, cert, detail: str = "") -> bool:
        self.items.append(Hypothesis(name, bool(holds), str(cert), detail))
        return bool(holds)

    def require(self, name: str, holds: bool, cert, message: str, detail: str = "",
                witnesses=()) -> None:
        if not self.record(name, holds, cert, detail):
            raise HypothesisError(message, self.items, witnesses)

    def freeze(self) -> tuple[Hypothesis, ...]:
        return tuple(self.items)


def _grid_cert(grid, dims, tol):
    return Certification("grid", grid, dims, tol)


def _is_disjunctor(a: Aggregation) -> bool:
    return float(a(0.0, 1.0)) == 1.0 and float(a(1.0, 0.0)) == 1.0


def _is_conjunctor(a: Aggregation) -> bool:
    return float(a(0.0, 1.0)) == 0.0 and float(a(1.0, 0.0)) == 0.0


def _require_associative(led: _Ledger, a: Aggregation, grid: int, why: str) -> None:
    tol = default_tol(a)
    gap, where = _assoc(a, grid)
    led.require("associative", gap <= tol, _grid_cert(grid, 3, tol),
                f"{a.kind} is not associative on the grid (gap {gap:.3g} at {where}); {why}",
                detail="" if gap <= tol else f"gap {gap:.3g} at {where}",
                witnesses=() if gap <= tol else (where,))


def _certify(led: _Ledger, i: Implication, a: Aggregation, grid: int) -> PropertyEntry:
    ent = check_lia(i, a, grid)
    led.require("LIA certified", ent.holds, ent.certification,
                f"constructed pair fails LIA at {ent.witness} ({ent.detail})",
                witnesses=() if ent.holds else (ent.witness,))
    return ent


def _injective_on_grid(n: Negation, points: int = 1001) -> bool:
    v = np.asarray(n(unit_grid(points)))
    return bool(np.all(np.diff(v) < 0))


def _as_agg(a):
    return aggregation_from_descriptor(a)


def _as_neg(n):
    return negation_from_descriptor(n)


# -- (A,N)-implications -----------------------------------------------------------

def companion_for_an_implication(a, n, grid: int = GRID_3D) -> CompanionResult:
    """Partner of I(x,y) = A(N(x),y): the aggregation Ñ(A(N(x),N(y))).

    Needs an associative disjunctor A and a continuous N. When N is strict
    and the natural negation of I is injective, the partner is the only one.
    """
    a, n = _as_agg(a), _as_neg(n)
    led = _Ledger()
    led.require("disjunctor", _is_disjunctor(a), "exact boundary evaluation",
                f"{a.kind} is not a disjunctor")
    _require_associative(led, a, grid,
                         "associativity is necessary for the N-dual partner")
    led.require("negation continuous", bool(n.continuous), "catalog flag or 10001-point scan",
                f"{n.kind} negation is not continuous; for the smallest or greatest negation "
                f"use companion_for_extreme_negations")
    i = an_implication(a, n)
    partner = n_dual_of(a, n, require_strict=False)
    ent = _certify(led, i, partner, grid)
    unique = False
    if led.record("negation strict", n.strict, "catalog flag or 10001-point scan"):
        nat = natural_negation(i)
        unique = led.record("natural negation injective", _injective_on_grid(nat),
                            _grid_cert(1001, 1, 0.0))
    return CompanionResult(partner, "unique" if unique else "exists", led.freeze(),
                           "an-implication-n-dual" + ("-unique" if unique else ""),
                           i, partner, ent)


def companion_for_extreme_negations(a, which: str, grid: int = GRID_3D) -> CompanionResult:
    """Partners of A(N(x),y) when N is the smallest or the greatest negation.

    Smallest: every conjunctor A' with A'(x,y) = 0 only when x = 0 or y = 0
    works; min is returned. Greatest: every conjunctor with A'(x,y) = 1 only
    at x = y = 1 works; product is returned.
    """
    a = _as_agg(a)
    led = _Ledger()
    led.require("disjunctor", _is_disjunctor(a), "exact boundary evaluation",
                f"{a.kind} is not a disjunctor")
    _require_associative(led, a, grid, "the extreme-negation constructions need it")
    if which == "smallest":
        n, member = SMALLEST, MIN
        fam = "any conjunctor without zero divisors (A'(x,y)=0 only if x=0 or y=0)"
        led.record("member has no zero divisors", find_zero_divisor(member) is None,
                   _grid_cert(GRID_2D, 2, 0.0))
        tag = "an-implication-smallest-negation"
    elif which == "greatest":
        n, member = GREATEST, PRODUCT
        fam = ("any conjunctor A' with A'(x,y)=1 only at x=y=1 "
               "(no one divisors, and A'(1,y)<1 for y<1)")
        led.record("member has no one divisors", find_one_divisor(member) is None,
                   _grid_cert(GRID_2D, 2, 0.0))
        tag = "an-implication-greatest-negation"
    else:
        raise ParameterError(f"which must be 'smallest' or 'greatest', got {which!r}")
    i = an_implication(a, n)
    ent = _certify(led, i, member, grid)
    return CompanionResult(member, "exists", led.freeze(), tag, i, member, ent,
                           family_description=fam)


# -- R-implications ---------------------------------------------------------------

def universal_lia_witnesses(i: Implication, grid: int = GRID_3D, tol: float = TOL_CLOSED):
    """Points (1, 1, z) with I(1,z) != I(1, I(1,z)).

    Every aggregation has A(1,1) = 1, so each of these refutes LIA for
    every possible partner. Returned as (1, 1, z, I(1,z), I(1,I(1,z))).
    """
    z = unit_grid(grid)
    one = np.ones_like(z)
    lhs = np.asarray(i(one, z))
    rhs = np.asarray(i(one, lhs))
    bad = np.abs(lhs - rhs) > tol
    return tuple((1.0, 1.0, float(zv), float(lv), float(rv))
                 for zv, lv, rv in zip(z[bad], lhs[bad], rhs[bad]))


def companion_for_r_implication(a, grid: int = GRID_3D) -> CompanionResult:
    """The residual of an associative, commutative, left-continuous A has A as partner.

    If the residual also has the ordering property, A is its only partner.
    """
    a = _as_agg(a)
    led = _Ledger()
    tol = default_tol(a)
    gap, where = _assoc(a, grid)
    ok_assoc = led.record("associative", gap <= tol, _grid_cert(grid, 3, tol),
                          "" if gap <= tol else f"gap {gap:.3g} at {where}")
    ok_comm = led.record("commutative", _commutative(a, GRID_2D, tol),
                         _grid_cert(GRID_2D, 2, tol))
    lc = left_continuity_check(a)
    ok_lc = led.record("left-continuous", lc.holds, lc.certification,
                       "" if lc.holds else f"jump {lc.gap:.3g} at {lc.witness}")
    if not (ok_assoc and ok_comm and ok_lc):
        resid = residual_implication(a, strict=False)
        wit = universal_lia_witnesses(resid, grid)
        msg = (f"residual construction refused for {a.kind}: "
               + ", ".join(h.name for h in led.items if not h.holds) + " failed")
        if not lc.holds:
            msg += ("; residuals of aggregations that are not left-continuous may have no "
                    "LIA partner at all")
        if wit:
            x, y, z, lv, rv = next((w for w in wit if abs(w[2] - 0.8) < 1e-12), wit[0])
            msg += (f"; at ({x:g},{y:g},{z:g}) I(A'(1,1),z)={lv:.6g} but "
                    f"I(1,I(1,z))={rv:.6g} for every aggregation A'")
        raise HypothesisError(msg, led.freeze(), wit)
    i = residual_implication(a)
    ent = _certify(led, i, a, grid)
    op = check_op(i)
    unique = led.record("residual has OP", op.holds, op.certification)
    return CompanionResult(a, "unique" if unique else "exists", led.freeze(),
                           "r-implication-self" + ("-unique" if unique else ""), i, a, ent)


# -- QL-implications --------------------------------------------------------------

def _ql_partner(j: Implication) -> Aggregation:
    nat = natural_negation(j)
    back = pseudo_inverse(nat)

    def f(x, y):
        return back(j(back(nat(x)), nat(y)))
    return make_aggregation("ql-companion", {"implication": j}, f,
                            meta={"commutative": True}, tabulated=j.tabulated)


register_aggregation_kind(
    "ql-companion", lambda implication: _ql_partner(implication_from_descriptor(implication)))


def companion_for_ql(a1, a2, n, grid: int = GRID_3D) -> CompanionResult:
    """Partner of the QL-implication A1(N(x), A2(x,y)).

    If A1 has no one divisors the operation is an implication only for the
    greatest negation, and then it is an (A,N)-implication of that
    negation: product is returned as a member of the admissible family.
    Otherwise, with x -> A1(x,0) and N continuous, the unique commutative
    partner is Ñ_J(J(Ñ_J(N_J(x)), N_J(y))) with J the QL-implication and
    N_J its natural negation.
    """
    s, t, n = _as_agg(a1), _as_agg(a2), _as_neg(n)
    led = _Ledger()
    led.require("A1 disjunctor", _is_disjunctor(s), "exact boundary evaluation",
                f"{s.kind} is not a disjunctor")
    led.require("A2 conjunctor", _is_conjunctor(t), "exact boundary evaluation",
                f"{t.kind} is not a conjunctor")
    try:
        j = ql_implication(s, t, n)
    except ConstructionError as exc:
        led.record("QL-operation is an implication", False, _grid_cert(GRID_2D, 2, TOL_CLOSED),
                   str(exc))
        raise HypothesisError(f"QL-operation ({s.kind}, {t.kind}, {n.kind}) is not an "
                              f"implication: {exc}", led.freeze(),
                              (exc.witness,) if exc.witness else ()) from exc
    led.record("QL-operation is an implication", True, _grid_cert(GRID_2D, 2, TOL_CLOSED))
    one_div = find_one_divisor(s)
    if one_div is None:
        led.record("A1 has no one divisors", True, _grid_cert(GRID_2D, 2, 0.0))
        _require_associative(led, s, grid, "the no-one-divisor route needs it")
        flags = negation_flags(n)
        led.require("negation is the greatest one", flags.non_vanishing,
                    _grid_cert(flags.points, 1, flags.tol),
                    "with A1 free of one divisors only the greatest negation gives an "
                    "implication")
        ent = _certify(led, j, PRODUCT, grid)
        return CompanionResult(PRODUCT, "exists", led.freeze(), "ql-no-one-divisors", j,
                               PRODUCT, ent,
                               family_description="any aggregation A with A(x,y)=1 only at "
                                                  "x=y=1")
    led.record("A1 has one divisors", True, _grid_cert(GRID_2D, 2, 0.0), f"at {one_div}")
    led.require("negation continuous", bool(n.continuous), "catalog flag or 10001-point scan",
                f"{n.kind} negation is not continuous")
    u = unit_grid(1001)
    h = np.asarray(s(u, np.zeros_like(u)))
    cont = float(np.max(np.abs(np.diff(h))))
    led.require("x -> A1(x,0) continuous", cont <= 4.0 / 1000, _grid_cert(1001, 1, 4e-3),
                f"x -> A1(x,0) jumps by {cont:.3g}")
    partner = _ql_partner(j)
    ent = _certify(led, j, partner, grid)
    return CompanionResult(partner, "unique", led.freeze(), "ql-natural-negation-dual", j,
                           partner, ent,
                           family_description="unique among commutative aggregations")


# -- f-, g-implications -----------------------------------------------------------

def companion_for_f_implication(f, grid: int = GRID_3D) -> CompanionResult:
    """f-implications satisfy LIA exactly with the product t-norm."""
    led = _Ledger()
    try:
        gen = require_shape(generator_from_descriptor(f), "decreasing-to-zero")
    except ParameterError as exc:
        led.record("f continuous, strictly decreasing, f(1)=0", False, "1001-point scan",
                   str(exc))
        raise
    led.record("f continuous, strictly decreasing, f(1)=0", True, "1001-point scan")
    i = f_implication(gen)
    ent = _certify(led, i, PRODUCT, grid)
    return CompanionResult(PRODUCT, "unique", led.freeze(), "f-implication-product", i,
                           PRODUCT, ent)


def companion_for_g_implication(g, grid: int = GRID_3D) -> CompanionResult:
    """g-implications satisfy LIA exactly with the product t-norm.

    A partner can never have zero divisors: A(x,y) = 0 with x, y > 0 would
    give I(0,0) = 1 on the left and I(x, I(y,0)) = 0 on the right.
    """
    led = _Ledger()
    try:
        gen = require_shape(generator_from_descriptor(g), "increasing-from-zero")
    except ParameterError as exc:
        led.record("g continuous, strictly increasing, g(0)=0", False, "1001-point scan",
                   str(exc))
        raise
    led.record("g continuous, strictly increasing, g(0)=0", True, "1001-point scan")
    i = g_implication(gen)
    led.record("partner has no zero divisors (necessary)", find_zero_divisor(PRODUCT) is None,
               _grid_cert(GRID_2D, 2, 0.0))
    ent = _certify(led, i, PRODUCT, grid)
    return CompanionResult(PRODUCT, "unique", led.freeze(), "g-implication-product", i,
                           PRODUCT, ent)


# -- probabilistic implications ------------------------------------------------------

def _safe_div(num, den):
    """num/den with 0/0 read as 1."""
    num, den = np.broadcast_arrays(np.asarray(num, float), np.asarray(den, float))
    out = np.where(den == 0.0, 1.0, num / np.where(den == 0.0, 1.0, den))
    return out


def _first_violation(gap, tol, *coords):
    bad = np.flatnonzero(gap.ravel() > tol)
    if bad.size == 0:
        return None
    k = bad[0]
    return tuple(float(c.ravel()[k]) for c in coords) + (float(gap.ravel()[k]),)


def probabilistic_equation_gap(c: Aggregation, variant: str, grid: int = GRID_3D):
    """|LHS - RHS| of the associativity-equivalent equation on a grid cube.

    plain: x^2 C(1 - C(x,y)/x, z) = x C(x, C(1-y,z)/(1-y)) - C(x,y) C(x, C(1-y,z)/(1-y)),
    with 0/0 read as 1. s: C(x, C(1-y,z) + y) = C(x,y) + C(x - C(x,y), z).
    """
    x, y, z = mesh3(grid)
    cxy = np.asarray(c(x, y))
    if variant == "plain":
        inner = np.clip(1.0 - _safe_div(cxy, x), 0.0, 1.0)
        lhs = x * x * np.asarray(c(inner, z))
        q = np.clip(_safe_div(np.asarray(c(1.0 - y, z)), 1.0 - y), 0.0, 1.0)
        cq = np.asarray(c(x, q))
        rhs = x * cq - cxy * cq
    elif variant == "s":
        lhs = np.asarray(c(x, np.clip(np.asarray(c(1.0 - y, z)) + y, 0.0, 1.0)))
        rhs = cxy + np.asarray(c(np.clip(x - cxy, 0.0, 1.0), z))
    else:
        raise ParameterError(f"variant must be 'plain' or 's', got {variant!r}")
    return np.abs(lhs - rhs), (x, y, z)


def _prob_partner(c: Aggregation, variant: str) -> Aggregation:
    if variant == "plain":
        def f(x, y):
            safe = np.where(x == 0.0, 1.0, x)
            return np.where(x == 0.0, 0.0, 1.0 - np.asarray(c(x, 1.0 - y)) / safe)
    else:
        def f(x, y):
            return x - np.asarray(c(x, 1.0 - y))
    return make_aggregation("probabilistic-companion", {"copula": c, "variant": variant}, f,
                            tabulated=c.tabulated)


register_aggregation_kind(
    "probabilistic-companion",
    lambda copula, variant="plain": _prob_partner(aggregation_from_descriptor(copula), variant))


def companion_for_probabilistic(c, variant: str = "plain", grid: int = GRID_3D,
                                tol: float = 1e-9) -> CompanionResult:
    """Partner of a probabilistic (``plain``) or probabilistic S- (``s``) implication.

    The copula must satisfy an equation that makes the underlying
    disjunctor associative; it is checked on a ``grid``^3 cube first.
    """
    c = _as_agg(c)
    led = _Ledger()
    led.require("catalog copula", bool(c.meta.get("copula")), "catalog flag",
                f"{c.kind} is not a catalog copula")
    cc = check_copula(c)
    led.require("copula axioms", cc.holds, cc.certification,
                f"{c.kind} fails the copula axioms on the grid")
    gap, coords = probabilistic_equation_gap(c, variant, grid)
    first = _first_violation(gap, tol, *coords)
    if first is not None:
        led.record("functional equation", False, _grid_cert(grid, 3, tol),
                   f"first violation at {first[:3]} by {first[3]:.3g}")
        raise HypothesisError(
            f"copula {c.descriptor()['params']} fails the {variant} functional equation at "
            f"(x,y,z)={first[:3]} (gap {first[3]:.3g}); without it the construction does "
            f"not apply, although a partner may still exist for some such copulas",
            led.freeze(), (first[:3],))
    led.record("functional equation", True, _grid_cert(grid, 3, tol))
    try:
        i = probabilistic_implication(c) if variant == "plain" else probabilistic_s_implication(c)
    except ConstructionError as exc:
        led.record("implication axioms", False, _grid_cert(GRID_2D, 2, TOL_CLOSED), str(exc))
        raise HypothesisError(str(exc), led.freeze(), (exc.witness,)) from exc
    partner = _prob_partner(c, variant)
    ent = _certify(led, i, partner, grid)
    tag = "probabilistic-companion" if variant == "plain" else "probabilistic-s-companion"
    return CompanionResult(partner, "unique", led.freeze(), tag, i, partner, ent)


# -- T-power implications ------------------------------------------------------------

def power_implication_lia_verdict(t, grid: int = GRID_3D) -> CompanionResult:
    """Negative results for T-power implications.

    Nilpotent t-norms: no partner at all. Minimum and strict t-norms: no
    partner that is commutative or has zero divisors (other partners are
    not ruled out). The counterexample is evaluable directly.
    """
    t = _as_agg(t)
    cls = t.meta.get("tnorm_class")
    led = _Ledger()
    led.record("t-norm class", cls in ("min", "strict", "nilpotent"), "analytic-from-catalog",
               str(cls))
    if cls not in ("min", "strict", "nilpotent"):
        raise ParameterError(f"no verdict for t-norm {t.kind!r} (class {cls!r})")
    i = power_implication(t)
    if cls == "nilpotent":
        gen = generator_from_descriptor(t.meta["additive_generator"])
        x, z = 0.7, 0.4
        lhs = float(gen(x) / gen(z))
        rhs = float(gen(x) / gen(0.0))
        cex = {
            "argument": "z=0 forces A(x,1)=x for any partner A; then at (x,1,z) with 1>x>z "
                        "the two sides differ",
            "point": (x, 1.0, z), "lhs": lhs, "rhs": rhs,
            "check": (float(i(x, z)), float(i(x, float(i(1.0, z))))),
        }
        return CompanionResult(None, "none", led.freeze(), "power-nilpotent-no-partner", i,
                               family_description="no aggregation function", counterexample=cex)
    ep = check_ep(i, grid)
    led.record("EP of the power implication", ep.holds, ep.certification,
               "" if ep.holds else f"fails at {ep.witness}")
    cex: dict[str, Any] = {
        "argument": "a commutative partner would force EP, which fails; a zero divisor "
                    "A(x,y)=0 gives I(0,0)=1 against I(x,I(y,0))=0",
    }
    if not ep.holds:
        px, py, pz = ep.witness
        cex["ep_witness"] = (px, py, pz)
        cex["ep_values"] = (float(i(px, float(i(py, pz)))), float(i(py, float(i(px, pz)))))
    return CompanionResult(None, "none", led.freeze(), "power-min-strict-restricted", i,
                           family_description="no commutative aggregation and no aggregation "
                                              "with zero divisors",
                           counterexample=cex)


# -- implications from aggregations ----------------------------------------------------

@dataclass(frozen=True)
class CompatibilityResult:
    holds: bool
    witness: tuple[float, float, float] | None
    certification: Certification


def check_a_compatible(n, a, grid: int = GRID_2D, tol: float | None = None) -> CompatibilityResult:
    """N(y1) = N(y2) implies N(A(x,y1)) = N(A(x,y2)) for all grid x, y1, y2.

    Grid values y with N-values within ``tol`` of each other (chained) are
    grouped; inside each group N(A(x, .)) may vary by at most 2 tol.
    """
    n, a = _as_neg(n), _as_agg(a)
    tol = default_tol(n, a) if tol is None else tol
    u = unit_grid(grid)
    nv = np.asarray(n(u))
    order = np.argsort(nv, kind="stable")
    cuts = np.flatnonzero(np.diff(nv[order]) > tol) + 1
    groups = [g for g in np.split(order, cuts) if len(g) > 1]
    cert = Certification("grid", grid, 2, tol)
    if not groups:
        return CompatibilityResult(True, None, cert)
    x, y = mesh2(grid)
    m = np.asarray(n(np.asarray(a(x, y))))
    for g in groups:
        block = m[:, g]
        spread = block.max(axis=1) - block.min(axis=1)
        k = int(np.argmax(spread))
        if spread[k] > 2 * tol:
            j1, j2 = g[int(np.argmin(block[k]))], g[int(np.argmax(block[k]))]
            return CompatibilityResult(False, (float(u[k]), float(u[j1]), float(u[j2])), cert)
    return CompatibilityResult(True, None, cert)


def implication_from_aggregation(a, n, grid: int = GRID_3D) -> CompanionResult:
    """I(x,y) = N(A(x, Ñ(y))) for an associative conjunctor A and an A-compatible N."""
    a, n = _as_agg(a), _as_neg(n)
    led = _Ledger()
    led.require("conjunctor", _is_conjunctor(a), "exact boundary evaluation",
                f"{a.kind} is not a conjunctor")
    _require_associative(led, a, grid, "the construction requires an associative conjunctor")
    led.require("negation continuous", bool(n.continuous), "catalog flag or 10001-point scan",
                f"{n.kind} negation is not continuous")
    comp = check_a_compatible(n, a)
    led.require("negation A-compatible", comp.holds, comp.certification,
                f"{n.kind} negation is not {a.kind}-compatible; witness (x,y1,y2)={comp.witness}",
                witnesses=() if comp.holds else (comp.witness,))
    try:
        i = from_aggregation(a, n)
    except ConstructionError as exc:
        led.record("implication axioms", False, _grid_cert(GRID_2D, 2, TOL_CLOSED), str(exc))
        raise HypothesisError(str(exc), led.freeze(), (exc.witness,)) from exc
    ent = _certify(led, i, a, grid)
    if a.kind == "smallest-conjunctor":
        return CompanionResult(i, "unique", led.freeze(), "smallest-conjunctor-greatest-implication",
                               i, a, ent, family_description="the greatest fuzzy implication")
    return CompanionResult(i, "exists", led.freeze(), "aggregation-negation-implication", i, a,
                           ent, family_description="unique once its natural negation is fixed")


def implication_for_representable(g, n=None, grid: int = GRID_3D) -> CompanionResult:
    """Implication paired with A(x,y) = g^{-1}((g(x)+g(y)-g(1)) v 0) for a strict N."""
    from .algebra.aggregations import aggregation as make_agg

    led = _Ledger()
    try:
        gen = require_shape(generator_from_descriptor(g), "increasing-from-zero")
    except ParameterError as exc:
        led.record("g continuous, strictly increasing, g(0)=0", False, "1001-point scan",
                   str(exc))
        raise
    led.record("g continuous, strictly increasing, g(0)=0", True, "1001-point scan")
    neg = None if n is None else _as_neg(n)
    if neg is not None:
        led.require("negation strict", neg.strict, "catalog flag or 10001-point scan",
                    f"{neg.kind} negation is not strict")
    a = make_agg("representable", g=gen)
    i = representable_companion(gen, neg)
    ent = _certify(led, i, a, grid)
    return CompanionResult(i, "unique", led.freeze(), "representable-two-branch", i, a, ent,
                           family_description="unique given its natural negation")
