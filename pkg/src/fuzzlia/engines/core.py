"""BKS, SBR and TIP inference, classical (joint tensor) and hierarchical (cascaded).

Every engine counts the operator applications it performs: one binary
operator application (aggregation, implication, similarity step) is 1
and a max/min fold over k items is k - 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Sequence

import numpy as np

from .._grid import GRID_2D, GRID_3D, default_tol, unit_grid
from ..algebra.aggregations import Aggregation
from ..algebra.classify import associativity_gap
from ..errors import AdmissionError, DimensionError, ParameterError
from ..implications.base import Implication
from ..implications.properties import check_lia, check_np, check_op, check_right_continuity
from ..lia import Hypothesis
from .sets import FuzzySet
from .system import MISOSystem, parse_input

ENGINES = ("bks", "sbr", "tip")
MODES = ("classical", "hierarchical")


@dataclass(frozen=True)
class OpCount:
    """Operation counts per stage, in execution order."""

    stages: tuple[tuple[str, int], ...]
    total: int = -1

    def __post_init__(self):
        s = sum(c for _, c in self.stages)
        if self.total == -1:
            object.__setattr__(self, "total", s)
        elif self.total != s:
            raise ValueError(f"total {self.total} differs from the stage sum {s}")
        if any(c < 0 for _, c in self.stages):
            raise ValueError("stage counts must be non-negative")

    @property
    def vector(self) -> list[int]:
        return [c for _, c in self.stages]

    def table(self) -> str:
        width = max([len("Stage process")] + [len(lab) for lab, _ in self.stages])
        lines = [f"{'#':>3}  {'Stage process':<{width}}  {'Times':>7}"]
        for k, (lab, c) in enumerate(self.stages, 1):
            lines.append(f"{k:>3}  {lab:<{width}}  {c:>7d}")
        lines.append(f"{'':>3}  {'Total':<{width}}  {self.total:>7d}")
        return "\n".join(lines)

    def csv(self) -> str:
        rows = ["stage,count"]
        rows += [f"\"{lab}\",{c}" for lab, c in self.stages]
        rows.append(f"total,{self.total}")
        return "\n".join(rows) + "\n"

    def as_dict(self) -> dict:
        return {"stages": [[lab, c] for lab, c in self.stages], "total": self.total}


@dataclass
class InferenceReport:
    engine: str
    mode: str
    output: FuzzySet
    opcount: OpCount
    hypotheses: tuple[Hypothesis, ...] = ()
    intermediates: dict = field(default_factory=dict)
    peak_shape: tuple[int, ...] = ()

    def as_dict(self) -> dict:
        def plain(v):
            if isinstance(v, np.ndarray):
                return v.tolist()
            if isinstance(v, (list, tuple)):
                return [plain(w) for w in v]
            if isinstance(v, (np.floating, np.integer)):
                return v.item()
            return v
        return {
            "engine": self.engine,
            "mode": self.mode,
            "output": self.output.as_list(),
            "opcount": self.opcount.as_dict(),
            "hypotheses": [h.as_dict() for h in self.hypotheses],
            "intermediates": {k: plain(v) for k, v in self.intermediates.items()},
            "peak_shape": list(self.peak_shape),
        }


class _Counter:
    """Records operation counts stage by stage while an engine runs."""

    def __init__(self, prefix: str = ""):
        self.prefix = prefix
        self.stages: dict[str, int] = {}
        self.peak: tuple[int, ...] = ()

    def add(self, label: str, k: int) -> None:
        key = self.prefix + label
        self.stages[key] = self.stages.get(key, 0) + int(k)

    def op(self, label: str, fn, *args) -> np.ndarray:
        out = np.asarray(fn(*args), dtype=float)
        self.add(label, out.size)
        self.keep(out)
        return out

    def keep(self, arr: np.ndarray) -> None:
        if np.size(arr) > int(np.prod(self.peak)) or not self.peak:
            self.peak = tuple(np.shape(arr))

    def fold(self, label: str, arr: np.ndarray, axis, how=np.max) -> np.ndarray:
        arr = np.asarray(arr)
        axes = (axis,) if isinstance(axis, int) else tuple(axis)
        k = int(np.prod([arr.shape[a] for a in axes]))
        out = how(arr, axis=axes)
        self.add(label, (k - 1) * int(np.size(out)))
        return np.asarray(out, dtype=float)

    def merge(self, other: "_Counter") -> None:
        for lab, c in other.stages.items():
            self.stages[lab] = self.stages.get(lab, 0) + c
        self.keep(np.empty(other.peak))

    def result(self) -> OpCount:
        return OpCount(tuple(self.stages.items()))


# -- admission --------------------------------------------------------------------

@lru_cache(maxsize=256)
def _lia_entry(i: Implication, a: Aggregation, grid: int):
    return check_lia(i, a, grid)


@lru_cache(maxsize=256)
def _np_entry(i: Implication):
    return check_np(i)


@lru_cache(maxsize=256)
def _op_entry(i: Implication):
    return check_op(i)


@lru_cache(maxsize=256)
def _rc_entry(i: Implication):
    return check_right_continuity(i)


@lru_cache(maxsize=256)
def _assoc_entry(a: Aggregation, grid: int):
    return associativity_gap(a, grid)


@lru_cache(maxsize=256)
def _comm_entry(a: Aggregation):
    u = unit_grid(GRID_2D)
    x, y = np.meshgrid(u, u, indexing="ij")
    v = np.asarray(a(x, y))
    return float(np.max(np.abs(v - v.T)))


@lru_cache(maxsize=256)
def _left_neutral_one_gap(a: Aggregation) -> float:
    g = unit_grid(GRID_2D)
    t = np.concatenate([g, 0.5 * (g[1:] + g[:-1])])
    return float(np.max(np.abs(np.asarray(a(np.ones_like(t), t)) - t)))


def _is_conjunctor(a: Aggregation) -> bool:
    return float(a(0.0, 1.0)) == 0.0 and float(a(1.0, 0.0)) == 0.0


class _Admission:
    def __init__(self, engine: str, mode: str):
        self.engine, self.mode = engine, mode
        self.items: list[Hypothesis] = []

    def check(self, name: str, holds: bool, cert, detail: str = "", required: bool = True):
        if not required:
            detail = ("informational; " + detail) if detail else "informational"
        self.items.append(Hypothesis(name, bool(holds), str(cert), detail))
        if required and not holds:
            raise AdmissionError(
                f"{self.engine} {self.mode} engine refused the system: {name} fails"
                + (f" ({detail})" if detail else ""), self.items)

    def lia(self, sys: MISOSystem, required: bool = True):
        ent = _lia_entry(sys.implication, sys.antecedent_combiner, GRID_3D)
        self.check("LIA certified for (implication, combiner)", ent.holds, ent.certification,
                   "" if ent.holds else f"witness {ent.witness}: {ent.detail}", required)

    def associative(self, sys: MISOSystem, why: str):
        a = sys.antecedent_combiner
        gap, where = _assoc_entry(a, GRID_3D)
        tol = default_tol(a)
        self.check(f"combiner associative ({why})", gap <= tol,
                   f"grid-checked({GRID_3D}^3, tol={tol:g})",
                   "" if gap <= tol else f"gap {gap:.3g} at {where}")

    def conjunctor(self, sys: MISOSystem):
        a = sys.antecedent_combiner
        self.check("combiner is a conjunctor", _is_conjunctor(a), "exact boundary evaluation",
                   f"A(0,1)={float(a(0.0, 1.0)):g}, A(1,0)={float(a(1.0, 0.0)):g}")

    def fold_order(self, sys: MISOSystem):
        if sys.m > 2:
            self.associative(sys, "needed to fold more than two antecedents")


def admit(engine: str, mode: str, sys: MISOSystem, inputs=None) -> tuple[Hypothesis, ...]:
    """Run the admission checks of one engine and return the hypothesis ledger.

    Raises AdmissionError (carrying the ledger so far) at the first
    required hypothesis that fails.
    """
    _check_engine(engine, mode)
    adm = _Admission(engine, mode)
    i, a = sys.implication, sys.antecedent_combiner
    adm.fold_order(sys)
    if engine == "bks":
        if mode == "classical":
            adm.lia(sys, required=False)
        else:
            ent = _np_entry(i)
            adm.check("implication satisfies NP", ent.holds, ent.certification,
                      "" if ent.holds else f"witness {ent.witness}")
            adm.conjunctor(sys)
            gap = _left_neutral_one_gap(a)
            tol = default_tol(a)
            adm.check("combiner has left neutral element 1", gap <= tol,
                      f"grid-checked({2 * GRID_2D - 1}^1, tol={tol:g})", f"gap {gap:.3g}")
            adm.lia(sys)
    elif engine == "sbr":
        adm.check("similarity measure configured", sys.similarity is not None, "configuration",
                  sys.similarity.kind if sys.similarity is not None else "")
        if mode == "hierarchical":
            adm.conjunctor(sys)
            if sys.m <= 2:
                adm.associative(sys, "required by the cascade")
            gap = _comm_entry(a)
            tol = default_tol(a)
            adm.check("combiner commutative", gap <= tol,
                      f"grid-checked({GRID_2D}^2, tol={tol:g})", f"gap {gap:.3g}")
            adm.lia(sys)
            if inputs is not None:
                _check_distributivity(adm, sys, inputs)
    else:
        rc = _rc_entry(i)
        adm.check("implication right-continuous in the second argument", rc.holds,
                  rc.certification, rc.detail if rc.holds
                  else f"jump {rc.max_violation:.3g} at {rc.witness}; {rc.detail}")
        op = _op_entry(i)
        adm.check("implication satisfies OP", op.holds, op.certification,
                  "" if op.holds else f"witness {op.witness}")
        adm.lia(sys)
        if mode == "hierarchical":
            adm.conjunctor(sys)
    return tuple(adm.items)


def _check_distributivity(adm: _Admission, sys: MISOSystem, inputs, tol: float = 1e-12):
    """S(A(D'_1,...),A(D_1,...)) = A(S(D'_1,D_1),...) on the given sets, rule by rule."""
    a, sim = sys.antecedent_combiner, sys.similarity
    for k, rule in enumerate(sys.rules):
        joint_s = sim(_joint(a, [s.memberships for s in inputs]),
                      _joint(a, [d.memberships for d in rule.antecedents]))
        parts = [sim(dp, d) for dp, d in zip(inputs, rule.antecedents)]
        folded = parts[0]
        for p in parts[1:]:
            folded = float(a(folded, p))
        ok = abs(joint_s - folded) <= tol
        adm.check(f"similarity distributes over the combiner (rule {k + 1})", ok,
                  f"exact on the given sets, tol={tol:g}",
                  f"S(joint)={joint_s:.6g}, A(S_1,...,S_m)={folded:.6g}")


def _check_engine(engine: str, mode: str) -> None:
    if engine not in ENGINES:
        raise ParameterError(f"unknown engine {engine!r}; expected one of {ENGINES}")
    if mode not in MODES:
        raise ParameterError(f"unknown mode {mode!r}; expected one of {MODES}")


# -- joint antecedents ------------------------------------------------------------

def _joint(a: Aggregation, vectors: Sequence[np.ndarray], ctr: _Counter | None = None,
           label: str = "") -> np.ndarray:
    out = np.asarray(vectors[0], dtype=float)
    for v in vectors[1:]:
        v = np.asarray(v, dtype=float)
        shaped = out.reshape(out.shape + (1,))
        other = v.reshape((1,) * out.ndim + (-1,))
        out = ctr.op(label, a, shaped, other) if ctr is not None else np.asarray(a(shaped, other))
    return out


def combine_antecedents(a: Aggregation, sets: Sequence[FuzzySet]) -> np.ndarray:
    """Joint membership tensor A(...A(D_1(x_1), D_2(x_2))..., D_m(x_m)).

    Folds left to right; with more than two sets the combiner must be
    associative on the grid, otherwise the fold order would matter.
    """
    sets = list(sets)
    if len(sets) < 2:
        raise DimensionError("combining antecedents needs at least two sets")
    if len(sets) > 2:
        gap, where = _assoc_entry(a, GRID_3D)
        if gap > default_tol(a):
            raise AdmissionError(f"{a.kind} is not associative (gap {gap:.3g} at {where}); "
                                 f"folding more than two antecedents would depend on order")
    return _joint(a, [s.memberships for s in sets])


# -- per-rule engines -------------------------------------------------------------

def _axes(nd: int) -> tuple[int, ...]:
    return tuple(range(nd))


def _bks_classical_rule(sys, rule, inputs, ctr, notes):
    a, i = sys.antecedent_combiner, sys.implication
    b = rule.consequent.memberships
    jp = _joint(a, [s.memberships for s in inputs], ctr, "A(D'_1,...,D'_m)")
    jd = _joint(a, [d.memberships for d in rule.antecedents], ctr, "A(D_1,...,D_m)")
    cells = ctr.op("A(D',D)", a, jp, jd)
    s = ctr.fold("sup_x A(D',D)", cells, _axes(cells.ndim))
    out = ctr.op("I(sup,B(y))", i, np.full_like(b, float(s)), b)
    notes.update(joint_input=jp, joint_antecedent=jd, sup=float(s))
    return out


def _bks_hierarchical_rule(sys, rule, inputs, ctr, notes):
    a, i = sys.antecedent_combiner, sys.implication
    c = rule.consequent.memberships
    sups, stages = [], []
    for k in reversed(range(sys.m)):
        tag = f"_{k + 1}"
        cells = ctr.op(f"A(D'{tag},D{tag})", a, inputs[k].memberships,
                       rule.antecedents[k].memberships)
        s = float(ctr.fold(f"sup_x{tag} A(D'{tag},D{tag})", cells, 0))
        c = ctr.op(f"I(sup{tag},C(y))", i, np.full_like(c, s), c)
        sups.append(s)
        stages.append(c)
    notes.update(stage_sups=sups[::-1], stage_outputs=stages[::-1])
    return c


def _sbr_classical_rule(sys, rule, inputs, ctr, notes):
    a, i, sim = sys.antecedent_combiner, sys.implication, sys.similarity
    b = rule.consequent.memberships
    jp = _joint(a, [s.memberships for s in inputs], ctr, "A(D'_1,...,D'_m)")
    jd = _joint(a, [d.memberships for d in rule.antecedents], ctr, "A(D_1,...,D_m)")
    s = sim(jp, jd)
    ctr.add("S(D',D)", 2 * int(sim.compared_cells(jp).sum()))
    modified = ctr.op("A(S,D(x))", a, np.full_like(jd, s), jd)
    vals = ctr.op("I(A(S,D(x)),B(y))", i, modified[..., None], b.reshape((1,) * jd.ndim + (-1,)))
    out = ctr.fold("sup_x", vals, _axes(jd.ndim))
    notes.update(joint_input=jp, joint_antecedent=jd, similarity=s, modified_relation=modified)
    return out


def _sbr_hierarchical_rule(sys, rule, inputs, ctr, notes):
    a, i, sim = sys.antecedent_combiner, sys.implication, sys.similarity
    c = rule.consequent.memberships
    sims, stages = [], []
    for k in reversed(range(sys.m)):
        tag = f"_{k + 1}"
        dp, d = inputs[k].memberships, rule.antecedents[k].memberships
        s = sim(dp, d)
        ctr.add(f"S(D'{tag},D{tag})", 2 * int(sim.compared_cells(dp).sum()))
        modified = ctr.op(f"A(S{tag},D{tag}(x))", a, np.full_like(d, s), d)
        vals = ctr.op(f"I(A(S{tag},D{tag}(x)),C(y))", i, modified[:, None], c[None, :])
        c = ctr.fold(f"sup_x{tag}", vals, 0)
        sims.append(s)
        stages.append(c)
    notes.update(stage_similarities=sims[::-1], stage_outputs=stages[::-1])
    return c


def _tip_classical_rule(sys, rule, inputs, ctr, notes):
    a, i = sys.antecedent_combiner, sys.implication
    b = rule.consequent.memberships
    jp = _joint(a, [s.memberships for s in inputs], ctr, "A(D'_1,...,D'_m)")
    jd = _joint(a, [d.memberships for d in rule.antecedents], ctr, "A(D_1,...,D_m)")
    bshape = (1,) * jd.ndim + (-1,)
    rel = ctr.op("I(D(x),B(y))", i, jd[..., None], b.reshape(bshape))
    vals = ctr.op("A(I(D(x),B(y)),D'(x))", a, rel, np.broadcast_to(jp[..., None], rel.shape))
    out = ctr.fold("sup_x", vals, _axes(jd.ndim))
    notes.update(joint_input=jp, joint_antecedent=jd, relation=rel)
    return out


def _tip_hierarchical_rule(sys, rule, inputs, ctr, notes):
    a, i = sys.antecedent_combiner, sys.implication
    c = rule.consequent.memberships
    stages, rels = [], []
    for k in reversed(range(sys.m)):
        tag = f"_{k + 1}"
        dp, d = inputs[k].memberships, rule.antecedents[k].memberships
        rel = ctr.op(f"I(D{tag}(x),C(y))", i, d[:, None], c[None, :])
        vals = ctr.op(f"A(I(D{tag}(x),C(y)),D'{tag}(x))", a, rel,
                      np.broadcast_to(dp[:, None], rel.shape))
        c = ctr.fold(f"sup_x{tag}", vals, 0)
        rels.append(rel)
        stages.append(c)
    notes.update(stage_outputs=stages[::-1], stage_relations=rels[::-1])
    return c


_RULE_ENGINES = {
    ("bks", "classical"): _bks_classical_rule,
    ("bks", "hierarchical"): _bks_hierarchical_rule,
    ("sbr", "classical"): _sbr_classical_rule,
    ("sbr", "hierarchical"): _sbr_hierarchical_rule,
    ("tip", "classical"): _tip_classical_rule,
    ("tip", "hierarchical"): _tip_hierarchical_rule,
}


def infer(sys: MISOSystem, inputs, engine: str = "bks",
          mode: str = "classical") -> tuple[FuzzySet, InferenceReport]:
    """Run one engine on one input.

    With several rules every rule is evaluated on its own and the outputs
    are combined by a pointwise minimum.
    """
    _check_engine(engine, mode)
    sets = parse_input(inputs, sys)
    ledger = admit(engine, mode, sys, sets)
    run = _RULE_ENGINES[(engine, mode)]
    multi = len(sys.rules) > 1
    total = _Counter()
    outs, notes_all = [], []
    for k, rule in enumerate(sys.rules):
        ctr = _Counter(f"rule {k + 1}: " if multi else "")
        notes: dict[str, Any] = {}
        outs.append(np.clip(run(sys, rule, sets, ctr, notes), 0.0, 1.0))
        notes_all.append(notes)
        total.merge(ctr)
    out = outs[0]
    for o in outs[1:]:
        out = np.minimum(out, o)
    if multi:
        total.add("min over rules", (len(outs) - 1) * out.size)
    intermediates = notes_all[0] if not multi else {"rule_outputs": outs,
                                                    "per_rule": notes_all}
    result = FuzzySet(sys.output_universe, out)
    return result, InferenceReport(engine, mode, result, total.result(), ledger, intermediates,
                                   total.peak)


def bks_classical(sys: MISOSystem, inputs):
    return infer(sys, inputs, "bks", "classical")


def bks_hierarchical(sys: MISOSystem, inputs):
    return infer(sys, inputs, "bks", "hierarchical")


def sbr_classical(sys: MISOSystem, inputs):
    return infer(sys, inputs, "sbr", "classical")


def sbr_hierarchical(sys: MISOSystem, inputs):
    return infer(sys, inputs, "sbr", "hierarchical")


def tip_classical(sys: MISOSystem, inputs):
    return infer(sys, inputs, "tip", "classical")


def tip_hierarchical(sys: MISOSystem, inputs):
    return infer(sys, inputs, "tip", "hierarchical")


def bks_direct(sys: MISOSystem, inputs) -> tuple[FuzzySet, OpCount]:
    """BKS by its defining double loop: min over x of I(D'(x), I(D(x), B(y))).

    No LIA is assumed; for a certified pair this agrees with the
    sup-form used by the classical engine.
    """
    sets = parse_input(inputs, sys)
    a, i = sys.antecedent_combiner, sys.implication
    ctr = _Counter()
    outs = []
    for rule in sys.rules:
        b = rule.consequent.memberships
        jp = _joint(a, [s.memberships for s in sets], ctr, "A(D'_1,...,D'_m)")
        jd = _joint(a, [d.memberships for d in rule.antecedents], ctr, "A(D_1,...,D_m)")
        bshape = (1,) * jd.ndim + (-1,)
        inner = ctr.op("I(D(x),B(y))", i, jd[..., None], b.reshape(bshape))
        outer = ctr.op("I(D'(x),I(D(x),B(y)))", i, np.broadcast_to(jp[..., None], inner.shape),
                       inner)
        outs.append(ctr.fold("inf_x", outer, _axes(jd.ndim), how=np.min))
    out = outs[0]
    for o in outs[1:]:
        out = np.minimum(out, o)
    return FuzzySet(sys.output_universe, out), ctr.result()
