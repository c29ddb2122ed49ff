"""Operation counts and storage needs of classical versus hierarchical inference.

Counts come from dimensions: one binary operator application is 1 and a
fold over k items is k - 1. :func:`predicted_count` gives the closed form,
:func:`count_operations` the count recorded while an engine actually runs.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass
from math import prod
from typing import Iterable, Sequence

import numpy as np

from .engines.core import MODES, OpCount, _check_engine, infer
from .engines.system import MISOSystem
from .errors import ParameterError

__all__ = ["OpCount", "count_operations", "predicted_count", "predicted_peak_shape",
           "complexity_report", "ComplexityRow", "format_report", "report_csv"]


def count_operations(engine: str, mode: str, sys: MISOSystem, inputs) -> OpCount:
    """Run the engine and return the counts it recorded (admission errors pass through)."""
    _, report = infer(sys, inputs, engine, mode)
    return report.opcount


def _joint_fold(shape: Sequence[int]) -> int:
    return sum(prod(shape[:k]) for k in range(2, len(shape) + 1))


def predicted_count(engine: str, mode: str, shape: Sequence[int], n: int, rules: int = 1,
                    compared: Sequence[int] | int | None = None) -> OpCount:
    """Closed-form stage counts for ``shape = (n_1, ..., n_m)`` and ``|V| = n``.

    ``compared`` is the number of cells a similarity looks at: one entry
    per input for hierarchical SBR, a single number for classical SBR.
    It defaults to 1 per set, which is what a support-restricted
    similarity sees for singleton inputs.
    """
    _check_engine(engine, mode)
    shape = tuple(int(v) for v in shape)
    if not shape or min(shape) < 1 or n < 1 or rules < 1:
        raise ParameterError("sizes must be positive")
    m, big = len(shape), prod(shape)
    j = _joint_fold(shape)
    joint = [("A(D'_1,...,D'_m)", j), ("A(D_1,...,D_m)", j)] if m > 1 else []
    stages: list[tuple[str, int]] = []
    if mode == "classical":
        if engine == "bks":
            stages = joint + [("A(D',D)", big), ("sup_x A(D',D)", big - 1), ("I(sup,B(y))", n)]
        elif engine == "sbr":
            k = 1 if compared is None else int(compared)
            stages = joint + [("S(D',D)", 2 * k), ("A(S,D(x))", big),
                              ("I(A(S,D(x)),B(y))", n * big), ("sup_x", n * (big - 1))]
        else:
            stages = joint + [("I(D(x),B(y))", n * big), ("A(I(D(x),B(y)),D'(x))", n * big),
                              ("sup_x", n * (big - 1))]
    else:
        ks = [1] * m if compared is None else list(compared)
        if len(ks) != m:
            raise ParameterError("one compared-cell count per input is required")
        for i in reversed(range(m)):
            t, ni = f"_{i + 1}", shape[i]
            if engine == "bks":
                stages += [(f"A(D'{t},D{t})", ni), (f"sup_x{t} A(D'{t},D{t})", ni - 1),
                           (f"I(sup{t},C(y))", n)]
            elif engine == "sbr":
                stages += [(f"S(D'{t},D{t})", 2 * int(ks[i])), (f"A(S{t},D{t}(x))", ni),
                           (f"I(A(S{t},D{t}(x)),C(y))", n * ni), (f"sup_x{t}", n * (ni - 1))]
            else:
                stages += [(f"I(D{t}(x),C(y))", n * ni), (f"A(I(D{t}(x),C(y)),D'{t}(x))", n * ni),
                           (f"sup_x{t}", n * (ni - 1))]
    if rules > 1:
        stages = [(f"rule {r + 1}: {lab}", c) for r in range(rules) for lab, c in stages]
        stages.append(("min over rules", (rules - 1) * n))
    return OpCount(tuple(stages))


def predicted_peak_shape(engine: str, mode: str, shape: Sequence[int], n: int) -> tuple[int, ...]:
    """Shape of the largest array an engine materialises (for ``n >= 2``)."""
    _check_engine(engine, mode)
    shape = tuple(int(v) for v in shape)
    if mode == "classical":
        if engine == "bks":
            return shape if prod(shape) >= n else (n,)
        return shape + (n,)
    if engine == "bks":
        return (max(max(shape), n),)
    return (max(shape), n)


@dataclass(frozen=True)
class ComplexityRow:
    engine: str
    mode: str
    m: int
    shape: tuple[int, ...]
    n: int
    total: int
    peak_shape: tuple[int, ...]
    seconds: float | None = None

    @property
    def peak_dims(self) -> int:
        return len(self.peak_shape)

    def as_dict(self) -> dict:
        return {"engine": self.engine, "mode": self.mode, "m": self.m, "shape": list(self.shape),
                "n": self.n, "total": self.total, "peak_shape": list(self.peak_shape),
                "peak_dims": self.peak_dims, "seconds": self.seconds}


def _random_system(engine: str, shape, n: int, rng) -> tuple[MISOSystem, list[str]]:
    ops = {
        "bks": ({"kind": "min"}, {"family": "kleene-dienes"}),
        "sbr": ({"kind": "greatest-averaging-conjunctor"},
                {"family": "from-aggregation",
                 "params": {"aggregation": {"kind": "greatest-averaging-conjunctor"},
                            "negation": {"kind": "standard"}}}),
        "tip": ({"kind": "lukasiewicz-tnorm"}, {"family": "lukasiewicz"}),
    }[engine]
    unis = [[f"u{i}_{k}" for k in range(ni)] for i, ni in enumerate(shape)]
    ants = [np.round(rng.random(ni), 1) for ni in shape]
    cons = np.round(rng.random(n), 1)
    sys = MISOSystem.build(unis, [f"v{k}" for k in range(n)], [(ants, cons)], *ops)
    return sys, [u[int(rng.integers(len(u)))] for u in unis]


def complexity_report(engines: Iterable[str], sizes: Iterable[Sequence[int]],
                      modes: Iterable[str] = MODES, wallclock: bool = False,
                      seed: int = 0) -> list[ComplexityRow]:
    """Predicted counts and peak storage for each (engine, mode, size).

    Each size is ``(n_1, ..., n_m, n)``: input universe sizes followed by
    the output universe size. With ``wallclock`` a random system of that
    size is also timed (informative only; never used for acceptance).
    """
    rows = []
    rng = np.random.default_rng(seed)
    for size in sizes:
        size = tuple(int(v) for v in size)
        if len(size) < 2 or min(size) < 1:
            raise ParameterError(f"size {size} must be (n_1, ..., n_m, n) with positive entries")
        shape, n = size[:-1], size[-1]
        for engine in engines:
            for mode in modes:
                cnt = predicted_count(engine, mode, shape, n)
                secs = None
                if wallclock:
                    sys, labels = _random_system(engine, shape, n, rng)
                    t0 = time.perf_counter()
                    infer(sys, labels, engine, mode)
                    secs = time.perf_counter() - t0
                rows.append(ComplexityRow(engine, mode, len(shape), shape, n, cnt.total,
                                          predicted_peak_shape(engine, mode, shape, n), secs))
    return rows


def _fmt_shape(shape) -> str:
    return "x".join(str(v) for v in shape)


def format_report(rows: Sequence[ComplexityRow]) -> str:
    """Aligned text table."""
    head = ["engine", "mode", "m", "sizes", "|V|", "ops", "peak stored"]
    timed = any(r.seconds is not None for r in rows)
    if timed:
        head.append("seconds")
    body = []
    for r in rows:
        line = [r.engine, r.mode, str(r.m), _fmt_shape(r.shape), str(r.n), str(r.total),
                _fmt_shape(r.peak_shape)]
        if timed:
            line.append("" if r.seconds is None else f"{r.seconds:.6f}")
        body.append(line)
    widths = [max(len(h), *(len(b[k]) for b in body)) if body else len(h)
              for k, h in enumerate(head)]
    out = ["  ".join(h.ljust(w) for h, w in zip(head, widths))]
    out += ["  ".join(c.ljust(w) for c, w in zip(b, widths)) for b in body]
    return "\n".join(out)


def report_csv(rows: Sequence[ComplexityRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["engine", "mode", "m", "sizes", "n", "ops", "peak_stored", "seconds"])
    for r in rows:
        w.writerow([r.engine, r.mode, r.m, _fmt_shape(r.shape), r.n, r.total,
                    _fmt_shape(r.peak_shape), "" if r.seconds is None else f"{r.seconds:.6f}"])
    return buf.getvalue()

