"""Fuzzy sets on finite universes, singleton inputs and similarity measures."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from ..errors import DescriptorError, DimensionError, DomainError, EmptySupportError, ParameterError


@dataclass(frozen=True, eq=False)
class FuzzySet:
    """Memberships over an ordered, finite universe of labels."""

    universe: tuple[str, ...]
    memberships: np.ndarray = field(repr=False)

    def __init__(self, universe: Sequence[str], memberships):
        labels = tuple(str(u) for u in universe)
        values = np.array(memberships, dtype=float).reshape(-1)
        if len(labels) != values.size:
            raise DimensionError(
                f"universe has {len(labels)} labels but {values.size} memberships were given")
        if len(set(labels)) != len(labels):
            raise DimensionError(f"universe labels must be distinct: {labels}")
        bad = ~((values >= 0.0) & (values <= 1.0))
        if np.any(bad):
            k = int(np.flatnonzero(bad)[0])
            raise DomainError(f"membership of {labels[k]!r} is {values[k]!r}, outside [0, 1]")
        values.setflags(write=False)
        object.__setattr__(self, "universe", labels)
        object.__setattr__(self, "memberships", values)

    def __len__(self) -> int:
        return len(self.universe)

    def __getitem__(self, label: str) -> float:
        return float(self.memberships[self.universe.index(label)])

    def __eq__(self, other) -> bool:
        return (isinstance(other, FuzzySet) and self.universe == other.universe
                and np.array_equal(self.memberships, other.memberships))

    def __hash__(self) -> int:
        return hash((self.universe, self.memberships.tobytes()))

    def __repr__(self) -> str:
        vals = ", ".join(f"{v:g}" for v in self.memberships)
        return f"FuzzySet([{vals}])"

    def allclose(self, values, tol: float = 1e-9) -> bool:
        return bool(np.allclose(self.memberships, np.asarray(values, float), rtol=0, atol=tol))

    @classmethod
    def singleton(cls, universe: Sequence[str], label: str) -> "FuzzySet":
        universe = tuple(universe)
        if label not in universe:
            raise DimensionError(f"label {label!r} is not in the universe {universe}")
        return cls(universe, [1.0 if u == label else 0.0 for u in universe])

    def support(self) -> np.ndarray:
        return self.memberships > 0.0

    def as_list(self) -> list[float]:
        return [float(v) for v in self.memberships]


@dataclass(frozen=True)
class SingletonInput:
    """One observed label per input universe."""

    labels: tuple[str, ...]

    def __init__(self, labels: Sequence[str]):
        object.__setattr__(self, "labels", tuple(str(v) for v in labels))

    def to_sets(self, universes: Sequence[Sequence[str]]) -> tuple[FuzzySet, ...]:
        if len(self.labels) != len(universes):
            raise DimensionError(f"{len(self.labels)} input labels for {len(universes)} inputs")
        return tuple(FuzzySet.singleton(u, lab) for u, lab in zip(universes, self.labels))


SIMILARITY_KINDS = ("support-restricted-sup-difference", "sup-difference", "custom-tabulated")


@dataclass(frozen=True)
class SimilarityMeasure:
    """S(D', D) computed from the largest membership difference.

    ``support-restricted-sup-difference`` looks only at elements where
    D' > 0, ``sup-difference`` at all of them. ``custom-tabulated`` maps
    that largest difference d through a non-increasing table h with
    h(0) = 1 (linear interpolation); ``restrict`` picks which cells count.
    """

    kind: str = "support-restricted-sup-difference"
    grid: tuple[float, ...] = ()
    values: tuple[float, ...] = ()
    restrict: bool = True

    def __post_init__(self):
        if self.kind not in SIMILARITY_KINDS:
            raise ParameterError(f"unknown similarity kind {self.kind!r}; "
                                 f"expected one of {SIMILARITY_KINDS}")
        if self.kind == "custom-tabulated":
            g = np.asarray(self.grid, float)
            v = np.asarray(self.values, float)
            if g.size < 2 or g.size != v.size:
                raise ParameterError("custom-tabulated similarity needs matching grid and values")
            if g[0] != 0.0 or g[-1] != 1.0 or np.any(np.diff(g) <= 0):
                raise ParameterError("similarity table grid must increase from 0 to 1")
            if v[0] != 1.0 or np.any(np.diff(v) > 0) or np.any((v < 0) | (v > 1)):
                raise ParameterError("similarity table must start at 1 and not increase")

    @property
    def restricted(self) -> bool:
        if self.kind == "custom-tabulated":
            return self.restrict
        return self.kind == "support-restricted-sup-difference"

    def compared_cells(self, d_prime: np.ndarray) -> np.ndarray:
        """Mask of the cells whose differences enter the maximum."""
        if self.restricted:
            return np.asarray(d_prime) > 0.0
        return np.ones(np.shape(d_prime), dtype=bool)

    def __call__(self, d_prime, d) -> float:
        dp = np.asarray(getattr(d_prime, "memberships", d_prime), float)
        dd = np.asarray(getattr(d, "memberships", d), float)
        if dp.shape != dd.shape:
            raise DimensionError(f"similarity needs conformable sets, got {dp.shape} and {dd.shape}")
        mask = self.compared_cells(dp)
        if not np.any(mask):
            raise EmptySupportError("support-restricted similarity: D' has empty support")
        diff = float(np.max(np.abs(dp[mask] - dd[mask])))
        if self.kind == "custom-tabulated":
            return float(np.interp(diff, self.grid, self.values))
        return 1.0 - diff

    def descriptor(self) -> dict:
        if self.kind == "custom-tabulated":
            return {"kind": self.kind, "grid": list(self.grid), "values": list(self.values),
                    "restrict": self.restrict}
        return {"kind": self.kind}


def similarity_from_descriptor(desc) -> SimilarityMeasure:
    if desc is None:
        return SimilarityMeasure()
    if isinstance(desc, SimilarityMeasure):
        return desc
    if isinstance(desc, str):
        return SimilarityMeasure(desc)
    if not isinstance(desc, Mapping) or "kind" not in desc:
        raise DescriptorError(f"similarity descriptor must be an object with 'kind', got {desc!r}")
    try:
        return SimilarityMeasure(desc["kind"], tuple(desc.get("grid", ())),
                                 tuple(desc.get("values", ())), bool(desc.get("restrict", True)))
    except ParameterError as exc:
        raise DescriptorError(str(exc)) from exc


def similarity(m: SimilarityMeasure, d_prime: FuzzySet, d: FuzzySet) -> float:
    """S(D', D) for two sets on the same universe."""
    if isinstance(d_prime, FuzzySet) and isinstance(d, FuzzySet) and d_prime.universe != d.universe:
        raise DimensionError("similarity needs both sets on the same universe")
    return m(d_prime, d)
