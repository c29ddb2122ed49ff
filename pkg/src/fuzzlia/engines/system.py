"""MISO rule systems and their JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping, Sequence

from ..algebra.aggregations import Aggregation, aggregation_from_descriptor
from ..errors import DescriptorError, DimensionError
from ..implications.base import Implication, implication_from_descriptor
from .sets import FuzzySet, SimilarityMeasure, SingletonInput, similarity_from_descriptor


@dataclass(frozen=True)
class Rule:
    """IF x_1 is D_1 AND ... AND x_m is D_m THEN y is B."""

    antecedents: tuple[FuzzySet, ...]
    consequent: FuzzySet


@dataclass(frozen=True, eq=False)
class MISOSystem:
    """Rules over m input universes and one output universe.

    Construction only checks that every set conforms to its universe;
    each engine runs its own admission checks when it is called.
    """

    input_universes: tuple[tuple[str, ...], ...]
    output_universe: tuple[str, ...]
    rules: tuple[Rule, ...]
    antecedent_combiner: Aggregation
    implication: Implication
    similarity: SimilarityMeasure = SimilarityMeasure()
    input_names: tuple[str, ...] = ()

    def __post_init__(self):
        m = len(self.input_universes)
        if m < 1:
            raise DimensionError("a system needs at least one input universe")
        if not self.rules:
            raise DimensionError("a system needs at least one rule")
        for k, rule in enumerate(self.rules):
            if len(rule.antecedents) != m:
                raise DimensionError(f"rule {k + 1} has {len(rule.antecedents)} antecedents, "
                                     f"expected {m}")
            for i, (s, u) in enumerate(zip(rule.antecedents, self.input_universes)):
                if s.universe != tuple(u):
                    raise DimensionError(f"rule {k + 1}, input {i + 1}: antecedent does not "
                                         f"conform to its universe")
            if rule.consequent.universe != tuple(self.output_universe):
                raise DimensionError(f"rule {k + 1}: consequent does not conform to the output "
                                     f"universe")
        if not self.input_names:
            object.__setattr__(self, "input_names", tuple(f"x{i + 1}" for i in range(m)))
        elif len(self.input_names) != m:
            raise DimensionError("one name per input universe is required")

    @property
    def m(self) -> int:
        return len(self.input_universes)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(u) for u in self.input_universes)

    @classmethod
    def build(cls, inputs: Sequence[Sequence[str]], output: Sequence[str],
              rules: Sequence[tuple[Sequence[Sequence[float]], Sequence[float]]],
              combiner, implication, similarity=None, names=()) -> "MISOSystem":
        """Build from plain membership lists, e.g. ``rules=[([D1, D2], B)]``."""
        ins = tuple(tuple(str(v) for v in u) for u in inputs)
        out = tuple(str(v) for v in output)
        rs = []
        for ants, cons in rules:
            if len(ants) != len(ins):
                raise DimensionError(f"rule has {len(ants)} antecedents, expected {len(ins)}")
            rs.append(Rule(tuple(FuzzySet(u, a) for u, a in zip(ins, ants)), FuzzySet(out, cons)))
        return cls(ins, out, tuple(rs), aggregation_from_descriptor(combiner),
                   implication_from_descriptor(implication),
                   similarity_from_descriptor(similarity), tuple(names))

    def descriptor(self) -> dict:
        return {
            "inputs": [{"name": n, "labels": list(u)}
                       for n, u in zip(self.input_names, self.input_universes)],
            "output": {"labels": list(self.output_universe)},
            "rules": [{"antecedents": [a.as_list() for a in r.antecedents],
                       "consequent": r.consequent.as_list()} for r in self.rules],
            "combiner": self.antecedent_combiner.descriptor(),
            "implication": self.implication.descriptor(),
            "similarity": self.similarity.descriptor(),
        }


def _labels(entry, what: str) -> list[str]:
    if not isinstance(entry, Mapping) or not isinstance(entry.get("labels"), list):
        raise DescriptorError(f"{what} must be an object with a 'labels' list")
    return [str(v) for v in entry["labels"]]


def system_from_dict(data: Mapping[str, Any]) -> MISOSystem:
    """Parse the JSON object form of a system (see :func:`load_system`)."""
    if not isinstance(data, Mapping):
        raise DescriptorError("system description must be a JSON object")
    for key in ("inputs", "output", "rules", "combiner", "implication"):
        if key not in data:
            raise DescriptorError(f"system description lacks {key!r}")
    if not isinstance(data["inputs"], list) or not data["inputs"]:
        raise DescriptorError("'inputs' must be a non-empty list")
    inputs = [_labels(e, f"input {k + 1}") for k, e in enumerate(data["inputs"])]
    names = [str(e.get("name", f"x{k + 1}")) for k, e in enumerate(data["inputs"])]
    output = _labels(data["output"], "output")
    rules = []
    for k, r in enumerate(data["rules"]):
        if not isinstance(r, Mapping) or "antecedents" not in r or "consequent" not in r:
            raise DescriptorError(f"rule {k + 1} needs 'antecedents' and 'consequent'")
        rules.append((r["antecedents"], r["consequent"]))
    return MISOSystem.build(inputs, output, rules, data["combiner"], data["implication"],
                            data.get("similarity"), names)


def load_system(source) -> MISOSystem:
    """Load a system from a JSON file path, a JSON string or an already parsed dict.

    Format: ``{"inputs": [{"labels": [...]}, ...], "output": {"labels": [...]},
    "rules": [{"antecedents": [[...], ...], "consequent": [...]}],
    "combiner": <aggregation descriptor>, "implication": <implication descriptor>,
    "similarity": <similarity descriptor>}``.
    """
    if isinstance(source, Mapping):
        return system_from_dict(source)
    text = str(source)
    path = Path(text)
    if not text.lstrip().startswith("{"):
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise DescriptorError(f"cannot read system file {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DescriptorError(f"system file is not valid JSON: {exc}") from exc
    return system_from_dict(data)


def parse_input(spec, system: MISOSystem) -> tuple[FuzzySet, ...]:
    """Turn an input description into one fuzzy set per input universe.

    Accepted forms: a SingletonInput; ``{"singleton": [labels]}``;
    ``{"memberships": [[...], ...]}``; a list of labels; a list of
    FuzzySets; or a string ``"x1=x12,x2=x23"`` naming inputs by name
    (or by position when names are omitted: ``"x12,x23"``).
    """
    unis = system.input_universes
    if isinstance(spec, SingletonInput):
        return spec.to_sets(unis)
    if isinstance(spec, str):
        parts = [p.strip() for p in spec.split(",") if p.strip()]
        if all("=" in p for p in parts):
            given = dict(p.split("=", 1) for p in parts)
            given = {k.strip(): v.strip() for k, v in given.items()}
            unknown = set(given) - set(system.input_names)
            if unknown:
                raise DescriptorError(f"unknown input names {sorted(unknown)}; "
                                      f"expected {list(system.input_names)}")
            missing = [n for n in system.input_names if n not in given]
            if missing:
                raise DescriptorError(f"no value given for inputs {missing}")
            labels = [given[n] for n in system.input_names]
        else:
            labels = parts
        return SingletonInput(labels).to_sets(unis)
    if isinstance(spec, Mapping):
        if "singleton" in spec:
            return SingletonInput(spec["singleton"]).to_sets(unis)
        if "memberships" in spec:
            vecs = spec["memberships"]
            if len(vecs) != len(unis):
                raise DimensionError(f"{len(vecs)} membership vectors for {len(unis)} inputs")
            return tuple(FuzzySet(u, v) for u, v in zip(unis, vecs))
        raise DescriptorError("input object needs 'singleton' or 'memberships'")
    if isinstance(spec, Sequence):
        items = list(spec)
        if items and all(isinstance(s, FuzzySet) for s in items):
            if len(items) != len(unis):
                raise DimensionError(f"{len(items)} input sets for {len(unis)} inputs")
            for s, u in zip(items, unis):
                if s.universe != tuple(u):
                    raise DimensionError("input set does not conform to its universe")
            return tuple(items)
        return SingletonInput(items).to_sets(unis)
    raise DescriptorError(f"cannot interpret input {spec!r}")


def is_singleton(sets: Sequence[FuzzySet]) -> bool:
    return all(int(s.support().sum()) == 1 and float(s.memberships.max()) == 1.0 for s in sets)


__all__ = ["Rule", "MISOSystem", "system_from_dict", "load_system", "parse_input",
           "is_singleton"]
