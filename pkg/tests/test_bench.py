import csv
import io
import json
from importlib import resources
from math import prod

import numpy as np
import pytest

from fuzzlia.bench import (_random_system, complexity_report, count_operations, format_report,
                           predicted_count, predicted_peak_shape, report_csv)
from fuzzlia.engines import MISOSystem, infer, load_system
from fuzzlia.errors import ParameterError


@pytest.fixture(scope="module")
def worked():
    raw = json.loads(resources.files("fuzzlia.fixtures").joinpath("bks_kleene_min.json")
                     .read_text())
    return load_system(raw)


def test_classical_bks_count(worked):
    cnt = count_operations("bks", "classical", worked, "x12,x23")
    assert cnt.total == 82
    assert cnt.vector == [20, 20, 20, 19, 3]


def test_hierarchical_bks_count(worked):
    # the cascade handles x2 (4 cells) first, then x1 (5 cells)
    cnt = count_operations("bks", "hierarchical", worked, "x12,x23")
    assert cnt.vector == [4, 3, 3, 5, 4, 3]
    assert cnt.total == 22


def test_count_table_and_csv(worked):
    cnt = count_operations("bks", "classical", worked, "x12,x23")
    assert "82" in cnt.table()
    rows = list(csv.reader(io.StringIO(cnt.csv())))
    assert rows[-1][-1] == "82"
    assert cnt.as_dict()["total"] == 82


@pytest.mark.parametrize("engine", ["bks", "sbr", "tip"])
@pytest.mark.parametrize("mode", ["classical", "hierarchical"])
def test_instrumented_matches_closed_form(engine, mode, rng):
    for _ in range(50):
        m = int(rng.integers(1, 4))
        shape = tuple(int(v) for v in rng.integers(1, 7, size=m))
        n = int(rng.integers(1, 6))
        sys, labels = _random_system(engine, shape, n, rng)
        got = count_operations(engine, mode, sys, labels)
        want = predicted_count(engine, mode, shape, n)
        assert got.vector == want.vector, (shape, n)


def test_multi_rule_count(rng):
    sys, labels = _random_system("bks", (3, 4), 2, rng)
    rules = [([r.memberships for r in sys.rules[0].antecedents], sys.rules[0].consequent
              .memberships)] * 3
    multi = MISOSystem.build(sys.input_universes, sys.output_universe, rules, "min",
                             "kleene-dienes")
    got = count_operations("bks", "classical", multi, labels)
    assert got.total == predicted_count("bks", "classical", (3, 4), 2, rules=3).total


@pytest.mark.parametrize("engine", ["bks", "sbr", "tip"])
def test_single_input_modes_coincide(engine):
    for n_1 in range(1, 7):
        for n in range(1, 6):
            c = predicted_count(engine, "classical", (n_1,), n)
            h = predicted_count(engine, "hierarchical", (n_1,), n)
            assert c.total == h.total


@pytest.mark.parametrize("engine", ["bks", "sbr", "tip"])
def test_hierarchical_cheaper_in_range(engine):
    for shape in [(a, b) for a in range(2, 7) for b in range(2, 7)] + \
                 [(a, b, c) for a in range(2, 7) for b in range(2, 7) for c in range(2, 6)]:
        for n in range(1, 6):
            c = predicted_count(engine, "classical", shape, n).total
            h = predicted_count(engine, "hierarchical", shape, n).total
            assert h < c, (shape, n)


def test_bks_small_inputs_large_output():
    # with 2x2 inputs and 10 outputs the cascade pays two implication passes
    c = predicted_count("bks", "classical", (2, 2), 10).total
    h = predicted_count("bks", "hierarchical", (2, 2), 10).total
    assert (c, h) == (25, 26)


def test_closed_form_values():
    assert predicted_count("bks", "classical", (5, 4), 3).total == 82
    assert predicted_count("sbr", "classical", (5, 4), 3).total == 179
    assert predicted_count("tip", "classical", (5, 4), 3).total == 217
    assert predicted_count("sbr", "hierarchical", (5, 4), 3).total == 61
    assert predicted_count("tip", "hierarchical", (5, 4), 3).total == 75
    with pytest.raises(ParameterError):
        predicted_count("bks", "classical", (0, 4), 3)
    with pytest.raises(ParameterError):
        predicted_count("sbr", "hierarchical", (5, 4), 3, compared=[1])


@pytest.mark.parametrize("engine", ["bks", "sbr", "tip"])
@pytest.mark.parametrize("mode", ["classical", "hierarchical"])
def test_peak_shape(engine, mode, rng):
    for _ in range(20):
        m = int(rng.integers(2, 4))
        shape = tuple(int(v) for v in rng.integers(2, 6, size=m))
        n = int(rng.integers(2, 5))
        sys, labels = _random_system(engine, shape, n, rng)
        _, rep = infer(sys, labels, engine, mode)
        want = predicted_peak_shape(engine, mode, shape, n)
        assert prod(rep.peak_shape) == prod(want)
        assert len(rep.peak_shape) == len(want)
    if mode == "hierarchical":
        assert len(want) <= 2
    elif engine != "bks":
        assert len(want) == m + 1


def test_report_formats():
    rows = complexity_report(["bks", "tip"], [(5, 4, 3), (3, 3, 3, 2)])
    assert len(rows) == 8
    text = format_report(rows)
    assert "82" in text and "peak stored" in text
    parsed = list(csv.DictReader(io.StringIO(report_csv(rows))))
    assert parsed[0]["ops"] == "82" and parsed[0]["sizes"] == "5x4"
    with pytest.raises(ParameterError):
        complexity_report(["bks"], [(5,)])


def test_wallclock_is_optional():
    rows = complexity_report(["bks"], [(3, 3, 2)], wallclock=True)
    assert all(r.seconds is not None and r.seconds >= 0 for r in rows)
    assert all(np.isfinite(r.seconds) for r in rows)
    assert "seconds" in format_report(rows)
