import json
from importlib import resources

import numpy as np
import pytest

from fuzzlia.algebra import LUKASIEWICZ, MIN
from fuzzlia.bench import _random_system
from fuzzlia.engines import (FuzzySet, MISOSystem, SimilarityMeasure, SingletonInput, admit,
                             bks_classical, bks_direct, bks_hierarchical, combine_antecedents,
                             infer, is_singleton, load_system, parse_input, sbr_classical,
                             sbr_hierarchical, similarity, tip_classical, tip_hierarchical)
from fuzzlia.errors import (AdmissionError, DescriptorError, DimensionError, DomainError,
                            EmptySupportError, ParameterError)

D1 = [0.9, 0.7, 0.9, 0.6, 0.8]
D2 = [1.0, 0.7, 0.8, 0.9]
B = [0.2, 0.1, 0.3]
U1 = ["x11", "x12", "x13", "x14", "x15"]
U2 = ["x21", "x22", "x23", "x24"]
V = ["y1", "y2", "y3"]


def fixture(name):
    raw = json.loads(resources.files("fuzzlia.fixtures").joinpath(name).read_text())
    return load_system(raw), raw


@pytest.fixture(scope="module")
def bks_sys():
    return fixture("bks_kleene_min.json")[0]


@pytest.fixture(scope="module")
def sbr_sys():
    return fixture("sbr_cavg.json")[0]


@pytest.fixture(scope="module")
def tip_sys():
    return fixture("tip_lukasiewicz.json")[0]


# -- sets and similarity ------------------------------------------------------------

class TestSets:
    def test_validation(self):
        with pytest.raises(DomainError):
            FuzzySet(U2, [0, 0, 1.2, 0])
        with pytest.raises(DimensionError):
            FuzzySet(U2, [0, 1])
        with pytest.raises(DimensionError):
            FuzzySet(["a", "a"], [0, 1])

    def test_singleton(self):
        s = FuzzySet.singleton(U2, "x23")
        assert s.as_list() == [0.0, 0.0, 1.0, 0.0]
        assert s["x23"] == 1.0
        assert is_singleton([s])
        with pytest.raises(DimensionError):
            FuzzySet.singleton(U2, "x99")

    def test_singleton_input(self):
        sets = SingletonInput(["x12", "x23"]).to_sets([U1, U2])
        assert [s.as_list() for s in sets] == [[0, 1, 0, 0, 0], [0, 0, 1, 0]]
        with pytest.raises(DimensionError):
            SingletonInput(["x12"]).to_sets([U1, U2])


class TestSimilarity:
    dp = np.array([0.0, 0.0, 1.0, 0.0])
    d = np.array(D2)

    def test_support_restricted(self):
        assert SimilarityMeasure()(self.dp, self.d) == pytest.approx(0.8)

    def test_plain_sup_difference(self):
        assert SimilarityMeasure("sup-difference")(self.dp, self.d) == pytest.approx(0.0)

    def test_identical_sets(self):
        for kind in ("support-restricted-sup-difference", "sup-difference"):
            assert SimilarityMeasure(kind)(self.d, self.d) == 1.0

    def test_custom_table(self):
        m = SimilarityMeasure("custom-tabulated", grid=(0.0, 1.0), values=(1.0, 0.0))
        assert m(self.dp, self.d) == pytest.approx(0.8)
        m2 = SimilarityMeasure("custom-tabulated", grid=(0.0, 0.5, 1.0), values=(1.0, 0.2, 0.0))
        assert m2(self.dp, self.d) == pytest.approx(1.0 - 0.8 * 0.4)

    def test_errors(self):
        with pytest.raises(EmptySupportError):
            SimilarityMeasure()(np.zeros(4), self.d)
        with pytest.raises(ParameterError):
            SimilarityMeasure("cosine")
        with pytest.raises(ParameterError):
            SimilarityMeasure("custom-tabulated", grid=(0.0, 1.0), values=(0.5, 0.0))
        with pytest.raises(DimensionError):
            similarity(SimilarityMeasure(), FuzzySet(U2, self.dp), FuzzySet(U1, D1))


# -- worked systems -----------------------------------------------------------------

class TestBKS:
    def test_outputs(self, bks_sys):
        for run in (bks_classical, bks_hierarchical):
            out, _ = run(bks_sys, "x12,x23")
            assert out.allclose([0.3, 0.3, 0.3], tol=1e-9)

    def test_joint_antecedent_row(self, bks_sys):
        _, rep = bks_classical(bks_sys, "x12,x23")
        np.testing.assert_allclose(rep.intermediates["joint_antecedent"][0], [0.9, 0.7, 0.8, 0.9])
        assert rep.intermediates["sup"] == pytest.approx(0.7)

    def test_stage_values(self, bks_sys):
        _, rep = bks_hierarchical(bks_sys, "x12,x23")
        s1, s2 = rep.intermediates["stage_sups"]
        assert (s1, s2) == (pytest.approx(0.7), pytest.approx(0.8))
        # inner stage I(0.8, B) with B = [0.2, 0.1, 0.3]
        np.testing.assert_allclose(rep.intermediates["stage_outputs"][1], [0.2, 0.2, 0.3])

    def test_other_input(self, bks_sys):
        out, _ = bks_classical(bks_sys, "x11,x21")
        assert out.allclose([0.2, 0.1, 0.3])

    def test_direct_double_loop_agrees(self, bks_sys, rng):
        for _ in range(20):
            labels = [U1[rng.integers(5)], U2[rng.integers(4)]]
            a, _ = bks_classical(bks_sys, labels)
            b, cnt = bks_direct(bks_sys, labels)
            assert a.allclose(b.memberships, tol=1e-12)
        assert cnt.total > bks_classical(bks_sys, labels)[1].opcount.total

    def test_fuzzy_inputs(self, bks_sys, rng):
        # min separates over the inputs, so the cascade also holds for non-singletons
        for _ in range(20):
            inp = {"memberships": [np.round(rng.random(5), 2).tolist(),
                                   np.round(rng.random(4), 2).tolist()]}
            a, _ = bks_classical(bks_sys, inp)
            b, _ = bks_hierarchical(bks_sys, inp)
            d, _ = bks_direct(bks_sys, inp)
            assert a.allclose(b.memberships, tol=1e-12)
            assert a.allclose(d.memberships, tol=1e-12)


class TestSBR:
    def test_outputs(self, sbr_sys):
        for run in (sbr_classical, sbr_hierarchical):
            out, _ = run(sbr_sys, "x12,x23")
            assert out.allclose([0.2, 0.1, 0.2], tol=1e-9)

    def test_similarity_intermediates(self, sbr_sys):
        _, rep = sbr_classical(sbr_sys, "x12,x23")
        assert rep.intermediates["similarity"] == 0.8
        _, rep = sbr_hierarchical(sbr_sys, "x12,x23")
        assert rep.intermediates["stage_similarities"][1] == 0.8

    def test_exact_match(self):
        sys = _random_system("sbr", (3, 4), 3, np.random.default_rng(1))[0]
        d = [r.memberships for r in sys.rules[0].antecedents]
        if min(v.max() for v in d) == 0:
            pytest.skip("degenerate draw")
        _, rep = sbr_classical(sys, {"memberships": [v.tolist() for v in d]})
        assert rep.intermediates["similarity"] == 1.0
        jd = rep.intermediates["joint_antecedent"]
        np.testing.assert_allclose(rep.intermediates["modified_relation"],
                                   sys.antecedent_combiner(np.ones_like(jd), jd))


class TestTIP:
    def test_outputs(self, tip_sys):
        for run in (tip_classical, tip_hierarchical):
            out, _ = run(tip_sys, "x12,x23")
            assert out.allclose([0.7, 0.6, 0.8], tol=1e-9)

    def test_stage_intermediates(self, tip_sys):
        _, rep = tip_hierarchical(tip_sys, "x12,x23")
        np.testing.assert_allclose(rep.intermediates["stage_outputs"][1], [0.4, 0.3, 0.5],
                                   atol=1e-12)
        # row x12 of I_L(D1, [0.4, 0.3, 0.5])
        np.testing.assert_allclose(rep.intermediates["stage_relations"][0][1], [0.7, 0.6, 0.8],
                                   atol=1e-12)

    def test_classical_matrices(self, tip_sys):
        _, rep = tip_classical(tip_sys, "x12,x23")
        jd = rep.intermediates["joint_antecedent"]
        np.testing.assert_allclose(jd[3], [0.6, 0.3, 0.4, 0.5], atol=1e-12)
        np.testing.assert_allclose(rep.intermediates["relation"][3, :, 2], [0.7, 1, 0.9, 0.8],
                                   atol=1e-12)

    def test_exact_match_contains_consequent(self, rng):
        for _ in range(10):
            sys, _ = _random_system("tip", (3, 4), 3, rng)
            d = [r.memberships.copy() for r in sys.rules[0].antecedents]
            for v in d:
                v[rng.integers(len(v))] = 1.0
            sys = MISOSystem.build(sys.input_universes, sys.output_universe,
                                   [(d, sys.rules[0].consequent.memberships)],
                                   "lukasiewicz-tnorm", "lukasiewicz")
            out, _ = tip_classical(sys, {"memberships": [v.tolist() for v in d]})
            assert np.all(out.memberships >= sys.rules[0].consequent.memberships - 1e-12)


# -- random equivalence (the full 200-per-engine run is in the acceptance suite) ---------

@pytest.mark.parametrize("engine", ["bks", "sbr", "tip"])
def test_random_three_input_systems(engine, rng):
    for _ in range(30):
        shape = tuple(int(v) for v in rng.integers(1, 6, size=3))
        sys, labels = _random_system(engine, shape, int(rng.integers(1, 5)), rng)
        a, _ = infer(sys, labels, engine, "classical")
        b, _ = infer(sys, labels, engine, "hierarchical")
        assert np.max(np.abs(a.memberships - b.memberships)) <= 1e-12


def test_multi_rule_minimum(rng):
    rules = [([rng.random(3).round(1), rng.random(4).round(1)], rng.random(2).round(1))
             for _ in range(3)]
    sys = MISOSystem.build([U1[:3], U2], ["v1", "v2"], rules, "min", "kleene-dienes")
    out, rep = bks_classical(sys, ["x12", "x23"])
    parts = [bks_classical(MISOSystem.build([U1[:3], U2], ["v1", "v2"], [r], "min",
                                            "kleene-dienes"), ["x12", "x23"])[0].memberships
             for r in rules]
    np.testing.assert_allclose(out.memberships, np.min(parts, axis=0))
    assert rep.opcount.stages[-1] == ("min over rules", 4)


# -- admission ----------------------------------------------------------------------

class TestAdmission:
    def test_tip_refuses_kleene_dienes(self, bks_sys):
        with pytest.raises(AdmissionError) as exc:
            infer(bks_sys, "x12,x23", "tip", "classical")
        assert any("OP" in h.name and not h.holds for h in exc.value.ledger)

    def test_bks_hierarchical_needs_lia(self):
        sys = MISOSystem.build([U1, U2], V, [([D1, D2], B)], "product",
                               "kleene-dienes")
        with pytest.raises(AdmissionError):
            bks_hierarchical(sys, "x12,x23")
        # the classical form has no such requirement
        out, rep = bks_classical(sys, "x12,x23")
        assert any(not h.holds and h.detail.startswith("informational") for h in rep.hypotheses)

    def test_non_associative_combiner_for_three_inputs(self):
        sys = MISOSystem.build([U1, U2, ["z1", "z2"]], V, [([D1, D2, [1, 0.5]], B)],
                               "threshold-mean", "kleene-dienes")
        with pytest.raises(AdmissionError):
            bks_classical(sys, ["x12", "x23", "z1"])

    def test_deterministic_ledger(self, sbr_sys):
        a = admit("sbr", "hierarchical", sbr_sys, parse_input("x12,x23", sbr_sys))
        b = admit("sbr", "hierarchical", sbr_sys, parse_input("x12,x23", sbr_sys))
        assert [h.as_dict() for h in a] == [h.as_dict() for h in b]

    def test_unknown_engine(self, bks_sys):
        with pytest.raises(ParameterError):
            infer(bks_sys, "x12,x23", "mamdani")


def test_combine_antecedents():
    sets = [FuzzySet(U1, D1), FuzzySet(U2, D2)]
    j = combine_antecedents(MIN, sets)
    assert j.shape == (5, 4)
    np.testing.assert_allclose(j[0], [0.9, 0.7, 0.8, 0.9])
    j = combine_antecedents(LUKASIEWICZ, sets)
    np.testing.assert_allclose(j[3], [0.6, 0.3, 0.4, 0.5], atol=1e-12)
    s = [FuzzySet.singleton(U1, "x12"), FuzzySet.singleton(U2, "x23")]
    j = combine_antecedents(MIN, s)
    assert j.sum() == 1.0 and j[1, 2] == 1.0
    with pytest.raises(DimensionError):
        combine_antecedents(MIN, sets[:1])


# -- loading and parsing ------------------------------------------------------------

class TestLoading:
    def test_round_trip(self, bks_sys):
        again = load_system(json.dumps(bks_sys.descriptor()))
        assert again.shape == (5, 4)
        out, _ = bks_classical(again, "x12,x23")
        assert out.allclose([0.3, 0.3, 0.3])

    def test_from_file(self, tmp_path, bks_sys):
        p = tmp_path / "sys.json"
        p.write_text(json.dumps(bks_sys.descriptor()))
        assert load_system(str(p)).m == 2

    def test_errors(self, tmp_path):
        with pytest.raises(DescriptorError):
            load_system(str(tmp_path / "missing.json"))
        with pytest.raises(DescriptorError):
            load_system("{not json")
        _, raw = fixture("bks_kleene_min.json")
        bad = dict(raw)
        del bad["rules"]
        with pytest.raises(DescriptorError):
            load_system(bad)
        bad = json.loads(json.dumps(raw))
        bad["rules"][0]["antecedents"][0][0] = 1.2
        with pytest.raises(DomainError):
            load_system(bad)
        bad = json.loads(json.dumps(raw))
        bad["rules"][0]["consequent"] = [0.1, 0.2]
        with pytest.raises(DimensionError):
            load_system(bad)

    def test_input_forms(self, bks_sys):
        ref = parse_input("x12,x23", bks_sys)
        for form in ("x1=x12,x2=x23", ["x12", "x23"], {"singleton": ["x12", "x23"]},
                     SingletonInput(["x12", "x23"]), list(ref),
                     {"memberships": [[0, 1, 0, 0, 0], [0, 0, 1, 0]]}):
            got = parse_input(form, bks_sys)
            assert [g.as_list() for g in got] == [r.as_list() for r in ref]
        with pytest.raises(DescriptorError):
            parse_input("x9=x12,x2=x23", bks_sys)
        with pytest.raises(DescriptorError):
            parse_input({"points": []}, bks_sys)
