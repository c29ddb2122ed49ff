import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fuzzlia._grid import mesh2, mesh3, unit_grid
from fuzzlia.algebra import (GREATEST, LUKASIEWICZ, MIN, PRODUCT, STANDARD, aggregation,
                             conjugate, negation)
from fuzzlia.errors import ConstructionError, DescriptorError, DomainError, ParameterError
from fuzzlia.implications import (check_axioms, check_ep, check_lia, check_np, check_op,
                                  check_properties, check_right_continuity, check_rp,
                                  conjugate_implication, f_implication, from_aggregation,
                                  g_implication, implication, implication_from_descriptor,
                                  kleene_dienes, lia_sides, lukasiewicz, natural_negation,
                                  power_implication, probabilistic_implication,
                                  probabilistic_s_implication, ql_implication,
                                  residual_implication, tabulated)

unit = st.floats(0.0, 1.0, allow_nan=False)
SQUARE = {"kind": "power", "params": {"p": 2}}


def brute_residual(a, x, y, points=10**4):
    """sup{t : A(x,t) <= y} over a t-grid."""
    t = np.linspace(0.0, 1.0, points)
    ok = t[np.asarray(a(np.full_like(t, x), t)) <= y + 1e-12]
    return float(ok.max()) if ok.size else 0.0


class TestNamed:
    def test_values(self):
        assert implication("kleene-dienes")(0.7, 0.2) == pytest.approx(0.3, abs=1e-12)
        assert implication("lukasiewicz")(0.5, 0.2) == pytest.approx(0.7, abs=1e-12)
        assert implication("weber")(0.9, 0.0) == 1.0
        assert implication("weber")(1.0, 0.3) == 0.3
        assert implication("goedel")(0.6, 0.4) == 0.4
        assert implication("goguen")(0.8, 0.4) == pytest.approx(0.5)
        assert implication("reichenbach")(0.5, 0.5) == pytest.approx(0.75)
        assert implication("yager")(0.5, 0.25) == pytest.approx(0.5)

    @pytest.mark.parametrize("name", ["kleene-dienes", "lukasiewicz", "goedel", "goguen",
                                      "reichenbach", "weber", "yager", "greatest", "least"])
    def test_axioms(self, name):
        report = check_axioms(implication(name))
        assert all(e.holds for e in report.values()), name

    def test_boundaries_exact(self):
        for name in ("kleene-dienes", "lukasiewicz", "goguen", "yager", "reichenbach"):
            i = implication(name)
            assert i(0.0, 0.0) == 1.0 and i(1.0, 1.0) == 1.0 and i(1.0, 0.0) == 0.0

    def test_errors(self):
        with pytest.raises(DomainError):
            kleene_dienes()(1.1, 0.2)
        with pytest.raises(DescriptorError):
            implication("no-such-family")

    def test_not_an_implication(self):
        with pytest.raises(ConstructionError) as exc:
            implication("closed-form", expr="x * y")
        assert exc.value.axiom is not None

    def test_descriptor_round_trip(self):
        i = implication("f-generated", f={"kind": "neg-log"})
        j = implication_from_descriptor(i.descriptor())
        x, y = mesh2(21)
        np.testing.assert_allclose(j(x, y), i(x, y), atol=1e-15)


class TestResidual:
    def test_lukasiewicz_tnorm(self):
        r = residual_implication(LUKASIEWICZ)
        x, y = mesh2(101)
        np.testing.assert_allclose(r(x, y), np.minimum(1.0, 1.0 - x + y), atol=1e-9)

    def test_min_gives_goedel(self):
        r = residual_implication(MIN)
        x, y = mesh2(101)
        np.testing.assert_allclose(r(x, y), np.where(x <= y, 1.0, y), atol=1e-9)

    @pytest.mark.parametrize("kind", ["min", "product", "lukasiewicz-tnorm"])
    def test_against_brute_sup(self, kind):
        a = aggregation(kind)
        r = residual_implication(a)
        for x in (0.15, 0.5, 0.8, 1.0):
            for y in (0.0, 0.3, 0.7):
                assert r(x, y) == pytest.approx(brute_residual(a, x, y), abs=2e-4)

    def test_threshold_mean(self):
        a = aggregation("threshold-mean")
        r = residual_implication(a, strict=False)
        x, y = mesh2(101)
        closed = np.where(x < 0.5, 1.0,
                          np.minimum(1.0, np.maximum(2 * y - x, 0.5 / np.maximum(x, 0.5))))
        np.testing.assert_allclose(r(x, y), closed, atol=1e-9)
        for x0, y0 in ((0.8, 0.3), (0.8, 0.6), (0.6, 0.1), (1.0, 0.8)):
            assert r(x0, y0) == pytest.approx(brute_residual(a, x0, y0), abs=2e-4)
        # the value behind the failure at (1,1,0.8)
        assert r(1.0, 0.8) == pytest.approx(0.6)
        assert r(1.0, 0.6) == pytest.approx(0.5)


class TestPowerImplication:
    def test_values(self):
        assert power_implication(MIN)(0.3, 0.5) == 1.0
        assert power_implication(PRODUCT)(0.8, 0.5) == pytest.approx(np.log(0.8) / np.log(0.5),
                                                                     abs=1e-9)
        for t in (MIN, PRODUCT, LUKASIEWICZ):
            assert power_implication(t)(0.5, 0.5) == 1.0

    def test_min_power_is_crisp(self):
        i = power_implication(MIN)
        x, y = mesh2(41)
        np.testing.assert_array_equal(i(x, y), np.where(x <= y, 1.0, 0.0))

    def test_requires_catalog_tnorm(self):
        with pytest.raises((ParameterError, ConstructionError)):
            power_implication(aggregation("greatest-averaging-conjunctor"))


class TestNaturalNegation:
    def test_kleene_dienes(self):
        n = natural_negation(kleene_dienes())
        u = unit_grid(101)
        np.testing.assert_allclose(n(u), 1.0 - u, atol=1e-15)

    def test_weber(self):
        n = natural_negation(implication("weber"))
        u = unit_grid(101)
        np.testing.assert_array_equal(n(u), GREATEST(u))

    def test_value_at_zero(self):
        for name in ("kleene-dienes", "goguen", "reichenbach", "least", "weber"):
            assert natural_negation(implication(name))(0.0) == 1.0


class TestFamilies:
    def test_an_implication_of_max_is_kleene_dienes(self):
        i = implication("an", aggregation="max", negation="standard")
        x, y = mesh2(101)
        np.testing.assert_allclose(i(x, y), np.maximum(1 - x, y), atol=1e-15)

    def test_ql_bounded_sum_lukasiewicz(self):
        i = ql_implication(aggregation("bounded-sum"), LUKASIEWICZ, STANDARD)
        x, y = mesh2(101)
        np.testing.assert_allclose(i(x, y), np.maximum(1 - x, y), atol=1e-12)

    def test_ql_max_min_is_not_an_implication(self):
        with pytest.raises(ConstructionError):
            ql_implication(aggregation("max"), MIN, STANDARD)

    def test_f_and_g(self):
        x, y = mesh2(101)
        yager = f_implication({"kind": "neg-log"})
        np.testing.assert_allclose(yager(x, y), np.where(x == 0, 1.0, y ** x), atol=1e-12)
        g = g_implication({"kind": "identity"})
        with np.errstate(divide="ignore", invalid="ignore"):
            expect = np.where(x <= y, 1.0, np.minimum(1.0, y / np.where(x == 0, 1, x)))
        np.testing.assert_allclose(g(x, y), expect, atol=1e-12)

    def test_probabilistic(self):
        prod_c = aggregation("copula", name="product")
        i = probabilistic_implication(prod_c)
        assert i(0.4, 0.3) == pytest.approx(0.3)
        assert i(0.0, 0.0) == 1.0
        s = probabilistic_s_implication(prod_c)
        x, y = mesh2(101)
        np.testing.assert_allclose(s(x, y), 1 - x + x * y, atol=1e-12)
        s_min = probabilistic_s_implication(aggregation("copula", name="min"))
        np.testing.assert_allclose(s_min(x, y), np.minimum(1, 1 - x + y), atol=1e-12)

    def test_from_aggregation_min_standard(self):
        i = from_aggregation(MIN, STANDARD)
        x, y = mesh2(101)
        np.testing.assert_allclose(i(x, y), np.maximum(1 - x, y), atol=1e-12)

    def test_from_smallest_conjunctor_is_greatest(self):
        for n in (STANDARD, negation("sugeno", lam=1.0)):
            i = from_aggregation(aggregation("smallest-conjunctor"), n)
            x, y = mesh2(101)
            expect = np.where((x == 1) & (y == 0), 0.0, 1.0)
            np.testing.assert_allclose(i(x, y), expect, atol=1e-12)

    def test_from_averaging_conjunctor(self):
        i = from_aggregation(aggregation("greatest-averaging-conjunctor"), STANDARD)
        # I(x,y) = 1 - cavg(x, 1-y), which is min(1-x, y) away from the edges
        assert i(0.8, 0.2) == pytest.approx(0.2)
        assert i(0.3, 0.2) == pytest.approx(0.2)
        assert i(0.9, 0.5) == pytest.approx(0.1)
        assert i(0.5, 1.0) == 1.0
        assert i(0.0, 0.4) == 1.0
        assert check_lia(i, aggregation("cavg")).holds

    def test_representable_two_branch_reduces_to_lukasiewicz(self):
        i = implication("representable-companion", g={"kind": "identity"})
        x, y = mesh2(101)
        np.testing.assert_allclose(i(x, y), np.minimum(1, 1 - x + y), atol=1e-12)

    def test_tabulated(self):
        g = unit_grid(11)
        x, y = np.meshgrid(g, g, indexing="ij")
        i = tabulated(g, np.minimum(1, 1 - x + y))
        assert i.tol == 1e-6
        assert i(0.25, 0.1) == pytest.approx(0.85)


class TestProperties:
    def test_kleene_dienes(self):
        i = kleene_dienes()
        assert check_np(i).holds
        assert check_ep(i).holds
        op = check_op(i)
        assert not op.holds and op.witness == (0.5, 0.5)
        assert i(0.5, 0.5) == 0.5

    def test_kleene_dienes_rp_with_min(self):
        i = kleene_dienes()
        rp = check_rp(i, MIN)
        assert not rp.holds
        x, y, z = rp.witness
        assert (MIN(x, y) <= z) != (x <= i(y, z))
        # the hand witness: min(0.3,0.5) = 0.3 > 0 but 0.3 <= I(0.5,0) = 0.5
        assert MIN(0.3, 0.5) > 0.0 and 0.3 <= i(0.5, 0.0)

    def test_lukasiewicz(self):
        i = lukasiewicz()
        assert check_op(i).holds
        assert check_right_continuity(i).holds
        assert check_rp(i, LUKASIEWICZ).holds

    def test_report(self):
        rep = check_properties(kleene_dienes(), negation=STANDARD, aggregation=MIN)
        assert rep.holds("NP") and rep.holds("EP") and rep.holds("CP")
        assert not rep.holds("OP")
        assert {e.name for e in rep.failures()} >= {"OP"}
        assert rep.as_dict()["OP"]["witness"] == [0.5, 0.5]

    def test_lia_sides(self):
        lhs, rhs = lia_sides(kleene_dienes(), MIN, 0.3, 0.6, 0.1)
        assert lhs == pytest.approx(rhs)


# the statements below are checked on every pair of a small catalog

LIA_PAIRS = [
    (kleene_dienes(), MIN),
    (lukasiewicz(), LUKASIEWICZ),
    (implication("goedel"), MIN),
    (implication("reichenbach"), PRODUCT),
    (implication("goguen"), PRODUCT),
    (f_implication({"kind": "neg-log"}), PRODUCT),
]


@pytest.mark.parametrize("i,a", LIA_PAIRS, ids=lambda v: getattr(v, "kind", None) or v.family)
def test_lia_with_commutative_partner_gives_exchange(i, a):
    assert check_lia(i, a).holds
    assert check_ep(i).holds


@pytest.mark.parametrize("i,a", [(lukasiewicz(), LUKASIEWICZ),
                                 (implication("goedel"), MIN),
                                 (implication("goguen"), PRODUCT)],
                         ids=["lukasiewicz", "goedel", "goguen"])
def test_residuation_gives_lia(i, a):
    assert check_rp(i, a).holds
    assert check_lia(i, a).holds


@pytest.mark.parametrize("i,a", LIA_PAIRS, ids=lambda v: getattr(v, "kind", None) or v.family)
def test_conjugation_preserves_lia(i, a):
    ip = conjugate_implication(i, SQUARE)
    ap = conjugate(a, SQUARE)
    assert check_lia(ip, ap).holds


def test_conjugate_by_square_closed_form():
    ip = conjugate_implication(lukasiewicz(), SQUARE)
    x, y = mesh2(101)
    np.testing.assert_allclose(ip(x, y), np.sqrt(np.minimum(1, 1 - x * x + y * y)), atol=1e-12)


def test_lia_failure_reports_universal_witnesses():
    r = residual_implication(aggregation("threshold-mean"), strict=False)
    ent = check_lia(r, MIN)
    assert not ent.holds
    hits = [w for w in ent.extra_witnesses if abs(w[2] - 0.8) < 1e-12]
    assert hits and hits[0][3] == pytest.approx(0.6) and hits[0][4] == pytest.approx(0.5)


def test_lia_fails_for_mismatched_pair():
    ent = check_lia(lukasiewicz(), PRODUCT)
    assert not ent.holds
    lhs, rhs = lia_sides(lukasiewicz(), PRODUCT, *ent.witness)
    assert abs(lhs - rhs) == pytest.approx(ent.max_violation)


def test_triple_implication_forms_agree():
    # sup_x A(I(D(x),B), D'(x)) with a singleton D' equals I(D(x0), B)
    i, a = lukasiewicz(), LUKASIEWICZ
    d = np.array([0.9, 0.7, 0.9, 0.6, 0.8])
    b = np.array([0.2, 0.1, 0.3])
    dp = np.array([0.0, 1.0, 0.0, 0.0, 0.0])
    out = np.max(a(np.asarray(i(d[:, None], b[None, :])), dp[:, None]), axis=0)
    np.testing.assert_allclose(out, i(0.7, b), atol=1e-12)


@settings(max_examples=300, deadline=None)
@given(unit, unit, unit)
def test_reichenbach_product_lia_pointwise(x, y, z):
    lhs, rhs = lia_sides(implication("reichenbach"), PRODUCT, x, y, z)
    assert lhs == pytest.approx(rhs, abs=1e-12)


@settings(max_examples=300, deadline=None)
@given(unit, unit, unit)
def test_implication_monotonicity(x, y, d):
    for name in ("kleene-dienes", "lukasiewicz", "goguen", "reichenbach"):
        i = implication(name)
        x2 = min(1.0, x + d)
        assert i(x2, y) <= i(x, y) + 1e-12
        y2 = min(1.0, y + d)
        assert i(x, y2) >= i(x, y) - 1e-12


def test_3d_grid_has_41_points():
    x, _, _ = mesh3(41)
    assert x.shape == (41, 41, 41)


@pytest.mark.parametrize("t", [{"kind": "one-minus-power", "params": {"p": 2}},
                               {"kind": "neg-log"}, {"kind": "one-minus"}])
def test_generated_tnorm_residual_closed_form(t):
    a = aggregation("generated-tnorm", t=t)
    i = residual_implication(a)
    assert i.meta["analytic"]
    assert i(1.0, 0.0) == 0.0
    x, y = mesh2(21)
    # compare with a direct sup over a fine t grid
    ts = np.linspace(0, 1, 2001)
    sup = np.array([[ts[np.asarray(a(xv, ts)) <= yv + 1e-12].max() for xv, yv in zip(rx, ry)]
                    for rx, ry in zip(x, y)])
    np.testing.assert_allclose(i(x, y), sup, atol=1e-3)
    assert check_rp(i, a, 41, 1e-9).holds
