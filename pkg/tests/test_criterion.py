from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import INV, ROT, D, instance, u
from deligne_simpson.arith import UnitScalar
from deligne_simpson.criterion import (
    Setting,
    Status,
    decide,
    enumerate_q_null_roots,
    max_decomposition,
    rigid_exists,
)
from deligne_simpson.errors import BudgetExceeded
from deligne_simpson.instance import build_instance, q_power, star_quiver
from deligne_simpson.quiver import Arrow, Quiver, RootKind, is_positive_root, p_value, reflect
from deligne_simpson.rep import reflect_q
from oracles import best_multiset

ONE = UnitScalar.one()
A1 = Quiver(("u", "v"), (Arrow("a", "v", "u"),))


def test_a1_toy_catalog_and_decomposition():
    s = Setting(A1, (1, 1), (ONE, ONE))
    cat = enumerate_q_null_roots(s)
    assert [r.beta for r in cat.q_null()] == [(0, 1), (1, 0), (1, 1)]
    dec = max_decomposition(s, cat)
    assert dec.value == 0 and set(dec.parts) == {(1, 0), (0, 1)}
    assert not rigid_exists(s)


def test_coordinate_vector_cases():
    s = Setting(A1, (1, 0), (ONE, u(F(1, 3))))
    cat = enumerate_q_null_roots(s)
    assert [(r.beta, r.q_null) for r in cat.roots] == [((1, 0), True)]
    assert max_decomposition(s, cat) is None
    assert rigid_exists(s)


def test_d4_catalog_has_no_proper_q_null_roots():
    inst = instance("d4")
    cat = enumerate_q_null_roots(inst)
    assert [r.beta for r in cat.q_null()] == [inst.alpha]
    assert max_decomposition(inst, cat) is None


@pytest.mark.parametrize(
    "name, status",
    [
        ("d4", Status.EXISTS_RIGID),
        ("three_involutions", Status.NO_SOLUTION_DET),
        ("four_involutions", Status.EXISTS_NONRIGID),
        ("scalars", Status.EXISTS_RIGID),
        ("single_jordan", Status.CRITERION_FAILS),
        ("hyper3", Status.EXISTS_RIGID),
        ("rational3", Status.EXISTS_RIGID),
        ("jordan12", Status.EXISTS_RIGID),
    ],
)
def test_decide_examples(name, status):
    assert decide(instance(name)).status is status


def test_verdict_json():
    inst = instance("three_involutions")
    v = decide(inst).to_json(inst.quiver)
    assert v["status"] == "no_solution_det"
    assert v["q_alpha"] == {"mag": "1/1", "phase": "1/2"}
    assert v["dims_info"] == {"g": 6, "g_plus_2p": 6}
    inst = instance("single_jordan")
    v = decide(inst).to_json(inst.quiver)
    # (2,1) is not a root of the two-vertex quiver
    assert "conjecturally" in v["note"]
    assert v["witness"] is None and v["root_kind"] == "not_a_root"
    s = Setting(A1, (1, 1), (ONE, ONE))
    v = decide(s).to_json(A1)
    assert v["status"] == "criterion_fails"
    assert v["witness"] == {"value": 0, "parts": [{"u": 1, "v": 0}, {"u": 0, "v": 1}]}


def test_budget_is_enforced():
    with pytest.raises(BudgetExceeded) as err:
        decide(instance("hyper3"), budget=10)
    assert err.value.states == 4 * 3 * 2 * 3 * 2 * 2


def test_parallel_enumeration_matches_serial():
    inst = instance("hyper3")
    assert enumerate_q_null_roots(inst, workers=2) == enumerate_q_null_roots(inst)


def test_catalog_is_exactly_the_roots_in_the_box():
    inst = instance("hyper3")
    Q = inst.quiver
    cat = {r.beta: r for r in enumerate_q_null_roots(inst).roots}
    for beta in product(*(range(a + 1) for a in inst.alpha)):
        if not any(beta):
            continue
        kind = is_positive_root(Q, beta)
        if kind is RootKind.NOT_A_ROOT:
            assert beta not in cat
        else:
            r = cat[beta]
            assert r.kind is kind and r.p == p_value(Q, beta)
            assert r.q_null == q_power(inst.qparam, beta).is_one


def test_permuting_classes_keeps_verdict():
    a = build_instance(2, [INV, ROT, INV])
    b = build_instance(2, [ROT, INV, INV])
    assert decide(a).status is decide(b).status is Status.EXISTS_RIGID


def test_identity_class_changes_nothing():
    base = instance("d4")
    extra = build_instance(2, [INV, INV, ROT, D([u(0), u(0)])])
    assert extra.alpha == base.alpha and extra.qparam == base.qparam
    assert decide(extra).status is decide(base).status


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_dp_agrees_with_multiset_enumeration(data):
    w = data.draw(st.lists(st.integers(1, 3), min_size=1, max_size=3))
    Q = star_quiver(w)
    alpha = tuple(data.draw(st.integers(0, 2)) for _ in Q.vertices)
    phases = st.sampled_from([F(0), F(0), F(1, 2), F(1, 3), F(2, 3)])
    q = tuple(u(data.draw(phases)) for _ in Q.vertices)
    s = Setting(Q, alpha, q)
    cat = enumerate_q_null_roots(s)
    dec = max_decomposition(s, cat)
    parts = [(r.beta, r.p) for r in cat.q_null()]
    expected = best_multiset(alpha, parts) if any(alpha) else None
    if expected is None:
        assert dec is None
    else:
        assert dec.value == expected
        assert len(dec.parts) >= 2
        assert tuple(map(sum, zip(*dec.parts))) == alpha
        assert sum(p_value(Q, b) for b in dec.parts) == dec.value


def test_catalog_transports_through_reflection():
    inst = instance("hyper3")
    Q = inst.quiver
    for v in Q.vertices:
        if inst.q(v).is_one:
            continue
        q2 = reflect_q(Q, inst.qparam, v)
        for r in enumerate_q_null_roots(inst).roots:
            assert q_power(q2, reflect(Q, v, r.beta)).is_one == r.q_null
