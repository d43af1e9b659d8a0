from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from deligne_simpson.errors import LoopAtVertex, SchemaError
from deligne_simpson.quiver import (
    Arrow,
    Quiver,
    RootKind,
    bilinear,
    in_fundamental_region,
    is_positive_root,
    p_value,
    reflect,
    support_connected,
    tits_form,
)
from oracles import orbit_roots


def make(n, edges, loops=()):
    vs = tuple(str(i) for i in range(n))
    arrows = [Arrow(f"e{k}", str(h), str(t)) for k, (h, t) in enumerate(edges)]
    arrows += [Arrow(f"l{k}", str(v), str(v)) for k, v in enumerate(loops)]
    return Quiver(vs, tuple(arrows))


STAR = make(4, [(0, 1), (0, 2), (0, 3)])
PATH = make(4, [(1, 0), (2, 1), (3, 2)])
CYCLE = make(4, [(1, 0), (2, 1), (3, 2), (0, 3)])
JORDAN = make(1, [], loops=[0])


def test_tits_form_examples():
    assert tits_form(STAR, (2, 1, 1, 1)) == 1
    assert p_value(STAR, (2, 1, 1, 1)) == 0
    assert p_value(make(5, [(0, 1), (0, 2), (0, 3), (0, 4)]), (2, 1, 1, 1, 1)) == 1
    assert p_value(CYCLE, (1, 1, 1, 1)) == 1
    assert p_value(JORDAN, (3,)) == 1


def test_default_order_and_lookup():
    assert STAR.order == ("e0", "e1", "e2", "e0*", "e1*", "e2*")
    assert STAR.head("e0*") == "1" and STAR.tail("e0*") == "0"
    assert STAR.into("0") == ["e0", "e1", "e2"]
    assert STAR.eps("e0") == 1 and STAR.eps("e0*") == -1


def test_quiver_validation():
    with pytest.raises(ValueError):
        Quiver(("0",), (Arrow("a", "0", "1"),))
    with pytest.raises(ValueError):
        Quiver(("0", "1"), (Arrow("a", "0", "1"),), ("a",))


def test_quiver_json_round_trip():
    Q = CYCLE.with_order(tuple(reversed(CYCLE.order)))
    assert Quiver.from_json(Q.to_json()) == Q
    with pytest.raises(SchemaError):
        Quiver.from_json({"vertices": ["0"]})


def test_reflection_refuses_loops():
    with pytest.raises(LoopAtVertex):
        reflect(JORDAN, "0", (1,))


vectors = st.lists(st.integers(-5, 5), min_size=4, max_size=4).map(tuple)
quivers = st.sampled_from([STAR, PATH, CYCLE])


@given(quivers, vectors, vectors, st.integers(0, 3))
def test_reflection_is_an_isometric_involution(Q, a, b, i):
    v = Q.vertices[i]
    sa, sb = reflect(Q, v, a), reflect(Q, v, b)
    assert reflect(Q, v, sa) == a
    assert bilinear(Q, sa, sb) == bilinear(Q, a, b)
    assert tits_form(Q, sa) == tits_form(Q, a)
    assert 2 * tits_form(Q, a) == bilinear(Q, a, a)


def test_support_and_fundamental_region():
    assert support_connected(PATH, (1, 1, 0, 0))
    assert not support_connected(PATH, (1, 0, 1, 0))
    assert in_fundamental_region(CYCLE, (1, 1, 1, 1))
    assert in_fundamental_region(STAR, (2, 1, 1, 1)) is False
    assert in_fundamental_region(make(5, [(0, 1), (0, 2), (0, 3), (0, 4)]), (2, 1, 1, 1, 1))


@pytest.mark.parametrize(
    "Q, beta, kind",
    [
        (STAR, (2, 1, 1, 1), RootKind.REAL),
        (STAR, (1, 1, 1, 1), RootKind.REAL),
        (STAR, (2, 2, 1, 1), RootKind.NOT_A_ROOT),
        (PATH, (1, 1, 1, 1), RootKind.REAL),
        (PATH, (1, 0, 1, 0), RootKind.NOT_A_ROOT),
        (CYCLE, (1, 1, 1, 1), RootKind.IMAGINARY),
        (CYCLE, (2, 2, 2, 2), RootKind.IMAGINARY),
        (JORDAN, (1,), RootKind.IMAGINARY),
        (JORDAN, (4,), RootKind.IMAGINARY),
        (make(2, [(0, 1)]), (1, 1), RootKind.REAL),
    ],
)
def test_root_examples(Q, beta, kind):
    assert is_positive_root(Q, beta) is kind


def test_roots_agree_with_orbit_oracle_on_small_quiver_with_loop():
    # vertex 1 has a loop, so only vertex 0 may be reflected
    Q = make(2, [(0, 1)], loops=[1])
    box = (3, 3)
    real, imaginary = orbit_roots(2, [(0, 1)], {1: 1}, box)
    for beta in product(*(range(b + 1) for b in box)):
        if not any(beta):
            continue
        expected = RootKind.REAL if beta in real else RootKind.IMAGINARY if beta in imaginary else RootKind.NOT_A_ROOT
        assert is_positive_root(Q, beta) is expected, beta


def test_reduction_trace_records_vertices():
    trace = []
    is_positive_root(STAR, (2, 1, 1, 1), trace)
    assert trace[0] == "0"
