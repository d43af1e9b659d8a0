from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import instance, path_intermediates, rep_corpus, rigid, u
from deligne_simpson.arith import CycMatrix, UnitScalar
from deligne_simpson.errors import AdjacentLoopPair, LoopAtVertex, MismatchedQ, QIsOne
from deligne_simpson.instance import q_power
from deligne_simpson.quiver import Arrow, Quiver, reflect
from deligne_simpson.rep import (
    Rep,
    check_relations,
    direct_sum,
    ext_dim,
    find_isomorphism,
    hom_dim,
    inverse_middle_convolution,
    is_isomorphism,
    middle_convolution,
    reflect_q,
    reverse_arrow,
    round_trip,
    simple_at,
    swap_adjacent_order,
    zero_maps,
)

A1 = Quiver(("u", "v"), (Arrow("a", "v", "u"),))
HALF, TWO = u(0, F(1, 2)), u(0, 2)


def one_by_one(Q, values, qparam, dims=None):
    dims = dims or tuple(1 for _ in Q.vertices)
    maps = {d: CycMatrix.from_rows([[values[d]]]) for d in Q.order}
    return Rep(Q, dims, maps, tuple(qparam), 1)


def toy(q=(HALF, TWO)):
    return one_by_one(A1, {"a": 1, "a*": 1}, q)


def test_relation_examples():
    assert check_relations(toy())
    bad = check_relations(toy((UnitScalar.one(), TWO)))
    assert not bad and "u" in bad.failures
    Z = Rep(A1, (0, 0), zero_maps(A1, (0, 0), 1), (UnitScalar.one(), UnitScalar.one()), 1)
    assert check_relations(Z)


def test_convolution_of_toy():
    Y = middle_convolution(toy(), "v")
    assert Y.dims == (1, 0)
    assert Y.qparam == (UnitScalar.one(), HALF)
    assert check_relations(Y)


def test_convolution_errors():
    with pytest.raises(QIsOne):
        middle_convolution(toy((UnitScalar.one(), UnitScalar.one())), "v")
    L = Quiver(("0",), (Arrow("l", "0", "0"),))
    X = Rep(L, (0,), zero_maps(L, (0,), 1), (TWO,), 1)
    with pytest.raises(LoopAtVertex):
        middle_convolution(X, "0")


def test_empty_rep_convolves_to_empty():
    Z = Rep(A1, (0, 0), zero_maps(A1, (0, 0), 1), (HALF, TWO), 1)
    Y = middle_convolution(Z, "v")
    assert Y.dims == (0, 0) and check_relations(Y)


def test_reverse_arrow_toy():
    Y = reverse_arrow(toy(), "a")
    assert Y.maps["a"] == CycMatrix.from_rows([[1]])
    assert Y.maps["a*"] == CycMatrix.from_rows([[F(-1, 2)]])
    assert Y.quiver.head("a") == "u"
    assert check_relations(Y)
    assert reverse_arrow(Y, "a", inverse=True) == toy()
    assert find_isomorphism(toy(), reverse_arrow(Y, "a")) is not None


def test_swap_on_star_with_unit_maps():
    Q = Quiver(("0", "1", "2"), (Arrow("a", "0", "1"), Arrow("b", "0", "2")))
    # g_a = g_b = 2 at the centre, 1/2 at each leaf
    X = one_by_one(Q, {"a": 1, "a*": 1, "b": 1, "b*": 1}, (u(0, 4), HALF, HALF))
    assert check_relations(X)
    Y = swap_adjacent_order(X, "a", "b")
    assert Y.quiver.order[:2] == ("b", "a")
    assert check_relations(Y)
    assert swap_adjacent_order(Y, "a", "b", inverse=True) == X
    # heads differ: only the order changes
    Z = swap_adjacent_order(X, "b", "a*")
    assert Z.maps == X.maps and check_relations(Z)


def test_swap_rejects_loop_pairs_and_non_adjacent():
    L = Quiver(("0",), (Arrow("l", "0", "0"),), ("l", "l*"))
    X = Rep(L, (0,), zero_maps(L, (0,), 1), (UnitScalar.one(),), 1)
    with pytest.raises(AdjacentLoopPair):
        swap_adjacent_order(X, "l", "l*")
    with pytest.raises(ValueError):
        swap_adjacent_order(toy(), "a*", "a")


def test_reflect_q_properties():
    inst = instance("d4")
    Q, q = inst.quiver, inst.qparam
    for v in Q.vertices:
        assert reflect_q(Q, reflect_q(Q, q, v), v) == q
        assert q_power(reflect_q(Q, q, v), Q.unit(v)) == q[Q.index(v)].inverse()
    ones = tuple(UnitScalar.one() for _ in Q.vertices)
    assert reflect_q(Q, ones, "0") == ones


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=4, max_size=4))
def test_duality_on_d4(beta):
    inst = instance("d4")
    Q, q = inst.quiver, inst.qparam
    assert q_power(reflect_q(Q, q, "0"), beta) == q_power(q, reflect(Q, "0", beta))


def test_convolution_dims_and_relations_on_corpus():
    for tag, X in rep_corpus():
        for v in X.quiver.vertices:
            if X.q(v).is_one or not X.quiver.is_loopfree(v):
                continue
            Y = middle_convolution(X, v)
            assert Y.dims == reflect(X.quiver, v, X.dims), tag
            assert Y.qparam == reflect_q(X.quiver, X.qparam, v)
            assert check_relations(Y), tag


def test_inverse_convolution_round_trip_on_d4():
    X = rigid("d4").rep
    Y = middle_convolution(X, "0")
    Z = inverse_middle_convolution(Y, "0")
    assert Z.dims == X.dims and Z.qparam == X.qparam
    assert find_isomorphism(X, Z) is not None


def test_round_trip_returns_explicit_isomorphism():
    X = toy()
    for v in ("u", "v"):
        Z, theta = round_trip(X, v)
        assert is_isomorphism(theta, X, Z)


def test_alternative_reorientation_order_is_isomorphic():
    # flip two legs so the centre has two out-going arrows to reorient
    X = reverse_arrow(reverse_arrow(rigid("hyper3").rep, "a[1,1]"), "a[3,1]")
    outs = [a.id for a in X.quiver.arrows if a.tail == "0"]
    assert len(outs) == 2
    A = middle_convolution(X, "0", reorient_order=outs)
    B = middle_convolution(X, "0", reorient_order=outs[::-1])
    assert check_relations(A) and check_relations(B)
    assert find_isomorphism(A, B) is not None


def test_hom_and_ext():
    X = rigid("d4").rep
    assert hom_dim(X, X) == 1
    assert ext_dim(X, X) == 0
    Z = Rep(X.quiver, (0, 0, 0, 0), zero_maps(X.quiver, (0, 0, 0, 0), 4), X.qparam, 4)
    assert hom_dim(X, Z) == 0
    S = direct_sum(X, X)
    assert hom_dim(S, S) == 4
    assert ext_dim(X, S) == ext_dim(S, X) == 0
    with pytest.raises(MismatchedQ):
        hom_dim(X, path_intermediates("d4")[0])


def test_determinant_obstruction_on_corpus():
    for tag, X in rep_corpus():
        assert q_power(X.qparam, X.dims).is_one, tag


def test_simple_at_and_json_round_trip():
    inst = instance("d4")
    X = rigid("d4").rep
    assert Rep.from_json(X.to_json()) == X
    S = simple_at(inst.quiver, "[3,1]", rigid("d4").path.terminal_q, 4)
    assert S.dims == (0, 0, 0, 1) and check_relations(S)


def test_transports_preserve_hom_dims():
    X = rigid("d4").rep
    S = direct_sum(X, X)
    for aid in ("a[1,1]", "a[3,1]"):
        X2, S2 = reverse_arrow(X, aid), reverse_arrow(S, aid)
        assert hom_dim(X2, S2) == hom_dim(X, S) == 2
    X3 = swap_adjacent_order(X, "a[1,1]", "a[2,1]")
    S3 = swap_adjacent_order(S, "a[1,1]", "a[2,1]")
    assert hom_dim(S3, X3) == hom_dim(S, X)
