"""Representations of multiplicative preprojective algebras.

A :class:`Rep` assigns a matrix ``X_a`` of shape ``dims[h(a)] x dims[t(a)]`` to
every arrow of the doubled quiver.  It is a module over the algebra with
parameter ``q`` when every ``g_a = 1 + X_a X_{a*}`` is invertible and, at each
vertex, the ordered product of the ``g_a ** eps(a)`` over arrows with head
there equals ``q_v``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .arith import CycMatrix, CycScalar, UnitScalar, embed, kernel_matrix, mat_inverse, mat_rank, mat_solve
from .arith.matrix import is_invertible
from .errors import (
    AdjacentLoopPair,
    LoopAtVertex,
    MismatchedQ,
    QIsOne,
    SchemaError,
    ShapeMismatch,
    SingularMatrix,
)
from .quiver import DimVector, Quiver, arrow_id, bilinear, is_starred, reflect, star


@dataclass(frozen=True, eq=False)
class Rep:
    quiver: Quiver
    dims: DimVector
    maps: Mapping[str, CycMatrix]
    qparam: tuple[UnitScalar, ...]
    conductor: int

    def __post_init__(self):
        Q = self.quiver
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "qparam", tuple(self.qparam))
        object.__setattr__(self, "maps", dict(self.maps))
        if len(self.dims) != Q.size or len(self.qparam) != Q.size:
            raise ShapeMismatch("dims and qparam must have one entry per vertex")
        if set(self.maps) != set(Q.order):
            raise ShapeMismatch("maps must cover exactly the doubled arrows")
        for d, M in self.maps.items():
            want = (self.dim(Q.head(d)), self.dim(Q.tail(d)))
            if M.shape != want:
                raise ShapeMismatch(f"map {d} has shape {M.shape}, expected {want}")
            if M.conductor != self.conductor:
                raise ShapeMismatch(f"map {d} has conductor {M.conductor}, expected {self.conductor}")

    def dim(self, v: str) -> int:
        return self.dims[self.quiver.index(v)]

    def q(self, v: str) -> UnitScalar:
        return self.qparam[self.quiver.index(v)]

    def g(self, label: str) -> CycMatrix:
        """``1 + X_a X_{a*}`` on the head of ``a``."""
        M = self.maps[label] @ self.maps[star(label)]
        return CycMatrix.identity(M.rows, self.conductor) + M

    def replace(self, **kw) -> Rep:
        fields = dict(
            quiver=self.quiver, dims=self.dims, maps=self.maps, qparam=self.qparam, conductor=self.conductor
        )
        fields.update(kw)
        return Rep(**fields)

    def __eq__(self, other):
        if not isinstance(other, Rep):
            return NotImplemented
        return (
            self.quiver == other.quiver
            and self.dims == other.dims
            and self.qparam == other.qparam
            and self.conductor == other.conductor
            and dict(self.maps) == dict(other.maps)
        )

    __hash__ = None

    def to_json(self) -> dict:
        Q = self.quiver
        return {
            "quiver": Q.to_json(),
            "dims": Q.vector_json(self.dims),
            "qparam": {v: qv.to_json() for v, qv in zip(Q.vertices, self.qparam)},
            "conductor": self.conductor,
            "maps": {d: self.maps[d].to_json() for d in Q.order},
        }

    @classmethod
    def from_json(cls, obj) -> Rep:
        try:
            Q = Quiver.from_json(obj["quiver"])
            dims = Q.vector(obj["dims"])
            qparam = tuple(UnitScalar.from_json(obj["qparam"][v]) for v in Q.vertices)
            maps = {d: CycMatrix.from_json(obj["maps"][d]) for d in Q.order}
            return cls(Q, dims, maps, qparam, int(obj["conductor"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError("rep", f"malformed representation: {exc}") from exc


def zero_maps(Q: Quiver, dims: Sequence[int], conductor: int) -> dict[str, CycMatrix]:
    return {
        d: CycMatrix.zeros(dims[Q.index(Q.head(d))], dims[Q.index(Q.tail(d))], conductor)
        for d in Q.order
    }


def simple_at(Q: Quiver, v: str, qparam: Sequence[UnitScalar], conductor: int) -> Rep:
    """The one-dimensional representation supported at ``v``; needs ``q_v = 1`` to be valid."""
    dims = Q.unit(v)
    return Rep(Q, dims, zero_maps(Q, dims, conductor), tuple(qparam), conductor)


def direct_sum(X: Rep, Y: Rep) -> Rep:
    if X.quiver != Y.quiver or X.qparam != Y.qparam or X.conductor != Y.conductor:
        raise MismatchedQ("direct sum needs a common quiver, parameter and conductor")
    maps = {d: CycMatrix.block_diag([X.maps[d], Y.maps[d]], X.conductor) for d in X.quiver.order}
    dims = tuple(a + b for a, b in zip(X.dims, Y.dims))
    return X.replace(dims=dims, maps=maps)


# -- relations ----------------------------------------------------------------------


@dataclass
class RelationCheck:
    ok: bool
    failures: dict[str, str] = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def vertex_product(X: Rep, v: str) -> CycMatrix:
    """Ordered product of ``g_a ** eps(a)`` over arrows with head ``v``."""
    Q = X.quiver
    P = CycMatrix.identity(X.dim(v), X.conductor)
    for d in Q.into(v):
        g = X.g(d)
        P = P @ (g if Q.eps(d) > 0 else mat_inverse(g))
    return P


def check_relations(X: Rep) -> RelationCheck:
    Q = X.quiver
    failures = {}
    for d in Q.order:
        if not is_invertible(X.g(d)):
            failures[Q.head(d)] = f"1 + X_{d} X_{star(d)} is singular"
    for v in Q.vertices:
        if v in failures:
            continue
        target = CycMatrix.scalar(X.dim(v), embed(X.q(v), X.conductor))
        if vertex_product(X, v) != target:
            failures[v] = f"ordered product differs from q_{v} = {X.q(v)}"
    return RelationCheck(not failures, failures)


# -- parameters ---------------------------------------------------------------------


def reflect_q(Q: Quiver, q: Sequence[UnitScalar], v: str) -> tuple[UnitScalar, ...]:
    """``u_v(q)_w = q_v ** -(e_v, e_w) * q_w``."""
    if not Q.is_loopfree(v):
        raise LoopAtVertex(f"vertex {v} carries a loop")
    i = Q.index(v)
    row = Q.cartan[i]
    return tuple(q[i] ** (-row[j]) * q[j] for j in range(Q.size))


# -- orientation and order ----------------------------------------------------------


def reverse_arrow(X: Rep, aid: str, inverse: bool = False) -> Rep:
    """Transport ``X`` to the quiver with arrow ``aid`` reversed (id is reused).

    Forward: ``X'_b = X_{a*}``, ``X'_{b*} = -(1 + X_a X_{a*})^-1 X_a``.
    ``inverse=True`` applies the exact inverse transform
    ``X_a = -X'_{b*} (1 + X'_b X'_{b*})^-1``, ``X_{a*} = X'_b``.
    """
    A, B = X.maps[aid], X.maps[aid + "*"]
    I = CycMatrix.identity(A.rows, X.conductor)
    if not inverse:
        new_a, new_astar = B, -(mat_inverse(I + A @ B) @ A)
    else:
        # here A = X'_b and B = X'_{b*} under the reused id
        new_a, new_astar = -(B @ mat_inverse(I + A @ B)), A
    maps = dict(X.maps)
    maps[aid], maps[aid + "*"] = new_a, new_astar
    return X.replace(quiver=X.quiver.with_reversed(aid), maps=maps)


def swap_adjacent_order(X: Rep, a1: str, a2: str, inverse: bool = False) -> Rep:
    """Transport ``X`` across a transposition of adjacent doubled arrows.

    Forward: ``a1`` immediately precedes ``a2``; afterwards ``a2`` precedes
    ``a1`` and ``X_{a1}``, ``X_{a1*}`` are conjugated by ``g_{a2} ** eps(a2)``
    so every vertex product is unchanged.  ``inverse=True`` undoes exactly this:
    ``a2`` must immediately precede ``a1`` and the result has ``a1`` first.
    """
    Q = X.quiver
    order = list(Q.order)
    first, second = (a2, a1) if inverse else (a1, a2)
    k = order.index(first)
    if k + 1 >= len(order) or order[k + 1] != second:
        raise ValueError(f"{first} does not immediately precede {second}")
    if a1 == star(a2) and Q.head(a1) == Q.tail(a1):
        raise AdjacentLoopPair(f"{a1} and {a2} are a loop and its reverse; reverse the loop instead")
    order[k], order[k + 1] = second, first
    newQ = Q.with_order(order)
    if Q.head(a1) != Q.head(a2):
        return X.replace(quiver=newQ)
    g2 = X.g(a2)
    e2 = Q.eps(a2) * (-1 if inverse else 1)
    left = g2 ** (-e2)
    right = g2 ** e2
    maps = dict(X.maps)
    maps[a1] = left @ X.maps[a1]
    maps[star(a1)] = X.maps[star(a1)] @ right
    return X.replace(quiver=newQ, maps=maps)


# -- middle convolution -------------------------------------------------------------


@dataclass(frozen=True)
class ConvolutionStep:
    vertex: str
    q_before: tuple[UnitScalar, ...]
    q_after: tuple[UnitScalar, ...]
    dims_before: DimVector
    dims_after: DimVector
    reversed_arrows: tuple[str, ...]

    def format(self, Q: Quiver) -> str:
        def vec(x):
            return "(" + ",".join(str(a) for a in x) + ")"

        def qs(x):
            return "(" + ", ".join(str(a) for a in x) + ")"

        rev = ",".join(self.reversed_arrows) or "-"
        return (
            f"convolve vertex={self.vertex} dims {vec(self.dims_before)} -> {vec(self.dims_after)} "
            f"q {qs(self.q_before)} -> {qs(self.q_after)} reoriented={rev}"
        )


def _arrows_out_of(Q: Quiver, v: str, reorient_order: Sequence[str] | None) -> list[str]:
    out = [a.id for a in Q.arrows if a.tail == v and a.head != v]
    if reorient_order is None:
        out.sort(key=Q.position)
    else:
        rank = {a: k for k, a in enumerate(reorient_order)}
        out.sort(key=lambda a: rank.get(a, len(rank)))
    return out


def _reorient(X: Rep, arrows: Sequence[str]) -> Rep:
    for a in arrows:
        X = reverse_arrow(X, a)
    return X


def _restore(X: Rep, arrows: Sequence[str]) -> Rep:
    for a in reversed(arrows):
        X = reverse_arrow(X, a, inverse=True)
    return X


def _convolve_sink(X: Rep, v: str) -> tuple[Rep, CycMatrix, CycMatrix]:
    """Middle convolution when every arrow at ``v`` has head ``v``.

    Returns the new representation, the inclusion of the new space at ``v``
    into the sum of neighbouring spaces, and the old map ``iota`` into it.
    """
    Q, N = X.quiver, X.conductor
    incoming = Q.into(v)
    assert not any(is_starred(d) for d in incoming)
    qv = embed(X.q(v), N)
    one = CycScalar.one(N)
    dv = X.dim(v)
    A = [X.maps[a] for a in incoming]
    B = [X.maps[star(a)] for a in incoming]
    sizes = [M.cols for M in A]
    D = sum(sizes)

    ell = [CycMatrix.identity(dv, N)]
    for a in incoming:
        ell.append(ell[-1] @ X.g(a))
    pi = CycMatrix.hstack([ell[i] @ A[i] for i in range(len(A))], dv, N) * (one / (qv - 1))
    iota = CycMatrix.vstack(B, dv, N)
    K = kernel_matrix(pi)
    if K.cols != D - dv:
        raise SingularMatrix("projection is not surjective; input violates the relations")

    offsets = [sum(sizes[:i]) for i in range(len(sizes))]
    inv_q = one / qv
    maps = dict(X.maps)
    for i, a in enumerate(incoming):
        blocks = []
        for j in range(len(incoming)):
            blk = B[j] @ A[i]
            if j >= i:
                blk = blk * inv_q
            if j == i:
                blk = blk + CycMatrix.identity(sizes[i], N) * ((one - qv) * inv_q)
            blocks.append(blk)
        phi = CycMatrix.vstack(blocks, sizes[i], N)
        maps[star(a)] = K.row_block(offsets[i], offsets[i] + sizes[i])
        maps[a] = mat_solve(K, phi)
    dims = list(X.dims)
    dims[Q.index(v)] = D - dv
    new = X.replace(dims=tuple(dims), maps=maps, qparam=reflect_q(Q, X.qparam, v))
    return new, K, iota


def _check_vertex(X: Rep, v: str):
    if not X.quiver.is_loopfree(v):
        raise LoopAtVertex(f"vertex {v} carries a loop")
    if X.q(v).is_one:
        raise QIsOne(f"q_{v} = 1; middle convolution needs q_v != 1")


def middle_convolution(
    X: Rep, v: str, reorient_order: Sequence[str] | None = None, trace: list | None = None
) -> Rep:
    """Middle convolution at the loopfree vertex ``v`` (requires ``q_v != 1``).

    Arrows with tail at ``v`` are reversed first (in the double's order unless
    ``reorient_order`` says otherwise) and restored afterwards, so the result
    lives on the same quiver with parameter ``u_v(q)`` and dimension
    ``s_v(dims)``.
    """
    _check_vertex(X, v)
    flips = _arrows_out_of(X.quiver, v, reorient_order)
    Y, _, _ = _convolve_sink(_reorient(X, flips), v)
    out = _restore(Y, flips)
    if trace is not None:
        trace.append(ConvolutionStep(v, X.qparam, out.qparam, X.dims, out.dims, tuple(flips)))
    return out


def inverse_middle_convolution(X: Rep, v: str, reorient_order: Sequence[str] | None = None) -> Rep:
    """Inverse of :func:`middle_convolution`: the same construction with the new parameter."""
    return middle_convolution(X, v, reorient_order)


def round_trip(X: Rep, v: str) -> tuple[Rep, dict[str, CycMatrix]]:
    """Convolve twice at ``v`` and return the result with an explicit isomorphism from ``X``.

    The isomorphism is the identity away from ``v``; at ``v`` it expresses the
    old map ``iota`` in the basis of the doubly-convolved space.
    """
    _check_vertex(X, v)
    flips = _arrows_out_of(X.quiver, v, None)
    Y = _reorient(X, flips)
    Y1, _, iota = _convolve_sink(Y, v)
    Y2, K2, _ = _convolve_sink(Y1, v)
    theta_v = mat_solve(K2, iota)
    theta = {w: CycMatrix.identity(X.dim(w), X.conductor) for w in X.quiver.vertices}
    theta[v] = theta_v
    return _restore(Y2, flips), theta


# -- Hom and Ext --------------------------------------------------------------------


def _hom_system(X: Rep, Y: Rep):
    Q = X.quiver
    N = X.conductor
    offsets, nvars = {}, 0
    for v in Q.vertices:
        offsets[v] = nvars
        nvars += Y.dim(v) * X.dim(v)
    zero = CycScalar.zero(N)
    rows = []
    for d in Q.order:
        h, t = Q.head(d), Q.tail(d)
        Xd, Yd = X.maps[d], Y.maps[d]
        dXh, dXt, dYh, dYt = X.dim(h), X.dim(t), Y.dim(h), Y.dim(t)
        for r in range(dYh):
            for c in range(dXt):
                row: dict[int, CycScalar] = {}
                for s in range(dXh):
                    x = Xd[s, c]
                    if not x.is_zero():
                        k = offsets[h] + r * dXh + s
                        row[k] = row.get(k, zero) + x
                for s in range(dYt):
                    y = Yd[r, s]
                    if not y.is_zero():
                        k = offsets[t] + s * dXt + c
                        row[k] = row.get(k, zero) - y
                if any(not x.is_zero() for x in row.values()):
                    rows.append([row.get(k, zero) for k in range(nvars)])
    M = CycMatrix(len(rows), nvars, rows, N) if rows else CycMatrix.zeros(0, nvars, N)
    return M, offsets, nvars


def _same_algebra(X: Rep, Y: Rep):
    if X.quiver != Y.quiver or X.conductor != Y.conductor:
        raise MismatchedQ("representations live on different quivers or fields")
    if X.qparam != Y.qparam:
        raise MismatchedQ("representations have different parameters q")


def hom_space(X: Rep, Y: Rep) -> list[dict[str, CycMatrix]]:
    """Basis of the intertwiners ``theta`` with ``theta_h X_a = Y_a theta_t``."""
    _same_algebra(X, Y)
    M, offsets, nvars = _hom_system(X, Y)
    Kmat = kernel_matrix(M)
    basis = []
    for col in range(Kmat.cols):
        theta = {}
        for v in X.quiver.vertices:
            r, c = Y.dim(v), X.dim(v)
            o = offsets[v]
            theta[v] = CycMatrix(r, c, [[Kmat[o + i * c + j, col] for j in range(c)] for i in range(r)], X.conductor)
        basis.append(theta)
    return basis


def hom_dim(X: Rep, Y: Rep) -> int:
    _same_algebra(X, Y)
    M, _, nvars = _hom_system(X, Y)
    return nvars - mat_rank(M)


def ext_dim(X: Rep, Y: Rep) -> int:
    """``dim Ext^1(X, Y) = dim Hom(X, Y) + dim Hom(Y, X) - (dim X, dim Y)``."""
    return hom_dim(X, Y) + hom_dim(Y, X) - bilinear(X.quiver, X.dims, Y.dims)


def is_intertwiner(theta: Mapping[str, CycMatrix], X: Rep, Y: Rep) -> bool:
    Q = X.quiver
    return all(theta[Q.head(d)] @ X.maps[d] == Y.maps[d] @ theta[Q.tail(d)] for d in Q.order)


def is_isomorphism(theta: Mapping[str, CycMatrix], X: Rep, Y: Rep) -> bool:
    return is_intertwiner(theta, X, Y) and all(is_invertible(theta[v]) for v in X.quiver.vertices)


def find_isomorphism(X: Rep, Y: Rep, seed: int = 0, tries: int = 25) -> dict[str, CycMatrix] | None:
    """An invertible intertwiner ``X -> Y``, or ``None`` if none was found.

    Random integer combinations of a Hom basis are tried; for isomorphic
    representations a generic combination is invertible.
    """
    _same_algebra(X, Y)
    if X.dims != Y.dims:
        return None
    basis = hom_space(X, Y)
    if not basis:
        return None
    vertices = X.quiver.vertices
    rng = random.Random(seed)
    for attempt in range(tries):
        if attempt == 0:
            coeffs = [1] + [0] * (len(basis) - 1)
        else:
            coeffs = [rng.randint(-9, 9) for _ in basis]
        theta = {}
        for v in vertices:
            acc = CycMatrix.zeros(Y.dim(v), X.dim(v), X.conductor)
            for c, b in zip(coeffs, basis):
                if c:
                    acc = acc + b[v] * c
            theta[v] = acc
        if all(is_invertible(theta[v]) for v in vertices):
            return theta
    return None
