"""Quivers, the Tits form, Weyl reflections and positive-root recognition.

Dimension vectors are plain integer tuples indexed by ``Quiver.vertices``.
Doubled arrows are string labels: an arrow id ``a`` and its reverse ``a*``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import LoopAtVertex, SchemaError

DimVector = tuple[int, ...]


def star(label: str) -> str:
    """The reverse of a doubled arrow: ``a <-> a*``."""
    return label[:-1] if label.endswith("*") else label + "*"


def is_starred(label: str) -> bool:
    return label.endswith("*")


def arrow_id(label: str) -> str:
    return label[:-1] if label.endswith("*") else label


@dataclass(frozen=True)
class Arrow:
    id: str
    head: str
    tail: str


@dataclass(frozen=True)
class Quiver:
    """Finite quiver with a total order on the arrows of its double.

    ``order`` lists every doubled-arrow label exactly once; when omitted the
    arrows come first in declaration order, followed by their reverses.
    """

    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    order: tuple[str, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex labels")
        vs = set(self.vertices)
        ids = [a.id for a in self.arrows]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate arrow ids")
        for a in self.arrows:
            if a.id.endswith("*"):
                raise ValueError(f"arrow id {a.id!r} may not end with '*'")
            if a.head not in vs or a.tail not in vs:
                raise ValueError(f"arrow {a.id} references an unknown vertex")
        if not self.order:
            order = tuple(ids) + tuple(i + "*" for i in ids)
        else:
            order = tuple(self.order)
            expected = set(ids) | {i + "*" for i in ids}
            if len(order) != len(expected) or set(order) != expected:
                raise ValueError("order must list every doubled arrow exactly once")
        object.__setattr__(self, "order", order)

    # -- lookup ---------------------------------------------------------------------
    @cached_property
    def _index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def _arrow(self) -> dict[str, Arrow]:
        return {a.id: a for a in self.arrows}

    def index(self, v: str) -> int:
        return self._index[v]

    def arrow(self, aid: str) -> Arrow:
        return self._arrow[aid]

    def head(self, label: str) -> str:
        a = self._arrow[arrow_id(label)]
        return a.tail if is_starred(label) else a.head

    def tail(self, label: str) -> str:
        a = self._arrow[arrow_id(label)]
        return a.head if is_starred(label) else a.tail

    @staticmethod
    def eps(label: str) -> int:
        return -1 if is_starred(label) else 1

    def into(self, v: str) -> list[str]:
        """Doubled arrows with head ``v``, in the fixed order."""
        return [d for d in self.order if self.head(d) == v]

    def loops_at(self, v: str) -> int:
        return sum(1 for a in self.arrows if a.head == v and a.tail == v)

    def is_loopfree(self, v: str) -> bool:
        return self.loops_at(v) == 0

    def position(self, label: str) -> int:
        return self.order.index(label)

    @property
    def size(self) -> int:
        return len(self.vertices)

    @cached_property
    def cartan(self) -> tuple[tuple[int, ...], ...]:
        """Gram matrix of the symmetric bilinear form on coordinate vectors."""
        n = self.size
        C = [[0] * n for _ in range(n)]
        for i in range(n):
            C[i][i] = 2
        for a in self.arrows:
            h, t = self.index(a.head), self.index(a.tail)
            C[h][t] -= 1
            C[t][h] -= 1
        return tuple(tuple(r) for r in C)

    @cached_property
    def neighbours(self) -> tuple[frozenset[int], ...]:
        nb = [set() for _ in self.vertices]
        for a in self.arrows:
            h, t = self.index(a.head), self.index(a.tail)
            if h != t:
                nb[h].add(t)
                nb[t].add(h)
        return tuple(frozenset(s) for s in nb)

    # -- editing --------------------------------------------------------------------
    def with_reversed(self, aid: str) -> Quiver:
        """Replace arrow ``aid`` by its reverse, reusing the id.

        In the order the old ``a`` becomes the new ``a*`` and vice versa, so
        every doubled arrow keeps its slot.
        """
        arrows = tuple(
            Arrow(a.id, a.tail, a.head) if a.id == aid else a for a in self.arrows
        )
        order = tuple(star(d) if arrow_id(d) == aid else d for d in self.order)
        return Quiver(self.vertices, arrows, order)

    def with_order(self, order: Sequence[str]) -> Quiver:
        return Quiver(self.vertices, self.arrows, tuple(order))

    # -- vectors --------------------------------------------------------------------
    def vector(self, values: Mapping[str, int] | Sequence[int]) -> DimVector:
        if isinstance(values, Mapping):
            unknown = set(values) - set(self.vertices)
            if unknown:
                raise KeyError(f"unknown vertices {sorted(unknown)}")
            return tuple(int(values.get(v, 0)) for v in self.vertices)
        values = tuple(int(x) for x in values)
        if len(values) != self.size:
            raise ValueError(f"vector of length {len(values)} for {self.size} vertices")
        return values

    def unit(self, v: str) -> DimVector:
        i = self.index(v)
        return tuple(1 if j == i else 0 for j in range(self.size))

    def vector_json(self, vec: Sequence[int]) -> dict[str, int]:
        return {v: int(x) for v, x in zip(self.vertices, vec)}

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [{"id": a.id, "head": a.head, "tail": a.tail} for a in self.arrows],
            "order": list(self.order),
        }

    @classmethod
    def from_json(cls, obj) -> Quiver:
        try:
            arrows = [Arrow(str(a["id"]), str(a["head"]), str(a["tail"])) for a in obj["arrows"]]
            return cls(tuple(str(v) for v in obj["vertices"]), tuple(arrows), tuple(obj.get("order", ())))
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError("quiver", str(exc)) from exc


def tits_form(Q: Quiver, alpha: Sequence[int]) -> int:
    s = sum(x * x for x in alpha)
    for a in Q.arrows:
        s -= alpha[Q.index(a.head)] * alpha[Q.index(a.tail)]
    return s


def p_value(Q: Quiver, alpha: Sequence[int]) -> int:
    return 1 - tits_form(Q, alpha)


def bilinear(Q: Quiver, alpha: Sequence[int], beta: Sequence[int]) -> int:
    C = Q.cartan
    return sum(alpha[i] * C[i][j] * beta[j] for i in range(Q.size) for j in range(Q.size) if C[i][j])


def pair_with_unit(Q: Quiver, alpha: Sequence[int], i: int) -> int:
    """``(alpha, e_v)`` for the vertex with index ``i``."""
    row = Q.cartan[i]
    return sum(row[j] * alpha[j] for j in range(Q.size))


def reflect(Q: Quiver, v: str, alpha: Sequence[int]) -> DimVector:
    if not Q.is_loopfree(v):
        raise LoopAtVertex(f"vertex {v} carries a loop")
    i = Q.index(v)
    c = pair_with_unit(Q, alpha, i)
    out = list(alpha)
    out[i] -= c
    return tuple(out)


class RootKind(str, enum.Enum):
    REAL = "real"
    IMAGINARY = "imaginary"
    NOT_A_ROOT = "not_a_root"


def support_connected(Q: Quiver, beta: Sequence[int]) -> bool:
    supp = [i for i, x in enumerate(beta) if x]
    if not supp:
        return False
    seen = {supp[0]}
    stack = [supp[0]]
    nb = Q.neighbours
    while stack:
        i = stack.pop()
        for j in nb[i]:
            if beta[j] and j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == len(supp)


def in_fundamental_region(Q: Quiver, beta: Sequence[int]) -> bool:
    if any(x < 0 for x in beta) or not support_connected(Q, beta):
        return False
    return all(pair_with_unit(Q, beta, i) <= 0 for i in range(Q.size))


def is_positive_root(
    Q: Quiver, beta: Sequence[int], trace: list[str] | None = None
) -> RootKind:
    """Classify ``beta`` by reflecting it down until it becomes simple or fundamental.

    At each step the least-index loopfree vertex with ``(beta, e_v) > 0`` is
    used.  The coordinate sum strictly decreases, so the loop terminates.
    """
    beta = list(beta)
    loopfree = [Q.is_loopfree(v) for v in Q.vertices]
    while True:
        if any(x < 0 for x in beta) or not any(beta):
            return RootKind.NOT_A_ROOT
        if not support_connected(Q, beta):
            return RootKind.NOT_A_ROOT
        nz = [i for i, x in enumerate(beta) if x]
        if len(nz) == 1 and beta[nz[0]] == 1 and loopfree[nz[0]]:
            return RootKind.REAL
        pivot = None
        for i in range(Q.size):
            c = pair_with_unit(Q, beta, i)
            if c > 0:
                # a vertex with a loop never pairs positively with a nonnegative vector
                assert loopfree[i]
                pivot, coeff = i, c
                break
        if pivot is None:
            return RootKind.IMAGINARY
        before = sum(beta)
        beta[pivot] -= coeff
        assert sum(beta) < before
        if trace is not None:
            trace.append(Q.vertices[pivot])
