"""Conjugacy-class data and the star-shaped quiver it determines.

A class in ``GL_n`` is given by its Jordan blocks.  Each class contributes a
leg ``[i,1] -> ... `` to the star quiver, whose arrows all point towards the
central vertex ``0``; the dimension vector records ranks of partial products
``(A - xi_1)(A - xi_2)...(A - xi_j)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .arith import CycMatrix, UnitScalar, common_conductor, embed, unit_product
from .errors import InconsistentSize, InvalidXiRow, SchemaError
from .quiver import Arrow, DimVector, Quiver

CENTER = "0"


def leg_vertex(i: int, j: int) -> str:
    return f"[{i},{j}]"


def leg_arrow(i: int, j: int) -> str:
    """Id of the arrow with tail ``[i,j]``."""
    return f"a[{i},{j}]"


@dataclass(frozen=True)
class ClassSpec:
    """Jordan data ``[(eigenvalue, block size), ...]`` and an optional explicit xi row."""

    jordan_blocks: tuple[tuple[UnitScalar, int], ...]
    xi_row: tuple[UnitScalar, ...] | None = None

    def __post_init__(self):
        blocks = tuple((ev, int(s)) for ev, s in self.jordan_blocks)
        if not blocks:
            raise ValueError("a class needs at least one Jordan block")
        if any(s < 1 for _, s in blocks):
            raise ValueError("Jordan block sizes must be positive")
        object.__setattr__(self, "jordan_blocks", blocks)
        if self.xi_row is not None:
            object.__setattr__(self, "xi_row", tuple(self.xi_row))

    @property
    def size(self) -> int:
        return sum(s for _, s in self.jordan_blocks)

    def max_block(self) -> dict[UnitScalar, int]:
        out: dict[UnitScalar, int] = {}
        for ev, s in self.jordan_blocks:
            out[ev] = max(out.get(ev, 0), s)
        return out

    def eigenvalues(self) -> list[UnitScalar]:
        return sorted(self.max_block(), key=UnitScalar.sort_key)

    def determinant(self) -> UnitScalar:
        return unit_product(ev**s for ev, s in self.jordan_blocks)

    def jordan_matrix(self, conductor: int) -> CycMatrix:
        """Block-diagonal Jordan form, blocks in the given order."""
        blocks = []
        for ev, s in self.jordan_blocks:
            lam = embed(ev, conductor)
            rows = [[lam if r == c else 1 if c == r + 1 else 0 for c in range(s)] for r in range(s)]
            blocks.append(CycMatrix.from_rows(rows, conductor))
        return CycMatrix.block_diag(blocks, conductor)

    @classmethod
    def diagonal(cls, eigenvalues: Sequence[UnitScalar]) -> ClassSpec:
        return cls(tuple((ev, 1) for ev in eigenvalues))

    def to_json(self) -> dict:
        out = {
            "jordan_blocks": [
                {"eigenvalue": ev.to_json(), "size": s} for ev, s in self.jordan_blocks
            ]
        }
        if self.xi_row is not None:
            out["xi_row"] = [x.to_json() for x in self.xi_row]
        return out


def minimal_xi_row(c: ClassSpec) -> tuple[UnitScalar, ...]:
    """Roots of the minimal polynomial, repeats adjacent, sorted by (phase, mag)."""
    mb = c.max_block()
    return tuple(ev for ev in c.eigenvalues() for _ in range(mb[ev]))


def annihilates(c: ClassSpec, row: Sequence[UnitScalar]) -> bool:
    counts = Counter(row)
    return all(counts[ev] >= m for ev, m in c.max_block().items())


def rank_sequence(c: ClassSpec, xi_row: Sequence[UnitScalar]) -> tuple[int, ...]:
    """Ranks of the partial products for j = 1 .. w-1.

    On a block ``J_s(lambda)`` a factor ``A - xi`` is invertible unless
    ``xi == lambda``, in which case it lowers the rank by one.
    """
    out = []
    for j in range(1, len(xi_row)):
        prefix = Counter(xi_row[:j])
        out.append(sum(max(0, s - prefix[ev]) for ev, s in c.jordan_blocks))
    return tuple(out)


def star_quiver(w: Sequence[int]) -> Quiver:
    """The star quiver with legs of lengths ``w_i - 1``, arrows pointing to the centre.

    The order of the double starts ``a[1,1] < a[2,1] < ... < a[k,1]``.
    """
    vertices = [CENTER]
    arrows = []
    for i, wi in enumerate(w, start=1):
        for j in range(1, wi):
            vertices.append(leg_vertex(i, j))
            head = CENTER if j == 1 else leg_vertex(i, j - 1)
            arrows.append(Arrow(leg_arrow(i, j), head, leg_vertex(i, j)))
    first = [leg_arrow(i, 1) for i, wi in enumerate(w, start=1) if wi > 1]
    rest = [a.id for a in arrows if a.id not in first]
    order = first + rest + [a + "*" for a in first + rest]
    return Quiver(tuple(vertices), tuple(arrows), tuple(order))


@dataclass(frozen=True)
class Instance:
    n: int
    classes: tuple[ClassSpec, ...]
    w: tuple[int, ...]
    xi: tuple[tuple[UnitScalar, ...], ...]
    quiver: Quiver
    alpha: DimVector
    qparam: tuple[UnitScalar, ...]
    conductor: int
    xi_source: tuple[str, ...] = field(default=())

    def q(self, v: str) -> UnitScalar:
        return self.qparam[self.quiver.index(v)]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "classes": [c.to_json() for c in self.classes],
        }

    def derived_json(self) -> dict:
        Q = self.quiver
        return {
            "w": list(self.w),
            "xi": [[x.to_json() for x in row] for row in self.xi],
            "xi_source": list(self.xi_source),
            "quiver": Q.to_json(),
            "alpha": Q.vector_json(self.alpha),
            "q": {v: qv.to_json() for v, qv in zip(Q.vertices, self.qparam)},
            "conductor": self.conductor,
        }


def build_instance(n: int, classes: Sequence[ClassSpec]) -> Instance:
    if n < 1:
        raise InconsistentSize("n must be positive")
    rows, sources = [], []
    for idx, c in enumerate(classes, start=1):
        if c.size != n:
            raise InconsistentSize(f"class {idx} has blocks summing to {c.size}, expected n={n}")
        if c.xi_row is not None:
            if not annihilates(c, c.xi_row):
                raise InvalidXiRow(f"xi_row of class {idx} does not annihilate its Jordan type")
            rows.append(tuple(c.xi_row))
            sources.append("user")
        else:
            rows.append(minimal_xi_row(c))
            sources.append("minimal")
    w = tuple(len(r) for r in rows)
    Q = star_quiver(w)
    alpha = [0] * Q.size
    alpha[Q.index(CENTER)] = n
    for i, (c, row) in enumerate(zip(classes, rows), start=1):
        for j, r in enumerate(rank_sequence(c, row), start=1):
            alpha[Q.index(leg_vertex(i, j))] = r
    q = [UnitScalar.one()] * Q.size
    q[Q.index(CENTER)] = unit_product(row[0] for row in rows).inverse()
    for i, row in enumerate(rows, start=1):
        for j in range(1, len(row)):
            q[Q.index(leg_vertex(i, j))] = row[j - 1] / row[j]
    conductor = common_conductor(x for row in rows for x in row)
    return Instance(n, tuple(classes), w, tuple(rows), Q, tuple(alpha), tuple(q), conductor, tuple(sources))


def xi_bracket(inst: Instance, beta: Sequence[int]) -> UnitScalar:
    """``prod_i prod_j xi_ij ** (beta_{i,j-1} - beta_{ij})`` with ``beta_{i0} = beta_0``."""
    Q = inst.quiver
    factors = []
    b0 = beta[Q.index(CENTER)]
    for i, row in enumerate(inst.xi, start=1):
        prev = b0
        for j, x in enumerate(row, start=1):
            cur = beta[Q.index(leg_vertex(i, j))] if j < len(row) else 0
            factors.append(x ** (prev - cur))
            prev = cur
    return unit_product(factors)


def q_power(qparam: Sequence[UnitScalar], beta: Sequence[int]) -> UnitScalar:
    return unit_product(qv**b for qv, b in zip(qparam, beta) if b)


# -- JSON ---------------------------------------------------------------------------


def _unit(obj, path: str) -> UnitScalar:
    try:
        return UnitScalar.from_json(obj)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise SchemaError(path, f"bad unit scalar: {exc}") from exc


def class_from_json(obj, path: str = "class") -> ClassSpec:
    if not isinstance(obj, dict) or "jordan_blocks" not in obj:
        raise SchemaError(path, "expected an object with 'jordan_blocks'")
    blocks = []
    for b, blk in enumerate(obj["jordan_blocks"]):
        p = f"{path}.jordan_blocks[{b}]"
        if not isinstance(blk, dict) or "eigenvalue" not in blk or "size" not in blk:
            raise SchemaError(p, "expected {'eigenvalue': ..., 'size': ...}")
        size = blk["size"]
        if not isinstance(size, int) or size < 1:
            raise SchemaError(p + ".size", "must be a positive integer")
        blocks.append((_unit(blk["eigenvalue"], p + ".eigenvalue"), size))
    xi_row = None
    if obj.get("xi_row") is not None:
        xi_row = tuple(_unit(x, f"{path}.xi_row[{k}]") for k, x in enumerate(obj["xi_row"]))
    try:
        return ClassSpec(tuple(blocks), xi_row)
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from exc


def instance_from_json(obj) -> Instance:
    if not isinstance(obj, dict):
        raise SchemaError("$", "instance must be a JSON object")
    n = obj.get("n")
    if not isinstance(n, int) or n < 1:
        raise SchemaError("$.n", "must be a positive integer")
    classes = obj.get("classes")
    if not isinstance(classes, list) or not classes:
        raise SchemaError("$.classes", "must be a nonempty list")
    specs = [class_from_json(c, f"$.classes[{i}]") for i, c in enumerate(classes)]
    return build_instance(n, specs)
