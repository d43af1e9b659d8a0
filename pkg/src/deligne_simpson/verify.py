"""Independent certification of matrix tuples."""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field
from typing import Sequence

from .arith import CycMatrix, CycScalar, embed, kernel_matrix, mat_inverse, mat_rank
from .arith.matrix import is_invertible
from .errors import ShapeMismatch
from .instance import ClassSpec, Instance, minimal_xi_row, rank_sequence
from .rep import hom_dim


@dataclass(frozen=True)
class MatrixTuple:
    n: int
    matrices: tuple[CycMatrix, ...]
    conductor: int

    def __post_init__(self):
        object.__setattr__(self, "matrices", tuple(self.matrices))
        for A in self.matrices:
            if A.shape != (self.n, self.n):
                raise ShapeMismatch(f"expected {self.n}x{self.n} matrices, got {A.shape}")
            if A.conductor != self.conductor:
                raise ShapeMismatch("all matrices must share the tuple's conductor")

    def conjugate(self, g: CycMatrix) -> MatrixTuple:
        """``g^-1 A_i g`` for every member."""
        gi = mat_inverse(g)
        return MatrixTuple(self.n, tuple(gi @ A @ g for A in self.matrices), self.conductor)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "conductor": self.conductor,
            "matrices": [A.to_json() for A in self.matrices],
        }

    @classmethod
    def from_json(cls, obj) -> MatrixTuple:
        mats = tuple(CycMatrix.from_json(m) for m in obj["matrices"])
        n = int(obj.get("n", mats[0].rows if mats else 0))
        conductor = int(obj.get("conductor", mats[0].conductor if mats else 1))
        return cls(n, mats, conductor)


def check_product(T: MatrixTuple) -> bool:
    P = CycMatrix.identity(T.n, T.conductor)
    for A in T.matrices:
        if A.shape != (T.n, T.n):
            raise ShapeMismatch("tuple members must be n x n")
        P = P @ A
    return P == CycMatrix.identity(T.n, T.conductor)


def rank_table(A: CycMatrix, c: ClassSpec, xi_row: Sequence | None = None) -> dict:
    """Expected and observed partial-product ranks, plus whether the full product vanishes."""
    row = tuple(xi_row) if xi_row is not None else c.xi_row or minimal_xi_row(c)
    N = A.conductor
    P = CycMatrix.identity(A.rows, N)
    observed = []
    for j, x in enumerate(row, start=1):
        P = P @ (A - CycMatrix.scalar(A.rows, embed(x, N)))
        if j < len(row):
            observed.append(mat_rank(P))
    return {
        "expected": list(rank_sequence(c, row)),
        "observed": observed,
        "annihilated": P.is_zero(),
    }


def in_class(A: CycMatrix, c: ClassSpec, xi_row: Sequence | None = None) -> bool:
    if A.shape != (c.size, c.size):
        return False
    t = rank_table(A, c, xi_row)
    return t["annihilated"] and t["expected"] == t["observed"]


def _flat(M: CycMatrix) -> list[CycScalar]:
    return [x for r in M.data for x in r]


def algebra_dimension(T: MatrixTuple) -> int:
    """Dimension of the unital algebra generated by the ``A_i`` (and their inverses)."""
    n, N = T.n, T.conductor
    if n == 0:
        return 0
    gens = []
    for A in T.matrices:
        gens.append(A)
        # inverses only speed up the closure; singular inputs are still handled
        if is_invertible(A):
            gens.append(mat_inverse(A))
    basis: list[tuple[int, list[CycScalar]]] = []

    def reduce(vec):
        vec = list(vec)
        for p, b in basis:
            c = vec[p]
            if not c.is_zero():
                vec = [x - c * y for x, y in zip(vec, b)]
        return vec

    def add(M) -> bool:
        vec = reduce(_flat(M))
        p = next((i for i, x in enumerate(vec) if not x.is_zero()), None)
        if p is None:
            return False
        inv = vec[p].inverse()
        vec = [x * inv for x in vec]
        for k, (q, b) in enumerate(basis):
            c = b[p]
            if not c.is_zero():
                basis[k] = (q, [x - c * y for x, y in zip(b, vec)])
        basis.append((p, vec))
        return True

    I = CycMatrix.identity(n, N)
    add(I)
    queue = [I]
    steps = 0
    while queue and len(basis) < n * n:
        M = queue.pop()
        for G in gens:
            steps += 1
            if steps > max(n**4, 1) * len(gens):
                raise RuntimeError("algebra closure failed to stabilise")
            P = G @ M
            if add(P):
                queue.append(P)
    return len(basis)


def irreducible(T: MatrixTuple) -> bool:
    """No common invariant subspace: the generated algebra is all of ``M_n``."""
    return algebra_dimension(T) == T.n * T.n


def find_conjugator(S: MatrixTuple, T: MatrixTuple, seed: int = 0, tries: int = 25) -> CycMatrix | None:
    """Invertible ``g`` with ``g S_i = T_i g`` for all i (so ``T_i = g S_i g^-1``)."""
    if S.n != T.n or len(S.matrices) != len(T.matrices) or S.conductor != T.conductor:
        return None
    n, N = S.n, S.conductor
    zero = CycScalar.zero(N)
    rows = []
    for A, B in zip(S.matrices, T.matrices):
        # (g A - B g)[r, c] = sum_s g[r,s] A[s,c] - B[r,s] g[s,c]
        for r in range(n):
            for c in range(n):
                row = [zero] * (n * n)
                for s in range(n):
                    row[r * n + s] = row[r * n + s] + A[s, c]
                    row[s * n + c] = row[s * n + c] - B[r, s]
                rows.append(row)
    K = kernel_matrix(CycMatrix(len(rows), n * n, rows, N))
    if K.cols == 0:
        return None
    rng = random.Random(seed)
    for attempt in range(tries):
        coeffs = [1] + [0] * (K.cols - 1) if attempt == 0 else [rng.randint(-9, 9) for _ in range(K.cols)]
        vec = [sum((K[i, k] * c for k, c in enumerate(coeffs) if c), zero) for i in range(n * n)]
        g = CycMatrix(n, n, [vec[r * n : (r + 1) * n] for r in range(n)], N)
        if is_invertible(g):
            return g
    return None


def digest(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True).encode()).hexdigest()


@dataclass
class VerificationReport:
    product_ok: bool
    class_ok: list[bool]
    rank_tables: list[dict]
    irreducible: bool
    algebra_dim: int
    endo_dim: int | None = None
    expect_rigid: bool = False
    conductor: int = 1
    hashes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        good = self.product_ok and all(self.class_ok) and self.irreducible
        if self.expect_rigid:
            good = good and self.endo_dim == 1
        return good

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "product_ok": self.product_ok,
            "class_ok": self.class_ok,
            "rank_tables": self.rank_tables,
            "irreducible": self.irreducible,
            "algebra_dim": self.algebra_dim,
            "endo_dim": self.endo_dim,
            "expect_rigid": self.expect_rigid,
            "conductor": self.conductor,
            "hashes": self.hashes,
        }


def full_report(inst: Instance, T: MatrixTuple, X=None, expect_rigid: bool = False) -> VerificationReport:
    if len(T.matrices) != len(inst.classes):
        raise ShapeMismatch(f"{len(T.matrices)} matrices for {len(inst.classes)} classes")
    tables = [rank_table(A, c, row) for A, c, row in zip(T.matrices, inst.classes, inst.xi)]
    class_ok = [t["annihilated"] and t["expected"] == t["observed"] for t in tables]
    dim = algebra_dimension(T)
    endo = hom_dim(X, X) if X is not None else None
    return VerificationReport(
        product_ok=check_product(T),
        class_ok=class_ok,
        rank_tables=tables,
        irreducible=dim == T.n * T.n,
        algebra_dim=dim,
        endo_dim=endo,
        expect_rigid=expect_rigid,
        conductor=T.conductor,
        hashes={"instance": digest(inst.to_json()), "tuple": digest(T.to_json())},
    )
