"""Explicit rigid solutions.

The dimension vector is reflected down to a coordinate vector; the
one-dimensional representation there is then pushed back up through middle
convolutions and finally read off as a matrix tuple.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .arith import CycMatrix, UnitScalar, column_space_basis, embed, kernel_matrix, mat_rank, mat_solve
from .criterion import DEFAULT_BUDGET, rigid_exists
from .errors import InternalContradiction, NotInClass, NotRigid, NotStrict
from .instance import ClassSpec, Instance, leg_arrow
from .quiver import DimVector, Quiver, pair_with_unit, reflect
from .rep import ConvolutionStep, Rep, middle_convolution, reflect_q, simple_at
from .verify import MatrixTuple, in_class


@dataclass(frozen=True)
class ReductionStep:
    vertex: str
    q_before: tuple[UnitScalar, ...]
    alpha_before: DimVector


@dataclass(frozen=True)
class ReductionPath:
    steps: tuple[ReductionStep, ...]
    terminal: str
    terminal_q: tuple[UnitScalar, ...]

    @property
    def vertices(self) -> list[str]:
        return [s.vertex for s in self.steps]

    def format(self, Q: Quiver) -> list[str]:
        lines = []
        for s in self.steps:
            alpha = ",".join(str(a) for a in s.alpha_before)
            lines.append(f"reduce vertex={s.vertex} alpha=({alpha}) q_v={s.q_before[Q.index(s.vertex)]}")
        lines.append(f"terminal vertex={self.terminal}")
        return lines


def reduction_path(
    setting, order: Sequence[str] | None = None, budget: int = DEFAULT_BUDGET, check: bool = True
) -> ReductionPath:
    """Reflect alpha down to a coordinate vector at vertices with ``(alpha, e_v) > 0``.

    Vertices are tried in quiver order unless ``order`` gives another priority.
    """
    if check and not rigid_exists(setting, budget):
        raise NotRigid("no rigid simple representation of this dimension vector")
    Q = setting.quiver
    alpha = tuple(setting.alpha)
    q = tuple(setting.qparam)
    priority = [Q.index(v) for v in (order or Q.vertices)]
    steps = []
    while True:
        nz = [i for i, a in enumerate(alpha) if a]
        if len(nz) == 1 and alpha[nz[0]] == 1:
            v = Q.vertices[nz[0]]
            if not q[nz[0]].is_one:
                raise InternalContradiction(f"terminal vertex {v} has q_v = {q[nz[0]]} != 1")
            return ReductionPath(tuple(steps), v, q)
        pick = next((i for i in priority if pair_with_unit(Q, alpha, i) > 0), None)
        if pick is None:
            raise InternalContradiction(f"no reducing vertex for {alpha}")
        v = Q.vertices[pick]
        if q[pick].is_one:
            raise InternalContradiction(f"q_{v} = 1 at a reducing vertex")
        steps.append(ReductionStep(v, q, alpha))
        alpha = reflect(Q, v, alpha)
        q = reflect_q(Q, q, v)


def build_rigid_rep(
    setting, path: ReductionPath, conductor: int, trace: list[ConvolutionStep] | None = None
) -> Rep:
    """Start from the simple at the terminal vertex and undo the path by middle convolution."""
    Q = setting.quiver
    X = simple_at(Q, path.terminal, path.terminal_q, conductor)
    for step in reversed(path.steps):
        X = middle_convolution(X, step.vertex, trace=trace)
        if X.qparam != step.q_before or X.dims != step.alpha_before:
            raise InternalContradiction(f"replay diverged at vertex {step.vertex}")
    return X


def is_strict(X: Rep) -> bool:
    """Leg arrows injective and their reverses surjective."""
    for a in X.quiver.arrows:
        M, Ms = X.maps[a.id], X.maps[a.id + "*"]
        if mat_rank(M) != M.cols or mat_rank(Ms) != Ms.rows:
            return False
    return True


def rep_to_tuple(inst: Instance, X: Rep) -> MatrixTuple:
    """``A_i = xi_i1 (1 + X_{a_i1} X_{a_i1*})``."""
    if X.dims != inst.alpha:
        raise NotStrict(f"dimension vector {X.dims} differs from alpha {inst.alpha}")
    if not is_strict(X):
        raise NotStrict("representation is not strict")
    N = X.conductor
    n = inst.n
    mats = []
    for i, row in enumerate(inst.xi, start=1):
        xi1 = embed(row[0], N)
        if len(row) > 1:
            mats.append(X.g(leg_arrow(i, 1)) * xi1)
        else:
            mats.append(CycMatrix.scalar(n, xi1))
    return MatrixTuple(n, tuple(mats), N)


def tuple_to_rep(inst: Instance, T: MatrixTuple) -> Rep:
    """Strict representation built from images of partial products.

    ``V_ij`` is the column space of ``(A_i - xi_i1)...(A_i - xi_ij)`` with a
    reduced-echelon basis; ``X_{a_ij*}`` is ``A_i - xi_ij`` restricted to
    ``V_{i,j-1}`` and ``X_{a_ij}`` is the inclusion divided by ``xi_ij``.
    """
    N = inst.conductor
    if T.conductor != N:
        raise NotInClass(f"tuple conductor {T.conductor} differs from instance conductor {N}")
    Q = inst.quiver
    maps: dict[str, CycMatrix] = {}
    for i, (A, c, row) in enumerate(zip(T.matrices, inst.classes, inst.xi), start=1):
        if not in_class(A, c, row):
            raise NotInClass(f"matrix {i} is not in its prescribed class")
        prev = CycMatrix.identity(inst.n, N)
        P = CycMatrix.identity(inst.n, N)
        for j in range(1, len(row)):
            xi = embed(row[j - 1], N)
            F = A - CycMatrix.scalar(inst.n, xi)
            P = P @ F
            B = column_space_basis(P)
            maps[leg_arrow(i, j)] = mat_solve(prev, B) * (1 / xi)
            maps[leg_arrow(i, j) + "*"] = mat_solve(B, F @ prev)
            prev = B
    return Rep(Q, inst.alpha, maps, inst.qparam, N)


def jordan_basis(A: CycMatrix, c: ClassSpec) -> CycMatrix:
    """Columns ``P`` with ``P^-1 A P`` in Jordan form (eigenvalues in canonical order)."""
    N, n = A.conductor, A.rows
    cols: list[CycMatrix] = []
    for lam in c.eigenvalues():
        sizes = sorted((s for ev, s in c.jordan_blocks if ev == lam), reverse=True)
        Nl = A - CycMatrix.scalar(n, embed(lam, N))
        m = sizes[0]
        kernels = [kernel_matrix(Nl**k) for k in range(m + 1)]
        chains: list[tuple[CycMatrix, int]] = []
        for k in range(m, 0, -1):
            want = sizes.count(k)
            # new chain tops must be independent modulo ker N^(k-1) and the existing chains
            span = kernels[k - 1].columns() + [Nl ** (kk - k) @ v for v, kk in chains]
            rank = _rank(span, n, N)
            for cand in kernels[k].columns():
                if want == 0:
                    break
                r = _rank(span + [cand], n, N)
                if r > rank:
                    span.append(cand)
                    rank = r
                    chains.append((cand, k))
                    want -= 1
            if want:
                raise NotInClass(f"matrix lacks the Jordan blocks of size {k} for eigenvalue {lam}")
        for v, k in chains:
            cols.extend(Nl ** (k - 1 - t) @ v for t in range(k))
    P = CycMatrix.hstack(cols, n, N)
    if mat_rank(P) != n:
        raise NotInClass("matrix is not in the given class")
    return P


def _rank(vectors: list[CycMatrix], n: int, N: int) -> int:
    return mat_rank(CycMatrix.hstack(vectors, n, N)) if vectors else 0


def jordan_normalize(T: MatrixTuple, first_class: ClassSpec) -> MatrixTuple:
    """Simultaneous conjugate of ``T`` with its first member in Jordan form."""
    P = jordan_basis(T.matrices[0], first_class)
    return T.conjugate(P)


@dataclass
class Construction:
    path: ReductionPath
    rep: Rep
    tuple: MatrixTuple
    trace: list[str] = field(default_factory=list)


def construct(inst: Instance, order: Sequence[str] | None = None, budget: int = DEFAULT_BUDGET) -> Construction:
    path = reduction_path(inst, order, budget)
    steps: list[ConvolutionStep] = []
    X = build_rigid_rep(inst, path, inst.conductor, steps)
    T = rep_to_tuple(inst, X)
    lines = path.format(inst.quiver) + [s.format(inst.quiver) for s in steps]
    for A in T.matrices:
        size = max((len(str(x)) for r in A.data for x in r), default=0)
        lines.append(f"matrix entry size max={size} chars")
    return Construction(path, X, T, lines)


__all__ = [
    "Construction",
    "ReductionPath",
    "ReductionStep",
    "build_rigid_rep",
    "construct",
    "is_strict",
    "jordan_basis",
    "jordan_normalize",
    "reduction_path",
    "rep_to_tuple",
    "tuple_to_rep",
]
