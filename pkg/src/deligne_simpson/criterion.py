"""Existence criterion for irreducible solutions and for rigid simple representations.

Everything here works on a *setting*: any object with ``quiver``, ``alpha``
and ``qparam`` attributes (an :class:`~deligne_simpson.instance.Instance` or a
bare :class:`Setting`).
"""

from __future__ import annotations

import enum
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import prod
from typing import Sequence

from .arith import UnitScalar
from .errors import BudgetExceeded
from .instance import q_power
from .quiver import DimVector, Quiver, RootKind, is_positive_root, p_value

DEFAULT_BUDGET = 10**7


@dataclass(frozen=True)
class Setting:
    quiver: Quiver
    alpha: DimVector
    qparam: tuple[UnitScalar, ...]


@dataclass(frozen=True)
class CatalogEntry:
    beta: DimVector
    kind: RootKind
    p: int
    q_null: bool


@dataclass(frozen=True)
class RootCatalog:
    alpha: DimVector
    roots: tuple[CatalogEntry, ...]

    def q_null(self) -> list[CatalogEntry]:
        return [r for r in self.roots if r.q_null]

    def to_json(self, Q: Quiver) -> dict:
        return {
            "alpha": Q.vector_json(self.alpha),
            "roots": [
                {"beta": Q.vector_json(r.beta), "kind": r.kind.value, "p": r.p, "q_null": r.q_null}
                for r in self.roots
            ],
        }


def box_size(alpha: Sequence[int]) -> int:
    return prod(a + 1 for a in alpha)


def _check_budget(alpha, budget: int):
    states = box_size(alpha)
    if states > budget:
        raise BudgetExceeded(states, budget)


def _scan(Q: Quiver, qparam, alpha, first_values) -> list[CatalogEntry]:
    out = []
    ranges = [list(first_values)] + [range(a + 1) for a in alpha[1:]]
    for beta in itertools.product(*ranges):
        if not any(beta):
            continue
        kind = is_positive_root(Q, beta)
        if kind is RootKind.NOT_A_ROOT:
            continue
        out.append(CatalogEntry(beta, kind, p_value(Q, beta), q_power(qparam, beta).is_one))
    return out


def enumerate_q_null_roots(setting, budget: int = DEFAULT_BUDGET, workers: int = 1) -> RootCatalog:
    """Every positive root ``0 < beta <= alpha`` with its kind, ``p`` and q-null flag.

    ``workers > 1`` splits the box by the first coordinate across processes.
    """
    Q, alpha, qparam = setting.quiver, tuple(setting.alpha), tuple(setting.qparam)
    _check_budget(alpha, budget)
    if not alpha:
        return RootCatalog(alpha, ())
    if workers > 1 and alpha[0] > 0:
        chunks = [[x] for x in range(alpha[0] + 1)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(_scan, *zip(*[(Q, qparam, alpha, c) for c in chunks]))
            roots = [r for part in parts for r in part]
    else:
        roots = _scan(Q, qparam, alpha, range(alpha[0] + 1))
    roots.sort(key=lambda r: r.beta)
    return RootCatalog(alpha, tuple(roots))


@dataclass(frozen=True)
class Decomposition:
    value: int
    parts: tuple[DimVector, ...]


def max_decomposition(setting, catalog: RootCatalog, budget: int = DEFAULT_BUDGET) -> Decomposition | None:
    """Best ``sum p(part)`` over decompositions of alpha into two or more q-null roots.

    ``best(g) = max_beta p(beta) + best(g - beta)`` over q-null roots
    ``beta <= g``, evaluated on the box below alpha in lexicographic order so
    that every ``g - beta`` is already known.
    """
    alpha = tuple(setting.alpha)
    _check_budget(alpha, budget)
    parts = [(r.beta, r.p) for r in catalog.q_null()]
    zero = tuple(0 for _ in alpha)
    best: dict[DimVector, tuple[int, DimVector | None]] = {zero: (0, None)}
    for gamma in itertools.product(*(range(a + 1) for a in alpha)):
        if gamma == zero or gamma == alpha:
            continue
        choice = None
        for beta, p in parts:
            if all(b <= g for b, g in zip(beta, gamma)):
                rest = tuple(g - b for g, b in zip(gamma, beta))
                sub = best.get(rest)
                if sub is not None and (choice is None or p + sub[0] > choice[0]):
                    choice = (p + sub[0], beta)
        if choice is not None:
            best[gamma] = choice
    top = None
    for beta, p in parts:
        if beta == alpha or not all(b <= a for b, a in zip(beta, alpha)):
            continue
        rest = tuple(a - b for a, b in zip(alpha, beta))
        sub = best.get(rest)
        if sub is not None and (top is None or p + sub[0] > top[0]):
            top = (p + sub[0], beta)
    if top is None:
        return None
    pieces = [top[1]]
    g = tuple(a - b for a, b in zip(alpha, top[1]))
    while g != zero:
        beta = best[g][1]
        pieces.append(beta)
        g = tuple(x - b for x, b in zip(g, beta))
    pieces.sort(reverse=True)
    return Decomposition(top[0], tuple(pieces))


class Status(str, enum.Enum):
    NO_SOLUTION_DET = "no_solution_det"
    EXISTS_RIGID = "exists_rigid"
    EXISTS_NONRIGID = "exists_nonrigid"
    CRITERION_FAILS = "criterion_fails"


NOTES = {
    Status.NO_SOLUTION_DET: "no solution: the product of determinants is not 1",
    Status.EXISTS_RIGID: "an irreducible solution exists and is rigid (unique up to conjugation)",
    Status.EXISTS_NONRIGID: "an irreducible solution exists (non-rigid; construction not available)",
    Status.CRITERION_FAILS: "sufficient condition fails: conjecturally no irreducible solution",
}


@dataclass(frozen=True)
class Verdict:
    status: Status
    q_alpha: UnitScalar
    root_kind: RootKind
    p_alpha: int
    g: int
    witness: Decomposition | None = None
    catalog_size: int = 0
    notes: tuple[str, ...] = field(default=())

    @property
    def g_plus_2p(self) -> int:
        return self.g + 2 * self.p_alpha

    def to_json(self, Q: Quiver) -> dict:
        return {
            "status": self.status.value,
            "note": NOTES[self.status],
            "q_alpha": self.q_alpha.to_json(),
            "root_kind": self.root_kind.value,
            "p_alpha": self.p_alpha,
            "witness": None
            if self.witness is None
            else {
                "value": self.witness.value,
                "parts": [Q.vector_json(b) for b in self.witness.parts],
            },
            "catalog_size": self.catalog_size,
            "dims_info": {"g": self.g, "g_plus_2p": self.g_plus_2p},
            "notes": list(self.notes),
        }


def decide(setting, budget: int = DEFAULT_BUDGET, workers: int = 1) -> Verdict:
    Q, alpha = setting.quiver, tuple(setting.alpha)
    q_alpha = q_power(setting.qparam, alpha)
    kind = is_positive_root(Q, alpha)
    p_alpha = p_value(Q, alpha)
    g = -1 + sum(a * a for a in alpha)
    if not q_alpha.is_one:
        return Verdict(Status.NO_SOLUTION_DET, q_alpha, kind, p_alpha, g)
    if kind is RootKind.NOT_A_ROOT:
        return Verdict(
            Status.CRITERION_FAILS, q_alpha, kind, p_alpha, g, notes=("alpha is not a positive root",)
        )
    catalog = enumerate_q_null_roots(setting, budget, workers)
    dec = max_decomposition(setting, catalog, budget)
    size = len(catalog.q_null())
    if dec is not None and dec.value >= p_alpha:
        return Verdict(
            Status.CRITERION_FAILS,
            q_alpha,
            kind,
            p_alpha,
            g,
            dec,
            size,
            ("a decomposition into q-null roots attains p(alpha)",),
        )
    status = Status.EXISTS_RIGID if kind is RootKind.REAL else Status.EXISTS_NONRIGID
    return Verdict(status, q_alpha, kind, p_alpha, g, dec, size)


def rigid_exists(setting, budget: int = DEFAULT_BUDGET) -> bool:
    """Positive real root, ``q^alpha = 1`` and no decomposition into >= 2 q-null roots."""
    Q, alpha = setting.quiver, tuple(setting.alpha)
    if is_positive_root(Q, alpha) is not RootKind.REAL:
        return False
    if not q_power(setting.qparam, alpha).is_one:
        return False
    catalog = enumerate_q_null_roots(setting, budget)
    return max_decomposition(setting, catalog, budget) is None
