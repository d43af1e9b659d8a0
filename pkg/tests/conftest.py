"""Shared corpus of instances and representations."""

from __future__ import annotations

import sys
from fractions import Fraction as F
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from deligne_simpson.arith import UnitScalar
from deligne_simpson.construct import construct
from deligne_simpson.instance import ClassSpec, build_instance
from deligne_simpson.rep import direct_sum, middle_convolution, reverse_arrow, simple_at, swap_adjacent_order


def u(phase, mag=1) -> UnitScalar:
    return UnitScalar(F(mag), F(phase))


D = ClassSpec.diagonal
INV = D([u(0), u(F(1, 2))])
ROT = D([u(F(1, 4)), u(F(3, 4))])

RIGID_CLASSES = {
    "d4": (2, [INV, INV, ROT]),
    "rational2": (2, [D([u(0, 2), u(0, 3)]), D([u(0, 5), u(0, 7)]), D([u(0, F(1, 210)), u(0)])]),
    "jordan12": (2, [ClassSpec(((u(0), 2),)), D([u(F(1, 3)), u(F(2, 3))]), ROT]),
    "hyper3": (
        3,
        [D([u(0), u(F(1, 3)), u(F(2, 3))]), D([u(F(1, 2)), u(F(1, 4)), u(F(3, 4))]), D([u(F(1, 2)), u(0), u(0)])],
    ),
    "rational3": (
        3,
        [
            D([u(0, 2), u(0, 3), u(0, 5)]),
            D([u(0, F(1, 7)), u(0, F(1, 11)), u(0, F(1, 13))]),
            D([u(0, F(1001, 30)), u(0), u(0)]),
        ],
    ),
    "scalars": (1, [D([u(0, 2)]), D([u(0, F(1, 2))])]),
}

OTHER_CLASSES = {
    "three_involutions": (2, [INV, INV, INV]),
    "four_involutions": (2, [INV, INV, INV, INV]),
    "single_jordan": (2, [ClassSpec(((u(0), 2),))]),
    "mixed_blocks": (
        4,
        [ClassSpec(((u(0), 2), (u(0), 1), (u(F(1, 2)), 1))), ClassSpec(((u(F(1, 2)), 2), (u(0), 2)))],
    ),
}


@lru_cache(maxsize=None)
def instance(name: str):
    n, classes = {**RIGID_CLASSES, **OTHER_CLASSES}[name]
    return build_instance(n, classes)


@lru_cache(maxsize=None)
def rigid(name: str):
    return construct(instance(name))


def path_intermediates(name: str):
    """The seed simple and every representation met while replaying the path."""
    inst = instance(name)
    c = rigid(name)
    X = simple_at(inst.quiver, c.path.terminal, c.path.terminal_q, inst.conductor)
    out = [X]
    for step in reversed(c.path.steps):
        X = middle_convolution(X, step.vertex)
        out.append(X)
    return out


def transports(X):
    """Images of ``X`` under single arrow reversals and adjacent order swaps."""
    Q = X.quiver
    out = [reverse_arrow(X, a.id) for a in Q.arrows]
    order = Q.order
    for k in range(len(order) - 1):
        a1, a2 = order[k], order[k + 1]
        if Q.head(a1) == Q.head(a2):
            out.append(swap_adjacent_order(X, a1, a2))
    return out


@lru_cache(maxsize=None)
def rep_corpus():
    """Valid representations across the rigid instances, tagged with their origin."""
    reps = []
    for name in RIGID_CLASSES:
        X = rigid(name).rep
        reps.append((f"{name}:rigid", X))
        reps.append((f"{name}:sum", direct_sum(X, X)))
        for k, Y in enumerate(path_intermediates(name)[:-1]):
            reps.append((f"{name}:path{k}", Y))
        for k, Y in enumerate(transports(X)):
            reps.append((f"{name}:transport{k}", Y))
    return tuple(reps)


@pytest.fixture(scope="session")
def corpus():
    return rep_corpus()


# -- acceptance summary -------------------------------------------------------------

_acceptance: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))
    elif report.when == "setup" and report.failed and "test_acceptance.py" in report.nodeid:
        _acceptance.append((report.nodeid.split("::")[-1], "error"))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}")
