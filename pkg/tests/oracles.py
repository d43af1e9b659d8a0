"""Reference implementations that share no code with the package."""

from __future__ import annotations

import cmath
from collections import deque
from itertools import product


def bareiss_det(M: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    A = [row[:] for row in M]
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if A[r][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[-1][-1]


def bareiss_rank(M: list[list[int]]) -> int:
    A = [row[:] for row in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    rank, prev = 0, 1
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if A[r][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        for i in range(rank + 1, rows):
            for j in range(c + 1, cols):
                A[i][j] = (A[i][j] * A[rank][c] - A[i][c] * A[rank][j]) // prev
            A[i][c] = 0
        prev = A[rank][c]
        rank += 1
    return rank


def cyc_to_complex(x) -> complex:
    z = cmath.exp(2j * cmath.pi / x.conductor)
    return sum(complex(float(c)) * z**k for k, c in enumerate(x.coeffs))


def unit_to_complex(u) -> complex:
    return float(u.mag) * cmath.exp(2j * cmath.pi * float(u.phase))


# -- roots by orbit generation -----------------------------------------------------


def _cartan(n, edges, loops):
    C = [[0] * n for _ in range(n)]
    for i in range(n):
        C[i][i] = 2 - 2 * loops.get(i, 0)
    for h, t in edges:
        C[h][t] -= 1
        C[t][h] -= 1
    return C


def _connected(vec, edges):
    supp = {i for i, x in enumerate(vec) if x}
    if not supp:
        return False
    adj = {i: set() for i in supp}
    for h, t in edges:
        if h in supp and t in supp:
            adj[h].add(t)
            adj[t].add(h)
    start = next(iter(supp))
    seen, todo = {start}, [start]
    while todo:
        for j in adj[todo.pop()]:
            if j not in seen:
                seen.add(j)
                todo.append(j)
    return seen == supp


def orbit_roots(n, edges, loops, box, slack=6):
    """Positive roots ``<= box`` by closing simple roots and the fundamental set under reflections.

    Orbits are explored inside ``[-slack, max(box) + slack]`` which contains every
    vector on a monotone reflection path to a root in the box.
    """
    C = _cartan(n, edges, loops)
    loopfree = [loops.get(i, 0) == 0 for i in range(n)]
    lo, hi = -slack, max(box) + slack

    def pair(v, i):
        return sum(C[i][j] * v[j] for j in range(n))

    def close(seeds):
        seen = set(seeds)
        todo = deque(seeds)
        while todo:
            v = todo.popleft()
            for i in range(n):
                if not loopfree[i]:
                    continue
                w = list(v)
                w[i] -= pair(v, i)
                w = tuple(w)
                if w not in seen and all(lo <= x <= hi for x in w):
                    seen.add(w)
                    todo.append(w)
        return seen

    simples = [tuple(int(j == i) for j in range(n)) for i in range(n) if loopfree[i]]
    fundamental = [
        v
        for v in product(*(range(b + 1) for b in box))
        if any(v) and _connected(v, edges) and all(pair(v, i) <= 0 for i in range(n))
    ]
    in_box = lambda v: all(0 <= x <= b for x, b in zip(v, box)) and any(v)
    real = {v for v in close(simples) if in_box(v)}
    imaginary = {v for v in close(fundamental) if in_box(v)}
    return real, imaginary


# -- decompositions by multiset enumeration ----------------------------------------


def best_multiset(alpha, parts):
    """Max ``sum p`` over multisets of two or more ``(beta, p)`` summing to alpha."""
    parts = sorted(parts)
    best = None

    def go(start, rest, count, total):
        nonlocal best
        if not any(rest):
            if count >= 2 and (best is None or total > best):
                best = total
            return
        for k in range(start, len(parts)):
            beta, p = parts[k]
            if all(b <= r for b, r in zip(beta, rest)):
                go(k, tuple(r - b for r, b in zip(rest, beta)), count + 1, total + p)

    go(0, tuple(alpha), 0, 0)
    return best

