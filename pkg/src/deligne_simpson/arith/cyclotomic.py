"""Arithmetic in the cyclotomic field ``Q(zeta_N)``.

An element is stored as its coefficient vector in the power basis
``1, z, ..., z^(phi(N)-1)`` where ``z = exp(2 pi i / N)``; reduction modulo the
cyclotomic polynomial makes the representation canonical.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from ..errors import IncompatibleConductor
from .units import RationalLike, UnitScalar, format_rational, rational


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _poly_exact_div(num: Sequence[int], den: Sequence[int]) -> list[int]:
    # both monic integer polynomials, low degree first; division must be exact
    num = list(num)
    dn, dd = len(num) - 1, len(den) - 1
    out = [0] * (dn - dd + 1)
    for k in range(dn - dd, -1, -1):
        c = num[k + dd]
        out[k] = c
        if c:
            for i, b in enumerate(den):
                num[k + i] -= c * b
    if any(num[:dd]):
        raise ArithmeticError("polynomial division left a remainder")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of the ``n``-th cyclotomic polynomial, low degree first.

    Obtained by dividing ``x^n - 1`` by the cyclotomic polynomials of the proper
    divisors of ``n``.
    """
    if n < 1:
        raise ValueError("cyclotomic polynomial needs n >= 1")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        poly = _poly_exact_div(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


class _Field:
    """Per-conductor data: degree and the reduction table for ``z^k``."""

    def __init__(self, n: int):
        self.n = n
        poly = cyclotomic_polynomial(n)
        self.degree = d = len(poly) - 1
        # powers[k] = z^k reduced, for 0 <= k < max(n, 2d - 1)
        powers = []
        cur = [0] * d
        cur[0] = 1
        for _ in range(max(n, 2 * d - 1)):
            powers.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for i in range(d):
                    cur[i] -= top * poly[i]
        self.powers = powers
        self.poly = poly

    def zeta_power(self, k: int) -> tuple[int, ...]:
        return self.powers[k % self.n]


@lru_cache(maxsize=None)
def _field(n: int) -> _Field:
    return _Field(n)


_ZERO = Fraction(0)
_ONE = Fraction(1)


class CycScalar:
    """An element of ``Q(zeta_N)``; immutable."""

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs: Sequence[RationalLike]):
        f = _field(conductor)
        cs = tuple(rational(c) for c in coeffs)
        if len(cs) != f.degree:
            cs = _reduce_long(conductor, cs)
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, name, value):
        raise AttributeError("CycScalar is immutable")

    @classmethod
    def _raw(cls, conductor: int, coeffs: tuple[Fraction, ...]) -> CycScalar:
        obj = object.__new__(cls)
        object.__setattr__(obj, "conductor", conductor)
        object.__setattr__(obj, "coeffs", coeffs)
        return obj

    @classmethod
    def from_rational(cls, x: RationalLike, conductor: int = 1) -> CycScalar:
        d = _field(conductor).degree
        return cls._raw(conductor, (rational(x),) + (_ZERO,) * (d - 1))

    @classmethod
    def zero(cls, conductor: int = 1) -> CycScalar:
        return cls.from_rational(0, conductor)

    @classmethod
    def one(cls, conductor: int = 1) -> CycScalar:
        return cls.from_rational(1, conductor)

    @classmethod
    def zeta(cls, conductor: int, k: int = 1) -> CycScalar:
        return cls._raw(conductor, tuple(Fraction(c) for c in _field(conductor).zeta_power(k)))

    # -- predicates -----------------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- arithmetic -----------------------------------------------------------------
    def _coerce(self, other) -> CycScalar:
        if isinstance(other, CycScalar):
            if other.conductor != self.conductor:
                raise IncompatibleConductor(
                    f"mixing conductors {self.conductor} and {other.conductor}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return CycScalar.from_rational(other, self.conductor)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycScalar._raw(self.conductor, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycScalar._raw(self.conductor, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycScalar._raw(self.conductor, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycScalar._raw(self.conductor, tuple(a * other for a in self.coeffs))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self.coeffs, o.coeffs
        d = len(a)
        if d == 1:
            return CycScalar._raw(self.conductor, (a[0] * b[0],))
        if o.is_rational():
            return self * b[0]
        if self.is_rational():
            return o * a[0]
        prod = [_ZERO] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return CycScalar._raw(self.conductor, _fold(self.conductor, prod))

    __rmul__ = __mul__

    def inverse(self) -> CycScalar:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return CycScalar.from_rational(1 / self.coeffs[0], self.conductor)
        return CycScalar._raw(self.conductor, _poly_inverse(self.conductor, self.coeffs))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int) -> CycScalar:
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        out = CycScalar.one(self.conductor)
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # -- comparison / display -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CycScalar):
            return NotImplemented
        return self.conductor == other.conductor and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.conductor, self.coeffs))

    def __repr__(self):
        return f"CycScalar({self.conductor}, {[format_rational(c) for c in self.coeffs]})"

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                mono = "z" if k == 1 else f"z^{k}"
                terms.append(mono if c == 1 else f"-{mono}" if c == -1 else f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    def to_json(self) -> dict:
        return {"conductor": self.conductor, "coeffs": [format_rational(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> CycScalar:
        return cls(int(obj["conductor"]), [rational(c) for c in obj["coeffs"]])


def _fold(n: int, prod: Sequence[Fraction]) -> tuple[Fraction, ...]:
    f = _field(n)
    d = f.degree
    out = list(prod[:d]) + [_ZERO] * max(0, d - len(prod))
    for k in range(d, len(prod)):
        c = prod[k]
        if c:
            for i, t in enumerate(f.powers[k]):
                if t:
                    out[i] += c * t
    return tuple(out)


def _reduce_long(n: int, coeffs: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    f = _field(n)
    d = f.degree
    if len(coeffs) < d:
        return coeffs + (_ZERO,) * (d - len(coeffs))
    out = [_ZERO] * d
    for k, c in enumerate(coeffs):
        if c:
            for i, t in enumerate(f.zeta_power(k)):
                if t:
                    out[i] += c * t
    return tuple(out)


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    q = [_ZERO] * max(1, len(a) - len(b) + 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for i, x in enumerate(b):
            a[shift + i] -= c * x
        _poly_trim(a)
    return q, a


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else _ZERO) - (b[i] if i < len(b) else _ZERO) for i in range(n)]
    return _poly_trim(out)


def _poly_inverse(n: int, coeffs: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    # extended Euclid: s * a + t * Phi = g (a nonzero constant)
    phi = [Fraction(c) for c in _field(n).poly]
    r0, r1 = phi, _poly_trim(list(coeffs))
    s0, s1 = [], [_ONE]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    g = r1[0]
    inv = [c / g for c in s1]
    return _reduce_long(n, tuple(inv))


def embed(u: UnitScalar, conductor: int) -> CycScalar:
    """Image of a unit scalar in ``Q(zeta_N)``.

    The phase denominator must divide ``N``, or ``2N`` when ``N`` is odd since
    then ``zeta_2N = -zeta_N ** ((N + 1) / 2)``.
    """
    d, N = u.phase.denominator, conductor
    if N % d == 0:
        return CycScalar.zeta(N, u.phase.numerator * (N // d)) * u.mag
    if N % 2 and (2 * N) % d == 0:
        a = u.phase.numerator * (2 * N // d)
        sign = -1 if a % 2 else 1
        return CycScalar.zeta(N, a * (N + 1) // 2) * (u.mag * sign)
    raise IncompatibleConductor(f"phase {u.phase} does not embed into Q(zeta_{N})")
