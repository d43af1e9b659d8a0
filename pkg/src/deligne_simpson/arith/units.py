"""Rationals and the multiplicative group of unit scalars ``r * exp(2 pi i t)``.

Rationals are :class:`fractions.Fraction` throughout; the helpers here only
cover parsing and the canonical ``"p/q"`` text form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Union

RationalLike = Union[int, str, Fraction]


def rational(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if "." in s or "e" in s.lower():
            raise ValueError(f"rational {x!r} must be written as p/q")
        return Fraction(s)
    raise TypeError(f"cannot interpret {x!r} as a rational")


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _frac_part(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True, order=False)
class UnitScalar:
    """The complex number ``mag * exp(2 pi i phase)``.

    ``mag`` is a positive rational and ``phase`` is a rational reduced into
    ``[0, 1)``.  These form a dense subgroup of the nonzero complex numbers in
    which equality and torsion are decidable exactly.
    """

    mag: Fraction
    phase: Fraction = Fraction(0)

    def __post_init__(self):
        mag = rational(self.mag)
        phase = _frac_part(rational(self.phase))
        if mag <= 0:
            raise ValueError(f"UnitScalar magnitude must be positive, got {mag}")
        object.__setattr__(self, "mag", mag)
        object.__setattr__(self, "phase", phase)

    @classmethod
    def one(cls) -> UnitScalar:
        return cls(Fraction(1), Fraction(0))

    @classmethod
    def root_of_unity(cls, num: int, den: int) -> UnitScalar:
        """``exp(2 pi i num/den)``."""
        return cls(Fraction(1), Fraction(num, den))

    @classmethod
    def from_rational(cls, x: RationalLike) -> UnitScalar:
        x = rational(x)
        if x == 0:
            raise ValueError("zero is not a unit")
        return cls(abs(x), Fraction(0) if x > 0 else Fraction(1, 2))

    def __mul__(self, other: UnitScalar) -> UnitScalar:
        if not isinstance(other, UnitScalar):
            return NotImplemented
        return UnitScalar(self.mag * other.mag, self.phase + other.phase)

    def __truediv__(self, other: UnitScalar) -> UnitScalar:
        if not isinstance(other, UnitScalar):
            return NotImplemented
        return self * other.inverse()

    def inverse(self) -> UnitScalar:
        return UnitScalar(1 / self.mag, -self.phase)

    def __pow__(self, e: int) -> UnitScalar:
        return unit_pow(self, e)

    @property
    def is_one(self) -> bool:
        return self.mag == 1 and self.phase == 0

    @property
    def denominator(self) -> int:
        """Least ``N`` such that this scalar embeds into ``Q(zeta_N)``."""
        return self.phase.denominator

    def sort_key(self) -> tuple[Fraction, Fraction]:
        return (self.phase, self.mag)

    def __str__(self) -> str:
        if self.phase == 0:
            return str(self.mag)
        if self.mag == 1:
            return f"e(2pi i*{self.phase})"
        return f"{self.mag}*e(2pi i*{self.phase})"

    def to_json(self) -> dict:
        return {"mag": format_rational(self.mag), "phase": format_rational(self.phase)}

    @classmethod
    def from_json(cls, obj) -> UnitScalar:
        return cls(rational(obj["mag"]), rational(obj.get("phase", "0")))


def unit_pow(u: UnitScalar, e: int) -> UnitScalar:
    if e >= 0:
        return UnitScalar(u.mag**e, u.phase * e)
    return UnitScalar(Fraction(1) / u.mag ** (-e), u.phase * e)


def unit_product(factors: Iterable[UnitScalar]) -> UnitScalar:
    mag = Fraction(1)
    phase = Fraction(0)
    for f in factors:
        mag *= f.mag
        phase += f.phase
    return UnitScalar(mag, phase)


def common_conductor(scalars: Iterable[UnitScalar]) -> int:
    """Least ``N`` with every phase in ``Q(zeta_N)``; ``N = 2 mod 4`` never occurs."""
    n = 1
    for s in scalars:
        n = lcm(n, s.denominator)
    return n // 2 if n % 4 == 2 else n
