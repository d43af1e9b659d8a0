"""Dense exact matrices over ``Q(zeta_N)`` and Gaussian elimination."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import IncompatibleConductor, ShapeMismatch, SingularMatrix
from .cyclotomic import CycScalar


def _as_scalar(x, conductor: int) -> CycScalar:
    if isinstance(x, CycScalar):
        if x.conductor != conductor:
            raise IncompatibleConductor(f"entry has conductor {x.conductor}, expected {conductor}")
        return x
    return CycScalar.from_rational(x, conductor)


class CycMatrix:
    """Immutable ``rows x cols`` matrix; every entry lives in ``Q(zeta_N)``."""

    __slots__ = ("rows", "cols", "conductor", "data")

    def __init__(self, rows: int, cols: int, data: Sequence[Sequence], conductor: int = 1):
        self.rows = rows
        self.cols = cols
        self.conductor = conductor
        self.data = tuple(tuple(_as_scalar(x, conductor) for x in row) for row in data)
        if len(self.data) != rows or any(len(r) != cols for r in self.data):
            raise ShapeMismatch(f"data does not have shape {rows}x{cols}")

    @classmethod
    def _raw(cls, rows, cols, data, conductor) -> CycMatrix:
        m = object.__new__(cls)
        m.rows, m.cols, m.conductor = rows, cols, conductor
        m.data = data
        return m

    # -- constructors ---------------------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], conductor: int = 1) -> CycMatrix:
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, rows, conductor)

    @classmethod
    def zeros(cls, rows: int, cols: int, conductor: int = 1) -> CycMatrix:
        z = CycScalar.zero(conductor)
        return cls._raw(rows, cols, tuple((z,) * cols for _ in range(rows)), conductor)

    @classmethod
    def identity(cls, n: int, conductor: int = 1) -> CycMatrix:
        return cls.scalar(n, CycScalar.one(conductor))

    @classmethod
    def scalar(cls, n: int, value, conductor: int | None = None) -> CycMatrix:
        if conductor is None:
            conductor = value.conductor if isinstance(value, CycScalar) else 1
        v = _as_scalar(value, conductor)
        z = CycScalar.zero(conductor)
        return cls._raw(
            n, n, tuple(tuple(v if i == j else z for j in range(n)) for i in range(n)), conductor
        )

    @classmethod
    def diagonal(cls, values: Sequence, conductor: int = 1) -> CycMatrix:
        n = len(values)
        z = CycScalar.zero(conductor)
        vals = [_as_scalar(v, conductor) for v in values]
        return cls._raw(
            n, n, tuple(tuple(vals[i] if i == j else z for j in range(n)) for i in range(n)), conductor
        )

    @classmethod
    def hstack(cls, blocks: Sequence[CycMatrix], rows: int, conductor: int) -> CycMatrix:
        for b in blocks:
            if b.rows != rows:
                raise ShapeMismatch("hstack blocks must share a row count")
        data = tuple(sum((b.data[i] for b in blocks), ()) for i in range(rows))
        return cls._raw(rows, sum(b.cols for b in blocks), data, conductor)

    @classmethod
    def vstack(cls, blocks: Sequence[CycMatrix], cols: int, conductor: int) -> CycMatrix:
        for b in blocks:
            if b.cols != cols:
                raise ShapeMismatch("vstack blocks must share a column count")
        data = sum((b.data for b in blocks), ())
        return cls._raw(len(data), cols, data, conductor)

    @classmethod
    def block_diag(cls, blocks: Sequence[CycMatrix], conductor: int) -> CycMatrix:
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        z = CycScalar.zero(conductor)
        data = []
        c0 = 0
        for b in blocks:
            for r in b.data:
                data.append((z,) * c0 + r + (z,) * (cols - c0 - b.cols))
            c0 += b.cols
        return cls._raw(rows, cols, tuple(data), conductor)

    # -- access ---------------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> CycMatrix:
        rows, cols = list(rows), list(cols)
        data = tuple(tuple(self.data[i][j] for j in cols) for i in rows)
        return CycMatrix._raw(len(rows), len(cols), data, self.conductor)

    def row_block(self, start: int, stop: int) -> CycMatrix:
        return CycMatrix._raw(stop - start, self.cols, self.data[start:stop], self.conductor)

    def col_block(self, start: int, stop: int) -> CycMatrix:
        return CycMatrix._raw(
            self.rows, stop - start, tuple(r[start:stop] for r in self.data), self.conductor
        )

    @property
    def T(self) -> CycMatrix:
        data = tuple(tuple(self.data[i][j] for i in range(self.rows)) for j in range(self.cols))
        return CycMatrix._raw(self.cols, self.rows, data, self.conductor)

    def columns(self) -> list[CycMatrix]:
        return [self.col_block(j, j + 1) for j in range(self.cols)]

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.data for x in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_rational(self) -> bool:
        return all(x.is_rational() for r in self.data for x in r)

    # -- arithmetic -----------------------------------------------------------------
    def _check_same(self, other: CycMatrix):
        if self.shape != other.shape:
            raise ShapeMismatch(f"shapes {self.shape} and {other.shape} differ")
        if self.conductor != other.conductor:
            raise IncompatibleConductor("matrices over different conductors")

    def __add__(self, other: CycMatrix) -> CycMatrix:
        self._check_same(other)
        data = tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.data, other.data))
        return CycMatrix._raw(self.rows, self.cols, data, self.conductor)

    def __sub__(self, other: CycMatrix) -> CycMatrix:
        self._check_same(other)
        data = tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.data, other.data))
        return CycMatrix._raw(self.rows, self.cols, data, self.conductor)

    def __neg__(self) -> CycMatrix:
        return CycMatrix._raw(
            self.rows, self.cols, tuple(tuple(-a for a in r) for r in self.data), self.conductor
        )

    def __mul__(self, c) -> CycMatrix:
        """Scalar multiplication; use ``@`` for the matrix product."""
        if isinstance(c, CycMatrix):
            raise TypeError("use @ for matrix products")
        data = tuple(tuple(a * c for a in r) for r in self.data)
        return CycMatrix._raw(self.rows, self.cols, data, self.conductor)

    __rmul__ = __mul__

    def __matmul__(self, other: CycMatrix) -> CycMatrix:
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        if self.conductor != other.conductor:
            raise IncompatibleConductor("matrices over different conductors")
        zero = CycScalar.zero(self.conductor)
        ocols = list(zip(*other.data)) if other.rows else [()] * other.cols
        data = []
        for r in self.data:
            nz = [(k, a) for k, a in enumerate(r) if not a.is_zero()]
            row = []
            for col in ocols:
                acc = zero
                for k, a in nz:
                    b = col[k]
                    if not b.is_zero():
                        acc = acc + a * b
                row.append(acc)
            data.append(tuple(row))
        return CycMatrix._raw(self.rows, other.cols, tuple(data), self.conductor)

    def __pow__(self, e: int) -> CycMatrix:
        if not self.is_square():
            raise ShapeMismatch("power of a non-square matrix")
        base = self if e >= 0 else mat_inverse(self)
        e = abs(e)
        out = CycMatrix.identity(self.rows, self.conductor)
        while e:
            if e & 1:
                out = out @ base
            base = base @ base
            e >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, CycMatrix):
            return NotImplemented
        return self.shape == other.shape and self.conductor == other.conductor and self.data == other.data

    def __hash__(self):
        return hash((self.rows, self.cols, self.conductor, self.data))

    def __repr__(self):
        return f"CycMatrix({self.rows}x{self.cols}, N={self.conductor})"

    def __str__(self):
        if not self.rows or not self.cols:
            return f"[{self.rows}x{self.cols} empty]"
        cells = [[str(x) for x in r] for r in self.data]
        w = max(len(c) for r in cells for c in r)
        return "\n".join("[ " + "  ".join(c.rjust(w) for c in r) + " ]" for r in cells)

    # -- linear algebra shortcuts ---------------------------------------------------
    def rank(self) -> int:
        return mat_rank(self)

    def inverse(self) -> CycMatrix:
        return mat_inverse(self)

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "conductor": self.conductor,
            "entries": [[x.to_json() for x in r] for r in self.data],
        }

    @classmethod
    def from_json(cls, obj) -> CycMatrix:
        n = int(obj["conductor"])
        entries = [[_entry_from_json(x, n) for x in r] for r in obj["entries"]]
        return cls(int(obj["rows"]), int(obj["cols"]), entries, n)


def _entry_from_json(x, conductor: int) -> CycScalar:
    if isinstance(x, dict):
        s = CycScalar.from_json(x)
        if s.conductor != conductor:
            raise IncompatibleConductor(f"entry conductor {s.conductor} != matrix conductor {conductor}")
        return s
    if isinstance(x, list):
        return CycScalar(conductor, x)
    return CycScalar.from_rational(Fraction(x) if not isinstance(x, str) else Fraction(x), conductor)


# -- elimination -------------------------------------------------------------------


def rref(A: CycMatrix) -> tuple[list[list[CycScalar]], list[int]]:
    """Reduced row-echelon form and pivot columns.

    The pivot in each column is the first nonzero entry at or below the
    current row; pivot rows are normalised to a leading one.
    """
    M = [list(r) for r in A.data]
    pivots: list[int] = []
    r = 0
    for c in range(A.cols):
        if r == A.rows:
            break
        p = next((i for i in range(r, A.rows) if not M[i][c].is_zero()), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = M[r][c].inverse()
        M[r] = [x * inv for x in M[r]]
        for i in range(A.rows):
            if i != r and not M[i][c].is_zero():
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return M, pivots


def mat_rank(A: CycMatrix) -> int:
    return len(rref(A)[1])


def kernel_matrix(A: CycMatrix) -> CycMatrix:
    """Columns form the canonical kernel basis read off the reduced echelon form.

    Column ``f`` of the result has a one in free position ``f`` and zeros in
    every other free position.
    """
    R, pivots = rref(A)
    N = A.conductor
    free = [c for c in range(A.cols) if c not in set(pivots)]
    zero, one = CycScalar.zero(N), CycScalar.one(N)
    cols = []
    for f in free:
        v = [zero] * A.cols
        v[f] = one
        for i, pc in enumerate(pivots):
            v[pc] = -R[i][f]
        cols.append(v)
    data = tuple(tuple(cols[k][i] for k in range(len(free))) for i in range(A.cols))
    return CycMatrix._raw(A.cols, len(free), data, N)


def mat_kernel(A: CycMatrix) -> list[CycMatrix]:
    return kernel_matrix(A).columns()


def mat_inverse(A: CycMatrix) -> CycMatrix:
    if not A.is_square():
        raise ShapeMismatch("inverse of a non-square matrix")
    n = A.rows
    aug = CycMatrix.hstack([A, CycMatrix.identity(n, A.conductor)], n, A.conductor)
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix(f"matrix of size {n} has rank {sum(1 for p in pivots if p < n)}")
    return CycMatrix._raw(n, n, tuple(tuple(r[n:]) for r in R), A.conductor)


def is_invertible(A: CycMatrix) -> bool:
    return A.is_square() and mat_rank(A) == A.rows


def mat_solve(A: CycMatrix, B: CycMatrix) -> CycMatrix:
    """Some ``X`` with ``A @ X == B``; free variables are set to zero.

    Raises ``ValueError`` when the system is inconsistent.
    """
    if A.rows != B.rows:
        raise ShapeMismatch("solve needs matching row counts")
    aug = CycMatrix.hstack([A, B], A.rows, A.conductor)
    R, pivots = rref(aug)
    if any(p >= A.cols for p in pivots):
        raise ValueError("inconsistent linear system")
    zero = CycScalar.zero(A.conductor)
    X = [[zero] * B.cols for _ in range(A.cols)]
    for i, pc in enumerate(pivots):
        X[pc] = list(R[i][A.cols:])
    return CycMatrix._raw(A.cols, B.cols, tuple(tuple(r) for r in X), A.conductor)


def column_space_basis(A: CycMatrix) -> CycMatrix:
    """Basis of the column space in reduced echelon form (as columns)."""
    R, pivots = rref(A.T)
    rows = tuple(tuple(R[i]) for i in range(len(pivots)))
    return CycMatrix._raw(len(pivots), A.rows, rows, A.conductor).T


def mat_det(A: CycMatrix) -> CycScalar:
    if not A.is_square():
        raise ShapeMismatch("determinant of a non-square matrix")
    M = [list(r) for r in A.data]
    n = A.rows
    det = CycScalar.one(A.conductor)
    for c in range(n):
        p = next((i for i in range(c, n) if not M[i][c].is_zero()), None)
        if p is None:
            return CycScalar.zero(A.conductor)
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        det = det * M[c][c]
        inv = M[c][c].inverse()
        for i in range(c + 1, n):
            if not M[i][c].is_zero():
                f = M[i][c] * inv
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return det

