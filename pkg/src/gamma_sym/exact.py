"""Exact rational linear algebra: square matrices, linear solves, inertia.

Rationals are ``fractions.Fraction``. An ``ExactMatrix`` stores an integer
numerator array together with one positive common denominator, so products
of the small integer matrices that dominate this package run through numpy
integer kernels instead of per-entry Fraction arithmetic.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

Rational = Fraction

# int64 products are used only when every partial sum is provably below this.
_INT64_SAFE = 1 << 62
_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


class DimensionError(ValueError):
    """Operands have incompatible sizes."""


class DomainError(ValueError):
    """An operand lies outside the domain an operation is defined on."""


def parse_rational(text) -> Fraction:
    """Parse an integer literal or ``"p/q"``; decimals are rejected."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, (int, np.integer)):
        return Fraction(int(text))
    m = _RATIONAL_RE.match(str(text))
    if not m:
        raise ValueError(f"not an exact rational literal: {text!r}")
    num, den = int(m.group(1)), int(m.group(2) or 1)
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def _maxabs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    if a.dtype == object:
        return max(abs(int(v)) for v in a.flat)
    return int(np.abs(a).max())


def _compact(a: np.ndarray) -> np.ndarray:
    """int64 when every entry is small, Python-int object array otherwise."""
    if a.dtype != object:
        return a
    if _maxabs(a) < (1 << 31):
        return a.astype(np.int64)
    return a


def _widen(a: np.ndarray) -> np.ndarray:
    return a if a.dtype == object else a.astype(object)


def _intmatmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    inner = a.shape[-1] if a.ndim else 1
    if a.dtype != object and b.dtype != object:
        if _maxabs(a) * _maxabs(b) * max(inner, 1) < _INT64_SAFE:
            return a @ b
    return _compact(_widen(a) @ _widen(b))


def _array_gcd(a: np.ndarray, start: int = 0) -> int:
    if a.size == 0:
        return start
    if a.dtype == object:
        return reduce(math.gcd, (int(v) for v in a.flat), start)
    return math.gcd(int(np.gcd.reduce(np.abs(a).ravel())), start)


def fractions_to_scaled(values) -> tuple[np.ndarray, int]:
    """Return ``(num, den)`` with ``values == num / den`` entrywise."""
    arr = np.asarray(values, dtype=object)
    flat = [_to_fraction(v) for v in arr.flat]
    den = reduce(math.lcm, (f.denominator for f in flat), 1)
    num = np.array([f.numerator * (den // f.denominator) for f in flat], dtype=object)
    return _compact(num.reshape(arr.shape)), den


class ExactMatrix:
    """Immutable dense square matrix over the rationals.

    ``num / den`` is kept in lowest terms (gcd of all numerators and the
    denominator is 1; the zero matrix has ``den == 1``), so equality is plain
    comparison of the stored integers.
    """

    __slots__ = ("_num", "_den")

    def __init__(self, entries):
        if isinstance(entries, ExactMatrix):
            num, den = entries._num, entries._den
        else:
            arr = np.asarray(entries, dtype=object)
            if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
                raise DimensionError(f"ExactMatrix must be square and nonempty, got shape {arr.shape}")
            num, den = fractions_to_scaled(arr)
        self._set(num, den)

    def _set(self, num, den):
        num = _compact(np.asarray(num))
        if num.dtype != object and num.dtype != np.int64:
            num = num.astype(np.int64)
        if den < 0:
            num, den = -num, -den
        g = _array_gcd(num, den)
        if g == 0:  # zero matrix
            g = den
        if g > 1:
            num = num // g
            den //= g
        num = _compact(num)
        num.setflags(write=False)
        self._num = num
        self._den = den

    @classmethod
    def from_scaled(cls, num, den: int = 1) -> "ExactMatrix":
        num = np.asarray(num)
        if num.ndim != 2 or num.shape[0] != num.shape[1]:
            raise DimensionError(f"ExactMatrix must be square, got shape {num.shape}")
        obj = cls.__new__(cls)
        obj._set(num.copy(), int(den))
        return obj

    @classmethod
    def zeros(cls, n: int) -> "ExactMatrix":
        return cls.from_scaled(np.zeros((n, n), dtype=np.int64))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls.from_scaled(np.eye(n, dtype=np.int64))

    @classmethod
    def elementary(cls, n: int, i: int, j: int) -> "ExactMatrix":
        a = np.zeros((n, n), dtype=np.int64)
        a[i, j] = 1
        return cls.from_scaled(a)

    # -- accessors ---------------------------------------------------------
    @property
    def size(self) -> int:
        return self._num.shape[0]

    @property
    def num(self) -> np.ndarray:
        return self._num

    @property
    def den(self) -> int:
        return self._den

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return Fraction(int(self._num[i, j]), self._den)

    def to_fractions(self) -> np.ndarray:
        out = np.empty(self._num.shape, dtype=object)
        for idx, v in np.ndenumerate(self._num):
            out[idx] = Fraction(int(v), self._den)
        return out

    def to_float(self) -> np.ndarray:
        return self._num.astype(float) / self._den

    def is_integral(self) -> bool:
        return self._den == 1

    def nonzero_entries(self):
        """Yield ``(i, j, Fraction)`` for nonzero entries in row-major order."""
        for i, j in zip(*np.nonzero(self._num)):
            yield int(i), int(j), Fraction(int(self._num[i, j]), self._den)

    # -- predicates --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self._num.any()

    def is_antisymmetric(self) -> bool:
        return bool(np.array_equal(self._num, -self._num.T))

    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self._num, self._num.T))

    def max_abs(self) -> Fraction:
        return Fraction(_maxabs(self._num), self._den)

    # -- arithmetic --------------------------------------------------------
    def _check(self, other: "ExactMatrix"):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if other.size != self.size:
            raise DimensionError(f"size mismatch: {self.size} vs {other.size}")
        return None

    def _combine(self, other: "ExactMatrix", sign: int) -> "ExactMatrix":
        den = math.lcm(self._den, other._den)
        a = self._num * (den // self._den) if den != self._den else self._num
        b = other._num * (den // other._den) if den != other._den else other._num
        if a.dtype != object and b.dtype != object and _maxabs(a) + _maxabs(b) < _INT64_SAFE:
            out = a + b if sign > 0 else a - b
        else:
            out = _widen(a) + _widen(b) if sign > 0 else _widen(a) - _widen(b)
        return ExactMatrix.from_scaled(out, den)

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self._combine(other, 1)

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self._combine(other, -1)

    def __neg__(self):
        return ExactMatrix.from_scaled(-self._num, self._den)

    def __matmul__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return ExactMatrix.from_scaled(_intmatmul(self._num, other._num), self._den * other._den)

    def scale(self, c) -> "ExactMatrix":
        c = _to_fraction(c)
        num = _widen(self._num) * c.numerator if c.numerator else np.zeros_like(self._num)
        return ExactMatrix.from_scaled(num, self._den * c.denominator)

    def __mul__(self, c):
        if isinstance(c, ExactMatrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    @property
    def T(self) -> "ExactMatrix":
        return ExactMatrix.from_scaled(self._num.T, self._den)

    def trace(self) -> Fraction:
        return Fraction(int(np.trace(_widen(self._num))), self._den)

    def trace_product(self, other: "ExactMatrix") -> Fraction:
        """``trace(self @ other)`` without forming the product."""
        self._check(other)
        s = np.sum(_widen(self._num) * _widen(other._num).T)
        return Fraction(int(s), self._den * other._den)

    def kron(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix.from_scaled(np.kron(_widen(self._num), _widen(other._num)), self._den * other._den)

    def inverse(self) -> "ExactMatrix":
        n = self.size
        aug = Echelon(2 * n)
        for i in range(n):
            row = {j: Fraction(int(v), self._den) for j, v in enumerate(self._num[i]) if v}
            row[n + i] = Fraction(1)
            aug.add(row)
        red = aug.reduced()
        if any(p not in red for p in range(n)):
            raise DomainError("matrix is singular")
        return ExactMatrix([[red[p].get(n + j, 0) for j in range(n)] for p in range(n)])

    def submatrix(self, rows: Sequence[int]) -> "ExactMatrix":
        """Principal submatrix on the given row/column indices."""
        idx = np.asarray(rows, dtype=int)
        return ExactMatrix.from_scaled(self._num[np.ix_(idx, idx)], self._den)

    # -- identity ----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.size == other.size and self._den == other._den and np.array_equal(self._num, other._num)

    def __hash__(self):
        return hash((self.size, self._den, tuple(int(v) for v in self._num.flat)))

    def __repr__(self):
        rows = ["[" + ", ".join(format_rational(Fraction(int(v), self._den)) for v in row) + "]" for row in self._num]
        return f"ExactMatrix([{', '.join(rows)}])"


def block_matrix(blocks: Sequence[Sequence[ExactMatrix]]) -> ExactMatrix:
    den = reduce(math.lcm, (b.den for row in blocks for b in row), 1)
    rows = [np.hstack([_widen(b.num) * (den // b.den) for b in row]) for row in blocks]
    return ExactMatrix.from_scaled(np.vstack(rows), den)


# ---------------------------------------------------------------------------
# Sparse exact Gaussian elimination
# ---------------------------------------------------------------------------

@dataclass
class Echelon:
    """Incrementally built row-echelon form over the rationals.

    Rows are sparse ``{column: Fraction}`` dicts normalised to a leading 1.
    Rows are added one at a time, which keeps the working set at rank size
    even when far more (redundant) equations are fed in.
    """

    ncols: int
    rows: dict = field(default_factory=dict)  # pivot column -> row

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, row: dict) -> dict:
        row = {c: v for c, v in row.items() if v}
        # pivot rows only reach rightwards, so clearing the smallest pivot
        # column first never reintroduces an already-cleared one
        while True:
            hits = [c for c in row if c in self.rows]
            if not hits:
                return row
            c = min(hits)
            _axpy(row, -row[c], self.rows[c])

    def add(self, row) -> bool:
        """Insert ``row``; return True when it was independent."""
        if not isinstance(row, dict):
            row = {i: _to_fraction(v) for i, v in enumerate(row) if v}
        r = self.reduce(row)
        if not r:
            return False
        lead = min(r)
        inv = 1 / r[lead]
        self.rows[lead] = {c: v * inv for c, v in r.items()}
        return True

    def reduced(self) -> dict:
        """Fully reduced rows (each pivot column zero in every other row)."""
        out = {}
        for p in sorted(self.rows, reverse=True):
            row = dict(self.rows[p])
            for c in sorted(c for c in row if c != p and c in out):
                f = row.get(c)
                if f:
                    _axpy(row, -f, out[c])
            out[p] = row
        return dict(sorted(out.items()))

    def nullspace(self) -> list[list[Fraction]]:
        red = self.reduced()
        free = [c for c in range(self.ncols) if c not in red]
        basis = []
        for fcol in free:
            v = [Fraction(0)] * self.ncols
            v[fcol] = Fraction(1)
            for p, row in red.items():
                v[p] = -row.get(fcol, Fraction(0))
            basis.append(v)
        return basis


def _axpy(row: dict, f: Fraction, other: dict) -> None:
    """row += f * other, dropping entries that cancel."""
    for c, v in other.items():
        nv = row.get(c, 0) + f * v
        if nv:
            row[c] = nv
        else:
            row.pop(c, None)


def rank_of(vectors: Iterable, ncols: int) -> int:
    e = Echelon(ncols)
    for v in vectors:
        e.add(v)
    return e.rank


@dataclass(frozen=True)
class SolutionSet:
    """Solutions of ``A x = b``: ``particular + span(nullspace)``."""

    consistent: bool
    particular: tuple | None
    nullspace: tuple

    @property
    def dimension(self) -> int:
        return len(self.nullspace) if self.consistent else -1


def solve_linear(system, rhs) -> SolutionSet:
    """Solve ``system @ x = rhs`` exactly by reduced row echelon form.

    ``system`` is an m x n nested sequence of rationals, ``rhs`` has length m.
    An inconsistent system yields ``SolutionSet(consistent=False, ...)``.
    """
    rows = [list(r) for r in system]
    rhs = list(rhs)
    if len(rows) != len(rhs):
        raise DimensionError(f"{len(rows)} equations but {len(rhs)} right-hand sides")
    n = len(rows[0]) if rows else 0
    if any(len(r) != n for r in rows):
        raise DimensionError("ragged coefficient matrix")
    aug = Echelon(n + 1)
    for r, b in zip(rows, rhs):
        d = {i: _to_fraction(v) for i, v in enumerate(r) if v}
        b = _to_fraction(b)
        if b:
            d[n] = b
        aug.add(d)
    if n in aug.rows:
        return SolutionSet(False, None, ())
    red = aug.reduced()
    x = [Fraction(0)] * n
    for p, row in red.items():
        x[p] = row.get(n, Fraction(0))
    coeff = Echelon(n, {p: {c: v for c, v in row.items() if c < n} for p, row in aug.rows.items()})
    null = tuple(tuple(v) for v in coeff.nullspace())
    return SolutionSet(True, tuple(x), null)


def nullspace(system, ncols: int | None = None) -> list[list[Fraction]]:
    rows = list(system)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    e = Echelon(ncols)
    for r in rows:
        e.add(r)
    return e.nullspace()


# ---------------------------------------------------------------------------
# Inertia
# ---------------------------------------------------------------------------

def exact_inertia(gram) -> tuple[int, int, int]:
    """Signature ``(p, q, z)`` of a symmetric rational matrix.

    Symmetric Gaussian elimination (congruence). A nonzero diagonal pivot is
    taken when available; otherwise a pair ``i, j`` with ``a_ii = a_jj = 0``
    and ``a_ij != 0`` gives a hyperbolic 2x2 block contributing ``(1, 1)``.
    """
    if isinstance(gram, ExactMatrix):
        if not gram.is_symmetric():
            raise DomainError("inertia requires a symmetric matrix")
        a = [[Fraction(int(v), gram.den) if v else Fraction(0) for v in row] for row in gram.num]
    else:
        a = [[_to_fraction(v) for v in row] for row in gram]
    n = len(a)
    active = list(range(n))
    p = q = 0
    while active:
        piv = next((i for i in active if a[i][i]), None)
        if piv is not None:
            d = a[piv][piv]
            if d > 0:
                p += 1
            else:
                q += 1
            active.remove(piv)
            col = [(i, a[i][piv]) for i in active if a[i][piv]]
            for i, ai in col:
                f = ai / d
                rowi, rowp = a[i], a[piv]
                for j, _ in col:
                    rowi[j] -= f * rowp[j]
            continue
        pair = next(((i, j) for i in active for j in active if j > i and a[i][j]), None)
        if pair is None:
            break
        i, j = pair
        # pivot on e_i + e_j, whose diagonal entry 2 a_ij is nonzero
        for r in range(n):
            a[r][i] += a[r][j]
        for c in range(n):
            a[i][c] += a[j][c]
    return p, q, n - p - q
