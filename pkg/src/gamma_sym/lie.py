"""Matrix Lie algebras under the commutator: bases, brackets, Killing form."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exact import (
    DimensionError,
    DomainError,
    Echelon,
    ExactMatrix,
    _intmatmul,
    _widen,
    fractions_to_scaled,
)


class ClosureError(ValueError):
    """A bracket of two basis elements left the span of the basis."""

    def __init__(self, i, j, labels=None):
        self.pair = (i, j)
        names = f" ({labels[i]}, {labels[j]})" if labels else ""
        super().__init__(f"bracket of basis elements {i}, {j}{names} is not in the span")


def _flat(m: ExactMatrix) -> dict:
    n = m.size
    return {i * n + j: v for i, j, v in m.nonzero_entries()}


class LieBasis:
    """Ordered, linearly independent list of N x N matrices with labels.

    ``coordinates`` expresses a matrix in this basis exactly, via a one-off
    exact inverse of the basis restricted to a set of pivot entries.
    """

    def __init__(self, elements: Sequence[ExactMatrix], labels: Sequence[str] | None = None,
                 ambient_size: int | None = None, antisymmetric: bool = True):
        self.elements = tuple(elements)
        if ambient_size is None:
            if not self.elements:
                raise ValueError("ambient_size is required for an empty basis")
            ambient_size = self.elements[0].size
        self.ambient_size = ambient_size
        self.labels = tuple(labels) if labels is not None else tuple(f"e{i}" for i in range(len(self.elements)))
        if len(self.labels) != len(self.elements):
            raise ValueError("one label per element required")
        for e in self.elements:
            if e.size != ambient_size:
                raise DimensionError(f"element of size {e.size} in a basis of {ambient_size}x{ambient_size} matrices")
            if antisymmetric and not e.is_antisymmetric():
                raise DomainError("basis element is not antisymmetric")
        self._coord = None
        self._setup_coordinates()

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    @property
    def dimension(self) -> int:
        return len(self.elements)

    def _setup_coordinates(self):
        n, N = len(self.elements), self.ambient_size
        ech = Echelon(N * N)
        flats = [_flat(e) for e in self.elements]
        for f in flats:
            if not ech.add(dict(f)):
                raise ValueError("basis elements are linearly dependent")
        pivots = sorted(ech.rows)
        pos = {p: t for t, p in enumerate(pivots)}
        # Gauss-Jordan on [B[:, P] | I] yields the inverse in the right half
        aug = Echelon(2 * n)
        for r, f in enumerate(flats):
            row = {pos[c]: v for c, v in f.items() if c in pos}
            row[n + r] = Fraction(1)
            aug.add(row)
        red = aug.reduced()
        inv = [[red[p].get(n + c, Fraction(0)) for c in range(n)] for p in range(n)]
        inv_num, inv_den = fractions_to_scaled(inv) if n else (np.zeros((0, 0), dtype=np.int64), 1)
        dense = np.zeros((n, N * N), dtype=object)
        for r, f in enumerate(flats):
            for c, v in f.items():
                dense[r, c] = v
        b_num, b_den = fractions_to_scaled(dense) if n else (np.zeros((0, N * N), dtype=np.int64), 1)
        self._coord = (np.asarray(pivots, dtype=int), inv_num, inv_den, b_num, b_den)

    def coordinates(self, m: ExactMatrix):
        """Exact coordinates of ``m`` as a tuple of Fractions, or None if outside the span."""
        num, den = self.scaled_coordinates(m)
        if num is None:
            return None
        return tuple(Fraction(int(v), den) for v in num)

    def scaled_coordinates(self, m: ExactMatrix):
        """``(c_num, c_den)`` with coordinates ``c_num / c_den``; ``(None, None)`` if outside the span."""
        if m.size != self.ambient_size:
            raise DimensionError(f"matrix of size {m.size} vs basis of size {self.ambient_size}")
        pivots, inv_num, inv_den, b_num, b_den = self._coord
        flat = m.num.reshape(-1)
        if not len(pivots):
            return (np.zeros(0, dtype=np.int64), 1) if not flat.any() else (None, None)
        c_num = _intmatmul(flat[pivots][None, :], inv_num)[0]
        recon = _intmatmul(c_num[None, :], b_num)[0]
        if not np.array_equal(_widen(recon), _widen(flat) * (inv_den * b_den)):
            return None, None
        den = m.den * inv_den
        g = math.gcd(int(np.gcd.reduce(np.abs(_widen(c_num)))) if c_num.size else 0, den)
        if g > 1:
            c_num = c_num // g
            den //= g
        return c_num, den

    def combination(self, coeffs) -> ExactMatrix:
        """``sum_i coeffs[i] * element_i``."""
        num, den = fractions_to_scaled(list(coeffs))
        _, _, _, b_num, b_den = self._coord
        flat = _intmatmul(np.asarray(num).reshape(1, -1), b_num)[0]
        N = self.ambient_size
        return ExactMatrix.from_scaled(np.asarray(flat).reshape(N, N), den * b_den)

    def contains(self, m: ExactMatrix) -> bool:
        return self.scaled_coordinates(m)[0] is not None


def so_basis(N: int) -> LieBasis:
    """Standard basis ``E_ij - E_ji`` (i < j, lexicographic) of so(N)."""
    if N < 2:
        raise ValueError(f"so(N) needs N >= 2, got {N}")
    elems, labels = [], []
    for i in range(N):
        for j in range(i + 1, N):
            a = np.zeros((N, N), dtype=np.int64)
            a[i, j], a[j, i] = 1, -1
            elems.append(ExactMatrix.from_scaled(a))
            labels.append(f"E{i + 1},{j + 1}")
    return LieBasis(elems, labels, N)


def bracket(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    if a.size != b.size:
        raise DimensionError(f"size mismatch: {a.size} vs {b.size}")
    return a @ b - b @ a


def killing_form(x: ExactMatrix, y: ExactMatrix) -> Fraction:
    """Killing form of so(N): ``(N - 2) trace(x y)``."""
    if x.size != y.size:
        raise DimensionError(f"size mismatch: {x.size} vs {y.size}")
    if x.size < 3:
        raise DomainError("Killing form of so(N) is used for N >= 3")
    if not (x.is_antisymmetric() and y.is_antisymmetric()):
        raise DomainError("Killing form of so(N) takes antisymmetric matrices")
    return (x.size - 2) * x.trace_product(y)


def ad_matrix(x: ExactMatrix, basis: LieBasis) -> np.ndarray:
    """Matrix of ``ad x`` on span(basis); column j holds the coordinates of [x, e_j]."""
    n = len(basis)
    out = np.empty((n, n), dtype=object)
    for j, e in enumerate(basis):
        c = basis.coordinates(bracket(x, e))
        if c is None:
            raise ClosureError(-1, j, None)
        out[:, j] = c
    return out


def killing_form_adtrace(x: ExactMatrix, y: ExactMatrix, basis: LieBasis | None = None) -> Fraction:
    """``trace(ad x . ad y)`` computed on ``basis`` (so(N) by default)."""
    if basis is None:
        basis = so_basis(x.size)
    ax, ay = ad_matrix(x, basis), ad_matrix(y, basis)
    return Fraction(sum(ax[i, j] * ay[j, i] for i in range(len(basis)) for j in range(len(basis))))


def structure_constants(basis: LieBasis) -> np.ndarray:
    """Table ``c[i, j, k]`` with ``[e_i, e_j] = sum_k c[i, j, k] e_k``.

    Raises ClosureError naming the first pair whose bracket leaves the span.
    """
    n = len(basis)
    c = np.empty((n, n, n), dtype=object)
    c.fill(Fraction(0))
    for i in range(n):
        for j in range(i + 1, n):
            num, den = basis.scaled_coordinates(bracket(basis[i], basis[j]))
            if num is None:
                raise ClosureError(i, j, basis.labels)
            for k, v in enumerate(num):
                if v:
                    f = Fraction(int(v), den)
                    c[i, j, k] = f
                    c[j, i, k] = -f
    return c


def killing_matrix(struct: np.ndarray) -> np.ndarray:
    """Intrinsic Killing form ``trace(ad e_i ad e_j)`` from structure constants."""
    n = struct.shape[0]
    # ad(e_i)[k, j] = c[i, j, k]
    ads = [struct[i].T for i in range(n)]
    out = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(i, n):
            v = Fraction(np.sum(ads[i] * ads[j].T))
            out[i, j] = out[j, i] = v
    return out
