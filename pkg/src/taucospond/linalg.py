"""Exact linear algebra over prime fields (and the rationals for cross-checks).

Matrices are plain 2-D numpy arrays: ``int64`` reduced into ``[0, p)`` in
prime mode, ``object`` arrays of :class:`fractions.Fraction` in rational
mode.  ``0 x n`` and ``n x 0`` shapes are legal and stand for zero spaces.
Pivoting is deterministic (leftmost column, first nonzero row), so every
function here returns byte-identical output for identical input.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator

import numpy as np

from .errors import DimensionMismatch, FieldModeError


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


class Field:
    """A prime field ``F_p`` or, with ``p=None``, the rationals."""

    __slots__ = ("p",)

    def __init__(self, p: int | None = 3):
        if p is not None:
            p = int(p)
            if not _is_prime(p):
                raise ValueError(f"field characteristic must be prime, got {p}")
        self.p = p

    @classmethod
    def rational(cls) -> "Field":
        return cls(None)

    @property
    def is_prime(self) -> bool:
        return self.p is not None

    @property
    def dtype(self):
        return np.int64 if self.p is not None else object

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("Field", self.p))

    def __repr__(self) -> str:
        return f"F_{self.p}" if self.p is not None else "Q"

    # -- scalars -----------------------------------------------------------
    def scalar(self, x):
        if self.p is not None:
            if isinstance(x, Fraction):
                return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
            return int(x) % self.p
        return Fraction(x)

    def neg(self, x):
        if self.p is not None:
            return (-int(x)) % self.p
        return -x

    def inv(self, x):
        if self.p is not None:
            return pow(int(x), -1, self.p)
        return 1 / Fraction(x)

    def elements(self) -> range:
        if self.p is None:
            raise FieldModeError("the rational field cannot be enumerated")
        return range(self.p)

    def require_prime(self, what: str) -> int:
        if self.p is None:
            raise FieldModeError(f"{what} enumerates field elements and refuses rational mode")
        return self.p

    # -- arrays ------------------------------------------------------------
    def reduce(self, a: np.ndarray) -> np.ndarray:
        if self.p is not None:
            return np.mod(a, self.p)
        return a

    def asarray(self, data, rows: int | None = None, cols: int | None = None) -> np.ndarray:
        if isinstance(data, np.ndarray) and data.ndim == 2:
            if self.p is not None:
                if data.dtype == object:
                    return np.array([[self.scalar(x) for x in row] for row in data], dtype=np.int64).reshape(data.shape)
                return np.mod(data.astype(np.int64, copy=False), self.p)
            if data.dtype == object:
                return data
            return np.array([[Fraction(int(x)) for x in row] for row in data], dtype=object).reshape(data.shape)
        rows_list = [list(r) for r in data]
        if rows is None:
            rows = len(rows_list)
        if cols is None:
            cols = len(rows_list[0]) if rows_list else 0
        out = self.zeros(rows, cols)
        for i, row in enumerate(rows_list):
            if len(row) != cols:
                raise DimensionMismatch("ragged matrix rows")
            for j, x in enumerate(row):
                out[i, j] = self.scalar(x)
        return out

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        if self.p is not None:
            return np.zeros((rows, cols), dtype=np.int64)
        out = np.empty((rows, cols), dtype=object)
        out.fill(Fraction(0))
        return out

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros(n, n)
        for i in range(n):
            out[i, i] = self.scalar(1)
        return out

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[1] != b.shape[0]:
            raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
        if self.p is not None:
            return np.mod(a @ b, self.p)
        if a.shape[1] == 0:
            return self.zeros(a.shape[0], b.shape[1])
        return np.dot(a, b)


F3 = Field(3)


def is_zero(m: np.ndarray) -> bool:
    return np.count_nonzero(m) == 0


def rref(m: np.ndarray, field: Field = F3) -> tuple[np.ndarray, list[int], int]:
    """Reduced row echelon form, pivot columns and rank."""
    a = field.asarray(m).copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = field.reduce(a[r] * field.inv(a[r, c]))
        col = a[:, c].copy()
        col[r] = 0
        nzr = np.flatnonzero(col)
        if nzr.size:
            a[nzr] = field.reduce(a[nzr] - np.outer(col[nzr], a[r]))
        pivots.append(c)
        r += 1
    return a, pivots, r


def rank(m: np.ndarray, field: Field = F3) -> int:
    if m.shape[0] == 0 or m.shape[1] == 0:
        return 0
    return rref(m, field)[2]


def kernel_basis(m: np.ndarray, field: Field = F3) -> np.ndarray:
    """Columns form a basis of the null space ``{v : m v = 0}``."""
    rows, cols = m.shape
    reduced, pivots, r = rref(m, field)
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    out = field.zeros(cols, len(free))
    one = field.scalar(1)
    for k, f in enumerate(free):
        out[f, k] = one
        for i, pc in enumerate(pivots):
            out[pc, k] = field.neg(reduced[i, f])
    return out


def left_kernel_basis(m: np.ndarray, field: Field = F3) -> np.ndarray:
    """Rows form a basis of ``{q : q m = 0}``."""
    return kernel_basis(m.T.copy(), field).T.copy()


def solve(a: np.ndarray, b: np.ndarray, field: Field = F3) -> np.ndarray | None:
    """Some ``x`` with ``a x = b`` (free variables zero), or ``None``."""
    if a.shape[0] != b.shape[0]:
        raise DimensionMismatch(f"solve: {a.shape[0]} rows vs {b.shape[0]} rows")
    n = a.shape[1]
    aug = np.concatenate([field.asarray(a), field.asarray(b)], axis=1) if a.shape[0] else field.zeros(0, n + b.shape[1])
    reduced, pivots, _ = rref(aug, field)
    x = field.zeros(n, b.shape[1])
    for i, pc in enumerate(pivots):
        if pc >= n:
            return None
        x[pc] = reduced[i, n:]
    return x


def column_space(m: np.ndarray, field: Field = F3) -> np.ndarray:
    """Canonical basis (columns) of the column space."""
    if m.shape[1] == 0 or m.shape[0] == 0:
        return field.zeros(m.shape[0], 0)
    reduced, _, r = rref(m.T.copy(), field)
    return reduced[:r].T.copy()


def complement_basis(m: np.ndarray, field: Field = F3) -> np.ndarray:
    """Unit vectors spanning a complement of the column space of ``m``."""
    n = m.shape[0]
    if m.shape[1] == 0:
        return field.eye(n)
    _, pivots, _ = rref(m.T.copy(), field)
    ps = set(pivots)
    idx = [j for j in range(n) if j not in ps]
    return field.eye(n)[:, idx].copy()


def intersect_columnspaces(a: np.ndarray, b: np.ndarray, field: Field = F3) -> np.ndarray:
    """Columns spanning ``col(a) ∩ col(b)``."""
    if a.shape[0] != b.shape[0]:
        raise DimensionMismatch(f"intersect: {a.shape[0]} rows vs {b.shape[0]} rows")
    if a.shape[1] == 0 or b.shape[1] == 0:
        return field.zeros(a.shape[0], 0)
    stacked = np.concatenate([field.asarray(a), field.reduce(-field.asarray(b))], axis=1)
    k = kernel_basis(stacked, field)
    return column_space(field.matmul(field.asarray(a), k[: a.shape[1]]), field)


def inverse(m: np.ndarray, field: Field = F3) -> np.ndarray | None:
    n = m.shape[0]
    if m.shape[1] != n:
        return None
    x = solve(m, field.eye(n), field)
    if x is None or rank(m, field) < n:
        return None
    return x


def is_invertible(m: np.ndarray, field: Field = F3) -> bool:
    n = m.shape[0]
    return m.shape[1] == n and (n == 0 or rank(m, field) == n)


@lru_cache(maxsize=None)
def _rref_shapes(n: int, k: int, p: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    # every k x n matrix over F_p in reduced row echelon form with rank k
    from itertools import combinations, product

    shapes = []
    for pivots in combinations(range(n), k):
        free_slots = [(i, c) for i, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in pivots]
        for values in product(range(p), repeat=len(free_slots)):
            rows = [[0] * n for _ in range(k)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = 1
            for (i, c), v in zip(free_slots, values):
                rows[i][c] = v
            shapes.append(tuple(tuple(r) for r in rows))
    return tuple(shapes)


def count_subspaces(n: int, p: int) -> int:
    """Number of subspaces of ``F_p^n`` (sum of Gaussian binomials)."""
    total = 0
    for k in range(n + 1):
        num = den = 1
        for i in range(k):
            num *= p ** (n - i) - 1
            den *= p ** (i + 1) - 1
        total += num // den
    return total


def iter_subspaces(n: int, field: Field) -> Iterator[np.ndarray]:
    """All subspaces of ``F_p^n`` as column-basis matrices, smallest first."""
    p = field.require_prime("subspace enumeration")
    for k in range(n + 1):
        for rows in _rref_shapes(n, k, p):
            yield np.array(rows, dtype=np.int64).reshape(k, n).T.copy()


def iter_vectors(d: int, field: Field) -> Iterator[tuple[int, ...]]:
    from itertools import product

    p = field.require_prime("coefficient enumeration")
    return product(range(p), repeat=d)


def combine(coeffs: Iterable, vectors: np.ndarray, field: Field) -> np.ndarray:
    """``sum_k coeffs[k] * vectors[k]`` for a stack of row vectors."""
    c = np.asarray(list(coeffs), dtype=vectors.dtype).reshape(1, -1)
    if c.shape[1] == 0:
        return field.zeros(1, vectors.shape[1])[0]
    return field.matmul(c, vectors)[0]
