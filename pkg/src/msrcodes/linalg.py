"""Dense matrices and subspaces over a finite field.

Vectors are rows; a matrix acts on the right (``x @ A``).  A subspace is kept
as its reduced row-echelon basis with zero rows removed, so two subspaces are
equal exactly when their bases are.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .gf import FieldSpec, Felt


class DimensionMismatch(ValueError):
    pass


class Singular(ArithmeticError):
    pass


def _arr(x) -> np.ndarray:
    a = np.array(x, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1) if a.size else a.reshape(0, 0)
    return a


@dataclass(frozen=True, eq=False)
class Mat:
    field: FieldSpec
    data: np.ndarray

    def __post_init__(self) -> None:
        d = np.array(self.data, dtype=np.int64)
        if d.ndim != 2:
            raise DimensionMismatch("matrix data must be 2-dimensional")
        d.setflags(write=False)
        object.__setattr__(self, "data", d)

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape  # type: ignore[return-value]

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Mat)
            and other.field == self.field
            and other.shape == self.shape
            and bool(np.array_equal(other.data, self.data))
        )

    __hash__ = None  # type: ignore[assignment]

    def __matmul__(self, other: Mat) -> Mat:
        return mat_mul(self, other)

    def __add__(self, other: Mat) -> Mat:
        _same(self, other)
        return Mat(self.field, self.field.add(self.data, other.data))

    def __sub__(self, other: Mat) -> Mat:
        _same(self, other)
        return Mat(self.field, self.field.sub(self.data, other.data))

    def __neg__(self) -> Mat:
        return Mat(self.field, self.field.neg(self.data))

    def scale(self, c: Felt | int) -> Mat:
        """Multiply by a scalar given as a Felt or as an encoded element."""
        c = int(c)
        if not 0 <= c < self.field.q:
            raise ValueError(f"{c} is not an encoded element of {self.field!r}")
        return Mat(self.field, self.field.mul(self.data, c))

    def __pow__(self, e: int) -> Mat:
        return mat_pow(self, e)

    def to_grid(self) -> list[list[int]]:
        return self.data.tolist()

    def __repr__(self) -> str:
        return f"Mat({self.field!r}, {self.data.tolist()})"

    @classmethod
    def identity(cls, f: FieldSpec, n: int) -> Mat:
        return cls(f, np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, f: FieldSpec, rows: int, cols: int) -> Mat:
        return cls(f, np.zeros((rows, cols), dtype=np.int64))


def _same(a: Mat, b: Mat) -> None:
    if a.field != b.field:
        raise DimensionMismatch("matrices over different fields")
    if a.shape != b.shape:
        raise DimensionMismatch(f"shape {a.shape} vs {b.shape}")


def mat_mul(a: Mat, b: Mat) -> Mat:
    if a.field != b.field:
        raise DimensionMismatch("matrices over different fields")
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    return Mat(a.field, a.field.matmul(a.data, b.data))


def mat_pow(a: Mat, e: int) -> Mat:
    if a.rows != a.cols:
        raise DimensionMismatch("power of a non-square matrix")
    if e < 0:
        return mat_pow(invert(a), -e)
    result = Mat.identity(a.field, a.rows)
    base = a
    while e:
        if e & 1:
            result = result @ base
        e >>= 1
        if e:
            base = base @ base
    return result


def block(f: FieldSpec, blocks: Sequence[Sequence[Mat]]) -> Mat:
    return Mat(f, np.block([[m.data for m in row] for row in blocks]))


def block_diag(f: FieldSpec, mats: Iterable[Mat]) -> Mat:
    mats = list(mats)
    n = sum(m.rows for m in mats)
    c = sum(m.cols for m in mats)
    out = np.zeros((n, c), dtype=np.int64)
    i = j = 0
    for m in mats:
        out[i : i + m.rows, j : j + m.cols] = m.data
        i += m.rows
        j += m.cols
    return Mat(f, out)


def vstack(f: FieldSpec, mats: Iterable[Mat]) -> Mat:
    return Mat(f, np.vstack([m.data for m in mats]))


def rref(f: FieldSpec, data: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form of ``data`` and its pivot columns."""
    a = np.array(data, dtype=np.int64, copy=True)
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        lead = int(a[r, c])
        if lead != 1:
            a[r] = f.mul(a[r], f.sinv(lead))
        factors = a[:, c].copy()
        factors[r] = 0
        hit = np.flatnonzero(factors)
        if hit.size:
            a[hit] = f.sub(a[hit], f.mul(factors[hit, None], a[r][None, :]))
        pivots.append(c)
        r += 1
    return a, pivots


def rank(a: Mat) -> int:
    if a.rows == 0 or a.cols == 0:
        return 0
    return len(rref(a.field, a.data)[1])


def is_invertible(a: Mat) -> bool:
    return a.rows == a.cols and rank(a) == a.rows


def invert(a: Mat) -> Mat:
    if a.rows != a.cols:
        raise DimensionMismatch("inverse of a non-square matrix")
    n = a.rows
    aug = np.hstack([a.data, np.eye(n, dtype=np.int64)])
    red, piv = rref(a.field, aug)
    if piv[:n] != list(range(n)):
        raise Singular("matrix is singular")
    return Mat(a.field, red[:, n:])


def solve(a: Mat, b: Mat) -> Mat:
    """Solve ``a @ x == b`` for square invertible ``a``."""
    if a.rows != a.cols or b.rows != a.rows:
        raise DimensionMismatch(f"cannot solve {a.shape} against {b.shape}")
    n = a.rows
    red, piv = rref(a.field, np.hstack([a.data, b.data]))
    if piv[:n] != list(range(n)):
        raise Singular("system matrix is singular")
    return Mat(a.field, red[:, n:])


@dataclass(frozen=True, eq=False)
class Subspace:
    """Row space of a matrix, stored as a canonical echelon basis."""

    basis: Mat
    ambient: int

    @property
    def field(self) -> FieldSpec:
        return self.basis.field

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def pivots(self) -> list[int]:
        return [int(np.flatnonzero(row)[0]) for row in self.basis.data]

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and self.ambient == other.ambient and self.basis == other.basis

    __hash__ = None  # type: ignore[assignment]

    def contains(self, v: Mat) -> bool:
        return subspace_sum(self, span(v)).dim == self.dim

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, {self.field!r})"


def span(m: Mat) -> Subspace:
    if m.rows == 0:
        return Subspace(Mat(m.field, np.zeros((0, m.cols), dtype=np.int64)), m.cols)
    red, piv = rref(m.field, m.data)
    return Subspace(Mat(m.field, red[: len(piv)]), m.cols)


def subspace_sum(*spaces: Subspace) -> Subspace:
    if not spaces:
        raise ValueError("need at least one subspace")
    ambient = spaces[0].ambient
    if any(s.ambient != ambient for s in spaces):
        raise DimensionMismatch("subspaces live in different ambient spaces")
    f = spaces[0].field
    return span(Mat(f, np.vstack([s.basis.data.reshape(-1, ambient) for s in spaces])))


def intersection_dim(u: Subspace, v: Subspace) -> int:
    return u.dim + v.dim - subspace_sum(u, v).dim


def image_mul(s: Subspace, a: Mat) -> Subspace:
    """The subspace ``s @ a``."""
    if a.rows != s.ambient:
        raise DimensionMismatch("matrix does not act on this subspace")
    if s.dim == 0:
        return span(Mat(s.field, np.zeros((0, a.cols), dtype=np.int64)))
    return span(s.basis @ a)


def unit_vector(f: FieldSpec, n: int, i: int) -> Mat:
    v = np.zeros((1, n), dtype=np.int64)
    v[0, i] = 1
    return Mat(f, v)


def is_unit_vector_basis(s: Subspace) -> bool:
    """True if s is spanned by standard unit vectors.

    The echelon basis of such a space is exactly those unit vectors, so it
    suffices to check that every basis row has a single nonzero entry.
    """
    return bool(np.all(np.count_nonzero(s.basis.data, axis=1) == 1))


def support(s: Subspace) -> list[int]:
    """Coordinates touched by some vector of s."""
    return [int(i) for i in np.flatnonzero(np.any(s.basis.data != 0, axis=0))]
