from __future__ import annotations

import numpy as np

from msrcodes.linalg import Mat, Subspace


def is_eigenspace(s: Subspace, a: Mat, c: int) -> bool:
    """Every basis row v of s satisfies v a = c v."""
    f = a.field
    lhs = f.matmul(s.basis.data, a.data)
    return bool(np.array_equal(lhs, f.mul(s.basis.data, c)))


def commute(a: Mat, b: Mat) -> bool:
    return a @ b == b @ a
