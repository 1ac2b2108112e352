"""Certification of the subspace condition for an (A, S)-set.

``full`` is the ground truth used by every construction.  The brute-force
oracle at the bottom shares no code with the numpy elimination path: it
enumerates every square block submatrix and eliminates it with scalar field
arithmetic on Python lists.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from itertools import combinations

import numpy as np

from .aset import ASSet
from .gf import FieldSpec
from .linalg import Mat, block, image_mul, intersection_dim, is_invertible, is_unit_vector_basis, rank, subspace_sum


class UnsupportedR(ValueError):
    pass


@dataclass
class Certificate:
    passed: bool
    independence: list[bool]
    invariance: list[dict]
    nonsingular: list[dict]
    access_optimal: list[bool]
    intersection_audit: list[dict]
    timing: float = 0.0
    labels: list[list] = field(default_factory=list)

    def failures(self) -> list[str]:
        out = [f"independence fails for pair {i}" for i, ok in enumerate(self.independence) if not ok]
        out += [f"invariance fails: S_{c['i']} A_{c['j']} != S_{c['i']}" for c in self.invariance if not c["ok"]]
        out += [f"nonsingular fails: {c['kind']} on pairs {c['pairs']}" for c in self.nonsingular if not c["ok"]]
        return out

    def to_json(self, timing: bool = True) -> dict:
        d = asdict(self)
        if not timing:
            d.pop("timing")
        return d

    def dumps(self, timing: bool = True) -> str:
        return json.dumps(self.to_json(timing), sort_keys=True, indent=1) + "\n"


def check_independence(aset: ASSet) -> list[bool]:
    if aset.ell % aset.r:
        raise ValueError("r must divide ell")
    out = []
    for p in aset.pairs:
        images = [p.s]
        for _ in range(aset.r - 1):
            images.append(image_mul(images[-1], p.a))
        out.append(subspace_sum(*images).dim == aset.ell)
    return out


def check_invariance(aset: ASSet) -> list[dict]:
    out = []
    for i, pi in enumerate(aset.pairs):
        for j, pj in enumerate(aset.pairs):
            if i != j:
                out.append({"i": i, "j": j, "ok": image_mul(pi.s, pj.a) == pi.s})
    return out


def check_nonsingular(aset: ASSet) -> list[dict]:
    r = aset.r
    if r not in (2, 3):
        raise UnsupportedR(f"nonsingular check implemented for r in (2, 3), got {r}")
    f, ell = aset.field, aset.ell
    mats = aset.matrices
    out: list[dict] = []

    def rec(kind: str, pairs, ok: bool) -> None:
        out.append({"kind": kind, "pairs": list(pairs), "ok": bool(ok)})

    squares = [a @ a for a in mats] if r == 3 else []
    for i, a in enumerate(mats):
        rec("A", [i], is_invertible(a))
        if r == 3:
            rec("A^2", [i], is_invertible(squares[i]))
    for i, j in combinations(range(len(mats)), 2):
        rec("A_j-A_i", [i, j], rank(mats[j] - mats[i]) == ell)
        if r == 3:
            rec("A_j^2-A_i^2", [i, j], rank(squares[j] - squares[i]) == ell)
    if r == 3:
        eye = Mat.identity(f, ell)
        for tri in combinations(range(len(mats)), 3):
            big = block(f, [[eye, mats[i], squares[i]] for i in tri])
            rec("[I A A^2] triple", tri, rank(big) == 3 * ell)
    return out


def check_access_optimal(aset: ASSet) -> list[bool]:
    return [is_unit_vector_basis(s) for s in aset.subspaces]


def audit_intersections(aset: ASSet) -> list[dict]:
    bound = aset.ell // aset.r**2
    out = []
    for i, j in combinations(range(aset.k), 2):
        cross = aset.pairs[i].label[0] != aset.pairs[j].label[0]
        out.append({
            "i": i,
            "j": j,
            "cross": cross,
            "dim": intersection_dim(aset.pairs[i].s, aset.pairs[j].s),
            "expected": bound if cross else None,
        })
    return out


def full(aset: ASSet, intersections: bool = True) -> Certificate:
    t0 = time.perf_counter()
    ind = check_independence(aset)
    inv = check_invariance(aset)
    ns = check_nonsingular(aset)
    acc = check_access_optimal(aset)
    audit = audit_intersections(aset) if intersections else []
    passed = all(ind) and all(c["ok"] for c in inv) and all(c["ok"] for c in ns)
    return Certificate(
        passed=passed,
        independence=ind,
        invariance=inv,
        nonsingular=ns,
        access_optimal=acc,
        intersection_audit=audit,
        timing=time.perf_counter() - t0,
        labels=[list(p.label) for p in aset.pairs],
    )


# ---------------------------------------------------------------------------
# brute-force oracle


def _scalar_rank(f: FieldSpec, rows: list[list[int]]) -> int:
    rows = [list(r) for r in rows]
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    rk = 0
    for c in range(n_cols):
        piv = next((i for i in range(rk, n_rows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        inv = f.sinv(rows[rk][c])
        prow = [f.smul(x, inv) for x in rows[rk]]
        rows[rk] = prow
        for i in range(rk + 1, n_rows):
            fac = rows[i][c]
            if fac:
                rows[i] = [f.ssub(x, f.smul(fac, y)) for x, y in zip(rows[i], prow)]
        rk += 1
    return rk


def _scalar_matmul(f: FieldSpec, a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    bt = list(zip(*b))
    out = []
    for row in a:
        new = []
        for col in bt:
            acc = 0
            for x, y in zip(row, col):
                if x and y:
                    acc = f.sadd(acc, f.smul(x, y))
            new.append(acc)
        out.append(new)
    return out


def brute_force_nonsingular(aset: ASSet) -> list[dict]:
    """Every square block submatrix of the k x r block matrix [A_i^t], checked directly."""
    f, ell, r, k = aset.field, aset.ell, aset.r, aset.k
    grids = [p.a.data.tolist() for p in aset.pairs]
    eye = [[int(i == j) for j in range(ell)] for i in range(ell)]
    powers = []
    for g in grids:
        row = [eye]
        for _ in range(r - 1):
            row.append(_scalar_matmul(f, row[-1], g))
        powers.append(row)
    out = []
    for size in range(1, min(k, r) + 1):
        for rows_sel in combinations(range(k), size):
            for cols_sel in combinations(range(r), size):
                mat = []
                for i in rows_sel:
                    for x in range(ell):
                        line: list[int] = []
                        for t in cols_sel:
                            line.extend(powers[i][t][x])
                        mat.append(line)
                ok = _scalar_rank(f, mat) == size * ell
                out.append({"rows": list(rows_sel), "cols": list(cols_sel), "ok": ok})
    return out


def nonsingular_verdict(aset: ASSet) -> bool:
    return all(c["ok"] for c in check_nonsingular(aset))


def brute_force_verdict(aset: ASSet) -> bool:
    return all(c["ok"] for c in brute_force_nonsingular(aset))
