"""Longer three-parity construction: four pairs per matching, k = 4m.

The fourth subspace of each matching is spanned by edge sums, so these codes
are not access-optimal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .aset import ASPair, ASSet, ConstructionError, VerificationFailed, ZeroLambda, conjugate, unit_rows
from .construct_r3 import _check_field, matrix_A_r3
from .gf import Felt, FieldSpec, enumerate_nonzero
from .linalg import Mat, Singular, invert, is_invertible, span
from .matchings import Matching, matchings_r3


class NoValidH(ConstructionError):
    pass


class Infeasible(ConstructionError):
    pass


@dataclass(frozen=True)
class HChoice:
    h: Felt


def block_N3(f: FieldSpec, u: np.ndarray, v: np.ndarray, w: np.ndarray) -> Mat:
    roots = _check_field(f)
    g1, g2 = roots.g1.value, roots.g2.value

    def row(cv: int, cw: int) -> np.ndarray:
        return f.add(f.add(u, f.mul(v, cv)), f.mul(w, cw))

    return Mat(f, np.vstack([row(1, 1), row(g2, g1), row(g1, g2)]))


def change_matrices_r3plus(f: FieldSpec, z: Matching) -> tuple[Mat, Mat, Mat, Mat]:
    eye = np.eye(z.ell, dtype=np.int64)
    Z, Z1, Z2 = (eye[list(col)] for col in z.colors)
    tot = f.add(f.add(Z, Z1), Z2)
    nZ, nZ1, nZ2 = f.neg(Z), f.neg(Z1), f.neg(Z2)
    n = z.ell // 3

    def stack(u, v, w):
        return Mat(f, np.vstack([block_N3(f, u[i], v[i], w[i]).data for i in range(n)]))

    return (
        stack(tot, nZ1, nZ2),
        stack(nZ2, nZ, tot),
        stack(nZ1, tot, nZ),
        stack(Z, Z2, Z1),
    )


def quad_from_matching(
    f: FieldSpec, z: Matching, lam: Felt, h: HChoice, index: int = 0
) -> tuple[ASPair, ASPair, ASPair, ASPair]:
    if not lam.value:
        raise ZeroLambda("lambda must be nonzero")
    a = matrix_A_r3(f, z.ell)
    ps = change_matrices_r3plus(f, z)
    lams = [lam * h.h**e for e in range(4)]
    eye = np.eye(z.ell, dtype=np.int64)
    sums = f.add(f.add(eye[list(z.colors[0])], eye[list(z.colors[1])]), eye[list(z.colors[2])])
    spaces = [span(unit_rows(f, z.ell, col)) for col in z.colors] + [span(Mat(f, sums))]
    names = ("Z", "Z'", "Z''", "Z*")
    return tuple(  # type: ignore[return-value]
        ASPair(conjugate(p, a, lt.value), s, (index, name))
        for p, lt, s, name in zip(ps, lams, spaces, names)
    )


def _schur_terms_invertible(quad: tuple[ASPair, ...]) -> bool:
    az, az1, az2, azs = (p.a for p in quad)

    def quot(x: Mat, y: Mat) -> Mat:
        # (x^2 - y^2)(x - y)^{-1}
        return (x @ x - y @ y) @ invert(x - y)

    try:
        ls = [
            quot(az, az2) - quot(az, az1),
            quot(az, azs) - quot(az, az1),
            quot(az, azs) - quot(az, az2),
            quot(az1, azs) - quot(az1, az2),
        ]
    except Singular:
        return False
    return all(is_invertible(x) for x in ls)


def find_h(f: FieldSpec, m: int) -> HChoice:
    _check_field(f)
    z = matchings_r3(m)[0]
    one = f(1)
    for h in enumerate_nonzero(f):
        if one in (h**6, h**12, h**18):
            continue
        if _schur_terms_invertible(quad_from_matching(f, z, one, HChoice(h))):
            return HChoice(h)
    raise NoValidH(f"no admissible h in GF({f.q})")


def assign_lambda_families(f: FieldSpec, m: int, h: HChoice) -> list[Felt]:
    feasible = enumerate_nonzero(f)
    h6 = h.h**6
    out: list[Felt] = []
    while len(out) < m:
        if not feasible:
            raise Infeasible(f"GF({f.q}) cannot host {m} lambda families")
        lam = feasible[0]
        out.append(lam)
        banned = {(lam**6 * h6**e).value for e in range(-3, 4)}
        feasible = [e for e in feasible if (e**6).value not in banned]
    return out


def build_r3plus(m: int, f: FieldSpec, verify: bool = True) -> ASSet:
    h = find_h(f, m)
    lams = assign_lambda_families(f, m, h)
    pairs: list[ASPair] = []
    for i, (z, lam) in enumerate(zip(matchings_r3(m), lams)):
        pairs.extend(quad_from_matching(f, z, lam, h, i))
    aset = ASSet(
        pairs, f, 3**m, 3, "r3-long", m,
        {"h": h.h.value, "lambda_base": [x.value for x in lams]},
    )
    if verify:
        from .verify import full

        cert = full(aset)
        if not cert.passed:
            raise VerificationFailed(f"long three-parity set failed verification over GF({f.q})", cert)
    return aset
