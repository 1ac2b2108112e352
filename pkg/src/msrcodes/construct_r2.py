"""Two-parity access-optimal construction: 2m pairs of 2^m x 2^m matrices."""

from __future__ import annotations

import numpy as np

from .aset import ASPair, ASSet, FieldTooSmall, VerificationFailed, ZeroLambda, conjugate, unit_rows
from .gf import Felt, FieldSpec, enumerate_nonzero
from .linalg import Mat, span
from .matchings import Matching, matchings_r2


class BadLength(ValueError):
    pass


def matrix_A_lambda(f: FieldSpec, ell: int, lam: Felt | int) -> Mat:
    lam = int(lam)
    if ell % 4:
        raise BadLength(f"ell={ell} is not a multiple of 4")
    if lam == 0:
        raise ZeroLambda("lambda must be nonzero")
    neg = int(f.neg(lam))
    a = np.zeros((ell, ell), dtype=np.int64)
    for t in range(ell // 2):
        v = lam if t < ell // 4 else neg
        a[2 * t, 2 * t + 1] = a[2 * t + 1, 2 * t] = v
    return Mat(f, a)


def change_matrices(f: FieldSpec, z: Matching) -> tuple[Mat, Mat]:
    if z.r != 2:
        raise ValueError("two-parity change matrices need r=2")
    ell = z.ell
    pz = np.zeros((ell, ell), dtype=np.int64)
    pz2 = np.zeros((ell, ell), dtype=np.int64)
    minus = int(f.neg(1))
    for i, (u, v) in enumerate(z.edges):
        # P_Z rows: z_i, z_i' - z_i ; P_Z' rows: z_i', z_i + z_i'
        pz[2 * i, u] = 1
        pz[2 * i + 1, v] = 1
        pz[2 * i + 1, u] = minus
        pz2[2 * i, v] = 1
        pz2[2 * i + 1, u] = 1
        pz2[2 * i + 1, v] = 1
    return Mat(f, pz), Mat(f, pz2)


def pair_from_matching(f: FieldSpec, z: Matching, lam: Felt | int, index: int = 0) -> tuple[ASPair, ASPair]:
    if int(lam) == 0:
        raise ZeroLambda("lambda must be nonzero")
    a = matrix_A_lambda(f, z.ell, lam)
    pz, pz2 = change_matrices(f, z)
    return (
        ASPair(conjugate(pz, a), span(unit_rows(f, z.ell, z.colors[0])), (index, "Z")),
        ASPair(conjugate(pz2, a), span(unit_rows(f, z.ell, z.colors[1])), (index, "Z'")),
    )


def assign_lambdas_r2(f: FieldSpec, m: int) -> list[Felt]:
    if f.q < m + 1:
        raise FieldTooSmall(f"GF({f.q}) too small for m={m}: need q >= {m + 1}")
    elems = enumerate_nonzero(f)
    if f.p == 2:
        return elems[:m]
    used: set[int] = set()
    out: list[Felt] = []
    for _ in range(m // 2):
        for a in elems:
            if a.value not in used and (-a).value not in used:
                out += [a, -a]
                used |= {a.value, (-a).value}
                break
        else:
            raise FieldTooSmall(f"GF({f.q}) has no unused +-pair for m={m}")
    if m % 2:
        rest = [a for a in elems if a.value not in used]
        if not rest:
            raise FieldTooSmall(f"GF({f.q}) has no element left for the last matching")
        out.append(rest[0])
    return out


def build_r2(m: int, f: FieldSpec, verify: bool = True) -> ASSet:
    lams = assign_lambdas_r2(f, m)
    pairs: list[ASPair] = []
    for i, (z, lam) in enumerate(zip(matchings_r2(m), lams)):
        pairs.extend(pair_from_matching(f, z, lam, i))
    aset = ASSet(pairs, f, 2**m, 2, "r2-access-optimal", m, {"lambdas": [x.value for x in lams]})
    if verify:
        from .verify import full

        cert = full(aset)
        if not cert.passed:
            raise VerificationFailed(f"two-parity set failed verification over GF({f.q})", cert)
    return aset
