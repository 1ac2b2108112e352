"""Three-parity access-optimal construction: 3m pairs of 3^m x 3^m matrices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .aset import ASPair, ASSet, FieldTooSmall, VerificationFailed, ZeroLambda, conjugate, unit_rows
from .gf import CubeRoots, Felt, FieldSpec, NoOrder3Roots, cube_roots_of_unity, enumerate_nonzero
from .linalg import Mat, span
from .matchings import Matching, matchings_r3


class BadLength(ValueError):
    pass


class BadCharacteristic(ValueError):
    pass


class ZeroConstant(ValueError):
    pass


@dataclass(frozen=True)
class ConstantChoice:
    alpha: Felt
    alpha1: Felt
    alpha2: Felt
    beta: Felt
    beta1: Felt
    beta2: Felt

    def as_tuple(self) -> tuple[Felt, ...]:
        return (self.alpha, self.alpha1, self.alpha2, self.beta, self.beta1, self.beta2)

    def valid(self) -> bool:
        f = self.alpha.spec
        nine = f(f.from_int(9))
        return (
            all(c.value for c in self.as_tuple())
            and self.alpha2 * self.beta != nine
            and self.alpha1 * self.beta2 != nine
            and self.alpha * self.beta1 != nine
        )


def _is_power_of_three(n: int) -> bool:
    while n > 1 and n % 3 == 0:
        n //= 3
    return n == 1


def matrix_A_r3(f: FieldSpec, ell: int) -> Mat:
    if not _is_power_of_three(ell):
        raise BadLength(f"ell={ell} is not a power of 3")
    a = np.zeros((ell, ell), dtype=np.int64)
    for b in range(0, ell, 3):
        # e_i C = e_{i-1 mod 3} inside each block
        a[b, b + 2] = a[b + 1, b] = a[b + 2, b + 1] = 1
    return Mat(f, a)


def _check_field(f: FieldSpec) -> CubeRoots:
    if f.p == 3:
        raise BadCharacteristic("characteristic 3 has no primitive cube roots of unity")
    return cube_roots_of_unity(f)


def block_N(f: FieldSpec, alpha: Felt, beta: Felt, u: np.ndarray, v: np.ndarray, w: np.ndarray) -> Mat:
    if not alpha.value or not beta.value:
        raise ZeroConstant("alpha and beta must be nonzero")
    g1 = _check_field(f).g1
    d = (g1 - 1).inv()
    c1v, c1w = -(alpha * g1 * d), beta * d
    c2v, c2w = alpha * d, -(beta * g1 * d)

    def comb(cv: Felt, cw: Felt) -> np.ndarray:
        return f.add(f.add(u, f.mul(v, cv.value)), f.mul(w, cw.value))

    return Mat(f, np.vstack([u, comb(c1v, c1w), comb(c2v, c2w)]))


def constants_for_char(f: FieldSpec) -> ConstantChoice:
    roots = _check_field(f)
    one, g1, g2 = roots.one, roots.g1, roots.g2
    if f.p == 2:
        c = ConstantChoice(one, g1, g1, one, g2, one)
    elif f.p == 7:
        c = ConstantChoice(g2, one, one, one, g1, one)
    else:
        c = ConstantChoice(one, one, one, one, one, one)
    assert c.valid()
    return c


def change_matrices_r3(f: FieldSpec, z: Matching, c: ConstantChoice) -> tuple[Mat, Mat, Mat]:
    eye = np.eye(z.ell, dtype=np.int64)
    Z, Z1, Z2 = (eye[list(col)] for col in z.colors)
    n = z.ell // 3

    def stack(alpha, beta, u, v, w):
        return Mat(f, np.vstack([block_N(f, alpha, beta, u[i], v[i], w[i]).data for i in range(n)]))

    return (
        stack(c.alpha, c.beta, Z, Z1, Z2),
        stack(c.alpha1, c.beta1, Z1, Z2, Z),
        stack(c.alpha2, c.beta2, Z2, Z, Z1),
    )


def triple_from_matching(
    f: FieldSpec, z: Matching, lam: Felt, c: ConstantChoice, index: int = 0
) -> tuple[ASPair, ASPair, ASPair]:
    if not lam.value:
        raise ZeroLambda("lambda must be nonzero")
    a = matrix_A_r3(f, z.ell)
    ps = change_matrices_r3(f, z, c)
    names = ("Z", "Z'", "Z''")
    return tuple(  # type: ignore[return-value]
        ASPair(conjugate(p, a, lam.value), span(unit_rows(f, z.ell, col)), (index, name))
        for p, col, name in zip(ps, z.colors, names)
    )


def assign_lambdas_r3(f: FieldSpec, m: int) -> list[Felt]:
    if (f.q - 1) % 3:
        raise NoOrder3Roots(f"3 does not divide {f.q} - 1")
    bound = 6 * m + 1 if f.q % 2 else 3 * m + 1
    if f.q < bound:
        raise FieldTooSmall(f"GF({f.q}) too small for m={m}: need q >= {bound}")
    out: list[Felt] = []
    seen: set[int] = set()
    for x in enumerate_nonzero(f):
        s = (x**6).value
        if s not in seen:
            seen.add(s)
            out.append(x)
            if len(out) == m:
                return out
    raise FieldTooSmall(f"GF({f.q}) has fewer than {m} distinct sixth powers")


def build_r3(m: int, f: FieldSpec, verify: bool = True) -> ASSet:
    c = constants_for_char(f)
    lams = assign_lambdas_r3(f, m)
    pairs: list[ASPair] = []
    for i, (z, lam) in enumerate(zip(matchings_r3(m), lams)):
        pairs.extend(triple_from_matching(f, z, lam, c, i))
    aset = ASSet(
        pairs, f, 3**m, 3, "r3-access-optimal", m,
        {"lambdas": [x.value for x in lams], "constants": [x.value for x in c.as_tuple()]},
    )
    if verify:
        from .verify import full

        cert = full(aset)
        if not cert.passed:
            raise VerificationFailed(f"three-parity set failed verification over GF({f.q})", cert)
    return aset
