"""Field-size selection and escalation for the three code families."""

from __future__ import annotations

from typing import Iterator

from .aset import ASSet, ConstructionError, FieldTooSmall, VerificationFailed
from .construct_r2 import build_r2
from .construct_r3 import build_r3
from .construct_r3plus import Infeasible, NoValidH, build_r3plus
from .gf import field_available, field_of_order, prime_power

Q_CAP = 1024
M_CAPS = {2: 7, 3: 4}


class UsageError(ValueError):
    pass


def _usable(q: int) -> bool:
    return field_available(q)


def candidates(r: int, m: int, variant: str = "access-optimal", parity: str | None = None) -> Iterator[int]:
    """Admissible field orders in increasing order, capped at Q_CAP."""
    for q in range(2, Q_CAP + 1):
        if not _usable(q):
            continue
        if r == 2:
            if q >= m + 1:
                yield q
            continue
        p, _ = prime_power(q)  # type: ignore[misc]
        if p == 3 or (q - 1) % 3:
            continue
        if variant == "long":
            if q > 42 * m + 1:
                yield q
            continue
        odd = q % 2 == 1
        if parity == "odd" and not odd or parity == "even" and odd:
            continue
        if q >= (6 * m + 1 if odd else 3 * m + 1):
            yield q


def check_config(r: int, m: int, variant: str) -> None:
    if r not in M_CAPS:
        raise UsageError(f"r must be 2 or 3, got {r}")
    if variant not in ("access-optimal", "long"):
        raise UsageError(f"unknown variant {variant!r}")
    if r == 2 and variant == "long":
        raise UsageError("the long variant exists only for r=3")
    lo = 2 if r == 2 else 1
    if not lo <= m <= M_CAPS[r]:
        raise UsageError(f"m must be in [{lo}, {M_CAPS[r]}] for r={r}")


def build(r: int, m: int, q: int, variant: str = "access-optimal") -> ASSet:
    f = field_of_order(q)
    if r == 2:
        return build_r2(m, f)
    if variant == "long":
        return build_r3plus(m, f)
    return build_r3(m, f)


def construct_code(
    r: int, m: int, variant: str = "access-optimal", q: int | None = None, parity: str | None = None
) -> ASSet:
    """Build and certify a code; without ``q``, scan upward until one verifies."""
    check_config(r, m, variant)
    if q is not None:
        return build(r, m, q, variant)
    last: Exception | None = None
    for cand in candidates(r, m, variant, parity):
        try:
            return build(r, m, cand, variant)
        except (FieldTooSmall, NoValidH, Infeasible, VerificationFailed) as e:
            last = e
    raise ConstructionError(f"no field up to q={Q_CAP} yields a verified code: {last}")
