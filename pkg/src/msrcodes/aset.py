"""(A, S)-sets: encoding matrices paired with repair subspaces."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .gf import FieldSpec
from .linalg import Mat, Subspace, is_invertible, span


class ConstructionError(ValueError):
    pass


class FieldTooSmall(ConstructionError):
    pass


class ZeroLambda(ConstructionError):
    pass


class VerificationFailed(ConstructionError):
    def __init__(self, msg: str, certificate: Any = None):
        super().__init__(msg)
        self.certificate = certificate


VARIANTS = ("r2-access-optimal", "r3-access-optimal", "r3-long")


@dataclass(frozen=True, eq=False)
class ASPair:
    a: Mat
    s: Subspace
    # (matching index, color name) e.g. (0, "Z'") or (1, "Z*")
    label: tuple[int, str]

    def __post_init__(self) -> None:
        if self.a.rows != self.a.cols or self.a.rows != self.s.ambient:
            raise ValueError("A must be square and act on the ambient space of S")


@dataclass(eq=False)
class ASSet:
    pairs: list[ASPair]
    field: FieldSpec
    ell: int
    r: int
    variant: str
    m: int
    extra: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        for p in self.pairs:
            if p.a.field != self.field or p.a.rows != self.ell:
                raise ValueError("pairs must share the field and ell")

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def k(self) -> int:
        return len(self.pairs)

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def matrices(self) -> list[Mat]:
        return [p.a for p in self.pairs]

    @property
    def subspaces(self) -> list[Subspace]:
        return [p.s for p in self.pairs]

    def replace(self, i: int, a: Mat | None = None, s: Subspace | None = None) -> ASSet:
        """Copy with pair i swapped out; used to build corrupted sets in tests."""
        pairs = list(self.pairs)
        old = pairs[i]
        pairs[i] = ASPair(a if a is not None else old.a, s if s is not None else old.s, old.label)
        return ASSet(pairs, self.field, self.ell, self.r, self.variant, self.m, dict(self.extra))

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "m": self.m,
            "r": self.r,
            "ell": self.ell,
            "field": self.field.to_json(),
            **self.extra,
            "pairs": [
                {"A": p.a.to_grid(), "S": p.s.basis.to_grid(), "label": list(p.label)}
                for p in self.pairs
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":")) + "\n"

    @classmethod
    def from_json(cls, d: dict) -> ASSet:
        f = FieldSpec.from_json(d["field"])
        ell, r = int(d["ell"]), int(d["r"])
        if d["variant"] not in VARIANTS:
            raise ValueError(f"unknown variant {d['variant']!r}")
        pairs = []
        for p in d["pairs"]:
            a = np.array(p["A"], dtype=np.int64)
            s = np.array(p["S"], dtype=np.int64).reshape(-1, ell)
            if a.shape != (ell, ell) or a.min(initial=0) < 0 or a.max(initial=0) >= f.q:
                raise ValueError("matrix entries out of range or wrong shape")
            if s.size and (s.min() < 0 or s.max() >= f.q):
                raise ValueError("subspace entries out of range")
            label = p.get("label", [len(pairs), "?"])
            pairs.append(ASPair(Mat(f, a), span(Mat(f, s)), (int(label[0]), str(label[1]))))
        extra = {k: v for k, v in d.items() if k not in {"variant", "m", "r", "ell", "field", "pairs"}}
        return cls(pairs, f, ell, r, d["variant"], int(d["m"]), extra)

    @classmethod
    def loads(cls, text: str) -> ASSet:
        return cls.from_json(json.loads(text))


def conjugate(p: Mat, a: Mat, scale: int = 1) -> Mat:
    """``scale * p^{-1} a p``."""
    from .linalg import invert

    out = invert(p) @ a @ p
    return out.scale(scale) if scale != 1 else out


def unit_rows(f: FieldSpec, ell: int, idx) -> Mat:
    m = np.zeros((len(idx), ell), dtype=np.int64)
    m[np.arange(len(idx)), list(idx)] = 1
    return Mat(f, m)


def check_invertible(p: Mat, what: str) -> None:
    if not is_invertible(p):
        raise ConstructionError(f"{what} is singular")
