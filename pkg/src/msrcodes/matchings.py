"""Boolean and ternary cubes and the explicit matching families built on them.

Vertex ``i`` is identified with the base-r digit string of ``i`` of length m,
digit 0 leftmost and most significant.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence


class BadIndex(ValueError):
    pass


class TooSmall(ValueError):
    pass


@dataclass(frozen=True)
class Matching:
    r: int
    ell: int
    colors: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.colors) != self.r:
            raise ValueError(f"expected {self.r} color sets, got {len(self.colors)}")
        if any(len(c) != self.ell // self.r for c in self.colors):
            raise ValueError("color sets must each have ell/r vertices")
        if sorted(v for c in self.colors for v in c) != list(range(self.ell)):
            raise ValueError("color sets do not partition the vertex set")

    @property
    def edges(self) -> list[tuple[int, ...]]:
        return list(zip(*self.colors))

    def color_of(self, v: int) -> int:
        for c, vs in enumerate(self.colors):
            if v in vs:
                return c
        raise BadIndex(v)

    def to_json(self) -> dict:
        return {"r": self.r, "ell": self.ell, "colors": [list(c) for c in self.colors]}

    @classmethod
    def from_json(cls, d: dict) -> Matching:
        return cls(int(d["r"]), int(d["ell"]), tuple(tuple(int(v) for v in c) for c in d["colors"]))


def _digits_to_int(digits: Sequence[int], base: int) -> int:
    n = 0
    for d in digits:
        n = n * base + d
    return n


def _cube(m: int, base: int, constraints: dict[int, int]) -> tuple[int, ...]:
    free = [i for i in range(m) if i not in constraints]
    out = []
    # product() varies its last factor fastest, which is lexicographic order
    for vals in product(range(base), repeat=len(free)):
        digits = [0] * m
        for i, b in constraints.items():
            digits[i] = b
        for i, b in zip(free, vals):
            digits[i] = b
        out.append(_digits_to_int(digits, base))
    return tuple(out)


def boolean_cube(m: int, constraints: Iterable[tuple[int, int]] = ()) -> tuple[int, ...]:
    cons: dict[int, int] = {}
    for i, b in constraints:
        if i in cons or not 0 <= i < m or b not in (0, 1):
            raise BadIndex(f"bad constraint ({i}, {b}) for m={m}")
        cons[i] = b
    return _cube(m, 2, cons)


def ternary_cube(m: int, i: int, b: int) -> tuple[int, ...]:
    """Length-m ternary strings whose i-th digit is b.

    Digit positions here run 1..m from the left, unlike the 0-based boolean
    cube constraints.
    """
    if not 1 <= i <= m or b not in (0, 1, 2):
        raise BadIndex(f"bad digit constraint ({i}, {b}) for m={m}")
    return _cube(m, 3, {i - 1: b})


def matchings_r2(m: int) -> list[Matching]:
    if m < 2:
        raise TooSmall("the two-parity family needs m >= 2")
    C = lambda *cons: boolean_cube(m, cons)  # noqa: E731
    ell = 2**m
    out: list[Matching] = []
    for t in range(m // 2):
        a, b = 2 * t, 2 * t + 1
        out.append(Matching(2, ell, (
            C((a, 0), (b, 0)) + C((a, 0), (b, 1)),
            C((a, 1), (b, 0)) + C((a, 1), (b, 1)),
        )))
        out.append(Matching(2, ell, (
            C((a, 0), (b, 0)) + C((a, 1), (b, 0)),
            C((a, 0), (b, 1)) + C((a, 1), (b, 1)),
        )))
    if m % 2:
        out.append(Matching(2, ell, (C((m - 1, 0)), C((m - 1, 1)))))
    return out


def matchings_r3(m: int) -> list[Matching]:
    if m < 1:
        raise TooSmall("need m >= 1")
    return [Matching(3, 3**m, tuple(ternary_cube(m, i + 1, b) for b in range(3))) for i in range(m)]


def pairing_condition(x: Matching, y: Matching) -> bool:
    if (x.r, x.ell) != (y.r, y.ell):
        raise ValueError("matchings over different hypergraphs")

    def mono(edges, other: Matching) -> bool:
        col = {v: c for c, vs in enumerate(other.colors) for v in vs}
        return all(len({col[v] for v in e}) == 1 for e in edges)

    return mono(x.edges, y) and mono(y.edges, x)
