"""Arithmetic in GF(p^k).

Elements are encoded as integers in ``[0, q)``: for prime fields the residue
itself, for extension fields the integer whose base-p digits are the
coefficient vector (constant term least significant).  This integer order is
the canonical element order used everywhere downstream.

All array operations accept and return numpy integer arrays, so matrix code
can stay vectorized; :class:`Felt` wraps a single element for scalar work.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import numpy as np


class FieldError(ValueError):
    pass


class NotPrime(FieldError):
    pass


class NoModulusAvailable(FieldError):
    pass


class NoOrder3Roots(FieldError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


# Monic irreducible moduli, lowest-degree coefficient first.
MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),  # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),  # x^3 + x + 1
    (2, 4): (1, 1, 0, 0, 1),  # x^4 + x + 1
    (2, 6): (1, 1, 0, 0, 0, 0, 1),  # x^6 + x + 1
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``q == p**k``, or None if q is not a prime power."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            while q % p == 0:
                q //= p
                k += 1
            return (p, k) if q == 1 else None
    return None


def field_available(q: int) -> bool:
    """True if :func:`make_field` can build a field of order q."""
    pk = prime_power(q)
    if pk is None:
        return False
    return pk[1] == 1 or pk in MODULI


# -- polynomial helpers over GF(p), coefficient lists lowest degree first --

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _poly_trim([c % p for c in a])
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        shift = len(a) - len(m)
        factor = a[-1] * inv_lead % p
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - factor * c) % p
        _poly_trim(a)
    return a


def _monic_polys(p: int, degree: int) -> Iterable[list[int]]:
    for n in range(p**degree):
        coeffs = []
        for _ in range(degree):
            coeffs.append(n % p)
            n //= p
        yield coeffs + [1]


def is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    k = len(modulus) - 1
    if k <= 3:
        # a reducible polynomial of degree <= 3 has a linear factor
        for x in range(p):
            if sum(c * pow(x, i, p) for i, c in enumerate(modulus)) % p == 0:
                return False
        return True
    for d in range(1, k // 2 + 1):
        for g in _monic_polys(p, d):
            if not _poly_mod(list(modulus), g, p):
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^k) with a fixed modulus; q is cached as a plain attribute."""

    p: int
    k: int
    modulus: tuple[int, ...] = ()
    q: int = field(init=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "q", self.p**self.k)

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def __call__(self, value: int) -> Felt:
        return Felt(self, int(value))

    @property
    def is_prime(self) -> bool:
        return self.k == 1

    @property
    def char(self) -> int:
        return self.p

    # ---- tables -------------------------------------------------------

    def _digits(self, n: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(n % self.p)
            n //= self.p
        return out

    def _from_digits(self, digits: Iterable[int]) -> int:
        n = 0
        for d in reversed(list(digits)):
            n = n * self.p + d
        return n

    @cached_property
    def _add_table(self) -> np.ndarray:
        q = self.q
        digits = np.array([self._digits(n) for n in range(q)], dtype=np.int64)
        weights = self.p ** np.arange(self.k, dtype=np.int64)
        s = (digits[:, None, :] + digits[None, :, :]) % self.p
        return (s * weights).sum(axis=2)

    @cached_property
    def _neg_table(self) -> np.ndarray:
        q = self.q
        return np.array(
            [self._from_digits((-d) % self.p for d in self._digits(n)) for n in range(q)],
            dtype=np.int64,
        )

    @cached_property
    def _mul_table(self) -> np.ndarray:
        q = self.q
        mod = list(self.modulus)
        table = np.zeros((q, q), dtype=np.int64)
        polys = [self._digits(n) for n in range(q)]
        for a in range(1, q):
            for b in range(a, q):
                prod = [0] * (2 * self.k - 1)
                for i, x in enumerate(polys[a]):
                    if x:
                        for j, y in enumerate(polys[b]):
                            prod[i + j] += x * y
                r = _poly_mod(prod, mod, self.p)
                table[a, b] = table[b, a] = self._from_digits(r + [0] * (self.k - len(r)))
        return table

    @cached_property
    def _inv_table(self) -> np.ndarray:
        inv = np.zeros(self.q, dtype=np.int64)
        if self.is_prime:
            for a in range(1, self.q):
                inv[a] = pow(a, self.p - 2, self.p)
        else:
            rows, cols = np.nonzero(self._mul_table == 1)
            inv[rows] = cols
        return inv

    # ---- vectorized element-wise arithmetic ---------------------------

    def add(self, a, b):
        if self.is_prime:
            return (np.asarray(a) + b) % self.p
        if self.p == 2:
            return np.bitwise_xor(a, b)
        return self._add_table[a, b]

    def neg(self, a):
        if self.is_prime:
            return (-np.asarray(a)) % self.p
        if self.p == 2:
            return np.asarray(a)
        return self._neg_table[a]

    def sub(self, a, b):
        if self.is_prime:
            return (np.asarray(a) - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.is_prime:
            return (np.asarray(a) * b) % self.p
        return self._mul_table[a, b]

    def inv(self, a):
        a = np.asarray(a)
        if np.any(a == 0):
            raise DivisionByZero("inverse of zero")
        return self._inv_table[a]

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.is_prime:
            return (a.astype(np.int64) @ b.astype(np.int64)) % self.p
        out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        mt = self._mul_table
        for t in range(a.shape[1]):
            col = a[:, t]
            if not col.any():
                continue
            out = self.add(out, mt[col[:, None], b[t][None, :]])
        return out

    # ---- scalar helpers (plain ints) ----------------------------------

    def smul(self, a: int, b: int) -> int:
        if self.is_prime:
            return a * b % self.p
        return int(self._mul_table[a, b])

    def sadd(self, a: int, b: int) -> int:
        if self.is_prime:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return int(self._add_table[a, b])

    def ssub(self, a: int, b: int) -> int:
        if self.is_prime:
            return (a - b) % self.p
        return self.sadd(a, int(self.neg(b)))

    def sinv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return int(self._inv_table[a])

    def spow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.sinv(a), -e
        result, base = 1, a
        while e:
            if e & 1:
                result = self.smul(result, base)
            base = self.smul(base, base)
            e >>= 1
        return result

    def from_int(self, n: int) -> int:
        """Image of the integer n (n copies of the unit) in this field."""
        return n % self.p

    def to_json(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, d: dict) -> FieldSpec:
        f = make_field(int(d["p"]), int(d["k"]))
        if list(f.modulus) != [int(c) for c in d.get("modulus", [])]:
            raise NoModulusAvailable(f"unsupported modulus {d.get('modulus')} for GF({f.q})")
        return f


@dataclass(frozen=True)
class Felt:
    """A single field element."""

    spec: FieldSpec
    value: int

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.spec.q:
            object.__setattr__(self, "value", self.spec.from_int(self.value) if self.spec.is_prime else self.value)
            if not 0 <= self.value < self.spec.q:
                raise FieldError(f"{self.value} is not an element of {self.spec}")

    def _coerce(self, other) -> int:
        if isinstance(other, Felt):
            if other.spec != self.spec:
                raise FieldError("operands from different fields")
            return other.value
        if isinstance(other, (int, np.integer)):
            return self.spec.from_int(int(other))
        return NotImplemented

    def __add__(self, other):
        return Felt(self.spec, self.spec.sadd(self.value, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Felt(self.spec, self.spec.ssub(self.value, self._coerce(other)))

    def __rsub__(self, other):
        return Felt(self.spec, self.spec.ssub(self._coerce(other), self.value))

    def __mul__(self, other):
        return Felt(self.spec, self.spec.smul(self.value, self._coerce(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return Felt(self.spec, int(self.spec.neg(self.value)))

    def __truediv__(self, other):
        return self * Felt(self.spec, self._coerce(other)).inv()

    def __pow__(self, e: int):
        return Felt(self.spec, self.spec.spow(self.value, e))

    def inv(self) -> Felt:
        return Felt(self.spec, self.spec.sinv(self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.spec._digits(self.value))

    def __repr__(self) -> str:
        return f"{self.value}@GF({self.spec.q})"


@dataclass(frozen=True)
class CubeRoots:
    one: Felt
    g1: Felt
    g2: Felt


def make_field(p: int, k: int = 1) -> FieldSpec:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise FieldError("extension degree must be >= 1")
    if k == 1:
        return FieldSpec(p, 1, ())
    try:
        modulus = MODULI[(p, k)]
    except KeyError:
        raise NoModulusAvailable(f"no built-in modulus for GF({p}^{k})") from None
    if not is_irreducible(modulus, p):
        raise FieldError(f"modulus {modulus} is reducible")
    return FieldSpec(p, k, modulus)


def field_of_order(q: int) -> FieldSpec:
    pk = prime_power(q)
    if pk is None:
        raise NotPrime(f"{q} is not a prime power")
    return make_field(*pk)


def enumerate_nonzero(f: FieldSpec) -> list[Felt]:
    return [Felt(f, v) for v in range(1, f.q)]


def cube_roots_of_unity(f: FieldSpec) -> CubeRoots:
    if (f.q - 1) % 3:
        raise NoOrder3Roots(f"3 does not divide {f.q} - 1")
    for x in enumerate_nonzero(f):
        if x.value != 1 and (x**3).value == 1:
            return CubeRoots(f(1), x, x * x)
    raise NoOrder3Roots(f"no element of order 3 in {f}")  # pragma: no cover
