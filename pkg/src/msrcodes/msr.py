"""Encoding, any-k reconstruction and projection-based exact repair.

Node indices are 0-based: nodes ``0..k-1`` are systematic and ``k..k+r-1``
hold the parities ``C_{k+t} = sum_i A_i^t C_i`` (column vectors).  A helper
repairing systematic node j sends ``S_j_hat @ C`` where the rows of
``S_j_hat`` are the echelon basis of S_j.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .aset import ASSet
from .gf import FieldSpec
from .linalg import Mat, Singular, is_unit_vector_basis, mat_pow, solve, support, vstack


class LengthMismatch(ValueError):
    pass


class BadSubset(ValueError):
    pass


class BadIndex(IndexError):
    pass


class InterferenceSolveFailed(ArithmeticError):
    pass


@dataclass(eq=False)
class CodeSpec:
    aset: ASSet
    _powers: list[list[Mat]] = field(init=False, repr=False)
    _interference: dict[int, dict[tuple[int, int], np.ndarray]] = field(init=False, repr=False, default_factory=dict)

    def __post_init__(self) -> None:
        self._powers = [[mat_pow(a, t) for t in range(self.r)] for a in self.aset.matrices]

    @property
    def field(self) -> FieldSpec:
        return self.aset.field

    @property
    def k(self) -> int:
        return self.aset.k

    @property
    def r(self) -> int:
        return self.aset.r

    @property
    def ell(self) -> int:
        return self.aset.ell

    @property
    def n(self) -> int:
        return self.k + self.r

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def file_size(self) -> int:
        return self.k * self.ell

    @property
    def variant(self) -> str:
        return self.aset.variant

    @property
    def access_optimal(self) -> bool:
        return all(is_unit_vector_basis(s) for s in self.aset.subspaces)

    def power(self, i: int, t: int) -> Mat:
        return self._powers[i][t]

    def generator(self) -> Mat:
        """The k*ell x (k+r)*ell block generator [I | A_i^t].

        Block (i, j) maps data column C_i into node j, so node j stores
        ``sum_i G[i, j] @ C_i``.
        """
        f, ell, k = self.field, self.ell, self.k
        g = np.zeros((k * ell, self.n * ell), dtype=np.int64)
        g[:, : k * ell] = np.eye(k * ell, dtype=np.int64)
        for i in range(k):
            for t in range(self.r):
                g[i * ell : (i + 1) * ell, (k + t) * ell : (k + t + 1) * ell] = self._powers[i][t].data
        return Mat(f, g)


@dataclass(eq=False)
class NodeArray:
    field: FieldSpec
    columns: list[np.ndarray]

    @property
    def n(self) -> int:
        return len(self.columns)

    def _width(self) -> int:
        return len(format(self.field.q - 1, "x"))

    def to_hex(self) -> list[str]:
        w = self._width()
        return ["".join(format(int(x), f"0{w}x") for x in col) for col in self.columns]

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "columns": self.to_hex()}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1) + "\n"

    @classmethod
    def from_json(cls, d: dict) -> NodeArray:
        f = FieldSpec.from_json(d["field"])
        w = len(format(f.q - 1, "x"))
        cols = []
        for s in d["columns"]:
            if len(s) % w:
                raise LengthMismatch("hex column length is not a multiple of the digit width")
            col = np.array([int(s[i : i + w], 16) for i in range(0, len(s), w)], dtype=np.int64)
            if col.size and col.max() >= f.q:
                raise ValueError("symbol out of range for the field")
            cols.append(col)
        return cls(f, cols)


@dataclass(eq=False)
class RepairTranscript:
    failed: int
    projector: Mat
    payloads: dict[int, np.ndarray]
    symbols_sent: int
    symbols_accessed: dict[int, int]
    recovered: np.ndarray

    def to_json(self) -> dict:
        f = self.projector.field
        w = len(format(f.q - 1, "x"))
        hexify = lambda v: "".join(format(int(x), f"0{w}x") for x in v)  # noqa: E731
        return {
            "failed": self.failed,
            "projector": self.projector.to_grid(),
            "payloads": {str(i): hexify(p) for i, p in sorted(self.payloads.items())},
            "symbols_sent": self.symbols_sent,
            "symbols_accessed": {str(i): c for i, c in sorted(self.symbols_accessed.items())},
            "recovered": hexify(self.recovered),
        }


def _as_vec(f: FieldSpec, x) -> np.ndarray:
    v = np.asarray(x, dtype=np.int64).reshape(-1)
    if v.size and (v.min() < 0 or v.max() >= f.q):
        raise ValueError("symbol out of range for the field")
    return v


def encode(spec: CodeSpec, file) -> NodeArray:
    f, ell, k = spec.field, spec.ell, spec.k
    data = _as_vec(f, file)
    if data.size != spec.file_size:
        raise LengthMismatch(f"file has {data.size} symbols, expected {spec.file_size}")
    cols = [data[i * ell : (i + 1) * ell].copy() for i in range(k)]
    for t in range(spec.r):
        acc = np.zeros(ell, dtype=np.int64)
        for i in range(k):
            acc = f.add(acc, f.matmul(spec.power(i, t).data, cols[i][:, None])[:, 0])
        cols.append(acc)
    return NodeArray(f, cols)


def reconstruct(spec: CodeSpec, nodes: Mapping[int, Sequence[int] | np.ndarray]) -> np.ndarray:
    """Recover the file from exactly k node columns keyed by node index."""
    f, ell, k = spec.field, spec.ell, spec.k
    idx = sorted(nodes)
    if len(idx) != k or len(set(idx)) != k:
        raise BadSubset(f"need exactly {k} distinct nodes, got {len(idx)}")
    if any(not 0 <= j < spec.n for j in idx):
        raise BadSubset(f"node index out of range 0..{spec.n - 1}")
    sys_ = np.zeros((k * ell, k * ell), dtype=np.int64)
    rhs = np.zeros((k * ell, 1), dtype=np.int64)
    for row, j in enumerate(idx):
        rs = slice(row * ell, (row + 1) * ell)
        col = _as_vec(f, nodes[j])
        if col.size != ell:
            raise LengthMismatch(f"node {j} column has {col.size} symbols, expected {ell}")
        rhs[rs, 0] = col
        if j < k:
            sys_[rs, j * ell : (j + 1) * ell] = np.eye(ell, dtype=np.int64)
        else:
            for i in range(k):
                sys_[rs, i * ell : (i + 1) * ell] = spec.power(i, j - k).data
    return solve(Mat(f, sys_), Mat(f, rhs)).data[:, 0].copy()


def make_projector(spec: CodeSpec, j: int) -> Mat:
    if not 0 <= j < spec.k:
        raise BadIndex(f"only systematic nodes 0..{spec.k - 1} can be repaired, got {j}")
    return spec.aset.pairs[j].s.basis


def _interference(spec: CodeSpec, j: int) -> dict[tuple[int, int], np.ndarray]:
    """M_{i,t} with S_hat A_i^t = M_{i,t} S_hat, for every i != j and t >= 1."""
    cache = spec._interference.get(j)
    if cache is not None:
        return cache
    proj = make_projector(spec, j)
    pivots = spec.aset.pairs[j].s.pivots
    out = {}
    for i in range(spec.k):
        if i == j:
            continue
        for t in range(1, spec.r):
            target = proj @ spec.power(i, t)
            # proj is in reduced echelon form, so its pivot columns are the identity
            m = target.data[:, pivots]
            if not np.array_equal(spec.field.matmul(m, proj.data), target.data):
                raise InterferenceSolveFailed(f"S_{j} is not invariant under A_{i}^{t}")
            out[(i, t)] = m
    spec._interference[j] = out
    return out


def repair(spec: CodeSpec, store: NodeArray, j: int) -> RepairTranscript:
    f, k, ell = spec.field, spec.k, spec.ell
    proj = make_projector(spec, j)
    if store.n != spec.n:
        raise LengthMismatch(f"store has {store.n} nodes, expected {spec.n}")
    helpers = [i for i in range(spec.n) if i != j]
    payloads = {i: f.matmul(proj.data, store.columns[i][:, None])[:, 0] for i in helpers}
    accessed = len(support(spec.aset.pairs[j].s))

    mats = _interference(spec, j)
    cleaned = []
    for t in range(spec.r):
        y = payloads[k + t]
        for i in range(k):
            if i == j:
                continue
            contrib = payloads[i] if t == 0 else f.matmul(mats[(i, t)], payloads[i][:, None])[:, 0]
            y = f.sub(y, contrib)
        cleaned.append(y)
    lhs = vstack(f, [proj @ spec.power(j, t) for t in range(spec.r)])
    rhs = Mat(f, np.concatenate(cleaned)[:, None])
    try:
        recovered = solve(lhs, rhs).data[:, 0].copy()
    except Singular as e:
        raise InterferenceSolveFailed(f"independence fails for node {j}") from e
    return RepairTranscript(
        failed=j,
        projector=proj,
        payloads=payloads,
        symbols_sent=sum(p.size for p in payloads.values()),
        symbols_accessed={i: accessed for i in helpers},
        recovered=recovered,
    )


def bandwidth_budget(spec: CodeSpec) -> tuple[int, int]:
    beta = spec.ell // spec.r
    return beta, (spec.k + spec.r - 1) * beta
