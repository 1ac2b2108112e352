from __future__ import annotations

from itertools import combinations

import numpy as np
import pytest

from msrcodes.linalg import Mat, Singular, support
from msrcodes.msr import (
    BadIndex,
    BadSubset,
    CodeSpec,
    InterferenceSolveFailed,
    LengthMismatch,
    NodeArray,
    bandwidth_budget,
    encode,
    make_projector,
    reconstruct,
    repair,
)


def rand_file(spec, seed=0):
    return np.random.default_rng(seed).integers(0, spec.q, spec.file_size)


def test_zero_file(get_code):
    spec = get_code("r2", 2, 3)
    store = encode(spec, np.zeros(spec.file_size, dtype=np.int64))
    assert all(not c.any() for c in store.columns)


def test_encode_unit_file(get_code):
    spec = get_code("r2", 2, 3)
    data = np.zeros(spec.file_size, dtype=np.int64)
    data[0] = 1
    store = encode(spec, data)
    assert store.columns[4].tolist() == [1, 0, 0, 0]
    assert store.columns[5].tolist() == spec.aset.pairs[0].a.data[:, 0].tolist()


def test_encode_matches_generator(get_code):
    spec = get_code("r3", 1, 7)
    f, ell = spec.field, spec.ell
    data = rand_file(spec, 3)
    store = encode(spec, data)
    g = spec.generator().data
    for j in range(spec.n):
        acc = np.zeros(ell, dtype=np.int64)
        for i in range(spec.k):
            blk = g[i * ell:(i + 1) * ell, j * ell:(j + 1) * ell]
            acc = f.add(acc, f.matmul(blk, data[i * ell:(i + 1) * ell, None])[:, 0])
        assert np.array_equal(store.columns[j], acc)


def test_length_mismatch(get_code):
    with pytest.raises(LengthMismatch):
        encode(get_code("r2", 2, 3), [0] * 5)


def test_reconstruct_examples(get_code):
    spec = get_code("r2", 2, 3)
    data = rand_file(spec, 7)
    store = encode(spec, data)
    sys_nodes = {i: store.columns[i] for i in range(spec.k)}
    assert np.array_equal(reconstruct(spec, sys_nodes), data)
    assert np.array_equal(reconstruct(spec, {i: store.columns[i] for i in (0, 1, 4, 5)}), data)
    with pytest.raises(BadSubset):
        reconstruct(spec, {i: store.columns[i] for i in (0, 1, 4)})


@pytest.mark.parametrize("kind,m,q", [("r2", 3, 4), ("r3", 2, 13), ("r3plus", 2, 97)])
def test_reconstruct_sampled_subsets(get_code, kind, m, q):
    spec = get_code(kind, m, q)
    data = rand_file(spec, q)
    store = encode(spec, data)
    subsets = list(combinations(range(spec.n), spec.k))
    rng = np.random.default_rng(m)
    for idx in rng.choice(len(subsets), size=min(50, len(subsets)), replace=False):
        sub = subsets[idx]
        assert np.array_equal(reconstruct(spec, {i: store.columns[i] for i in sub}), data)


def test_projector(get_code):
    spec = get_code("r2", 2, 3)
    p = make_projector(spec, 0)
    assert p.to_grid() == [[1, 0, 0, 0], [0, 1, 0, 0]]
    r3p = get_code("r3plus", 1, 61)
    assert np.count_nonzero(make_projector(r3p, 3).data) == 3
    with pytest.raises(BadIndex):
        make_projector(spec, spec.k)


def test_repair_examples(get_code):
    spec = get_code("r2", 2, 3)
    store = encode(spec, rand_file(spec, 11))
    tr = repair(spec, store, 1)
    assert np.array_equal(tr.recovered, store.columns[1])
    assert tr.symbols_sent == 10
    r3 = get_code("r3", 1, 7)
    store = encode(r3, rand_file(r3, 12))
    tr = repair(r3, store, 0)
    assert tr.symbols_sent == 5 and set(tr.symbols_accessed.values()) == {1}
    r3p = get_code("r3plus", 1, 61)
    store = encode(r3p, rand_file(r3p, 13))
    tr = repair(r3p, store, 3)
    assert np.array_equal(tr.recovered, store.columns[3])
    assert set(tr.symbols_accessed.values()) == {3}


def test_repair_rejects_parity(get_code):
    spec = get_code("r3", 1, 7)
    store = encode(spec, rand_file(spec))
    with pytest.raises(BadIndex):
        repair(spec, store, spec.k)


def test_bandwidth_budget(get_code):
    assert bandwidth_budget(get_code("r2", 2, 3)) == (2, 10)
    assert bandwidth_budget(get_code("r3", 1, 7)) == (1, 5)
    assert bandwidth_budget(get_code("r3plus", 2, 97)) == (3, 30)


def test_broken_invariance_detected(get_set):
    aset = get_set("r3", 1, 7)
    f = aset.field
    spec = CodeSpec(aset.replace(1, a=Mat(f, aset.pairs[1].a.data.T)))
    store = encode(spec, rand_file(spec))
    with pytest.raises(InterferenceSolveFailed):
        repair(spec, store, 0)


def test_singular_subset_detected(get_set):
    aset = get_set("r2", 2, 3)
    spec = CodeSpec(aset.replace(1, a=aset.pairs[0].a))
    store = encode(spec, rand_file(spec))
    # nodes 2, 3 plus both parities: the two equal matrices make this system singular
    with pytest.raises(Singular):
        reconstruct(spec, {i: store.columns[i] for i in (2, 3, 4, 5)})


def test_access_equals_support(get_code):
    spec = get_code("r3plus", 2, 97)
    store = encode(spec, rand_file(spec))
    for j in range(spec.k):
        tr = repair(spec, store, j)
        assert set(tr.symbols_accessed.values()) == {len(support(spec.aset.pairs[j].s))}


def test_nodearray_roundtrip(get_code):
    spec = get_code("r3plus", 1, 61)
    store = encode(spec, rand_file(spec))
    back = NodeArray.from_json(store.to_json())
    assert all(np.array_equal(a, b) for a, b in zip(store.columns, back.columns))
    assert all(len(h) == 2 * spec.ell for h in store.to_hex())
