from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from semiring_lab.partition import (
    EnumerationLimitError,
    Partition,
    UnionFind,
    close,
    meet_all,
    stable_partitions,
)


def labels(n_max=7):
    return st.integers(1, n_max).flatmap(
        lambda n: st.lists(st.integers(0, n - 1), min_size=n, max_size=n)
    )


def pairs_of(p: Partition):
    return {(a, b) for a in range(p.n) for b in range(p.n) if p.same(a, b)}


def test_canonical_first_occurrence():
    assert Partition((5, 5, 2, 5, 9)).labels == (0, 0, 1, 0, 2)
    assert Partition((1, 0)) == Partition((0, 1))


def test_classes_and_repr():
    p = Partition.from_classes(4, [[1, 3], [0, 2]])
    assert p.classes == ((0, 2), (1, 3))
    assert repr(p) == "Partition(0,2|1,3)"
    assert p.to_json() == {"classes": [[0, 2], [1, 3]]}
    assert Partition.from_json(4, p.to_json()) == p


def test_from_classes_rejects_bad_input():
    with pytest.raises(ValueError):
        Partition.from_classes(3, [[0, 1]])
    with pytest.raises(ValueError):
        Partition.from_classes(3, [[0, 1], [1, 2]])
    with pytest.raises(ValueError):
        Partition.from_classes(2, [[0, 1, 2]])


def test_order_is_containment():
    d, f = Partition.discrete(3), Partition.full(3)
    mid = Partition.from_pairs(3, [(0, 2)])
    assert d < mid < f
    assert not mid <= d
    assert d.is_discrete() and f.is_full()


@given(labels(), st.data())
def test_meet_and_join_are_lattice_bounds(lab, data):
    p = Partition(tuple(lab))
    q = Partition(tuple(data.draw(st.lists(st.integers(0, p.n - 1), min_size=p.n, max_size=p.n))))
    m, j = p.meet(q), p.join(q)
    assert pairs_of(m) == pairs_of(p) & pairs_of(q)
    assert m <= p and m <= q and p <= j and q <= j
    # join is the equivalence closure of the union
    assert j == Partition.from_pairs(p.n, pairs_of(p) | pairs_of(q))


def test_meet_all_empty_is_full():
    assert meet_all(4, []) == Partition.full(4)


def test_union_find():
    uf = UnionFind(5)
    assert uf.union(0, 3)
    assert not uf.union(3, 0)
    uf.union(1, 4)
    assert uf.partition() == Partition.from_classes(5, [[0, 3], [1, 4], [2]])


def _stable(p: Partition, maps) -> bool:
    return all(p.same(f[a], f[b]) for f in maps for a, b in pairs_of(p))


def _all_partitions(n):
    for lab in itertools.product(range(n), repeat=n):
        yield Partition(lab)


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.lists(st.integers(0, n - 1), min_size=n, max_size=n), max_size=3),
    st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=3),
)))
def test_close_is_least_stable_extension(args):
    n, maps, pairs = args
    c = close(n, maps, pairs)
    assert _stable(c, maps)
    assert all(c.same(a, b) for a, b in pairs)
    for p in set(_all_partitions(n)):
        if _stable(p, maps) and all(p.same(a, b) for a, b in pairs):
            assert c <= p


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.lists(st.integers(0, n - 1), min_size=n, max_size=n), max_size=3),
)))
def test_stable_partitions_matches_filter(args):
    n, maps = args
    expected = sorted({p for p in _all_partitions(n) if _stable(p, maps)}, key=Partition.sort_key)
    assert stable_partitions(n, maps) == expected


def test_stable_partitions_cap():
    with pytest.raises(EnumerationLimitError):
        stable_partitions(5, [], limit=10)


def test_cap_from_environment(monkeypatch):
    monkeypatch.setenv("SEMIRING_LAB_MAX_RELATIONS", "3")
    with pytest.raises(EnumerationLimitError):
        stable_partitions(4, [])
