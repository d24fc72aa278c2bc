"""Canonical set partitions and closure of equivalences under unary maps.

Every relation the engine handles (right congruences, two-sided congruences,
semimodule congruences, annihilators) is an equivalence relation on
``range(n)`` and is stored as a :class:`Partition` in first-occurrence form:
``labels[i]`` is the class number of ``i`` and class numbers appear in
increasing order of their least member.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Sequence

DEFAULT_MAX_RELATIONS = 200_000
MAX_RELATIONS_ENV = "SEMIRING_LAB_MAX_RELATIONS"


class EnumerationLimitError(RuntimeError):
    """Raised when a lattice enumeration exceeds the configured cap."""


def max_relations() -> int:
    value = os.environ.get(MAX_RELATIONS_ENV)
    return int(value) if value else DEFAULT_MAX_RELATIONS


def _canonical(labels: Iterable[int]) -> tuple[int, ...]:
    seen: dict[int, int] = {}
    return tuple(seen.setdefault(x, len(seen)) for x in labels)


@dataclass(frozen=True)
class Partition:
    labels: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", _canonical(self.labels))

    @classmethod
    def discrete(cls, n: int) -> "Partition":
        return cls(tuple(range(n)))

    @classmethod
    def full(cls, n: int) -> "Partition":
        return cls((0,) * n)

    @classmethod
    def from_classes(cls, n: int, classes: Iterable[Iterable[int]]) -> "Partition":
        labels = [-1] * n
        for k, block in enumerate(classes):
            for x in block:
                if not 0 <= x < n:
                    raise ValueError(f"element {x} out of range for size {n}")
                if labels[x] != -1:
                    raise ValueError(f"element {x} appears in two classes")
                labels[x] = k
        if -1 in labels:
            raise ValueError(f"element {labels.index(-1)} is in no class")
        return cls(tuple(labels))

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "Partition":
        """Equivalence closure of a set of pairs."""
        uf = UnionFind(n)
        for a, b in pairs:
            uf.union(a, b)
        return uf.partition()

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def num_classes(self) -> int:
        return max(self.labels) + 1 if self.labels else 0

    @property
    def classes(self) -> tuple[tuple[int, ...], ...]:
        blocks: list[list[int]] = [[] for _ in range(self.num_classes)]
        for x, k in enumerate(self.labels):
            blocks[k].append(x)
        return tuple(tuple(b) for b in blocks)

    def class_of(self, x: int) -> frozenset[int]:
        k = self.labels[x]
        return frozenset(i for i, c in enumerate(self.labels) if c == k)

    def same(self, a: int, b: int) -> bool:
        return self.labels[a] == self.labels[b]

    def is_discrete(self) -> bool:
        return self.num_classes == self.n

    def is_full(self) -> bool:
        return self.num_classes <= 1

    def representatives(self) -> tuple[int, ...]:
        """Least member of each class, in class order."""
        reps: list[int] = []
        for x, k in enumerate(self.labels):
            if k == len(reps):
                reps.append(x)
        return tuple(reps)

    def representatives_of_each(self) -> tuple[int, ...]:
        """Class representative of every element."""
        reps = self.representatives()
        return tuple(reps[k] for k in self.labels)

    def __le__(self, other: "Partition") -> bool:
        # containment of relations: every class of self sits inside a class of other
        self._check(other)
        image: dict[int, int] = {}
        return all(image.setdefault(a, b) == b for a, b in zip(self.labels, other.labels))

    def __lt__(self, other: "Partition") -> bool:
        return self <= other and self != other

    def __ge__(self, other: "Partition") -> bool:
        return other <= self

    def __gt__(self, other: "Partition") -> bool:
        return other < self

    def meet(self, other: "Partition") -> "Partition":
        self._check(other)
        return Partition(tuple(zip(self.labels, other.labels)))  # type: ignore[arg-type]

    def join(self, other: "Partition") -> "Partition":
        self._check(other)
        uf = UnionFind(self.n)
        for labels in (self.labels, other.labels):
            first: dict[int, int] = {}
            for x, k in enumerate(labels):
                uf.union(first.setdefault(k, x), x)
        return uf.partition()

    def sort_key(self) -> tuple:
        # finest relations first, then lexicographic on labels
        return (-self.num_classes, self.labels)

    def to_json(self) -> dict:
        return {"classes": [list(c) for c in self.classes]}

    @classmethod
    def from_json(cls, n: int, obj: dict) -> "Partition":
        return cls.from_classes(n, obj["classes"])

    def __repr__(self) -> str:
        return "Partition(" + "|".join(",".join(map(str, c)) for c in self.classes) + ")"

    def _check(self, other: "Partition") -> None:
        if self.n != other.n:
            raise ValueError(f"partitions over different sets ({self.n} vs {other.n})")


def meet_all(n: int, partitions: Iterable[Partition]) -> Partition:
    """Intersection of relations; the empty meet is the full relation."""
    result = Partition.full(n)
    for p in partitions:
        result = result.meet(p)
    return result


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra < rb:
            self.parent[rb] = ra
        else:
            self.parent[ra] = rb
        return True

    def partition(self) -> Partition:
        return Partition(tuple(self.find(x) for x in range(len(self.parent))))


def close(
    n: int,
    maps: Sequence[Sequence[int]],
    pairs: Iterable[tuple[int, int]],
    base: Partition | None = None,
) -> Partition:
    """Smallest equivalence containing ``base`` and ``pairs`` that is stable
    under every unary map in ``maps`` (each a length-``n`` table).

    ``base`` must itself be stable; only the new pairs are propagated.
    """
    uf = UnionFind(n)
    if base is not None:
        for a, b in zip(range(n), base.representatives_of_each()):
            uf.union(a, b)
    work = list(pairs)
    while work:
        a, b = work.pop()
        if uf.union(a, b):
            for f in maps:
                fa, fb = f[a], f[b]
                if fa != fb:
                    work.append((fa, fb))
    return uf.partition()


def stability_violation(
    partition: Partition, maps: Sequence[Sequence[int]]
) -> tuple[int, int, int] | None:
    """First ``(a, b, k)`` with ``a ~ b`` but ``maps[k][a] !~ maps[k][b]``.

    Pairs are scanned as (class representative, member) so the witness is
    reported with the smaller element first.
    """
    reps = partition.representatives_of_each()
    labels = partition.labels
    for b, a in enumerate(reps):
        if a == b:
            continue
        for k, f in enumerate(maps):
            if labels[f[a]] != labels[f[b]]:
                return a, b, k
    return None


def stable_partitions(
    n: int, maps: Sequence[Sequence[int]], limit: int | None = None
) -> list[Partition]:
    """All equivalences on ``range(n)`` stable under ``maps``.

    Computed as the join-closure of the discrete relation and the principal
    (one-pair generated) stable equivalences; sorted by :meth:`Partition.sort_key`.
    """
    limit = max_relations() if limit is None else limit
    principals: set[Partition] = set()
    for a in range(n):
        for b in range(a + 1, n):
            principals.add(close(n, maps, [(a, b)]))
    principals_sorted = sorted(principals, key=Partition.sort_key)
    bottom = Partition.discrete(n)
    found = {bottom}
    frontier = [bottom]
    while frontier:
        nxt = []
        for p in frontier:
            for q in principals_sorted:
                if q <= p:
                    continue
                j = p.join(q)
                if j not in found:
                    found.add(j)
                    nxt.append(j)
                    if len(found) > limit:
                        raise EnumerationLimitError(
                            f"more than {limit} relations; raise {MAX_RELATIONS_ENV} to continue"
                        )
        frontier = nxt
    return sorted(found, key=Partition.sort_key)


def closed_subsets(
    n: int,
    binary: Sequence[Sequence[Sequence[int]]],
    unary: Sequence[Sequence[int]],
    seed: Iterable[int],
) -> list[frozenset[int]]:
    """All subsets containing ``seed`` closed under the given binary tables and
    unary maps, found by closing ``X | {x}`` from the seed closure outward."""

    def closure(start: Iterable[int]) -> frozenset[int]:
        members = set(start)
        work = list(members)
        while work:
            x = work.pop()
            new = [f[x] for f in unary]
            for table in binary:
                for y in list(members):
                    new.append(table[x][y])
                    new.append(table[y][x])
            for z in new:
                if z not in members:
                    members.add(z)
                    work.append(z)
        return frozenset(members)

    bottom = closure(seed)
    found = {bottom}
    frontier = [bottom]
    while frontier:
        nxt = []
        for s in frontier:
            for x in range(n):
                if x not in s:
                    t = closure(s | {x})
                    if t not in found:
                        found.add(t)
                        nxt.append(t)
        frontier = nxt
    return sorted(found, key=lambda s: (len(s), sorted(s)))
