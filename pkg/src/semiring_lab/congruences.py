"""Right congruences, right ideals and their regularity classes."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Literal

from more_itertools import set_partitions

from .partition import (
    Partition,
    UnionFind,
    close,
    closed_subsets,
    max_relations,
    meet_all,
    stability_violation,
    stable_partitions,
)
from .semiring import FiniteSemiring

Ideal = frozenset[int]
RegularityKind = Literal["not-regular", "regular", "m-regular", "s-regular"]


def _as_partition(S: FiniteSemiring, p) -> Partition:
    if isinstance(p, Partition):
        part = p
    else:
        part = Partition.from_classes(S.n, p)
    if part.n != S.n:
        raise ValueError(f"partition has {part.n} elements, semiring has {S.n}")
    return part


def right_violation(S: FiniteSemiring, p) -> tuple[int, int, int, str] | None:
    """First ``(a, b, c, law)`` with ``a ~ b`` but ``a+c !~ b+c`` (law ``"+"``)
    or ``ac !~ bc`` (law ``"*"``); None for a right congruence."""
    part = _as_partition(S, p)
    labels = part.labels
    reps = part.representatives_of_each()
    for b, a in enumerate(reps):
        if a == b:
            continue
        for c in S.elements:
            if labels[S.add[a][c]] != labels[S.add[b][c]]:
                return a, b, c, "+"
            if labels[S.mul[a][c]] != labels[S.mul[b][c]]:
                return a, b, c, "*"
    return None


def left_violation(S: FiniteSemiring, p) -> tuple[int, int, int, str] | None:
    part = _as_partition(S, p)
    bad = stability_violation(part, S.left_maps())
    if bad is None:
        return None
    a, b, c = bad
    return a, b, c, "*"


def is_right_congruence(S: FiniteSemiring, p) -> bool:
    return right_violation(S, p) is None


def is_congruence(S: FiniteSemiring, p) -> bool:
    return right_violation(S, p) is None and left_violation(S, p) is None


def principal_right_congruence(S: FiniteSemiring, a: int, b: int) -> Partition:
    return close(S.n, S.right_maps(), [(a, b)])


def right_congruence_closure(S: FiniteSemiring, pairs: Iterable[tuple[int, int]]) -> Partition:
    return close(S.n, S.right_maps(), pairs)


@lru_cache(maxsize=256)
def _cached_right_lattice(S: FiniteSemiring, limit: int) -> tuple[Partition, ...]:
    return tuple(stable_partitions(S.n, S.right_maps(), limit))


def _right_lattice(S: FiniteSemiring, limit: int | None = None) -> tuple[Partition, ...]:
    # the cap is part of the cache key so a lowered cap is honoured
    return _cached_right_lattice(S, max_relations() if limit is None else limit)


@lru_cache(maxsize=256)
def _cached_two_sided_lattice(S: FiniteSemiring, limit: int) -> tuple[Partition, ...]:
    return tuple(p for p in _cached_right_lattice(S, limit) if left_violation(S, p) is None)


def enumerate_right_congruences(S: FiniteSemiring, limit: int | None = None) -> list[Partition]:
    """Every right congruence on ``S``, finest first."""
    return list(_right_lattice(S, limit))


def enumerate_congruences(S: FiniteSemiring, limit: int | None = None) -> list[Partition]:
    """Every two-sided congruence on ``S``, finest first."""
    return list(_cached_two_sided_lattice(S, max_relations() if limit is None else limit))


def brute_force_right_congruences(S: FiniteSemiring) -> list[Partition]:
    """Filter of all set partitions; exponential, only for small ``S``."""
    found = []
    for blocks in set_partitions(range(S.n)):
        p = Partition.from_classes(S.n, blocks)
        if is_right_congruence(S, p):
            found.append(p)
    return sorted(found, key=Partition.sort_key)


# -- ideals ----------------------------------------------------------------


def is_right_ideal(S: FiniteSemiring, I: Iterable[int]) -> bool:
    I = set(I)
    if S.zero not in I:
        return False
    return all(S.add[a][b] in I for a in I for b in I) and all(
        S.mul[a][s] in I for a in I for s in S.elements
    )


def generated_right_ideal(S: FiniteSemiring, gens: Iterable[int]) -> Ideal:
    members = {S.zero, *gens}
    work = list(members)
    while work:
        x = work.pop()
        new = [S.mul[x][s] for s in S.elements]
        new += [S.add[x][y] for y in list(members)]
        for z in new:
            if z not in members:
                members.add(z)
                work.append(z)
    return frozenset(members)


def enumerate_right_ideals(S: FiniteSemiring) -> list[Ideal]:
    right_mul = [tuple(S.mul[x][c] for x in S.elements) for c in S.elements]
    return closed_subsets(S.n, [S.add], right_mul, [S.zero])


def bourne_congruence(S: FiniteSemiring, I: Iterable[int]) -> Partition:
    """``x ~ y`` iff ``x + i1 = y + i2`` for some ``i1, i2`` in ``I``."""
    I = frozenset(I)
    if not is_right_ideal(S, I):
        raise ValueError(f"{sorted(I)} is not a right ideal")
    shifts = [frozenset(S.add[x][i] for i in I) for x in S.elements]
    uf = UnionFind(S.n)
    for x in S.elements:
        for y in range(x + 1, S.n):
            if shifts[x] & shifts[y]:
                uf.union(x, y)
    sigma = uf.partition()
    assert is_right_congruence(S, sigma)
    return sigma


def saturation(S: FiniteSemiring, I: Iterable[int]) -> Ideal:
    """Zero class of the Bourne congruence: ``{x : x + i1 = i2, i1, i2 in I}``."""
    I = frozenset(I)
    if not is_right_ideal(S, I):
        raise ValueError(f"{sorted(I)} is not a right ideal")
    return frozenset(x for x in S.elements if any(S.add[x][i] in I for i in I))


def is_saturated(S: FiniteSemiring, I: Iterable[int]) -> bool:
    I = frozenset(I)
    return saturation(S, I) == I


def is_mu_saturated(S: FiniteSemiring, I: Iterable[int], mu: Partition) -> bool:
    """True iff ``I`` is a union of ``mu``-classes."""
    I = frozenset(I)
    return all(mu.class_of(i) <= I for i in I)


def zero_class(S: FiniteSemiring, mu: Partition) -> Ideal:
    return mu.class_of(S.zero)


def mu_saturated_ideals(S: FiniteSemiring, mu: Partition) -> list[Ideal]:
    """All right ideals of ``S`` that are unions of ``mu``-classes."""
    return [I for I in enumerate_right_ideals(S) if is_mu_saturated(S, I, mu)]


# -- regularity --------------------------------------------------------------


def regularity_unit(S: FiniteSemiring, mu: Partition) -> int | None:
    """Least ``e`` with ``(es, s)`` in ``mu`` for every ``s``."""
    lab = mu.labels
    for e in S.elements:
        row = S.mul[e]
        if all(lab[row[s]] == lab[s] for s in S.elements):
            return e
    return None


def _saturated_ideal_above_zero(S: FiniteSemiring, mu: Partition, cls: int) -> Ideal:
    # smallest mu-saturated right ideal containing [0] and class ``cls``,
    # computed on mu-classes
    lab = mu.labels
    reps = mu.representatives()
    members = {lab[S.zero], cls}
    work = list(members)
    while work:
        k = work.pop()
        x = reps[k]
        new = [lab[S.mul[x][s]] for s in S.elements]
        new += [lab[S.add[x][reps[j]]] for j in list(members)]
        for j in new:
            if j not in members:
                members.add(j)
                work.append(j)
    return frozenset(x for x in S.elements if lab[x] in members)


@dataclass(frozen=True)
class RegularityClassification:
    congruence: Partition
    kind: RegularityKind
    unit: int | None
    zero_class: Ideal
    # proper mu-saturated right ideal strictly containing [0]_mu, if any
    blocking_ideal: Ideal | None = None
    # regular right congruence strictly between mu and the full relation, if any
    blocking_congruence: Partition | None = None

    @property
    def regular(self) -> bool:
        return self.kind != "not-regular"

    @property
    def m_regular(self) -> bool:
        return self.kind in ("m-regular", "s-regular")

    @property
    def s_regular(self) -> bool:
        return self.kind == "s-regular"

    def to_json(self) -> dict:
        return {
            "classes": self.congruence.to_json()["classes"],
            "class": self.kind,
            "unit": self.unit,
            "zero_class": sorted(self.zero_class),
            "blocking_ideal": None if self.blocking_ideal is None else sorted(self.blocking_ideal),
            "blocking_congruence": None
            if self.blocking_congruence is None
            else self.blocking_congruence.to_json()["classes"],
        }


def classify_regularity(
    S: FiniteSemiring, mu: Partition, lattice: Iterable[Partition] | None = None
) -> RegularityClassification:
    """Place ``mu`` in not-regular / regular / m-regular / s-regular.

    m-regular: regular, ``[0]_mu`` proper, and no proper ``mu``-saturated
    right ideal strictly contains ``[0]_mu``. s-regular: m-regular and every
    regular right congruence above ``mu`` is ``mu`` or the full relation.
    """
    zc = zero_class(S, mu)
    e = regularity_unit(S, mu)
    if e is None:
        return RegularityClassification(mu, "not-regular", None, zc)
    if len(zc) == S.n:
        return RegularityClassification(mu, "regular", e, zc, blocking_ideal=zc)
    z = mu.labels[S.zero]
    for k in range(mu.num_classes):
        if k == z:
            continue
        I = _saturated_ideal_above_zero(S, mu, k)
        if len(I) < S.n:
            return RegularityClassification(mu, "regular", e, zc, blocking_ideal=I)
    if lattice is None:
        lattice = _right_lattice(S)
    for phi in lattice:
        if mu < phi and not phi.is_full() and regularity_unit(S, phi) is not None:
            return RegularityClassification(mu, "m-regular", e, zc, blocking_congruence=phi)
    return RegularityClassification(mu, "s-regular", e, zc)


@lru_cache(maxsize=256)
def _classified(S: FiniteSemiring) -> tuple[RegularityClassification, ...]:
    lattice = _right_lattice(S)
    return tuple(classify_regularity(S, mu, lattice) for mu in lattice)


def classify_all(S: FiniteSemiring) -> list[RegularityClassification]:
    return list(_classified(S))


def rc_m(S: FiniteSemiring) -> list[Partition]:
    """m-regular right congruences, finest first."""
    return [c.congruence for c in _classified(S) if c.m_regular]


def rc_s(S: FiniteSemiring) -> list[Partition]:
    """s-regular right congruences, finest first."""
    return [c.congruence for c in _classified(S) if c.s_regular]


def rc(S: FiniteSemiring, kind: str) -> list[Partition]:
    if kind == "m":
        return rc_m(S)
    if kind == "s":
        return rc_s(S)
    raise ValueError(f"kind must be 'm' or 's', not {kind!r}")


def maximal_regular(S: FiniteSemiring) -> list[Partition]:
    """Regular right congruences other than the full one with nothing regular
    strictly between them and the full relation."""
    lattice = _right_lattice(S)
    regular = [p for p in lattice if not p.is_full() and regularity_unit(S, p) is not None]
    return [p for p in regular if not any(p < q for q in regular)]


# -- residual and meets --------------------------------------------------------


def residual(S: FiniteSemiring, rho: Partition) -> Partition:
    """``(rho : S x S)``: pairs ``(x, y)`` with ``(sx, sy)`` in ``rho`` for all ``s``."""
    lab = rho.labels
    return Partition(tuple(tuple(lab[S.mul[s][x]] for s in S.elements) for x in S.elements))  # type: ignore[arg-type]


def meet(S: FiniteSemiring, congruences: Iterable[Partition] = ()) -> Partition:
    parts = list(congruences)
    for p in parts:
        if p.n != S.n:
            raise ValueError("congruence over a different semiring")
    return meet_all(S.n, parts)


def largest_congruence_below(S: FiniteSemiring, rho: Partition) -> Partition:
    """Largest two-sided congruence contained in ``rho``, by scanning the lattice."""
    below = [t for t in enumerate_congruences(S) if t <= rho]
    top = below[0]
    for t in below:
        top = top.join(t)
    return top
