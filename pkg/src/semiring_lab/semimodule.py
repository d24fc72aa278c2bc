"""Finite right semimodules over finite semirings."""

from __future__ import annotations

import itertools
import json
from pathlib import Path
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .partition import EnumerationLimitError, Partition, closed_subsets, stable_partitions
from .semiring import (
    AxiomError,
    FiniteSemiring,
    SemiringHomomorphism,
    Table,
    TableShapeError,
    Violation,
    _as_table,
    semiring_from_json,
)

DEFAULT_MAX_MODULE_SIZE = 4


@dataclass(frozen=True)
class FiniteSemimodule:
    semiring: FiniteSemiring
    labels: tuple[str, ...]
    add: Table
    action: Table  # action[x][s] = x . s
    zero: int = 0

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def elements(self) -> range:
        return range(self.size)

    def maps(self) -> list[tuple[int, ...]]:
        """Translations x -> x + y and x -> x s."""
        m = self.size
        out = [tuple(self.add[x][y] for x in range(m)) for y in range(m)]
        out += [tuple(self.action[x][s] for x in range(m)) for s in self.semiring.elements]
        return out

    def to_json(self, inline: bool = True) -> dict:
        return {
            "semiring": self.semiring.to_json(),
            "elements": list(self.labels),
            "zero": self.zero,
            "add": [list(r) for r in self.add],
            "action": [list(r) for r in self.action],
        }


def semimodule_violations(S: FiniteSemiring, add: Table, action: Table, zero: int) -> list[Violation]:
    out: list[Violation] = []
    m = len(add)
    M = range(m)
    R = S.elements
    for x in M:
        if add[zero][x] != x or add[x][zero] != x:
            out.append(Violation("zero not additive identity", (x,)))
        if action[x][S.zero] != zero:
            out.append(Violation("m0 != 0", (x,)))
        for y in M:
            if x < y and add[x][y] != add[y][x]:
                out.append(Violation("addition not commutative", (x, y)))
            for z in M:
                if add[add[x][y]][z] != add[x][add[y][z]]:
                    out.append(Violation("addition not associative", (x, y, z)))
            for r in R:
                if action[add[x][y]][r] != add[action[x][r]][action[y][r]]:
                    out.append(Violation("(m1+m2)r != m1r+m2r", (x, y, r)))
        for r in R:
            for t in R:
                if action[x][S.add[r][t]] != add[action[x][r]][action[x][t]]:
                    out.append(Violation("m(r1+r2) != mr1+mr2", (x, r, t)))
                if action[x][S.mul[r][t]] != action[action[x][r]][t]:
                    out.append(Violation("m(r1r2) != (mr1)r2", (x, r, t)))
    for r in R:
        if action[zero][r] != zero:
            out.append(Violation("0r != 0", (r,)))
    return out


def validate_semimodule(
    S: FiniteSemiring, add, action, zero: int = 0, labels: Sequence[str] | None = None
) -> FiniteSemimodule:
    m = len(add)
    if m < 1:
        raise TableShapeError("a semimodule needs at least one element")
    add_t = _as_table(add, m, m, m, "add")
    act_t = _as_table(action, m, S.n, m, "action")
    if not 0 <= zero < m:
        raise TableShapeError(f"zero index {zero} out of range")
    problems = semimodule_violations(S, add_t, act_t, zero)
    if problems:
        raise AxiomError(problems)
    labels = tuple(str(x) for x in labels) if labels is not None else tuple(str(i) for i in range(m))
    if len(labels) != m or len(set(labels)) != m:
        raise TableShapeError("labels must be distinct, one per element")
    return FiniteSemimodule(S, labels, add_t, act_t, zero)


def semimodule_from_json(obj: dict, base_dir=None) -> FiniteSemimodule:
    ring = obj["semiring"]
    if isinstance(ring, str):
        path = Path(ring) if base_dir is None else Path(base_dir) / ring
        ring = json.loads(path.read_text())
    S = semiring_from_json(ring)
    return validate_semimodule(S, obj["add"], obj["action"], int(obj["zero"]), obj["elements"])


def quotient_semimodule(S: FiniteSemiring, mu: Partition) -> FiniteSemimodule:
    """``S/mu`` with ``[a] s = [as]``; class ``k`` is class ``k`` of ``mu``."""
    from .congruences import right_violation

    bad = right_violation(S, mu)
    if bad is not None:
        raise ValueError(f"not a right congruence: witness {bad}")
    reps = mu.representatives()
    lab = mu.labels
    k = len(reps)
    return FiniteSemimodule(
        S,
        tuple("[" + ",".join(S.labels[x] for x in c) + "]" for c in mu.classes),
        tuple(tuple(lab[S.add[reps[i]][reps[j]]] for j in range(k)) for i in range(k)),
        tuple(tuple(lab[S.mul[reps[i]][s]] for s in S.elements) for i in range(k)),
        lab[S.zero],
    )


def regular_semimodule(S: FiniteSemiring) -> FiniteSemimodule:
    """``S`` as a right semimodule over itself."""
    return FiniteSemimodule(S, S.labels, S.add, S.mul, S.zero)


def zero_semimodule(S: FiniteSemiring) -> FiniteSemimodule:
    return FiniteSemimodule(S, ("0",), ((0,),), (tuple(0 for _ in S.elements),), 0)


# -- substructure ------------------------------------------------------------


def subsemimodules(M: FiniteSemimodule) -> list[frozenset[int]]:
    acts = [tuple(M.action[x][s] for x in M.elements) for s in M.semiring.elements]
    return closed_subsets(M.size, [M.add], acts, [M.zero])


def semimodule_congruences(M: FiniteSemimodule) -> list[Partition]:
    return stable_partitions(M.size, M.maps())


def orbit(M: FiniteSemimodule, x: int) -> frozenset[int]:
    """``xS``."""
    return frozenset(M.action[x])


def has_nonzero_action(M: FiniteSemimodule) -> bool:
    return any(v != M.zero for row in M.action for v in row)


@dataclass(frozen=True)
class SemimoduleClassification:
    nonzero_action: bool
    minimal: bool
    simple: bool
    elementary: bool
    generated_by_each_nonzero: bool  # xS = M for every x != 0
    proper_subsemimodule: frozenset[int] | None
    nontrivial_congruence: Partition | None
    num_congruences: int

    def to_json(self) -> dict:
        return {
            "nonzero_action": self.nonzero_action,
            "minimal": self.minimal,
            "simple": self.simple,
            "elementary": self.elementary,
            "proper_subsemimodule": None
            if self.proper_subsemimodule is None
            else sorted(self.proper_subsemimodule),
            "nontrivial_congruence": None
            if self.nontrivial_congruence is None
            else self.nontrivial_congruence.to_json()["classes"],
        }


def classify(M: FiniteSemimodule) -> SemimoduleClassification:
    nonzero = has_nonzero_action(M)
    subs = subsemimodules(M)
    proper = next((N for N in subs if 1 < len(N) < M.size), None)
    congs = semimodule_congruences(M)
    odd = next((c for c in congs if not c.is_discrete() and not c.is_full()), None)
    generated = M.size > 1 and all(
        len(orbit(M, x)) == M.size for x in M.elements if x != M.zero
    )
    minimal = nonzero and proper is None
    congruence_simple = odd is None
    return SemimoduleClassification(
        nonzero_action=nonzero,
        minimal=minimal,
        simple=minimal and congruence_simple,
        elementary=nonzero and congruence_simple,
        generated_by_each_nonzero=generated,
        proper_subsemimodule=proper,
        nontrivial_congruence=odd,
        num_congruences=len(congs),
    )


# -- annihilators ------------------------------------------------------------


@dataclass(frozen=True)
class AnnihilatorResult:
    congruence: Partition
    faithful: bool


def annihilator(M: FiniteSemimodule) -> AnnihilatorResult:
    """Scalars identified when they act identically on all of ``M``."""
    S = M.semiring
    ann = Partition(tuple(tuple(M.action[x][s] for x in M.elements) for s in S.elements))  # type: ignore[arg-type]
    return AnnihilatorResult(ann, ann.is_discrete())


def delta(M: FiniteSemimodule, x: int) -> Partition:
    """``{(a, b) : xa = xb}``, a right congruence on the base semiring."""
    if not 0 <= x < M.size:
        raise IndexError(f"element {x} out of range")
    return Partition(M.action[x])


# -- change of rings ---------------------------------------------------------


def descend(M: FiniteSemimodule, f: SemiringHomomorphism) -> FiniteSemimodule:
    """``M`` over the quotient ``f.target`` when ``ker f`` lies in ``ann(M)``."""
    Q = f.target
    if not f.surjective:
        raise ValueError("descent needs a surjective homomorphism")
    if not Partition(f.map) <= annihilator(M).congruence:
        raise ValueError("kernel is not contained in the annihilator")
    rep = {}
    for s in M.semiring.elements:
        rep.setdefault(f.map[s], s)
    action = tuple(tuple(M.action[x][rep[q]] for q in Q.elements) for x in M.elements)
    return FiniteSemimodule(Q, M.labels, M.add, action, M.zero)


def inflate(N: FiniteSemimodule, f: SemiringHomomorphism) -> FiniteSemimodule:
    """``N`` over ``f.source`` via ``x s = x f(s)``."""
    if N.semiring != f.target:
        raise ValueError("semimodule is not over the homomorphism's target")
    action = tuple(tuple(N.action[x][f.map[s]] for s in f.source.elements) for x in N.elements)
    return FiniteSemimodule(f.source, N.labels, N.add, action, N.zero)


# -- isomorphism ---------------------------------------------------------------


def semimodule_isomorphism(M: FiniteSemimodule, N: FiniteSemimodule) -> tuple[int, ...] | None:
    """Addition- and action-preserving bijection ``M -> N`` or None."""
    if M.semiring.n != N.semiring.n or M.semiring.add != N.semiring.add or M.semiring.mul != N.semiring.mul:
        raise ValueError("semimodules over different semirings")
    m = M.size
    if m != N.size:
        return None
    R = M.semiring.elements

    def profile(P: FiniteSemimodule, x: int) -> tuple:
        return (
            x == P.zero,
            len(orbit(P, x)),
            P.add[x][x] == x,
            sum(P.action[x][s] == P.zero for s in R),
            sum(P.add[x][y] == P.zero for y in P.elements),
        )

    pm = [profile(M, x) for x in M.elements]
    pn = [profile(N, y) for y in N.elements]
    if sorted(pm) != sorted(pn):
        return None
    f = [-1] * m
    g = [-1] * m

    def assign(a: int, b: int):
        trail = []
        work = [(a, b)]
        while work:
            x, y = work.pop()
            if f[x] != -1 or g[y] != -1:
                if f[x] == y and g[y] == x:
                    continue
                for u, v in trail:
                    f[u] = g[v] = -1
                return None
            if pm[x] != pn[y]:
                for u, v in trail:
                    f[u] = g[v] = -1
                return None
            f[x], g[y] = y, x
            trail.append((x, y))
            for s in R:
                work.append((M.action[x][s], N.action[y][s]))
            for u in range(m):
                if f[u] != -1:
                    work.append((M.add[x][u], N.add[y][f[u]]))
        return trail

    if assign(M.zero, N.zero) is None:
        return None

    def search() -> bool:
        x = next((u for u in range(m) if f[u] == -1), None)
        if x is None:
            return True
        for y in range(m):
            if g[y] != -1:
                continue
            trail = assign(x, y)
            if trail is None:
                continue
            if search():
                return True
            for u, v in trail:
                f[u] = g[v] = -1
        return False

    return tuple(f) if search() else None


# -- exhaustive enumeration -------------------------------------------------------


def _permute_table(table: Sequence[Sequence[int]], perm: Sequence[int]) -> Table:
    # perm maps old -> new; result[new_a][new_b] = perm[table[a][b]]
    m = len(perm)
    inv = [0] * m
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(tuple(perm[table[inv[a]][inv[b]]] for b in range(m)) for a in range(m))


@lru_cache(maxsize=None)
def commutative_monoids(size: int) -> tuple[Table, ...]:
    """Commutative monoids on ``range(size)`` with identity 0, one per
    isomorphism class, each in its lexicographically least labelling."""
    if size < 1:
        raise ValueError("size must be positive")
    if size > 5:
        raise EnumerationLimitError("commutative monoid enumeration is capped at size 5")
    cells = [(i, j) for i in range(1, size) for j in range(i, size)]
    perms = [(0,) + p for p in itertools.permutations(range(1, size))]
    found = set()
    for values in itertools.product(range(size), repeat=len(cells)):
        t = [[0] * size for _ in range(size)]
        for x in range(size):
            t[0][x] = t[x][0] = x
        for (i, j), v in zip(cells, values):
            t[i][j] = t[j][i] = v
        if any(
            t[t[a][b]][c] != t[a][t[b][c]]
            for a in range(1, size)
            for b in range(1, size)
            for c in range(1, size)
        ):
            continue
        found.add(min(_permute_table(t, p) for p in perms))
    return tuple(sorted(found))


def monoid_automorphisms(add: Table) -> list[tuple[int, ...]]:
    size = len(add)
    return [
        (0,) + p
        for p in itertools.permutations(range(1, size))
        if _permute_table(add, (0,) + p) == add
    ]


def additive_maps(add: Table, zero: int = 0, limit: int | None = None) -> list[tuple[int, ...]]:
    """Zero-fixing additive self-maps of the commutative monoid ``add``.

    Backtracking over elements in index order; each assignment is closed
    under ``f(x + y) = f(x) + f(y)`` before branching further. ``limit``
    bounds the number of search nodes.
    """
    size = len(add)
    out: list[tuple[int, ...]] = []
    nodes = 0

    def extend(f: list[int | None], x: int, v: int) -> list[int | None] | None:
        f = list(f)
        f[x] = v
        work = [x]
        while work:
            a = work.pop()
            for b in range(size):
                if f[b] is None:
                    continue
                c, w = add[a][b], add[f[a]][f[b]]
                if f[c] is None:
                    f[c] = w
                    work.append(c)
                elif f[c] != w:
                    return None
        return f

    def search(f: list[int | None]) -> None:
        nonlocal nodes
        nodes += 1
        if limit is not None and nodes > limit:
            raise EnumerationLimitError(f"more than {limit} nodes searching additive maps")
        free = next((x for x in range(size) if f[x] is None), None)
        if free is None:
            out.append(tuple(f))  # type: ignore[arg-type]
            return
        for v in range(size):
            g = extend(f, free, v)
            if g is not None:
                search(g)

    start = extend([None] * size, zero, zero)
    if start is not None:
        search(start)
    return sorted(out)


def _actions(S: FiniteSemiring, add: Table) -> Iterator[Table]:
    # an action is an assignment s -> psi_s of additive maps with
    # psi_0 = 0, psi_{a+b} = psi_a + psi_b and psi_{ab} = psi_b o psi_a
    size = len(add)
    maps = additive_maps(add)
    index = {f: i for i, f in enumerate(maps)}
    k = len(maps)
    zero_map = index[tuple([0] * size)]
    plus = [[index[tuple(add[f[x]][g[x]] for x in range(size))] for g in maps] for f in maps]
    then = [[index[tuple(g[f[x]] for x in range(size))] for g in maps] for f in maps]

    n = S.n
    order = [S.zero] + [s for s in S.elements if s != S.zero]
    psi = [-1] * n
    psi[S.zero] = zero_map

    def consistent(new: int) -> bool:
        for a in S.elements:
            pa = psi[a]
            if pa < 0:
                continue
            for b in S.elements:
                pb = psi[b]
                if pb < 0 or (a != new and b != new):
                    continue
                c = S.add[a][b]
                if psi[c] >= 0 and psi[c] != plus[pa][pb]:
                    return False
                c = S.mul[a][b]
                if psi[c] >= 0 and psi[c] != then[pa][pb]:
                    return False
        # constraints whose result is ``new``
        for a in S.elements:
            pa = psi[a]
            if pa < 0:
                continue
            for b in S.elements:
                pb = psi[b]
                if pb < 0:
                    continue
                if S.add[a][b] == new and psi[new] != plus[pa][pb]:
                    return False
                if S.mul[a][b] == new and psi[new] != then[pa][pb]:
                    return False
        return True

    if not consistent(S.zero):
        return

    def search(i: int) -> Iterator[Table]:
        if i == n:
            yield tuple(tuple(maps[psi[s]][x] for s in S.elements) for x in range(size))
            return
        s = order[i]
        for j in range(k):
            psi[s] = j
            if consistent(s):
                yield from search(i + 1)
        psi[s] = -1

    yield from search(1)


def _action_key(action: Table, autos: Sequence[Sequence[int]]) -> Table:
    size = len(action)
    best = None
    for p in autos:
        inv = [0] * size
        for i, q in enumerate(p):
            inv[q] = i
        key = tuple(tuple(p[v] for v in action[inv[x]]) for x in range(size))
        if best is None or key < best:
            best = key
    return best


def enumerate_semimodules(
    S: FiniteSemiring, max_size: int = DEFAULT_MAX_MODULE_SIZE, bound: int = DEFAULT_MAX_MODULE_SIZE
) -> Iterator[FiniteSemimodule]:
    """Every right ``S``-semimodule with at most ``max_size`` elements, one per
    isomorphism class, in canonical order (size, monoid table, action table)."""
    if max_size > bound:
        raise EnumerationLimitError(f"semimodule enumeration is capped at size {bound}")
    for size in range(1, max_size + 1):
        for add in commutative_monoids(size):
            autos = monoid_automorphisms(add)
            keys = sorted({_action_key(a, autos) for a in _actions(S, add)})
            for action in keys:
                yield FiniteSemimodule(S, tuple(str(i) for i in range(size)), add, action, 0)
