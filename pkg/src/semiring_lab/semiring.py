"""Finite semirings given by Cayley tables.

A semiring here is a commutative additive monoid with an absorbing zero, a
multiplicative semigroup and both distributive laws. A multiplicative
identity is not assumed.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .partition import Partition, stability_violation

Table = tuple[tuple[int, ...], ...]


class TableShapeError(ValueError):
    """A table has the wrong dimensions or an out-of-range entry."""


@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple[int, ...]

    def to_json(self) -> dict:
        return {"law": self.law, "witness": list(self.witness)}


class AxiomError(ValueError):
    """Tables that fail one or more structure axioms."""

    def __init__(self, violations: Sequence[Violation]):
        self.violations = list(violations)
        head = ", ".join(f"{v.law} {v.witness}" for v in self.violations[:3])
        more = f" (+{len(self.violations) - 3} more)" if len(self.violations) > 3 else ""
        super().__init__(f"{len(self.violations)} axiom violation(s): {head}{more}")


def _as_table(raw, rows: int, cols: int, bound: int, what: str) -> Table:
    try:
        table = tuple(tuple(int(x) for x in row) for row in raw)
    except TypeError as exc:
        raise TableShapeError(f"{what}: not a table of integers") from exc
    if len(table) != rows or any(len(row) != cols for row in table):
        raise TableShapeError(f"{what}: expected {rows}x{cols} table")
    for i, row in enumerate(table):
        for j, x in enumerate(row):
            if not 0 <= x < bound:
                raise TableShapeError(f"{what}[{i}][{j}] = {x} out of range [0, {bound})")
    return table


@dataclass(frozen=True)
class FiniteSemiring:
    name: str
    labels: tuple[str, ...]
    add: Table
    mul: Table
    zero: int = 0

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def elements(self) -> range:
        return range(self.n)

    def plus(self, a: int, b: int) -> int:
        return self.add[a][b]

    def times(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def right_maps(self) -> list[tuple[int, ...]]:
        """Translations x -> x + c and x -> x c, one table per c."""
        cached = self.__dict__.get("_right_maps")
        if cached is None:
            n = self.n
            cached = [tuple(self.add[x][c] for x in range(n)) for c in range(n)]
            cached += [tuple(self.mul[x][c] for x in range(n)) for c in range(n)]
            object.__setattr__(self, "_right_maps", cached)
        return cached

    def left_maps(self) -> list[tuple[int, ...]]:
        """Left multiplications x -> c x."""
        cached = self.__dict__.get("_left_maps")
        if cached is None:
            cached = [tuple(self.mul[c]) for c in range(self.n)]
            object.__setattr__(self, "_left_maps", cached)
        return cached

    def is_commutative(self) -> bool:
        return all(self.mul[a][b] == self.mul[b][a] for a in self.elements for b in self.elements)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "elements": list(self.labels),
            "zero": self.zero,
            "add": [list(r) for r in self.add],
            "mul": [list(r) for r in self.mul],
        }

    def relabel(self, perm: Sequence[int], name: str | None = None) -> "FiniteSemiring":
        """Copy in which old element ``i`` becomes new element ``perm[i]``."""
        n = self.n
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        add = tuple(tuple(perm[self.add[inv[a]][inv[b]]] for b in range(n)) for a in range(n))
        mul = tuple(tuple(perm[self.mul[inv[a]][inv[b]]] for b in range(n)) for a in range(n))
        labels = tuple(self.labels[inv[a]] for a in range(n))
        return FiniteSemiring(name or self.name, labels, add, mul, perm[self.zero])

    def with_zero_first(self) -> "FiniteSemiring":
        if self.zero == 0:
            return self
        perm = list(range(self.n))
        perm[0], perm[self.zero] = self.zero, 0
        return self.relabel(perm)


def semiring_violations(n: int, add: Table, mul: Table, zero: int) -> list[Violation]:
    """Every violated axiom instance, with its witness."""
    out: list[Violation] = []
    r = range(n)
    for a in r:
        if add[zero][a] != a or add[a][zero] != a:
            out.append(Violation("zero not additive identity", (a,)))
        if mul[zero][a] != zero or mul[a][zero] != zero:
            out.append(Violation("zero not absorbing", (zero, a)))
        for b in r:
            if add[a][b] != add[b][a]:
                if a < b:
                    out.append(Violation("addition not commutative", (a, b)))
            for c in r:
                if add[add[a][b]][c] != add[a][add[b][c]]:
                    out.append(Violation("addition not associative", (a, b, c)))
                if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
                    out.append(Violation("multiplication not associative", (a, b, c)))
                if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]:
                    out.append(Violation("left distributivity fails", (a, b, c)))
                if mul[add[a][b]][c] != add[mul[a][c]][mul[b][c]]:
                    out.append(Violation("right distributivity fails", (a, b, c)))
    return out


def check_semiring(add, mul, zero: int = 0) -> list[Violation]:
    n = len(add)
    if n < 1:
        raise TableShapeError("a semiring needs at least one element")
    add_t = _as_table(add, n, n, n, "add")
    mul_t = _as_table(mul, n, n, n, "mul")
    if not 0 <= zero < n:
        raise TableShapeError(f"zero index {zero} out of range")
    return semiring_violations(n, add_t, mul_t, zero)


def validate_semiring(
    add, mul, zero: int = 0, labels: Sequence[str] | None = None, name: str = "S"
) -> FiniteSemiring:
    """Build a :class:`FiniteSemiring`, raising :class:`AxiomError` listing
    every violated law if the tables do not define one."""
    violations = check_semiring(add, mul, zero)
    if violations:
        raise AxiomError(violations)
    n = len(add)
    labels = tuple(str(x) for x in labels) if labels is not None else tuple(str(i) for i in range(n))
    if len(labels) != n or len(set(labels)) != n:
        raise TableShapeError("labels must be n distinct strings")
    return FiniteSemiring(
        name,
        labels,
        _as_table(add, n, n, n, "add"),
        _as_table(mul, n, n, n, "mul"),
        zero,
    )


def semiring_from_json(obj: dict) -> FiniteSemiring:
    for key in ("elements", "zero", "add", "mul"):
        if key not in obj:
            raise KeyError(f"missing field {key!r}")
    return validate_semiring(
        obj["add"], obj["mul"], int(obj["zero"]), obj["elements"], obj.get("name", "S")
    ).with_zero_first()


def load_semiring(path: str | Path) -> FiniteSemiring:
    with open(path) as fh:
        return semiring_from_json(json.load(fh))


def save_semiring(S: FiniteSemiring, path: str | Path) -> None:
    Path(path).write_text(json.dumps(S.to_json(), indent=2) + "\n")


# -- groups ---------------------------------------------------------------


@dataclass(frozen=True)
class FiniteGroup:
    labels: tuple[str, ...]
    op: Table
    identity: int = 0
    inverse: tuple[int, ...] = field(default=())

    @property
    def n(self) -> int:
        return len(self.labels)


def validate_group(op, identity: int = 0, labels: Sequence[str] | None = None) -> FiniteGroup:
    n = len(op)
    if n < 1:
        raise TableShapeError("a group needs at least one element")
    table = _as_table(op, n, n, n, "op")
    if not 0 <= identity < n:
        raise TableShapeError(f"identity index {identity} out of range")
    r = range(n)
    problems = []
    if any(table[identity][a] != a or table[a][identity] != a for a in r):
        problems.append(Violation("identity law fails", (identity,)))
    for a, b, c in itertools.product(r, r, r):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            problems.append(Violation("operation not associative", (a, b, c)))
            break
    inverse = []
    for a in r:
        inv = [b for b in r if table[a][b] == identity and table[b][a] == identity]
        if not inv:
            problems.append(Violation("no inverse", (a,)))
            inverse.append(-1)
        else:
            inverse.append(inv[0])
    if problems:
        raise AxiomError(problems)
    labels = tuple(labels) if labels is not None else tuple(str(i) for i in r)
    return FiniteGroup(labels, table, identity, tuple(inverse))


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("group order must be positive")
    labels = ["e"] + [f"g{k}" if n > 2 else "g" for k in range(1, n)]
    return validate_group([[(a + b) % n for b in range(n)] for a in range(n)], 0, labels)


def klein_group() -> FiniteGroup:
    return validate_group([[a ^ b for b in range(4)] for a in range(4)], 0, ["e", "a", "b", "c"])


def group_from_json(obj: dict) -> FiniteGroup:
    return validate_group(obj["op"], int(obj["identity"]), obj["elements"])


# -- generators -----------------------------------------------------------


def boolean() -> FiniteSemiring:
    return chain(2, name="B")


def zmod(n: int) -> FiniteSemiring:
    if n < 1:
        raise ValueError("n must be at least 1")
    r = range(n)
    return FiniteSemiring(
        f"Z{n}",
        tuple(str(i) for i in r),
        tuple(tuple((a + b) % n for b in r) for a in r),
        tuple(tuple((a * b) % n for b in r) for a in r),
    )


def chain(n: int, name: str | None = None) -> FiniteSemiring:
    """Totally ordered chain 0 < 1 < ... < n-1 with max and min."""
    if n < 1:
        raise ValueError("n must be at least 1")
    r = range(n)
    return FiniteSemiring(
        name or f"chain{n}",
        tuple(str(i) for i in r),
        tuple(tuple(max(a, b) for b in r) for a in r),
        tuple(tuple(min(a, b) for b in r) for a in r),
    )


def zero_mul(n: int) -> FiniteSemiring:
    """Chain under max with every product equal to zero."""
    if n < 1:
        raise ValueError("n must be at least 1")
    r = range(n)
    return FiniteSemiring(
        f"zero_mul{n}",
        tuple(str(i) for i in r),
        tuple(tuple(max(a, b) for b in r) for a in r),
        tuple(tuple(0 for _ in r) for _ in r),
    )


def group_semiring_b(G: FiniteGroup, name: str | None = None) -> FiniteSemiring:
    """Subsets of G under union and elementwise product; element k is the
    subset whose bitmask is k, so the empty set is 0."""
    size = 1 << G.n
    members = [[g for g in range(G.n) if k >> g & 1] for k in range(size)]

    def product(a: int, b: int) -> int:
        mask = 0
        for g in members[a]:
            for h in members[b]:
                mask |= 1 << G.op[g][h]
        return mask

    labels = tuple("{" + ",".join(G.labels[g] for g in m) + "}" for m in members)
    return FiniteSemiring(
        name or f"BG{G.n}",
        labels,
        tuple(tuple(a | b for b in range(size)) for a in range(size)),
        tuple(tuple(product(a, b) for b in range(size)) for a in range(size)),
    )


def matrix_b(k: int) -> FiniteSemiring:
    """k x k Boolean matrices; element index is the row-major bitmask."""
    if k < 1:
        raise ValueError("k must be at least 1")
    size = 1 << (k * k)

    def entry(m: int, i: int, j: int) -> int:
        return m >> (i * k + j) & 1

    def product(a: int, b: int) -> int:
        out = 0
        for i in range(k):
            for j in range(k):
                if any(entry(a, i, t) and entry(b, t, j) for t in range(k)):
                    out |= 1 << (i * k + j)
        return out

    labels = tuple(
        "[" + ";".join("".join(str(entry(m, i, j)) for j in range(k)) for i in range(k)) + "]"
        for m in range(size)
    )
    return FiniteSemiring(
        f"M{k}(B)",
        labels,
        tuple(tuple(a | b for b in range(size)) for a in range(size)),
        tuple(tuple(product(a, b) for b in range(size)) for a in range(size)),
    )


def product(R: FiniteSemiring, S: FiniteSemiring) -> FiniteSemiring:
    """Componentwise product; pair (r, s) has index r * |S| + s."""
    m = S.n
    pairs = [(r, s) for r in R.elements for s in S.elements]

    def idx(r: int, s: int) -> int:
        return r * m + s

    return FiniteSemiring(
        f"{R.name}x{S.name}",
        tuple(f"({R.labels[r]},{S.labels[s]})" for r, s in pairs),
        tuple(tuple(idx(R.add[a][c], S.add[b][d]) for c, d in pairs) for a, b in pairs),
        tuple(tuple(idx(R.mul[a][c], S.mul[b][d]) for c, d in pairs) for a, b in pairs),
        idx(R.zero, S.zero),
    )


def opposite(S: FiniteSemiring) -> FiniteSemiring:
    name = S.name[:-3] if S.name.endswith("^op") else S.name + "^op"
    mul = tuple(tuple(S.mul[b][a] for b in S.elements) for a in S.elements)
    return FiniteSemiring(name, S.labels, S.add, mul, S.zero)


def trivial_semiring() -> FiniteSemiring:
    return FiniteSemiring("0", ("0",), ((0,),), ((0,),))


def subsemiring(S: FiniteSemiring, members, name: str | None = None) -> tuple[FiniteSemiring, tuple[int, ...]]:
    """The subsemiring on ``members`` (must be closed and contain zero) and the
    inclusion map as a tuple of indices into ``S``."""
    elems = tuple(sorted(set(members), key=lambda x: (x != S.zero, x)))
    pos = {x: i for i, x in enumerate(elems)}
    try:
        add = tuple(tuple(pos[S.add[a][b]] for b in elems) for a in elems)
        mul = tuple(tuple(pos[S.mul[a][b]] for b in elems) for a in elems)
    except KeyError as exc:
        raise ValueError("subset is not closed under the operations") from exc
    if S.zero not in pos:
        raise ValueError("subset does not contain zero")
    return FiniteSemiring(name or f"sub({S.name})", tuple(S.labels[x] for x in elems), add, mul), elems


# -- homomorphisms --------------------------------------------------------


@dataclass(frozen=True)
class SemiringHomomorphism:
    source: FiniteSemiring
    target: FiniteSemiring
    map: tuple[int, ...]

    def __post_init__(self):
        if len(self.map) != self.source.n:
            raise ValueError("map must have one entry per source element")
        problems = homomorphism_violations(self.source, self.target, self.map)
        if problems:
            raise AxiomError(problems)

    @property
    def injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    @property
    def surjective(self) -> bool:
        return set(self.map) == set(self.target.elements)

    def image(self) -> frozenset[int]:
        return frozenset(self.map)

    def __call__(self, x: int) -> int:
        return self.map[x]


def homomorphism_violations(A: FiniteSemiring, B: FiniteSemiring, f: Sequence[int]) -> list[Violation]:
    out = []
    if f[A.zero] != B.zero:
        out.append(Violation("zero not preserved", (A.zero,)))
    for a in A.elements:
        for b in A.elements:
            if f[A.add[a][b]] != B.add[f[a]][f[b]]:
                out.append(Violation("addition not preserved", (a, b)))
            if f[A.mul[a][b]] != B.mul[f[a]][f[b]]:
                out.append(Violation("multiplication not preserved", (a, b)))
    return out


def is_congruence(S: FiniteSemiring, theta: Partition) -> bool:
    return stability_violation(theta, S.right_maps() + S.left_maps()) is None


def quotient_semiring(S: FiniteSemiring, theta: Partition, name: str | None = None):
    """``S/theta`` and the canonical surjection ``S -> S/theta``.

    Class ``k`` of the quotient is class ``k`` of ``theta``; the zero class is
    moved to index 0 when ``S.zero`` is not 0.
    """
    if theta.n != S.n:
        raise ValueError("congruence is over a different set")
    bad = stability_violation(theta, S.right_maps() + S.left_maps())
    if bad is not None:
        raise ValueError(f"not a two-sided congruence: witness {bad}")
    reps = theta.representatives()
    lab = theta.labels
    k = len(reps)
    Q = FiniteSemiring(
        name or f"{S.name}/~",
        tuple("[" + ",".join(S.labels[x] for x in cls) + "]" for cls in theta.classes),
        tuple(tuple(lab[S.add[reps[i]][reps[j]]] for j in range(k)) for i in range(k)),
        tuple(tuple(lab[S.mul[reps[i]][reps[j]]] for j in range(k)) for i in range(k)),
        lab[S.zero],
    )
    return Q, SemiringHomomorphism(S, Q, lab)


def kernel(h: SemiringHomomorphism) -> Partition:
    return Partition(h.map)


def product_partition(p: Partition, q: Partition) -> Partition:
    """``p x q`` on the product set indexed as in :func:`product`."""
    return Partition(tuple((a, b) for a in p.labels for b in q.labels))  # type: ignore[arg-type]


def projections(R: FiniteSemiring, S: FiniteSemiring):
    P = product(R, S)
    first = SemiringHomomorphism(P, R, tuple(r for r in R.elements for _ in S.elements))
    second = SemiringHomomorphism(P, S, tuple(s for _ in R.elements for s in S.elements))
    return first, second


# -- identity and isomorphism ---------------------------------------------


def find_multiplicative_identity(S: FiniteSemiring) -> int | None:
    for e in S.elements:
        if all(S.mul[e][s] == s and S.mul[s][e] == s for s in S.elements):
            return e
    return None


def _element_invariants(S: FiniteSemiring) -> list[tuple]:
    n = S.n
    out = []
    for a in range(n):
        multiples = {a}
        x = a
        for _ in range(n):
            x = S.add[x][a]
            multiples.add(x)
        powers = {a}
        x = a
        for _ in range(n):
            x = S.mul[x][a]
            powers.add(x)
        out.append((
            a == S.zero,
            len(multiples),
            len(powers),
            S.add[a][a] == a,
            S.mul[a][a] == a,
            sum(S.mul[a][b] == S.zero for b in range(n)),
            sum(S.mul[b][a] == S.zero for b in range(n)),
            sum(S.add[a][b] == S.zero for b in range(n)),
            all(S.mul[a][b] == b for b in range(n)),
            all(S.mul[b][a] == b for b in range(n)),
        ))
    return out


def find_isomorphism(A: FiniteSemiring, B: FiniteSemiring) -> tuple[int, ...] | None:
    """A bijection ``f`` with ``f[a]`` the image of ``a``, or None.

    Exhaustive backtracking over zero-preserving bijections; candidates are
    filtered by per-element invariants and images of sums and products of
    already-mapped elements are forced.
    """
    n = A.n
    if n != B.n:
        return None
    inv_a = _element_invariants(A)
    inv_b = _element_invariants(B)
    if sorted(inv_a) != sorted(inv_b):
        return None
    candidates = [[b for b in range(n) if inv_b[b] == inv_a[a]] for a in range(n)]
    order = sorted(range(n), key=lambda a: (a != A.zero, len(candidates[a]), a))

    def assign(f: list[int], g: list[int], a: int, b: int) -> list[tuple[int, int]] | None:
        # propagate a -> b; returns the list of new assignments or None on conflict
        trail: list[tuple[int, int]] = []
        work = [(a, b)]
        while work:
            x, y = work.pop()
            if f[x] != -1 or g[y] != -1:
                if f[x] != y or g[y] != x:
                    for u, v in trail:
                        f[u] = g[v] = -1
                    return None
                continue
            if inv_a[x] != inv_b[y]:
                for u, v in trail:
                    f[u] = g[v] = -1
                return None
            f[x], g[y] = y, x
            trail.append((x, y))
            for u in range(n):
                if f[u] == -1:
                    continue
                v = f[u]
                work.append((A.add[x][u], B.add[y][v]))
                work.append((A.mul[x][u], B.mul[y][v]))
                work.append((A.mul[u][x], B.mul[v][y]))
        return trail

    f = [-1] * n
    g = [-1] * n
    if assign(f, g, A.zero, B.zero) is None:
        return None

    def search(i: int) -> bool:
        while i < n and f[order[i]] != -1:
            i += 1
        if i == n:
            return True
        a = order[i]
        for b in candidates[a]:
            if g[b] != -1:
                continue
            trail = assign(f, g, a, b)
            if trail is None:
                continue
            if search(i + 1):
                return True
            for u, v in trail:
                f[u] = g[v] = -1
        return False

    return tuple(f) if search(0) else None


def is_isomorphic(A: FiniteSemiring, B: FiniteSemiring) -> bool:
    return find_isomorphism(A, B) is not None

