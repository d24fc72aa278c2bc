"""Primitivity, subdirect decompositions and endomorphism representations."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .congruences import enumerate_congruences, rc, residual
from .partition import Partition, meet_all
from .radical import rad
from .semimodule import (
    FiniteSemimodule,
    additive_maps,
    annihilator,
    classify,
    quotient_semimodule,
)
from .semiring import (
    FiniteSemiring,
    SemiringHomomorphism,
    boolean,
    find_isomorphism,
    find_multiplicative_identity,
    opposite,
    quotient_semiring,
)

DEFAULT_MAX_SELF_MAPS = 1_000_000


class NotPrimitiveError(ValueError):
    pass


class NotSimpleError(ValueError):
    pass


class NotTransitiveError(ValueError):
    pass


# -- flags -----------------------------------------------------------------------


def division_status(S: FiniteSemiring) -> str:
    """``"division"``, ``"no-identity"``, ``"trivial"`` (one element, 1 = 0)
    or ``"not-invertible"``."""
    e = find_multiplicative_identity(S)
    if e is None:
        return "no-identity"
    if S.n < 2:
        return "trivial"
    for a in S.elements:
        if a == S.zero:
            continue
        if not any(S.mul[a][b] == e and S.mul[b][a] == e for b in S.elements):
            return "not-invertible"
    return "division"


def is_division_semiring(S: FiniteSemiring) -> bool:
    return division_status(S) == "division"


def zero_sum_set(S: FiniteSemiring) -> frozenset[int]:
    """Elements with an additive inverse."""
    return frozenset(x for x in S.elements if any(S.add[x][y] == S.zero for y in S.elements))


def is_zerosumfree(S: FiniteSemiring) -> bool:
    return all(
        S.add[a][b] != S.zero or (a == S.zero and b == S.zero)
        for a in S.elements
        for b in S.elements
    )


def two_block_partition(S: FiniteSemiring) -> Partition:
    """``{0}`` versus every nonzero element."""
    return Partition(tuple(0 if x == S.zero else 1 for x in S.elements))


@dataclass(frozen=True)
class SemiringFlags:
    commutative: bool
    identity: int | None
    zerosumfree: bool
    division_semiring: bool
    semifield: bool
    field: bool
    congruence_simple: bool
    additively_idempotent: bool
    num_congruences: int

    @property
    def has_identity(self) -> bool:
        return self.identity is not None

    def to_json(self) -> dict:
        return {
            "commutative": self.commutative,
            "has_identity": self.has_identity,
            "identity": self.identity,
            "zerosumfree": self.zerosumfree,
            "division_semiring": self.division_semiring,
            "semifield": self.semifield,
            "field": self.field,
            "congruence_simple": self.congruence_simple,
            "additively_idempotent": self.additively_idempotent,
            "num_congruences": self.num_congruences,
        }


def classify_semiring(S: FiniteSemiring) -> SemiringFlags:
    commutative = S.is_commutative()
    division = is_division_semiring(S)
    semifield = division and commutative
    congs = enumerate_congruences(S)
    return SemiringFlags(
        commutative=commutative,
        identity=find_multiplicative_identity(S),
        zerosumfree=is_zerosumfree(S),
        division_semiring=division,
        semifield=semifield,
        field=semifield and len(zero_sum_set(S)) == S.n,
        congruence_simple=len(congs) <= 2,
        additively_idempotent=all(S.add[a][a] == a for a in S.elements),
        num_congruences=len(congs),
    )


# -- primitivity ------------------------------------------------------------------


@dataclass(frozen=True)
class PrimitivityReport:
    kind: str
    primitive: bool
    witness_congruence: Partition | None = None
    witness_semimodule: FiniteSemimodule | None = None
    # direct recheck of the witness: S/rho faithful and minimal (simple)
    witness_faithful: bool | None = None
    witness_irreducible: bool | None = None

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "primitive": self.primitive,
            "witness": None
            if self.witness_congruence is None
            else self.witness_congruence.to_json()["classes"],
            "witness_faithful": self.witness_faithful,
            "witness_irreducible": self.witness_irreducible,
        }


def is_primitive(S: FiniteSemiring, kind: str = "m") -> PrimitivityReport:
    for rho in rc(S, kind):
        if residual(S, rho).is_discrete():
            M = quotient_semimodule(S, rho)
            c = classify(M)
            return PrimitivityReport(
                kind,
                True,
                rho,
                M,
                annihilator(M).faithful,
                c.simple if kind == "s" else c.minimal,
            )
    return PrimitivityReport(kind, False)


def primitive_congruences(S: FiniteSemiring, kind: str = "m", verify: bool = True) -> list[Partition]:
    """Residuals of the m-regular (s-regular) right congruences.

    With ``verify`` each quotient ``S/sigma`` is checked to be primitive of
    the same kind.
    """
    found = sorted({residual(S, rho) for rho in rc(S, kind)}, key=Partition.sort_key)
    if verify:
        for sigma in found:
            Q, _ = quotient_semiring(S, sigma)
            if not is_primitive(Q, kind).primitive:
                raise AssertionError(f"{S.name}/{sigma} is not {kind}-primitive")
    return found


@dataclass(frozen=True)
class SubdirectDecomposition:
    semiring: FiniteSemiring
    kind: str
    factors: tuple[tuple[Partition, FiniteSemiring], ...]
    embedding: tuple[tuple[int, ...], ...]  # element -> class index in each factor

    @property
    def meet(self) -> Partition:
        return meet_all(self.semiring.n, (sigma for sigma, _ in self.factors))

    @property
    def injective(self) -> bool:
        return len(set(self.embedding)) == self.semiring.n

    @property
    def projections_surjective(self) -> bool:
        return all(
            {row[i] for row in self.embedding} == set(Q.elements)
            for i, (_, Q) in enumerate(self.factors)
        )

    def to_json(self) -> dict:
        return {
            "semiring": self.semiring.name,
            "kind": self.kind,
            "factors": [
                {"congruence": sigma.to_json()["classes"], "quotient": Q.to_json()}
                for sigma, Q in self.factors
            ],
            "embedding": [list(row) for row in self.embedding],
            "injective": self.injective,
            "projections_surjective": self.projections_surjective,
        }


def subdirect_decomposition(S: FiniteSemiring, kind: str = "m") -> SubdirectDecomposition | None:
    """Factors ``S/sigma`` over the primitive congruences; None unless ``S``
    is semisimple of the given kind."""
    if not rad(S, kind).semisimple:
        return None
    factors = []
    for i, sigma in enumerate(primitive_congruences(S, kind)):
        Q, _ = quotient_semiring(S, sigma, name=f"{S.name}/sigma{i}")
        factors.append((sigma, Q))
    embedding = tuple(tuple(sigma.labels[x] for sigma, _ in factors) for x in S.elements)
    return SubdirectDecomposition(S, kind, tuple(factors), embedding)


# -- commutative classification -----------------------------------------------------


@dataclass
class CommutativeVerdict:
    semiring: str
    statements: list[dict] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(s["holds"] for s in self.statements)

    def add(self, name: str, left: bool, right: bool) -> None:
        self.statements.append({"statement": name, "left": left, "right": right, "holds": left == right})

    def to_json(self) -> dict:
        return {"semiring": self.semiring, "statements": self.statements, "holds": self.holds}


def _is_boolean_or_field(S: FiniteSemiring) -> bool:
    flags = classify_semiring(S)
    return flags.field or find_isomorphism(S, boolean()) is not None


def commutative_classification_check(S: FiniteSemiring) -> CommutativeVerdict:
    if not S.is_commutative():
        raise ValueError(f"{S.name} is not commutative")
    flags = classify_semiring(S)
    m_prim = is_primitive(S, "m").primitive
    s_prim = is_primitive(S, "s").primitive
    cs_semifield = flags.semifield and flags.congruence_simple
    v = CommutativeVerdict(S.name)
    v.add("m-primitive <=> semifield", m_prim, flags.semifield)
    v.add("s-primitive <=> congruence-simple semifield", s_prim, cs_semifield)
    if S.n > 2:
        v.add("congruence-simple semifield <=> field (|S| > 2)", cs_semifield, flags.field)
    v.add("s-primitive <=> B or a field", s_prim, _is_boolean_or_field(S))
    # s-semisimple iff the congruences with quotient B or a field meet to Delta
    good = [
        t
        for t in enumerate_congruences(S)
        if t.num_classes >= 2 and _is_boolean_or_field(quotient_semiring(S, t)[0])
    ]
    v.add(
        "s-semisimple <=> subdirect product of B and fields",
        rad(S, "s").semisimple,
        meet_all(S.n, good).is_discrete(),
    )
    if flags.semifield:
        Z = zero_sum_set(S)
        v.add("zero-sum set is {0} or S", Z in (frozenset({S.zero}), frozenset(S.elements)), True)
        if flags.zerosumfree and S.n > 2:
            two = two_block_partition(S)
            v.add("zerosumfree semifield has the two-block congruence", two in enumerate_congruences(S), True)
    return v


# -- endomorphisms ---------------------------------------------------------------------


def map_semiring(maps: Sequence[tuple[int, ...]], add, name: str) -> FiniteSemiring:
    """Semiring of self-maps under pointwise sum and composition
    ``(f g)(x) = f(g(x))``; ``maps`` must be closed and start with the zero map."""
    index = {f: i for i, f in enumerate(maps)}
    size = len(add)
    try:
        plus = tuple(
            tuple(index[tuple(add[f[x]][g[x]] for x in range(size))] for g in maps) for f in maps
        )
        comp = tuple(tuple(index[tuple(f[g[x]] for x in range(size))] for g in maps) for f in maps)
    except KeyError as exc:
        raise ValueError("maps are not closed under sum and composition") from exc
    labels = tuple("(" + ",".join(map(str, f)) + ")" for f in maps)
    return FiniteSemiring(name, labels, plus, comp, index[tuple(0 for _ in range(size))])


def _commuting_additive_maps(
    M: FiniteSemimodule, family: Sequence[Sequence[int]], cap: int
) -> list[tuple[int, ...]]:
    return [
        f
        for f in additive_maps(M.add, M.zero, limit=cap)
        if all(f[g[x]] == g[f[x]] for g in family for x in M.elements)
    ]


@dataclass(frozen=True)
class EndomorphismSemiring:
    semiring: FiniteSemiring
    maps: tuple[tuple[int, ...], ...]


def endomorphism_semiring(M: FiniteSemimodule, cap: int = DEFAULT_MAX_SELF_MAPS) -> EndomorphismSemiring:
    """All additive zero-fixing self-maps of ``M`` commuting with the action."""
    acts = [tuple(M.action[x][s] for x in M.elements) for s in M.semiring.elements]
    maps = sorted(_commuting_additive_maps(M, acts, cap))
    E = map_semiring(maps, M.add, f"End({M.semiring.name}-module)")
    return EndomorphismSemiring(E, tuple(maps))


@dataclass(frozen=True)
class SchurVerdict:
    endomorphisms: int
    status: str

    @property
    def holds(self) -> bool:
        return self.status == "division"


def schur_check(M: FiniteSemimodule) -> SchurVerdict:
    if not classify(M).simple:
        raise NotSimpleError("semimodule is not simple")
    E = endomorphism_semiring(M)
    return SchurVerdict(E.semiring.n, division_status(E.semiring))


# -- representation -----------------------------------------------------------------------


def as_d_module(M: FiniteSemimodule, E: EndomorphismSemiring) -> FiniteSemimodule:
    """``M`` as a right module over ``D = End(M)^op`` via ``x . alpha = alpha(x)``."""
    D = opposite(E.semiring)
    action = tuple(tuple(f[x] for f in E.maps) for x in M.elements)
    return FiniteSemimodule(D, M.labels, M.add, action, M.zero)


def d_endomorphisms(MD: FiniteSemimodule, cap: int = DEFAULT_MAX_SELF_MAPS) -> EndomorphismSemiring:
    """``End_D(M)`` with composition as multiplication."""
    acts = [tuple(MD.action[x][a] for x in MD.elements) for a in MD.semiring.elements]
    maps = sorted(_commuting_additive_maps(MD, acts, cap))
    return EndomorphismSemiring(map_semiring(maps, MD.add, "End_D(M)"), tuple(maps))


def is_one_fold_transitive(M: FiniteSemimodule, maps: Sequence[Sequence[int]]) -> tuple[int, int] | None:
    """None if every nonzero ``x`` reaches every ``y`` through some map;
    otherwise a failing ``(x, y)``."""
    for x in M.elements:
        if x == M.zero:
            continue
        reached = {f[x] for f in maps}
        for y in M.elements:
            if y not in reached:
                return x, y
    return None


@dataclass(frozen=True)
class Representation:
    semiring: FiniteSemiring
    witness: Partition
    module: FiniteSemimodule  # S/rho over S
    endomorphisms: EndomorphismSemiring  # End_S(M)
    d_module: FiniteSemimodule  # M over D = End_S(M)^op
    end_d: EndomorphismSemiring  # End_D(M)
    psi: SemiringHomomorphism  # S^op -> End_D(M)
    image: FiniteSemiring  # T

    @property
    def division(self) -> bool:
        return is_division_semiring(self.d_module.semiring)

    @property
    def injective(self) -> bool:
        return self.psi.injective

    @property
    def image_maps(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.end_d.maps[i] for i in sorted(set(self.psi.map)))

    @property
    def one_fold_transitive(self) -> bool:
        return is_one_fold_transitive(self.module, self.image_maps) is None

    def to_json(self) -> dict:
        return {
            "semiring": self.semiring.name,
            "witness": self.witness.to_json()["classes"],
            "module_size": self.module.size,
            "division_semiring_size": self.d_module.semiring.n,
            "division": self.division,
            "end_d_size": self.end_d.semiring.n,
            "psi": [list(self.end_d.maps[i]) for i in self.psi.map],
            "injective": self.injective,
            "one_fold_transitive": self.one_fold_transitive,
        }


def build_representation(S: FiniteSemiring) -> Representation:
    report = is_primitive(S, "s")
    if not report.primitive:
        raise NotPrimitiveError(f"{S.name} is not s-primitive")
    rho = report.witness_congruence
    M = report.witness_semimodule
    E = endomorphism_semiring(M)
    MD = as_d_module(M, E)
    ED = d_endomorphisms(MD)
    index = {f: i for i, f in enumerate(ED.maps)}
    psi_maps = []
    for a in S.elements:
        f = tuple(M.action[x][a] for x in M.elements)
        if f not in index:
            raise AssertionError(f"psi_{a} is not D-linear")
        psi_maps.append(index[f])
    psi = SemiringHomomorphism(opposite(S), ED.semiring, tuple(psi_maps))
    T = ED.semiring
    members = sorted(set(psi_maps), key=lambda i: (i != T.zero, i))
    image = FiniteSemiring(
        "T",
        tuple(T.labels[i] for i in members),
        tuple(tuple(members.index(T.add[i][j]) for j in members) for i in members),
        tuple(tuple(members.index(T.mul[i][j]) for j in members) for i in members),
    )
    return Representation(S, rho, M, E, MD, ED, psi, image)


@dataclass(frozen=True)
class ConverseVerdict:
    t_op: FiniteSemiring
    module: FiniteSemimodule  # M over T^op
    minimal: bool
    faithful: bool
    m_primitive: bool  # independent recomputation through the radical engine

    @property
    def holds(self) -> bool:
        return self.minimal and self.faithful and self.m_primitive


def converse_check(MD: FiniteSemimodule, maps: Sequence[Sequence[int]]) -> ConverseVerdict:
    """For ``M`` over a division semiring ``D`` and a 1-fold transitive
    subsemiring ``T`` of ``End_D(M)`` (given as maps), build the
    ``T^op``-action ``x . alpha = alpha(x)`` and check ``M`` is faithful and
    minimal over ``T^op``."""
    if not is_division_semiring(MD.semiring):
        raise ValueError("scalars do not form a division semiring")
    maps = [tuple(f) for f in maps]
    zero_map = tuple(MD.zero for _ in MD.elements)
    if zero_map not in maps:
        raise ValueError("T must contain the zero map")
    allowed = set(d_endomorphisms(MD).maps)
    for f in maps:
        if f not in allowed:
            raise ValueError(f"{f} is not a D-endomorphism")
    bad = is_one_fold_transitive(MD, maps)
    if bad is not None:
        raise NotTransitiveError(f"no map in T sends {bad[0]} to {bad[1]}")
    ordered = [zero_map] + sorted(set(maps) - {zero_map})
    T = map_semiring(ordered, MD.add, "T")
    Top = opposite(T)
    action = tuple(tuple(f[x] for f in ordered) for x in MD.elements)
    M = FiniteSemimodule(Top, MD.labels, MD.add, action, MD.zero)
    c = classify(M)
    return ConverseVerdict(
        Top, M, c.minimal, annihilator(M).faithful, is_primitive(Top, "m").primitive
    )


