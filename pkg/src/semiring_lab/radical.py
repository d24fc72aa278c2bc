"""The m-radical and s-radical of a finite semiring.

Both radicals are two-sided congruences. Each is computed three ways: as the
meet of the m-regular (s-regular) right congruences, as the meet of their
residuals ``(rho : S x S)``, and as the meet of the annihilators of the
quotient semimodules ``S/rho``. The three must agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .congruences import enumerate_congruences, meet, rc, residual
from .partition import Partition
from .semimodule import annihilator, classify, enumerate_semimodules, quotient_semimodule
from .semiring import FiniteSemiring, product, product_partition, quotient_semiring, zmod


class RadicalDisagreement(RuntimeError):
    """The characterizations of a radical produced different congruences."""


def _check_kind(kind: str) -> str:
    if kind not in ("m", "s"):
        raise ValueError(f"kind must be 'm' or 's', not {kind!r}")
    return kind


@dataclass(frozen=True)
class RadicalReport:
    kind: str
    semiring: FiniteSemiring
    radical: Partition
    via_rc: Partition
    via_residual: Partition
    via_annihilators: Partition
    witnesses: tuple[Partition, ...]

    @property
    def agreement(self) -> bool:
        return self.via_rc == self.via_residual == self.via_annihilators

    @property
    def semisimple(self) -> bool:
        return self.radical.is_discrete()

    def to_json(self) -> dict:
        return {
            "semiring": self.semiring.name,
            "kind": self.kind,
            "radical": self.radical.to_json()["classes"],
            "via_rc": self.via_rc.to_json()["classes"],
            "via_residual": self.via_residual.to_json()["classes"],
            "via_annihilators": self.via_annihilators.to_json()["classes"],
            "witnesses": [w.to_json()["classes"] for w in self.witnesses],
            "agreement": self.agreement,
            "semisimple": self.semisimple,
        }


@lru_cache(maxsize=512)
def rad(S: FiniteSemiring, kind: str = "m") -> RadicalReport:
    """Radical of ``S``; the empty meet (no m/s-regular congruences) is the
    full relation."""
    _check_kind(kind)
    members = tuple(rc(S, kind))
    via_rc = meet(S, members)
    via_residual = meet(S, (residual(S, mu) for mu in members))
    via_ann = meet(S, (annihilator(quotient_semimodule(S, mu)).congruence for mu in members))
    report = RadicalReport(kind, S, via_rc, via_rc, via_residual, via_ann, members)
    if not report.agreement:
        raise RadicalDisagreement(
            f"{S.name}: rad_{kind} via RC {via_rc}, via residuals {via_residual}, "
            f"via annihilators {via_ann}"
        )
    return report


def rad_m(S: FiniteSemiring) -> Partition:
    return rad(S, "m").radical


def rad_s(S: FiniteSemiring) -> Partition:
    return rad(S, "s").radical


# -- rings ---------------------------------------------------------------------


def _prime_divisors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def jacobson_ideal_zmod(n: int) -> frozenset[int]:
    """Classical Jacobson radical of Z/n: the intersection of its maximal
    ideals pZ/n over the primes p dividing n."""
    primes = _prime_divisors(n)
    return frozenset(x for x in range(n) if all(x % p == 0 for p in primes))


@dataclass(frozen=True)
class RingCompatibility:
    n: int
    jacobson: frozenset[int]
    zero_class_m: frozenset[int]
    zero_class_s: frozenset[int]
    m_equals_s: bool

    @property
    def match(self) -> bool:
        return self.zero_class_s == self.jacobson

    @property
    def holds(self) -> bool:
        return self.match and self.m_equals_s

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "jacobson": sorted(self.jacobson),
            "zero_class_m": sorted(self.zero_class_m),
            "zero_class_s": sorted(self.zero_class_s),
            "holds": self.holds,
        }


def ring_compatibility_check(n: int) -> RingCompatibility:
    R = zmod(n)
    m, s = rad(R, "m"), rad(R, "s")
    return RingCompatibility(
        n,
        jacobson_ideal_zmod(n),
        m.radical.class_of(R.zero),
        s.radical.class_of(R.zero),
        m.radical == s.radical,
    )


# -- Hoehnke laws ---------------------------------------------------------------


@dataclass
class HoehnkeVerdict:
    semiring: str
    kind: str
    quotients_checked: int = 0
    # (theta classes, a, b): (a, b) in rad(S) but (f a, f b) not in rad(S/theta)
    image_failures: list = field(default_factory=list)
    idempotence_holds: bool = True

    @property
    def holds(self) -> bool:
        return not self.image_failures and self.idempotence_holds

    def to_json(self) -> dict:
        return {
            "semiring": self.semiring,
            "kind": self.kind,
            "quotients_checked": self.quotients_checked,
            "image_failures": self.image_failures,
            "idempotence_holds": self.idempotence_holds,
            "holds": self.holds,
        }


def hoehnke_check(S: FiniteSemiring, kind: str = "m") -> HoehnkeVerdict:
    """Check image containment under every canonical surjection ``S -> S/theta``
    and triviality of the radical of ``S / rad(S)``."""
    _check_kind(kind)
    r = rad(S, kind).radical
    verdict = HoehnkeVerdict(S.name, kind)
    reps = r.representatives_of_each()
    for theta in enumerate_congruences(S):
        Q, f = quotient_semiring(S, theta)
        rq = rad(Q, kind).radical
        verdict.quotients_checked += 1
        for a in S.elements:
            b = reps[a]
            if not rq.same(f(a), f(b)):
                verdict.image_failures.append(
                    {"theta": theta.to_json()["classes"], "pair": [b, a]}
                )
                break
    Q, _ = quotient_semiring(S, r)
    verdict.idempotence_holds = rad(Q, kind).radical.is_discrete()
    return verdict


# -- products ---------------------------------------------------------------------


@dataclass(frozen=True)
class ProductVerdict:
    left: str
    right: str
    kind: str
    radical: Partition
    expected: Partition
    rc_expected: frozenset[Partition]
    rc_actual: frozenset[Partition]

    @property
    def radical_holds(self) -> bool:
        return self.radical == self.expected

    @property
    def rc_holds(self) -> bool:
        return self.rc_expected == self.rc_actual

    @property
    def holds(self) -> bool:
        return self.radical_holds and self.rc_holds

    def to_json(self) -> dict:
        def listing(ps):
            return [p.to_json()["classes"] for p in sorted(ps, key=Partition.sort_key)]

        return {
            "left": self.left,
            "right": self.right,
            "kind": self.kind,
            "radical": self.radical.to_json()["classes"],
            "expected": self.expected.to_json()["classes"],
            "rc_missing": listing(self.rc_expected - self.rc_actual),
            "rc_unexpected": listing(self.rc_actual - self.rc_expected),
            "holds": self.holds,
        }


def product_radical_check(R: FiniteSemiring, S: FiniteSemiring, kind: str = "m") -> ProductVerdict:
    """``rad(R x S)`` from scratch against ``rad(R) x rad(S)``, and the
    description of the regular congruences on the product as
    ``sigma x (S x S)`` or ``(R x R) x delta``."""
    _check_kind(kind)
    P = product(R, S)
    full_r, full_s = Partition.full(R.n), Partition.full(S.n)
    expected_rc = {product_partition(sig, full_s) for sig in rc(R, kind)}
    expected_rc |= {product_partition(full_r, d) for d in rc(S, kind)}
    return ProductVerdict(
        R.name,
        S.name,
        kind,
        rad(P, kind).radical,
        product_partition(rad(R, kind).radical, rad(S, kind).radical),
        frozenset(expected_rc),
        frozenset(rc(P, kind)),
    )


# -- semimodule lower bound ---------------------------------------------------------


@dataclass(frozen=True)
class LowerBoundVerdict:
    semiring: str
    kind: str
    max_size: int
    modules_checked: int
    containment_holds: bool
    equality_checked: bool
    equality_holds: bool
    counterexample: dict | None = None

    @property
    def holds(self) -> bool:
        return self.containment_holds and (self.equality_holds or not self.equality_checked)

    def to_json(self) -> dict:
        return {
            "semiring": self.semiring,
            "kind": self.kind,
            "max_size": self.max_size,
            "modules_checked": self.modules_checked,
            "containment_holds": self.containment_holds,
            "equality_checked": self.equality_checked,
            "equality_holds": self.equality_holds,
            "counterexample": self.counterexample,
            "holds": self.holds,
        }


def rad_lower_bound_check(S: FiniteSemiring, kind: str = "m", max_size: int = 4) -> LowerBoundVerdict:
    """Meet of annihilators over every enumerated minimal (simple) semimodule
    with at most ``max_size`` elements, compared against the radical."""
    _check_kind(kind)
    report = rad(S, kind)
    r = report.radical
    acc = Partition.full(S.n)
    checked = 0
    bad = None
    for M in enumerate_semimodules(S, max_size):
        c = classify(M)
        if not (c.simple if kind == "s" else c.minimal):
            continue
        checked += 1
        ann = annihilator(M).congruence
        acc = acc.meet(ann)
        if bad is None and not r <= ann:
            bad = {"action": [list(row) for row in M.action], "add": [list(row) for row in M.add]}
    # every S/mu with mu in RC has at most |S/mu| elements
    largest = max((mu.num_classes for mu in report.witnesses), default=0)
    equality_checked = largest <= max_size
    return LowerBoundVerdict(
        S.name,
        kind,
        max_size,
        checked,
        bad is None,
        equality_checked,
        acc == report.via_annihilators,
        bad,
    )
