"""Property suites run across a corpus manifest.

Every suite breaks the corpus into work units (a semiring or a pair of
semirings) and turns each unit into a list of :class:`Check` records. A
failed check always carries a JSON witness. Units that hit an enumeration
cap are recorded as ``capped`` and do not count as failures.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Iterable

from .congruences import (
    brute_force_right_congruences,
    classify_regularity,
    enumerate_congruences,
    enumerate_right_congruences,
    maximal_regular,
    meet,
    rc,
    regularity_unit,
)
from .corpus import CorpusEntry, CorpusManifest
from .partition import EnumerationLimitError, Partition
from .radical import RadicalDisagreement, hoehnke_check, product_radical_check, rad
from .semimodule import (
    FiniteSemimodule,
    annihilator,
    classify,
    delta,
    descend,
    enumerate_semimodules,
    quotient_semimodule,
    semimodule_congruences,
    semimodule_isomorphism,
    subsemimodules,
)
from .semiring import FiniteSemiring, is_isomorphic, quotient_semiring
from .structure import (
    NotTransitiveError,
    build_representation,
    commutative_classification_check,
    converse_check,
    is_primitive,
    schur_check,
)


@dataclass
class Check:
    unit: str
    check: str
    status: str  # "pass", "fail" or "capped"
    witness: Any = None

    def to_json(self) -> dict:
        out = {"unit": self.unit, "check": self.check, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class VerificationOutcome:
    suite: str
    checks: list[Check] = field(default_factory=list)
    seconds: float | None = None

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == "fail"]

    @property
    def capped(self) -> list[Check]:
        return [c for c in self.checks if c.status == "capped"]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "suite": self.suite,
            "passed": self.passed,
            "counts": {
                status: sum(c.status == status for c in self.checks)
                for status in ("pass", "fail", "capped")
            },
            "checks": [c.to_json() for c in self.checks],
        }
        if timing and self.seconds is not None:
            out["seconds"] = round(self.seconds, 3)
        return out


def _verdict(unit: str, name: str, ok: bool, witness: Any = None) -> Check:
    return Check(unit, name, "pass" if ok else "fail", None if ok else witness)


def _classes(p: Partition) -> list[list[int]]:
    return p.to_json()["classes"]


def _module_json(M: FiniteSemimodule) -> dict:
    return {"add": [list(r) for r in M.add], "action": [list(r) for r in M.action]}


@lru_cache(maxsize=64)
def _modules(S: FiniteSemiring, max_size: int) -> tuple[tuple[FiniteSemimodule, Any], ...]:
    return tuple((M, classify(M)) for M in enumerate_semimodules(S, max_size))


def _small(entry: CorpusEntry, manifest: CorpusManifest) -> bool:
    return entry.semiring.n <= manifest.module_semiring_limit


# -- per-unit suites --------------------------------------------------------------


def _equivalence(entry: CorpusEntry, manifest: CorpusManifest) -> list[Check]:
    out = []
    for kind in "ms":
        try:
            report = rad(entry.semiring, kind)
        except RadicalDisagreement as exc:
            out.append(Check(entry.name, f"rad_{kind} agreement", "fail", str(exc)))
            continue
        out.append(_verdict(entry.name, f"rad_{kind} agreement", report.agreement, report.to_json()))
    m, s = rad(entry.semiring, "m").radical, rad(entry.semiring, "s").radical
    out.append(
        _verdict(entry.name, "rad_m contained in rad_s", m <= s, {"m": _classes(m), "s": _classes(s)})
    )
    return out


def _hoehnke(entry: CorpusEntry, manifest: CorpusManifest) -> list[Check]:
    out = []
    for kind in "ms":
        v = hoehnke_check(entry.semiring, kind)
        out.append(_verdict(entry.name, f"hoehnke_{kind}", v.holds, v.to_json()))
    return out


def _product(pair: tuple[CorpusEntry, CorpusEntry], manifest: CorpusManifest) -> list[Check]:
    a, b = pair
    unit = f"{a.name} x {b.name}"
    out = []
    for kind in "ms":
        v = product_radical_check(a.semiring, b.semiring, kind)
        out.append(_verdict(unit, f"rad_{kind} of product", v.radical_holds, v.to_json()))
        out.append(_verdict(unit, f"RC_{kind} of product", v.rc_holds, v.to_json()))
    return out


def _irreducible_iff(kind: str) -> Callable[[CorpusEntry, CorpusManifest], list[Check]]:
    label = "minimal" if kind == "m" else "simple"

    def run(entry: CorpusEntry, manifest: CorpusManifest) -> list[Check]:
        if not _small(entry, manifest):
            return []
        S = entry.semiring
        quotients = [(mu, quotient_semimodule(S, mu)) for mu in rc(S, kind)]
        modules = _modules(S, manifest.module_size_for(entry))
        out = []
        for M, c in modules:
            if not getattr(c, label):
                continue
            match = next((mu for mu, Q in quotients if semimodule_isomorphism(Q, M)), None)
            out.append(
                _verdict(entry.name, f"{label} module is S/mu, mu in RC_{kind}", match is not None, _module_json(M))
            )
        for mu, Q in quotients:
            c = classify(Q)
            found = any(semimodule_isomorphism(Q, M) for M, _ in modules)
            out.append(
                _verdict(
                    entry.name,
                    f"S/mu is {label} for mu in RC_{kind}",
                    getattr(c, label) and found,
                    {"mu": _classes(mu), label: getattr(c, label), "enumerated": found},
                )
            )
        return out

    return run


def _lemmas(entry: CorpusEntry, manifest: CorpusManifest) -> list[Check]:
    """Orbit generation, the delta congruences and change of scalars."""
    if not _small(entry, manifest):
        return []
    S = entry.semiring
    out = []
    lattice = enumerate_right_congruences(S)
    for mu in lattice:
        e = regularity_unit(S, mu)
        if e is None:
            continue
        Q = quotient_semimodule(S, mu)
        d = delta(Q, mu.labels[e])
        out.append(
            _verdict(entry.name, "delta of [e] is mu", d == mu, {"mu": _classes(mu), "e": e, "delta": _classes(d)})
        )
    congruences = enumerate_congruences(S)
    for M, c in _modules(S, manifest.module_size_for(entry)):
        w = _module_json(M)
        if c.nonzero_action:
            ok = c.minimal == c.generated_by_each_nonzero
            out.append(_verdict(entry.name, "minimal iff mS = M for all m != 0", ok, w))
        ann = annihilator(M).congruence
        via_delta = meet(S, (delta(M, x) for x in M.elements))
        out.append(_verdict(entry.name, "annihilator is meet of delta_m", ann == via_delta, w))
        for x in M.elements:
            if x == M.zero:
                continue
            if c.minimal:
                r = classify_regularity(S, delta(M, x), lattice)
                out.append(_verdict(entry.name, "delta_m m-regular for minimal M", r.m_regular, {**w, "m": x}))
            if c.simple:
                r = classify_regularity(S, delta(M, x), lattice)
                out.append(_verdict(entry.name, "delta_m s-regular for simple M", r.s_regular, {**w, "m": x}))
        for theta in congruences:
            if theta.is_discrete() or not theta <= ann:
                continue
            Q, f = quotient_semiring(S, theta)
            N = descend(M, f)
            same_subs = subsemimodules(N) == subsemimodules(M)
            same_congs = semimodule_congruences(N) == semimodule_congruences(M)
            reps = theta.representatives()
            image = Partition(tuple(ann.labels[reps[q]] for q in Q.elements))
            ann_ok = annihilator(N).congruence == image
            out.append(
                _verdict(
                    entry.name,
                    "change of scalars along theta in ann(M)",
                    same_subs and same_congs and ann_ok,
                    {**w, "theta": _classes(theta)},
                )
            )
    return out


def _schur(entry: CorpusEntry, manifest: CorpusManifest) -> list[Check]:
    S = entry.semiring
    out = []
    for mu in rc(S, "s"):
        M = quotient_semimodule(S, mu)
        v = schur_check(M)
        out.append(
            _verdict(entry.name, "End of S/mu is division", v.holds, {"mu": _classes(mu), "status": v.status})
        )
    if _small(entry, manifest):
        for M, c in _modules(S, manifest.module_size_for(entry)):
            if c.simple:
                v = schur_check(M)
                out.append(
                    _verdict(entry.name, "End of simple module is division", v.holds, {**_module_json(M), "status": v.status})
                )
    return out


def _representation(entry: CorpusEntry, manifest: CorpusManifest) -> list[Check]:
    S = entry.semiring
    if not is_primitive(S, "s").primitive:
        return []
    r = build_representation(S)
    w = r.to_json()
    out = [
        _verdict(entry.name, "D is a division semiring", r.division, w),
        _verdict(entry.name, "psi injective", r.injective, w),
        _verdict(entry.name, "T one-fold transitive", r.one_fold_transitive, w),
    ]
    try:
        v = converse_check(r.d_module, r.image_maps)
    except NotTransitiveError as exc:
        out.append(Check(entry.name, "converse", "fail", str(exc)))
        return out
    out.append(
        _verdict(
            entry.name,
            "T^op acts faithfully and minimally",
            v.holds,
            {"minimal": v.minimal, "faithful": v.faithful, "m_primitive": v.m_primitive},
        )
    )
    out.append(_verdict(entry.name, "T^op isomorphic to S", is_isomorphic(v.t_op, S), {"t_op": v.t_op.to_json()}))
    return out


def _commutative(entry: CorpusEntry, manifest: CorpusManifest) -> list[Check]:
    S = entry.semiring
    if not S.is_commutative():
        return []
    v = commutative_classification_check(S)
    return [_verdict(entry.name, s["statement"], s["holds"], s) for s in v.statements]


def _conjecture(entry: CorpusEntry, manifest: CorpusManifest) -> list[Check]:
    """Elementary modules against quotients by maximal regular right
    congruences, in both directions; every instance is reported."""
    if not _small(entry, manifest):
        return []
    S = entry.semiring
    quotients = [(mu, quotient_semimodule(S, mu)) for mu in maximal_regular(S)]
    out = []
    for M, c in _modules(S, manifest.module_size_for(entry)):
        if not c.elementary:
            continue
        match = next((mu for mu, Q in quotients if semimodule_isomorphism(Q, M)), None)
        w = _module_json(M)
        if match is not None:
            out.append(Check(entry.name, "elementary => S/mu", "pass", {**w, "mu": _classes(match)}))
        else:
            out.append(Check(entry.name, "elementary => S/mu", "fail", w))
    for mu, Q in quotients:
        c = classify(Q)
        witness = {"mu": _classes(mu), **c.to_json()}
        out.append(Check(entry.name, "S/mu => elementary", "pass" if c.elementary else "fail", witness))
    return out


def _oracle(entry: CorpusEntry, manifest: CorpusManifest) -> list[Check]:
    S = entry.semiring
    if S.n > manifest.oracle_limit:
        return []
    closure = enumerate_right_congruences(S)
    brute = brute_force_right_congruences(S)
    witness = {
        "closure_only": [_classes(p) for p in closure if p not in brute],
        "brute_only": [_classes(p) for p in brute if p not in closure],
    }
    return [_verdict(entry.name, "closure enumeration equals brute force", closure == brute, witness)]


# -- driver ---------------------------------------------------------------------


def _entries(manifest: CorpusManifest) -> list[CorpusEntry]:
    return manifest.entries


def _pairs(manifest: CorpusManifest) -> list[tuple[CorpusEntry, CorpusEntry]]:
    return manifest.product_pairs()


SUITES: dict[str, tuple[Callable[[CorpusManifest], Iterable], Callable]] = {
    "equivalence": (_entries, _equivalence),
    "hoehnke": (_entries, _hoehnke),
    "product": (_pairs, _product),
    "minimal-iff": (_entries, _irreducible_iff("m")),
    "simple-iff": (_entries, _irreducible_iff("s")),
    "lemmas": (_entries, _lemmas),
    "schur": (_entries, _schur),
    "representation": (_entries, _representation),
    "commutative-class": (_entries, _commutative),
    "conjecture-e": (_entries, _conjecture),
    "oracle": (_entries, _oracle),
}


def _unit_name(unit) -> str:
    if isinstance(unit, tuple):
        return " x ".join(e.name for e in unit)
    return unit.name


def _run_unit(suite: str, unit, manifest: CorpusManifest) -> list[Check]:
    try:
        return SUITES[suite][1](unit, manifest)
    except EnumerationLimitError as exc:
        return [Check(_unit_name(unit), suite, "capped", str(exc))]


def run_suite(suite: str, manifest: CorpusManifest, jobs: int = 1) -> VerificationOutcome:
    """Run ``suite`` over ``manifest``; results keep manifest order whatever
    the number of worker processes."""
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    units = list(SUITES[suite][0](manifest))
    start = time.perf_counter()
    if jobs > 1 and len(units) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_unit, [suite] * len(units), units, [manifest] * len(units)))
    else:
        results = [_run_unit(suite, u, manifest) for u in units]
    outcome = VerificationOutcome(suite, [c for r in results for c in r])
    outcome.seconds = time.perf_counter() - start
    return outcome
