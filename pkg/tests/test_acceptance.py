"""Acceptance criteria, one test each.

Every test records a pass/fail line that is printed in the terminal summary.
Timed criteria clear the engine caches first so the bound is measured cold.
"""

from __future__ import annotations

import itertools
import time

import pytest

from conftest import ACCEPTANCE
from semiring_lab import congruences, radical, verify
from semiring_lab.congruences import (
    enumerate_congruences,
    enumerate_right_congruences,
    is_right_congruence,
    meet,
    rc,
    residual,
)
from semiring_lab.partition import Partition
from semiring_lab.radical import hoehnke_check, product_radical_check, rad
from semiring_lab.semimodule import annihilator, quotient_semimodule
from semiring_lab.semiring import (
    boolean,
    cyclic_group,
    group_semiring_b,
    is_isomorphic,
    product_partition,
    zmod,
)
from semiring_lab.structure import subdirect_decomposition
from semiring_lab.verify import run_suite


def record(number: int, title: str, ok: bool, detail: str = "") -> None:
    ACCEPTANCE[number] = (title, ok, detail)
    assert ok, f"criterion {number} ({title}) failed: {detail}"


def cold() -> None:
    for fn in (
        radical.rad,
        congruences._cached_right_lattice,
        congruences._cached_two_sided_lattice,
        congruences._classified,
        verify._modules,
    ):
        fn.cache_clear()


def zmod_jacobson_oracle(n: int) -> frozenset[int]:
    """Intersection of the maximal ideals of Z/n from a subset scan."""
    ideals = []
    for bits in range(1, 1 << n):
        I = frozenset(x for x in range(n) if bits >> x & 1)
        if 0 in I and all((a + b) % n in I for a in I for b in I) and all((a * s) % n in I for a in I for s in range(n)):
            ideals.append(I)
    proper = [I for I in ideals if len(I) < n]
    maximal = [I for I in proper if not any(I < J for J in proper)]
    return frozenset.intersection(*maximal)


def brute_right_congruences(S) -> set[Partition]:
    found = set()
    for lab in itertools.product(range(S.n), repeat=S.n):
        p = Partition(lab)
        if p not in found and is_right_congruence(S, p):
            found.add(p)
    return found


def test_criterion_01_semifield_radicals():
    cold()
    start = time.perf_counter()
    cases = [boolean()] + [zmod(p) for p in (2, 3, 5, 7)]
    bad = [S.name for S in cases for kind in "ms" if rad(S, kind).radical != Partition.discrete(S.n)]
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 1.0
    record(1, "semifield radicals are trivial", ok, f"{elapsed:.3f}s" + (f", wrong on {bad}" if bad else ""))


def test_criterion_02_ring_compatibility():
    cold()
    start = time.perf_counter()
    bad = []
    for n in range(2, 13):
        R = zmod(n)
        s, m = rad(R, "s").radical, rad(R, "m").radical
        if s.class_of(R.zero) != zmod_jacobson_oracle(n) or s != m:
            bad.append(n)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 5.0
    record(2, "zero class of rad_s(Z_n) is the Jacobson ideal", ok, f"{elapsed:.3f}s" + (f", wrong for n={bad}" if bad else ""))


def test_criterion_03_characterization_equivalence(corpus):
    cold()
    start = time.perf_counter()
    bad = []
    for entry in corpus.entries:
        S = entry.semiring
        for kind in "ms":
            members = rc(S, kind)
            via_rc = meet(S, members)
            via_res = meet(S, [residual(S, mu) for mu in members])
            via_ann = meet(S, [annihilator(quotient_semimodule(S, mu)).congruence for mu in members])
            report = rad(S, kind)
            if not (via_rc == via_res == via_ann == report.radical and report.agreement):
                bad.append((entry.name, kind))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 120
    record(3, "three characterizations agree", ok, f"{len(corpus.entries)} semirings, {elapsed:.1f}s" + (f", {bad}" if bad else ""))


def test_criterion_04_hoehnke_laws(corpus):
    bad, quotients = [], 0
    for entry in corpus.entries:
        for kind in "ms":
            v = hoehnke_check(entry.semiring, kind)
            quotients += v.quotients_checked
            if not v.holds:
                bad.append((entry.name, kind, v.to_json()))
    record(4, "radical laws under quotients", not bad, f"{quotients} quotients" + (f", {bad[:2]}" if bad else ""))


def test_criterion_05_products(corpus):
    bad = []
    pairs = corpus.product_pairs()
    for a, b in pairs:
        R, S = a.semiring, b.semiring
        for kind in "ms":
            v = product_radical_check(R, S, kind)
            expected = product_partition(rad(R, kind).radical, rad(S, kind).radical)
            if not v.holds or v.radical != expected:
                bad.append((a.name, b.name, kind))
    record(5, "radical and RC of products", not bad, f"{len(pairs)} pairs" + (f", {bad[:3]}" if bad else ""))


def test_criterion_06_minimal_and_simple_iff(corpus):
    cold()
    start = time.perf_counter()
    outcomes = [run_suite("minimal-iff", corpus), run_suite("simple-iff", corpus)]
    elapsed = time.perf_counter() - start
    checks = sum(len(o.checks) for o in outcomes)
    failures = [c.to_json() for o in outcomes for c in o.failures]
    capped = [c.to_json() for o in outcomes for c in o.capped]
    ok = not failures and not capped and checks > 0 and elapsed < 600
    record(6, "irreducible modules are quotients by RC", ok, f"{checks} checks, {elapsed:.1f}s" + (f", {failures[:2]}" if failures else ""))


def test_criterion_07_orbit_and_delta_lemmas(corpus):
    outcome = run_suite("lemmas", corpus)
    names = {c.check for c in outcome.checks}
    needed = {
        "minimal iff mS = M for all m != 0",
        "delta_m m-regular for minimal M",
        "delta_m s-regular for simple M",
        "annihilator is meet of delta_m",
        "delta of [e] is mu",
    }
    ok = outcome.passed and not outcome.capped and needed <= names
    detail = f"{len(outcome.checks)} checks"
    if outcome.failures:
        detail += f", {outcome.failures[0].to_json()}"
    record(7, "orbit generation and delta congruences", ok, detail)


def test_criterion_08_commutative_classification(corpus):
    outcome = run_suite("commutative-class", corpus)
    d = subdirect_decomposition(zmod(6), "s")
    z6_ok = (
        d is not None
        and len(d.factors) == 2
        and d.meet.is_discrete()
        and d.injective
        and d.projections_surjective
        and sorted(Q.n for _, Q in d.factors) == [2, 3]
        and any(is_isomorphic(Q, zmod(2)) for _, Q in d.factors)
        and any(is_isomorphic(Q, zmod(3)) for _, Q in d.factors)
    )
    ok = outcome.passed and z6_ok
    record(8, "commutative classification", ok, f"{len(outcome.checks)} biconditionals, Z6 split={z6_ok}")


def test_criterion_09_representation(corpus):
    outcome = run_suite("representation", corpus)
    units = sorted({c.unit for c in outcome.checks})
    ok = outcome.passed and not outcome.capped and len(units) > 0
    record(9, "s-primitive semirings are transitive endomorphism semirings", ok, f"{len(units)} s-primitive semirings")


def test_criterion_10_oracle_agreement(corpus):
    bad, count = [], 0
    for entry in corpus.entries:
        S = entry.semiring
        if S.n > 5:
            continue
        count += 1
        if set(enumerate_right_congruences(S)) != brute_right_congruences(S):
            bad.append(entry.name)
    record(10, "closure enumeration equals brute force", not bad and count > 0, f"{count} semirings" + (f", {bad}" if bad else ""))


def test_criterion_11_group_semiring_report():
    S = group_semiring_b(cyclic_group(2))
    full = Partition.full(S.n)
    lines, agreement = [], True
    for kind in "ms":
        r = rad(S, kind)
        agreement &= r.agreement and r.via_rc == r.via_residual == r.via_annihilators
        lines.append(f"rad_{kind}={r.radical.to_json()['classes']} full={r.radical == full}")
    record(11, "group semiring radical computed and compared", agreement, "; ".join(lines))


def test_criterion_12_elementary_conjecture(corpus):
    outcome = run_suite("conjecture-e", corpus)
    complete = not outcome.capped and all(c.witness is not None for c in outcome.checks)
    verdict = "no counterexample" if outcome.passed else f"{len(outcome.failures)} counterexamples"
    record(12, "elementary-module conjecture suite", complete and len(outcome.checks) > 0, f"{len(outcome.checks)} instances, {verdict}")
