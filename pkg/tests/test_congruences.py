from __future__ import annotations

import itertools

import pytest

from semiring_lab.congruences import (
    bourne_congruence,
    brute_force_right_congruences,
    classify_regularity,
    enumerate_congruences,
    enumerate_right_congruences,
    enumerate_right_ideals,
    generated_right_ideal,
    is_congruence,
    is_mu_saturated,
    is_right_congruence,
    is_right_ideal,
    is_saturated,
    largest_congruence_below,
    meet,
    principal_right_congruence,
    rc_m,
    rc_s,
    regularity_unit,
    residual,
    right_violation,
    saturation,
)
from semiring_lab.partition import EnumerationLimitError, Partition
from semiring_lab.semiring import (
    boolean,
    cyclic_group,
    group_semiring_b,
    matrix_b,
    zero_mul,
    zmod,
)

D = Partition.discrete
F = Partition.full


def P(n, *classes):
    return Partition.from_classes(n, classes)


Z4_HALF = P(4, [0, 2], [1, 3])
BG2 = group_semiring_b(cyclic_group(2))


def _subset_ideals(S):
    """Independent oracle: filter every subset."""
    out = set()
    for bits in range(1 << S.n):
        I = frozenset(x for x in S.elements if bits >> x & 1)
        if is_right_ideal(S, I):
            out.add(I)
    return out


# -- right congruences --------------------------------------------------------


def test_delta_and_nabla_are_right_congruences(corpus_semirings):
    for S in corpus_semirings:
        assert is_right_congruence(S, D(S.n))
        assert is_right_congruence(S, F(S.n))


def test_z4_violation_witness():
    assert right_violation(zmod(4), P(4, [0, 1], [2], [3])) == (0, 1, 1, "+")


def test_size_mismatch_is_rejected():
    with pytest.raises(ValueError):
        is_right_congruence(zmod(4), D(3))


def test_principal_right_congruences():
    assert principal_right_congruence(zmod(5), 3, 3) == D(5)
    assert principal_right_congruence(boolean(), 0, 1) == F(2)
    assert principal_right_congruence(zmod(4), 0, 2) == Z4_HALF


@pytest.mark.parametrize(
    "S, expected",
    [
        (boolean(), [D(2), F(2)]),
        (zmod(4), [D(4), Z4_HALF, F(4)]),
        (zero_mul(2), [D(2), F(2)]),
    ],
)
def test_lattice_examples(S, expected):
    assert enumerate_right_congruences(S) == expected
    assert enumerate_congruences(S) == expected


def test_congruence_counts_of_rings():
    # congruences of Z/n correspond to divisors of n
    for n in range(2, 13):
        divisors = sum(n % d == 0 for d in range(1, n + 1))
        assert len(enumerate_congruences(zmod(n))) == divisors


def test_noncommutative_right_lattice_is_larger():
    M = matrix_b(2)
    right, two = enumerate_right_congruences(M), enumerate_congruences(M)
    assert set(two) < set(right)
    assert all(is_congruence(M, t) for t in two)
    assert not all(is_congruence(M, r) for r in right)


def test_closure_matches_brute_force_oracle(corpus_semirings):
    for S in corpus_semirings:
        if S.n <= 5:
            assert enumerate_right_congruences(S) == brute_force_right_congruences(S), S.name


def test_lattice_cap(monkeypatch):
    S = zmod(7)  # the cap is part of the cache key, so this is recomputed
    with pytest.raises(EnumerationLimitError):
        enumerate_right_congruences(S, limit=1)


# -- ideals ----------------------------------------------------------------------


def test_right_ideal_examples():
    assert set(enumerate_right_ideals(boolean())) == {frozenset({0}), frozenset({0, 1})}
    assert set(enumerate_right_ideals(zmod(4))) == {frozenset({0}), frozenset({0, 2}), frozenset(range(4))}
    ideals = set(enumerate_right_ideals(BG2))
    assert frozenset({0}) in ideals and frozenset(range(4)) in ideals


def test_right_ideals_match_subset_filter(corpus_semirings):
    for S in corpus_semirings:
        if S.n <= 8:
            assert set(enumerate_right_ideals(S)) == _subset_ideals(S), S.name


def test_bourne_examples():
    assert bourne_congruence(zmod(6), {0, 3}) == P(6, [0, 3], [1, 4], [2, 5])
    assert bourne_congruence(zmod(6), {0}) == D(6)
    assert bourne_congruence(BG2, {0}) == D(4)
    assert bourne_congruence(boolean(), {0, 1}) == F(2)
    with pytest.raises(ValueError):
        bourne_congruence(zmod(6), {0, 1})


def test_bourne_is_least_with_ideal_in_zero_class(corpus_semirings):
    for S in corpus_semirings[:40]:
        lattice = enumerate_right_congruences(S)
        for I in enumerate_right_ideals(S):
            sigma = bourne_congruence(S, I)
            above = [r for r in lattice if I <= r.class_of(S.zero)]
            assert sigma in above
            assert all(sigma <= r for r in above)


def test_saturation_examples():
    assert saturation(zmod(4), {0, 2}) == {0, 2}
    assert saturation(boolean(), {0}) == {0}
    I = generated_right_ideal(BG2, [3])  # the ideal generated by {e, g}
    assert I == {0, 3}
    closure = saturation(BG2, I)
    assert saturation(BG2, closure) == closure and I <= closure


def test_ring_ideals_are_saturated():
    for n in range(2, 13):
        assert all(is_saturated(zmod(n), I) for I in enumerate_right_ideals(zmod(n)))


def test_saturation_is_closure_operator(corpus_semirings):
    for S in corpus_semirings[:40]:
        ideals = enumerate_right_ideals(S)
        sat = {I: saturation(S, I) for I in ideals}
        for I in ideals:
            assert I <= sat[I] and saturation(S, sat[I]) == sat[I]
            assert sat[I] == bourne_congruence(S, I).class_of(S.zero)
            # saturated exactly when sigma_I-saturated
            assert is_saturated(S, I) == is_mu_saturated(S, I, bourne_congruence(S, I))
        for I, J in itertools.product(ideals, repeat=2):
            if I <= J:
                assert sat[I] <= sat[J]


def test_mu_saturation_examples(corpus_semirings):
    for S in corpus_semirings[:20]:
        for mu in enumerate_right_congruences(S):
            assert is_mu_saturated(S, mu.class_of(S.zero), mu)
    assert is_mu_saturated(zmod(4), {0, 2}, D(4))
    assert not is_mu_saturated(zmod(4), {0, 2}, F(4))


# -- regularity ----------------------------------------------------------------------


def test_regularity_examples():
    c = classify_regularity(boolean(), D(2))
    assert c.kind == "s-regular" and c.unit == 1
    assert classify_regularity(zmod(4), Z4_HALF).kind == "s-regular"
    for S in (boolean(), zmod(4), zero_mul(3), BG2):
        full = classify_regularity(S, F(S.n))
        assert full.regular and not full.m_regular


def test_regularity_certificates(corpus_semirings):
    for S in corpus_semirings[:40]:
        for mu in enumerate_right_congruences(S):
            c = classify_regularity(S, mu)
            if c.unit is not None:
                e = c.unit
                assert all(mu.same(S.mul[e][s], s) for s in S.elements)
            else:
                assert regularity_unit(S, mu) is None
            if c.kind == "regular" and c.blocking_ideal is not None and len(c.blocking_ideal) < S.n:
                I = c.blocking_ideal
                assert is_right_ideal(S, I) and is_mu_saturated(S, I, mu)
                assert c.zero_class < I
            if c.kind == "m-regular":
                phi = c.blocking_congruence
                assert mu < phi and not phi.is_full() and regularity_unit(S, phi) is not None


def test_rc_examples():
    assert rc_m(boolean()) == [D(2)]
    assert rc_m(zero_mul(2)) == []
    assert rc_s(zmod(4)) == [Z4_HALF]
    assert rc_m(zmod(4)) == rc_s(zmod(4))


def test_rc_s_inside_rc_m(corpus_semirings):
    for S in corpus_semirings:
        assert set(rc_s(S)) <= set(rc_m(S))


def test_s_regular_is_maximal_among_all_right_congruences(corpus_semirings):
    # checked as a property, not assumed by the classifier
    for S in corpus_semirings:
        lattice = enumerate_right_congruences(S)
        for mu in rc_s(S):
            assert not any(mu < p and not p.is_full() for p in lattice), (S.name, mu)


# -- residual and meet ---------------------------------------------------------------


def test_residual_examples(corpus_semirings):
    for S in corpus_semirings[:20]:
        assert residual(S, F(S.n)) == F(S.n)
        assert residual(S, D(S.n)) == D(S.n) or S.n == 1 or regularity_unit(S, D(S.n)) is None
    assert residual(zmod(4), Z4_HALF) == Z4_HALF


def test_residual_is_largest_congruence_below_regular(corpus_semirings):
    for S in corpus_semirings:
        for rho in enumerate_right_congruences(S):
            if regularity_unit(S, rho) is None:
                continue
            r = residual(S, rho)
            assert is_congruence(S, r)
            assert r <= rho
            assert r == largest_congruence_below(S, rho), (S.name, rho)


def test_meet_examples():
    S = zmod(4)
    assert meet(S) == F(4)
    assert meet(S, [D(4), Z4_HALF]) == D(4)
    assert meet(S, rc_s(S)) == Z4_HALF
    with pytest.raises(ValueError):
        meet(S, [D(3)])


def test_regularity_json():
    out = classify_regularity(zmod(4), Z4_HALF).to_json()
    assert out["classes"] == [[0, 2], [1, 3]] and out["class"] == "s-regular"
