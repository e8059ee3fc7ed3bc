"""Tests for the curve-count tables and the trace-moment bridge."""

import math
from fractions import Fraction

import pytest

from hurwitzbias.frobenius import (
    ExpansionTerms,
    S_direct,
    S_via_moments,
    error_E,
    expansion_p,
    expansion_p2,
    rho,
    tilde_moment,
    trace_mass_table,
)
from hurwitzbias.hurwitz import hurwitz_H, moment_H

FIELD_SIZES = (5, 7, 11, 13, 25, 49, 121)


def test_total_mass_is_field_size():
    # one twist orbit per j-invariant, so the weighted count is exactly q
    for q in FIELD_SIZES:
        assert trace_mass_table(q).total_mass() == q


def test_traces_satisfy_hasse_bound():
    for q in FIELD_SIZES:
        bound = math.isqrt(4 * q)
        assert all(abs(t) <= bound for t in trace_mass_table(q).traces())


def test_trace_symmetry():
    # quadratic twisting negates the trace and preserves the weights
    for q in FIELD_SIZES:
        table = trace_mass_table(q)
        for t in table.traces():
            assert table.mass(-t) == table.mass(t)


def test_f5_table_by_hand():
    table = trace_mass_table(5)
    assert table.p == 5 and table.r == 1
    assert table.mass(1) == Fraction(1, 2)
    assert table.mass(7) == 0
    # 25 coefficient pairs, 5 of them singular
    raw = sum(table.mass(t) for t in table.traces()) * (5 - 1)
    assert raw == 20


def test_mass_matches_class_number_count():
    # away from the characteristic the weighted count of trace t is H(4p - t*t)/2
    for p in (5, 7, 11, 13):
        table = trace_mass_table(p)
        for t in range(-2 * math.isqrt(p), 2 * math.isqrt(p) + 1):
            if t % p == 0:
                continue
            assert table.mass(t) == hurwitz_H(4 * p - t * t) / 2


def test_direct_moment_examples():
    assert S_direct(0, 0, 1, 5) == 5
    assert S_direct(2, 1, 2, 5) == 10
    # tallying never needs the modulus to be coprime to the characteristic
    assert S_direct(0, 1, 5, 25) == S_direct(0, 1, 5, 25)


def test_moment_route_examples():
    assert S_via_moments(0, 0, 1, 5, 1) == 5
    assert S_via_moments(0, 1, 3, 5, 2) == S_direct(0, 1, 3, 25)
    assert S_direct(0, 1, 3, 25) == Fraction(37, 4)


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19])
def test_bridge_prime_fields(p):
    for M in range(1, 9):
        if M % p == 0:
            continue
        for k in (0, 1, 2):
            for m in range(M):
                assert S_direct(k, m, M, p) == S_via_moments(k, m, M, p, 1)


@pytest.mark.parametrize("p", [5, 7])
def test_bridge_quadratic_fields(p):
    for M in range(1, 9):
        if M % p == 0:
            continue
        for k in (0, 1, 2):
            for m in range(M):
                assert S_direct(k, m, M, p * p) == S_via_moments(k, m, M, p, 2)


def test_tilde_moment_drops_characteristic_traces():
    assert tilde_moment(0, 0, 1, 5, 1) == 8
    # full moment = restricted moment + the t = 0 column (5 | t forces t = 0 here)
    assert moment_H(0, 0, 1, 5) == tilde_moment(0, 0, 1, 5, 1) + hurwitz_H(20)


def test_rho_counts_signed_square_roots():
    assert rho(0, 2, 5, 4) == 1
    assert rho(1, 3, 5, 4) == -1
    assert rho(0, 0, 1, 0) == 1
    assert rho(1, 0, 1, 0) == 0
    assert rho(0, 1, 2, 9) == 2
    assert rho(0, 0, 1, 5) == 0


@pytest.mark.parametrize("p,r", [(5, 1), (7, 1), (11, 1), (13, 1), (5, 2), (7, 2)])
def test_restricted_moment_plus_error(p, r):
    # the correction term absorbs exactly the traces divisible by p
    for M in (1, 2, 3, 4, 6, 8):
        if M % p == 0:
            continue
        for k in (0, 1, 2):
            for m in range(M):
                lhs = 2 * S_direct(k, m, M, p**r)
                rhs = tilde_moment(k, m, M, p, r) + error_E(k, m, M, p, r)
                assert lhs == rhs, (k, m, M, p, r)


def test_expansion_recombines_prime_case():
    # residue classes are written 1..M on the expansion side
    for p in (5, 7, 11, 13):
        for M in (1, 2, 3, 4, 5, 6, 8):
            if M % p == 0:
                continue
            for m in range(1, M + 1):
                terms = expansion_p(m, M, p)
                target = 2 * float(S_via_moments(2, m, M, p, 1))
                assert terms.total() == pytest.approx(target, abs=1e-6)


def test_expansion_recombines_prime_square_case():
    for p in (5, 7, 11):
        for M in (1, 2, 3, 4, 6):
            if M % p == 0:
                continue
            for m in range(1, M + 1):
                terms = expansion_p2(m, M, p)
                target = 2 * float(S_via_moments(2, m, M, p, 2))
                assert terms.total() == pytest.approx(target, rel=1e-9, abs=1e-5)


def test_expansion_trivial_modulus_slots():
    # with no congruence condition both indicator slots always fire
    terms = expansion_p(1, 1, 7)
    assert terms.delta_star == 2
    assert terms.remainder == -2


def test_argument_validation():
    with pytest.raises(ValueError):
        trace_mass_table(4)
    with pytest.raises(ValueError):
        trace_mass_table(9)
    with pytest.raises(ValueError):
        trace_mass_table(125)
    with pytest.raises(ValueError):
        trace_mass_table(30_011 * 30_011)
    with pytest.raises(ValueError):
        S_via_moments(0, 1, 5, 5, 1)
    with pytest.raises(ValueError):
        S_via_moments(0, 1, 3, 4, 1)
    with pytest.raises(ValueError):
        S_direct(0, 1, 0, 5)
