import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hurwitzbias.arith import euler_phi, kronecker
from hurwitzbias.characters import (
    RootOfUnity,
    char_eval,
    char_order,
    char_product,
    conductor,
    enumerate_chars,
    from_values,
    gauss_quad_closed,
    gauss_quad_direct,
    gauss_sum,
    induce_primitive,
    induce_to,
    is_primitive,
    is_real,
    kronecker_character,
    primitive_chars,
    principal_character,
    quad_decomp,
    star_char,
)


def brute_conductor(chi):
    m = chi.modulus
    for n in range(1, m + 1):
        if m % n:
            continue
        if all(
            char_eval(chi, x).is_one
            for x in range(1, m + 1)
            if math.gcd(x, m) == 1 and x % n == 1 % n
        ):
            return n
    raise AssertionError


def test_root_of_unity_exact_values():
    assert RootOfUnity.one().value == 1
    assert RootOfUnity.from_expo(Fraction(1, 2)).value == -1
    assert RootOfUnity.from_expo(Fraction(1, 4)).value == 1j
    assert RootOfUnity.from_expo(Fraction(3, 4)).value == -1j
    assert RootOfUnity.zero_value().value == 0
    r = RootOfUnity.from_expo(Fraction(1, 3))
    assert abs(r.value - cmath.exp(2j * cmath.pi / 3)) < 1e-15
    assert (r * r * r).is_one
    assert abs(r.conj().value - r.value.conjugate()) < 1e-15


def test_character_counts():
    for m in range(1, 40):
        assert len(enumerate_chars(m)) == euler_phi(m)


def test_primitive_counts():
    expected = {1: 1, 2: 0, 3: 1, 4: 1, 5: 3, 6: 0, 7: 5, 8: 2, 9: 4, 12: 1, 16: 4, 24: 2}
    for m, k in expected.items():
        assert len(primitive_chars(m)) == k


def test_conductor_matches_bruteforce():
    for m in (1, 2, 3, 4, 5, 8, 9, 12, 16, 24, 36, 40, 45):
        for chi in enumerate_chars(m):
            assert conductor(chi) == brute_conductor(chi)


@settings(max_examples=150)
@given(st.integers(1, 48), st.integers(-100, 100), st.integers(-100, 100))
def test_characters_are_multiplicative(m, x, y):
    for chi in enumerate_chars(m):
        lhs = char_eval(chi, x * y)
        rhs = char_eval(chi, x) * char_eval(chi, y)
        assert lhs == rhs


def test_orthogonality():
    for m in (3, 4, 5, 8, 12, 15):
        for chi in enumerate_chars(m):
            total = sum(char_eval(chi, x).value for x in range(m))
            if char_order(chi) == 1:
                assert abs(total - euler_phi(m)) < 1e-12
            else:
                assert abs(total) < 1e-12
        for x in range(2, m):
            if math.gcd(x, m) != 1:
                continue
            total = sum(char_eval(chi, x).value for chi in enumerate_chars(m))
            expect = euler_phi(m) if x % m == 1 else 0
            assert abs(total - expect) < 1e-12


def test_from_values_roundtrip():
    for m in (1, 2, 4, 8, 9, 12, 15, 16, 24, 36):
        for chi in enumerate_chars(m):
            rebuilt = from_values(m, lambda x, c=chi: char_eval(c, x))
            assert rebuilt == chi


def test_induction_roundtrip():
    for m in (8, 12, 15, 16, 24, 36):
        for chi in enumerate_chars(m):
            prim = induce_primitive(chi)
            assert is_primitive(prim)
            assert prim.modulus == conductor(chi)
            assert induce_to(prim, m) == chi
            for x in range(m):
                if math.gcd(x, m) == 1:
                    assert char_eval(prim, x) == char_eval(chi, x)


def test_char_product_pointwise():
    for m1, m2 in ((3, 4), (5, 5), (8, 12), (7, 9)):
        for c1 in enumerate_chars(m1):
            for c2 in enumerate_chars(m2):
                prod = char_product(c1, c2)
                lcm = math.lcm(m1, m2)
                assert prod.modulus == lcm
                for x in range(lcm):
                    if math.gcd(x, lcm) == 1:
                        assert char_eval(prod, x) == char_eval(c1, x) * char_eval(c2, x)


def test_kronecker_character_values():
    for bottom in range(1, 41):
        chi = kronecker_character(bottom)
        assert is_primitive(chi)
        assert is_real(chi)
        step = 2 * bottom
        for x in range(1, 200):
            if math.gcd(x, step) == 1:
                assert char_eval(chi, x).value == kronecker(x, bottom)


def test_quad_decomp_structure():
    for n in range(1, 73):
        for eta in primitive_chars(n):
            hat, tilde = quad_decomp(eta)
            assert math.gcd(hat.modulus, tilde.modulus) == 1
            assert hat.modulus * tilde.modulus == n
            assert char_order(hat) in (1, 2)
            back = induce_primitive(char_product(hat, tilde))
            assert back == eta
            sq = induce_primitive(char_product(tilde, tilde))
            if n % 16:
                assert conductor(sq) == tilde.modulus
            else:
                assert conductor(sq) < tilde.modulus


def test_quad_decomp_examples():
    (eta4,) = [c for c in primitive_chars(5) if char_order(c) == 4 and char_eval(c, 2).value == 1j]
    hat, tilde = quad_decomp(eta4)
    assert hat.modulus == 1 and tilde == eta4
    (leg5,) = [c for c in primitive_chars(5) if char_order(c) == 2]
    hat, tilde = quad_decomp(leg5)
    assert hat == leg5 and tilde.modulus == 1


def test_star_char():
    triv = principal_character(1)
    assert star_char(triv) == triv
    (leg5,) = [c for c in primitive_chars(5) if char_order(c) == 2]
    assert star_char(leg5) == triv
    for eta in primitive_chars(5):
        if char_order(eta) == 4:
            assert star_char(eta) == char_product(eta, leg5)
    for eta in primitive_chars(7):
        if char_order(eta) == 3:
            assert char_order(star_char(eta)) == 6
            assert star_char(eta).modulus == 7
    # conductor is preserved in all small cases
    for n in range(1, 73):
        for eta in primitive_chars(n):
            _, tilde = quad_decomp(eta)
            assert star_char(eta).modulus == tilde.modulus


def test_gauss_sum_classics():
    assert gauss_sum(principal_character(1)) == 1
    (chi3,) = primitive_chars(3)
    assert abs(gauss_sum(chi3) - 1j * math.sqrt(3)) < 1e-12
    (chi4,) = primitive_chars(4)
    assert abs(gauss_sum(chi4) - 2j) < 1e-12
    (leg5,) = [c for c in primitive_chars(5) if char_order(c) == 2]
    assert abs(gauss_sum(leg5) - math.sqrt(5)) < 1e-12
    for n in (3, 5, 7, 11, 13):
        (leg,) = [c for c in primitive_chars(n) if char_order(c) == 2]
        expect = math.sqrt(n) * (1 if n % 4 == 1 else 1j)
        assert abs(gauss_sum(leg) - expect) < 1e-12


def test_gauss_sum_magnitude_and_conjugate():
    for n in (1, 3, 4, 5, 7, 8, 9, 12, 15, 16):
        for chi in primitive_chars(n):
            g = gauss_sum(chi)
            assert abs(abs(g) - math.sqrt(n)) < 1e-10
            conj_chi = from_values(n, lambda x, c=chi: char_eval(c, x).conj())
            sign = char_eval(chi, n - 1).value
            assert abs(gauss_sum(conj_chi) - sign * g.conjugate()) < 1e-10


def test_gauss_quad_examples():
    assert abs(gauss_quad_closed(1, 0, 4) - (2 + 2j)) < 1e-12
    assert abs(gauss_quad_closed(1, 0, 3) - 1j * math.sqrt(3)) < 1e-12
    assert gauss_quad_closed(2, 1, 4) == 0
    assert gauss_quad_closed(0, 0, 5) == 5
    assert gauss_quad_closed(0, 3, 5) == 0


def test_gauss_quad_closed_matches_direct_sample():
    for c in range(1, 25):
        for a in range(c):
            for b in range(c):
                lhs = gauss_quad_closed(a, b, c)
                rhs = gauss_quad_direct(a, b, c)
                assert abs(lhs - rhs) < 1e-9, (a, b, c)


def test_kronecker_character_rejects():
    with pytest.raises(ValueError):
        kronecker_character(0)
