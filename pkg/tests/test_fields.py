import random
from fractions import Fraction

import pytest

from oredim.errors import MismatchError
from oredim.fields import PrimeField, Rationals, is_prime

F2 = PrimeField(2)
F7 = PrimeField(7)
Q = Rationals()


def test_char_2_addition():
    assert (F2.scalar(1) + F2.scalar(1)).value == 0


def test_f7_product_example():
    assert (F7.scalar(3) * F7.scalar(5)).value == 1


def test_f7_products_exhaustive():
    for a in range(7):
        for b in range(7):
            assert (F7.scalar(a) * F7.scalar(b)).value == (a * b) % 7


def test_rational_addition():
    assert (Q.scalar(Fraction(1, 2)) + Q.scalar(Fraction(1, 3))).value == Fraction(5, 6)


def test_f7_inverse_against_exhaustive_search():
    for a in range(1, 7):
        inv = F7.scalar(a).inverse().value
        assert (a * inv) % 7 == 1
    assert F7.scalar(3).inverse().value == 5


def test_f2_inverse_identity():
    assert F2.scalar(1).inverse().value == 1


def test_rational_inverse():
    assert Q.scalar(Fraction(2, 3)).inverse().value == Fraction(3, 2)


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError, match="division by zero"):
        F7.scalar(0).inverse()
    with pytest.raises(ZeroDivisionError, match="division by zero"):
        Q.scalar(0).inverse()


def test_field_mismatch_raises():
    with pytest.raises(MismatchError, match="field mismatch"):
        F2.scalar(1) + F7.scalar(1)
    with pytest.raises(MismatchError, match="field mismatch"):
        Q.scalar(1) * F7.scalar(1)


def test_double_inverse_is_identity():
    rng = random.Random(7)
    for _ in range(200):
        a = F7.scalar(rng.randrange(1, 7))
        assert a.inverse().inverse() == a
        q = Q.scalar(Fraction(rng.randint(1, 50), rng.randint(1, 50)))
        assert q.inverse().inverse() == q


@pytest.mark.parametrize("field", [F2, PrimeField(5), F7, Q])
def test_field_axioms_randomized(field):
    rng = random.Random(42)

    def sample():
        if isinstance(field, PrimeField):
            return field.scalar(rng.randrange(field.p))
        return field.scalar(Fraction(rng.randint(-20, 20), rng.randint(1, 9)))

    for _ in range(1000):
        a, b, c = sample(), sample(), sample()
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a
        assert a * b == b * a
        assert a + (-a) == field.scalar(0)


def test_large_prime_no_overflow():
    # p just below 2^31; the point is that products of residues stay exact
    p = 2147483647
    field = PrimeField(p)
    rng = random.Random(3)
    for _ in range(100):
        a, b = rng.randrange(p), rng.randrange(p)
        assert field.mul(a, b) == (a * b) % p
        assert field.add(a, b) == (a + b) % p


def test_characteristics():
    assert F7.characteristic() == 7
    assert Q.characteristic() == 0


def test_prime_validation():
    for bad in (0, 1, 4, 9, 2**31, 2**31 + 11, -7):
        with pytest.raises(ValueError):
            PrimeField(bad)
    # boundary prime is accepted
    PrimeField(2147483647)


def test_is_prime_spot_checks():
    assert is_prime(2) and is_prime(3) and is_prime(97) and is_prime(2147483647)
    for n in (0, 1, 4, 91, 561, 1105, 2147483647 - 1):
        assert not is_prime(n)


def test_rational_normalization():
    s = Q.scalar(Fraction(2, -4))
    assert s.value == Fraction(-1, 2)
    assert s.value.denominator == 2 and s.value.denominator > 0


def test_prime_field_normalizes_fractions():
    # 1/2 == 4 in F_7
    assert F7.normalize(Fraction(1, 2)) == 4
    with pytest.raises(ZeroDivisionError):
        F2.normalize(Fraction(1, 2))


def test_value_json_round_trip():
    assert F7.parse_value(F7.value_to_json(5)) == 5
    assert Q.parse_value(Q.value_to_json(Fraction(-3, 4))) == Fraction(-3, 4)
    assert Q.parse_value(7) == Fraction(7)
    with pytest.raises(ValueError):
        F7.parse_value("3")
    with pytest.raises(ValueError):
        Q.parse_value("not-a-number")
    with pytest.raises(ValueError):
        Q.parse_value(True)


def test_scalar_is_zero():
    assert F2.scalar(2).is_zero()
    assert not Q.scalar(Fraction(1, 3)).is_zero()
