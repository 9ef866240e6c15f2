import random
from fractions import Fraction

import pytest

from sl2ext.coeff import (
    CyclotomicField,
    PrimeField,
    RationalField,
    choose_prime_for_order,
    field_from_spec,
)


def _random_scalar(field, rng):
    if isinstance(field, RationalField):
        return field.scalar(Fraction(rng.randrange(-20, 21), rng.randrange(1, 9)))
    if isinstance(field, CyclotomicField):
        s = field.zero
        for k in range(field.degree):
            s = s + field.scalar(rng.randrange(-3, 4)) * field.root_of_unity(field.n, k)
        return s
    return field.scalar(rng.randrange(0, field.ell))


@pytest.mark.parametrize("field", [RationalField(), CyclotomicField(12), PrimeField(7), PrimeField(5, 2)])
def test_field_axioms_random_triples(field):
    rng = random.Random(99)
    for _ in range(40):
        a, b, c = (_random_scalar(field, rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + field.zero == a and a * field.one == a
        if a:
            assert a * (field.one / a) == field.one


def test_rational_half_plus_half():
    F = RationalField()
    assert F.scalar(Fraction(1, 2)) + F.scalar(Fraction(1, 2)) == F.one


def test_cyclotomic3_cube_and_sum():
    F = CyclotomicField(3)
    z = F.root_of_unity(3, 1)
    assert z * z * z == F.one
    # x + x^2 reduced modulo 1 + x + x^2 is -1
    assert z + z * z == F.scalar(-1)


def test_order_five_power_is_one():
    F = CyclotomicField(5)
    assert F.root_of_unity(5, 5) == F.one


def test_rational_order_two_root():
    assert RationalField().root_of_unity(2, 1) == RationalField().scalar(-1)


def test_prime_field_fourth_root_squared():
    # the smallest generator of F_5^x is 2, so zeta_4 = 2 and zeta_4^2 = 4
    F = PrimeField(5)
    assert F.root_of_unity(4, 2) == F.scalar(4)
    assert F.root_of_unity(4, 2) == F.scalar(-1)


@pytest.mark.parametrize("field,n", [(CyclotomicField(12), 12), (PrimeField(13), 12), (RationalField(), 2)])
def test_root_multiplicativity_sweep(field, n):
    for e1 in range(-n, n + 1, 3):
        for e2 in range(-n, n + 1, 5):
            lhs = field.root_of_unity(n, e1) * field.root_of_unity(n, e2)
            assert lhs == field.root_of_unity(n, e1 + e2)


def test_cyclotomic_root_is_one_iff_order_divides():
    F = CyclotomicField(9)
    for e in range(1, 19):
        assert (F.root_of_unity(9, e) == F.one) == (e % 9 == 0)


def test_unsupported_orders_raise():
    with pytest.raises(ValueError):
        RationalField().root_of_unity(3, 1)
    with pytest.raises(ValueError):
        CyclotomicField(8).root_of_unity(3, 1)
    with pytest.raises(ValueError):
        PrimeField(5).root_of_unity(3, 1)  # 3 does not divide 4


def test_supports_order():
    assert RationalField().supports_order(2)
    assert not RationalField().supports_order(4)
    assert CyclotomicField(63).supports_order(21)
    assert not CyclotomicField(63).supports_order(2)
    assert PrimeField(7).supports_order(6)


def test_mode_mismatch_and_zero_division():
    a = RationalField().one
    b = CyclotomicField(4).one
    with pytest.raises(ValueError):
        _ = a + b
    with pytest.raises(ZeroDivisionError):
        _ = a / RationalField().zero


def test_cyclotomic_inverse_random():
    F = CyclotomicField(7)
    rng = random.Random(5)
    for _ in range(15):
        a = _random_scalar(F, rng)
        if a:
            assert a * (F.one / a) == F.one


def test_extension_prime_field_roots():
    # order 4 needs F_25: 4 | 24
    F = PrimeField(5, 2)
    z = F.root_of_unity(24, 1)
    acc = F.one
    seen = set()
    for _ in range(24):
        acc = acc * z
        seen.add(acc.serialize())
    assert len(seen) == 24 and acc == F.one


def test_choose_prime_for_order():
    assert choose_prime_for_order(63, 5) == 127
    assert choose_prime_for_order(2, 5) == 5
    assert choose_prime_for_order(1, 5) == 5


def test_field_from_spec():
    assert field_from_spec("rat") == RationalField()
    assert field_from_spec("cyclo", 63) == CyclotomicField(63)
    assert field_from_spec("cyclo:8") == CyclotomicField(8)
    assert field_from_spec("fp:11") == PrimeField(11)
    assert field_from_spec("fp", 63) == PrimeField(127)
    with pytest.raises(ValueError):
        field_from_spec("float")


def test_serialization_shapes():
    assert RationalField().scalar(Fraction(3, 4)).serialize() == "3/4"
    s = CyclotomicField(3).root_of_unity(3, 1).serialize()
    assert s == "[0/1,1/1]"
    assert PrimeField(7).scalar(10).serialize() == "3"
