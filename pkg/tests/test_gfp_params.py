import itertools
import warnings

import pytest

from pkpcount.errors import ParameterError
from pkpcount.exactnum import divisors, euler_phi
from pkpcount.gfp import GF, inv, multiplicative_order
from pkpcount.params import ParameterSet, PrimePowerWarning, Variant

PRIMES = (2, 3, 5, 7)


def test_inverse_examples():
    assert inv(3, 7) == 5
    assert inv(1, 2) == 1
    for x in range(1, 5):
        assert inv(inv(x, 5), 5) == x
    with pytest.raises(ZeroDivisionError):
        inv(0, 7)


def test_order_examples():
    assert multiplicative_order(1, 11) == 1
    assert multiplicative_order(3, 7) == 6
    assert multiplicative_order(4, 5) == 2
    # oracle: iterate powers
    for q in (7, 11, 13):
        for x in range(1, q):
            d, y = 1, x
            while y != 1:
                y, d = y * x % q, d + 1
            assert multiplicative_order(x, q) == d
    with pytest.raises(ZeroDivisionError):
        multiplicative_order(0, 5)


@pytest.mark.parametrize("q", PRIMES + (11, 13, 101))
def test_elements_of_each_order(q):
    orders = [multiplicative_order(x, q) for x in range(1, q)]
    for d in divisors(q - 1):
        assert orders.count(d) == euler_phi(d)
    assert all((q - 1) % d == 0 for d in orders)


@pytest.mark.parametrize("q", PRIMES)
def test_field_axioms_exhaustive(q):
    F = GF(q)
    E = list(F.elements())
    for a, b, c in itertools.product(E, repeat=3):
        assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    for a in E:
        assert F.add(a, F.neg(a)) == 0
        assert F.sub(a, a) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
            assert F.div(a, a) == 1
    assert list(F.units()) == E[1:]


def test_gf_rejects_composite():
    with pytest.raises(ParameterError):
        GF(4)


def test_variant_parse():
    assert Variant.parse("PKP*") is Variant.PKP_STAR
    assert Variant.parse("ipkp★") is Variant.IPKP_STAR
    assert Variant.parse("pkp-star") is Variant.PKP_STAR
    with pytest.raises(ParameterError):
        Variant.parse("kpk")


@pytest.mark.parametrize(
    "params,constraint",
    [
        (ParameterSet(5, 4, 3, 1, "ipkp"), "max"),
        (ParameterSet(5, 2, 3, 2, "pkp"), "ell + n"),
        (ParameterSet(3, 1, 3, 1, "ipkp_star"), "< q^n"),
        (ParameterSet(1, 1, 1, 1, "ipkp"), "q"),
    ],
)
def test_validate_names_the_constraint(params, constraint):
    with pytest.raises(ParameterError) as info:
        params.validate()
    assert constraint in str(info.value) + str(info.value.constraint)


def test_validate_prime_rules():
    ParameterSet(1021, 35, 79, 3).validate()
    with pytest.warns(PrimePowerWarning):
        ParameterSet(6, 1, 3).validate()
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        ParameterSet(4, 1, 3).validate()
    with pytest.raises(ParameterError):
        ParameterSet(4, 1, 3).validate(require_prime=True)
