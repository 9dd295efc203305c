from fractions import Fraction

import pytest

from cremona import upoly as U
from cremona.errors import ZeroDivisorSplit


def F(*xs):
    return [Fraction(x) for x in xs]


def test_divmod_and_gcd():
    a = U.mul(F(-1, 1), F(2, 0, 1))  # (t - 1)(t^2 + 2)
    b = U.mul(F(-1, 1), F(3, 1))
    assert U.gcd(a, b) == F(-1, 1)
    q, r = U.divmod_(a, F(-1, 1))
    assert r == [] and q == F(2, 0, 1)


def test_squarefree():
    a = U.mul(U.mul(F(-1, 1), F(-1, 1)), F(2, 1))
    assert U.squarefree(a) == U.monic(U.mul(F(-1, 1), F(2, 1)))


def test_rational_roots():
    a = U.mul(U.mul(F(3, -2), F(0, 1)), F(-5, 0, 1))  # (3 - 2t) t (t^2 - 5)
    assert U.rational_roots(a) == [Fraction(0), Fraction(3, 2)]
    roots, rest = U.split_rational_roots(a)
    assert rest == F(-5, 0, 1)


def test_rational_roots_large():
    a = [Fraction(1)]
    for r in (Fraction(-7, 3), Fraction(11, 5), Fraction(101, 2), Fraction(-1, 97)):
        a = U.mul(a, [-r, Fraction(1)])
    assert U.rational_roots(a) == sorted([Fraction(-7, 3), Fraction(11, 5), Fraction(101, 2), Fraction(-1, 97)])


def test_interpolate():
    f = F(3, -1, 0, 2)
    xs = list(range(4))
    assert U.interpolate(xs, [U.evaluate(f, x) for x in xs]) == f


def test_resultant_formal_degree():
    # (u - 2)(u + 1) and (u - 2): common root
    assert U.sylvester_resultant(F(-2, -1, 1), F(-2, 1), 2, 1) == 0
    assert U.sylvester_resultant(F(1, 1), F(-1, 1), 1, 1) != 0
    # padded leading zeros: both forms vanish at infinity
    assert U.sylvester_resultant(F(1), F(2), 1, 1) == 0
    assert U.sylvester_resultant(F(1), F(1, 1), 1, 1) != 0


def test_quotient_ring_field():
    R = U.QuotientRing(F(-2, 0, 1))
    r = R(F(0, 1))
    assert r * r == R(F(2))
    assert (R(F(1, 1)) / R(F(1, 1))) == R.one


def test_quotient_ring_split():
    R = U.QuotientRing(U.mul(F(-2, 0, 1), F(-3, 0, 1)))
    with pytest.raises(ZeroDivisorSplit) as err:
        R(F(-2, 0, 1)).inverse()
    assert U.mul(err.value.factor, err.value.cofactor) == U.monic(R.modulus)
