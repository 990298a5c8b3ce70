from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from cattorus.exact import (CircleElt, Scalar, circle_add, det, identity, int_inverse, inverse,
                            mat_is_unimodular, matmul, reduce_mod1)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=60)


def test_circle_examples():
    assert circle_add(CircleElt(F(1, 3)), CircleElt(F(1, 7))) == CircleElt(F(10, 21))
    assert circle_add(CircleElt(F(1, 2)), CircleElt(F(1, 2))).is_zero()
    x = CircleElt(F(5, 9))
    assert circle_add(CircleElt(0), x) == x


def test_circle_representative_range():
    assert CircleElt(F(-1, 3)).rep == F(2, 3)
    assert CircleElt(7).rep == 0


@given(rationals, rationals, rationals)
def test_circle_group_laws(a, b, c):
    A, B, C = CircleElt(a), CircleElt(b), CircleElt(c)
    assert (A + B) + C == A + (B + C)
    assert A + B == B + A
    assert A + CircleElt((1 - A.rep) % 1) == CircleElt(0)
    assert A - A == CircleElt(0)


@given(st.fractions(min_value=F(1, 30), max_value=50, max_denominator=30), rationals,
       st.fractions(min_value=F(1, 30), max_value=50, max_denominator=30), rationals)
def test_scalar_group(m1, p1, m2, p2):
    a, b = Scalar(m1, p1), Scalar(m2, p2)
    assert a * b == b * a
    assert (a * b).phase == circle_add(a.phase, b.phase)
    assert (a * a.inv()).is_one()


def test_scalar_rejects_zero():
    with pytest.raises(ValueError):
        Scalar(0)


def test_unimodular():
    assert not mat_is_unimodular(((2,),))
    assert mat_is_unimodular(((0, 1), (1, 0)))
    assert mat_is_unimodular(identity(3))


def test_inverses_exact():
    m = ((2, 1), (1, 1))
    assert matmul(m, int_inverse(m)) == identity(2)
    q = ((3, 1), (1, 2))
    assert det(q) == 5
    assert matmul(q, inverse(q)) == ((1, 0), (0, 1))


def test_reduce_mod1():
    assert reduce_mod1((F(3, 2), F(-1, 4))) == (F(1, 2), F(3, 4))
