from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from cattorus.cattorus import (extraspecial_group, extraspecial_relations, involution,
                               make_extraspecial, make_theta, make_theta_prime, theta_arrow,
                               two_torsion)
from cattorus.exact import CircleElt
from cattorus.lattice import LatticeData, LatticeError, builtin
from cattorus.xmod import SArrow, check_axioms, check_monoidal, pi0, s_compose, s_tensor
from conftest import SMALL

rat = st.fractions(min_value=-5, max_value=5, max_denominator=12)


@pytest.mark.parametrize("name", SMALL)
def test_theta_modules(name):
    lat = builtin(name)
    assert check_axioms(make_theta(lat), 300).passed
    assert check_axioms(make_theta_prime(lat), 300).passed
    assert check_axioms(make_extraspecial(lat), 300).passed
    assert check_monoidal(make_theta(lat), 300).passed


def test_odd_lattice_rejected():
    with pytest.raises(LatticeError):
        LatticeData.from_I("odd", [[1]])


def test_theta_action_examples():
    th = make_theta(builtin("A1"))
    assert th.act(((1,), CircleElt(0)), (F(1, 2),)) == ((1,), CircleElt(F(1, 2)))
    assert th.act(((3,), CircleElt(F(1, 5))), (0,)) == ((3,), CircleElt(F(1, 5)))


def test_involution_example():
    tp = make_theta_prime(builtin("A1"))
    img = involution(tp, theta_arrow((F(1, 4),), (1,), F(2, 7)))
    assert img.src == (F(-1, 4),)
    assert tp.target(SArrow((img.src, 1), img.lab))[0] == (F(-5, 4),)
    assert img.lab[1] == CircleElt(F(2, 7))


@given(rat, rat, st.integers(-3, 3), st.integers(-3, 3), rat, rat)
def test_involution_is_strict_monoidal_of_order_two(x, y, m, n, a, b):
    lat = builtin("A1")
    th, tp = make_theta(lat), make_theta_prime(lat)
    f = theta_arrow((x,), (m,), a)
    g = theta_arrow((y,), (n,), b)
    assert involution(tp, involution(tp, f)) == f
    assert involution(tp, s_tensor(th, f, g)) == s_tensor(th, involution(tp, f), involution(tp, g))
    h = theta_arrow((x + m,), (n,), b)
    assert involution(tp, s_compose(th, f, h)) == s_compose(th, involution(tp, f), involution(tp, h))


def test_two_torsion():
    assert two_torsion(builtin("A1")) == [(0,), (F(1, 2),)]
    assert len(two_torsion(builtin("A2"))) == 4
    assert two_torsion(LatticeData("zero", [])) == [()]


def test_extraspecial_a1():
    G = extraspecial_group(builtin("A1"))
    e = ((1,), 0)
    assert G.mul(e, e) == ((0,), 1)
    assert G.order_of(e) == 4
    assert len(G.elements) == 4 and G.is_abelian()
    assert pi0(make_extraspecial(builtin("A1")))["order"] == 4


def test_extraspecial_a2_commutator():
    G = extraspecial_group(builtin("A2"))
    assert G.commutator(((1, 0), 0), ((0, 1), 0)) == ((0, 0), 1)


def test_extraspecial_u():
    G = extraspecial_group(builtin("U"))
    assert len(G.elements) == 8
    assert len(G.centre()) == 2
    assert G.commutator_subgroup() == sorted(G.centre())


@pytest.mark.parametrize("name", ["A2", "U", "D4", "A1xA1"])
def test_extraspecial_orders(name):
    lat = builtin(name)
    G = extraspecial_group(lat)
    assert len(G.elements) == 2 ** (lat.rank + 1)
    centre = set(G.centre())
    for g in G.elements:
        assert G.order_of(g) <= 4
        assert G.mul(g, g) in centre


def test_relations_text():
    text = extraspecial_relations(builtin("A2"))
    assert "e1*e2*e1^-1*e2^-1 = z" in text and "order: 8" in text


def test_extraspecial_action_sign():
    esx = make_extraspecial(builtin("A2"))
    from cattorus.exact import Scalar
    z = Scalar(3, F(1, 5))
    acted = esx.act(((0, 1), z), ((1, 0), 0))
    assert acted[1] == z.times_phase(F(1, 2))   # J((1,0),(0,1)) = -1 is odd
