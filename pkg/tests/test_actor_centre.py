from fractions import Fraction as F

import pytest

from cattorus.actor_centre import (ad1, adjoint_square, centre_coordinates, centre_lemma_check,
                                   centre_to_centralizer, constant_one, cross_vcompose,
                                   is_centre_member, is_crossed_hom, make_centralizer,
                                   maps_equal, theta_centre, weak_actor_delta)
from cattorus.cattorus import make_theta
from cattorus.exact import CircleElt
from cattorus.lattice import builtin
from cattorus.xmod import XModHom, check_axioms, check_hom, weak_check
from test_xmod import conjugation_module


def test_cross_vcompose_unit():
    x = conjugation_module()
    chi = ad1(x, (1, 2, 0))
    one = constant_one(x)
    for g in x.G0.elements:
        assert cross_vcompose(x, chi, one)(g) == chi(g)
        assert cross_vcompose(x, one, chi)(g) == chi(g)


def test_ad1_is_crossed_hom():
    x = conjugation_module()
    for a in x.G1.elements:
        assert is_crossed_hom(x, ad1(x, a))


def test_adjoint_square_is_hom():
    assert check_hom(adjoint_square(conjugation_module()), 60).passed


def test_centre_lemma_a1():
    Z = theta_centre(make_theta(builtin("A1")), builtin("A1"))
    got = centre_coordinates(builtin("A1"), Z.psi(((1,), CircleElt(F(1, 4)))))
    assert got == ((F(1),), (-2,))


def test_centre_lemma_a2():
    lat = builtin("A2")
    Z = theta_centre(make_theta(lat), lat)
    assert centre_coordinates(lat, Z.psi(((1, 0), CircleElt(0)))) == ((F(1), F(0)), (-2, 1))
    assert centre_coordinates(lat, Z.psi(((0, 0), CircleElt(F(1, 2))))) == ((F(0), F(0)), (0, 0))


@pytest.mark.parametrize("name", ["A1", "A2", "A1xA1", "U", "D4"])
def test_centre_lemma_check(name):
    assert centre_lemma_check(builtin(name), 30, seed=5).passed


def test_centre_elements_are_members():
    lat = builtin("A2")
    theta = make_theta(lat)
    Z = theta_centre(theta, lat)
    z = Z.info["element"]((F(1, 3), F(2, 5)), (1, -1))
    assert is_centre_member(theta, z)
    assert check_axioms(Z, 100).passed


def test_centre_maps_to_centralizer_of_identity():
    lat = builtin("A1")
    theta = make_theta(lat)
    ident = XModHom(theta, theta, lambda g: g, lambda a: a, name="id")
    Z = theta_centre(theta, lat, closed=False)
    C = make_centralizer(ident, sample_c0=None)
    f = centre_to_centralizer(ident, Z, C)
    c = f.f0(Z.info["element"]((F(1, 3),), (2,)))
    assert c.h == (F(1, 3),)
    z = Z.info["element"]((F(1, 3),), (2,))
    assert maps_equal(theta.G0, theta.G1, c.chi, z.xi)


def test_weak_actor_delta_of_trivial_eta_is_identity():
    x = conjugation_module()
    w = weak_actor_delta(x, constant_one(x))
    assert all(w.p0(g) == g for g in x.G0.elements)
    assert all(w.kappa(g, h) == x.G1.one for g in x.G0.elements for h in x.G0.elements)


def test_weak_actor_delta_of_ad_is_weak_morphism():
    x = conjugation_module()
    w = weak_actor_delta(x, ad1(x, (1, 0, 2)))
    assert weak_check(w, 60).passed
