from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from cattorus.exact import CircleElt
from cattorus.inertia import (CIRCLE_MODULE, CochainError, HElt, SmallArrow, Small2Arrow,
                              cochain, cochain_from_boundary, cochain_normalize, cocycle_from,
                              compose_1arrows, compose_2arrows, full_of_small, full_target,
                              h_inv, h_mul, inertia_arrow_class, inertia_suite, lattice_module,
                              linear, presentation_map, quadratic_cocycle, small_2arrow_target,
                              strict_object, trivialization_change, zero_cocycle)
from cattorus.lattice import builtin

A1 = builtin("A1")
N = 8


def test_zero_cochain_has_zero_boundary():
    z = linear(CIRCLE_MODULE, N, CircleElt(0))
    assert z.d() == zero_cocycle(CIRCLE_MODULE, N)


def test_cocycle_free_cochain_is_linear():
    mod = lattice_module(2)
    mu = cochain_from_boundary(lambda a, b: (0, 0), (3, -1), mod, N)
    assert all(mu(a) == (3 * a, -a) for a in range(-N, N + 1))


def test_normalised_cocycle_at_zero():
    g = quadratic_cocycle(F(1, 3), N)
    assert g(5, 0) == g(0, 0) == CircleElt(0)
    assert g(2, 3) == CircleElt(2)


def test_cocycle_from_rejects_non_cocycle():
    with pytest.raises(CochainError):
        cocycle_from(lambda a, b: CircleElt(F(a * a * b, 7)), CIRCLE_MODULE, 4)


def test_cochain_normalize_rejects_bad_windows():
    with pytest.raises(CochainError):
        cochain_normalize({0: 0, 2: 1}, CIRCLE_MODULE, 2)
    with pytest.raises(CochainError):
        cochain_normalize([0, 0, 0], CIRCLE_MODULE, 2)


def test_identity_full_arrow():
    a = SmallArrow((F(1, 3),), (F(0),), (0,), CircleElt(0))
    f = full_of_small(A1, a, N)
    assert full_target(A1, f) == strict_object(A1, (F(1, 3),), N)


def test_full_arrow_between_strict_objects():
    a = SmallArrow((F(1, 3),), (F(1, 2),), (2,), CircleElt(F(1, 4)))
    f = full_of_small(A1, a, N)
    assert f.w(1) == CircleElt(F(1, 4))
    assert full_target(A1, f) == strict_object(A1, (F(7, 3),), N)


def test_small_composition_example():
    a = SmallArrow((0,), (F(1, 3),), (1,), CircleElt(F(1, 4)))
    b = SmallArrow((1,), (F(1, 6),), (0,), CircleElt(F(1, 2)))
    assert compose_1arrows(a, b) == SmallArrow((0,), (F(1, 2),), (1,), CircleElt(F(3, 4)))


def test_small_composition_needs_matching_ends():
    a = SmallArrow((0,), (0,), (1,), CircleElt(0))
    with pytest.raises(CochainError):
        compose_1arrows(a, a)


def test_small_identity_is_neutral():
    a = SmallArrow((F(1, 5),), (F(1, 3),), (2,), CircleElt(F(1, 4)))
    one = SmallArrow(a.target, (0,), (0,), CircleElt(0))
    assert compose_1arrows(a, one) == a


def test_two_arrow_composition():
    a = SmallArrow((F(1, 4),), (F(1, 3),), (1,), CircleElt(0))
    s = Small2Arrow(a, (1,), CircleElt(F(1, 5)))
    t = Small2Arrow(small_2arrow_target(A1, s), (2,), CircleElt(F(1, 5)))
    st_ = compose_2arrows(A1, s, t)
    assert st_.n == (3,) and st_.u == CircleElt(F(2, 5))
    assert small_2arrow_target(A1, st_) == small_2arrow_target(A1, t)


def test_class_i_half():
    assert inertia_arrow_class(A1, "i", ((F(1, 2),), (F(1),), F(0))) == \
        ((F(1, 2),), (F(0),), CircleElt(0))


def test_class_i_quarter():
    assert inertia_arrow_class(A1, "i", ((F(1, 4),), (F(1),), F(0))) == \
        ((F(1, 4),), (F(0),), CircleElt(F(1, 2)))


def test_class_ii_without_shift():
    c = inertia_arrow_class(A1, "ii", ((F(1, 4),), (F(1, 3),), F(1, 7)))
    assert c[2] == CircleElt(F(1, 7))


def test_presentation_map_examples():
    assert presentation_map(A1, (0,), (F(1, 3),), F(1, 5))[2] == CircleElt(F(1, 5))
    assert presentation_map(A1, (F(1, 2),), (F(1, 2),), 0)[2] == CircleElt(F(1, 2))


def test_h_untwisted_product():
    a = HElt((F(1, 3),), CircleElt(F(1, 5)), (0,))
    b = HElt((F(1, 2),), CircleElt(F(1, 5)), (0,))
    assert h_mul(A1, a, b) == HElt((F(5, 6),), CircleElt(F(2, 5)), (0,))


def test_h_twist():
    a = HElt((F(0),), CircleElt(0), (1,))
    b = HElt((F(1, 4),), CircleElt(0), (0,))
    assert h_mul(A1, a, b).z == CircleElt(F(-1, 2))


def test_h_inverse():
    a = HElt((F(0),), CircleElt(0), (1,))
    one = HElt((F(0),), CircleElt(0), (0,))
    assert h_mul(A1, a, h_inv(A1, a)) == one == h_mul(A1, h_inv(A1, a), a)


def test_trivialization_change():
    _, apply = trivialization_change(A1, (0,))
    assert apply((F(1, 3),), F(1, 5)) == ((F(1, 3),), CircleElt(F(1, 5)))
    _, apply = trivialization_change(A1, (1,))
    assert apply((F(1, 3),), 0) == ((F(1, 3),), CircleElt(F(-2, 3)))


def test_trivialization_change_additive():
    _, a1 = trivialization_change(A1, (1,))
    _, a2 = trivialization_change(A1, (2,))
    _, a3 = trivialization_change(A1, (3,))
    t = (F(2, 7),)
    assert a2(*a1(t, 0)) == a3(t, 0)


@pytest.mark.parametrize("name", ["A1", "A2", "U", "D4"])
def test_inertia_suite(name):
    rep = inertia_suite(builtin(name), 60, seed=3)
    assert rep.passed, rep.render()


fracs = st.fractions(min_value=-3, max_value=3, max_denominator=12)


@given(fracs, fracs, fracs, st.integers(-4, 4), st.integers(-4, 4))
def test_class_i_independent_of_lift(x, y, w, k, n):
    lat = builtin("A1")
    c1 = inertia_arrow_class(lat, "i", ((x,), (y,), w))
    shifted_w = CircleElt(w) + CircleElt(lat.I((x,), (n,)))
    assert c1 == inertia_arrow_class(lat, "i", ((x + k,), (y + n,), shifted_w))


@given(fracs, fracs, fracs, fracs)
def test_quadratic_cocycles_add(s, t, u, v):
    assert quadratic_cocycle(s, 4) + quadratic_cocycle(t, 4) == quadratic_cocycle(s + t, 4)
    g = cochain(CIRCLE_MODULE, 4, lambda a: CircleElt(u * a * a + v))
    assert g.d() == g.d() + zero_cocycle(CIRCLE_MODULE, 4)
