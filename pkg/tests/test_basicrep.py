from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from cattorus.basicrep import (LaurentUnit, TorusAut, aut_inv, aut_mul, centralizer_member,
                               centralizer_of_rep, classes, make_F, make_rep, pi0_classes,
                               torus_aut, unit_act, verify_centralizer_theorem, verify_rep)
from cattorus.exact import SCALAR_ONE, Scalar
from cattorus.lattice import builtin
from cattorus.xmod import check_axioms

A1 = builtin("A1")


def test_basic_rep_on_arrows():
    r = make_rep(A1).hom
    assert r.f1(((1,), SCALAR_ONE)) == LaurentUnit(SCALAR_ONE, (1,))
    z = Scalar(2, F(1, 5))
    assert r.f1(((0,), z)) == LaurentUnit(z, (0,))


def test_scaled_rep_powers_the_scalar():
    z = Scalar(2, F(1, 5))
    assert make_rep(A1, 2, 3).hom.f1(((1,), z)) == LaurentUnit(z ** 6, (2,))


def test_rep_on_objects_scales_translation():
    r = make_rep(A1, 1, 3).hom
    assert r.f0(((F(1, 2),), -1)) == TorusAut((F(1, 2),), -1)


@pytest.mark.parametrize("name", ["A1", "A2", "U"])
@pytest.mark.parametrize("k,n", [(1, 1), (2, 1), (1, 3)])
def test_reps_are_homomorphisms(name, k, n):
    assert verify_rep(make_rep(builtin(name), k, n), 150, seed=1).passed


def test_flat_dual_breaks_rep_on_a2():
    assert not verify_rep(make_rep(builtin("A2"), mutate="flat"), 150).passed


def test_centralizer_member_phase():
    c = centralizer_member(A1, (1,), 0)
    assert c.h == TorusAut((F(1, 2),), 1)
    assert c.chi(((F(1),), 1)) == LaurentUnit(Scalar(1, F(1, 2)), (0,))


def test_centralizer_member_sign():
    c = centralizer_member(A1, (0,), 1)
    assert c.chi(((F(1, 3),), -1)) == LaurentUnit(Scalar(1, F(1, 2)), (0,))
    assert c.chi(((F(1, 3),), 1)) == LaurentUnit(SCALAR_ONE, (0,))


def test_centralizer_axioms_a2():
    C = centralizer_of_rep(make_rep(builtin("A2")), lat=builtin("A2"))
    assert check_axioms(C, 100, seed=3).passed


@pytest.mark.parametrize("name,count", [("A1", 4), ("U", 8), ("A1xA1", 8)])
def test_centralizer_theorem(name, count):
    lat = builtin(name)
    rep = verify_centralizer_theorem(lat, 100, seed=2)
    assert rep.passed, rep.render()
    _, C, _, F_ = make_F(lat)
    assert len(pi0_classes(lat, F_, C)) == len(classes(lat)) == count


@pytest.mark.parametrize("name", ["A1", "U"])
def test_drop_iota_is_caught(name):
    assert not verify_centralizer_theorem(builtin(name), 100, mutate="drop_iota").passed


def test_swap_is_caught_for_nonsymmetric_j():
    assert not verify_centralizer_theorem(builtin("A2"), 100, mutate="swap").passed


def test_theorem_rank_guard():
    from cattorus.lattice import LatticeError
    with pytest.raises(LatticeError):
        verify_centralizer_theorem(builtin("E8"), 1)


thirds = st.fractions(min_value=0, max_value=1, max_denominator=12)
auts = st.builds(lambda t, e: torus_aut((t,), e), thirds, st.sampled_from((1, -1)))
units = st.builds(lambda p, w: LaurentUnit(Scalar(1, p), (w,)), thirds, st.integers(-5, 5))


@given(auts, auts, auts)
def test_aut_group_laws(a, b, c):
    assert aut_mul(aut_mul(a, b), c) == aut_mul(a, aut_mul(b, c))
    assert aut_mul(a, aut_inv(a)) == torus_aut((0,), 1)


@given(units, auts, auts)
def test_unit_action_is_right_action(u, a, b):
    assert unit_act(unit_act(u, a), b) == unit_act(u, aut_mul(a, b))
