import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from cattorus.exact import CircleElt
from cattorus.lattice import LatticeData, LatticeError, builtin
from cattorus.linebundle import (LiftError, LooijengaPoint, PLPath, associator_phase,
                                 class_function_decompose, concatenate, constant_path,
                                 gerbe_cocycle, h_representation_table, holonomy,
                                 linebundle_suite, looijenga_of_inertia, looijenga_transport,
                                 orbit_in_window, reparametrize, straight_path,
                                 structure_coboundary, theta_series)

A1, A2 = builtin("A1"), builtin("A2")


def simpson_holonomy(lat, f, g):
    """Independent: Simpson's rule on each merged segment, exact for the quadratic integrand."""
    ts = sorted(set(f.times) | set(g.times))
    total = F(0)
    for a, b in zip(ts, ts[1:]):
        v = [(p - q) / (b - a) for p, q in zip(f(b), f(a))]
        mid = (a + b) / 2
        vals = [lat.J(v, g(t)) for t in (a, mid, b)]
        total += (b - a) * (vals[0] + 4 * vals[1] + vals[2]) / 6
    dg = [p - q for p, q in zip(g(1), g(0))]
    return CircleElt(total - lat.J(f(0), dg))


def test_integral_lifts_have_trivial_phase():
    assert gerbe_cocycle(A1, (F(0),), (F(0),), ((3,), (5,))) == CircleElt(0)


def test_gerbe_lift_change_example():
    assert gerbe_cocycle(A1, (F(1, 2),), (F(1, 3),), ((F(3, 2),), (F(1, 3),))) == CircleElt(F(-1, 3))


def test_gerbe_rejects_non_lift():
    with pytest.raises(LiftError):
        gerbe_cocycle(A1, (F(1, 2),), (F(1, 3),), ((F(1, 4),), (F(1, 3),)))


def test_associator_vanishes():
    rng = random.Random(1)
    for _ in range(20):
        x, y, z = ([F(rng.randint(-20, 20), 7) for _ in range(2)] for _ in range(3))
        assert associator_phase(A2, x, y, z) == 0


def test_structure_coboundary_vanishes():
    s, t, u, v = (F(1, 3), F(1, 2)), (F(3, 4), F(1, 5)), (F(2, 3), F(5, 6)), (F(1, 7), F(0))
    assert structure_coboundary(A2, s, t, u, v) == CircleElt(0)


def test_constant_loops():
    assert holonomy(A2, constant_path((F(1, 3), 0)), constant_path((0, F(2, 5)))) == CircleElt(0)


def test_straight_loops():
    m, n = (1, 0), (0, 1)
    got = holonomy(A2, straight_path((0, 0), m), straight_path((0, 0), n))
    assert got == CircleElt(F(A2.J(m, n), 2))


def test_winding_pairing_a1():
    y = (F(2, 7),)
    got = holonomy(A1, straight_path((0,), (1,)), constant_path(y))
    assert got == CircleElt(A1.J((1,), y))


def test_holonomy_needs_loops():
    with pytest.raises(ValueError):
        holonomy(A1, straight_path((0,), (F(1, 2),)), constant_path((0,)))


def test_path_validation():
    with pytest.raises(ValueError):
        PLPath(((0, (0,)), (F(1, 2), (1,))))
    with pytest.raises(ValueError):
        PLPath(((0, (0,)), (0, (0,)), (1, (1,))))


ints = st.integers(-3, 3)
fr = st.fractions(min_value=-2, max_value=2, max_denominator=6)


@st.composite
def loops(draw, rank=2, start=None):
    if start is None:
        start = tuple(draw(fr) for _ in range(rank))
    mid = tuple(draw(fr) for _ in range(rank))
    wind = tuple(draw(ints) for _ in range(rank))
    t = draw(st.sampled_from([F(1, 3), F(1, 2), F(3, 5)]))
    end = tuple(a + b for a, b in zip(start, wind))
    return PLPath(((0, start), (t, mid), (1, end)))


@given(loops(), loops())
def test_holonomy_matches_simpson_oracle(f, g):
    assert holonomy(A2, f, g) == simpson_holonomy(A2, f, g)


@given(loops(), loops())
def test_holonomy_refinement_invariant(f, g):
    assert holonomy(A2, f.refine([F(1, 7), F(5, 9)]), g) == holonomy(A2, f, g)


@given(loops(), loops())
def test_holonomy_reparametrization_invariant(f, g):
    phi = PLPath(((0, (0,)), (F(1, 4), (F(1, 2),)), (1, (1,))))
    assert holonomy(A2, reparametrize(f, phi), reparametrize(g, phi)) == holonomy(A2, f, g)


@given(st.data())
def test_holonomy_multiplicative_in_first_loop(data):
    # both loops of f start at one lift; running g twice keeps it aligned with each half
    f1, g = data.draw(loops()), data.draw(loops())
    f2 = data.draw(loops(start=f1(0)))
    lhs = holonomy(A2, concatenate(f1, f2), concatenate(g, g))
    assert lhs == holonomy(A2, f1, g) + holonomy(A2, f2, g)


def test_flipped_correction_sign_is_caught():
    f = straight_path((F(1, 3), 0), (F(4, 3), 0))
    g = straight_path((0, 0), (0, 1))
    good = holonomy(A2, f, g)
    flipped = good + CircleElt(2 * A2.J(f(0), g.delta))
    assert flipped != simpson_holonomy(A2, f, g)


def test_looijenga_transport_examples():
    p = LooijengaPoint((F(0),), (F(0),), F(0), CircleElt(0))
    assert looijenga_transport(A1, p, (0,)) == p
    q = looijenga_transport(A1, p, (1,))
    assert q.qexp == -1 and q.phase == CircleElt(0)


def test_looijenga_transport_is_action():
    p = LooijengaPoint((F(1, 3), F(1, 5)), (F(2, 7), F(1, 2)), F(1, 4), CircleElt(F(1, 9)))
    for m, n in [((1, 0), (0, 1)), ((2, -1), (-3, 1))]:
        two = looijenga_transport(A2, looijenga_transport(A2, p, m), n)
        assert two == looijenga_transport(A2, p, (m[0] + n[0], m[1] + n[1]))


def test_looijenga_of_inertia_examples():
    p = looijenga_of_inertia(A1, (0,), (F(1, 3),), 0)
    assert p.qexp == 0 and p.x_one == (F(1, 3),)
    assert looijenga_of_inertia(A1, (F(1, 2),), (0,), 0).qexp == F(-1, 4)


@pytest.mark.parametrize("name", ["A1", "A2", "U", "D4"])
def test_linebundle_suite(name):
    for rep in linebundle_suite(builtin(name), 60, seed=2):
        assert rep.passed, rep.render()


def test_theta_a1():
    assert theta_series(A1, 9).counts(9) == [1, 2, 0, 0, 2, 0, 0, 0, 0, 2]


def test_theta_rank_zero():
    assert theta_series(LatticeData.from_I("zero", []), 3).coefficients == {0: 1}


def test_theta_indefinite():
    with pytest.raises(LatticeError):
        theta_series(builtin("U"), 2)


def test_refined_theta_a1():
    s = theta_series(A1, 1, shift=(0,), k=1)
    assert s.refined == {(0, (0,)): 1, (1, (-2,)): 1, (1, (2,)): 1}


def test_orbits_with_k_zero_are_singletons():
    assert orbit_in_window(A1, (3,), 0, 10) == [(3,)]


def test_orbit_examples_a1():
    assert orbit_in_window(A1, (0,), 1, 6) == [(-6,), (-4,), (-2,), (0,), (2,), (4,), (6,)]
    assert orbit_in_window(A1, (1,), 2, 9) == [(-7,), (-3,), (1,), (5,), (9,)]


def test_class_function_decompose():
    table = h_representation_table(A1, {((0,), 1): 2, ((1,), 1): 1}, 4)
    orbits = class_function_decompose(A1, table)
    assert [(o.representative, o.multiplicity) for o in orbits] == [((-4,), 2), ((-3,), 1)]
    assert not any(o.truncated for o in orbits)
    lone = class_function_decompose(A1, {((1,), 2): 3})
    assert lone[0].truncated
