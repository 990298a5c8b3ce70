import itertools
from fractions import Fraction as F

import pytest

from cattorus.autos import a0_weak, otilde_probes
from cattorus.cattorus import make_theta, theta_arrow
from cattorus.exact import CircleElt
from cattorus.lattice import builtin
from cattorus.xmod import (Group, NotComposable, WeakMorphism, XMod, XModHom, check_axioms,
                           check_hom, check_monoidal, check_weak_compose, identity_weak, pi0, pi1,
                           s_compose, s_identity, s_inverse, s_tensor, strict_as_weak, weak_check,
                           weak_compose, weak_equal)


def perm_group():
    elems = list(itertools.permutations(range(3)))
    mul = lambda a, b: tuple(b[a[i]] for i in range(3))  # noqa: E731  (a then b)
    inv = lambda a: tuple(sorted(range(3), key=lambda i: a[i]))  # noqa: E731
    return Group("S3", (0, 1, 2), mul, inv, sample=lambda rng: rng.choice(elems), elements=elems)


def conjugation_module():
    G = perm_group()
    act = lambda a, x: G.prod(G.inv(x), a, x)  # noqa: E731
    return XMod("id(S3)", G, G, act, lambda a: a)


def test_conjugation_module_axioms():
    x = conjugation_module()
    assert check_axioms(x, 200).passed
    assert pi0(x)["order"] == 1
    assert pi1(x)["order"] == 1


def test_theta_axioms_and_monoidal():
    th = make_theta(builtin("A1"))
    assert check_axioms(th, 1000).passed
    assert check_monoidal(th, 300).passed


def test_s_compose_example():
    th = make_theta(builtin("A1"))
    a = theta_arrow((0,), (1,), F(1, 3))
    b = theta_arrow((1,), (2,), F(1, 4))
    c = s_compose(th, a, b)
    assert c.src == (0,) and th.target(c) == (3,) and c.lab[1] == CircleElt(F(7, 12))
    assert s_compose(th, s_identity(th, a.src), a) == a
    assert s_compose(th, a, s_inverse(th, a)) == s_identity(th, a.src)
    with pytest.raises(NotComposable):
        s_compose(th, a, a)


def test_s_tensor_examples():
    th = make_theta(builtin("A1"))
    a = theta_arrow((F(1, 2),), (1,), F(1, 3))
    b = theta_arrow((F(1, 5),), (0,), F(1, 7))
    t = s_tensor(th, a, b)
    assert t.src == (F(7, 10),) and th.target(t) == (F(17, 10),)
    assert t.lab[1] == CircleElt(F(71, 105))
    assert s_tensor(th, a, s_identity(th, (0,))) == a
    th2 = make_theta(builtin("A2"))
    t2 = s_tensor(th2, theta_arrow((0, 0), (1, 0), 0), theta_arrow((0, F(1, 2)), (0, 0), 0))
    assert t2.lab[1] == CircleElt(F(-1, 2))


def test_corrupted_action_invisible_to_cm_axioms():
    # dropping the J term leaves CM1/CM2 intact: targets are abelian
    th = make_theta(builtin("A2"))
    flat = XMod("flat", th.G0, th.G1, lambda a, x: a, th.psi)
    assert check_axioms(flat, 300).passed


def test_strict_lift_passes_weak_check():
    th = make_theta(builtin("A2"))
    ident = XModHom(th, th, lambda x: x, lambda a: a)
    assert check_hom(ident, 200).passed
    assert weak_check(strict_as_weak(ident), 200).passed


def test_a0_weak_on_a2():
    lat = builtin("A2")
    th = make_theta(lat)
    for g in otilde_probes(lat)[:4]:
        assert weak_check(a0_weak(th, lat, g), 100).passed


def test_corrupted_kappa_fails_w4():
    lat = builtin("A2")
    th = make_theta(lat)
    w = a0_weak(th, lat, otilde_probes(lat)[3])
    # a perturbation that is not a cocycle
    bump = lambda x, y: (w.kappa(x, y)[0],  # noqa: E731
                         w.kappa(x, y)[1] + CircleElt(x[0] * x[0] * y[0]))
    bad = WeakMorphism(w.src, w.dst, w.p0, w.p1, bump)
    rep = weak_check(bad, 200, axioms=("W4",))
    assert not rep.passed and rep.get("W4").witness


def test_weak_compose_units_and_associativity():
    lat = builtin("A2")
    th = make_theta(lat)
    probes = otilde_probes(lat)
    w = a0_weak(th, lat, probes[2])
    ident = identity_weak(th)
    assert weak_equal(weak_compose(ident, w), w)
    assert weak_equal(weak_compose(w, ident), w)
    assert check_weak_compose(w, a0_weak(th, lat, probes[3]), a0_weak(th, lat, probes[4]), 40).passed


def test_pi_groups_from_metadata():
    th = make_theta(builtin("A1"))
    assert pi0(th)["group"] == "T"
    assert pi1(th)["group"] == "U1"
