from fractions import Fraction as F

import pytest

from cattorus.autos import (OTilde, a0_weak, ad_sequence_check, ad_torus, canonical_form,
                            diag, eaut_elements, h_lambda, hlambda_check, isometries, make_xi,
                            make_xi_prime, make_xi_tilde, make_xi_tilde_prime, otilde_mul,
                            otilde_one, otilde_valid, outer_classes, projective_orthogonal,
                            solve_B, unimodular_eprime_check, xi_equivalence_check,
                            xi_exactness, xi_prime_equivalence_check)
from cattorus.cattorus import make_theta
from cattorus.exact import CircleElt, matmul
from cattorus.lattice import LatticeError, builtin, minus_identity
from cattorus.xmod import check_axioms, weak_check

A1, A2, U = builtin("A1"), builtin("A2"), builtin("U")


def test_otilde_unit():
    g = OTilde(minus_identity(2), solve_B(A2, minus_identity(2)))
    assert otilde_mul(A2, otilde_one(2), g) == g


def test_minus_id_squared_is_even_class():
    b0 = ((1,),)
    g = OTilde(minus_identity(1), b0)
    sq = otilde_mul(A1, g, g)
    assert sq == OTilde(((1,),), ((2,),))
    assert canonical_form(sq.B) == ((0,),)


def test_solved_b_is_valid():
    for f in isometries(A2):
        assert otilde_valid(A2, OTilde(f, solve_B(A2, f)))


def test_xi_on_a1():
    xi = make_xi(A1)
    assert xi.psi((1,)).B == canonical_form(((1,),))
    assert xi.psi((2,)) == xi.G0.one
    assert xi.psi((0,)) == xi.G0.one


def test_xi_cokernel_on_u():
    assert {e.f for e in eaut_elements(U)} == set(isometries(U))
    assert len(isometries(U)) == 4


@pytest.mark.parametrize("lat", [A1, A2, U], ids=lambda x: x.name)
def test_xi_exactness(lat):
    assert xi_exactness(lat).passed


def test_xi_requires_even():
    from cattorus.lattice import LatticeData
    with pytest.raises(LatticeError):
        make_xi(LatticeData.from_I("odd", [[1]]))


def test_identity_a0_is_identity():
    theta = make_theta(A2)
    w = a0_weak(theta, A2, otilde_one(2))
    x = (F(1, 3), F(2, 7))
    assert w.p0(x) == x
    assert w.kappa(x, x) == ((0, 0), CircleElt(0))


def test_a1_inversion_a0():
    theta = make_theta(A1)
    assert weak_check(a0_weak(theta, A1, OTilde(minus_identity(1), ((0,),))), 200).passed


def test_a2_rotation_preserves_j():
    # the minimal B vanishes, so beta comes only from the symmetric part
    cox = ((-1, 1), (-1, 0))
    assert matmul(cox, matmul(cox, cox)) == ((1, 0), (0, 1))
    assert solve_B(A2, cox) == ((0, 0), (0, 0))


@pytest.mark.parametrize("B", [((1, 0), (0, 0)), ((0, 1), (1, 1))])
def test_a2_rotation_with_nonzero_beta(B):
    theta = make_theta(A2)
    g = OTilde(((-1, 1), (-1, 0)), B)
    assert otilde_valid(A2, g)
    rep = weak_check(a0_weak(theta, A2, g), 300, seed=4)
    assert rep.passed, rep.render()


def test_a2_isometries_with_defect():
    theta = make_theta(A2)
    moved = [f for f in isometries(A2) if solve_B(A2, f) != ((0, 0), (0, 0))]
    assert moved
    for f in moved:
        assert weak_check(a0_weak(theta, A2, OTilde(f, solve_B(A2, f))), 60, seed=5).passed


@pytest.mark.parametrize("lat", [A1, A2], ids=lambda x: x.name)
def test_xi_crossed_modules(lat):
    assert check_axioms(make_xi(lat), 150).passed
    assert check_axioms(make_xi_tilde(lat), 150).passed


def test_xi_equivalence_a2():
    rep = xi_equivalence_check(A2, 80, seed=1)
    assert rep.passed, rep.render()


def test_xi_prime_modules_u():
    assert check_axioms(make_xi_prime(U), 150).passed
    assert check_axioms(make_xi_tilde_prime(U), 150).passed


def test_xi_prime_flagship_small():
    rep = xi_prime_equivalence_check(U, 100, seed=2)
    assert rep.passed, rep.render()


def test_kappa_sign_mutation_fails_w4():
    rep = xi_prime_equivalence_check(U, 200, seed=0, mutate="kappa_sign", axioms=("W4",))
    assert not rep.passed


def test_h_lambda_on_u():
    h = h_lambda(U, (1, 0))
    assert h(((3, 5), CircleElt(F(1, 8)))) == ((3, 5), CircleElt(F(5, 8)))
    assert h(((2, 1), CircleElt(F(1, 8)))) == ((2, 1), CircleElt(F(1, 8)))


@pytest.mark.parametrize("lat", [A1, U, A2], ids=lambda x: x.name)
def test_hlambda_coboundary(lat):
    assert hlambda_check(lat).passed


def test_eprime_on_u():
    rep = unimodular_eprime_check(U)
    assert rep.passed, rep.render()
    inn = next(r for r in rep.results if r.axiom == "INN")
    assert inn.status == "pass"


def test_eprime_needs_unimodular():
    with pytest.raises(LatticeError):
        unimodular_eprime_check(A2)


def test_outer_classes_u():
    assert len(outer_classes(U)) == len(projective_orthogonal(U)) == 2


def test_ad_torus_squares():
    t = (F(1, 3),)
    assert ad_torus((F(1, 4),), 1, t, 1) == (t, 1)
    assert ad_torus((F(1, 4),), -1, t, -1) == ((F(1, 6),), -1)


@pytest.mark.parametrize("lat", [A1, A2], ids=lambda x: x.name)
def test_ad_sequence(lat):
    assert ad_sequence_check(lat, 60).passed


def test_symmetric_classes_are_diagonal():
    assert canonical_form(((3, 2), (2, 4))) == diag((1, 0))
