"""Automorphisms of categorical tori.

Symmetric and general bilinear forms on the coweight lattice, the group
O~ of pairs (f, B) with B - B^t = J - f^*J, its quotient EAut by even
symmetric forms, the crossed modules Xi, Xi~, Xi', Xi~' and the maps
into the weak actor of Theta and Theta'.
"""

from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .actor_centre import CrossedHom, make_weak_actor, weak_actor_delta
from .cattorus import LIFT, make_theta, make_theta_prime
from .exact import (CircleElt, bilinear, identity, int_inverse, madd, matmul,
                    matvec, mneg, msub, pullback, rand_ivec, rand_vec,
                    reduce_mod1, show, transpose, vadd, vecmat, vneg, vscale, vsub,
                    zero_mat)
from .lattice import (GuardExceeded, LatticeData, LatticeError, is_even,
                      isometry_group, minus_identity)
from .xmod import Group, Report, WeakMorphism, XMod, XModHom, check_hom, weak_check


# bilinear forms ---------------------------------------------------------------

def is_symmetric(b) -> bool:
    return b == transpose(b)


def is_even_symmetric(b) -> bool:
    return is_symmetric(b) and all(b[i][i] % 2 == 0 for i in range(len(b)))


def symmetrise(b):
    return madd(b, transpose(b))


def phi(b, m):
    """The quadratic function m -> B(m, m)."""
    return bilinear(b, m, m)


def outer(lam):
    return tuple(tuple(a * b for b in lam) for a in lam)


def diag(values):
    n = len(values)
    return tuple(tuple(values[i] if i == j else 0 for j in range(n)) for i in range(n))


def canonical_form(b):
    """Representative of B modulo even symmetric forms: zero above the diagonal, diagonal in {0,1}."""
    n = len(b)
    rows = [list(r) for r in b]
    for i in range(n):
        for j in range(i + 1, n):
            s = rows[i][j]
            rows[i][j] -= s
            rows[j][i] -= s
        rows[i][i] %= 2
    return tuple(tuple(r) for r in rows)


def forms_congruent(b1, b2) -> bool:
    return is_even_symmetric(msub(b1, b2))


# O~ and EAut -------------------------------------------------------------------

@dataclass(frozen=True)
class OTilde:
    f: tuple
    B: tuple

    def __repr__(self):
        return f"({show(self.f)},{show(self.B)})"


class ConventionError(LatticeError):
    pass


def defect(lat: LatticeData, f):
    """J - f^*J, antisymmetric when f is an isometry."""
    return msub(lat.gramJ, pullback(f, lat.gramJ))


def solve_B(lat: LatticeData, f):
    """The B with B - B^t = J - f^*J that is zero on and above the diagonal."""
    d = defect(lat, f)
    n = lat.rank
    return tuple(tuple(d[i][j] if i > j else 0 for j in range(n)) for i in range(n))


def otilde_valid(lat: LatticeData, a: OTilde) -> bool:
    return msub(a.B, transpose(a.B)) == defect(lat, a.f)


def otilde_mul(lat: LatticeData, a: OTilde, b: OTilde, check: bool = False) -> OTilde:
    """(f, B)(g, B') = (fg, g^*B + B')."""
    out = OTilde(matmul(a.f, b.f), madd(pullback(b.f, a.B), b.B))
    if check and not otilde_valid(lat, out):
        raise ConventionError("product violates B - B^t = J - f^*J")
    return out


def otilde_inv(a: OTilde) -> OTilde:
    fi = int_inverse(a.f)
    return OTilde(fi, mneg(pullback(fi, a.B)))


def otilde_one(n: int) -> OTilde:
    return OTilde(identity(n), zero_mat(n))


def eaut_canonical(a: OTilde) -> OTilde:
    return OTilde(a.f, canonical_form(a.B))


@functools.lru_cache(maxsize=None)
def isometries(lat: LatticeData):
    return tuple(isometry_group(lat))


def _sample_otilde(lat: LatticeData, rng) -> OTilde:
    f = rng.choice(isometries(lat))
    n = lat.rank
    s = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v = rng.randint(-3, 3)
            s[i][j] = s[j][i] = v
    return OTilde(f, madd(solve_B(lat, f), tuple(tuple(r) for r in s)))


def otilde_group(lat: LatticeData) -> Group:
    n = lat.rank
    return Group(f"O~({lat.name})", otilde_one(n), lambda a, b: otilde_mul(lat, a, b),
                 otilde_inv, sample=lambda rng: _sample_otilde(lat, rng), fmt=repr)


def eaut_group(lat: LatticeData) -> Group:
    n = lat.rank
    return Group(f"EAut({lat.name})", otilde_one(n),
                 lambda a, b: eaut_canonical(otilde_mul(lat, a, b)),
                 lambda a: eaut_canonical(otilde_inv(a)),
                 sample=lambda rng: eaut_canonical(_sample_otilde(lat, rng)), fmt=repr)


def eaut_elements(lat: LatticeData):
    """All of EAut: each isometry with each symmetric class diag(d), d in {0,1}^rank."""
    out = []
    for f in isometries(lat):
        b0 = solve_B(lat, f)
        for d in itertools.product((0, 1), repeat=lat.rank):
            out.append(eaut_canonical(OTilde(f, madd(b0, diag(d)))))
    return out


# Xi and Xi~ ------------------------------------------------------------------

def make_xi(lat: LatticeData) -> XMod:
    """Lambda -> EAut, lambda -> (id, [lambda lambda^t]), acted on by lambda -> f^t lambda."""
    if not is_even(lat):
        raise LatticeError("form is not even")
    n = lat.rank
    G0 = eaut_group(lat)
    G1 = Group("Lambda", (0,) * n, vadd, vneg, sample=lambda rng: rand_ivec(rng, n), fmt=show)
    return XMod(f"Xi[{lat.name}]", G0, G1,
                lambda lam, g: vecmat(lam, g.f),
                lambda lam: OTilde(identity(n), canonical_form(outer(lam))))


def _gamma2_sample(lat: LatticeData, rng):
    n = lat.rank
    lam = rand_ivec(rng, n, 6)
    s = [[0] * n for _ in range(n)]
    for i in range(n):
        s[i][i] = lam[i] + 2 * rng.randint(-3, 3)
        for j in range(i + 1, n):
            s[i][j] = s[j][i] = rng.randint(-4, 4)
    return (lam, tuple(tuple(r) for r in s))


def make_xi_tilde(lat: LatticeData) -> XMod:
    """{(lambda, B): B symmetric, B_ii = lambda_i mod 2} -> O~, (lambda, B) -> (id, B)."""
    n = lat.rank
    G0 = otilde_group(lat)
    G1 = Group("Lambda x_2 G2", ((0,) * n, zero_mat(n)),
               lambda a, b: (vadd(a[0], b[0]), madd(a[1], b[1])),
               lambda a: (vneg(a[0]), mneg(a[1])),
               sample=lambda rng: _gamma2_sample(lat, rng), fmt=show)
    return XMod(f"Xi~[{lat.name}]", G0, G1,
                lambda a, g: (vecmat(a[0], g.f), pullback(g.f, a[1])),
                lambda a: OTilde(identity(n), a[1]))


def xi_exactness(lat: LatticeData, max_rank: int = 4) -> Report:
    """0 -> 2Lambda -> Lambda -> EAut -> O -> 1 on enumerable pieces."""
    if lat.rank > max_rank:
        raise GuardExceeded(f"rank {lat.rank} above guard {max_rank}")
    xi = make_xi(lat)
    n = lat.rank
    rep = Report(f"xi sequence {lat.name}")
    box = list(itertools.product(range(-3, 4), repeat=n)) if n <= 3 else \
        list(itertools.product(range(-2, 3), repeat=n))
    one = xi.G0.one
    bad = next((v for v in box if (xi.psi(v) == one) != all(x % 2 == 0 for x in v)), None)
    rep.add("KERNEL", bad is None, len(box), f"lambda={show(bad)}")
    # kernel of EAut -> O is the symmetric classes; all are hit by xi
    sym = {eaut_canonical(OTilde(identity(n), diag(d))) for d in itertools.product((0, 1), repeat=n)}
    hit = {xi.psi(v) for v in itertools.product((0, 1), repeat=n)}
    rep.add("MIDDLE", sym == hit, len(sym), f"symmetric={len(sym)}; image={len(hit)}")
    elems = eaut_elements(lat)
    cok = {e.f for e in elems}
    O = set(isometries(lat))
    rep.add("COKERNEL", cok == O and len(set(elems)) == len(O) * 2 ** n, len(elems),
            f"classes={len(cok)}; O={len(O)}")
    return rep


# Theta: the maps A0 and A1 ------------------------------------------------------

def a0_weak(theta: XMod, lat: LatticeData, g: OTilde, name="A0") -> WeakMorphism:
    """(f, B) -> weak automorphism x -> f x, (m, a) -> (f m, a), kappa = (0, [B(x, y)])."""
    f, B = g.f, g.B
    fi = int_inverse(f)
    c = _coeff_of(theta)
    zero = (0,) * lat.rank
    return WeakMorphism(
        theta, theta,
        lambda x: matvec(f, x),
        lambda a: (matvec(f, a[0]), a[1]),
        lambda x, y: (zero, c.shift(c.one, bilinear(B, x, y))),
        p0_inv=lambda x: matvec(fi, x),
        p1_inv=lambda a: (matvec(fi, a[0]), a[1]),
        name=name, descriptor=g)


def a1_pointed(theta: XMod, lat: LatticeData, a) -> CrossedHom:
    """(lambda, B) -> eta(x) = (0, [(B(x, x) - lambda(x)) / 2])."""
    lam, B = a
    c = _coeff_of(theta)
    zero = (0,) * lat.rank
    return CrossedHom(lambda x: (zero, c.shift(c.one, Fraction(bilinear(B, x, x) - sum(
        p * q for p, q in zip(lam, x)), 2))), ("A1", a))


def _coeff_of(x: XMod):
    return x.info["coeff"]


def xi_equivalence_check(lat: LatticeData, trials: int = 1000, seed=0, threads=None,
                         weak_trials: int | None = None) -> Report:
    """A: Xi~ -> wAct+(Theta) strict; each A0 weak; pi1 and the comparison with Xi."""
    theta = make_theta(lat)
    n = lat.rank
    xt = make_xi_tilde(lat)
    W = make_weak_actor(theta, rank=n, signed=False)
    A = XModHom(xt, W, lambda g: a0_weak(theta, lat, g), lambda a: a1_pointed(theta, lat, a),
                name=f"A({lat.name})")
    rep = Report(f"Xi equivalence {lat.name}")
    rep.extend(check_hom(A, trials, seed, threads), "A.")
    wt = weak_trials if weak_trials is not None else max(1, trials // 10)
    probes = otilde_probes(lat, seed)
    sub = Report("")
    for i, g in enumerate(probes):
        sub.extend(weak_check(a0_weak(theta, lat, g), wt, f"{seed}:{i}"), f"A0[{i}].")
    rep.add("A0.WEAK", sub.passed, sum(r.trials for r in sub.results),
            next((f"{r.axiom}: {r.witness}" for r in sub.results if r.status == "fail"), ""))
    ks = [((0,) * n, CircleElt(Fraction(j, 7))) for j in range(7)]
    ok = all(a0_weak(theta, lat, g).p1(k) == k for g in probes for k in ks)
    rep.add("A0.CENTRE", ok, len(ks) * len(probes))
    # pi1: (2 mu, 0) in the kernel of xi~ goes to the character x -> -mu(x)
    bad = None
    for mu in [tuple(int(i == j) for j in range(n)) for i in range(n)] + [(3,) * n]:
        eta = a1_pointed(theta, lat, (vscale(2, mu), zero_mat(n)))
        for x in theta.G0.probes(6):
            if eta(x) != ((0,) * n, CircleElt(-sum(p * q for p, q in zip(mu, x)))):
                bad = f"mu={show(mu)}; x={show(x)}"
                break
        if bad:
            break
    rep.add("PI1", bad is None, n + 1, bad or "")
    cmp = XModHom(xt, make_xi(lat), eaut_canonical, lambda a: a[0], name="Xi~->Xi")
    rep.extend(check_hom(cmp, min(trials, 200), seed, threads), "CMP.")
    return rep


def otilde_probes(lat: LatticeData, seed=0, k: int = 4):
    """A few isometries with their canonical B, plus seeded random elements of O~."""
    rng = random.Random(f"{seed}:otilde")
    out = [otilde_one(lat.rank)]
    for f in isometries(lat)[:8]:
        out.append(OTilde(f, solve_B(lat, f)))
    out += [_sample_otilde(lat, rng) for _ in range(k)]
    return out


# Xi' and Xi~' -------------------------------------------------------------------

def _fi(f):
    return int_inverse(f)


def xi_prime_boundary_form(lat: LatticeData, n):
    """The diagonal B with phi_B = I#(n) mod 2."""
    return diag(tuple(v % 2 for v in lat.sharp_I(n)))


def make_xi_prime(lat: LatticeData) -> XMod:
    """Lv~/2Lv -> T x| EAut, ([n], iota) -> (exp(n/2), id, diag(I#(n) mod 2))."""
    if not is_even(lat):
        raise LatticeError("form is not even")
    n = lat.rank
    J = lat.J

    def mul0(a, b):
        t, g = a
        s, h = b
        return (reduce_mod1(vadd(t, matvec(g.f, s))), eaut_canonical(otilde_mul(lat, g, h)))

    def inv0(a):
        t, g = a
        gi = otilde_inv(g)
        return (reduce_mod1(vneg(matvec(gi.f, t))), eaut_canonical(gi))

    def sample0(rng):
        return (reduce_mod1(rand_vec(rng, n)), eaut_canonical(_sample_otilde(lat, rng)))

    G0 = Group("T x| EAut", ((Fraction(0),) * n, otilde_one(n)), mul0, inv0, sample=sample0,
               fmt=lambda a: f"({show(a[0])};{a[1]!r})")

    def red(v):
        return tuple(x % 2 for x in v)

    def mul1(a, b):
        return (red(vadd(a[0], b[0])), (a[1] + b[1] + J(a[0], b[0])) % 2)

    def inv1(a):
        return (red(vneg(a[0])), (a[1] + J(a[0], a[0])) % 2)

    elems = [(v, i) for v in itertools.product((0, 1), repeat=n) for i in (0, 1)]
    G1 = Group("Lv~/2Lv", ((0,) * n, 0), mul1, inv1,
               sample=lambda rng: (tuple(rng.randint(0, 1) for _ in range(n)), rng.randint(0, 1)),
               fmt=show, elements=elems)

    def psi(a):
        return (tuple(Fraction(v, 2) for v in a[0]),
                eaut_canonical(OTilde(identity(n), xi_prime_boundary_form(lat, a[0]))))

    def act(a, g):
        v = matvec(_fi(g[1].f), a[0])
        return (red(v), (a[1] + bilinear(g[1].B, v, v)) % 2)

    return XMod(f"Xi'[{lat.name}]", G0, G1, act, psi)


def _gamma2_over(lat: LatticeData, n, rng):
    """Random symmetric S with S_ii = I#(n)_i mod 2."""
    r = lat.rank
    d = lat.sharp_I(n)
    s = [[0] * r for _ in range(r)]
    for i in range(r):
        s[i][i] = d[i] % 2 + 2 * rng.randint(-3, 3)
        for j in range(i + 1, r):
            s[i][j] = s[j][i] = rng.randint(-4, 4)
    return tuple(tuple(row) for row in s)


def make_xi_tilde_prime(lat: LatticeData) -> XMod:
    """(n, iota, S) -> (n/2, id, S) in t x| O~."""
    if not is_even(lat):
        raise LatticeError("form is not even")
    r = lat.rank
    J = lat.J

    def mul0(a, b):
        return (vadd(a[0], matvec(a[1].f, b[0])), otilde_mul(lat, a[1], b[1]))

    def inv0(a):
        gi = otilde_inv(a[1])
        return (vneg(matvec(gi.f, a[0])), gi)

    def sample0(rng):
        return (rand_vec(rng, r, 12, 3), _sample_otilde(lat, rng))

    G0 = Group("t x| O~", ((Fraction(0),) * r, otilde_one(r)), mul0, inv0, sample=sample0,
               fmt=lambda a: f"({show(a[0])};{a[1]!r})")

    def mul1(a, b):
        return (vadd(a[0], b[0]), (a[1] + b[1] + J(a[0], b[0])) % 2, madd(a[2], b[2]))

    def inv1(a):
        return (vneg(a[0]), (a[1] + J(a[0], a[0])) % 2, mneg(a[2]))

    def sample1(rng):
        n = rand_ivec(rng, r, 6)
        return (n, rng.randint(0, 1), _gamma2_over(lat, n, rng))

    G1 = Group("Lv~ x G2", ((0,) * r, 0, zero_mat(r)), mul1, inv1, sample=sample1, fmt=show)

    def psi(a):
        return (tuple(Fraction(v, 2) for v in a[0]), OTilde(identity(r), a[2]))

    def act(a, g):
        f, B = g[1].f, g[1].B
        v = matvec(_fi(f), a[0])
        return (v, (a[1] + bilinear(B, v, v)) % 2, pullback(f, a[2]))

    return XMod(f"Xi~'[{lat.name}]", G0, G1, act, psi)


# Theta': the weak homomorphism (A', kappa) -------------------------------------

def aprime0(tp: XMod, lat: LatticeData, g, name="A'0") -> WeakMorphism:
    """c_a o (f, beta): (x, e) -> (f x + (1-e) a, e), (m, [r]) -> (f m, [r - J(f m, a)]), kappa = (0, [e B(x, y)])."""
    a, o = g
    f, B = o.f, o.B
    fi = int_inverse(f)
    c = _coeff_of(tp)
    zero = (0,) * lat.rank
    J = lat.J

    def p0(x):
        return (vadd(matvec(f, x[0]), vscale(1 - x[1], a)), x[1])

    def p1(al):
        fm = matvec(f, al[0])
        return (fm, c.shift(al[1], -J(fm, a)))

    def kappa(x, y):
        return (zero, c.shift(c.one, x[1] * bilinear(B, x[0], y[0])))

    def p0_inv(y):
        return (matvec(fi, vsub(y[0], vscale(1 - y[1], a))), y[1])

    def p1_inv(al):
        return (matvec(fi, al[0]), c.shift(al[1], J(al[0], a)))

    return WeakMorphism(tp, tp, p0, p1, kappa, p0_inv, p1_inv, name=name, descriptor=g)


def aprime1(tp: XMod, lat: LatticeData, al) -> CrossedHom:
    """eta(x, e) = ((e-1)/2 n, [(S(x, x) + J(n, x) + (e-1)/2 iota) / 2])."""
    n, iota, S = al
    c = _coeff_of(tp)
    J = lat.J

    def fn(x):
        v, e = x
        h = (e - 1) // 2
        return (vscale(h, n), c.shift(c.one, Fraction(bilinear(S, v, v) + J(n, v) + h * iota, 2)))
    return CrossedHom(fn)


def aprime_kappa(tp: XMod, lat: LatticeData, mutate: str | None = None):
    """kappa_{(a,f,B),(b,g,B')}(x, e) = (0, [e B(g x, b) - B(b, g x) + (e-1) B(b, b)])."""
    c = _coeff_of(tp)
    zero = (0,) * lat.rank
    sgn = -1 if mutate == "kappa_sign" else 1

    def kappa(g1, g2):
        B = g1[1].B
        b, gm = g2[0], g2[1].f

        def fn(x):
            v, e = x
            gx = matvec(gm, v)
            val = sgn * e * bilinear(B, gx, b) - bilinear(B, b, gx) + (e - 1) * bilinear(B, b, b)
            return (zero, c.shift(c.one, val))
        return CrossedHom(fn)
    return kappa


def aprime_weak_hom(lat: LatticeData, mutate: str | None = None):
    """(A', kappa): Xi~' -> wAct(Theta') as a WeakMorphism, with the actor and source."""
    tp = make_theta_prime(lat)
    src = make_xi_tilde_prime(lat)
    W = make_weak_actor(tp, rank=lat.rank, signed=True, k=4, pairs=4)
    w = WeakMorphism(src, W, lambda g: aprime0(tp, lat, g), lambda a: aprime1(tp, lat, a),
                     aprime_kappa(tp, lat, mutate), name=f"A'({lat.name})")
    return tp, src, W, w


def xi_prime_equivalence_check(lat: LatticeData, trials: int = 1000, seed=0, threads=None,
                               mutate: str | None = None, axioms=None) -> Report:
    tp, src, W, w = aprime_weak_hom(lat, mutate)
    rep = Report(f"Xi' equivalence {lat.name}" + (f" [{mutate}]" if mutate else ""))
    kw = {} if axioms is None else {"axioms": axioms}
    rep.extend(weak_check(w, trials, seed, threads, **kw), "A'.")
    if mutate is not None:
        return rep
    # every A'0 is itself a weak automorphism of Theta' that fixes pi1
    sub = Report("")
    rng = random.Random(f"{seed}:aprime")
    gs = [src.G0.sample(rng) for _ in range(4)]
    for i, g in enumerate(gs):
        sub.extend(weak_check(aprime0(tp, lat, g), max(1, trials // 20), f"{seed}:{i}"), f"[{i}].")
    rep.add("A'0.WEAK", sub.passed, sum(r.trials for r in sub.results),
            next((f"{r.axiom}: {r.witness}" for r in sub.results if r.status == "fail"), ""))
    ks = [((0,) * lat.rank, CircleElt(Fraction(j, 5))) for j in range(5)]
    rep.add("A'0.CENTRE", all(aprime0(tp, lat, g).p1(k) == k for g in gs for k in ks), len(ks))
    # pi1: (0, iota, 0) -> (x, e) -> (0, [(e-1) iota / 4])
    bad = None
    for iota in (0, 1):
        eta = aprime1(tp, lat, ((0,) * lat.rank, iota, zero_mat(lat.rank)))
        for x in tp.G0.probes(6):
            if eta(x) != ((0,) * lat.rank, CircleElt(Fraction((x[1] - 1) * iota, 4))):
                bad = f"iota={iota}; x={show(x)}"
    rep.add("PI1", bad is None, 2, bad or "")
    rep.extend(hlambda_check(lat), "")
    return rep


# the coboundary delta(eta) = (h_lambda, beta) -----------------------------------

def unisolvent_quadratic(nvars: int):
    """0, e_i, 2 e_i and e_i + e_j: a degree-2 polynomial vanishing here vanishes."""
    pts = [(0,) * nvars]
    for i in range(nvars):
        e = [0] * nvars
        e[i] = 1
        pts.append(tuple(e))
        e[i] = 2
        pts.append(tuple(e))
    for i in range(nvars):
        for j in range(i + 1, nvars):
            e = [0] * nvars
            e[i] = e[j] = 1
            pts.append(tuple(e))
    return pts


def hlambda_check(lat: LatticeData, forms=None) -> Report:
    """delta(eta) for eta(x, e) = (0, [B(x, x)/2]) equals (h_lambda, beta), lambda = phi_B mod 2.

    Runs in the unreduced coefficient model, where every quantity is a
    polynomial of degree <= 2; vanishing on a unisolvent set is a proof.
    """
    r = lat.rank
    tp = make_theta_prime(lat, LIFT)
    rep = Report(f"h_lambda {lat.name}")
    if forms is None:
        forms = [diag(d) for d in itertools.product((0, 1), repeat=r)]
        if r >= 2:
            forms.append(tuple(tuple(1 if i == j else (i + j) % 3 - 1 for j in range(r))
                               for i in range(r)))
    zero = (0,) * r
    bad = {"P0": None, "P1": None, "KAPPA": None}
    count = 0
    for B in forms:
        lam = tuple(B[i][i] % 2 for i in range(r))
        eta = CrossedHom(lambda x, B=B: (zero, Fraction(bilinear(B, x[0], x[0]), 2)))
        d = weak_actor_delta(tp, eta)
        for e in (1, -1):
            for p in unisolvent_quadratic(r):
                x = (tuple(Fraction(v) for v in p), e)
                if d.p0(x) != x and bad["P0"] is None:
                    bad["P0"] = f"B={show(B)}; x={show(x)}"
        # p1(m, r) - (m, r + lambda(m)/2) must be an integer-valued quadratic in m
        def q(m, B=B, d=d, lam=lam):
            m2, ph = d.p1((m, Fraction(0)))
            if m2 != m:
                return None
            return ph - Fraction(sum(a * b for a, b in zip(lam, m)), 2)
        basis = [tuple(int(i == j) for j in range(r)) for i in range(r)]
        vals = [q(zero)] + [q(b) for b in basis]
        cross = [q(vadd(basis[i], basis[j])) - q(basis[i]) - q(basis[j])
                 for i in range(r) for j in range(i + 1, r)]
        if any(v is None or Fraction(v).denominator != 1 for v in vals + cross) and bad["P1"] is None:
            bad["P1"] = f"B={show(B)}; lambda={show(lam)}"
        for e1 in (1, -1):
            for e2 in (1, -1):
                for p in unisolvent_quadratic(2 * r):
                    x = (tuple(Fraction(v) for v in p[:r]), e1)
                    y = (tuple(Fraction(v) for v in p[r:]), e2)
                    got = d.kappa(x, y)
                    if (got != (zero, e1 * bilinear(B, x[0], y[0]))) and bad["KAPPA"] is None:
                        bad["KAPPA"] = f"B={show(B)}; x={show(x)}; y={show(y)}"
                    count += 1
    for k in ("P0", "P1", "KAPPA"):
        rep.add(f"HLAMBDA.{k}", bad[k] is None, len(forms), bad[k] or "")
    return rep


def h_lambda(lat: LatticeData, lam):
    """The strict automorphism (m, [r]) -> (m, [r + lambda(m)/2]) of Theta'."""
    return lambda al: (al[0], al[1] + CircleElt(Fraction(sum(a * b for a, b in zip(lam, al[0])), 2)))


# the unimodular case over F2 ----------------------------------------------------

def _ext_table_autos(lat: LatticeData):
    """Automorphisms of Lv~/2Lv as pairs (f mod 2, c) with alpha(a, 0) = (f a, c(a))."""
    from .cattorus import extraspecial_group
    G = extraspecial_group(lat)
    r = lat.rank
    pts = list(itertools.product((0, 1), repeat=r))
    out = []
    for cols in itertools.product(pts, repeat=r):
        f = tuple(tuple(cols[j][i] for j in range(r)) for i in range(r))
        img = {a: tuple(x % 2 for x in matvec(f, a)) for a in pts}
        if len(set(img.values())) != len(pts):
            continue
        for cvals in itertools.product((0, 1), repeat=len(pts)):
            c = dict(zip(pts, cvals))
            if c[(0,) * r] != 0:
                continue
            alpha = {(a, i): (img[a], (i + c[a]) % 2) for a in pts for i in (0, 1)}
            if all(alpha[G.mul(x, y)] == G.mul(alpha[x], alpha[y])
                   for x in G.elements for y in G.elements):
                out.append((f, tuple(c[a] for a in pts)))
    return pts, out


def unimodular_eprime_check(lat: LatticeData, max_rank: int = 4) -> Report:
    if not lat.is_unimodular:
        raise LatticeError("form is not unimodular")
    if lat.rank > max_rank:
        raise GuardExceeded(f"rank {lat.rank} above guard {max_rank}")
    r = lat.rank
    rep = Report(f"E' {lat.name}")
    pts, autos = _ext_table_autos(lat)
    idx = {a: k for k, a in enumerate(pts)}
    ident2 = identity(r)
    # dc = J + f^*J mod 2
    ok = True
    for f, c in autos:
        for a in pts:
            for b in pts:
                ab = tuple((x + y) % 2 for x, y in zip(a, b))
                dc = (c[idx[a]] + c[idx[b]] - c[idx[ab]]) % 2
                fa, fb = matvec(f, a), matvec(f, b)
                if dc != (lat.J(b, a) + lat.J(fb, fa)) % 2:
                    ok = False
    rep.add("COCYCLE", ok, len(autos))
    inner = {(f, c) for f, c in autos if f == ident2}
    tstar = {(ident2, tuple(lat.I(a, b) % 2 for a in pts)) for b in pts}
    rep.add("INN", inner == tstar and len(inner) == 2 ** r, len(inner),
            f"inner={len(inner)}; T*[2]={len(tstar)}")
    o2 = orthogonal_mod2_group(lat)
    fs = {f for f, _ in autos}
    rep.add("AUT", len(autos) == 2 ** r * len(o2) and fs == set(o2), len(autos),
            f"aut={len(autos)}; O(phi)={len(o2)}")
    # EAut -> pullback: (f, [B]) -> (f, f mod 2, a -> B(a, a) mod 2)
    elems = set(eaut_elements(lat))
    image = {}
    for g in elems:
        key = (g.f, (tuple(tuple(x % 2 for x in row) for row in g.f),
                     tuple(bilinear(g.B, a, a) % 2 for a in pts)))
        image[key] = g
    pull = {(f, a) for f in isometries(lat) for a in autos
            if tuple(tuple(x % 2 for x in row) for row in f) == a[0]}
    rep.add("PULLBACK", set(image) == pull and len(image) == len(elems), len(elems),
            f"EAut={len(elems)}; pullback={len(pull)}")
    # the map is a homomorphism into automorphisms under composition
    def alpha(g):
        return (tuple(tuple(x % 2 for x in row) for row in g.f),
                tuple(bilinear(g.B, a, a) % 2 for a in pts))

    def compose(a1, a2):
        f1, c1 = a1
        f2, c2 = a2
        f = tuple(tuple(x % 2 for x in row) for row in matmul(f1, f2))
        c = tuple((c2[idx[a]] + c1[idx[tuple(x % 2 for x in matvec(f2, a))]]) % 2 for a in pts)
        return f, c
    el = sorted(elems, key=repr)[:64]
    ok = all(alpha(eaut_canonical(otilde_mul(lat, g, h))) == compose(alpha(g), alpha(h))
             for g in el for h in el)
    rep.add("HOM", ok, len(el) ** 2)
    rep.add("OUTER", len(outer_classes(lat)) == len(projective_orthogonal(lat)), 1,
            f"outer={len(outer_classes(lat))}; PO={len(projective_orthogonal(lat))}")
    return rep


def orthogonal_mod2_group(lat: LatticeData):
    from .lattice import orthogonal_mod2
    return orthogonal_mod2(lat)["group"]


def projective_orthogonal(lat: LatticeData):
    """O / {+-1} as a set of orbit representatives."""
    m = minus_identity(lat.rank)
    seen, out = set(), []
    for f in isometries(lat):
        if f in seen:
            continue
        seen.update({f, matmul(m, f)})
        out.append(f)
    return out


def outer_classes(lat: LatticeData):
    """EAut modulo the classes (id, diag(I#(n))) and conjugation by inversion."""
    r = lat.rank
    elems = eaut_elements(lat)
    sub_gens = [eaut_canonical(OTilde(identity(r), xi_prime_boundary_form(lat, n)))
                for n in itertools.product((0, 1), repeat=r)]
    m = minus_identity(r)
    sub_gens.append(eaut_canonical(OTilde(m, solve_B(lat, m))))
    sub = {otilde_one(r)}
    frontier = list(sub)
    while frontier:
        a = frontier.pop()
        for g in sub_gens:
            p = eaut_canonical(otilde_mul(lat, a, g))
            if p not in sub:
                sub.add(p)
                frontier.append(p)
    classes, seen = [], set()
    for e in elems:
        if e in seen:
            continue
        coset = {eaut_canonical(otilde_mul(lat, e, s)) for s in sub}
        seen |= coset
        classes.append(e)
    return classes


# the adjoint sequence of T x| {+-1} ----------------------------------------------

def ad_torus(s, delta, t, eps):
    """Ad(s, delta)(t, eps) = (delta t + (1 - eps) s, eps)."""
    return (reduce_mod1(vadd(vscale(delta, t), vscale(1 - eps, s))), eps)


def ad_sequence_check(lat: LatticeData, samples: int = 200, seed=0) -> Report:
    r = lat.rank
    rep = Report(f"Ad sequence {lat.name}")
    rng = random.Random(f"{seed}:ad")
    probes = [(reduce_mod1(rand_vec(rng, r)), e) for e in (1, -1) for _ in range(6)]
    probes += [(tuple(Fraction(int(i == j), 3) for j in range(r)), e) for i in range(r) for e in (1, -1)]

    def trivial(s, d):
        return all(ad_torus(s, d, t, e) == (t, e) for t, e in probes)
    grid = [(tuple(Fraction(v, 4) for v in a), d)
            for a in itertools.product(range(4), repeat=r) for d in (1, -1)]
    kernel = {g for g in grid if trivial(*g)}
    t2 = {(tuple(Fraction(v, 2) for v in a), 1) for a in itertools.product((0, 1), repeat=r)}
    rep.add("KERNEL", kernel == t2, len(grid), f"kernel={len(kernel)}; T[2]={len(t2)}")
    rep.add("COUNT", len(t2) == 2 ** r, 1)
    bad = None
    for _ in range(samples):
        s, d = reduce_mod1(rand_vec(rng, r)), rng.choice((1, -1))
        if trivial(s, d) and (s, d) not in t2:
            bad = f"s={show(s)}; delta={d}"
        # the image is (translation s, linear part delta * id)
        for t, e in probes[:4]:
            want = reduce_mod1(vadd(matvec(tuple(tuple(d * int(i == j) for j in range(r))
                                                   for i in range(r)), t), vscale(1 - e, s)))
            if ad_torus(s, d, t, e)[0] != want:
                bad = f"s={show(s)}; delta={d}"
    rep.add("IMAGE", bad is None, samples, bad or "")
    sq_ok = True
    for _ in range(samples):
        t = reduce_mod1(rand_vec(rng, r))
        sq_plus = reduce_mod1(vadd(t, t))
        sq_minus = reduce_mod1(vadd(t, vneg(t)))
        sq_ok &= sq_plus == reduce_mod1(vscale(2, t)) and sq_minus == (Fraction(0),) * r
    rep.add("SQUARES", sq_ok, samples)
    return rep
