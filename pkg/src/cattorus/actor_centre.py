"""Actor, centre, centraliser and weak actor of a crossed module.

Maps out of an infinite G0 are closures.  When a closed form is known it
rides along as ``descriptor`` and equality compares descriptors; otherwise
equality is extensional on seeded probe points.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .exact import inverse, matvec, show, vadd, vneg, vsub
from .xmod import (Group, Report, WeakMorphism, XMod, XModHom, weak_check,
                   weak_compose, weak_equal)

EXT_POINTS = 64


class CrossedHom:
    """A map G0 -> G1 (crossed hom, or merely pointed map in the weak actor)."""

    __slots__ = ("fn", "descriptor")

    def __init__(self, fn, descriptor=None):
        self.fn = fn
        self.descriptor = descriptor

    def __call__(self, x):
        return self.fn(x)

    def __repr__(self):
        return f"chi{self.descriptor}" if self.descriptor is not None else "chi<closure>"


PointedMap = CrossedHom


def ext_points(G0: Group, k: int = EXT_POINTS):
    return G0.probes(k)


def maps_equal(G0: Group, G1: Group, a, b, k: int = EXT_POINTS) -> bool:
    if getattr(a, "descriptor", None) is not None and getattr(b, "descriptor", None) is not None:
        return a.descriptor == b.descriptor
    return all(G1.eq(a(x), b(x)) for x in ext_points(G0, k))


def constant_one(x: XMod) -> CrossedHom:
    one = x.G1.one
    return CrossedHom(lambda g: one)


def cross_vcompose(x: XMod, a, b) -> CrossedHom:
    """(a o b)(g) = b(g) a(g psi(b(g)))."""
    G0, G1, psi = x.G0, x.G1, x.psi

    def fn(g):
        bg = b(g)
        return G1.mul(bg, a(G0.mul(g, psi(bg))))
    return CrossedHom(fn)


def is_crossed_hom(x: XMod, chi, trials: int = 32, seed=0) -> bool:
    G0, G1 = x.G0, x.G1
    pts = list(G0.special)
    rng = random.Random(f"{seed}:crossed")
    pts += [G0.sample(rng) for _ in range(trials)]
    for i, g in enumerate(pts):
        h = pts[(i * 7 + 3) % len(pts)]
        if not G1.eq(chi(G0.mul(g, h)), G1.mul(x.act(chi(g), h), chi(h))):
            return False
    return True


# the actor -------------------------------------------------------------------

class Auto:
    """An automorphism (f0, f1) of a crossed module, with inverses."""

    __slots__ = ("f0", "f1", "f0_inv", "f1_inv", "descriptor")

    def __init__(self, f0, f1, f0_inv, f1_inv, descriptor=None):
        self.f0, self.f1, self.f0_inv, self.f1_inv = f0, f1, f0_inv, f1_inv
        self.descriptor = descriptor

    def __repr__(self):
        return f"auto{self.descriptor}" if self.descriptor is not None else "auto<closure>"


def auto_compose(f: Auto, g: Auto) -> Auto:
    """f o g: apply g first."""
    return Auto(lambda v: f.f0(g.f0(v)), lambda a: f.f1(g.f1(a)),
                lambda v: g.f0_inv(f.f0_inv(v)), lambda a: g.f1_inv(f.f1_inv(a)))


def make_actor(x: XMod, k: int = 16) -> XMod:
    """Act(x): automorphisms acting on invertible crossed homs by f1^-1 o chi o f0."""
    G0, G1 = x.G0, x.G1
    ident = lambda v: v  # noqa: E731

    def auto_eq(f, g):
        return (all(G0.eq(f.f0(v), g.f0(v)) for v in G0.probes(k))
                and all(G1.eq(f.f1(a), g.f1(a)) for a in G1.probes(k)))

    A0 = Group(f"Aut({x.name})", Auto(ident, ident, ident, ident), auto_compose,
               lambda f: Auto(f.f0_inv, f.f1_inv, f.f0, f.f1), eq=auto_eq)

    A1 = Group(f"Cross({x.name})", constant_one(x), lambda a, b: cross_vcompose(x, a, b),
               None, eq=lambda a, b: maps_equal(G0, G1, a, b, k))

    def act(chi, f):
        return CrossedHom(lambda v: f.f1_inv(chi(f.f0(v))))

    def delta(chi):
        return Auto(lambda v: G0.mul(v, x.psi(chi(v))), lambda a: G1.mul(a, chi(x.psi(a))),
                    None, None)

    return XMod(f"Act({x.name})", A0, A1, act, delta)


def ad0(x: XMod, g) -> Auto:
    """Conjugation: (y -> g y g^-1, alpha -> alpha^(g^-1))."""
    G0 = x.G0
    gi = G0.inv(g)
    return Auto(lambda v: G0.prod(g, v, gi), lambda a: x.act(a, gi),
                lambda v: G0.prod(gi, v, g), lambda a: x.act(a, g), descriptor=None)


def ad1(x: XMod, alpha) -> CrossedHom:
    """chi_alpha(g) = alpha^g alpha^-1."""
    ai = x.G1.inv(alpha)
    return CrossedHom(lambda g: x.G1.mul(x.act(alpha, g), ai))


def adjoint_square(x: XMod) -> XModHom:
    act = make_actor(x)
    return XModHom(x, act, lambda g: ad0(x, g), lambda a: ad1(x, a), name=f"Ad({x.name})")


# centre ----------------------------------------------------------------------

class CentreElt:
    __slots__ = ("x", "xi")

    def __init__(self, x, xi):
        self.x, self.xi = x, xi

    def __repr__(self):
        return f"Z({self.x!r}, {self.xi!r})"


def is_centre_member(x: XMod, z: CentreElt, k: int = 16) -> bool:
    """Ad0(x^-1) = delta(xi) on probe points, and xi a crossed hom."""
    G0, G1 = x.G0, x.G1
    g = z.x
    gi = G0.inv(g)
    ok = all(G0.eq(G0.prod(gi, v, g), G0.mul(v, x.psi(z.xi(v)))) for v in G0.probes(k))
    ok = ok and all(G1.eq(x.act(a, g), G1.mul(a, z.xi(x.psi(a)))) for a in G1.probes(k))
    return ok and is_crossed_hom(x, z.xi)


def make_centre(x: XMod, sample_z0, describe=None, closed=None, k: int = 16,
                name=None) -> XMod:
    """Z(x) with zeta(alpha) = (psi alpha, Ad1(alpha^-1)) and alpha^(g, xi) = alpha^g.

    ``sample_z0`` draws elements of Z0 (the set cut out by is_centre_member);
    ``describe`` turns a crossed hom into a canonical descriptor when the
    instance admits one; ``closed`` supplies "mul" and "inv" on descriptors.
    """
    G0, G1 = x.G0, x.G1

    def wrap(g, fn):
        xi = CrossedHom(fn)
        if describe is not None:
            xi.descriptor = describe(xi)
        return CentreElt(g, xi)

    def mul(a, b):
        xa, xb = a.xi, b.xi
        y = b.x
        if closed is not None and xa.descriptor is not None and xb.descriptor is not None:
            return closed["mul"](a, b)
        return wrap(G0.mul(a.x, y), lambda z: G1.mul(xb(z), x.act(xa(z), y)))

    def inv(a):
        gi = G0.inv(a.x)
        xa = a.xi
        if closed is not None and xa.descriptor is not None:
            return closed["inv"](a)
        return wrap(gi, lambda z: G1.inv(x.act(xa(z), gi)))

    def eq(a, b):
        return G0.eq(a.x, b.x) and maps_equal(G0, G1, a.xi, b.xi, k)

    one = wrap(G0.one, lambda z: G1.one)
    Z0 = Group(f"Z0({x.name})", one, mul, inv, eq=eq, sample=sample_z0,
               fmt=lambda c: f"({G0.fmt(c.x)}; {c.xi!r})")

    def zeta(alpha):
        return wrap(x.psi(alpha), ad1(x, G1.inv(alpha)).fn)

    def act(alpha, c):
        return x.act(alpha, c.x)

    out = XMod(name or f"Z({x.name})", Z0, G1, act, zeta, dict(x.info))
    out.info["wrap"] = wrap
    return out


# centraliser -------------------------------------------------------------------

class CentralizerElt:
    __slots__ = ("h", "chi")

    def __init__(self, h, chi):
        self.h, self.chi = h, chi

    def __repr__(self):
        return f"C({self.h!r}, {self.chi!r})"


def centralizer_membership(f: XModHom, c: CentralizerElt, points=None, k: int = 16) -> Report:
    """The three defining equations of C0(f), on probe points."""
    S, D = f.src, f.dst
    H0, H1 = D.G0, D.G1
    h, chi = c.h, c.chi
    hi = H0.inv(h)
    rep = Report("centraliser membership")
    pts = points if points is not None else S.G0.probes(k)
    bad = next((s for s in pts if not H0.eq(
        D.psi(chi(s)), H0.prod(f.f0(S.G0.inv(s)), hi, f.f0(s), h))), None)
    rep.add("BOUNDARY", bad is None, len(pts), "" if bad is None else f"s={S.G0.fmt(bad)}")
    alphas = S.G1.probes(k)
    bad = next((a for a in alphas if not H1.eq(
        chi(S.psi(a)), H1.mul(f.f1(S.G1.inv(a)), D.act(f.f1(a), h)))), None)
    rep.add("LABEL", bad is None, len(alphas), "" if bad is None else f"alpha={S.G1.fmt(bad)}")
    bad = None
    for i, s in enumerate(pts):
        t = pts[(3 * i + 1) % len(pts)]
        if not H1.eq(chi(S.G0.mul(s, t)), H1.mul(D.act(chi(s), f.f0(t)), chi(t))):
            bad = (s, t)
            break
    rep.add("CROSSED", bad is None, len(pts),
            "" if bad is None else f"s={S.G0.fmt(bad[0])}; t={S.G0.fmt(bad[1])}")
    return rep


def make_centralizer(f: XModHom, sample_c0=None, normalize=None, closed=None,
                     k: int = 16, name=None) -> XMod:
    """C(f): gamma(zeta) = (psi zeta, s -> (zeta^f0(s))^-1 zeta), (h,chi)(k,sigma) = (hk, s -> sigma(s) chi(s)^k).

    ``normalize`` may replace a freshly built chi by a closed-form
    equivalent carrying a descriptor.  ``closed`` optionally supplies the
    same three operations ("mul", "inv", "gamma") directly on descriptors.
    """
    S, D = f.src, f.dst
    H0, H1 = D.G0, D.G1

    def wrap(h, fn):
        chi = CrossedHom(fn)
        if normalize is not None:
            chi = normalize(chi)
        return CentralizerElt(h, chi)

    def both_closed(*chis):
        return closed is not None and all(c.descriptor is not None for c in chis)

    def mul(a, b):
        ca, cb, kk = a.chi, b.chi, b.h
        if both_closed(ca, cb):
            return CentralizerElt(H0.mul(a.h, kk), closed["mul"](ca, kk, cb))
        return wrap(H0.mul(a.h, kk), lambda s: H1.mul(cb(s), D.act(ca(s), kk)))

    def inv(a):
        hi = H0.inv(a.h)
        ca = a.chi
        if both_closed(ca):
            return CentralizerElt(hi, closed["inv"](ca, hi))
        return wrap(hi, lambda s: H1.inv(D.act(ca(s), hi)))

    def eq(a, b):
        return H0.eq(a.h, b.h) and maps_equal(S.G0, H1, a.chi, b.chi, k)

    one = wrap(H0.one, lambda s: H1.one)
    C0 = Group(f"C0({f.name})", one, mul, inv, eq=eq, sample=sample_c0,
               fmt=lambda c: f"({H0.fmt(c.h)}; {c.chi!r})")

    def gamma(zeta):
        if closed is not None:
            return CentralizerElt(D.psi(zeta), closed["gamma"](zeta))
        return wrap(D.psi(zeta), lambda s: H1.mul(H1.inv(D.act(zeta, f.f0(s))), zeta))

    def act(zeta, c):
        return D.act(zeta, c.h)

    out = XMod(name or f"C({f.name})", C0, H1, act, gamma)
    out.info["wrap"] = wrap
    return out


def centre_to_centralizer(f: XModHom, Z: XMod, C: XMod) -> XModHom:
    """(s, xi) -> (f0 s, f1 o xi), identity-like f1 on labels."""
    wrap = C.info["wrap"]
    return XModHom(Z, C, lambda c: wrap(f.f0(c.x), lambda s: f.f1(c.xi(s))), f.f1,
                   name=f"Z->C({f.name})")


# weak actor ----------------------------------------------------------------

def affine_inverse(p0, rank: int, signed: bool):
    """Inverse of a map on t (or t x| {+-1}) that is affine on each sign component."""
    zero = (Fraction(0),) * rank
    basis = [tuple(Fraction(int(i == j)) for j in range(rank)) for i in range(rank)]
    comps = {}
    for eps in ((1, -1) if signed else (None,)):
        wrapv = (lambda v, e=eps: (v, e)) if signed else (lambda v: v)
        c = p0(wrapv(zero))
        cv, ce = (c[0], c[1]) if signed else (c, None)
        cols = []
        for b in basis:
            y = p0(wrapv(b))
            cols.append(vsub(y[0] if signed else y, cv))
        m = tuple(tuple(cols[j][i] for j in range(rank)) for i in range(rank))
        comps[ce] = (inverse(m) if rank else (), cv, eps)

    def inv(y):
        v, e = (y[0], y[1]) if signed else (y, None)
        minv, cv, eps = comps[e]
        x = matvec(minv, vsub(v, cv)) if rank else ()
        return (tuple(x), eps) if signed else tuple(x)
    return inv


def weak_actor_delta(x: XMod, eta, rank=None, signed=False, name="delta") -> WeakMorphism:
    """delta(eta): f0(g) = g psi(eta g), f1(a) = a eta(psi a), kappa = eta(y)^-1 (eta(x)^y)^-1 eta(xy)."""
    G0, G1, psi, act = x.G0, x.G1, x.psi, x.act

    def p0(g):
        return G0.mul(g, psi(eta(g)))

    def p1(a):
        return G1.mul(a, eta(psi(a)))

    def kappa(g, h):
        return G1.prod(G1.inv(eta(h)), G1.inv(act(eta(g), h)), eta(G0.mul(g, h)))

    p0_inv = p1_inv = None
    if rank is not None:
        p0_inv = affine_inverse(p0, rank, signed)
        p1_inv = lambda b: G1.mul(b, G1.inv(eta(p0_inv(psi(b)))))  # noqa: E731
    return WeakMorphism(x, x, p0, p1, kappa, p0_inv, p1_inv, name=name,
                        descriptor=getattr(eta, "descriptor", None))


def weak_act_on_pointed(x: XMod, eta, w: WeakMorphism) -> CrossedHom:
    """eta^(f,kappa)(g) = f1^-1(eta(f0 g) kappa(g, u)^-1), u = g^-1 f0^-1(f0(g) psi eta(f0 g))."""
    G0, G1 = x.G0, x.G1

    def fn(g):
        fg = w.p0(g)
        e = eta(fg)
        u = G0.mul(G0.inv(g), w.p0_inv(G0.mul(fg, x.psi(e))))
        return w.p1_inv(G1.mul(e, G1.inv(w.kappa(g, u))))
    return CrossedHom(fn)


def make_weak_actor(x: XMod, rank=None, signed=False, k: int = 6, pairs: int | None = None) -> XMod:
    """wAct(x): weak automorphisms (horizontal composition) and pointed maps (vertical composition)."""
    G0, G1 = x.G0, x.G1
    ident = lambda v: v  # noqa: E731
    one0 = WeakMorphism(x, x, ident, ident, p0_inv=ident, p1_inv=ident, name="id")
    W0 = Group(f"wAct0({x.name})", one0, weak_compose, None,
               eq=lambda f, g: weak_equal(f, g, k, pairs))
    W1 = Group(f"wAct1({x.name})", constant_one(x), lambda a, b: cross_vcompose(x, a, b),
               None, eq=lambda a, b: maps_equal(G0, G1, a, b, k))

    def delta(eta):
        return weak_actor_delta(x, eta, rank, signed)

    def act(eta, w):
        return weak_act_on_pointed(x, eta, w)

    return XMod(f"wAct({x.name})", W0, W1, act, delta)


def is_centre_preserving(w: WeakMorphism, kernel_points) -> bool:
    """Restriction to pi1 is the identity."""
    return all(w.dst.G1.eq(w.p1(a), a) for a in kernel_points)


def weak_hom_check(src: XMod, dst: XMod, a0, a1, kappa, trials: int, seed=0,
                   threads=None, name: str = "A") -> Report:
    """W1-W5 for a weak homomorphism (a0, a1, kappa) whose target may be a weak actor."""
    w = WeakMorphism(src, dst, a0, a1, kappa, name=name)
    return weak_check(w, trials, seed, threads)



# the centre of a categorical torus ------------------------------------------

_SCALE = 2 ** 40


def _symres(v: Fraction, mod: int) -> Fraction:
    v = v % mod
    return v - mod if v >= Fraction(mod, 2) else v


def linear_phase_descriptor(xi, rank: int, coeff_phase=lambda c: c.rep):
    """The functional l with xi(y) = (0, [l(y)]), read off at e_i / 2^40; None if xi is not of that shape."""
    zero = (0,) * rank
    ell = []
    for i in range(rank):
        m, c = xi(tuple(Fraction(int(i == j), _SCALE) for j in range(rank)))
        if tuple(m) != zero:
            return None
        ell.append(_symres(coeff_phase(c) * _SCALE, _SCALE))
    ell = tuple(ell)
    probe = tuple(Fraction(2 * j + 3, 5 + j) for j in range(rank))
    m, c = xi(probe)
    if tuple(m) != zero or coeff_phase(c) != sum(a * b for a, b in zip(ell, probe)) % 1:
        return None
    return ell


def theta_centre(theta: XMod, lat, closed: bool = True) -> XMod:
    """Z(Theta) with Z0 = t x Lambda: (x, lambda) is xi(y) = (0, [J(y, x) + lambda(y)]).

    The structure map is always the generic one; ``closed`` runs the Z0
    group law on descriptors, where xi(z)^y = xi(z) makes it additive.
    """
    from .exact import CircleElt, rand_ivec, rand_vec
    r = lat.rank
    basis = [tuple(int(i == j) for j in range(r)) for i in range(r)]

    def from_ell(x, ell):
        fn = lambda y: ((0,) * r, CircleElt(sum(a * b for a, b in zip(ell, y))))  # noqa: E731
        return CentreElt(x, CrossedHom(fn, tuple(ell)))

    def element(x, lam):
        return from_ell(x, tuple(lat.J(b, x) + lam[i] for i, b in enumerate(basis)))

    def sample(rng):
        return element(rand_vec(rng, r), rand_ivec(rng, r))

    ops = {"mul": lambda a, b: from_ell(vadd(a.x, b.x), vadd(a.xi.descriptor, b.xi.descriptor)),
           "inv": lambda a: from_ell(vneg(a.x), vneg(a.xi.descriptor))}
    Z = make_centre(theta, sample, describe=lambda xi: linear_phase_descriptor(xi, r),
                    closed=ops if closed else None, name=f"Z({theta.name})")
    Z.G0.special = [element(theta.G0.one, b) for b in basis]
    Z.info["element"] = element
    Z.info["pi0"] = {"group": "T x Lambda"}
    return Z


def centre_coordinates(lat, c: CentreElt):
    """(x, lambda) of a centre element of Theta, or None when xi has no closed form."""
    ell = c.xi.descriptor
    if ell is None:
        return None
    basis = [tuple(int(i == j) for j in range(lat.rank)) for i in range(lat.rank)]
    lam = tuple(ell[i] - lat.J(b, c.x) for i, b in enumerate(basis))
    return c.x, lam


def centre_lemma_check(lat, samples: int = 50, seed=0) -> Report:
    """Z(Theta) against its closed form: zeta(m, z) = (m, -I#(m)), action by [J(m, x)]."""
    from .cattorus import make_theta
    from .exact import CircleElt, rand_circle, rand_ivec, rand_vec
    from .xmod import trial_rng
    r = lat.rank
    theta = make_theta(lat)
    Z = theta_centre(theta, lat)
    rep = Report(f"centre lemma {lat.name}")
    gens = [(0,) * r] + [tuple(int(i == j) for j in range(r)) for i in range(r)]
    bad = None
    for m in gens:
        got = centre_coordinates(lat, Z.psi((m, CircleElt(Fraction(1, 3)))))
        want = (tuple(Fraction(v) for v in m), tuple(-v for v in lat.sharp_I(m)))
        if got != want:
            bad = bad or f"m={show(m)}; got={got}"
    rep.add("ZETA.GENERATORS", bad is None, len(gens), bad or "")
    bad = None
    for i in range(samples):
        rng = trial_rng(seed, "centre-lemma", i)
        m, z = rand_ivec(rng, r, 5), rand_circle(rng)
        got = centre_coordinates(lat, Z.psi((m, z)))
        if got != (tuple(Fraction(v) for v in m), tuple(-v for v in lat.sharp_I(m))):
            bad = bad or f"m={show(m)}"
        x, lam = rand_vec(rng, r), rand_ivec(rng, r)
        acted = Z.act((m, z), Z.info["element"](x, lam))
        if acted != (m, z + CircleElt(lat.J(m, x))):
            bad = bad or f"action m={show(m)}; x={show(x)}"
    rep.add("ZETA.SAMPLED", bad is None, samples, bad or "")
    return rep
