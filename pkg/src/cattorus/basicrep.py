"""The basic representation r_{k,n} and the centraliser of r_bas.

Holomorphic units on T are modelled by Laurent monomials c e^{2 pi i lambda},
automorphisms of T by translations composed with inversion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .actor_centre import (CentralizerElt, CrossedHom, centralizer_membership,
                           make_centralizer, maps_equal)
from .cattorus import make_extraspecial, make_theta_prime
from .exact import (SCALAR_ONE, Scalar, dot, rand_ivec, rand_scalar,
                    rand_vec, reduce_mod1, show, vadd, vneg, vscale)
from .lattice import LatticeData, LatticeError
from .xmod import Group, Report, XMod, XModHom, check_hom


@dataclass(frozen=True)
class LaurentUnit:
    """coeff * e^{2 pi i weight}, weight a character of T."""

    coeff: Scalar
    weight: tuple

    def __mul__(self, other):
        return LaurentUnit(self.coeff * other.coeff, vadd(self.weight, other.weight))

    def inv(self):
        return LaurentUnit(self.coeff.inv(), vneg(self.weight))

    def __repr__(self):
        return f"{self.coeff!r}*e^{show(self.weight)}"


@dataclass(frozen=True)
class TorusAut:
    """s -> trans * s^eps."""

    trans: tuple
    eps: int

    def __repr__(self):
        return f"T({show(self.trans)},{self.eps})"


def torus_aut(t, eps: int = 1) -> TorusAut:
    return TorusAut(reduce_mod1(t), eps)


def aut_mul(a: TorusAut, b: TorusAut) -> TorusAut:
    return TorusAut(reduce_mod1(vadd(a.trans, vscale(a.eps, b.trans))), a.eps * b.eps)


def aut_inv(a: TorusAut) -> TorusAut:
    return TorusAut(reduce_mod1(vscale(-a.eps, a.trans)), a.eps)


def unit_act(u: LaurentUnit, g: TorusAut) -> LaurentUnit:
    """Precomposition: (c e^w)(t s^eps) = c e^{2 pi i w(t)} e^{eps w}."""
    return LaurentUnit(u.coeff.times_phase(dot(u.weight, g.trans)), vscale(g.eps, u.weight))


def make_target(rank: int) -> XMod:
    """Units of functions on T acted on by translations and inversion; trivial boundary."""
    one_u = LaurentUnit(SCALAR_ONE, (0,) * rank)
    one_a = TorusAut((Fraction(0),) * rank, 1)
    G1 = Group("Units", one_u, lambda a, b: a * b, lambda a: a.inv(),
               sample=lambda rng: LaurentUnit(rand_scalar(rng), rand_ivec(rng, rank, 6)),
               fmt=repr)
    G0 = Group("T><{+-1}", one_a, aut_mul, aut_inv,
               sample=lambda rng: TorusAut(reduce_mod1(rand_vec(rng, rank)), rng.choice((1, -1))),
               special=[TorusAut((Fraction(0),) * rank, -1)], fmt=repr)
    return XMod(f"Aut(T^{rank})", G0, G1, unit_act, lambda u: one_a)


# the representation ----------------------------------------------------------

@dataclass
class RepHom:
    k: int
    n: int
    hom: XModHom


def make_rep(lat: LatticeData, k: int = 1, n: int = 1, mutate: str | None = None) -> RepHom:
    """r1(m, z) = z^{kn} e^{k J#(m)}, r0(x, eps) = exp(n x) o inv^eps.

    ``mutate="flat"`` uses J-flat in place of J-sharp (for negative tests).
    """
    src = make_theta_prime(lat, "scalar")
    dst = make_target(lat.rank)
    dual = lat.flat_J if mutate == "flat" else lat.sharp_J

    def f0(g):
        x, e = g
        return TorusAut(reduce_mod1(vscale(n, x)), e)

    def f1(a):
        m, z = a
        return LaurentUnit(z ** (k * n), vscale(k, dual(m)))

    return RepHom(k, n, XModHom(src, dst, f0, f1, name=f"r[{k},{n}]({lat.name})"))


def verify_rep(rep: RepHom, trials: int = 1000, seed=0, threads=None) -> Report:
    return check_hom(rep.hom, trials, seed, threads)


# closed-form crossed homs t x| {+-1} -> units ----------------------------------

_SCALE = 2 ** 40


def _symres(v: Fraction, mod: int) -> Fraction:
    v = v % mod
    return v - mod if v >= Fraction(mod, 2) else v


def fit_affine(chi, rank: int):
    """Closed form (coeff_e, linear phase_e, weight_e) per sign e, or None.

    The linear part is read off at e_i / 2^40 so that no information is lost
    mod 1; the fit is validated at two further points before it is trusted.
    """
    desc = []
    zero = (Fraction(0),) * rank
    for e in (1, -1):
        c = chi((zero, e))
        lin = []
        for i in range(rank):
            v = tuple(Fraction(int(i == j), _SCALE) for j in range(rank))
            u = chi((v, e))
            if u.weight != c.weight or u.coeff.mag != c.coeff.mag:
                return None
            lin.append(_symres((u.coeff.phase.rep - c.coeff.phase.rep) * _SCALE, _SCALE))
        desc.append((e, c.coeff, tuple(lin), c.weight))
    desc = tuple(desc)
    for e, coeff, lin, w in desc:
        for probe in (tuple(Fraction(3 + 2 * j, 7 + j) for j in range(rank)),
                      tuple(Fraction(-5 - j, 11) for j in range(rank))):
            if chi((probe, e)) != _eval_affine(desc, (probe, e)):
                return None
    return desc


def _eval_affine(desc, g):
    x, e = g
    for eps, coeff, lin, w in desc:
        if eps == e:
            return LaurentUnit(coeff.times_phase(dot(lin, x)), w)
    raise ValueError(e)


def normalizer(rank: int):
    def normalize(chi):
        if chi.descriptor is not None:
            return chi
        desc = fit_affine(chi, rank)
        if desc is None:
            return chi
        return _affine(desc)
    return normalize


def chi_closed(lat: LatticeData, n, iota: int, drop_iota=False, dual="flat") -> CrossedHom:
    """chi_(n,iota)(x, eps): sign eps^iota, phase J(x,n)/2, weight (eps-1)/2 J-flat(n)."""
    dmap = lat.flat_J if dual == "flat" else lat.sharp_J
    w = dmap(n)
    r = lat.rank
    lin = tuple(Fraction(lat.J(tuple(int(i == j) for j in range(r)), n), 2) for i in range(r))
    sign = Fraction(0) if drop_iota else Fraction(iota, 2)
    desc = ((1, SCALAR_ONE, lin, (0,) * r),
            (-1, Scalar(1, sign), lin, vneg(w)))
    return _affine(desc)


# the centraliser of r_bas ------------------------------------------------------

def _affine(desc) -> CrossedHom:
    return CrossedHom(lambda g: _eval_affine(desc, g), desc)


def affine_ops(n: int):
    """The centraliser operations on closed forms, for f0(x, eps) = (exp(n x), eps)."""

    def mul(ca, k: TorusAut, cb):
        out = []
        for (e, c1, l1, w1), (_, c2, l2, w2) in zip(ca.descriptor, cb.descriptor):
            out.append((e, c2 * c1.times_phase(dot(w1, k.trans)), vadd(l1, l2),
                        vadd(w2, vscale(k.eps, w1))))
        return _affine(tuple(out))

    def inv(ca, hi: TorusAut):
        out = []
        for e, c, l, w in ca.descriptor:
            out.append((e, c.times_phase(dot(w, hi.trans)).inv(), vneg(l), vscale(-hi.eps, w)))
        return _affine(tuple(out))

    def gamma(zeta: LaurentUnit):
        lin = tuple(Fraction(-n * v) for v in zeta.weight)
        return _affine(tuple((e, SCALAR_ONE, lin, vscale(1 - e, zeta.weight)) for e in (1, -1)))

    return {"mul": mul, "inv": inv, "gamma": gamma}


def centralizer_of_rep(rep: RepHom, closed: bool = True, lat: LatticeData | None = None) -> XMod:
    """C(r); with ``closed`` the group law runs on closed forms, else on closures plus fitting.

    Given ``lat`` (and r basic), C0 gets a sampler F0(n, iota) gamma(u).
    """
    lat_rank = len(rep.hom.dst.G0.one.trans)
    C = make_centralizer(rep.hom, normalize=normalizer(lat_rank),
                         closed=affine_ops(rep.n) if closed else None,
                         name=f"C({rep.hom.name})")
    if lat is not None and (rep.k, rep.n) == (1, 1):
        units = rep.hom.dst.G1

        def sample(rng):
            n = tuple(rng.randint(-3, 3) for _ in range(lat.rank))
            c = centralizer_member(lat, n, rng.randint(0, 1))
            return C.G0.mul(c, C.psi(units.sample(rng)))

        C.G0.sample = sample
    return C


def centralizer_member(lat: LatticeData, n, iota: int, drop_iota=False, dual="flat") -> CentralizerElt:
    """(exp(n/2), chi_(n, iota)) in C0(r_bas)."""
    h = TorusAut(reduce_mod1(tuple(Fraction(v, 2) for v in n)), 1)
    return CentralizerElt(h, chi_closed(lat, tuple(n), iota, drop_iota, dual))


def make_F(lat: LatticeData, mutate: str | None = None, closed: bool = True):
    """F: ESX -> C(r_bas), F0(n, iota) = (exp(n/2), chi), F1(m, z) = z e^{-J-flat(m)}.

    ``mutate``: "drop_iota" forgets the sign eps^iota, "swap" uses J-sharp
    for J-flat throughout.
    """
    rep = make_rep(lat)
    C = centralizer_of_rep(rep, closed)
    esx = make_extraspecial(lat)
    dual = "sharp" if mutate == "swap" else "flat"
    dmap = lat.sharp_J if mutate == "swap" else lat.flat_J
    drop = mutate == "drop_iota"

    def F0(g):
        return centralizer_member(lat, g[0], g[1], drop, dual)

    def F1(a):
        m, z = a
        return LaurentUnit(z, vneg(dmap(m)))

    wrap = C.info["wrap"]

    def sample_c0(rng):
        g = esx.G0.sample(rng)
        zeta = C.G1.sample(rng)
        return C.G0.mul(F0(g), C.psi(zeta))

    C.G0.sample = sample_c0
    C.G0.special = [F0((tuple(int(i == j) for j in range(lat.rank)), 0)) for i in range(lat.rank)]
    C.G0.special.append(F0(((0,) * lat.rank, 1)))
    C.G0.special.append(wrap(C.G0.one.h, C.G0.one.chi))
    return rep, C, esx, XModHom(esx, C, F0, F1, name=f"F({lat.name})")


def classes(lat: LatticeData):
    """Representatives (a, iota) of Lv~/2Lv, a in {0,1}^rank."""
    return [(a, i) for a in itertools.product((0, 1), repeat=lat.rank) for i in (0, 1)]


def _in_gamma_image(C: XMod, q: CentralizerElt, rank: int) -> bool:
    """Is q = gamma(zeta) for a monomial zeta?"""
    if q.h != C.G0.one.h:
        return False
    desc = q.chi.descriptor
    if desc is None:
        raise ValueError("centraliser element without closed form")
    lin = dict((e, l) for e, _, l, _ in desc)[1]
    lam = tuple(-v for v in lin)
    if any(v.denominator != 1 for v in lam):
        return False
    zeta = LaurentUnit(SCALAR_ONE, tuple(int(v) for v in lam))
    return maps_equal(None, None, q.chi, C.psi(zeta).chi)


def pi0_classes(lat: LatticeData, F: XModHom, C: XMod) -> list:
    """Greedy partition of the classes by equivalence modulo the image of gamma."""
    reps = []
    for c in classes(lat):
        img = F.f0(c)
        if not any(_in_gamma_image(C, C.G0.mul(C.G0.inv(F.f0(r)), img), lat.rank) for r in reps):
            reps.append(c)
    return reps


def verify_centralizer_theorem(lat: LatticeData, trials: int = 1000, seed=0,
                               threads=None, mutate: str | None = None,
                               max_rank: int = 4) -> Report:
    if lat.rank > max_rank:
        raise LatticeError(f"rank {lat.rank} above guard {max_rank}")
    rep, C, esx, F = make_F(lat, mutate)
    out = Report(f"centraliser theorem {lat.name}" + (f" [{mutate}]" if mutate else ""))
    out.extend(check_hom(F, trials, seed, threads), "F.")

    bad = None
    for c in classes(lat):
        r = centralizer_membership(rep.hom, F.f0(c))
        if not r.passed:
            bad = f"class={show(c)}; " + ",".join(x.axiom for x in r.results if x.status == "fail")
            break
    out.add("MEMBER", bad is None, len(classes(lat)), bad or "")

    # pi1: F1(0, z) = z is a constant unit, and the only invariant units are constants
    zs = [Scalar(Fraction(a, b), Fraction(c, 7)) for a, b, c in ((1, 1, 0), (2, 3, 1), (5, 2, 6))]
    ok = all(F.f1(((0,) * lat.rank, z)) == LaurentUnit(z, (0,) * lat.rank) for z in zs)
    out.add("PI1.F", ok, len(zs))
    pi1_bad = None
    for w in itertools.product((-1, 0, 1), repeat=lat.rank):
        u = LaurentUnit(Scalar(2, Fraction(1, 3)), w)
        inv = all(unit_act(u, g) == u for g in _aut_probes(lat.rank))
        if inv != all(v == 0 for v in w):
            pi1_bad = f"weight={show(w)}"
            break
    out.add("PI1.INVARIANT", pi1_bad is None, 3 ** lat.rank, pi1_bad or "")

    reps = pi0_classes(lat, F, C)
    expect = 2 ** (lat.rank + 1)
    out.add("PI0.COUNT", len(reps) == expect, 1, f"classes={len(reps)}; expected={expect}")

    # surjectivity in-model: translations commuting with all of the image are exp(n/2)
    cands = [TorusAut(tuple(Fraction(v, 4) for v in a), e)
             for a in itertools.product(range(4), repeat=lat.rank) for e in (1, -1)]
    comm = [h for h in cands if all(aut_mul(h, rep.hom.f0(s)) == aut_mul(rep.hom.f0(s), h)
                                    for s in rep.hom.src.G0.probes(4))]
    halves = {F.f0((a, 0)).h for a in itertools.product((0, 1), repeat=lat.rank)}
    out.add("PI0.SURJ", set(comm) == halves, len(cands), f"commuting={len(comm)}")
    return out


def _aut_probes(rank: int):
    pts = [TorusAut((Fraction(0),) * rank, -1)]
    for i in range(rank):
        pts.append(TorusAut(tuple(Fraction(int(i == j), 3) for j in range(rank)), 1))
        pts.append(TorusAut(tuple(Fraction(int(i == j), 5) for j in range(rank)), 1))
    return pts
