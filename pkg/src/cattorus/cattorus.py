"""Crossed modules built from lattice data.

``make_theta`` gives the categorical torus, ``make_theta_prime`` its
extension by the involution, ``make_extraspecial`` the crossed module
whose cokernel is the extraspecial 2-group (called ESX here).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .exact import (CIRCLE_ZERO, SCALAR_ONE, CircleElt, rand_circle, rand_ivec,
                    rand_scalar, rand_vec, reduce_mod1, show, vadd, vneg, vscale)
from .lattice import LatticeData, LatticeError, is_even
from .xmod import Group, SArrow, XMod


# coefficient groups ----------------------------------------------------------

@dataclass(frozen=True)
class Coeff:
    """U(1), C^x or the unreduced lift R, all written multiplicatively."""

    name: str
    one: object
    mul: object
    inv: object
    shift: object  # (c, r) -> c * exp(2 pi i r)
    sample: object


CIRCLE = Coeff("U1", CIRCLE_ZERO, lambda a, b: a + b, lambda a: -a,
               lambda a, r: a + CircleElt(r), rand_circle)
SCALAR = Coeff("Cx", SCALAR_ONE, lambda a, b: a * b, lambda a: a.inv(),
               lambda a, r: a.times_phase(r), rand_scalar)
LIFT = Coeff("R", Fraction(0), lambda a, b: a + b, lambda a: -a,
             lambda a, r: a + r, lambda rng: Fraction(rng.randint(-600, 600), rng.randint(1, 60)))

COEFFS = {"circle": CIRCLE, "scalar": SCALAR, "lift": LIFT}


def _coeff(c) -> Coeff:
    return COEFFS[c] if isinstance(c, str) else c


# basic groups ----------------------------------------------------------------

def tvec_group(rank: int, name: str = "t") -> Group:
    zero = (Fraction(0),) * rank
    special = []
    for i in range(rank):
        e = [Fraction(0)] * rank
        e[i] = Fraction(1)
        special.append(tuple(e))
        e[i] = Fraction(1, 2)
        special.append(tuple(e))
    return Group(name, zero, vadd, vneg, sample=lambda rng: rand_vec(rng, rank),
                 special=special, fmt=show)


def coweight_group(rank: int, name: str = "Lv") -> Group:
    zero = (0,) * rank
    special = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
    return Group(name, zero, vadd, vneg, sample=lambda rng: rand_ivec(rng, rank),
                 special=special, fmt=show)


def torus_group(rank: int, name: str = "T") -> Group:
    """T = t / Lv with canonical representatives in [0, 1)^rank."""
    zero = (Fraction(0),) * rank
    return Group(name, zero, lambda a, b: reduce_mod1(vadd(a, b)),
                 lambda a: reduce_mod1(vneg(a)),
                 sample=lambda rng: reduce_mod1(rand_vec(rng, rank)), fmt=show)


def exp_t(x):
    """The exponential t -> T."""
    return reduce_mod1(x)


def label_group(lat: LatticeData, coeff, name: str) -> Group:
    """Lv x U(1) (or Lv x C^x) with componentwise product."""
    c = _coeff(coeff)
    r = lat.rank
    zero = ((0,) * r, c.one)
    special = [(tuple(int(i == j) for j in range(r)), c.one) for i in range(r)]
    return Group(
        name, zero,
        lambda a, b: (vadd(a[0], b[0]), c.mul(a[1], b[1])),
        lambda a: (vneg(a[0]), c.inv(a[1])),
        sample=lambda rng: (rand_ivec(rng, r), c.sample(rng)),
        special=special, fmt=show)


def signed_tvec_group(rank: int, name: str = "t><{+-1}") -> Group:
    """t x| {+-1} with (x, e)(y, d) = (x + e y, e d)."""
    zero = ((Fraction(0),) * rank, 1)
    special = [((Fraction(0),) * rank, -1)]
    for i in range(rank):
        e = [Fraction(0)] * rank
        e[i] = Fraction(1)
        special.append((tuple(e), 1))
        special.append((tuple(e), -1))
    return Group(
        name, zero,
        lambda a, b: (vadd(a[0], vscale(a[1], b[0])), a[1] * b[1]),
        lambda a: (vscale(-a[1], a[0]), a[1]),
        sample=lambda rng: (rand_vec(rng, rank), rng.choice((1, -1))),
        special=special, fmt=show)


# Theta and Theta' --------------------------------------------------------------

def _require_even(lat: LatticeData):
    if not is_even(lat):
        raise LatticeError("form is not even")


def make_theta(lat: LatticeData, coeff="circle") -> XMod:
    """Lv x U(1) -> t, (m, z) -> m, with (m, [a])^x = (m, [a + J(m, x)])."""
    _require_even(lat)
    c = _coeff(coeff)
    G0 = tvec_group(lat.rank)
    G1 = label_group(lat, c, "Lv x " + c.name)
    J = lat.J

    def act(alpha, x):
        m, a = alpha
        return (m, c.shift(a, J(m, x)))

    def psi(alpha):
        return tuple(Fraction(v) for v in alpha[0])

    info = {"pi0": {"group": "T", "description": "t / Lv"},
            "pi1": {"group": c.name, "description": "kernel {0} x " + c.name},
            "coeff": c}
    return XMod(f"Theta[{lat.name}]", G0, G1, act, psi, info)


def make_theta_prime(lat: LatticeData, coeff="circle") -> XMod:
    """Lv x U(1) -> t x| {+-1} with (m, [a])^(x, e) = (e m, [a + J(m, x)])."""
    _require_even(lat)
    c = _coeff(coeff)
    G0 = signed_tvec_group(lat.rank)
    G1 = label_group(lat, c, "Lv x " + c.name)
    J = lat.J

    def act(alpha, g):
        m, a = alpha
        x, e = g
        return (m if e == 1 else vneg(m), c.shift(a, J(m, x)))

    def psi(alpha):
        return (tuple(Fraction(v) for v in alpha[0]), 1)

    info = {"pi0": {"group": "T x| {+-1}"},
            "pi1": {"group": c.name}, "coeff": c}
    return XMod(f"Theta'[{lat.name}]", G0, G1, act, psi, info)


def involution(theta_prime: XMod, arrow: SArrow) -> SArrow:
    """Conjugation by (0, -1) on an arrow of S(Theta) inside S(Theta')."""
    x, m_lab = arrow.src, arrow.lab
    flip = theta_prime.G0.inv((tuple(0 for _ in x), -1))
    g = theta_prime.G0
    src = g.prod((tuple(0 for _ in x), -1), (x, 1), flip)
    return SArrow(src[0], theta_prime.act(m_lab, flip))


def theta_arrow(x, m, a) -> SArrow:
    """The arrow x -> x + m of S(Theta) labelled [a]."""
    return SArrow(tuple(Fraction(v) for v in x), (tuple(m), CircleElt(a)))


def two_torsion(lat: LatticeData):
    return [tuple(Fraction(v, 2) for v in n)
            for n in itertools.product((0, 1), repeat=lat.rank)]


# extraspecial crossed module ----------------------------------------------------

def ext_mul(lat: LatticeData):
    """Product on Lv~ with cocycle (m, n) -> J(n, m) mod 2."""
    J = lat.J

    def mul(a, b):
        return (vadd(a[0], b[0]), (a[1] + b[1] + J(b[0], a[0])) % 2)
    return mul


def ext_inv(lat: LatticeData):
    J = lat.J

    def inv(a):
        return (vneg(a[0]), (a[1] + J(a[0], a[0])) % 2)
    return inv


def ext_group(lat: LatticeData, name: str = "Lv~") -> Group:
    r = lat.rank
    special = [(tuple(int(i == j) for j in range(r)), 0) for i in range(r)] + [((0,) * r, 1)]
    return Group(name, ((0,) * r, 0), ext_mul(lat), ext_inv(lat),
                 sample=lambda rng: (rand_ivec(rng, r), rng.randint(0, 1)),
                 special=special, fmt=show)


def make_extraspecial(lat: LatticeData) -> XMod:
    """Lv x C^x -> Lv~, (m, z) -> (2m, 0), (m, z)^(n, i) = (m, (-1)^J(n,m) z)."""
    _require_even(lat)
    G0 = ext_group(lat)
    G1 = label_group(lat, SCALAR, "Lv x Cx")
    J = lat.J

    def act(alpha, g):
        m, z = alpha
        return (m, z.times_phase(Fraction(J(g[0], m), 2)))

    def psi(alpha):
        return (tuple(2 * v for v in alpha[0]), 0)

    info = {"pi0": {"group": "Lv~/2Lv", "order": 2 ** (lat.rank + 1)},
            "pi1": {"group": "Cx", "description": "kernel {0} x Cx"}}
    return XMod(f"ESX[{lat.name}]", G0, G1, act, psi, info)


@dataclass
class FiniteGroup:
    elements: list
    table: dict  # (a, b) -> a*b

    def mul(self, a, b):
        return self.table[(a, b)]

    @property
    def one(self):
        for e in self.elements:
            if all(self.table[(e, a)] == a for a in self.elements):
                return e
        raise ValueError("no identity")

    def inv(self, a):
        one = self.one
        return next(b for b in self.elements if self.table[(a, b)] == one)

    def order_of(self, a) -> int:
        k, p = 1, a
        one = self.one
        while p != one:
            p = self.table[(p, a)]
            k += 1
        return k

    def centre(self):
        return [z for z in self.elements
                if all(self.table[(z, a)] == self.table[(a, z)] for a in self.elements)]

    def commutator(self, a, b):
        return self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))

    def commutator_subgroup(self):
        gens = {self.commutator(a, b) for a in self.elements for b in self.elements}
        sub = set(gens) | {self.one}
        changed = True
        while changed:
            changed = False
            for a in list(sub):
                for b in list(sub):
                    p = self.mul(a, b)
                    if p not in sub:
                        sub.add(p)
                        changed = True
        return sorted(sub)

    def is_abelian(self) -> bool:
        return all(self.table[(a, b)] == self.table[(b, a)]
                   for a in self.elements for b in self.elements)


def extraspecial_group(lat: LatticeData, max_rank: int = 10) -> FiniteGroup:
    """The finite group Lv~/2Lv of order 2^(rank+1)."""
    _require_even(lat)
    if lat.rank > max_rank:
        raise LatticeError(f"rank {lat.rank} above table guard {max_rank}")
    mul = ext_mul(lat)
    elems = [(a, i) for a in itertools.product((0, 1), repeat=lat.rank) for i in (0, 1)]
    table = {}
    for a in elems:
        for b in elems:
            v, i = mul(a, b)
            table[(a, b)] = (tuple(x % 2 for x in v), i)
    return FiniteGroup(elems, table)


def extraspecial_relations(lat: LatticeData) -> str:
    """Generator-relation text with generators e1..er and central z."""
    G = extraspecial_group(lat)
    r = lat.rank
    e = [(tuple(int(i == j) for j in range(r)), 0) for i in range(r)]
    z = ((0,) * r, 1)
    gen = [f"e{i + 1}" for i in range(r)] + ["z"]
    lines = ["generators: " + " ".join(gen), "relations:", "  z^2 = 1"]
    for i in range(r):
        lines.append(f"  z*e{i + 1} = e{i + 1}*z")
    for i in range(r):
        sq = G.mul(e[i], e[i])
        lines.append(f"  e{i + 1}^2 = " + ("z" if sq == z else "1"))
    for i in range(r):
        for j in range(i + 1, r):
            c = G.commutator(e[i], e[j])
            lines.append(f"  e{i + 1}*e{j + 1}*e{i + 1}^-1*e{j + 1}^-1 = " + ("z" if c == z else "1"))
    lines.append(f"order: {len(G.elements)}")
    return "\n".join(lines) + "\n"
