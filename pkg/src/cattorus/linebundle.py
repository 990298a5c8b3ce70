"""The multiplicative bundle gerbe side of a categorical torus.

The pulled-back Poincare bundle L over T x T, its lift-dependent fiber
coordinates, the holonomy of its connection along piecewise linear loops,
the Looijenga line bundle with q kept formal, theta series and the weight
orbits of representations of H.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import (CircleElt, inverse, matvec, rand_circle, rand_ivec, rand_vec,
                    reduce_mod1, show, vadd, vscale, vsub)
from .lattice import LatticeData, LatticeError, enumerate_by_norm, isometry_group
from .xmod import Report, trial_rng


class LiftError(ValueError):
    pass


def _check_lift(base, lift):
    if reduce_mod1(lift) != reduce_mod1(base):
        raise LiftError(f"{show(lift)} is not a lift of {show(base)}")


# the bundle L and its gerbe product -------------------------------------------------

def lift_change_phase(lat: LatticeData, m, y) -> CircleElt:
    """Fiber coordinates at lifts (x + m, y) versus (x, y) differ by [-J(m, y)]."""
    return CircleElt(-lat.J(m, y))


def gerbe_cocycle(lat: LatticeData, s, t, lifts) -> CircleElt:
    """Transition phase from the canonical lifts of (s, t) to the given lifts."""
    x, y = lifts
    _check_lift(s, x)
    _check_lift(t, y)
    m = vsub(x, reduce_mod1(s))
    return lift_change_phase(lat, m, reduce_mod1(t))


def associator_phase(lat: LatticeData, x, y, z) -> Fraction:
    """The structure map L_{s,t} L_{st,u} -> L_{t,u} L_{s,tu} in lifted coordinates.

    J(x, y) + J(x + y, z) - J(y, z) - J(x, y + z), identically 0.
    """
    J = lat.J
    return J(x, y) + J(vadd(x, y), z) - J(y, z) - J(x, vadd(y, z))


def structure_phase(lat: LatticeData, s, t, u) -> CircleElt:
    """The same structure map read in the canonical fiber coordinates.

    Products are lifted by sums of canonical lifts; each factor is then moved
    to its canonical lift with ``gerbe_cocycle``.
    """
    s, t, u = reduce_mod1(s), reduce_mod1(t), reduce_mod1(u)
    st, tu = vadd(s, t), vadd(t, u)
    lhs = gerbe_cocycle(lat, s, t, (s, t)) + gerbe_cocycle(lat, reduce_mod1(st), u, (st, u))
    rhs = gerbe_cocycle(lat, t, u, (t, u)) + gerbe_cocycle(lat, s, reduce_mod1(tu), (s, tu))
    return lhs - rhs


def structure_coboundary(lat: LatticeData, s, t, u, v) -> CircleElt:
    """d omega(s, t, u, v) for omega = structure_phase; vanishes for a coherent product."""
    add = lambda a, b: reduce_mod1(vadd(a, b))  # noqa: E731
    w = lambda a, b, c: structure_phase(lat, a, b, c)  # noqa: E731
    return (w(t, u, v) - w(add(s, t), u, v) + w(s, add(t, u), v)
            - w(s, t, add(u, v)) + w(s, t, u))


def gerbe_check(lat: LatticeData, samples: int = 200, seed=0) -> Report:
    r = lat.rank
    rep = Report(f"gerbe {lat.name}")
    bad = dict.fromkeys(("LIFT", "ASSOC", "WELL_DEFINED", "COCYCLE"))
    for i in range(samples):
        rng = trial_rng(seed, "gerbe", i)
        x, y, z = (rand_vec(rng, r, 12, 3) for _ in range(3))
        m, n, p = (rand_ivec(rng, r, 4) for _ in range(3))
        # the lift change is well defined up to integers and composes additively
        a = gerbe_cocycle(lat, x, y, (vadd(x, m), vadd(y, n)))
        b = gerbe_cocycle(lat, x, y, (x, y)) + lift_change_phase(lat, m, y)
        if reduce_mod1(x) == x and a != b and bad["LIFT"] is None:
            bad["LIFT"] = f"x={show(x)}; m={show(m)}"
        if associator_phase(lat, x, y, z) != 0 and bad["ASSOC"] is None:
            bad["ASSOC"] = f"x={show(x)}; y={show(y)}; z={show(z)}"
        # changing any lift changes both sides of the structure map equally
        sides = []
        for dx, dy, dz in ((m, (0,) * r, (0,) * r), ((0,) * r, n, (0,) * r), ((0,) * r, (0,) * r, p)):
            x2, y2, z2 = vadd(x, dx), vadd(y, dy), vadd(z, dz)
            left = lift_change_phase(lat, dx, y) + lift_change_phase(lat, vadd(dx, dy), z)
            right = lift_change_phase(lat, dy, z) + lift_change_phase(lat, dx, vadd(y, z))
            sides.append((left - right).is_zero() and associator_phase(lat, x2, y2, z2) == 0)
        if not all(sides) and bad["WELL_DEFINED"] is None:
            bad["WELL_DEFINED"] = f"x={show(x)}; y={show(y)}; z={show(z)}"
        v = rand_vec(rng, r, 12, 3)
        if not structure_coboundary(lat, x, y, z, v).is_zero() and bad["COCYCLE"] is None:
            bad["COCYCLE"] = f"{show(x)}; {show(y)}; {show(z)}; {show(v)}"
    for key, val in bad.items():
        rep.add(key, val is None, samples, val or "")
    return rep


# piecewise linear loops and holonomy -------------------------------------------------

@dataclass(frozen=True)
class PLPath:
    """Linear interpolation between (time, point) breakpoints, times 0 = t_0 < ... < t_k = 1."""

    breakpoints: tuple

    def __post_init__(self):
        bps = tuple((Fraction(t), tuple(Fraction(v) for v in p)) for t, p in self.breakpoints)
        if len(bps) < 2 or bps[0][0] != 0 or bps[-1][0] != 1:
            raise ValueError("breakpoints must start at time 0 and end at time 1")
        if any(a[0] >= b[0] for a, b in zip(bps, bps[1:])):
            raise ValueError("breakpoint times must increase strictly")
        object.__setattr__(self, "breakpoints", bps)

    @property
    def times(self):
        return [t for t, _ in self.breakpoints]

    @property
    def delta(self):
        return vsub(self.breakpoints[-1][1], self.breakpoints[0][1])

    def is_loop(self) -> bool:
        return all(v.denominator == 1 for v in self.delta)

    def __call__(self, t):
        t = Fraction(t)
        for (a, p), (b, q) in zip(self.breakpoints, self.breakpoints[1:]):
            if a <= t <= b:
                return vadd(p, vscale((t - a) / (b - a), vsub(q, p)))
        raise ValueError(f"time {t} outside [0, 1]")

    def velocity(self, t0, t1):
        """Constant velocity on a subinterval inside one segment."""
        return vscale(1 / (t1 - t0), vsub(self(t1), self(t0)))

    def refine(self, times) -> "PLPath":
        ts = sorted(set(self.times) | {Fraction(t) for t in times})
        return PLPath(tuple((t, self(t)) for t in ts))


def straight_path(start, end) -> PLPath:
    return PLPath(((0, start), (1, end)))


def constant_path(point) -> PLPath:
    return PLPath(((0, point), (1, point)))


def reparametrize(path: PLPath, phi: PLPath) -> PLPath:
    """path o phi for a monotone piecewise linear phi: [0, 1] -> [0, 1] fixing the ends."""
    vals = [p[0] for _, p in phi.breakpoints]
    if vals[0] != 0 or vals[-1] != 1 or any(a >= b for a, b in zip(vals, vals[1:])):
        raise ValueError("reparametrization must be increasing from 0 to 1")
    ts = set(phi.times)
    for u in path.times:
        for (a, p), (b, q) in zip(phi.breakpoints, phi.breakpoints[1:]):
            if p[0] <= u <= q[0]:
                ts.add(a + (u - p[0]) * (b - a) / (q[0] - p[0]))
                break
    ts = sorted(ts)
    return PLPath(tuple((t, path(phi(t)[0])) for t in ts))


def concatenate(f: PLPath, g: PLPath) -> PLPath:
    """f then g, each run at double speed; g is translated to start where f ends."""
    shift = vsub(f.breakpoints[-1][1], g.breakpoints[0][1])
    bps = [(t / 2, p) for t, p in f.breakpoints]
    bps += [((1 + t) / 2, vadd(p, shift)) for t, p in g.breakpoints[1:]]
    return PLPath(tuple(bps))


def holonomy(lat: LatticeData, f: PLPath, g: PLPath) -> CircleElt:
    """[int_0^1 J(f'(t), g(t)) dt - J(f(0), g(1) - g(0))], exact on merged segments."""
    if not (f.is_loop() and g.is_loop()):
        raise ValueError("holonomy needs loops in T")
    J = lat.J
    ts = sorted(set(f.times) | set(g.times))
    total = Fraction(0)
    for a, b in zip(ts, ts[1:]):
        v = f.velocity(a, b)
        w = g.velocity(a, b)
        h = b - a
        total += J(v, g(a)) * h + J(v, w) * h * h / 2
    total -= J(f(0), g.delta)
    return CircleElt(total)


def _random_loop(rng, r, pieces=3):
    start = rand_vec(rng, r, 6, 2)
    pts = [start] + [rand_vec(rng, r, 6, 2) for _ in range(pieces - 1)]
    pts.append(vadd(start, rand_ivec(rng, r, 2)))
    cuts = sorted({Fraction(rng.randint(1, 23), 24) for _ in range(pieces - 1)})
    spare = (Fraction(j, 25) for j in range(1, 25))
    while len(cuts) < pieces - 1:
        cuts = sorted(set(cuts) | {next(spare)})
    times = [Fraction(0)] + cuts + [Fraction(1)]
    return PLPath(tuple(zip(times, pts)))


def holonomy_check(lat: LatticeData, samples: int = 200, seed=0) -> Report:
    r = lat.rank
    rep = Report(f"holonomy {lat.name}")
    zero = (0,) * r
    basis = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    ok = all(holonomy(lat, constant_path(c), constant_path(d)).is_zero()
             for c in [zero] + basis for d in [zero] + basis)
    rep.add("CONSTANT", ok, (r + 1) ** 2)
    bad = None
    for m in basis:
        for n in basis:
            got = holonomy(lat, straight_path(zero, m), straight_path(zero, n))
            if got != CircleElt(Fraction(lat.J(m, n), 2)):
                bad = f"m={show(m)}; n={show(n)}; got={got!r}"
    rep.add("STRAIGHT", bad is None, r * r, bad or "")
    bad = None
    for i in range(samples):
        rng = trial_rng(seed, "wind", i)
        y, m = rand_vec(rng, r, 12, 3), basis[i % r]
        if holonomy(lat, straight_path(zero, m), constant_path(y)) != CircleElt(lat.J(m, y)):
            bad = bad or f"m={show(m)}; y={show(y)}"
    rep.add("WINDING", bad is None, samples, bad or "")
    bad = dict.fromkeys(("REFINE", "REPARAM", "CONCAT", "LIFT"))
    for i in range(samples):
        rng = trial_rng(seed, "hol", i)
        f, g = _random_loop(rng, r), _random_loop(rng, r)
        h = holonomy(lat, f, g)
        extra = [Fraction(rng.randint(1, 59), 60) for _ in range(3)]
        if holonomy(lat, f.refine(extra), g.refine(extra[:1])) != h and bad["REFINE"] is None:
            bad["REFINE"] = f"sample {i}"
        c = Fraction(rng.randint(1, 9), 10)
        phi = PLPath(((0, (0,)), (Fraction(1, 2), (c,)), (1, (1,))))
        if holonomy(lat, reparametrize(f, phi), reparametrize(g, phi)) != h and bad["REPARAM"] is None:
            bad["REPARAM"] = f"sample {i}; c={c}"
        f2, g2 = _random_loop(rng, r), _random_loop(rng, r)
        f2 = PLPath(tuple((t, vadd(p, vsub(f.breakpoints[-1][1], f2.breakpoints[0][1])))
                          for t, p in f2.breakpoints))
        g2 = PLPath(tuple((t, vadd(p, vsub(g.breakpoints[-1][1], g2.breakpoints[0][1])))
                          for t, p in g2.breakpoints))
        both = holonomy(lat, concatenate(f, f2), concatenate(g, g2))
        if both != h + holonomy(lat, f2, g2) and bad["CONCAT"] is None:
            bad["CONCAT"] = f"sample {i}"
        m, n = rand_ivec(rng, r, 3), rand_ivec(rng, r, 3)
        fm = PLPath(tuple((t, vadd(p, m)) for t, p in f.breakpoints))
        gn = PLPath(tuple((t, vadd(p, n)) for t, p in g.breakpoints))
        if holonomy(lat, fm, gn) != h and bad["LIFT"] is None:
            bad["LIFT"] = f"sample {i}"
    for key, val in bad.items():
        rep.add(key, val is None, samples, val or "")
    return rep


# the Looijenga line bundle, q formal ---------------------------------------------------

@dataclass(frozen=True)
class LooijengaPoint:
    """h = exp(tau x_tau + x_one) with value q^qexp e(phase)."""

    x_tau: tuple
    x_one: tuple
    qexp: Fraction
    phase: CircleElt


def looijenga_transport(lat: LatticeData, p: LooijengaPoint, m) -> LooijengaPoint:
    """(h, c) -> (h q^m, c e^{-I#(m)}(h) q^{-I(m, m)/2})."""
    return LooijengaPoint(vadd(p.x_tau, m), p.x_one,
                          p.qexp - Fraction(lat.I(m, m), 2) - lat.I(m, p.x_tau),
                          p.phase + CircleElt(-lat.I(m, p.x_one)))


def looijenga_of_inertia(lat: LatticeData, x, y, z) -> LooijengaPoint:
    """(x, t, z) -> (t q^x, z q^{-I(x, x)/2}) for t = exp(y)."""
    z = z if isinstance(z, CircleElt) else CircleElt(z)
    return LooijengaPoint(tuple(x), tuple(y), -Fraction(lat.I(x, x), 2), z)


def looijenga_same_point(a: LooijengaPoint, b: LooijengaPoint) -> bool:
    """Equal as points of T_C x C: x_tau equal, x_one equal mod the lattice."""
    return (a.x_tau == b.x_tau and reduce_mod1(a.x_one) == reduce_mod1(b.x_one)
            and a.qexp == b.qexp and a.phase == b.phase)


def looijenga_iso_check(lat: LatticeData, samples: int = 500, seed=0) -> Report:
    r = lat.rank
    rep = Report(f"Looijenga {lat.name}")
    bad = dict.fromkeys(("ACTION", "UNIT", "RELATION", "LIFT", "EVEN"))
    for i in range(samples):
        rng = trial_rng(seed, "loo", i)
        x, y = rand_vec(rng, r, 12, 3), rand_vec(rng, r, 12, 3)
        z = rand_circle(rng)
        p = LooijengaPoint(x, y, Fraction(rng.randint(-50, 50), rng.randint(1, 12)), z)
        m, m2 = rand_ivec(rng, r, 4), rand_ivec(rng, r, 4)
        if (looijenga_transport(lat, looijenga_transport(lat, p, m), m2)
                != looijenga_transport(lat, p, vadd(m, m2))) and bad["ACTION"] is None:
            bad["ACTION"] = f"x={show(x)}; m={show(m)}; m'={show(m2)}"
        if looijenga_transport(lat, p, (0,) * r) != p and bad["UNIT"] is None:
            bad["UNIT"] = f"x={show(x)}"
        # (x + m, s, z) ~ (x, s, z + I(m, y)) goes to the Looijenga relation for m
        lhs = looijenga_of_inertia(lat, vadd(x, m), y, z)
        rhs = looijenga_transport(lat, looijenga_of_inertia(lat, x, y, z + CircleElt(lat.I(m, y))), m)
        if not looijenga_same_point(lhs, rhs) and bad["RELATION"] is None:
            bad["RELATION"] = f"x={show(x)}; y={show(y)}; m={show(m)}"
        # another lift of s: the phase of the relation changes by integers only
        n = rand_ivec(rng, r, 4)
        a = looijenga_transport(lat, looijenga_of_inertia(lat, x, y, z), m)
        b = looijenga_transport(lat, looijenga_of_inertia(lat, x, vadd(y, n), z), m)
        if not looijenga_same_point(a, b) and bad["LIFT"] is None:
            bad["LIFT"] = f"y={show(y)}; n={show(n)}"
        # on integral points the q-exponent stays integral: the form is even
        q = looijenga_transport(lat, LooijengaPoint((0,) * r, y, Fraction(0), z), m)
        if q.qexp.denominator != 1 and bad["EVEN"] is None:
            bad["EVEN"] = f"m={show(m)}"
    for key, val in bad.items():
        rep.add(key, val is None, samples, val or "")
    return rep


# theta series and weight orbits -------------------------------------------------------

@dataclass
class ThetaSeries:
    coefficients: dict = field(default_factory=dict)   # halfnorm -> count
    refined: dict | None = None                        # (halfnorm, weight) -> count

    def counts(self, upto: int):
        return [self.coefficients.get(k, 0) for k in range(upto + 1)]

    def lines(self) -> str:
        out = [f"{k}\t{v}" for k, v in sorted(self.coefficients.items())]
        if self.refined:
            out += [f"{k}\t{show(w)}\t{v}" for (k, w), v in sorted(self.refined.items())]
        return "\n".join(out) + "\n"


def theta_series(lat: LatticeData, max_halfnorm: int, shift=None, k: int | None = None) -> ThetaSeries:
    """Counts of coweights per half-norm; with ``shift``/``k`` also the weights shift - k I#(m)."""
    if lat.rank == 0:
        return ThetaSeries({0: 1}, {(0, ()): 1} if shift is not None else None)
    if not lat.is_positive_definite:
        raise LatticeError("theta series needs a positive definite form")
    coeffs = {h: 0 for h in range(max_halfnorm + 1)}
    refined = {} if shift is not None else None
    kk = 1 if k is None else k
    for v, h in enumerate_by_norm(lat, max_halfnorm):
        coeffs[h] += 1
        if refined is not None:
            wt = vsub(tuple(shift), vscale(kk, lat.sharp_I(v)))
            refined[(h, wt)] = refined.get((h, wt), 0) + 1
    return ThetaSeries(coeffs, refined)


def theta_invariance(lat: LatticeData, max_halfnorm: int) -> bool:
    """Each isometry permutes every half-norm shell."""
    shells = {}
    for v, h in enumerate_by_norm(lat, max_halfnorm):
        shells.setdefault(h, set()).add(v)
    for f in isometry_group(lat):
        for shell in shells.values():
            if {tuple(matvec(f, v)) for v in shell} != shell:
                return False
    return True


@dataclass(frozen=True)
class WeightOrbit:
    k: int
    representative: tuple
    members: tuple        # weights of the table in this orbit, sorted
    multiplicity: int | None  # common multiplicity, None if it varies
    truncated: bool       # k != 0 and the window holds a single member


def _same_orbit(lat: LatticeData, inv_gram, a, b, k: int) -> bool:
    if k == 0:
        return a == b
    v = matvec(inv_gram, vsub(a, b))
    return all((x / k).denominator == 1 for x in v)


def class_function_decompose(lat: LatticeData, table: dict) -> list:
    """Group a weight table {(weight, k): multiplicity} into orbits lambda - k I#(m)."""
    inv_gram = inverse(lat.gramI)
    by_k = {}
    for (wt, k), mult in table.items():
        by_k.setdefault(k, {})[tuple(wt)] = mult
    out = []
    for k in sorted(by_k):
        rest = sorted(by_k[k])
        while rest:
            rep = rest[0]
            members = [w for w in rest if _same_orbit(lat, inv_gram, rep, w, k)]
            rest = [w for w in rest if w not in members]
            mults = {by_k[k][w] for w in members}
            out.append(WeightOrbit(k, rep, tuple(members),
                                   mults.pop() if len(mults) == 1 else None,
                                   k != 0 and len(members) == 1))
    return out


def orbit_in_window(lat: LatticeData, lam, k: int, bound: int) -> list:
    """Weights lambda - k I#(m) with every coordinate in [-bound, bound]."""
    if k == 0:
        return [tuple(lam)]
    inv_gram = inverse(lat.gramI)
    out = []
    for w in itertools.product(range(-bound, bound + 1), repeat=lat.rank):
        if _same_orbit(lat, inv_gram, tuple(lam), w, k):
            out.append(w)
    return out


def h_representation_table(lat: LatticeData, seeds: dict, bound: int) -> dict:
    """Weight table of a representation of H built from seed weights: constant along orbits."""
    table = {}
    for (lam, k), mult in seeds.items():
        for w in orbit_in_window(lat, lam, k, bound):
            table[(w, k)] = table.get((w, k), 0) + mult
    return table



def linebundle_suite(lat: LatticeData, samples: int = 200, seed=0) -> list:
    return [gerbe_check(lat, samples, seed), holonomy_check(lat, samples, seed),
            looijenga_iso_check(lat, samples, seed)]
