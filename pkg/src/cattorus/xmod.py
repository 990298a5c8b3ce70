"""Crossed modules, their strict categorical groups, and weak morphisms.

Actions are right actions written ``act(alpha, x)`` for alpha^x.  Every
check samples with an explicit seed and returns a ``Report`` instead of
raising, so suites can be merged.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Sequence


def trial_rng(seed, label: str, index: int) -> random.Random:
    return random.Random(f"{seed}:{label}:{index}")


def thread_count(default: int = 1) -> int:
    raw = os.environ.get("CATTORUS_THREADS")
    if not raw:
        return default
    try:
        return max(1, int(raw))
    except ValueError:
        return default


def run_trials(fn: Callable[[random.Random, int], Any], trials: int, seed,
               label: str, threads: Optional[int] = None) -> list:
    """Evaluate fn(rng, i) for each trial; output order never depends on threads."""
    threads = thread_count() if threads is None else threads
    if threads <= 1 or trials < 2:
        return [fn(trial_rng(seed, label, i), i) for i in range(trials)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda i: fn(trial_rng(seed, label, i), i), range(trials)))


class Group:
    """A group given by operations, with a seeded sampler for testing."""

    def __init__(self, name: str, one, mul, inv, eq=None, sample=None,
                 special: Sequence = (), fmt=repr, elements=None):
        self.name = name
        self.one = one
        self.mul = mul
        self.inv = inv
        self._eq = eq
        self.sample = sample
        self.special = list(special)
        self.fmt = fmt
        self.elements = elements
        self._probes = {}

    def eq(self, a, b) -> bool:
        if self._eq is None:
            return a == b
        return self._eq(a, b)

    def prod(self, *xs):
        out = self.one
        for x in xs:
            out = self.mul(out, x)
        return out

    def probes(self, k: int = 8):
        """Deterministic probe points: special elements then seeded samples."""
        if k not in self._probes:
            rng = random.Random(f"probe:{self.name}")
            pts = list(self.special)
            if self.sample is not None:
                pts += [self.sample(rng) for _ in range(k)]
            self._probes[k] = pts
        return self._probes[k]

    def __repr__(self):
        return f"Group({self.name})"


@dataclass
class XMod:
    name: str
    G0: Group
    G1: Group
    act: Callable
    psi: Callable
    info: dict = field(default_factory=dict)

    def source(self, arrow):
        return arrow.src

    def target(self, arrow):
        return self.G0.mul(arrow.src, self.psi(arrow.lab))


# reports ----------------------------------------------------------------------

@dataclass
class AxiomResult:
    axiom: str
    trials: int
    failures: int = 0
    witness: Optional[str] = None

    @property
    def status(self) -> str:
        return "pass" if self.failures == 0 else "fail"

    def record(self, ok: bool, witness: Callable[[], str]):
        self.trials += 1
        if not ok:
            self.failures += 1
            if self.witness is None:
                self.witness = witness()


@dataclass
class Report:
    title: str
    results: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.status == "pass" for r in self.results)

    def add(self, axiom: str, ok: bool, trials: int = 1, witness: str = "") -> AxiomResult:
        r = AxiomResult(axiom, trials, 0 if ok else 1, None if ok else (witness or "-"))
        self.results.append(r)
        return r

    def extend(self, other: "Report", prefix: str = ""):
        for r in other.results:
            self.results.append(AxiomResult(prefix + r.axiom, r.trials, r.failures, r.witness))
        return self

    def get(self, axiom: str) -> AxiomResult:
        for r in self.results:
            if r.axiom == axiom:
                return r
        raise KeyError(axiom)

    def render(self) -> str:
        lines = [f"# {self.title}"]
        for r in self.results:
            w = r.witness if r.witness is not None else "-"
            lines.append(f"{r.axiom}\t{r.trials}\t{r.status}\t{w}")
        return "\n".join(lines) + "\n"


def _collect(report: Report, names: Sequence[str], outcomes: list):
    """Fold per-trial outcome dicts {axiom: None | witness} into the report."""
    res = {n: AxiomResult(n, 0) for n in names}
    for out in outcomes:
        for n in names:
            if n in out:
                w = out[n]
                res[n].record(w is None, lambda w=w: w)
    report.results.extend(res[n] for n in names)
    return report


def _fmt(group, *xs):
    return ", ".join(group.fmt(x) for x in xs)


# crossed module axioms --------------------------------------------------------

CM_AXIOMS = ("HOM", "ACT", "CM1", "CM2")


def check_axioms(x: XMod, trials: int = 1000, seed=0, threads=None) -> Report:
    G0, G1, act, psi = x.G0, x.G1, x.act, x.psi

    def trial(rng, i):
        a, b = G1.sample(rng), G1.sample(rng)
        g, h = G0.sample(rng), G0.sample(rng)
        out = {}
        ok = G0.eq(psi(G1.mul(a, b)), G0.mul(psi(a), psi(b)))
        out["HOM"] = None if ok else f"alpha={G1.fmt(a)}; beta={G1.fmt(b)}"
        ok = (G1.eq(act(a, G0.mul(g, h)), act(act(a, g), h))
              and G1.eq(act(G1.mul(a, b), g), G1.mul(act(a, g), act(b, g))))
        out["ACT"] = None if ok else f"alpha={G1.fmt(a)}; beta={G1.fmt(b)}; x={G0.fmt(g)}; y={G0.fmt(h)}"
        ok = G0.eq(psi(act(a, g)), G0.prod(G0.inv(g), psi(a), g))
        out["CM1"] = None if ok else f"alpha={G1.fmt(a)}; x={G0.fmt(g)}"
        ok = G1.eq(act(b, psi(a)), G1.prod(G1.inv(a), b, a))
        out["CM2"] = None if ok else f"alpha={G1.fmt(a)}; beta={G1.fmt(b)}"
        return out

    rep = Report(f"axioms {x.name}")
    return _collect(rep, CM_AXIOMS, run_trials(trial, trials, seed, f"cm:{x.name}", threads))


# strict categorical group S(Psi) ---------------------------------------------

@dataclass(frozen=True)
class SArrow:
    src: Any
    lab: Any


class NotComposable(ValueError):
    pass


def s_identity(x: XMod, obj) -> SArrow:
    return SArrow(obj, x.G1.one)


def s_compose(x: XMod, a: SArrow, b: SArrow) -> SArrow:
    """First a, then b."""
    if not x.G0.eq(x.target(a), b.src):
        raise NotComposable("target of first arrow differs from source of second")
    return SArrow(a.src, x.G1.mul(a.lab, b.lab))


def s_inverse(x: XMod, a: SArrow) -> SArrow:
    return SArrow(x.target(a), x.G1.inv(a.lab))


def s_tensor(x: XMod, a: SArrow, b: SArrow) -> SArrow:
    """Product in the semidirect group G0 x G1 with (x,a)(y,b) = (xy, a^y b)."""
    return SArrow(x.G0.mul(a.src, b.src), x.G1.mul(x.act(a.lab, b.src), b.lab))


def arrows_equal(x: XMod, a: SArrow, b: SArrow) -> bool:
    return x.G0.eq(a.src, b.src) and x.G1.eq(a.lab, b.lab)


def _arrow_after(x: XMod, a: SArrow, rng) -> SArrow:
    return SArrow(x.target(a), x.G1.sample(rng))


def check_monoidal(x: XMod, trials: int = 1000, seed=0, threads=None) -> Report:
    """Interchange law, strict associativity and units in S(Psi)."""
    G0, G1 = x.G0, x.G1

    def trial(rng, i):
        a = SArrow(G0.sample(rng), G1.sample(rng))
        c = SArrow(G0.sample(rng), G1.sample(rng))
        b, d = _arrow_after(x, a, rng), _arrow_after(x, c, rng)
        e = SArrow(G0.sample(rng), G1.sample(rng))
        lhs = s_tensor(x, s_compose(x, a, b), s_compose(x, c, d))
        rhs = s_compose(x, s_tensor(x, a, c), s_tensor(x, b, d))
        out = {"INTERCHANGE": None if arrows_equal(x, lhs, rhs) else f"a={a}; b={b}; c={c}; d={d}"}
        l2 = s_tensor(x, s_tensor(x, a, c), e)
        r2 = s_tensor(x, a, s_tensor(x, c, e))
        out["ASSOC"] = None if arrows_equal(x, l2, r2) else f"a={a}; c={c}; e={e}"
        u = s_identity(x, G0.one)
        ok = arrows_equal(x, s_tensor(x, a, u), a) and arrows_equal(x, s_tensor(x, u, a), a)
        ok = ok and arrows_equal(x, s_compose(x, s_identity(x, a.src), a), a)
        ok = ok and arrows_equal(x, s_compose(x, a, s_inverse(x, a)), s_identity(x, a.src))
        out["UNIT"] = None if ok else f"a={a}"
        return out

    rep = Report(f"monoidal {x.name}")
    return _collect(rep, ("INTERCHANGE", "ASSOC", "UNIT"),
                    run_trials(trial, trials, seed, f"mon:{x.name}", threads))


# strict homomorphisms ---------------------------------------------------------

@dataclass
class XModHom:
    src: XMod
    dst: XMod
    f0: Callable
    f1: Callable
    name: str = "hom"


def check_hom(h: XModHom, trials: int = 1000, seed=0, threads=None) -> Report:
    S, D = h.src, h.dst

    def trial(rng, i):
        a, b = S.G1.sample(rng), S.G1.sample(rng)
        g, k = S.G0.sample(rng), S.G0.sample(rng)
        out = {}
        out["SQUARE"] = None if D.G0.eq(D.psi(h.f1(a)), h.f0(S.psi(a))) else f"alpha={S.G1.fmt(a)}"
        out["HOM0"] = None if D.G0.eq(h.f0(S.G0.mul(g, k)), D.G0.mul(h.f0(g), h.f0(k))) \
            else f"x={S.G0.fmt(g)}; y={S.G0.fmt(k)}"
        out["HOM1"] = None if D.G1.eq(h.f1(S.G1.mul(a, b)), D.G1.mul(h.f1(a), h.f1(b))) \
            else f"alpha={S.G1.fmt(a)}; beta={S.G1.fmt(b)}"
        out["EQUIV"] = None if D.G1.eq(h.f1(S.act(a, g)), D.act(h.f1(a), h.f0(g))) \
            else f"alpha={S.G1.fmt(a)}; x={S.G0.fmt(g)}"
        return out

    rep = Report(f"hom {h.name}")
    return _collect(rep, ("SQUARE", "HOM0", "HOM1", "EQUIV"),
                    run_trials(trial, trials, seed, f"hom:{h.name}", threads))


# weak morphisms ---------------------------------------------------------------

class WeakMorphism:
    """Pointed maps p0, p1 with Kuenneth cochain kappa: G0 x G0 -> H1.

    ``p0_inv`` and ``p1_inv`` are optional set-theoretic inverses; they are
    needed only when the morphism acts on pointed maps in the weak actor.
    """

    def __init__(self, src: XMod, dst: XMod, p0, p1, kappa=None,
                 p0_inv=None, p1_inv=None, name: str = "w", descriptor=None):
        self.src = src
        self.dst = dst
        self.p0 = p0
        self.p1 = p1
        self.kappa = kappa if kappa is not None else (lambda x, y: dst.G1.one)
        self.p0_inv = p0_inv
        self.p1_inv = p1_inv
        self.name = name
        self.descriptor = descriptor

    def kappa3(self, x, y, z):
        """kappa_{x,y,z}: the left side of the cocycle condition."""
        D = self.dst
        return D.G1.mul(D.act(self.kappa(x, y), self.p0(z)), self.kappa(self.src.G0.mul(x, y), z))

    def on_arrow(self, arrow: SArrow) -> SArrow:
        lab = self.dst.G1.mul(self.p1(arrow.lab), self.kappa(arrow.src, self.src.psi(arrow.lab)))
        return SArrow(self.p0(arrow.src), lab)

    def __repr__(self):
        if self.descriptor is not None:
            return f"<{self.name} {self.descriptor}>"
        return f"<{self.name}>"


def strict_as_weak(h: XModHom) -> WeakMorphism:
    return WeakMorphism(h.src, h.dst, h.f0, h.f1, name=h.name)


def identity_weak(x: XMod) -> WeakMorphism:
    ident = lambda v: v  # noqa: E731
    return WeakMorphism(x, x, ident, ident, p0_inv=ident, p1_inv=ident, name="id")


W_AXIOMS = ("W1", "W2", "W3", "W4", "W5", "UNIT")


def weak_check(w: WeakMorphism, trials: int = 1000, seed=0, threads=None,
               axioms: Sequence[str] = W_AXIOMS) -> Report:
    S, D = w.src, w.dst
    G0, G1, H0, H1 = S.G0, S.G1, D.G0, D.G1
    p0, p1, k = w.p0, w.p1, w.kappa
    want = set(axioms)

    def trial(rng, i):
        x, y, z = G0.sample(rng), G0.sample(rng), G0.sample(rng)
        a, b = G1.sample(rng), G1.sample(rng)
        out = {}
        if "W1" in want:
            ok = H0.eq(p0(S.psi(a)), D.psi(p1(a)))
            out["W1"] = None if ok else f"alpha={G1.fmt(a)}"
        if "W2" in want:
            ok = H0.eq(H0.prod(p0(x), p0(y), D.psi(k(x, y))), p0(G0.mul(x, y)))
            out["W2"] = None if ok else f"x={G0.fmt(x)}; y={G0.fmt(y)}"
        if "W3" in want:
            ok = H1.eq(H1.prod(p1(a), p1(b), k(S.psi(a), S.psi(b))), p1(G1.mul(a, b)))
            out["W3"] = None if ok else f"alpha={G1.fmt(a)}; beta={G1.fmt(b)}"
        if "W4" in want:
            lhs = H1.mul(D.act(k(x, y), p0(z)), k(G0.mul(x, y), z))
            rhs = H1.mul(k(y, z), k(x, G0.mul(y, z)))
            out["W4"] = None if H1.eq(lhs, rhs) else f"x={G0.fmt(x)}; y={G0.fmt(y)}; z={G0.fmt(z)}"
        if "W5" in want:
            ax = S.act(a, x)
            lhs = H1.mul(D.act(p1(a), p0(x)), k(S.psi(a), x))
            rhs = H1.mul(p1(ax), k(x, S.psi(ax)))
            out["W5"] = None if H1.eq(lhs, rhs) else f"alpha={G1.fmt(a)}; x={G0.fmt(x)}"
        if "UNIT" in want:
            e = G0.one
            ok = (H1.eq(k(e, e), H1.one) and H1.eq(k(x, e), H1.one)
                  and H1.eq(k(e, x), H1.one) and H0.eq(p0(e), H0.one)
                  and H1.eq(p1(G1.one), H1.one))
            out["UNIT"] = None if ok else f"x={G0.fmt(x)}"
        return out

    rep = Report(f"weak {w.name}")
    names = [n for n in W_AXIOMS if n in want]
    return _collect(rep, names, run_trials(trial, trials, seed, f"weak:{w.name}", threads))


class NotComposableMorphisms(ValueError):
    pass


def _memo(fn):
    """Cache on hashable arguments; composites re-evaluate inner maps many times."""
    cache = {}

    def wrapped(*args):
        try:
            return cache[args]
        except KeyError:
            out = cache[args] = fn(*args)
            if len(cache) > 4096:
                cache.pop(next(iter(cache)))
            return out
        except TypeError:
            return fn(*args)
    return wrapped


def weak_compose(f: WeakMorphism, g: WeakMorphism) -> WeakMorphism:
    """Horizontal composite f o g (first g, then f)."""
    if g.dst is not f.src:
        raise NotComposableMorphisms("codomain of g is not the domain of f")
    mid = f.src
    H1 = f.dst.G1

    def p0(x):
        return f.p0(g.p0(x))

    def p1(a):
        return f.p1(g.p1(a))

    def kappa(x, y):
        gam = g.kappa(x, y)
        return H1.mul(f.p1(gam), f.kappa3(g.p0(x), g.p0(y), mid.psi(gam)))

    p0_inv = p1_inv = None
    if f.p0_inv is not None and g.p0_inv is not None:
        p0_inv = lambda x: g.p0_inv(f.p0_inv(x))  # noqa: E731
    if f.p1_inv is not None and g.p1_inv is not None:
        p1_inv = lambda a: g.p1_inv(f.p1_inv(a))  # noqa: E731
    return WeakMorphism(g.src, f.dst, _memo(p0), _memo(p1), _memo(kappa), p0_inv, p1_inv,
                        name=f"{f.name}*{g.name}")


def weak_equal(f: WeakMorphism, g: WeakMorphism, k: int = 6, pairs: int | None = None) -> bool:
    """Extensional equality on the probe points of the source.

    kappa is compared on all pairs from ``pairs`` points: half special, half sampled.
    """
    S, D = f.src, f.dst
    p0s = S.G0.probes(k)
    if not all(D.G0.eq(f.p0(x), g.p0(x)) for x in p0s):
        return False
    if not all(D.G1.eq(f.p1(a), g.p1(a)) for a in S.G1.probes(k)):
        return False
    if pairs is None:
        pts = p0s[: max(3, k)]
    else:
        ns = len(S.G0.special)
        pts = p0s[: pairs // 2] + p0s[ns: ns + pairs - pairs // 2]
    return all(D.G1.eq(f.kappa(x, y), g.kappa(x, y)) for x in pts for y in pts)


def check_weak_compose(f: WeakMorphism, g: WeakMorphism, h: WeakMorphism,
                       trials: int = 200, seed=0) -> Report:
    """Sampled associativity of horizontal composition and the cocycle on composites."""
    fg_h = weak_compose(weak_compose(f, g), h)
    f_gh = weak_compose(f, weak_compose(g, h))
    rep = Report(f"compose {f.name},{g.name},{h.name}")
    S = h.src
    res = AxiomResult("ASSOC", 0)
    for i in range(trials):
        rng = trial_rng(seed, "wcomp", i)
        x, y = S.G0.sample(rng), S.G0.sample(rng)
        a = S.G1.sample(rng)
        ok = (fg_h.dst.G0.eq(fg_h.p0(x), f_gh.p0(x))
              and fg_h.dst.G1.eq(fg_h.p1(a), f_gh.p1(a))
              and fg_h.dst.G1.eq(fg_h.kappa(x, y), f_gh.kappa(x, y)))
        res.record(ok, lambda: f"x={S.G0.fmt(x)}; y={S.G0.fmt(y)}; alpha={S.G1.fmt(a)}")
    rep.results.append(res)
    rep.extend(weak_check(fg_h, trials, seed, axioms=("W2", "W4")), "composite.")
    return rep


def pi0(x: XMod):
    """Cokernel of the structure map: from instance metadata or enumeration."""
    if "pi0" in x.info:
        return x.info["pi0"]
    if x.G0.elements is None or x.G1.elements is None:
        raise ValueError("pi0 not computable for this instance")
    image = [x.psi(a) for a in x.G1.elements]
    classes = []
    for g in x.G0.elements:
        if not any(any(x.G0.eq(x.G0.mul(c, i), g) for i in image) for c in classes):
            classes.append(g)
    return {"order": len(classes), "representatives": classes}


def pi1(x: XMod):
    """Kernel of the structure map."""
    if "pi1" in x.info:
        return x.info["pi1"]
    if x.G1.elements is None:
        raise ValueError("pi1 not computable for this instance")
    ker = [a for a in x.G1.elements if x.G0.eq(x.psi(a), x.G0.one)]
    return {"order": len(ker), "elements": ker}
