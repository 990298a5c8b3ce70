"""Exact arithmetic substrate.

Rationals are ``fractions.Fraction``.  The circle group R/Z is modelled by
``CircleElt`` (rational representative in [0, 1)), nonzero complex numbers
by ``Scalar`` (positive rational magnitude times a circle phase).  Vectors
are tuples, matrices are tuples of row tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

Rational = Fraction
VecQ = Tuple[Fraction, ...]
VecZ = Tuple[int, ...]
MatZ = Tuple[Tuple[int, ...], ...]
MatQ = Tuple[Tuple[Fraction, ...], ...]

ONE_HALF = Fraction(1, 2)


def q(x) -> Fraction:
    """Coerce ints, strings like '3/4' and Fractions to a Fraction."""
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def frac_mod1(x: Fraction) -> Fraction:
    x = q(x)
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True, slots=True)
class CircleElt:
    """An element of Q/Z, stored by its representative in [0, 1)."""

    rep: Fraction

    def __init__(self, value=0):
        object.__setattr__(self, "rep", frac_mod1(q(value)))

    def __add__(self, other: "CircleElt") -> "CircleElt":
        return CircleElt(self.rep + other.rep)

    def __sub__(self, other: "CircleElt") -> "CircleElt":
        return CircleElt(self.rep - other.rep)

    def __neg__(self) -> "CircleElt":
        return CircleElt(-self.rep)

    def __mul__(self, k: int) -> "CircleElt":
        return CircleElt(self.rep * k)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.rep == 0

    def __repr__(self) -> str:
        return f"[{self.rep}]"


def circle_add(a: CircleElt, b: CircleElt) -> CircleElt:
    return a + b


CIRCLE_ZERO = CircleElt(0)


@dataclass(frozen=True, slots=True)
class Scalar:
    """A nonzero complex number ``mag * exp(2 pi i phase)`` with rational data."""

    mag: Fraction
    phase: CircleElt

    def __init__(self, mag=1, phase=0):
        mag = q(mag)
        if mag <= 0:
            raise ValueError("Scalar magnitude must be positive")
        if not isinstance(phase, CircleElt):
            phase = CircleElt(phase)
        object.__setattr__(self, "mag", mag)
        object.__setattr__(self, "phase", phase)

    def __mul__(self, other: "Scalar") -> "Scalar":
        return Scalar(self.mag * other.mag, self.phase + other.phase)

    def inv(self) -> "Scalar":
        return Scalar(1 / self.mag, -self.phase)

    def __truediv__(self, other: "Scalar") -> "Scalar":
        return self * other.inv()

    def __pow__(self, k: int) -> "Scalar":
        return Scalar(self.mag ** k, self.phase * k)

    def times_phase(self, a) -> "Scalar":
        """Multiply by exp(2 pi i a)."""
        return Scalar(self.mag, self.phase + CircleElt(a))

    def is_one(self) -> bool:
        return self.mag == 1 and self.phase.is_zero()

    def __repr__(self) -> str:
        if self.mag == 1:
            return f"e({self.phase.rep})"
        return f"{self.mag}*e({self.phase.rep})"


SCALAR_ONE = Scalar(1, 0)


# vectors and matrices -------------------------------------------------------

def vec(xs: Sequence) -> VecQ:
    return tuple(q(x) for x in xs)


def ivec(xs: Sequence) -> VecZ:
    out = []
    for x in xs:
        x = q(x)
        if x.denominator != 1:
            raise ValueError(f"not an integer vector: {xs}")
        out.append(int(x))
    return tuple(out)


def zeros(n: int) -> tuple:
    return (0,) * n


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vneg(a):
    return tuple(-x for x in a)


def vscale(c, a):
    return tuple(c * x for x in a)


def dot(a, b):
    s = 0
    for x, y in zip(a, b):
        s += x * y
    return s


def mat(rows: Sequence[Sequence]) -> MatZ:
    return tuple(tuple(int(v) for v in r) for r in rows)


def matq(rows: Sequence[Sequence]) -> MatQ:
    return tuple(tuple(q(v) for v in r) for r in rows)


def transpose(m):
    return tuple(zip(*m)) if m else ()


def matmul(a, b):
    bt = transpose(b)
    return tuple(tuple(dot(r, c) for c in bt) for r in a)


def matvec(m, v):
    return tuple(dot(r, v) for r in m)


def vecmat(v, m):
    """Row vector times matrix."""
    n = len(m[0]) if m else 0
    out = [0] * n
    for vi, row in zip(v, m):
        if vi:
            for j in range(n):
                out[j] += vi * row[j]
    return tuple(out)


def bilinear(m, x, y):
    """x^T m y."""
    s = 0
    for xi, row in zip(x, m):
        if xi:
            s += xi * dot(row, y)
    return s


def madd(a, b):
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def msub(a, b):
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a, b))


def mneg(a):
    return tuple(tuple(-x for x in r) for r in a)


def mscale(c, a):
    return tuple(tuple(c * x for x in r) for r in a)


def identity(n: int) -> MatZ:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zero_mat(n: int, m: int | None = None) -> MatZ:
    return tuple((0,) * (n if m is None else m) for _ in range(n))


def pullback(f, b):
    """f^*B, the form (x, y) -> B(f x, f y); f acts on column vectors."""
    return matmul(matmul(transpose(f), b), f)


def det(m) -> Fraction:
    """Determinant by exact Gaussian elimination."""
    n = len(m)
    if n == 0:
        return Fraction(1)
    a = [[q(v) for v in row] for row in m]
    sign = 1
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            sign = -sign
        piv = a[c][c]
        d *= piv
        for r in range(c + 1, n):
            if a[r][c]:
                f = a[r][c] / piv
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return sign * d


def inverse(m) -> MatQ:
    n = len(m)
    a = [[q(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return tuple(tuple(row[n:]) for row in a)


def int_inverse(m) -> MatZ:
    inv = inverse(m)
    if any(v.denominator != 1 for row in inv for v in row):
        raise ValueError("matrix is not invertible over Z")
    return tuple(tuple(int(v) for v in row) for row in inv)


def mat_is_unimodular(m) -> bool:
    if any(len(r) != len(m) for r in m):
        raise ValueError("matrix must be square")
    return det(m) in (1, -1)


def is_integral_vec(v) -> bool:
    return all(q(x).denominator == 1 for x in v)


def reduce_mod1(v) -> VecQ:
    return tuple(frac_mod1(x) for x in v)


def floor_vec(v) -> VecZ:
    return tuple(q(x).numerator // q(x).denominator for x in v)


def show(obj) -> str:
    """Compact deterministic rendering for reports and witnesses."""
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, bool):
        return str(int(obj))
    if isinstance(obj, (tuple, list)):
        return "(" + ",".join(show(o) for o in obj) + ")"
    return repr(obj)


def rand_rational(rng, maxden: int = 60, maxabs: int = 10) -> Fraction:
    den = rng.randint(1, maxden)
    return Fraction(rng.randint(-maxabs * den, maxabs * den), den)


def rand_vec(rng, n: int, maxden: int = 60, maxabs: int = 10) -> VecQ:
    return tuple(rand_rational(rng, maxden, maxabs) for _ in range(n))


def rand_ivec(rng, n: int, maxabs: int = 10) -> VecZ:
    return tuple(rng.randint(-maxabs, maxabs) for _ in range(n))


def rand_circle(rng, maxden: int = 60) -> CircleElt:
    den = rng.randint(1, maxden)
    return CircleElt(Fraction(rng.randrange(den), den))


def rand_scalar(rng, maxden: int = 60) -> Scalar:
    return Scalar(Fraction(rng.randint(1, 12), rng.randint(1, 12)), rand_circle(rng, maxden))
