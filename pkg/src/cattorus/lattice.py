"""Lattice data, dual maps, short-vector enumeration and isometry groups.

Coweights m are integer tuples in a fixed basis of the coweight lattice;
weights are integer tuples in the dual basis, so that the pairing of a
weight with a coweight is the dot product.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable

from .exact import (bilinear, det, identity, int_inverse, mat, matmul, matvec,
                    pullback, transpose, vecmat)


class LatticeError(ValueError):
    pass


def default_J(gram_i) -> tuple:
    """Lower-triangular splitting of a symmetric even form: J + J^t = I."""
    n = len(gram_i)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                if gram_i[i][i] % 2:
                    raise LatticeError("form is not even: odd diagonal entry")
                row.append(gram_i[i][i] // 2)
            elif i > j:
                row.append(gram_i[i][j])
            else:
                row.append(0)
        rows.append(tuple(row))
    return tuple(rows)


@dataclass(frozen=True)
class LatticeData:
    name: str
    gramJ: tuple
    gramI: tuple = field(init=False)

    def __post_init__(self):
        J = mat(self.gramJ)
        n = len(J)
        if any(len(r) != n for r in J):
            raise LatticeError("gram matrix must be square")
        object.__setattr__(self, "gramJ", J)
        I = tuple(tuple(J[i][j] + J[j][i] for j in range(n)) for i in range(n))
        object.__setattr__(self, "gramI", I)

    @property
    def rank(self) -> int:
        return len(self.gramJ)

    @classmethod
    def from_I(cls, name: str, gram_i) -> "LatticeData":
        gram_i = mat(gram_i)
        if gram_i != transpose(gram_i):
            raise LatticeError("I must be symmetric")
        return cls(name, default_J(gram_i))

    # forms ------------------------------------------------------------
    def J(self, x, y):
        return bilinear(self.gramJ, x, y)

    def I(self, x, y):
        return bilinear(self.gramI, x, y)

    def halfnorm(self, m):
        return Fraction(self.I(m, m), 2)

    def _check(self, m):
        if len(m) != self.rank:
            raise LatticeError(f"expected length {self.rank}, got {len(m)}")

    def sharp_J(self, m):
        """The weight J(m, -)."""
        self._check(m)
        return vecmat(m, self.gramJ)

    def flat_J(self, m):
        """The weight J(-, m)."""
        self._check(m)
        return matvec(self.gramJ, m)

    def sharp_I(self, m):
        self._check(m)
        return vecmat(m, self.gramI)

    # predicates -------------------------------------------------------
    def is_even(self) -> bool:
        return is_even(self)

    @cached_property
    def is_unimodular(self) -> bool:
        return self.rank == 0 or det(self.gramI) in (1, -1)

    @cached_property
    def is_positive_definite(self) -> bool:
        # leading principal minors
        for k in range(1, self.rank + 1):
            if det([r[:k] for r in self.gramI[:k]]) <= 0:
                return False
        return True

    def basis(self):
        return [tuple(1 if i == j else 0 for j in range(self.rank))
                for i in range(self.rank)]

    def zero(self):
        return (0,) * self.rank


def sharp_J(lat: LatticeData, m):
    return lat.sharp_J(m)


def flat_J(lat: LatticeData, m):
    return lat.flat_J(m)


def sharp_I(lat: LatticeData, m):
    return lat.sharp_I(m)


def is_even(lat: LatticeData) -> bool:
    return all(lat.gramI[i][i] % 2 == 0 for i in range(lat.rank))


# built-ins ------------------------------------------------------------------

_D4 = [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]]
_E8 = [
    [2, -1, 0, 0, 0, 0, 0, 0],
    [-1, 2, -1, 0, 0, 0, 0, 0],
    [0, -1, 2, -1, 0, 0, 0, -1],
    [0, 0, -1, 2, -1, 0, 0, 0],
    [0, 0, 0, -1, 2, -1, 0, 0],
    [0, 0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, 0, -1, 2, 0],
    [0, 0, -1, 0, 0, 0, 0, 2],
]


def builtin(name: str) -> LatticeData:
    if name == "A1":
        return LatticeData("A1", [[1]])
    if name == "A2":
        return LatticeData("A2", [[1, -1], [0, 1]])
    if name == "A1xA1":
        return LatticeData.from_I("A1xA1", [[2, 0], [0, 2]])
    if name == "U":
        return LatticeData.from_I("U", [[0, 1], [1, 0]])
    if name == "D4":
        return LatticeData.from_I("D4", _D4)
    if name == "E8":
        return LatticeData.from_I("E8", _E8)
    raise LatticeError(f"unknown builtin lattice {name!r}")


BUILTINS = ("A1", "A2", "A1xA1", "U", "D4", "E8")


def parse_spec(text: str) -> LatticeData:
    """Parse a lattice spec {name, rank, gram, gram_is}."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LatticeError(f"malformed lattice spec: {exc}") from None
    if not isinstance(data, dict):
        raise LatticeError("lattice spec must be an object")
    try:
        name = str(data.get("name", "custom"))
        gram = data["gram"]
        kind = data.get("gram_is", "I")
        rank = int(data.get("rank", len(gram)))
    except (KeyError, TypeError, ValueError) as exc:
        raise LatticeError(f"bad lattice spec: {exc}") from None
    if not isinstance(gram, list) or len(gram) != rank or any(
            not isinstance(r, list) or len(r) != rank for r in gram):
        raise LatticeError("gram must be a rank x rank integer matrix")
    if any(not isinstance(v, int) or isinstance(v, bool) for r in gram for v in r):
        raise LatticeError("gram entries must be integers")
    if kind == "J":
        lat = LatticeData(name, gram)
    elif kind == "I":
        lat = LatticeData.from_I(name, gram)
    else:
        raise LatticeError("gram_is must be 'J' or 'I'")
    if not is_even(lat):
        raise LatticeError("form is not even")
    return lat


def load_lattice(ref: str) -> LatticeData:
    """Resolve a builtin name or ``file:<path>``."""
    if ref.startswith("file:"):
        path = ref[len("file:"):]
        try:
            with open(path, encoding="utf-8") as fh:
                return parse_spec(fh.read())
        except OSError as exc:
            raise LatticeError(f"cannot read {path}: {exc}") from None
    return builtin(ref)


# enumeration ----------------------------------------------------------------

def _ldl(gram):
    """Exact LDL^T: q(x) = sum_i d_i (x_i + sum_{j>i} mu[i][j] x_j)^2."""
    n = len(gram)
    a = [[Fraction(v) for v in r] for r in gram]
    d = [Fraction(0)] * n
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = a[i][i] - sum(mu[k][i] ** 2 * d[k] for k in range(i))
        if d[i] <= 0:
            raise LatticeError("form is not positive definite")
        for j in range(i + 1, n):
            mu[i][j] = (a[i][j] - sum(mu[k][i] * mu[k][j] * d[k] for k in range(i))) / d[i]
    return d, mu


def _short_vectors(gram, bound):
    """All integer x with x^T gram x <= bound, by Fincke-Pohst recursion."""
    n = len(gram)
    if n == 0:
        return [()]
    d, mu = _ldl(gram)
    df = [float(v) for v in d]
    muf = [[float(v) for v in r] for r in mu]
    out = []
    x = [0] * n
    eps = 1e-7

    def rec(i, remaining):
        c = sum(muf[i][j] * x[j] for j in range(i + 1, n))
        r = math.sqrt(max(remaining, 0.0) / df[i]) + eps
        lo, hi = math.ceil(-c - r), math.floor(-c + r)
        for v in range(lo, hi + 1):
            x[i] = v
            rest = remaining - df[i] * (v + c) ** 2
            if rest < -eps * (1 + bound):
                continue
            if i == 0:
                out.append(tuple(x))
            else:
                rec(i - 1, rest)
        x[i] = 0

    rec(n - 1, float(bound))
    return [v for v in out if bilinear(gram, v, v) <= bound]


def enumerate_by_norm(lat: LatticeData, max_halfnorm: int):
    """All coweights with halfnorm <= max_halfnorm, sorted canonically."""
    if not lat.is_positive_definite:
        raise LatticeError("enumeration needs a positive definite form")
    vecs = _short_vectors(lat.gramI, 2 * max_halfnorm)
    res = [(v, bilinear(lat.gramI, v, v) // 2) for v in vecs]
    res.sort(key=lambda p: (p[1], p[0]))
    return res


def vectors_of_norm(lat: LatticeData, norm: int):
    return [v for v in _short_vectors(lat.gramI, norm)
            if bilinear(lat.gramI, v, v) == norm]


# isometries -----------------------------------------------------------------

class GuardExceeded(LatticeError):
    pass


def _columns_to_matrix(cols):
    n = len(cols)
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def is_isometry(lat: LatticeData, f) -> bool:
    return pullback(f, lat.gramI) == lat.gramI and det(f) in (1, -1)


def isometry_group(lat: LatticeData, max_order: int = 200000,
                   entry_bound: int = 3):
    """The finite group O(Lv, I) as a sorted list of integer matrices.

    Positive definite forms use a backtracking search over images of basis
    vectors; indefinite rank-2 forms fall back to bounded-entry search.
    """
    n = lat.rank
    if n == 0:
        return [()]
    I = lat.gramI
    if not lat.is_positive_definite:
        if n > 2:
            raise GuardExceeded("indefinite isometry search supports rank <= 2")
        out = []
        rng = range(-entry_bound, entry_bound + 1)
        for entries in itertools.product(rng, repeat=n * n):
            f = tuple(tuple(entries[i * n:(i + 1) * n]) for i in range(n))
            if is_isometry(lat, f):
                out.append(f)
        return sorted(out)
    cands = {}
    for i in range(n):
        if I[i][i] not in cands:
            cands[I[i][i]] = vectors_of_norm(lat, I[i][i])
    order = sorted(range(n), key=lambda i: (I[i][i], i))
    found = []
    images = [None] * n

    def rec(k):
        if k == n:
            found.append(_columns_to_matrix(images))
            if len(found) > max_order:
                raise GuardExceeded("isometry group larger than guard")
            return
        i = order[k]
        for v in cands[I[i][i]]:
            ok = True
            for kk in range(k):
                j = order[kk]
                if bilinear(I, v, images[j]) != I[i][j]:
                    ok = False
                    break
            if ok:
                images[i] = v
                rec(k + 1)
                images[i] = None

    rec(0)
    return sorted(found)


def orthogonal_mod2(lat: LatticeData, max_rank: int = 4):
    """The quadratic form phi(a) = I(a,a)/2 mod 2 on Lv/2 and its isometries."""
    if not is_even(lat):
        raise LatticeError("form is not even")
    n = lat.rank
    if n > max_rank:
        raise GuardExceeded(f"rank {n} above mod-2 guard {max_rank}")
    points = list(itertools.product((0, 1), repeat=n))
    phi = {a: (lat.I(a, a) // 2) % 2 for a in points}
    group = []
    for cols in itertools.product(points, repeat=n):
        f = _columns_to_matrix(cols)
        if n and det(f) % 2 == 0:
            continue
        if all(phi[tuple(x % 2 for x in matvec(f, a))] == phi[a] for a in points):
            group.append(f)
    if n == 0:
        group = [()]
    return {"phi": phi, "group": sorted(group)}


def mat_mod2(f):
    return tuple(tuple(x % 2 for x in r) for r in f)


def group_closed(elems, n) -> bool:
    s = set(elems)
    for a in elems:
        if int_inverse(a) not in s:
            return False
        for b in elems:
            if matmul(a, b) not in s:
                return False
    return identity(n) in s


def minus_identity(n):
    return tuple(tuple(-1 if i == j else 0 for j in range(n)) for i in range(n))


def iter_coweights(rank: int, box: int) -> Iterable[tuple]:
    return itertools.product(range(-box, box + 1), repeat=rank)
