#!/usr/bin/env python3
"""Brute-force oracle for theta coefficients and isometry group orders.

Deliberately independent of the cattorus package: lattices are given by
their classical coordinate models, and isometries are found by scanning an
integer box.  Prints JSON.

    python3 tools/brute_oracle.py            # everything
    python3 tools/brute_oracle.py theta E8 3
    python3 tools/brute_oracle.py isometry D4
"""

import itertools
import json
import math
import sys
from fractions import Fraction


# theta: count vectors by half of the Euclidean squared length -------------------

def theta_a1(upto):
    # sqrt(2) Z: the vector m sqrt(2) has halfnorm m^2
    counts = [0] * (upto + 1)
    m = 0
    while m * m <= upto:
        counts[m * m] += 1 if m == 0 else 2
        m += 1
    return counts


def theta_a2(upto):
    # {x in Z^3 : x1 + x2 + x3 = 0}
    counts = [0] * (upto + 1)
    b = math.isqrt(2 * upto) + 1
    for x1 in range(-b, b + 1):
        for x2 in range(-b, b + 1):
            x3 = -x1 - x2
            n = x1 * x1 + x2 * x2 + x3 * x3
            if n <= 2 * upto:
                counts[n // 2] += 1
    return counts


def theta_d4(upto):
    # {x in Z^4 : sum even}
    counts = [0] * (upto + 1)
    b = math.isqrt(2 * upto)
    for x in itertools.product(range(-b, b + 1), repeat=4):
        if sum(x) % 2 == 0:
            n = sum(v * v for v in x)
            if n <= 2 * upto:
                counts[n // 2] += 1
    return counts


def theta_e8(upto):
    # D8 together with D8 + (1/2, ..., 1/2), in doubled coordinates y = 2x
    counts = [0] * (upto + 1)
    limit = 8 * upto          # |y|^2 = 4 |x|^2 <= 8 * halfnorm
    b = math.isqrt(limit)
    evens = [v for v in range(-b, b + 1) if v % 2 == 0]
    odds = [v for v in range(-b, b + 1) if v % 2]
    for coords in (evens, odds):
        for y in itertools.product(coords, repeat=8):
            if (sum(y) // 2) % 2:
                continue
            n = sum(v * v for v in y)
            if n <= limit:
                counts[n // 8] += 1
    return counts


THETA = {"A1": theta_a1, "A2": theta_a2, "D4": theta_d4, "E8": theta_e8}


# isometries: integer matrices f with f^T G f = G --------------------------------

GRAMS = {
    "A1": [[2]],
    "A1xA1": [[2, 0], [0, 2]],
    "A2": [[2, -1], [-1, 2]],
    "D4": [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]],
    "U": [[0, 1], [1, 0]],
}


def _inverse(g):
    n = len(g)
    a = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(g)]
    for c in range(n):
        p = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [v / piv for v in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def _form(g, u, v):
    return sum(u[i] * g[i][j] * v[j] for i in range(len(u)) for j in range(len(v)))


def entry_bound(g, indefinite_box=3):
    """Cauchy-Schwarz: |f_ji| <= sqrt(G_ii (G^-1)_jj) for positive definite G."""
    n = len(g)
    if any(g[i][i] <= 0 for i in range(n)):
        return indefinite_box
    inv = _inverse(g)
    return max(math.isqrt(int(g[i][i] * inv[j][j])) for i in range(n) for j in range(n))


def isometry_order(g, indefinite_box=3):
    n = len(g)
    b = entry_bound(g, indefinite_box)
    box = list(itertools.product(range(-b, b + 1), repeat=n))
    # candidate images of each basis vector, then all pairings checked by brute force
    cols = [[v for v in box if _form(g, v, v) == g[i][i]] for i in range(n)]
    count = 0
    for choice in itertools.product(*cols):
        if all(_form(g, choice[i], choice[j]) == g[i][j]
               for i in range(n) for j in range(i + 1, n)):
            m = [[choice[j][i] for j in range(n)] for i in range(n)]
            if _det(m) != 0:
                count += 1
    return count


def _det(m):
    n = len(m)
    a = [[Fraction(v) for v in row] for row in m]
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return d


DEFAULT_THETA = {"A1": 4, "A2": 3, "D4": 2, "E8": 3}


def main(argv):
    if argv[:1] == ["theta"]:
        name, upto = argv[1], int(argv[2])
        print(json.dumps({name: THETA[name](upto)}))
    elif argv[:1] == ["isometry"]:
        print(json.dumps({argv[1]: isometry_order(GRAMS[argv[1]])}))
    else:
        out = {"theta": {k: THETA[k](v) for k, v in DEFAULT_THETA.items()},
               "isometry": {k: isometry_order(g) for k, g in GRAMS.items()}}
        print(json.dumps(out, indent=1, sort_keys=True))


if __name__ == "__main__":
    main(sys.argv[1:])
