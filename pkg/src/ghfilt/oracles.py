"""Independent reference computations used to cross-check the main engine.

These deliberately avoid the elimination code in :mod:`ghfilt.exact`:

* determinantal divisors of a polynomial matrix from the Leibniz expansion of
  every k x k minor, giving the t-adic Smith exponents as successive
  differences of minimal minor valuations;
* seeded random polynomial matrices for property runs.
"""
from __future__ import annotations

import math
import random
from itertools import combinations, permutations
from typing import List

from flint import fmpq, fmpq_poly

from .exact import INF, Mat, RatFunT


def _perm_sign(p) -> int:
    sign = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = p[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def leibniz_det(rows) -> fmpq_poly:
    """Determinant of a square matrix of fmpq_poly by the permutation expansion."""
    n = len(rows)
    total = fmpq_poly([0])
    for p in permutations(range(n)):
        term = fmpq_poly([_perm_sign(p)])
        for i in range(n):
            term = term * rows[i][p[i]]
            if term == 0:
                break
        total = total + term
    return total


def poly_valuation(p: fmpq_poly):
    if p == 0:
        return INF
    coeffs = p.coeffs()
    return next(i for i, c in enumerate(coeffs) if c != 0)


def _as_poly_rows(M: Mat):
    rows = []
    for r in M.to_field("Qt").tolist():
        row = []
        for x in r:
            x = x if isinstance(x, RatFunT) else RatFunT(x)
            if x.den != 1:
                raise ValueError("oracle expects polynomial entries")
            row.append(fmpq_poly(x.num))
        rows.append(row)
    return rows


def minor_valuations(M: Mat) -> List:
    """d_k = min over k x k minors of the t-adic valuation, k = 1..min(m, n)."""
    rows = _as_poly_rows(M)
    m, n = M.nrows, M.ncols
    out = []
    for k in range(1, min(m, n) + 1):
        best = INF
        for R in combinations(range(m), k):
            for C in combinations(range(n), k):
                v = poly_valuation(leibniz_det([[rows[i][j] for j in C] for i in R]))
                best = min(best, v)
                if best == 0:
                    break
            if best == 0:
                break
        out.append(best)
    return out


def snf_exponents_from_minors(M: Mat) -> List:
    """Sorted Smith exponents (with inf for the kernel) from determinantal divisors."""
    d = minor_valuations(M)
    exps = []
    prev = 0
    for dk in d:
        if dk == INF:
            exps.append(INF)
        else:
            exps.append(dk - prev)
            prev = dk
    exps += [INF] * (M.ncols - len(exps))
    return sorted(exps)


def random_poly_matrix(rng: random.Random, m: int = 5, n: int = 5, max_deg: int = 2,
                       max_shift: int = 2, rank_drop: bool = False) -> Mat:
    """Integer-coefficient polynomial matrix with assorted t-adic valuations.

    Built as A * diag(t^s) * B with random A, B, so interesting exponents
    appear; with ``rank_drop`` one column is a combination of the others.
    """
    def rpoly():
        return fmpq_poly([rng.randint(-3, 3) for _ in range(rng.randint(1, max_deg + 1))])

    def rmat(a, b):
        return [[rpoly() for _ in range(b)] for _ in range(a)]

    A, B = rmat(m, m), rmat(n, n)
    t = fmpq_poly([0, 1])
    shifts = [t ** rng.randint(0, max_shift) for _ in range(min(m, n))]
    mid = [[(shifts[i] if i == j and i < len(shifts) else fmpq_poly([0])) for j in range(n)] for i in range(m)]

    def mul(X, Y):
        return [[sum((X[i][k] * Y[k][j] for k in range(len(Y))), fmpq_poly([0]))
                 for j in range(len(Y[0]))] for i in range(len(X))]

    P = mul(mul(A, mid), B)
    if rank_drop and n > 1:
        c1, c2 = rng.randint(-2, 2), rng.randint(-2, 2)
        for i in range(m):
            P[i][n - 1] = P[i][0] * c1 + P[i][1] * c2
    return Mat([[RatFunT(x) for x in r] for r in P], "Qt", ncols=n)


def snf_oracle_cases(count: int = 50, seed: int = 20240611, size: int = 5):
    rng = random.Random(seed)
    return [random_poly_matrix(rng, size, size, rank_drop=(i % 7 == 3)) for i in range(count)]


def sorted_exponents(exps) -> list:
    return sorted(exps, key=lambda e: math.inf if e == INF else e)
