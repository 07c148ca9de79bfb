"""Test-only oracles kept independent of the elimination code under test."""

from itertools import combinations, permutations
from math import gcd


def perm_sign(p) -> int:
    s = 1
    p = list(p)
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s = -s
    return s


def leibniz_det(rows) -> int:
    n = len(rows)
    total = 0
    for p in permutations(range(n)):
        term = perm_sign(p)
        for i in range(n):
            term *= rows[i][p[i]]
        total += term
    return total


def determinantal_divisors(rows, ncols) -> list[int]:
    """gcd of all i x i minors for i = 1..min(m, n); stops at the first zero."""
    m = len(rows)
    out = []
    for i in range(1, min(m, ncols) + 1):
        g = 0
        for R in combinations(range(m), i):
            for C in combinations(range(ncols), i):
                g = gcd(g, leibniz_det([[rows[r][c] for c in C] for r in R]))
        if g == 0:
            break
        out.append(g)
    return out


def invariant_factors(rows, ncols) -> list[int]:
    dd = determinantal_divisors(rows, ncols)
    return [b // a for a, b in zip([1] + dd, dd)]
