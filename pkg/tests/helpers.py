"""Shared oracles for the test suite.

Rank checks here must not share code with graphcurves.linalg: the
minor oracle expands determinants, the float oracle goes through
numpy's SVD.  Both are slow and meant for small fixtures only.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import numpy as np


def exact_det(rows):
    """Determinant by memoized Laplace expansion along rows."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    assert all(len(r) == n for r in rows)

    @lru_cache(maxsize=None)
    def sub(cols):
        if not cols:
            return Fraction(1)
        i = len(rows) - len(cols)
        total = Fraction(0)
        for j, c in enumerate(cols):
            a = rows[i][c]
            if a == 0:
                continue
            rest = cols[:j] + cols[j + 1:]
            term = a * sub(rest)
            total += term if j % 2 == 0 else -term
        return total

    return sub(tuple(range(n)))


def minor_rank(rows):
    """Largest r with a nonzero r x r minor.  Exact entries only."""
    rows = [tuple(Fraction(x) for x in row) for row in rows]
    if not rows or not rows[0]:
        return 0
    n, m = len(rows), len(rows[0])
    for r in range(min(n, m), 0, -1):
        for ri in combinations(range(n), r):
            for ci in combinations(range(m), r):
                minor = [tuple(rows[i][j] for j in ci) for i in ri]
                if exact_det(minor) != 0:
                    return r
    return 0


def svd_rank(rows, rtol=1e-9):
    """Numerical rank via SVD, independent of the package's dispatch."""
    arr = np.array([[complex(x) for x in row] for row in rows])
    if arr.size == 0:
        return 0
    s = np.linalg.svd(arr, compute_uv=False)
    if len(s) == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > rtol * s[0]))


def as_float_rows(rows):
    return [[complex(x) for x in row] for row in rows]
