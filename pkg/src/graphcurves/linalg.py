"""Rank and kernel computations in both scalar domains.

Exact path: fraction Gaussian elimination to reduced row echelon form,
with a zero-skip inner loop (the assembled systems are sparse).  Float
path: numpy SVD with a relative singular value threshold.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .scalars import EXACT, FLOAT, RANK_RTOL, check_domain


def exact_rref(rows, ncols):
    """Reduced row echelon form over the rationals.

    Returns (matrix, pivot_columns); the input is not modified.
    """
    m = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(m)):
            if m[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pr = m[r]
        p = pr[c]
        if p != 1:
            for j in range(c, ncols):
                if pr[j]:
                    pr[j] /= p
        for i in range(len(m)):
            if i == r:
                continue
            f = m[i][c]
            if f:
                ri = m[i]
                for j in range(c, ncols):
                    if pr[j]:
                        ri[j] -= f * pr[j]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def exact_rank(rows, ncols) -> int:
    return len(exact_rref(rows, ncols)[1])


def exact_nullspace(rows, ncols):
    """Basis of the right kernel over the rationals, one vector per free column."""
    m, pivots = exact_rref(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -m[r][free]
        basis.append(v)
    return basis


def _as_array(rows, ncols) -> np.ndarray:
    if not rows:
        return np.zeros((0, ncols), dtype=complex)
    return np.array([[complex(x) for x in row] for row in rows], dtype=complex)


def float_rank(rows, ncols, rtol: float = RANK_RTOL) -> int:
    a = _as_array(rows, ncols)
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > rtol * s[0]))


def float_nullspace(rows, ncols, rtol: float = RANK_RTOL):
    """Orthonormal kernel basis from the trailing right singular vectors."""
    a = _as_array(rows, ncols)
    if a.shape[0] == 0:
        return [[complex(i == j) for j in range(ncols)] for i in range(ncols)]
    _, s, vh = np.linalg.svd(a)
    if s.size == 0 or s[0] == 0:
        r = 0
    else:
        r = int(np.sum(s > rtol * s[0]))
    return [list(vh[k].conj()) for k in range(r, ncols)]


def rank(rows, ncols, domain: str) -> int:
    check_domain(domain)
    if domain == EXACT:
        return exact_rank(rows, ncols)
    return float_rank(rows, ncols)


def nullspace(rows, ncols, domain: str):
    check_domain(domain)
    if domain == EXACT:
        return exact_nullspace(rows, ncols)
    return float_nullspace(rows, ncols)


def integer_rank(rows) -> int:
    """Rank over the integers of an integer matrix (equals the rational rank)."""
    if not rows:
        return 0
    return exact_rank(rows, len(rows[0]))


def residual(rows, vector):
    """Largest magnitude of (matrix . vector), for kernel membership checks."""
    worst = 0
    for row in rows:
        acc = 0
        for x, v in zip(row, vector):
            if x:
                acc += x * v
        worst = max(worst, abs(acc))
    return worst


@dataclass
class KernelReport:
    """Outcome of a constraint-system solve."""

    domain: str
    nrows: int
    ncols: int
    rank: int
    basis: list

    @property
    def dim(self) -> int:
        return len(self.basis)


def solve_kernel(rows, ncols, domain: str) -> KernelReport:
    check_domain(domain)
    basis = nullspace(rows, ncols, domain)
    return KernelReport(domain=domain, nrows=len(rows), ncols=ncols,
                        rank=ncols - len(basis), basis=basis)
