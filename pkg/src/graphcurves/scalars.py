"""Scalar domain plumbing shared by every module.

All linear algebra runs in one of two interchangeable scalar domains:

* ``EXACT``: arbitrary-precision rationals (:class:`fractions.Fraction`).
  Ranks and kernels are exact, so a dimension statement checked in this
  domain is a proof for the given input.
* ``FLOAT``: double-precision complex numbers.  Ranks are counted from
  singular values with the relative threshold :data:`RANK_RTOL`.

Exact scalars serialize as fraction strings ("3/2"), float scalars as
``[re, im]`` pairs.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import ScalarDomainMismatch

EXACT = "exact"
FLOAT = "float"
DOMAINS = (EXACT, FLOAT)

# Tolerances shared across modules.  Exact-domain checks are exact; these
# bounds apply to the float domain unless stated otherwise.
RANK_RTOL = 1e-9        # singular values below RANK_RTOL * s_max count as zero
DET_TOL = 1e-12         # |det - 1| allowed for unimodular matrices
MATCH_TOL = 1e-9        # bi-residue agreement across a node
FLAT_TOL = 1e-8         # residual bound for points of the relation variety
EIGEN_TOL = 1e-10       # eigenline transport mismatch at a node
RECONSTRUCT_TOL = 1e-8  # spectral-data consistency and round-trip tolerance
REGULAR_RTOL = 1e-12    # relative threshold for "nonzero" in regularity tests


def check_domain(domain: str) -> str:
    if domain not in DOMAINS:
        raise ScalarDomainMismatch(f"unknown scalar domain {domain!r}")
    return domain


def domain_of(x) -> str:
    """Classify a scalar value as EXACT or FLOAT."""
    if isinstance(x, (int, Fraction)):
        return EXACT
    if isinstance(x, (float, complex)):
        return FLOAT
    raise ScalarDomainMismatch(f"unsupported scalar type {type(x).__name__}")


def as_scalar(x, domain: str):
    """Coerce x into the requested domain."""
    check_domain(domain)
    if domain == EXACT:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, (int, str)):
            return Fraction(x)
        raise ScalarDomainMismatch(
            f"cannot use {type(x).__name__} value in the exact domain")
    return complex(x)


def scalar_to_json(x):
    if isinstance(x, (int, Fraction)):
        return str(x)
    x = complex(x)
    return [x.real, x.imag]


def scalar_from_json(v, domain: str):
    check_domain(domain)
    if domain == EXACT:
        if isinstance(v, (str, int)):
            return Fraction(v)
        raise ScalarDomainMismatch("exact scalars serialize as fraction strings")
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(v[0], v[1])
    if isinstance(v, (int, float)):
        return complex(v)
    raise ScalarDomainMismatch("float scalars serialize as [re, im] pairs")


def random_nonzero_int(rng, bound: int = 3) -> int:
    """Uniform nonzero integer in [-bound, bound]."""
    k = rng.randint(1, bound)
    return k if rng.random() < 0.5 else -k
