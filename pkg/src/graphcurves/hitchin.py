"""The determinant map from Higgs fields to quadratic differentials.

Vertex by vertex the image is det of the matrix of differentials,

    det(phi)(v) = -w11^2 - w12 w21,

computed through products of component differentials.  Its bi-residue at
any marked point equals the determinant of the residue matrix there,
identically in the field; since residue matrices on the two sides of a
node are conjugate up to sign, the image of an actual Higgs field has
matching bi-residues and so defines a global quadratic differential.
Reading it in per-edge bi-residue coordinates gives a gauge-invariant
quadratic map whose Jacobian comes from the symmetric bilinear
polarization of det.
"""
from __future__ import annotations

from dataclasses import dataclass

from .framings import Framing
from .higgs import HiggsField, higgs_space
from .linalg import rank as matrix_rank
from .scalars import EXACT, FLOAT, MATCH_TOL, REGULAR_RTOL, domain_of
from .sections import (ComponentQuadratic, GlobalQuadratic, bires_coordinates,
                       multiply_differentials)


def hitchin_image(phi: HiggsField) -> GlobalQuadratic:
    """Per-vertex determinant of the matrix of differentials."""
    comps = []
    for w11, w12, w21 in phi.vertex_data:
        comps.append(-(multiply_differentials(w11, w11)
                       + multiply_differentials(w12, w21)))
    return GlobalQuadratic(phi.graph, comps)


def bires_det_residual(phi: HiggsField):
    """Deviation of bi-residues of det(phi) from residue-matrix determinants.

    Zero for every field, Higgs or not: the bi-residue of a product of
    differentials is the product of residues, so both sides agree
    identically.  Exposed as a residual so the identity can be exercised.
    """
    omega = hitchin_image(phi)
    worst = 0
    for v in range(phi.graph.vertex_count):
        for point in range(3):
            lhs = omega.components[v].biresidue(point)
            rhs = phi.residue_matrix(v, point).det()
            worst = max(worst, abs(lhs - rhs))
    return worst


def hitchin_edge_coords(phi: HiggsField, tol=MATCH_TOL):
    """det(phi) in per-edge bi-residue coordinates.

    Raises MatchingViolated when the bi-residues disagree across some
    node, which is the signature of a field that does not satisfy the
    node cancellation for any framing.
    """
    return bires_coordinates(hitchin_image(phi), tol)


def polarization(phi: HiggsField, psi: HiggsField) -> GlobalQuadratic:
    """Symmetric bilinear form with det(phi + t psi) = det phi + t B + t^2 det psi."""
    comps = []
    for (a11, a12, a21), (b11, b12, b21) in zip(phi.vertex_data, psi.vertex_data):
        comps.append(-(multiply_differentials(a11, b11).scale(2)
                       + multiply_differentials(a12, b21)
                       + multiply_differentials(a21, b12)))
    return GlobalQuadratic(phi.graph, comps)


@dataclass
class JacobianReport:
    """Rows: directions along the supplied basis; columns: edges."""

    matrix: list
    rank: int
    basis_size: int


def hitchin_jacobian(phi: HiggsField, framing: Framing,
                     basis=None) -> JacobianReport:
    """Differential of the edge-coordinate determinant map at phi.

    Row k holds the per-edge bi-residues of the polarization of phi with
    the k-th basis field of the framing's Higgs space.
    """
    if basis is None:
        basis = higgs_space(framing).basis
    rows = [bires_coordinates(polarization(phi, psi)) for psi in basis]
    domain = domain_of(rows[0][0]) if rows else EXACT
    ncols = len(phi.graph.edges)
    return JacobianReport(matrix=rows, rank=matrix_rank(rows, ncols, domain),
                          basis_size=len(basis))


def finite_difference_jacobian(phi: HiggsField, framing: Framing, basis=None,
                               step: float = 1e-5):
    """Central-difference Jacobian of the edge-coordinate map (float domain)."""
    if basis is None:
        basis = higgs_space(framing, FLOAT).basis
    rows = []
    for psi in basis:
        plus = hitchin_edge_coords(phi + psi.scale(complex(step)))
        minus = hitchin_edge_coords(phi + psi.scale(complex(-step)))
        rows.append([(p - m) / (2 * step) for p, m in zip(plus, minus)])
    return rows


def jacobian_fd_error(phi: HiggsField, framing: Framing, basis=None,
                      step: float = 1e-5) -> float:
    """Relative max-norm gap between the Jacobian and central differences."""
    if basis is None:
        basis = higgs_space(framing, FLOAT).basis
    exact_rows = hitchin_jacobian(phi, framing, basis).matrix
    fd_rows = finite_difference_jacobian(phi, framing, basis, step)
    scale = max([1.0] + [abs(x) for row in exact_rows for x in row])
    gap = max((abs(x - y) for er, fr in zip(exact_rows, fd_rows)
               for x, y in zip(er, fr)), default=0.0)
    return gap / scale


@dataclass
class RegularityReport:
    """Genericity of a global quadratic differential, vertex by vertex.

    failures lists (vertex, condition) pairs; conditions are
    "zero_at_node_0", "zero_at_node_1", "zero_at_infinity" (the numerator
    loses degree) and "double_zero" (vanishing discriminant).
    """

    regular: bool
    failures: list


def is_regular(omega: GlobalQuadratic) -> RegularityReport:
    """Check that every component has two distinct zeros away from the nodes."""
    exact = omega.domain() == EXACT
    if exact:
        threshold = 0
    else:
        scale = max([1.0] + [abs(x) for c in omega.components
                             for x in c.coefficients()])
        threshold = REGULAR_RTOL * scale
    failures = []
    for v, c in enumerate(omega.components):
        checks = (
            ("zero_at_node_0", c.q0),
            ("zero_at_node_1", c.value_at_one()),
            ("zero_at_infinity", c.q2),
            ("double_zero", c.discriminant()),
        )
        for name, value in checks:
            if abs(value) <= threshold:
                failures.append((v, name))
    return RegularityReport(regular=not failures, failures=failures)
