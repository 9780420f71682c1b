"""Higgs fields on a framed graph curve.

A Higgs field assigns to each vertex a traceless 2x2 matrix of
logarithmic differentials, stored as the three independent entries
(w11, w12, w21) with w22 = -w11.  At a node the residue matrices on the
two sides must cancel after transport by the framing:

    R_source + a(d) R_target a(d)^-1 = 0,

where d is the edge's lower dart, R_source the residue matrix at d's
marked point on d's vertex and R_target the one on the partner side.
The per-vertex sums R_0 + R_1 + R_inf = 0 hold identically in the chosen
differential basis and are therefore never imposed as equations.

For a fixed framing the solution space is a vector space, of dimension
3g - 3 for generic framings; the identity framing jumps to 3g (the
trivial bundle carries sl2 tensor the g-dimensional section space).
"""
from __future__ import annotations

from dataclasses import dataclass
from random import Random

from .errors import ValidationError
from .framings import Framing, GaugeTransform, flat_linearization, zero_section
from .graphs import TrivalentGraph
from .linalg import KernelReport, solve_kernel
from .matrices import Mat2, adjoint_matrix, from_sl2_coords, sl2_coords
from .scalars import EXACT, check_domain, scalar_from_json, scalar_to_json
from .sections import RESIDUE_FUNCTIONAL, ComponentDifferential

WKEYS = ("w11", "w12", "w21")


class HiggsField:
    """Per-vertex traceless matrices of logarithmic differentials."""

    def __init__(self, graph: TrivalentGraph, vertex_data):
        vertex_data = tuple(tuple(trip) for trip in vertex_data)
        if len(vertex_data) != graph.vertex_count:
            raise ValidationError(
                f"need data for {graph.vertex_count} vertices, got {len(vertex_data)}")
        for trip in vertex_data:
            if len(trip) != 3:
                raise ValidationError("each vertex needs (w11, w12, w21)")
        self.graph = graph
        self.vertex_data = vertex_data

    def component(self, v: int, key: str) -> ComponentDifferential:
        return self.vertex_data[v][WKEYS.index(key)]

    def residue_matrix(self, v: int, point: int) -> Mat2:
        """Traceless residue matrix of the field at a marked point of vertex v."""
        w11, w12, w21 = self.vertex_data[v]
        return from_sl2_coords(w11.residue(point), w12.residue(point),
                               w21.residue(point))

    def coefficient_vector(self):
        """Flat list (w11.r0, w11.r1, w12.r0, w12.r1, w21.r0, w21.r1) per vertex."""
        out = []
        for trip in self.vertex_data:
            for w in trip:
                out.extend((w.r0, w.r1))
        return out

    def __add__(self, other):
        return HiggsField(self.graph,
                          [tuple(a + b for a, b in zip(ta, tb))
                           for ta, tb in zip(self.vertex_data, other.vertex_data)])

    def __neg__(self):
        return HiggsField(self.graph,
                          [tuple(-w for w in trip) for trip in self.vertex_data])

    def scale(self, s):
        return HiggsField(self.graph,
                          [tuple(w.scale(s) for w in trip)
                           for trip in self.vertex_data])

    def __eq__(self, other):
        if not isinstance(other, HiggsField):
            return NotImplemented
        return self.graph == other.graph and self.vertex_data == other.vertex_data

    def to_json(self):
        return {"vertex_data": {
            str(v): {key: [scalar_to_json(w.r0), scalar_to_json(w.r1)]
                     for key, w in zip(WKEYS, trip)}
            for v, trip in enumerate(self.vertex_data)}}

    @classmethod
    def from_json(cls, graph: TrivalentGraph, obj, domain: str):
        data = obj["vertex_data"]
        rows = []
        for v in range(graph.vertex_count):
            entry = data[str(v)]
            rows.append(tuple(
                ComponentDifferential(scalar_from_json(entry[key][0], domain),
                                      scalar_from_json(entry[key][1], domain))
                for key in WKEYS))
        return cls(graph, rows)

    @classmethod
    def from_coefficient_vector(cls, graph: TrivalentGraph, vec):
        rows = []
        for v in range(graph.vertex_count):
            base = 6 * v
            rows.append(tuple(
                ComponentDifferential(vec[base + 2 * k], vec[base + 2 * k + 1])
                for k in range(3)))
        return cls(graph, rows)


def residue_matrix(phi: HiggsField, v: int, point: int) -> Mat2:
    return phi.residue_matrix(v, point)


def assemble_higgs_constraints(framing: Framing, orientation: str = "low"):
    """Node-cancellation system for Higgs fields with the given framing.

    Three rows per edge (the (x11, x12, x21) coordinates of the matrix
    equation), six columns per vertex.  orientation chooses which dart
    anchors each edge's equation; "low" (the default) and "high" produce
    different matrices with identical kernels.
    """
    if orientation not in ("low", "high"):
        raise ValidationError(f"unknown orientation {orientation!r}")
    g = framing.graph
    ncols = 6 * g.vertex_count
    rows = []
    for a, b in g.edges:
        d = a if orientation == "low" else b
        p = g.partner(d)
        block = [[0] * ncols for _ in range(3)]
        # Source side: identity transport.
        func = RESIDUE_FUNCTIONAL[g.marked_point(d)]
        base = 6 * g.vertex_of(d)
        for r in range(3):
            block[r][base + 2 * r] += func[0]
            block[r][base + 2 * r + 1] += func[1]
        # Target side conjugated by the transport into the source frame.
        ad = adjoint_matrix(framing.matrix(d))
        func = RESIDUE_FUNCTIONAL[g.marked_point(p)]
        base = 6 * g.vertex_of(p)
        for r in range(3):
            for k in range(3):
                coeff = ad[r][k]
                if coeff:
                    block[r][base + 2 * k] += coeff * func[0]
                    block[r][base + 2 * k + 1] += coeff * func[1]
        rows.extend(block)
    return rows


def higgs_space(framing: Framing, domain: str | None = None) -> KernelReport:
    """Solve the node-cancellation system; basis elements are HiggsFields."""
    if domain is None:
        domain = framing.domain
    check_domain(domain)
    rows = assemble_higgs_constraints(framing)
    report = solve_kernel(rows, 6 * framing.graph.vertex_count, domain)
    report.basis = [HiggsField.from_coefficient_vector(framing.graph, vec)
                    for vec in report.basis]
    return report


def higgs_residual(phi: HiggsField, framing: Framing):
    """Largest entry of R_source + a R_target a^-1 over all edges."""
    g = framing.graph
    worst = 0
    for a, b in g.edges:
        r_s = phi.residue_matrix(g.vertex_of(a), g.marked_point(a))
        r_t = phi.residue_matrix(g.vertex_of(b), g.marked_point(b))
        t = framing.matrix(a)
        worst = max(worst, (r_s + t * r_t * t.inv()).max_norm())
    return worst


def gauge_transform_higgs(gauge: GaugeTransform, phi: HiggsField) -> HiggsField:
    """Conjugate the matrix of differentials at each vertex by the gauge."""
    rows = []
    for v, (w11, w12, w21) in enumerate(phi.vertex_data):
        ad = adjoint_matrix(gauge.matrix(v))
        r0 = [w11.r0, w12.r0, w21.r0]
        r1 = [w11.r1, w12.r1, w21.r1]
        new_r0 = [sum(ad[r][k] * r0[k] for k in range(3)) for r in range(3)]
        new_r1 = [sum(ad[r][k] * r1[k] for k in range(3)) for r in range(3)]
        rows.append(tuple(ComponentDifferential(new_r0[r], new_r1[r])
                          for r in range(3)))
    return HiggsField(phi.graph, rows)


def random_higgs_field(framing: Framing, seed: int,
                       domain: str | None = None) -> HiggsField:
    """Seeded random element of the Higgs space (a kernel combination)."""
    if domain is None:
        domain = framing.domain
    report = higgs_space(framing, domain)
    rng = Random(seed)
    if domain == EXACT:
        from fractions import Fraction

        coeffs = [Fraction(rng.randint(-9, 9)) for _ in report.basis]
        if all(c == 0 for c in coeffs) and report.basis:
            coeffs[0] = Fraction(1)
    else:
        coeffs = [complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in report.basis]
    zero = 0 if domain == EXACT else 0j
    phi = HiggsField(framing.graph,
                     [(ComponentDifferential(zero, zero),) * 3
                      for _ in range(framing.graph.vertex_count)])
    for c, psi in zip(coeffs, report.basis):
        phi = phi + psi.scale(c)
    return phi


# -- per-edge residue parameterization ---------------------------------


@dataclass
class ResidueParameterization:
    """Higgs space in per-edge residue coordinates.

    One traceless matrix per edge (the residue at the lower dart), with
    the partner side determined by the node cancellation; the only
    remaining equations are the per-vertex sums, three rows per vertex.
    matches_flat_linearization records whether that system coincides,
    entry by entry, with the vertex-relation Jacobian of the zero
    section of the same framing.
    """

    matrix: list
    kernel: KernelReport
    basis_fields: list
    matches_flat_linearization: bool


def residue_parameterization_matrix(framing: Framing):
    """Per-vertex sum conditions in per-edge residue coordinates.

    Rows: three per vertex, vertex order.  Columns: three per edge in
    canonical edge order, (x11, x12, x21) coordinates of the residue at
    the edge's lower dart.  The lower dart contributes its coordinates
    directly; the partner dart contributes minus the adjoint action of
    its transport matrix.
    """
    g = framing.graph
    ncols = 3 * len(g.edges)
    blocks = [[[0] * ncols for _ in range(3)] for _ in range(g.vertex_count)]
    for e, (a, b) in enumerate(g.edges):
        block = blocks[g.vertex_of(a)]
        for r in range(3):
            block[r][3 * e + r] += 1
        ad = adjoint_matrix(framing.matrix(b))
        block = blocks[g.vertex_of(b)]
        for r in range(3):
            for k in range(3):
                if ad[r][k]:
                    block[r][3 * e + k] -= ad[r][k]
    return [row for block in blocks for row in block]


def higgs_from_edge_residues(framing: Framing, vec) -> HiggsField:
    """Rebuild a Higgs field from per-edge residue coordinates.

    vec lists (x11, x12, x21) per edge for the lower-dart residue; the
    partner residue is -a(partner) X a(partner)^-1.  The differentials
    are read off from the residues at marked points 0 and 1 of each
    vertex, which pins the residue at infinity through the basis.
    """
    g = framing.graph
    per_dart = {}
    for e, (a, b) in enumerate(g.edges):
        x = from_sl2_coords(vec[3 * e], vec[3 * e + 1], vec[3 * e + 2])
        per_dart[a] = x
        t = framing.matrix(b)
        per_dart[b] = -(t * x * t.inv())
    rows = []
    for v in range(g.vertex_count):
        by_point = {g.marked_point(d): per_dart[d] for d in g.vertex_darts(v)}
        r0_mat = by_point[0]
        r1_mat = by_point[1]
        rows.append(tuple(
            ComponentDifferential(c0, c1)
            for c0, c1 in zip(sl2_coords(r0_mat), sl2_coords(r1_mat))))
    return HiggsField(g, rows)


def residue_parameterization(framing: Framing,
                             domain: str | None = None) -> ResidueParameterization:
    """Solve the Higgs space in residue coordinates and cross-check it.

    The kernel maps isomorphically onto higgs_space(framing); the system
    matrix is compared against the flat-bundle linearization at the zero
    section (equal entry by entry in the exact domain).
    """
    if domain is None:
        domain = framing.domain
    check_domain(domain)
    rows = residue_parameterization_matrix(framing)
    report = solve_kernel(rows, 3 * len(framing.graph.edges), domain)
    fields = [higgs_from_edge_residues(framing, vec) for vec in report.basis]

    flat_rows = flat_linearization(zero_section(framing))
    if domain == EXACT:
        matches = flat_rows == rows
    else:
        scale = max([1.0] + [abs(x) for row in rows for x in row])
        matches = (len(flat_rows) == len(rows)
                   and max((abs(x - y) for fr, rr in zip(flat_rows, rows)
                            for x, y in zip(fr, rr)), default=0.0) <= 1e-9 * scale)
    return ResidueParameterization(matrix=rows, kernel=report,
                                   basis_fields=fields,
                                   matches_flat_linearization=matches)
