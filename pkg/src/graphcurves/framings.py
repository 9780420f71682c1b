"""Framed SL(2,C) bundles on a graph curve and their flat refinements.

A framing assigns a determinant-one matrix a(d) to every dart with
a(partner(d)) = a(d)^-1: the transport across the node from the frame at
the partner's vertex into the frame at d's vertex, read along the
orientation "d first".  A gauge g (one matrix per vertex) acts by

    a(d)  ->  g(source) a(d) g(target)^-1,

source = vertex of d, target = vertex of partner(d).

Gauge-fixing a breadth-first spanning tree to the identity leaves one
free holonomy per cotree edge; the graph's fundamental group is free of
rank g, so framings modulo gauge are g-tuples in SL(2,C) modulo overall
conjugation.

A flat surface bundle refines a framing by meridians mu(d): the local
monodromy around the node at dart d, in the frame of d's vertex.  The
two sides of a node determine each other,

    mu(partner(d)) = a(partner(d)) mu(d)^-1 a(partner(d))^-1,

and at each vertex the product over the three darts in marked-point
order (0, 1, inf) must be the identity, mirroring a three-holed sphere's
fundamental group relation.
"""
from __future__ import annotations

from random import Random

from .errors import NotOnVariety, ValidationError
from .graphs import SpanningTreeData, TrivalentGraph
from .linalg import solve_kernel
from .matrices import (IDENTITY, Mat2, SL2_BASIS, check_unimodular, mat_from_json,
                       mat_to_json, random_unimodular, sl2_coords)
from .scalars import EXACT, FLAT_TOL, check_domain

IDENTITY_TOL = 1e-10  # float-domain threshold for "this matrix is the identity"


def _is_identity(m: Mat2, domain: str) -> bool:
    if domain == EXACT:
        return m == IDENTITY
    return (m - IDENTITY).max_norm() <= IDENTITY_TOL


class GaugeTransform:
    """One determinant-one matrix per vertex."""

    def __init__(self, graph: TrivalentGraph, mats, domain: str = EXACT):
        check_domain(domain)
        mats = tuple(mats)
        if len(mats) != graph.vertex_count:
            raise ValidationError(
                f"need {graph.vertex_count} gauge matrices, got {len(mats)}")
        for m in mats:
            check_unimodular(m, domain)
        self.graph = graph
        self.domain = domain
        self._mats = mats

    @classmethod
    def identity(cls, graph: TrivalentGraph, domain: str = EXACT):
        return cls(graph, [IDENTITY] * graph.vertex_count, domain)

    @classmethod
    def random(cls, graph: TrivalentGraph, seed: int, domain: str = EXACT):
        rng = Random(seed)
        return cls(graph, [random_unimodular(rng, domain)
                           for _ in range(graph.vertex_count)], domain)

    def matrix(self, v: int) -> Mat2:
        return self._mats[v]

    def compose(self, other: "GaugeTransform") -> "GaugeTransform":
        """Gauge acting as self after other."""
        return GaugeTransform(self.graph,
                              [a * b for a, b in zip(self._mats, other._mats)],
                              self.domain)


class Framing:
    """Determinant-one transport across every node, inverse on partner darts."""

    def __init__(self, graph: TrivalentGraph, dart_matrices, domain: str = EXACT):
        check_domain(domain)
        mats = tuple(dart_matrices)
        if len(mats) != graph.dart_count:
            raise ValidationError(
                f"need {graph.dart_count} dart matrices, got {len(mats)}")
        for m in mats:
            check_unimodular(m, domain)
        self.graph = graph
        self.domain = domain
        self._mats = mats

    @classmethod
    def from_primary(cls, graph: TrivalentGraph, edge_matrices, domain: str = EXACT):
        """Build from one matrix per edge, attached to the lower dart."""
        mats = [None] * graph.dart_count
        for e, (a, b) in enumerate(graph.edges):
            m = edge_matrices[e]
            mats[a] = m
            mats[b] = m.inv()
        return cls(graph, mats, domain)

    @classmethod
    def identity(cls, graph: TrivalentGraph, domain: str = EXACT):
        return cls(graph, [IDENTITY] * graph.dart_count, domain)

    @classmethod
    def random(cls, graph: TrivalentGraph, seed: int, domain: str = EXACT):
        rng = Random(seed)
        return cls.from_primary(graph,
                                [random_unimodular(rng, domain)
                                 for _ in range(len(graph.edges))], domain)

    def matrix(self, d: int) -> Mat2:
        return self._mats[d]

    def primary_matrices(self):
        """Matrices on the lower dart of each edge, canonical edge order."""
        return [self._mats[a] for a, _ in self.graph.edges]

    def inversion_residual(self):
        """Largest deviation of a(partner(d)) a(d) from the identity."""
        g = self.graph
        return max((self._mats[g.partner(d)] * self._mats[d] - IDENTITY).max_norm()
                   for d in range(g.dart_count))

    def __eq__(self, other):
        if not isinstance(other, Framing):
            return NotImplemented
        return self.graph == other.graph and self._mats == other._mats

    def to_json(self):
        return {"darts": {str(a): mat_to_json(self._mats[a])
                          for a, _ in self.graph.edges}}

    @classmethod
    def from_json(cls, graph: TrivalentGraph, obj, domain: str = EXACT):
        darts = obj["darts"]
        edge_matrices = []
        for e, (a, _) in enumerate(graph.edges):
            if str(a) not in darts:
                raise ValidationError(f"framing JSON missing dart {a} (edge {e})")
            edge_matrices.append(mat_from_json(darts[str(a)], domain))
        return cls.from_primary(graph, edge_matrices, domain)


def apply_gauge(gauge: GaugeTransform, framing: Framing) -> Framing:
    """g(source) a(d) g(target)^-1 on every dart; a group action."""
    g = framing.graph
    inv = [gauge.matrix(v).inv() for v in range(g.vertex_count)]
    mats = [gauge.matrix(g.vertex_of(d)) * framing.matrix(d)
            * inv[g.vertex_of(g.partner(d))]
            for d in range(g.dart_count)]
    return Framing(g, mats, framing.domain)


def schottky_holonomies(framing: Framing, tree: SpanningTreeData):
    """Cotree holonomies after gauge-fixing the tree darts to the identity.

    The gauge is unique once the root frame is pinned; gauge-equivalent
    framings yield simultaneously conjugate tuples (by the gauge matrix
    at the root).  Holonomies are listed in cotree order and read along
    each cotree edge's lower dart.
    """
    g = framing.graph
    fix = [None] * g.vertex_count
    fix[tree.root] = IDENTITY
    for v in tree.order[1:]:
        d = tree.entry_dart[v]
        fix[v] = fix[g.vertex_of(d)] * framing.matrix(d)
    out = []
    for e in tree.cotree_edges:
        a, b = g.edges[e]
        out.append(fix[g.vertex_of(a)] * framing.matrix(a)
                   * fix[g.vertex_of(b)].inv())
    return out


def trace_invariants(holonomies):
    """Traces of the generators, ordered pairs and ordered triples.

    A conjugation probe, not a decision procedure: the list separates
    generic orbits but is only complete for irreducible pairs.
    """
    out = [m.trace() for m in holonomies]
    n = len(holonomies)
    for i in range(n):
        for j in range(i + 1, n):
            out.append((holonomies[i] * holonomies[j]).trace())
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                out.append((holonomies[i] * holonomies[j] * holonomies[k]).trace())
    return out


class SurfaceFlatBundle:
    """A framing plus node meridians satisfying the edge compatibility.

    Meridians are stored on every dart; constructors derive the partner
    side, so edge compatibility holds by construction.  The vertex
    relations (product of the three meridians in marked-point order is
    the identity) are a residual to be checked, not an invariant of the
    type.
    """

    def __init__(self, framing: Framing, meridians):
        meridians = tuple(meridians)
        if len(meridians) != framing.graph.dart_count:
            raise ValidationError(
                f"need {framing.graph.dart_count} meridians, got {len(meridians)}")
        for m in meridians:
            check_unimodular(m, framing.domain)
        self.framing = framing
        self.graph = framing.graph
        self.domain = framing.domain
        self._meridians = meridians

    @classmethod
    def from_primary(cls, framing: Framing, edge_meridians):
        """Build from one meridian per edge on the lower dart."""
        g = framing.graph
        mer = [None] * g.dart_count
        for e, (a, b) in enumerate(g.edges):
            m = edge_meridians[e]
            mer[a] = m
            t = framing.matrix(b)
            mer[b] = t * m.inv() * t.inv()
        return cls(framing, mer)

    def meridian(self, d: int) -> Mat2:
        return self._meridians[d]

    def edge_compatibility_residual(self):
        g = self.graph
        worst = 0
        for d in range(g.dart_count):
            p = g.partner(d)
            t = self.framing.matrix(p)
            worst = max(worst, (self._meridians[p]
                                - t * self._meridians[d].inv() * t.inv()).max_norm())
        return worst

    def vertex_holonomy(self, v: int) -> Mat2:
        d0, d1, d2 = self.graph.vertex_darts(v)
        return self._meridians[d0] * self._meridians[d1] * self._meridians[d2]

    def to_json(self):
        out = self.framing.to_json()
        out["meridians"] = {str(a): mat_to_json(self._meridians[a])
                            for a, _ in self.graph.edges}
        return out

    @classmethod
    def from_json(cls, graph: TrivalentGraph, obj, domain: str = EXACT):
        framing = Framing.from_json(graph, obj, domain)
        mer = obj["meridians"]
        edge_meridians = []
        for e, (a, _) in enumerate(graph.edges):
            if str(a) not in mer:
                raise ValidationError(f"bundle JSON missing meridian {a} (edge {e})")
            edge_meridians.append(mat_from_json(mer[str(a)], domain))
        return cls.from_primary(framing, edge_meridians)


def zero_section(framing: Framing) -> SurfaceFlatBundle:
    """All meridians trivial: the canonical flat refinement of a framing."""
    return SurfaceFlatBundle(framing, [IDENTITY] * framing.graph.dart_count)


def forget_flat(bundle: SurfaceFlatBundle) -> Framing:
    return bundle.framing


def vertex_relation_residual(bundle: SurfaceFlatBundle):
    """Largest deviation of a vertex meridian product from the identity."""
    return max((bundle.vertex_holonomy(v) - IDENTITY).max_norm()
               for v in range(bundle.graph.vertex_count))


def apply_gauge_bundle(gauge: GaugeTransform,
                       bundle: SurfaceFlatBundle) -> SurfaceFlatBundle:
    """Gauge a bundle: framing as usual, meridians by conjugation at their vertex."""
    g = bundle.graph
    framing = apply_gauge(gauge, bundle.framing)
    mer = [gauge.matrix(g.vertex_of(d)) * bundle.meridian(d)
           * gauge.matrix(g.vertex_of(d)).inv()
           for d in range(g.dart_count)]
    return SurfaceFlatBundle(framing, mer)


def flat_linearization(bundle: SurfaceFlatBundle):
    """Jacobian of the vertex relations in per-edge meridian coordinates.

    Each edge contributes three parameters: the meridian on its lower
    dart moves as mu -> exp(t X) mu for X in the traceless basis, and the
    partner side follows through the edge compatibility.  Rows are the
    (x11, x12, x21) coordinates of d(product) * product^-1 per vertex,
    vertices in order; columns are edges in canonical order, three per
    edge in basis order.
    """
    g = bundle.graph
    a = bundle.framing

    # Derivative of each dart's meridian for a unit move on its edge parameter.
    # Lower dart: X mu(d).  Partner dart: -a(partner) mu(d)^-1 X a(partner)^-1.
    dmu = {}  # (dart, basis index) -> Mat2
    for e, (lo, hi) in enumerate(g.edges):
        mu = bundle.meridian(lo)
        mu_inv = mu.inv()
        t = a.matrix(hi)
        t_inv = t.inv()
        for k, basis in enumerate(SL2_BASIS):
            dmu[(lo, k)] = basis * mu
            dmu[(hi, k)] = -(t * mu_inv * basis * t_inv)

    ncols = 3 * len(g.edges)
    rows = []
    for v in range(g.vertex_count):
        darts = g.vertex_darts(v)
        mats = [bundle.meridian(d) for d in darts]
        f_inv = (mats[0] * mats[1] * mats[2]).inv()
        # prefix[i] = product of meridians before slot i, suffix[i] after.
        prefix = [IDENTITY, mats[0], mats[0] * mats[1]]
        suffix = [mats[1] * mats[2], mats[2], IDENTITY]
        blocks = [[0] * ncols for _ in range(3)]
        for i, d in enumerate(darts):
            e = g.edge_index(d)
            for k in range(3):
                contrib = prefix[i] * dmu[(d, k)] * suffix[i] * f_inv
                x11, x12, x21 = sl2_coords(contrib)
                col = 3 * e + k
                blocks[0][col] += x11
                blocks[1][col] += x12
                blocks[2][col] += x21
        rows.extend(blocks)
    return rows


def flat_local_dimension(bundle: SurfaceFlatBundle, tol=FLAT_TOL) -> int:
    """Kernel dimension of the vertex-relation Jacobian at the bundle.

    The bundle must actually satisfy the relations (residual <= tol).
    """
    res = vertex_relation_residual(bundle)
    if res > tol:
        raise NotOnVariety(
            f"vertex relation residual {res} exceeds {tol}")
    rows = flat_linearization(bundle)
    report = solve_kernel(rows, 3 * len(bundle.graph.edges), bundle.domain)
    return report.dim


def subspace_flags(bundle: SurfaceFlatBundle, tree: SpanningTreeData) -> dict:
    """Membership probes for the two distinguished representation subspaces.

    all_meridians_trivial: every node monodromy is the identity, i.e. the
    flat structure descends from the graph's fundamental group alone.
    cotree_holonomies_trivial: after tree gauge fixing the framing
    carries no holonomy, i.e. the underlying bundle is trivializable.
    """
    domain = bundle.domain
    meridians_ok = all(_is_identity(bundle.meridian(d), domain)
                       for d in range(bundle.graph.dart_count))
    holonomies = schottky_holonomies(bundle.framing, tree)
    cotree_ok = all(_is_identity(h, domain) for h in holonomies)
    return {"all_meridians_trivial": meridians_ok,
            "cotree_holonomies_trivial": cotree_ok}


def tree_gauge(framing: Framing, tree: SpanningTreeData) -> GaugeTransform:
    """The gauge with identity at the root that trivializes all tree darts."""
    g = framing.graph
    fix = [None] * g.vertex_count
    fix[tree.root] = IDENTITY
    for v in tree.order[1:]:
        d = tree.entry_dart[v]
        fix[v] = fix[g.vertex_of(d)] * framing.matrix(d)
    return GaugeTransform(g, fix, framing.domain)
