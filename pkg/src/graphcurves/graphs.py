"""Trivalent multigraphs encoded by darts, and the curves they index.

A dart is a half-edge.  A graph on n vertices carries darts 0..3n-1, a
fixed-point-free involution pairing them into edges, and a map assigning
each dart to its vertex.  Loops and parallel edges are allowed.  Every
connected trivalent graph here has first Betti number g = |E| - |V| + 1
with |E| = 3g - 3 and |V| = 2g - 2, so g >= 2.

Each vertex is read as a projective line with three marked points.  The
darts at a vertex, in increasing id order, sit at the points 0, 1 and
infinity of that line; gluing the lines along paired darts produces a
connected nodal curve of arithmetic genus g.
"""
from __future__ import annotations

import hashlib
import json
from collections import deque
from dataclasses import dataclass
from random import Random

from .errors import (Disconnected, GenerationFailed, MalformedPairing,
                     NotTrivalent, UnknownName)

# Marked point labels by local index: z = 0, z = 1, z = infinity.
POINT_ZERO, POINT_ONE, POINT_INF = 0, 1, 2
POINT_NAMES = ("0", "1", "inf")


@dataclass(frozen=True)
class Dart:
    """One half-edge: its id, vertex, involution partner and local slot."""

    id: int
    vertex: int
    partner: int
    local_index: int


class TrivalentGraph:
    """Immutable dart-encoded trivalent multigraph."""

    def __init__(self, vertex_count, pairing, dart_vertex=None):
        if vertex_count < 2 or vertex_count % 2:
            raise NotTrivalent(
                f"vertex count must be even and at least 2, got {vertex_count}")
        n_darts = 3 * vertex_count
        if dart_vertex is None:
            dart_vertex = [d // 3 for d in range(n_darts)]
        dart_vertex = list(dart_vertex)
        if len(dart_vertex) != n_darts:
            raise MalformedPairing(
                f"dart_vertex must list all {n_darts} darts, got {len(dart_vertex)}")

        partner = [None] * n_darts
        for pair in pairing:
            if len(pair) != 2:
                raise MalformedPairing(f"pair {pair!r} is not a 2-tuple")
            a, b = pair
            if not (0 <= a < n_darts and 0 <= b < n_darts):
                raise MalformedPairing(f"dart id out of range in pair {pair!r}")
            if a == b:
                raise MalformedPairing(f"dart {a} paired with itself")
            if partner[a] is not None or partner[b] is not None:
                raise MalformedPairing(f"dart repeated in pairing near {pair!r}")
            partner[a] = b
            partner[b] = a
        if any(p is None for p in partner):
            missing = [d for d, p in enumerate(partner) if p is None]
            raise MalformedPairing(f"darts {missing} missing from pairing")

        owned = [[] for _ in range(vertex_count)]
        for d, v in enumerate(dart_vertex):
            if not (0 <= v < vertex_count):
                raise MalformedPairing(f"dart {d} assigned to invalid vertex {v}")
            owned[v].append(d)
        for v, ds in enumerate(owned):
            if len(ds) != 3:
                raise NotTrivalent(f"vertex {v} carries {len(ds)} darts, expected 3")

        self.vertex_count = vertex_count
        self.dart_count = n_darts
        self._partner = tuple(partner)
        self._dart_vertex = tuple(dart_vertex)
        self._vertex_darts = tuple(tuple(sorted(ds)) for ds in owned)
        self._local_index = [0] * n_darts
        for ds in self._vertex_darts:
            for i, d in enumerate(ds):
                self._local_index[d] = i
        self._local_index = tuple(self._local_index)

        # Edges in canonical order: (min dart, max dart), sorted by min dart.
        self.edges = tuple(sorted((min(d, self._partner[d]), max(d, self._partner[d]))
                                  for d in range(n_darts) if d < self._partner[d]))
        self._edge_of_dart = {}
        for i, (a, b) in enumerate(self.edges):
            self._edge_of_dart[a] = i
            self._edge_of_dart[b] = i

        self._check_connected()

    def _check_connected(self):
        seen = {0}
        queue = deque([0])
        while queue:
            v = queue.popleft()
            for d in self._vertex_darts[v]:
                w = self._dart_vertex[self._partner[d]]
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        if len(seen) != self.vertex_count:
            raise Disconnected(
                f"graph has {self.vertex_count} vertices but only {len(seen)} reachable")

    # -- dart accessors -------------------------------------------------

    def partner(self, d: int) -> int:
        return self._partner[d]

    def vertex_of(self, d: int) -> int:
        return self._dart_vertex[d]

    def local_index(self, d: int) -> int:
        """Position of d within the sorted dart triple of its vertex."""
        return self._local_index[d]

    def marked_point(self, d: int) -> int:
        """Marked point of the dart on its component: 0, 1 or 2 (= infinity)."""
        return self._local_index[d]

    def vertex_darts(self, v: int):
        return self._vertex_darts[v]

    def dart(self, d: int) -> Dart:
        return Dart(d, self._dart_vertex[d], self._partner[d], self._local_index[d])

    def darts(self):
        return tuple(self.dart(d) for d in range(self.dart_count))

    # -- edge accessors -------------------------------------------------

    def edge_index(self, d: int) -> int:
        return self._edge_of_dart[d]

    def edge_darts(self, e: int):
        """(primary, partner) darts of edge e; the primary dart has the lower id."""
        return self.edges[e]

    def edge_endpoints(self, e: int):
        a, b = self.edges[e]
        return (self._dart_vertex[a], self._dart_vertex[b])

    def is_loop(self, e: int) -> bool:
        u, v = self.edge_endpoints(e)
        return u == v

    @property
    def genus(self) -> int:
        return len(self.edges) - self.vertex_count + 1

    def __eq__(self, other):
        if not isinstance(other, TrivalentGraph):
            return NotImplemented
        return (self._partner, self._dart_vertex) == (other._partner, other._dart_vertex)

    def __hash__(self):
        return hash((self._partner, self._dart_vertex))

    def __repr__(self):
        return (f"TrivalentGraph(vertices={self.vertex_count}, "
                f"edges={len(self.edges)}, genus={self.genus})")


def build_graph(pairing, dart_vertex=None, vertex_count=None) -> TrivalentGraph:
    """Build and validate a graph from a dart pairing.

    vertex_count defaults to the number implied by dart_vertex, or to
    len(pairing) * 2 / 3 with the block assignment dart -> dart // 3.
    """
    if vertex_count is None:
        if dart_vertex is not None:
            vertex_count = max(dart_vertex) + 1 if dart_vertex else 0
        else:
            vertex_count = (2 * len(pairing)) // 3
    return TrivalentGraph(vertex_count, pairing, dart_vertex)


# -- fixture catalog ----------------------------------------------------
#
# Block dart labels throughout: vertex v owns darts 3v, 3v+1, 3v+2 sitting
# at the marked points 0, 1, infinity in that order.
#
# theta     two vertices joined by three parallel edges          (genus 2)
# dumbbell  a loop at each of two vertices plus a bridge         (genus 2)
# k4        complete graph on four vertices                      (genus 3)
# k33       complete bipartite graph on 3 + 3 vertices           (genus 4)
# prism     two triangles joined by a perfect matching           (genus 4)

_CATALOG = {
    "theta": (2, ((0, 3), (1, 4), (2, 5))),
    "dumbbell": (2, ((0, 1), (3, 4), (2, 5))),
    "k4": (4, ((0, 3), (1, 6), (2, 9), (4, 7), (5, 10), (8, 11))),
    "k33": (6, ((0, 9), (1, 12), (2, 15), (3, 10), (4, 13), (5, 16),
                (6, 11), (7, 14), (8, 17))),
    "prism": (6, ((1, 3), (4, 6), (0, 7), (2, 11), (5, 14), (8, 17),
                  (10, 12), (13, 15), (9, 16))),
}

CATALOG_NAMES = tuple(sorted(_CATALOG))


def catalog_graph(name: str) -> TrivalentGraph:
    """Named fixture graph; see CATALOG_NAMES."""
    try:
        vertex_count, pairing = _CATALOG[name]
    except KeyError:
        raise UnknownName(f"no catalog graph named {name!r}; "
                          f"choose from {', '.join(CATALOG_NAMES)}") from None
    return TrivalentGraph(vertex_count, pairing)


def random_trivalent(vertex_count: int, seed: int,
                     max_attempts: int = 1000) -> TrivalentGraph:
    """Uniformly random connected trivalent graph on the given vertices.

    Draws uniform perfect matchings on the darts and rejects disconnected
    outcomes; deterministic for a fixed (vertex_count, seed).
    """
    if vertex_count < 2 or vertex_count % 2:
        raise NotTrivalent(
            f"vertex count must be even and at least 2, got {vertex_count}")
    rng = Random(seed)
    darts = list(range(3 * vertex_count))
    for _ in range(max_attempts):
        rng.shuffle(darts)
        pairing = [(darts[2 * i], darts[2 * i + 1]) for i in range(len(darts) // 2)]
        try:
            return TrivalentGraph(vertex_count, pairing)
        except Disconnected:
            continue
    raise GenerationFailed(
        f"no connected trivalent graph on {vertex_count} vertices "
        f"after {max_attempts} attempts (seed {seed})")


@dataclass(frozen=True)
class SpanningTreeData:
    """Deterministic breadth-first spanning tree rooted at vertex 0.

    entry_dart[v] is the dart at the parent of v pointing along the tree
    edge into v (None at the root).  cotree_edges lists the g edges off
    the tree in increasing edge-index order.
    """

    root: int
    order: tuple
    entry_dart: tuple
    tree_darts: frozenset
    tree_edges: tuple
    cotree_edges: tuple


def spanning_tree(graph: TrivalentGraph) -> SpanningTreeData:
    """BFS spanning tree scanning darts in increasing id order."""
    entry = [None] * graph.vertex_count
    seen = {0}
    order = [0]
    tree_edges = []
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for d in graph.vertex_darts(v):
            w = graph.vertex_of(graph.partner(d))
            if w not in seen:
                seen.add(w)
                order.append(w)
                entry[w] = d
                tree_edges.append(graph.edge_index(d))
                queue.append(w)
    tree_darts = frozenset(d for e in tree_edges for d in graph.edges[e])
    cotree = tuple(e for e in range(len(graph.edges)) if e not in set(tree_edges))
    return SpanningTreeData(root=0, order=tuple(order), entry_dart=tuple(entry),
                            tree_darts=tree_darts, tree_edges=tuple(tree_edges),
                            cotree_edges=cotree)


def canonical_hash(graph: TrivalentGraph) -> str:
    """Fixture key: hash of the pairing after breadth-first relabeling.

    Vertices are renamed in BFS discovery order from vertex 0 (darts
    scanned in increasing id order) and each vertex's darts are renamed
    3v, 3v+1, 3v+2 preserving their relative order, which keeps marked
    points in place.  This is a stable content key, not a graph
    isomorphism invariant.
    """
    tree = spanning_tree(graph)
    new_vertex = {v: i for i, v in enumerate(tree.order)}
    new_dart = {}
    for v in tree.order:
        base = 3 * new_vertex[v]
        for i, d in enumerate(graph.vertex_darts(v)):
            new_dart[d] = base + i
    pairs = sorted(tuple(sorted((new_dart[a], new_dart[b])))
                   for a, b in graph.edges)
    payload = json.dumps({"vertices": graph.vertex_count, "pairing": pairs})
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


def graph_to_json(graph: TrivalentGraph) -> dict:
    return {
        "vertices": graph.vertex_count,
        "pairing": [list(e) for e in graph.edges],
        "dart_vertex": list(graph._dart_vertex),
    }


def graph_from_json(obj: dict) -> TrivalentGraph:
    if not isinstance(obj, dict) or "pairing" not in obj:
        raise MalformedPairing("graph JSON must be an object with a 'pairing' key")
    vertex_count = obj.get("vertices")
    dart_vertex = obj.get("dart_vertex")
    if vertex_count is None:
        if dart_vertex is None:
            raise MalformedPairing("graph JSON needs 'vertices' or 'dart_vertex'")
        vertex_count = max(dart_vertex) + 1
    return TrivalentGraph(vertex_count, obj["pairing"], dart_vertex)
