"""Finite multigraphs and the stabilizing families built by glueing copies of a graph.

Vertices and edges carry dense integer ids in construction order.  Edge
orientation is fixed by storage order: edge ``(a, b)`` runs from end 0 at
``a`` to end 1 at ``b``.  Graphs are immutable; every operation returns a
new graph.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, product


class GraphError(ValueError):
    """Invalid graph construction or argument."""


def _freeze_labels(labels):
    return tuple(sorted(labels.items()))


@dataclass(frozen=True)
class Graph:
    vertices: tuple
    edges: tuple
    basepoint: int | None = None
    vertex_labels: tuple = ()   # sorted ((vertex, (coord, copy)), ...)
    edge_labels: tuple = ()     # sorted ((edge_index, (coord, copy)), ...)

    def __post_init__(self):
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise GraphError("duplicate vertex ids")
        for a, b in self.edges:
            if a not in vset or b not in vset:
                raise GraphError(f"edge ({a}, {b}) references missing vertex")
        if self.basepoint is not None and self.basepoint not in vset:
            raise GraphError("basepoint is not a vertex")

    # -- basic queries -------------------------------------------------

    @property
    def n_vertices(self):
        return len(self.vertices)

    @property
    def n_edges(self):
        return len(self.edges)

    def endpoint(self, eidx, end):
        return self.edges[eidx][end]

    def incident(self, v):
        """(edge index, end) pairs at v; a loop contributes both ends."""
        out = []
        for i, (a, b) in enumerate(self.edges):
            if a == v:
                out.append((i, 0))
            if b == v:
                out.append((i, 1))
        return out

    def valence(self, v):
        return len(self.incident(v))

    def essential_vertices(self):
        return [v for v in self.vertices if self.valence(v) >= 3]

    def has_loops(self):
        return any(a == b for a, b in self.edges)

    def euler_characteristic(self):
        return self.n_vertices - self.n_edges

    def adjacency(self):
        adj = {v: [] for v in self.vertices}
        for i, (a, b) in enumerate(self.edges):
            adj[a].append((b, i))
            adj[b].append((a, i))
        return adj

    def components(self):
        adj = self.adjacency()
        seen = set()
        comps = []
        for v in self.vertices:
            if v in seen:
                continue
            comp = []
            stack = [v]
            seen.add(v)
            while stack:
                u = stack.pop()
                comp.append(u)
                for w, _ in adj[u]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self):
        return len(self.components()) <= 1

    def is_tree(self):
        return self.is_connected() and self.n_edges == self.n_vertices - 1

    def label_of_vertex(self, v):
        return dict(self.vertex_labels).get(v)

    def label_of_edge(self, eidx):
        return dict(self.edge_labels).get(eidx)

    def tree_path(self, u, w):
        """Vertex path from u to w (BFS shortest path; unique in a tree)."""
        if u == w:
            return [u]
        adj = self.adjacency()
        prev = {u: None}
        queue = [u]
        while queue:
            nxt = []
            for x in queue:
                for y, _ in adj[x]:
                    if y not in prev:
                        prev[y] = x
                        if y == w:
                            path = [w]
                            while path[-1] != u:
                                path.append(prev[path[-1]])
                            return path[::-1]
                        nxt.append(y)
            queue = nxt
        raise GraphError(f"no path from {u} to {w}")

    def edge_between(self, a, b):
        """Index of the unique edge with endpoint set {a, b}; error if not unique."""
        hits = [i for i, (x, y) in enumerate(self.edges) if {x, y} == {a, b}]
        if len(hits) != 1:
            raise GraphError(f"edge between {a} and {b} not unique ({len(hits)} found)")
        return hits[0]

    # -- serialization ---------------------------------------------------

    def to_json(self):
        """Canonical JSON string; round-trips bit-exactly through from_json."""
        payload = {
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
            "basepoint": self.basepoint,
            "labels": {
                "vertices": {str(v): list(l) for v, l in self.vertex_labels},
                "edges": {str(e): list(l) for e, l in self.edge_labels},
            },
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        labels = data.get("labels") or {}
        return cls(
            vertices=tuple(data["vertices"]),
            edges=tuple(tuple(e) for e in data["edges"]),
            basepoint=data.get("basepoint"),
            vertex_labels=_freeze_labels(
                {int(k): tuple(v) for k, v in (labels.get("vertices") or {}).items()}
            ),
            edge_labels=_freeze_labels(
                {int(k): tuple(v) for k, v in (labels.get("edges") or {}).items()}
            ),
        )


# -- canonical constructions -------------------------------------------


def make_star(k):
    """Star with k leaves: one center (the basepoint), k edges."""
    if k < 1:
        raise GraphError("a star needs at least one leaf")
    return Graph(
        vertices=tuple(range(k + 1)),
        edges=tuple((0, i) for i in range(1, k + 1)),
        basepoint=0,
    )


def make_h_graph():
    """The tree with exactly two valence-3 vertices and four leaves."""
    return Graph(
        vertices=tuple(range(6)),
        edges=((0, 1), (0, 2), (0, 3), (1, 4), (1, 5)),
    )


def make_path_graph(m):
    """Path with m edges; vertex 0 (an endpoint) is the basepoint."""
    if m < 1:
        raise GraphError("a path needs at least one edge")
    return Graph(
        vertices=tuple(range(m + 1)),
        edges=tuple((i, i + 1) for i in range(m)),
        basepoint=0,
    )


def make_cycle_graph(m):
    """Cycle with m vertices and m edges, m >= 3."""
    if m < 3:
        raise GraphError("a cycle graph needs at least three vertices")
    return Graph(
        vertices=tuple(range(m)),
        edges=tuple((i, (i + 1) % m) for i in range(m)),
        basepoint=0,
    )


def make_spider(legs_a=2, legs_b=3, bridge=1):
    """Tree with two essential vertices joined by a path of ``bridge`` edges.

    Vertex 0 carries ``legs_a`` extra leaves, the far center carries
    ``legs_b``; with the bridge both centers have valence >= 3.
    """
    if legs_a < 2 or legs_b < 2 or bridge < 1:
        raise GraphError("each center needs two extra legs and a bridge edge")
    verts = [0]
    edges = []
    prev = 0
    for _ in range(bridge):
        nxt = len(verts)
        verts.append(nxt)
        edges.append((prev, nxt))
        prev = nxt
    far = prev
    for _ in range(legs_a):
        leaf = len(verts)
        verts.append(leaf)
        edges.append((0, leaf))
    for _ in range(legs_b):
        leaf = len(verts)
        verts.append(leaf)
        edges.append((far, leaf))
    return Graph(vertices=tuple(verts), edges=tuple(edges), basepoint=0)


# -- homeomorphism-preserving surgery ----------------------------------


def subdivide(g, t):
    """Replace every edge by a path of t edges.  t = 1 returns g unchanged."""
    if t < 1:
        raise GraphError("subdivision factor must be >= 1")
    if t == 1:
        return g
    verts = list(g.vertices)
    next_id = max(verts) + 1 if verts else 0
    edges = []
    vlabels = dict(g.vertex_labels)
    elabels = {}
    old_elabels = dict(g.edge_labels)
    for i, (a, b) in enumerate(g.edges):
        chain = [a]
        for _ in range(t - 1):
            verts.append(next_id)
            if i in old_elabels:
                vlabels[next_id] = old_elabels[i]
            chain.append(next_id)
            next_id += 1
        chain.append(b)
        for j in range(t):
            if i in old_elabels:
                elabels[len(edges)] = old_elabels[i]
            edges.append((chain[j], chain[j + 1]))
    return Graph(
        vertices=tuple(verts),
        edges=tuple(edges),
        basepoint=g.basepoint,
        vertex_labels=_freeze_labels(vlabels),
        edge_labels=_freeze_labels(elabels),
    )


def normalize_loops(g):
    """Subdivide each loop edge once; parallel edges are kept as they are."""
    if not g.has_loops():
        return g
    verts = list(g.vertices)
    next_id = max(verts) + 1
    edges = []
    vlabels = dict(g.vertex_labels)
    elabels = {}
    old_elabels = dict(g.edge_labels)
    for i, (a, b) in enumerate(g.edges):
        if a == b:
            verts.append(next_id)
            if i in old_elabels:
                vlabels[next_id] = old_elabels[i]
                elabels[len(edges)] = old_elabels[i]
                elabels[len(edges) + 1] = old_elabels[i]
            edges.append((a, next_id))
            edges.append((next_id, b))
            next_id += 1
        else:
            if i in old_elabels:
                elabels[len(edges)] = old_elabels[i]
            edges.append((a, b))
    return Graph(
        vertices=tuple(verts),
        edges=tuple(edges),
        basepoint=g.basepoint,
        vertex_labels=_freeze_labels(vlabels),
        edge_labels=_freeze_labels(elabels),
    )


# -- glueing -------------------------------------------------------------


def _check_marked_subgraph(g, marked_vertices, marked_edges, side):
    vset = set(marked_vertices)
    if len(vset) != len(marked_vertices):
        raise GraphError(f"{side}: repeated vertices in glueing correspondence")
    for v in vset:
        if v not in set(g.vertices):
            raise GraphError(f"{side}: vertex {v} not in graph")
    eset = set(marked_edges)
    if len(eset) != len(marked_edges):
        raise GraphError(f"{side}: repeated edges in glueing correspondence")
    for e in eset:
        if not 0 <= e < g.n_edges:
            raise GraphError(f"{side}: edge index {e} out of range")
        a, b = g.edges[e]
        if a not in vset or b not in vset:
            raise GraphError(f"{side}: glued edge {e} has an endpoint off the marked vertices")
    # only single vertices and marked trees may be glued
    if marked_edges:
        sub = Graph(vertices=tuple(sorted(vset)),
                    edges=tuple(g.edges[e] for e in marked_edges))
        if not sub.is_tree():
            raise GraphError(f"{side}: glued subgraph must be a single vertex or a tree")
    elif len(vset) != 1:
        raise GraphError(f"{side}: vertex-only glueing must identify a single vertex")


def glue_with_maps(a, b, vertex_map, edge_map=None, label=None):
    """Glue b onto a along the correspondence b-subgraph -> a-subgraph.

    ``vertex_map`` maps marked b-vertices to a-vertices; ``edge_map`` maps
    marked b-edges to a-edges (empty for a point glueing).  Returns the new
    graph plus the embedding of all of b into it (vertex and edge maps).
    New parts coming from b get ``label`` when given.
    """
    edge_map = dict(edge_map or {})
    vertex_map = dict(vertex_map)
    _check_marked_subgraph(b, list(vertex_map.keys()), list(edge_map.keys()), "summand side")
    _check_marked_subgraph(a, list(vertex_map.values()), list(edge_map.values()), "base side")
    for be, ae in edge_map.items():
        bu, bv = b.edges[be]
        au, av = a.edges[ae]
        if {vertex_map[bu], vertex_map[bv]} != {au, av}:
            raise GraphError("glueing correspondence does not respect edge endpoints")

    verts = list(a.vertices)
    next_id = max(verts) + 1 if verts else 0
    vmap = {}
    vlabels = dict(a.vertex_labels)
    for v in b.vertices:
        if v in vertex_map:
            vmap[v] = vertex_map[v]
        else:
            vmap[v] = next_id
            verts.append(next_id)
            if label is not None:
                vlabels[next_id] = label
            next_id += 1
    edges = list(a.edges)
    elabels = dict(a.edge_labels)
    emap = {}
    for i, (u, v) in enumerate(b.edges):
        if i in edge_map:
            emap[i] = edge_map[i]
        else:
            emap[i] = len(edges)
            if label is not None:
                elabels[len(edges)] = label
            edges.append((vmap[u], vmap[v]))
    out = Graph(
        vertices=tuple(verts),
        edges=tuple(edges),
        basepoint=a.basepoint,
        vertex_labels=_freeze_labels(vlabels),
        edge_labels=_freeze_labels(elabels),
    )
    return out, vmap, emap


def glue(a, b, vertex_map, edge_map=None):
    """Disjoint union of a and b with the marked subgraphs identified."""
    out, _, _ = glue_with_maps(a, b, vertex_map, edge_map)
    return out


def wedge(a, b, at_a=None, at_b=None):
    """One-point glueing; defaults to the two basepoints."""
    at_a = a.basepoint if at_a is None else at_a
    at_b = b.basepoint if at_b is None else at_b
    if at_a is None or at_b is None:
        raise GraphError("wedge needs basepoints on both sides")
    return glue(a, b, {at_b: at_a})


# -- subgraphs -----------------------------------------------------------


@dataclass(frozen=True)
class Subgraph:
    """Vertex/edge subset of a parent graph, closed under edge endpoints."""

    graph: Graph
    vertices: frozenset
    edges: frozenset

    def __post_init__(self):
        vs = set(self.graph.vertices)
        if not self.vertices <= vs:
            raise GraphError("subgraph vertices not in parent graph")
        for e in self.edges:
            a, b = self.graph.edges[e]
            if a not in self.vertices or b not in self.vertices:
                raise GraphError("subgraph edge with endpoint outside the subgraph")

    def is_whole_graph(self):
        return (len(self.vertices) == self.graph.n_vertices
                and len(self.edges) == self.graph.n_edges)

    def contains_subgraph(self, other):
        return other.vertices <= self.vertices and other.edges <= self.edges

    def union(self, other):
        if other.graph is not self.graph:
            raise GraphError("subgraphs of different parents")
        return Subgraph(self.graph, self.vertices | other.vertices, self.edges | other.edges)


def full_subgraph(g):
    return Subgraph(g, frozenset(g.vertices), frozenset(range(g.n_edges)))


# -- families ------------------------------------------------------------

WEDGE_FI = "wedge_fi"
INTERVAL_DELTA = "interval_delta"
CIRCLE_LAMBDA = "circle_lambda"


@dataclass(frozen=True)
class SummandSpec:
    """One glueable coordinate: the summand graph and how it attaches."""

    graph: Graph
    summand_vertices: tuple = ()
    base_vertices: tuple = ()
    summand_edges: tuple = ()
    base_edges: tuple = ()


@dataclass(frozen=True)
class FamilyDescriptor:
    kind: str
    base: Graph | None
    summands: tuple

    def __post_init__(self):
        if self.kind not in (WEDGE_FI, INTERVAL_DELTA, CIRCLE_LAMBDA):
            raise GraphError(f"unknown family kind {self.kind!r}")
        if self.kind == WEDGE_FI:
            if self.base is None:
                raise GraphError("wedge family needs a base graph")
            if not self.summands:
                raise GraphError("wedge family needs at least one summand")
            for spec in self.summands:
                if spec.graph.has_loops() or self.base.has_loops():
                    raise GraphError("normalize loops before building a family")
                _check_marked_subgraph(spec.graph, spec.summand_vertices,
                                       spec.summand_edges, "summand side")
                _check_marked_subgraph(self.base, spec.base_vertices,
                                       spec.base_edges, "base side")
                if len(spec.summand_vertices) != len(spec.base_vertices) or \
                        len(spec.summand_edges) != len(spec.base_edges):
                    raise GraphError("glueing correspondence sides differ in size")
        else:
            if len(self.summands) != 1:
                raise GraphError("interval/circle families take exactly one summand")
            g = self.summands[0].graph
            if g.basepoint is None:
                raise GraphError("interval/circle summand needs a basepoint")
            if g.valence(g.basepoint) < 2:
                raise GraphError("summand basepoint must have valence >= 2")
            if g.has_loops():
                raise GraphError("normalize loops before building a family")

    @property
    def arity(self):
        return len(self.summands) if self.kind == WEDGE_FI else 1

    def all_trees(self):
        """Whether every constituent graph (base, summands, glued parts) is a tree."""
        if self.kind != WEDGE_FI:
            return False
        if not self.base.is_tree():
            return False
        return all(spec.graph.is_tree() for spec in self.summands)

    def point_glued(self):
        if self.kind != WEDGE_FI:
            return False
        return all(len(spec.summand_vertices) == 1 and not spec.summand_edges
                   for spec in self.summands)

    def generation_bound(self, n):
        """Per-coordinate finite-generation degree asserted for this family."""
        if self.kind == INTERVAL_DELTA:
            return n
        if self.kind == CIRCLE_LAMBDA:
            return 6 * n
        if self.all_trees():
            return 2 * n
        if self.point_glued():
            return 3 * n
        return None


def wedge_family(base, summands):
    return FamilyDescriptor(WEDGE_FI, base, tuple(summands))


def interval_family(summand):
    return FamilyDescriptor(INTERVAL_DELTA, None, (SummandSpec(summand),))


def circle_family(summand):
    return FamilyDescriptor(CIRCLE_LAMBDA, None, (SummandSpec(summand),))


def _circle_backbone(k):
    if k >= 3:
        g = make_cycle_graph(k)
        return g, tuple(range(k))
    if k == 2:
        g = Graph(vertices=(0, 1), edges=((0, 1), (1, 0)), basepoint=0)
        return g, (0, 1)
    # k <= 1: the backbone would be a loop; it ships pre-normalized (one midpoint)
    g = Graph(vertices=(0, 1), edges=((0, 1), (1, 0)), basepoint=0)
    return g, (0,) if k == 1 else ()


@dataclass(frozen=True)
class FamilyInstance:
    """A realized family member with its summand bookkeeping."""

    descriptor: FamilyDescriptor
    sizes: tuple
    graph: Graph
    copy_vertex_maps: tuple   # sorted (((coord, copy), ((summand vid, vid), ...)), ...)
    copy_edge_maps: tuple

    def copy_vmap(self, coord, copy):
        return dict(dict(self.copy_vertex_maps)[(coord, copy)])

    def copy_emap(self, coord, copy):
        return dict(dict(self.copy_edge_maps)[(coord, copy)])

    def base_part(self):
        """Vertices and edges not belonging to any summand copy."""
        labelled_v = {v for v, _ in self.graph.vertex_labels}
        labelled_e = {e for e, _ in self.graph.edge_labels}
        verts = frozenset(self.graph.vertices) - labelled_v
        edges = frozenset(range(self.graph.n_edges)) - labelled_e
        return verts, edges

    def summand_automorphism(self, coord, perm):
        """Vertex/edge maps of the graph automorphism permuting copies of one
        coordinate by ``perm`` (a dict copy index -> copy index)."""
        sizes_i = self.sizes[coord - 1]
        if sorted(perm) != list(range(1, sizes_i + 1)) or \
                sorted(perm.values()) != list(range(1, sizes_i + 1)):
            raise GraphError("not a permutation of the copy indices")
        vmap = {v: v for v in self.graph.vertices}
        emap = {e: e for e in range(self.graph.n_edges)}
        for m, m2 in perm.items():
            src_v = self.copy_vmap(coord, m)
            dst_v = self.copy_vmap(coord, m2)
            for sv, gv in src_v.items():
                vmap[gv] = dst_v[sv]
            src_e = self.copy_emap(coord, m)
            dst_e = self.copy_emap(coord, m2)
            for se, ge in src_e.items():
                emap[ge] = dst_e[se]
        return vmap, emap


def realize_family(descriptor, sizes):
    """Assemble the family member at the given sizes, labelling each copy."""
    sizes = tuple(int(s) for s in sizes)
    if len(sizes) != descriptor.arity:
        raise GraphError(f"expected {descriptor.arity} sizes, got {len(sizes)}")
    if any(s < 0 for s in sizes):
        raise GraphError("sizes must be nonnegative")
    cv_maps = {}
    ce_maps = {}

    if descriptor.kind == WEDGE_FI:
        g = descriptor.base
        for i, spec in enumerate(descriptor.summands, start=1):
            vertex_map = dict(zip(spec.summand_vertices, spec.base_vertices))
            edge_map = dict(zip(spec.summand_edges, spec.base_edges))
            for m in range(1, sizes[i - 1] + 1):
                g, vmap, emap = glue_with_maps(g, spec.graph, vertex_map,
                                               edge_map, label=(i, m))
                cv_maps[(i, m)] = tuple(sorted(vmap.items()))
                ce_maps[(i, m)] = tuple(sorted(emap.items()))
    else:
        k = sizes[0]
        summand = descriptor.summands[0].graph
        if descriptor.kind == INTERVAL_DELTA:
            g = make_path_graph(k + 1)
            attach = tuple(range(1, k + 1))
        else:
            g, attach = _circle_backbone(k)
        for m in range(1, k + 1):
            g, vmap, emap = glue_with_maps(
                g, summand, {summand.basepoint: attach[m - 1]}, label=(1, m))
            cv_maps[(1, m)] = tuple(sorted(vmap.items()))
            ce_maps[(1, m)] = tuple(sorted(emap.items()))

    return FamilyInstance(
        descriptor=descriptor,
        sizes=sizes,
        graph=g,
        copy_vertex_maps=tuple(sorted(cv_maps.items())),
        copy_edge_maps=tuple(sorted(ce_maps.items())),
    )


def support_subgraphs(instance, degrees):
    """Images of all degree-``degrees`` morphisms into this family member.

    Injections from smaller objects factor through degree-d objects, so these
    supports are exactly the images that matter for span checks.
    """
    degrees = tuple(int(d) for d in degrees)
    if len(degrees) != instance.descriptor.arity:
        raise GraphError("degree tuple arity mismatch")
    for d, k in zip(degrees, instance.sizes):
        if d < 0 or d > k:
            raise GraphError("degrees must satisfy 0 <= d <= size componentwise")
    base_v, base_e = instance.base_part()
    per_coord_choices = [
        list(combinations(range(1, k + 1), d))
        for d, k in zip(degrees, instance.sizes)
    ]
    out = []
    for choice in product(*per_coord_choices):
        verts = set(base_v)
        edges = set(base_e)
        for i, copies in enumerate(choice, start=1):
            for m in copies:
                verts.update(dict(instance.copy_vmap(i, m)).values())
                edges.update(dict(instance.copy_emap(i, m)).values())
        out.append(Subgraph(instance.graph, frozenset(verts), frozenset(edges)))
    return out


def support_embeddings(descriptor, degrees, sizes):
    """Realize the family at ``sizes`` and list the degree-``degrees`` supports."""
    instance = realize_family(descriptor, sizes)
    if isinstance(degrees, int):
        degrees = (degrees,) * descriptor.arity
    return support_subgraphs(instance, degrees)


def identify_vertices(g, u, v):
    """Self-glueing: identify two vertices of one graph (the smaller id
    survives).  An edge between them becomes a loop; normalize afterwards."""
    if u == v:
        raise GraphError("identify two distinct vertices")
    if u not in set(g.vertices) or v not in set(g.vertices):
        raise GraphError("vertices to identify must exist")
    keep, drop = min(u, v), max(u, v)
    remap = {x: (keep if x == drop else x) for x in g.vertices}
    verts = tuple(x for x in g.vertices if x != drop)
    edges = tuple((remap[a], remap[b]) for a, b in g.edges)
    basepoint = remap[g.basepoint] if g.basepoint is not None else None
    vlabels = {remap[x]: l for x, l in g.vertex_labels if x != drop}
    return Graph(vertices=verts, edges=edges, basepoint=basepoint,
                 vertex_labels=_freeze_labels(vlabels),
                 edge_labels=g.edge_labels)
