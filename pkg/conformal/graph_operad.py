"""
Graphs with half-edge involutions and the corolla calculus built on them.

A graph is a set of half-edges attached to vertices together with an involution on
the half-edges: fixed points are legs, 2-cycles are internal edges. Cutting every
internal edge (``cut_edges``) gives one corolla per vertex, contracting every internal
edge (``contract_edges``) gives one corolla per connected component, and morphisms
between disjoint unions of corollas compose by substituting graphs into vertices.

Text format (``dumps_graph`` / ``loads_graph``)::

    graph     := line*
    line      := vertex | edge | comment | blank
    vertex    := "vertex" SP name ":" (SP half_edge)*
    edge      := "edge" SP half_edge SP half_edge
    comment   := "#" any*

Names are runs of characters other than whitespace, ``:`` and ``#``. Every half-edge
appears in exactly one ``vertex`` line; half-edges that no ``edge`` line pairs up are
legs.
"""
import itertools
import logging
import re
from dataclasses import dataclass
from typing import Iterable, Mapping

import networkx as nx
from django.core.exceptions import ValidationError

from .exceptions import CapacityError, CompositionError

logger = logging.getLogger(__name__)

CUT_PREFIX = "h:"
CANONICAL_MAX_VERTICES = 10
NAME_REGEX = r"^[^\s:#]+$"


# Corollas

@dataclass(frozen=True)
class Corolla:
    id: str
    legs: tuple

    @property
    def arity(self):
        return len(self.legs)


def new_corolla(legs, corolla_id="c"):
    legs = tuple(legs)
    seen = set()
    for leg in legs:
        if leg in seen:
            raise ValidationError(
                "Duplicate leg %(leg)r in corolla %(corolla)r.",
                code="graph_operad.duplicate_leg",
                params={"leg": leg, "corolla": corolla_id},
            )
        seen.add(leg)
    return Corolla(id=str(corolla_id), legs=legs)


def forest_legs(forest):
    """All (corolla id, leg) pairs of a disjoint union of corollas."""
    return [(corolla.id, leg) for corolla in forest for leg in corolla.legs]


def forest_shape(forest):
    return {corolla.id: frozenset(corolla.legs) for corolla in forest}


def _check_forest(forest, role):
    ids = [corolla.id for corolla in forest]
    if len(set(ids)) != len(ids):
        raise ValidationError(
            "Corolla ids in the %(role)s are not distinct: %(ids)s.",
            code="graph_operad.duplicate_corolla",
            params={"role": role, "ids": ids},
        )


# Graphs

class Graph:
    """
    Immutable graph: ``attach`` maps half-edges to vertices, ``involution`` pairs
    half-edges into internal edges. Presentation order of vertices and half-edges is
    kept; equality ignores it.
    """

    __slots__ = ("vertices", "attach", "involution", "_at")

    def __init__(self, vertices, attach, involution):
        object.__setattr__(self, "vertices", tuple(vertices))
        object.__setattr__(self, "attach", dict(attach))
        object.__setattr__(self, "involution", dict(involution))
        at = {v: [] for v in self.vertices}
        for half_edge, vertex in self.attach.items():
            at.setdefault(vertex, []).append(half_edge)
        object.__setattr__(self, "_at", {v: tuple(hs) for v, hs in at.items()})

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def _structure(self):
        return (
            frozenset(self.vertices),
            frozenset(self.attach.items()),
            frozenset(self.involution.items()),
        )

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._structure() == other._structure()

    def __hash__(self):
        return hash(self._structure())

    def __repr__(self):
        return f"Graph(vertices={len(self.vertices)}, edges={len(self.internal_edges)}, legs={len(self.legs)})"

    @property
    def half_edges(self):
        return tuple(self.attach)

    @property
    def legs(self):
        return tuple(h for h in self.attach if self.involution[h] == h)

    @property
    def internal_edges(self):
        """Each internal edge once, as a pair (first half-edge in presentation order, partner)."""
        order = {h: i for i, h in enumerate(self.attach)}
        edges = []
        for h in self.attach:
            partner = self.involution[h]
            if partner != h and order[h] < order[partner]:
                edges.append((h, partner))
        return tuple(edges)

    def half_edges_at(self, vertex):
        return self._at[vertex]

    def degree(self, vertex):
        return len(self._at[vertex])

    def is_loop(self, half_edge):
        partner = self.involution[half_edge]
        return partner != half_edge and self.attach[partner] == self.attach[half_edge]

    def to_networkx(self):
        multigraph = nx.MultiGraph()
        multigraph.add_nodes_from(self.vertices)
        for h, partner in self.internal_edges:
            multigraph.add_edge(self.attach[h], self.attach[partner], key=h)
        return multigraph

    def components(self):
        """Vertex tuples of the connected components, in presentation order."""
        position = {v: i for i, v in enumerate(self.vertices)}
        components = [
            tuple(sorted(component, key=position.__getitem__))
            for component in nx.connected_components(self.to_networkx())
        ]
        return sorted(components, key=lambda component: position[component[0]])

    def is_connected(self):
        return len(self.components()) == 1


def make_graph(vertices, attach, involution):
    vertices = tuple(vertices)
    if len(set(vertices)) != len(vertices):
        raise ValidationError("Vertex names are not distinct.", code="graph_operad.invalid_graph")
    vertex_set = set(vertices)
    for half_edge, vertex in attach.items():
        if vertex not in vertex_set:
            raise ValidationError(
                "Half-edge %(half_edge)r is attached to unknown vertex %(vertex)r.",
                code="graph_operad.invalid_graph",
                params={"half_edge": half_edge, "vertex": vertex},
            )
    if set(involution) != set(attach):
        raise ValidationError(
            "The involution must be defined on exactly the attached half-edges.",
            code="graph_operad.invalid_graph",
        )
    for half_edge, partner in involution.items():
        if involution.get(partner) != half_edge:
            raise ValidationError(
                "The involution is not self-inverse at %(half_edge)r.",
                code="graph_operad.invalid_graph",
                params={"half_edge": half_edge},
            )
    return Graph(vertices, attach, involution)


def graph_from_edges(vertex_half_edges: Mapping[str, Iterable[str]], edges: Iterable = ()):
    """Build a graph from the half-edges at each vertex and a list of half-edge pairs."""
    attach = {}
    for vertex, half_edges in vertex_half_edges.items():
        for half_edge in half_edges:
            if half_edge in attach:
                raise ValidationError(
                    "Half-edge %(half_edge)r is attached twice.",
                    code="graph_operad.invalid_graph",
                    params={"half_edge": half_edge},
                )
            attach[half_edge] = vertex
    involution = {h: h for h in attach}
    for h, partner in edges:
        if h not in attach or partner not in attach:
            raise ValidationError(
                "Edge (%(a)r, %(b)r) names an unknown half-edge.",
                code="graph_operad.invalid_graph",
                params={"a": h, "b": partner},
            )
        if h == partner or involution[h] != h or involution[partner] != partner:
            raise ValidationError(
                "Half-edge %(a)r or %(b)r is already part of an edge.",
                code="graph_operad.invalid_graph",
                params={"a": h, "b": partner},
            )
        involution[h] = partner
        involution[partner] = h
    return make_graph(vertex_half_edges.keys(), attach, involution)


def corolla_graph(corolla):
    return graph_from_edges({corolla.id: corolla.legs})


def disjoint_union(*graphs):
    vertices, attach, involution = [], {}, {}
    for graph in graphs:
        if set(graph.vertices) & set(vertices) or set(graph.attach) & set(attach):
            raise ValidationError(
                "Disjoint union of graphs with overlapping names.",
                code="graph_operad.invalid_graph",
            )
        vertices.extend(graph.vertices)
        attach.update(graph.attach)
        involution.update(graph.involution)
    return make_graph(vertices, attach, involution)


def relabel(graph, half_edge_names=None, vertex_names=None):
    """Rename half-edges and/or vertices by the given mappings (missing names are kept)."""
    hmap = half_edge_names or {}
    vmap = vertex_names or {}
    h = lambda name: hmap.get(name, name)  # noqa: E731
    v = lambda name: vmap.get(name, name)  # noqa: E731
    return make_graph(
        [v(vertex) for vertex in graph.vertices],
        {h(half_edge): v(vertex) for half_edge, vertex in graph.attach.items()},
        {h(half_edge): h(partner) for half_edge, partner in graph.involution.items()},
    )


# Cutting and contracting

def cut_prefix(graph):
    """The shortest repetition of CUT_PREFIX that starts no half-edge name of ``graph``."""
    prefix = CUT_PREFIX
    while any(h.startswith(prefix) for h in graph.attach):
        prefix += CUT_PREFIX
    return prefix


def cut_label(graph, half_edge, prefix=None):
    if graph.involution[half_edge] == half_edge:
        return half_edge
    return (prefix or cut_prefix(graph)) + half_edge


def cut_edges(graph):
    """
    nu: one corolla per vertex; internal half-edges become legs labelled "h:<label>",
    with the prefix repeated until no half-edge name of the graph starts with it.
    """
    prefix = cut_prefix(graph)
    return tuple(
        new_corolla([cut_label(graph, h, prefix) for h in graph.half_edges_at(vertex)], vertex)
        for vertex in graph.vertices
    )


def contract_edges(graph):
    """pi_0: one corolla per connected component carrying that component's legs."""
    corollas = []
    for component in graph.components():
        members = set(component)
        legs = [h for h in graph.legs if graph.attach[h] in members]
        corollas.append(new_corolla(legs, component[0]))
    return tuple(corollas)


def genus(graph):
    """First Betti number E - V + 1 of each component, ordered like contract_edges."""
    result = []
    for component in graph.components():
        members = set(component)
        edges = sum(1 for h, _ in graph.internal_edges if graph.attach[h] in members)
        result.append(edges - len(component) + 1)
    return tuple(result)


# Canonical forms

def _vertex_invariant(graph, vertex, labeled_legs, names):
    half_edges = graph.half_edges_at(vertex)
    loops = sum(1 for h in half_edges if graph.is_loop(h)) // 2
    legs = [names.get(h, h) for h in half_edges if graph.involution[h] == h]
    leg_part = tuple(sorted(legs)) if labeled_legs else len(legs)
    return (len(half_edges), loops, leg_part)


def canonical_form(graph, *, labeled_legs=True, leg_names=None):
    """
    Relabeling-invariant key: the lexicographic minimum of the edge/leg incidence over
    all vertex orders that respect the vertex invariants. Internal half-edge names never
    matter; leg names matter when ``labeled_legs`` (optionally through ``leg_names``).
    """
    if len(graph.vertices) > CANONICAL_MAX_VERTICES:
        raise CapacityError(
            "Canonical form needs at most %(limit)s vertices, got %(count)s.",
            code="graph_operad.capacity",
            params={"limit": CANONICAL_MAX_VERTICES, "count": len(graph.vertices)},
        )
    names = dict(leg_names or {})
    invariants = {v: _vertex_invariant(graph, v, labeled_legs, names) for v in graph.vertices}
    classes = {}
    for vertex in graph.vertices:
        classes.setdefault(invariants[vertex], []).append(vertex)
    ordered_keys = sorted(classes)
    blocks = [classes[key] for key in ordered_keys]

    edges = [(graph.attach[h], graph.attach[p]) for h, p in graph.internal_edges]
    legs = [(names.get(h, h), graph.attach[h]) for h in graph.legs]

    best = None
    for choice in itertools.product(*(itertools.permutations(block) for block in blocks)):
        index = {}
        for block in choice:
            for vertex in block:
                index[vertex] = len(index)
        edge_key = tuple(sorted(tuple(sorted((index[u], index[w]))) for u, w in edges))
        if labeled_legs:
            leg_key = tuple(sorted((name, index[v]) for name, v in legs))
        else:
            leg_key = tuple(sorted(index[v] for _, v in legs))
        key = (edge_key, leg_key)
        if best is None or key < best:
            best = key
    return (len(graph.vertices), tuple(ordered_keys), best)


def isomorphic(first, second, *, labeled_legs=True):
    return canonical_form(first, labeled_legs=labeled_legs) == canonical_form(second, labeled_legs=labeled_legs)


# Morphisms

@dataclass(frozen=True, eq=False)
class GraphMorphism:
    """
    A graph with explicit identifications: ``source_ident`` sends every
    (corolla id, leg) of the source forest to a half-edge of the graph,
    ``target_ident`` sends every (corolla id, leg) of the target forest to a leg.
    """
    graph: Graph
    source: tuple
    target: tuple
    source_ident: Mapping
    target_ident: Mapping

    def source_vertex(self, corolla_id):
        corolla = next(c for c in self.source if c.id == corolla_id)
        if corolla.legs:
            return self.graph.attach[self.source_ident[(corolla.id, corolla.legs[0])]]
        return self._empty_vertices()[corolla_id]

    def _empty_vertices(self):
        used = {self.graph.attach[h] for h in self.source_ident.values()}
        free = [v for v in self.graph.vertices if v not in used]
        empty = [c.id for c in self.source if not c.legs]
        return dict(zip(empty, free))


def _check_bijection(mapping, domain, codomain, what):
    if set(mapping) != set(domain):
        raise ValidationError(
            "The %(what)s identification is not defined on exactly the corolla legs.",
            code="graph_operad.invalid_morphism",
            params={"what": what},
        )
    images = list(mapping.values())
    if len(set(images)) != len(images) or set(images) != set(codomain):
        raise ValidationError(
            "The %(what)s identification is not a bijection.",
            code="graph_operad.invalid_morphism",
            params={"what": what},
        )


def make_morphism(graph, source, target, source_ident, target_ident):
    source, target = tuple(source), tuple(target)
    _check_forest(source, "source")
    _check_forest(target, "target")
    _check_bijection(source_ident, forest_legs(source), graph.half_edges, "source")
    _check_bijection(target_ident, forest_legs(target), graph.legs, "target")

    if len(source) != len(graph.vertices):
        raise ValidationError(
            "The source has %(corollas)s corollas but the graph has %(vertices)s vertices.",
            code="graph_operad.invalid_morphism",
            params={"corollas": len(source), "vertices": len(graph.vertices)},
        )
    for corolla in source:
        images = [source_ident[(corolla.id, leg)] for leg in corolla.legs]
        vertices = {graph.attach[h] for h in images}
        if len(vertices) > 1 or (images and set(graph.half_edges_at(vertices.pop())) != set(images)):
            raise ValidationError(
                "Source corolla %(corolla)r is not identified with a single vertex.",
                code="graph_operad.invalid_morphism",
                params={"corolla": corolla.id},
            )

    components = graph.components()
    if len(target) != len(components):
        raise ValidationError(
            "The target has %(corollas)s corollas but the graph has %(components)s components.",
            code="graph_operad.invalid_morphism",
            params={"corollas": len(target), "components": len(components)},
        )
    component_of = {v: i for i, component in enumerate(components) for v in component}
    hit = set()
    for corolla in target:
        found = {component_of[graph.attach[target_ident[(corolla.id, leg)]]] for leg in corolla.legs}
        if len(found) > 1 or (found & hit):
            raise ValidationError(
                "Target corolla %(corolla)r is not identified with a single component.",
                code="graph_operad.invalid_morphism",
                params={"corolla": corolla.id},
            )
        hit |= found
    return GraphMorphism(graph, source, target, dict(source_ident), dict(target_ident))


def _leg_name(corolla_id, leg):
    return f"{corolla_id}/{leg}"


def identity_morphism(forest):
    forest = tuple(forest)
    graph = graph_from_edges({c.id: [_leg_name(c.id, leg) for leg in c.legs] for c in forest})
    ident = {(c.id, leg): _leg_name(c.id, leg) for c in forest for leg in c.legs}
    return make_morphism(graph, forest, forest, ident, ident)


def morphism_from_graph(graph):
    """The morphism nu(graph) -> pi_0(graph) with the derived labels of cut_edges."""
    prefix = cut_prefix(graph)
    source_ident = {
        (vertex, cut_label(graph, h, prefix)): h
        for vertex in graph.vertices
        for h in graph.half_edges_at(vertex)
    }
    target = contract_edges(graph)
    target_ident = {(c.id, leg): leg for c in target for leg in c.legs}
    return make_morphism(graph, cut_edges(graph), target, source_ident, target_ident)


def graft(forest, joins):
    """
    Glue legs of a forest pairwise. ``joins`` is an iterable of
    ((corolla id, leg), (corolla id, leg)); the target legs are named "<corolla>/<leg>".
    """
    forest = tuple(forest)
    _check_forest(forest, "source")
    known = set(forest_legs(forest))
    edges = []
    for first, second in joins:
        for end in (first, second):
            if end not in known:
                raise ValidationError(
                    "Cannot graft unknown leg %(leg)r.",
                    code="graph_operad.invalid_graph",
                    params={"leg": end},
                )
        edges.append((_leg_name(*first), _leg_name(*second)))
    graph = graph_from_edges({c.id: [_leg_name(c.id, leg) for leg in c.legs] for c in forest}, edges)
    source_ident = {(c.id, leg): _leg_name(c.id, leg) for c in forest for leg in c.legs}
    target = contract_edges(graph)
    target_ident = {(c.id, leg): leg for c in target for leg in c.legs}
    return make_morphism(graph, forest, target, source_ident, target_ident)


def compose(outer, inner):
    """Substitute ``inner.graph`` into the vertices of ``outer.graph``."""
    if forest_shape(inner.target) != forest_shape(outer.source):
        raise CompositionError(
            "The target of the inner morphism does not match the source of the outer one.",
            code="graph_operad.composition_mismatch",
            params={
                "inner_target": sorted(forest_shape(inner.target)),
                "outer_source": sorted(forest_shape(outer.source)),
            },
        )
    outer_names = {h: key for key, h in outer.source_ident.items()}

    involution = dict(inner.graph.involution)
    for h, partner in outer.graph.internal_edges:
        x = inner.target_ident[outer_names[h]]
        y = inner.target_ident[outer_names[partner]]
        involution[x] = y
        involution[y] = x
    graph = make_graph(inner.graph.vertices, inner.graph.attach, involution)

    target_ident = {
        key: inner.target_ident[outer_names[leg]]
        for key, leg in outer.target_ident.items()
    }
    return make_morphism(graph, inner.source, outer.target, inner.source_ident, target_ident)


def morphism_key(morphism):
    """Equality key of a morphism: its graph written in source coordinates."""
    name = {h: key for key, h in morphism.source_ident.items()}
    graph = morphism.graph
    edges = frozenset(
        frozenset((name[h], name[partner])) for h, partner in graph.internal_edges
    )
    target = frozenset((key, name[leg]) for key, leg in morphism.target_ident.items())
    empty = frozenset(c.id for c in morphism.source if not c.legs)
    return (
        frozenset(forest_shape(morphism.source).items()),
        frozenset(forest_shape(morphism.target).items()),
        edges,
        target,
        empty,
    )


# Text format

def dumps_graph(graph):
    lines = []
    for vertex in sorted(graph.vertices):
        half_edges = " ".join(sorted(graph.half_edges_at(vertex)))
        lines.append(f"vertex {vertex}: {half_edges}".rstrip())
    for h, partner in sorted(tuple(sorted(edge)) for edge in graph.internal_edges):
        lines.append(f"edge {h} {partner}")
    return "\n".join(lines) + "\n"


def _check_name(name, line_number):
    if not re.match(NAME_REGEX, name):
        raise ValidationError(
            "Line %(line)s: invalid name %(name)r.",
            code="graph_operad.parse_error",
            params={"line": line_number, "name": name},
        )
    return name


def loads_graph(text):
    vertex_half_edges = {}
    edges = []
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        if keyword == "vertex":
            name, colon, half_edges = rest.partition(":")
            if not colon:
                raise ValidationError(
                    "Line %(line)s: expected \"vertex <name>: <half-edges>\".",
                    code="graph_operad.parse_error",
                    params={"line": line_number},
                )
            name = _check_name(name.strip(), line_number)
            if name in vertex_half_edges:
                raise ValidationError(
                    "Line %(line)s: vertex %(name)r declared twice.",
                    code="graph_operad.parse_error",
                    params={"line": line_number, "name": name},
                )
            vertex_half_edges[name] = [_check_name(h, line_number) for h in half_edges.split()]
        elif keyword == "edge":
            ends = rest.split()
            if len(ends) != 2:
                raise ValidationError(
                    "Line %(line)s: an edge names exactly two half-edges.",
                    code="graph_operad.parse_error",
                    params={"line": line_number},
                )
            edges.append((_check_name(ends[0], line_number), _check_name(ends[1], line_number)))
        else:
            raise ValidationError(
                "Line %(line)s: unknown keyword %(keyword)r.",
                code="graph_operad.parse_error",
                params={"line": line_number, "keyword": keyword},
            )
    return graph_from_edges(vertex_half_edges, edges)
