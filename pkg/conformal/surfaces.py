"""
Labelled surfaces and their pants decompositions.

A pants decomposition is recorded by its dual graph: one trivalent vertex per pair
of pants, one internal edge per cutting curve, one leg per boundary circle. The two
moves act on dual graphs: ``whitehead_move`` re-associates the four-holed sphere
around an edge between two distinct pants, ``s_move`` swaps the cut of a one-holed
torus (a loop) for a transversal one, which leaves the dual graph unchanged.
"""
import functools
import logging
from dataclasses import dataclass, field

from django.conf import settings
from django.core.exceptions import ValidationError

from .exceptions import MoveNotApplicable
from .graph_operad import canonical_form, genus, graph_from_edges, make_graph

logger = logging.getLogger(__name__)

MAX_COMPLEXITY = 4


@dataclass(frozen=True)
class SurfaceSpec:
    genus: int
    boundary_labels: tuple = ()

    @property
    def n(self):
        return len(self.boundary_labels)

    @property
    def complexity(self):
        return 2 * self.genus - 2 + self.n


def make_surface(genus, labels=(), group=None):
    if isinstance(genus, bool) or not isinstance(genus, int) or genus < 0:
        raise ValidationError(
            "Genus must be a nonnegative integer, got %(genus)r.",
            code="surfaces.negative_genus",
            params={"genus": genus},
        )
    labels = tuple(tuple(label) for label in labels)
    if group is not None:
        for index, label in enumerate(labels):
            if not group.contains(label):
                raise ValidationError(
                    "Boundary label %(index)s = %(label)s is not an element of Z/%(factors)s.",
                    code="surfaces.invalid_label",
                    params={"index": index, "label": label, "factors": group.invariant_factors},
                )
    return SurfaceSpec(genus, labels)


@dataclass(frozen=True)
class PantsDecomposition:
    dual: object
    leg_order: dict = field(hash=False)
    moves: tuple = ()

    @property
    def genus(self):
        return genus(self.dual)[0]

    @property
    def n(self):
        return len(self.dual.legs)

    @property
    def pants(self):
        return len(self.dual.vertices)

    @property
    def cuts(self):
        return len(self.dual.internal_edges)

    def canonical_form(self):
        names = {leg: f"b{index}" for leg, index in self.leg_order.items()}
        return canonical_form(self.dual, labeled_legs=True, leg_names=names)


def make_pants_decomposition(dual, leg_order=None, *, surface=None, moves=()):
    legs = dual.legs
    if leg_order is None:
        leg_order = {leg: index for index, leg in enumerate(legs)}
    leg_order = dict(leg_order)
    vertices, edges = len(dual.vertices), len(dual.internal_edges)
    counts = {"vertices": vertices, "edges": edges, "legs": len(legs)}

    if vertices == 0 or not dual.is_connected():
        raise ValidationError(
            "The dual graph must be connected and non-empty.",
            code="surfaces.disconnected",
            params=counts,
        )
    for vertex in dual.vertices:
        if dual.degree(vertex) != 3:
            raise ValidationError(
                "Vertex %(vertex)r has degree %(degree)s; pants are trivalent.",
                code="surfaces.not_trivalent",
                params={"vertex": vertex, "degree": dual.degree(vertex), **counts},
            )
    if 3 * vertices != 2 * edges + len(legs):
        raise ValidationError(
            "Counts violate 3V = 2E + L: V=%(vertices)s, E=%(edges)s, L=%(legs)s.",
            code="surfaces.count_mismatch",
            params=counts,
        )
    if set(leg_order) != set(legs) or sorted(leg_order.values()) != list(range(len(legs))):
        raise ValidationError(
            "The leg order must number the %(legs)s legs 0..n-1.",
            code="surfaces.invalid_leg_order",
            params=counts,
        )
    decomposition = PantsDecomposition(dual, leg_order, tuple(moves))
    if surface is not None and (decomposition.genus, decomposition.n) != (surface.genus, surface.n):
        raise ValidationError(
            "Decomposition of genus %(genus)s with %(legs)s legs does not fit a surface of genus %(expected_genus)s with %(expected_n)s boundary circles.",
            code="surfaces.count_mismatch",
            params={
                **counts,
                "genus": decomposition.genus,
                "expected_genus": surface.genus,
                "expected_n": surface.n,
            },
        )
    return decomposition


# Enumeration

def _perfect_matchings(slots):
    if not slots:
        yield []
        return
    first, rest = slots[0], slots[1:]
    for i, partner in enumerate(rest):
        for matching in _perfect_matchings(rest[:i] + rest[i + 1:]):
            yield [(first, partner)] + matching


def _leg_placements(n, vertices):
    """Leg -> vertex assignments up to renaming vertices (restricted growth), at most 3 per vertex."""
    def extend(placement, load, used):
        if len(placement) == n:
            yield tuple(placement)
            return
        for vertex in range(min(used + 1, vertices)):
            if load[vertex] < 3:
                load[vertex] += 1
                placement.append(vertex)
                yield from extend(placement, load, max(used, vertex + 1))
                placement.pop()
                load[vertex] -= 1

    yield from extend([], [0] * vertices, 0)


@functools.lru_cache(maxsize=None)
def _all_decompositions(genus_, n):
    vertices = 2 * genus_ - 2 + n
    found = {}
    for placement in _leg_placements(n, vertices):
        half_edges = {f"v{v}": [] for v in range(vertices)}
        for index, vertex in enumerate(placement):
            half_edges[f"v{vertex}"].append(f"b{index}")
        free = []
        for v in range(vertices):
            for slot in range(3 - len(half_edges[f"v{v}"])):
                name = f"v{v}s{slot}"
                half_edges[f"v{v}"].append(name)
                free.append(name)
        for matching in _perfect_matchings(free):
            dual = graph_from_edges(half_edges, matching)
            if not dual.is_connected():
                continue
            key = canonical_form(dual, labeled_legs=True)
            if key not in found:
                found[key] = dual
    logger.debug("%s decomposition classes for genus %s with %s boundary circles", len(found), genus_, n)
    return tuple(
        make_pants_decomposition(found[key], {f"b{i}": i for i in range(n)})
        for key in sorted(found)
    )


def enumerate_decompositions(surface, cap=None):
    """All pants decompositions of the surface up to isomorphism fixing boundary indices."""
    if not 1 <= surface.complexity <= MAX_COMPLEXITY:
        raise ValidationError(
            "Enumeration needs 1 <= 2g - 2 + n <= %(max)s, got %(complexity)s.",
            code="surfaces.complexity_out_of_range",
            params={"max": MAX_COMPLEXITY, "complexity": surface.complexity},
        )
    cap = cap if cap is not None else settings.CONFORMAL["ENUMERATION_CAP"]
    decompositions = _all_decompositions(surface.genus, surface.n)
    if len(decompositions) > cap:
        logger.warning("truncating %s decompositions to the cap %s", len(decompositions), cap)
    return list(decompositions[:cap])


# Moves

def _internal_partner(pd, edge):
    dual = pd.dual
    if edge not in dual.attach or dual.involution[edge] == edge:
        raise MoveNotApplicable(
            "%(edge)r is not a half-edge of an internal edge.",
            code="surfaces.move_not_applicable",
            params={"edge": edge},
        )
    return dual.involution[edge]


def whitehead_move(pd, edge, partner=None):
    """
    Flip the edge containing half-edge ``edge``. At its first end u keep the first other
    half-edge a and bring over ``partner`` from the far end v; by default the partner
    is v's first other half-edge unless that is a's own mate (then the second one).
    """
    dual = pd.dual
    mate = _internal_partner(pd, edge)
    u, v = dual.attach[edge], dual.attach[mate]
    if u == v:
        raise MoveNotApplicable(
            "Edge %(edge)r is a loop; the flip needs two distinct pants.",
            code="surfaces.move_not_applicable",
            params={"edge": edge},
        )
    a, b = [h for h in dual.half_edges_at(u) if h != edge]
    c, d = [h for h in dual.half_edges_at(v) if h != mate]
    if partner is None:
        partner = d if dual.involution[a] == c else c
    elif partner not in (c, d):
        raise MoveNotApplicable(
            "%(partner)r is not at the far end of %(edge)r.",
            code="surfaces.move_not_applicable",
            params={"partner": partner, "edge": edge},
        )
    attach = dict(dual.attach)
    attach[b] = v
    attach[partner] = u
    flipped = make_graph(dual.vertices, attach, dual.involution)
    logger.debug("flip along %s moves %s and %s", edge, b, partner)
    return make_pants_decomposition(flipped, pd.leg_order, moves=pd.moves + (("F", edge),))


def s_move(pd, edge):
    mate = _internal_partner(pd, edge)
    if pd.dual.attach[edge] != pd.dual.attach[mate]:
        raise MoveNotApplicable(
            "Edge %(edge)r is not a loop; the S-move acts on a one-holed torus.",
            code="surfaces.move_not_applicable",
            params={"edge": edge},
        )
    return make_pants_decomposition(pd.dual, pd.leg_order, moves=pd.moves + (("S", edge),))
