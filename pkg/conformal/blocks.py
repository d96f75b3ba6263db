"""
Dimensions of spaces of conformal blocks.

For a pointed category x (x) D(x) = g0 for every x, so the end over X (x) DX is |G|
copies of g0 and Hom(X_1 + ... + X_n + g g0, g0) gives the direct formula
|G|^g [X_1 + ... + X_n + (g - 1) g0 = 0]. The glued count evaluates the same space
from a pants decomposition: one group element per cut, read as e on one side and
D(e) on the other, weighted by the pants multiplicities.
"""
import itertools
import logging
from dataclasses import dataclass

import networkx as nx
import numpy as np
from django.conf import settings
from django.core.exceptions import ValidationError

from modfunctor.validators import BUILTIN_NAMES

from .exceptions import ConformalError, DegenerateError
from .mcg_torus import check_relations, st_matrices
from .modular_data import TABLES

logger = logging.getLogger(__name__)


def _check_labels(category, labels):
    for index, label in enumerate(labels):
        if not category.group.contains(tuple(label)):
            raise ValidationError(
                "Label %(index)s = %(label)s is outside Z/%(factors)s.",
                code="blocks.invalid_label",
                params={"index": index, "label": tuple(label), "factors": category.group.invariant_factors},
            )


def block_condition(category, surface):
    group = category.group
    total = group.add(group.sum(surface.boundary_labels), group.scale(surface.genus - 1, category.g0))
    return total == group.zero


def block_dim_direct(category, surface):
    _check_labels(category, surface.boundary_labels)
    if block_condition(category, surface):
        return category.group.order ** surface.genus
    return 0


def pants_multiplicity(category, x, y, z):
    group = category.group
    return int(group.add(group.add(x, y), z) == category.g0)


def _spanning_tree(dual):
    """Root, vertices in BFS order, and for each other vertex its (up, down) half-edges."""
    tree = nx.Graph()
    tree.add_nodes_from(dual.vertices)
    for _, _, key in nx.minimum_spanning_edges(dual.to_networkx(), keys=True, data=False):
        tree.add_edge(dual.attach[key], dual.attach[dual.involution[key]], half_edge=key)
    root = dual.vertices[0]
    order, parent = [root], {}
    for u, v in nx.bfs_edges(tree, root):
        h = tree.edges[u, v]["half_edge"]
        up = h if dual.attach[h] == v else dual.involution[h]
        parent[v] = (up, dual.involution[up])
        order.append(v)
    return root, order, parent


def block_dim_glued(category, pd, labels):
    """
    Sum over labellings of the cuts of the product of pants multiplicities. Cuts on a
    spanning tree are forced by the pants around them, so only the remaining g cuts
    are enumerated and the root pants decides.
    """
    labels = tuple(tuple(label) for label in labels)
    if len(labels) != pd.n:
        raise ValidationError(
            "The decomposition has %(legs)s boundary circles but %(labels)s labels were given.",
            code="blocks.decomposition_mismatch",
            params={"legs": pd.n, "labels": len(labels)},
        )
    _check_labels(category, labels)
    group, dual = category.group, pd.dual
    boundary = {leg: labels[index] for leg, index in pd.leg_order.items()}
    root, order, parent = _spanning_tree(dual)
    tree_halves = {h for pair in parent.values() for h in pair}
    free = [(h, mate) for h, mate in dual.internal_edges if h not in tree_halves]
    elements = list(group.elements())

    total = 0
    for values in itertools.product(elements, repeat=len(free)):
        label = dict(boundary)
        for (h, mate), e in zip(free, values):
            label[h] = e
            label[mate] = category.dual(e)
        for vertex in reversed(order[1:]):
            up, down = parent[vertex]
            known = group.sum(label[h] for h in dual.half_edges_at(vertex) if h != up)
            label[up] = group.sub(category.g0, known)
            label[down] = category.dual(label[up])
        total += pants_multiplicity(category, *(label[h] for h in dual.half_edges_at(root)))
    logger.debug("glued count %s over %s free cuts", total, len(free))
    return total


@dataclass(frozen=True)
class VerlindeReport:
    value: complex
    nearest: int
    residual: float


def verlinde_dim(md, genus, labels=(), *, tol=None):
    """sum_j S_0j^(2 - 2g - n) prod_k S_(i_k j), with the distance to the nearest integer."""
    tol = tol if tol is not None else settings.CONFORMAL["TOLERANCE"]
    s0 = md.S[0, :]
    if np.abs(s0).min() < tol:
        raise DegenerateError(
            "Verlinde formula needs S_0j != 0 for all j.",
            code="blocks.degenerate",
        )
    terms = s0 ** (2 - 2 * genus - len(labels))
    for i in labels:
        terms = terms * md.S[i, :]
    value = complex(terms.sum())
    nearest = int(round(value.real))
    return VerlindeReport(value=value, nearest=nearest, residual=abs(value - nearest))


def builtin_modular_data(name, category=None, *, tol=None):
    tol = tol if tol is not None else settings.CONFORMAL["TOLERANCE"]
    if name == "pointed":
        if category is None:
            raise ValidationError(
                "Pointed modular data needs a category.",
                code="blocks.unknown_builtin",
            )
        return st_matrices(category, tol=tol)
    if name not in BUILTIN_NAMES:
        raise ValidationError(
            "Unknown builtin modular data %(name)r.",
            code="blocks.unknown_builtin",
            params={"name": name},
        )
    md = TABLES[name]()
    report = check_relations(md, tol)
    if not report.passed:
        raise ConformalError(
            "Builtin %(name)s data fails the SL(2,Z) relations.",
            code="blocks.invalid_table",
            params={"name": name},
        )
    return md
