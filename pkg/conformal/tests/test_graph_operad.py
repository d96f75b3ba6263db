import random

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from conformal.exceptions import CompositionError
from conformal.graph_operad import (
    canonical_form,
    compose,
    contract_edges,
    corolla_graph,
    cut_edges,
    disjoint_union,
    dumps_graph,
    forest_legs,
    genus,
    graft,
    graph_from_edges,
    identity_morphism,
    isomorphic,
    loads_graph,
    make_graph,
    make_morphism,
    morphism_from_graph,
    morphism_key,
    new_corolla,
    relabel,
)


def theta():
    return graph_from_edges(
        {"u": ["a1", "a2", "a3"], "v": ["b1", "b2", "b3"]},
        [("a1", "b1"), ("a2", "b2"), ("a3", "b3")],
    )


def random_graph(rng, prefix=""):
    vertices = [f"{prefix}v{i}" for i in range(rng.randint(1, 8))]
    half_edges = {v: [f"{v}h{k}" for k in range(rng.randint(0, 4))] for v in vertices}
    pool = [h for hs in half_edges.values() for h in hs]
    rng.shuffle(pool)
    pairs = rng.randint(0, len(pool) // 2)
    edges = [(pool[2 * i], pool[2 * i + 1]) for i in range(pairs)]
    return graph_from_edges(half_edges, edges)


def random_forest(rng, prefix="c"):
    return tuple(
        new_corolla([f"l{k}" for k in range(rng.randint(0, 4))], f"{prefix}{i}")
        for i in range(rng.randint(1, 4))
    )


def random_joins(rng, forest):
    legs = forest_legs(forest)
    rng.shuffle(legs)
    pairs = rng.randint(0, len(legs) // 2)
    return [(legs[2 * i], legs[2 * i + 1]) for i in range(pairs)]


def shape(morphism):
    """Edges and target blocks of a morphism, written in source coordinates."""
    name = {h: key for key, h in morphism.source_ident.items()}
    graph = morphism.graph
    edges = frozenset(frozenset((name[h], name[p])) for h, p in graph.internal_edges)
    blocks = sorted(
        sorted(name[morphism.target_ident[(c.id, leg)]] for leg in c.legs)
        for c in morphism.target
    )
    return edges, blocks


class CorollaTests(SimpleTestCase):

    def test_new_corolla(self):
        self.assertEqual(new_corolla(["a", "b", "c"]).arity, 3)
        self.assertEqual(new_corolla([]).legs, ())

    def test_duplicate_leg(self):
        with self.assertRaises(ValidationError) as ctx:
            new_corolla(["a", "a"])
        self.assertEqual(ctx.exception.code, "graph_operad.duplicate_leg")


class GraphTests(SimpleTestCase):

    def test_invalid_involution(self):
        with self.assertRaises(ValidationError) as ctx:
            make_graph(["v"], {"a": "v", "b": "v"}, {"a": "b", "b": "b"})
        self.assertEqual(ctx.exception.code, "graph_operad.invalid_graph")

    def test_unknown_vertex(self):
        with self.assertRaises(ValidationError):
            make_graph(["v"], {"a": "w"}, {"a": "a"})

    def test_half_edge_in_two_edges(self):
        with self.assertRaises(ValidationError):
            graph_from_edges({"v": ["a", "b", "c"]}, [("a", "b"), ("b", "c")])

    def test_cut_two_vertices(self):
        graph = graph_from_edges({"u": ["x", "y", "e"], "v": ["f", "z", "w"]}, [("e", "f")])
        corollas = cut_edges(graph)
        self.assertEqual([c.arity for c in corollas], [3, 3])
        self.assertIn("h:e", corollas[0].legs)
        contracted = contract_edges(graph)
        self.assertEqual(len(contracted), 1)
        self.assertEqual(sorted(contracted[0].legs), ["w", "x", "y", "z"])

    def test_loop_with_leg(self):
        graph = graph_from_edges({"v": ["a", "b", "leg"]}, [("a", "b")])
        self.assertEqual(cut_edges(graph)[0].arity, 3)
        self.assertEqual(contract_edges(graph)[0].legs, ("leg",))
        self.assertEqual(genus(graph), (1,))

    def test_cut_labels_avoid_existing_names(self):
        graph = graph_from_edges({"v": ["a", "h:a", "x"], "w": ["b", "y", "z"]}, [("a", "b")])
        first, second = cut_edges(graph)
        self.assertEqual(first.legs, ("h:h:a", "h:a", "x"))
        self.assertEqual(second.legs, ("h:h:b", "y", "z"))
        m = morphism_from_graph(graph)
        self.assertEqual(m.source, (first, second))
        self.assertEqual(m.source_ident[("v", "h:a")], "h:a")
        self.assertEqual(m.source_ident[("v", "h:h:a")], "a")

    def test_cut_is_identity_without_edges(self):
        first, second = new_corolla(["a", "b"], "p"), new_corolla(["c"], "q")
        graph = disjoint_union(corolla_graph(first), corolla_graph(second))
        self.assertEqual(cut_edges(graph), (first, second))
        self.assertEqual(contract_edges(graph), (first, second))

    def test_genus_examples(self):
        self.assertEqual(genus(theta()), (2,))
        tree = graph_from_edges({"u": ["a"], "v": ["b", "c"], "w": ["d"]}, [("a", "b"), ("c", "d")])
        self.assertEqual(genus(tree), (0,))

    def test_leg_count_bookkeeping(self):
        rng = random.Random(7)
        for _ in range(220):
            graph = random_graph(rng)
            with self.subTest(graph=dumps_graph(graph)):
                nu_legs = sum(c.arity for c in cut_edges(graph))
                pi_legs = sum(c.arity for c in contract_edges(graph))
                self.assertEqual(nu_legs, len(graph.half_edges))
                self.assertEqual(pi_legs, nu_legs - 2 * len(graph.internal_edges))
                self.assertEqual(len(cut_edges(graph)), len(graph.vertices))

    def test_genus_additive_and_relabel_invariant(self):
        rng = random.Random(11)
        for _ in range(50):
            first, second = random_graph(rng, "a"), random_graph(rng, "b")
            with self.subTest(first=dumps_graph(first), second=dumps_graph(second)):
                self.assertEqual(genus(disjoint_union(first, second)), genus(first) + genus(second))
                renamed = relabel(first, {h: f"x{i}" for i, h in enumerate(first.half_edges)})
                self.assertEqual(genus(renamed), genus(first))
                self.assertTrue(isomorphic(renamed, first, labeled_legs=False))

    def test_canonical_form_distinguishes_theta_and_dumbbell(self):
        dumbbell = graph_from_edges(
            {"u": ["a1", "a2", "a3"], "v": ["b1", "b2", "b3"]},
            [("a1", "a2"), ("b1", "b2"), ("a3", "b3")],
        )
        self.assertNotEqual(canonical_form(theta()), canonical_form(dumbbell))
        swapped = relabel(theta(), vertex_names={"u": "v", "v": "u"})
        self.assertEqual(canonical_form(swapped), canonical_form(theta()))

    def test_text_format(self):
        text = "# theta\nvertex u: a1 a2 a3\nvertex v: b1 b2 b3\n\nedge a1 b1\nedge a2 b2\nedge a3 b3\n"
        graph = loads_graph(text)
        self.assertEqual(graph, theta())
        self.assertEqual(loads_graph(dumps_graph(graph)), graph)

    def test_text_format_errors(self):
        for text in ("vertex u a b", "edge a", "loop a b", "vertex u: a\nvertex u: b", "vertex u: a\nedge a b"):
            with self.subTest(text=text):
                with self.assertRaises(ValidationError):
                    loads_graph(text)


class MorphismTests(SimpleTestCase):

    def test_identity_laws(self):
        rng = random.Random(3)
        for _ in range(40):
            forest = random_forest(rng)
            m = graft(forest, random_joins(rng, forest))
            with self.subTest(forest=forest):
                self.assertEqual(morphism_key(compose(m, identity_morphism(m.source))), morphism_key(m))
                self.assertEqual(morphism_key(compose(identity_morphism(m.target), m)), morphism_key(m))

    def test_path_substitution(self):
        inner = graft(
            [new_corolla(["p", "q"], "u"), new_corolla(["r", "s"], "w"), new_corolla(["d", "e"], "y")],
            [(("u", "p"), ("w", "r"))],
        )
        outer = graft(inner.target, [(("u", "w/s"), ("y", "y/d"))])
        composite = compose(outer, inner)
        self.assertEqual(len(composite.graph.vertices), 3)
        self.assertEqual(len(composite.graph.internal_edges), 2)
        self.assertEqual(genus(composite.graph), (0,))
        (target,) = contract_edges(composite.graph)
        self.assertEqual(target.arity, sum(c.arity for c in outer.target))

    def test_loop_substitution_adds_genus(self):
        inner = graft(
            [new_corolla(["a", "b", "c"], "v"), new_corolla(["t", "s"], "z")],
            [(("v", "a"), ("v", "b"))],
        )
        outer = graft(inner.target, [(("v", "v/c"), ("z", "z/t"))])
        composite = compose(outer, inner)
        self.assertEqual(genus(composite.graph), (sum(genus(inner.graph)) + sum(genus(outer.graph)),))

    def test_composition_matches_direct_substitution(self):
        rng = random.Random(2024)
        for _ in range(120):
            forest = random_forest(rng)
            inner_joins = random_joins(rng, forest)
            inner = graft(forest, inner_joins)
            outer_joins = random_joins(rng, inner.target)
            outer = graft(inner.target, outer_joins)

            # outer legs are named "<corolla>/<leg>" after the inner source legs
            source_of = {v: k for k, v in inner.source_ident.items()}
            translated = [
                (source_of[inner.target_ident[first]], source_of[inner.target_ident[second]])
                for first, second in outer_joins
            ]
            oracle = graft(forest, inner_joins + translated)
            composite = compose(outer, inner)
            with self.subTest(forest=forest, inner=inner_joins, outer=outer_joins):
                self.assertEqual(shape(composite), shape(oracle))
                self.assertEqual(len(composite.target), len(oracle.target))

    def test_associativity(self):
        rng = random.Random(99)
        for _ in range(40):
            forest = random_forest(rng)
            first = graft(forest, random_joins(rng, forest))
            second = graft(first.target, random_joins(rng, first.target))
            third = graft(second.target, random_joins(rng, second.target))
            with self.subTest(forest=forest):
                left = compose(third, compose(second, first))
                right = compose(compose(third, second), first)
                self.assertEqual(morphism_key(left), morphism_key(right))
                self.assertEqual(canonical_form(left.graph), canonical_form(right.graph))

    def test_composition_mismatch(self):
        m = graft([new_corolla(["a", "b"], "x")], [])
        other = identity_morphism([new_corolla(["c"], "y")])
        with self.assertRaises(CompositionError) as ctx:
            compose(other, m)
        self.assertEqual(ctx.exception.code, "graph_operad.composition_mismatch")

    def test_morphism_from_graph(self):
        m = morphism_from_graph(theta())
        self.assertEqual([c.arity for c in m.source], [3, 3])
        self.assertEqual([c.arity for c in m.target], [0])

    def test_make_morphism_rejects_split_corolla(self):
        graph = graph_from_edges({"u": ["a"], "v": ["b"]})
        source = (new_corolla(["x", "y"], "c"),)
        target = (new_corolla(["x"], "s"), new_corolla(["y"], "t"))
        with self.assertRaises(ValidationError) as ctx:
            make_morphism(
                graph, source, target,
                {("c", "x"): "a", ("c", "y"): "b"},
                {("s", "x"): "a", ("t", "y"): "b"},
            )
        self.assertEqual(ctx.exception.code, "graph_operad.invalid_morphism")
