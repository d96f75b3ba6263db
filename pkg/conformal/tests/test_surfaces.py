from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from conformal.exceptions import MoveNotApplicable
from conformal.finite_forms import make_group
from conformal.graph_operad import canonical_form, graph_from_edges
from conformal.surfaces import (
    enumerate_decompositions,
    make_pants_decomposition,
    make_surface,
    s_move,
    whitehead_move,
)

# (genus, boundary circles) with 1 <= 2g - 2 + n <= 4
SURFACES = [(0, 3), (0, 4), (0, 5), (0, 6), (1, 1), (1, 2), (1, 3), (1, 4), (2, 0), (2, 1), (2, 2), (3, 0)]
CAP = 10 ** 4


def theta():
    return graph_from_edges(
        {"u": ["a1", "a2", "a3"], "v": ["b1", "b2", "b3"]},
        [("a1", "b1"), ("a2", "b2"), ("a3", "b3")],
    )


def dumbbell():
    return graph_from_edges(
        {"u": ["a1", "a2", "a3"], "v": ["b1", "b2", "b3"]},
        [("a1", "a2"), ("b1", "b2"), ("a3", "b3")],
    )


def one_holed_torus():
    return graph_from_edges({"v": ["a", "b", "leg"]}, [("a", "b")])


class SurfaceSpecTests(SimpleTestCase):

    def test_examples(self):
        self.assertEqual(make_surface(2).n, 0)
        self.assertEqual(make_surface(0, [(0,), (1,), (1,)]).complexity, 1)
        self.assertEqual(make_surface(1, [(1,)]).complexity, 1)

    def test_negative_genus(self):
        with self.assertRaises(ValidationError) as ctx:
            make_surface(-1)
        self.assertEqual(ctx.exception.code, "surfaces.negative_genus")

    def test_label_outside_group(self):
        with self.assertRaises(ValidationError) as ctx:
            make_surface(0, [(0,), (5,), (1,)], make_group([3]))
        self.assertEqual(ctx.exception.code, "surfaces.invalid_label")


class PantsDecompositionTests(SimpleTestCase):

    def test_examples(self):
        self.assertEqual(make_pants_decomposition(theta()).genus, 2)
        torus = make_pants_decomposition(one_holed_torus())
        self.assertEqual((torus.genus, torus.n), (1, 1))
        self.assertEqual(make_pants_decomposition(dumbbell()).genus, 2)

    def test_not_trivalent(self):
        graph = graph_from_edges({"u": ["a", "b"], "v": ["c", "d", "e"]}, [("a", "c")])
        with self.assertRaises(ValidationError) as ctx:
            make_pants_decomposition(graph)
        self.assertEqual(ctx.exception.code, "surfaces.not_trivalent")

    def test_disconnected(self):
        graph = graph_from_edges({"u": ["a", "b", "c"], "v": ["d", "e", "f"]})
        with self.assertRaises(ValidationError) as ctx:
            make_pants_decomposition(graph)
        self.assertEqual(ctx.exception.code, "surfaces.disconnected")

    def test_surface_mismatch(self):
        with self.assertRaises(ValidationError) as ctx:
            make_pants_decomposition(theta(), surface=make_surface(1, [(0,), (0,)]))
        self.assertEqual(ctx.exception.code, "surfaces.count_mismatch")
        self.assertEqual(ctx.exception.params["vertices"], 2)

    def test_canonical_form_ignores_internal_names(self):
        order = {"x": 0, "c3": 1, "l2": 2, "l3": 3}
        clashing = graph_from_edges({"u": ["x", "c3", "b0"], "v": ["b1", "l2", "l3"]}, [("b0", "b1")])
        plain = graph_from_edges({"u": ["x", "c3", "e"], "v": ["f", "l2", "l3"]}, [("e", "f")])
        self.assertEqual(
            make_pants_decomposition(clashing, order).canonical_form(),
            make_pants_decomposition(plain, order).canonical_form(),
        )
        swapped = make_pants_decomposition(plain, {"x": 0, "l2": 1, "c3": 2, "l3": 3})
        self.assertNotEqual(swapped.canonical_form(), make_pants_decomposition(clashing, order).canonical_form())


class EnumerationTests(SimpleTestCase):

    def test_counts(self):
        self.assertEqual(len(enumerate_decompositions(make_surface(2))), 2)
        self.assertEqual(len(enumerate_decompositions(make_surface(1, [(0,)]))), 1)
        self.assertEqual(len(enumerate_decompositions(make_surface(0, [(0,)] * 3))), 1)
        # the s, t and u channels of the four-holed sphere
        self.assertEqual(len(enumerate_decompositions(make_surface(0, [(0,)] * 4))), 3)

    def test_closed_genus_two_classes(self):
        keys = {pd.canonical_form() for pd in enumerate_decompositions(make_surface(2))}
        expected = {
            make_pants_decomposition(theta()).canonical_form(),
            make_pants_decomposition(dumbbell()).canonical_form(),
        }
        self.assertEqual(keys, expected)

    def test_out_of_range(self):
        for genus, n in ((0, 2), (1, 0), (3, 1)):
            with self.subTest(genus=genus, n=n):
                with self.assertRaises(ValidationError) as ctx:
                    enumerate_decompositions(make_surface(genus, [(0,)] * n))
                self.assertEqual(ctx.exception.code, "surfaces.complexity_out_of_range")

    def test_cap_truncates(self):
        surface = make_surface(0, [(0,)] * 5)
        with self.assertLogs("conformal.surfaces", level="WARNING"):
            found = enumerate_decompositions(surface, cap=4)
        self.assertEqual(len(found), 4)

    def test_decompositions_are_valid_and_distinct(self):
        for genus, n in SURFACES:
            decompositions = enumerate_decompositions(make_surface(genus, [(0,)] * n), cap=CAP)
            keys = [pd.canonical_form() for pd in decompositions]
            with self.subTest(genus=genus, n=n):
                self.assertTrue(decompositions)
                self.assertEqual(len(set(keys)), len(keys))
                for pd in decompositions:
                    self.assertEqual((pd.genus, pd.n), (genus, n))
                    self.assertEqual(3 * pd.pants, 2 * pd.cuts + pd.n)
                    if n == 0:
                        self.assertEqual(pd.pants, 2 * genus - 2)
                        self.assertEqual(pd.cuts, 3 * genus - 3)


class MoveTests(SimpleTestCase):

    def test_flip_on_theta(self):
        pd = make_pants_decomposition(theta())
        flipped = whitehead_move(pd, "a1")
        self.assertEqual(flipped.canonical_form(), pd.canonical_form())
        self.assertEqual(flipped.moves, (("F", "a1"),))

    def test_flip_reassociates_legs(self):
        graph = graph_from_edges({"u": ["e", "x1", "x2"], "v": ["f", "x3", "x4"]}, [("e", "f")])
        pd = make_pants_decomposition(graph)
        flipped = whitehead_move(pd, "e")
        self.assertEqual(set(flipped.dual.half_edges_at("u")), {"e", "x1", "x3"})
        self.assertEqual(set(flipped.dual.half_edges_at("v")), {"f", "x2", "x4"})
        other = whitehead_move(pd, "e", partner="x4")
        self.assertEqual(set(other.dual.half_edges_at("u")), {"e", "x1", "x4"})
        self.assertNotEqual(flipped.canonical_form(), pd.canonical_form())

    def test_flip_rejects_loops(self):
        with self.assertRaises(MoveNotApplicable) as ctx:
            whitehead_move(make_pants_decomposition(dumbbell()), "a1")
        self.assertEqual(ctx.exception.code, "surfaces.move_not_applicable")
        with self.assertRaises(MoveNotApplicable):
            whitehead_move(make_pants_decomposition(theta()), "a1", partner="a2")

    def test_s_move(self):
        torus = make_pants_decomposition(one_holed_torus())
        moved = s_move(torus, "a")
        self.assertEqual(moved.canonical_form(), torus.canonical_form())
        self.assertEqual(moved.moves, (("S", "a"),))
        bell = make_pants_decomposition(dumbbell())
        self.assertEqual(s_move(bell, "b2").canonical_form(), bell.canonical_form())

    def test_s_move_rejects_non_loops(self):
        with self.assertRaises(MoveNotApplicable):
            s_move(make_pants_decomposition(theta()), "a1")
        with self.assertRaises(MoveNotApplicable):
            s_move(make_pants_decomposition(one_holed_torus()), "leg")

    def test_moves_preserve_topology(self):
        for genus, n in SURFACES:
            for pd in enumerate_decompositions(make_surface(genus, [(0,)] * n), cap=CAP):
                for h, mate in pd.dual.internal_edges:
                    move = s_move if pd.dual.is_loop(h) else whitehead_move
                    with self.subTest(genus=genus, n=n, edge=h, move=move.__name__):
                        moved = move(pd, h)
                        self.assertEqual((moved.genus, moved.n), (genus, n))
                        self.assertEqual(moved.leg_order, pd.leg_order)
