from fractions import Fraction

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from conformal.exceptions import CapacityError
from conformal.finite_forms import make_group, make_qform
from conformal.pointed_gv import Verdict, check_axioms, make_category, mueger_center, verdicts

from . import factories


class CategoryTests(SimpleTestCase):

    def test_semion(self):
        semion = factories.semion()
        self.assertEqual(semion.g0, (0,))
        for x in semion.group.elements():
            self.assertEqual(semion.twist(x), semion.qform(x))

    def test_trivial(self):
        unit = factories.trivial()
        self.assertEqual(unit.g0, ())
        self.assertEqual(unit.dual(()), ())
        self.assertTrue(check_axioms(unit).passed)

    def test_feigin_fuchs_structure(self):
        ff = factories.feigin_fuchs()
        self.assertEqual(ff.g0, (2,))
        for k in range(8):
            self.assertEqual(ff.dual((k,)), ((2 - k) % 8,))
            self.assertEqual(ff.twist((k,)), Fraction(k * k - 2 * k, 16) % 1)
            self.assertEqual(ff.rigid_dual((k,)), ((-k) % 8,))

    def test_group_mismatch(self):
        qform = make_qform(make_group([2]), [["1/4"]])
        with self.assertRaises(ValidationError) as ctx:
            make_category(make_group([4]), qform, (0,))
        self.assertEqual(ctx.exception.code, "pointed_gv.group_mismatch")

    def test_twist_is_q_when_h0_vanishes(self):
        for category in factories.random_categories(seed=8, count=30):
            if category.h0 != category.group.zero:
                continue
            with self.subTest(factors=category.group.invariant_factors):
                for x in category.group.elements():
                    self.assertEqual(category.twist(x), category.qform(x))


class AxiomTests(SimpleTestCase):

    def test_fixtures_pass(self):
        for name, build in factories.GLUING_FIXTURES.items():
            with self.subTest(name=name):
                report = check_axioms(build())
                self.assertTrue(report.passed, report.failures())
                self.assertEqual(len(report.checks), 8)

    def test_random_categories_pass(self):
        for category in factories.random_categories(seed=1, count=40, max_order=64):
            with self.subTest(factors=category.group.invariant_factors, matrix=category.qform.matrix, h0=category.h0):
                self.assertEqual(check_axioms(category).failures(), [])

    def test_broken_twist_fails_ribbon(self):
        ff = factories.feigin_fuchs()
        with self.assertLogs("conformal.pointed_gv", level="WARNING"):
            report = check_axioms(ff, twist=ff.qform)
        self.assertFalse(report.passed)
        ribbon = report["ribbon"]
        self.assertFalse(ribbon.passed)
        self.assertEqual(ribbon.witness, ((0,),))
        self.assertTrue(report["balancing"].passed)

    def test_zero_twist_fails_balancing_along_a_generator(self):
        with self.assertLogs("conformal.pointed_gv", level="WARNING"):
            report = check_axioms(factories.semion(), twist=lambda x: Fraction(0))
        self.assertEqual(report["balancing"].witness, ((1,), (1,)))
        self.assertTrue(report["ribbon"].passed)
        self.assertTrue(report["biadditivity"].passed)

    def test_groups_at_capacity(self):
        for build in (
            lambda: factories.category([4096], [["1/8192"]]),
            lambda: factories.category([8, 8, 8], [["1/16", "0", "0"], ["0", "1/16", "0"], ["0", "0", "1/16"]], (1, 0, 2)),
        ):
            category = build()
            with self.subTest(factors=category.group.invariant_factors):
                self.assertEqual(check_axioms(category, capacity=4096).failures(), [])

    def test_capacity(self):
        with self.assertRaises(CapacityError):
            check_axioms(factories.feigin_fuchs(), capacity=4)


class MuegerTests(SimpleTestCase):

    def test_semion(self):
        center, balanced = mueger_center(factories.semion())
        self.assertTrue(center.is_trivial)
        self.assertTrue(balanced.is_trivial)

    def test_zero_form(self):
        center, balanced = mueger_center(factories.degenerate())
        self.assertEqual(center.order, 2)
        self.assertEqual(balanced.order, 2)

    def test_half_form(self):
        center, balanced = mueger_center(factories.category([2], [["1/2"]]))
        self.assertEqual(center.order, 2)
        self.assertTrue(balanced.is_trivial)


class VerdictTests(SimpleTestCase):

    def test_semion(self):
        result = verdicts(factories.semion())
        self.assertTrue(result.nondegenerate)
        self.assertTrue(result.cofactorizable)
        self.assertTrue(result.modular)
        self.assertIs(result.connected, Verdict.TRUE)
        self.assertTrue(result.extension_unique)
        self.assertIs(result.unique_cyclic_structure, Verdict.TRUE)
        self.assertTrue(result.rigid_duality)

    def test_feigin_fuchs_is_connected_but_not_modular(self):
        result = verdicts(factories.feigin_fuchs())
        self.assertTrue(result.nondegenerate)
        self.assertTrue(result.cofactorizable)
        self.assertFalse(result.modular)
        self.assertIs(result.connected, Verdict.TRUE)
        self.assertFalse(result.rigid_duality)

    def test_degenerate(self):
        result = verdicts(factories.degenerate())
        self.assertFalse(result.nondegenerate)
        self.assertFalse(result.cofactorizable)
        self.assertIs(result.connected, Verdict.UNDETERMINED)
        self.assertFalse(result.extension_unique)
        self.assertIs(result.unique_cyclic_structure, Verdict.UNDETERMINED)
        self.assertEqual(result.as_dict()["connected"], "undetermined")

    def test_implication_chain(self):
        categories = [build() for build in factories.GLUING_FIXTURES.values()]
        categories += [factories.degenerate(), factories.trivial()]
        categories += factories.random_categories(seed=2, count=40)
        for category in categories:
            result = verdicts(category)
            with self.subTest(factors=category.group.invariant_factors, matrix=category.qform.matrix, h0=category.h0):
                if result.modular:
                    self.assertTrue(result.cofactorizable)
                if result.cofactorizable:
                    self.assertIs(result.connected, Verdict.TRUE)
                self.assertEqual(result.extension_unique, result.connected is Verdict.TRUE)
