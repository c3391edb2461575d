import random
from fractions import Fraction

from django.test import SimpleTestCase

from hecke_workbench.char_arith import CentralCharacter, CharacterValue, load_character
from hecke_workbench.constants import VERDICT_FINITE, VERDICT_INFINITE
from hecke_workbench.hecke_core import HeckeContext
from hecke_workbench.laurent import ParameterFunction, e
from hecke_workbench.root_data import preset
from hecke_workbench.spec_algebra import (
    build_specialized,
    classify_and_crosscheck,
    count_simples,
    evaluation_count,
    matrix_algebra,
    quotient_basis,
    truncated_polynomial_algebra,
)


def a1_character(s, q):
    """A1 character with s(omega) = s and the parameter specialized to q."""

    return CentralCharacter(
        ("s", "q"),
        [CharacterValue(0, (1, 0))],
        [CharacterValue(0, (0, 1))],
        {"s": s, "q": q},
    )


class QuotientRingTestCase(SimpleTestCase):
    def test_a1_at_the_identity(self):
        quotient = quotient_basis(preset("A1"), [1])
        self.assertEqual(quotient.dimension, 2)
        self.assertEqual(quotient.basis_weights, ((0,), (1,)))

    def test_a1_orbit_sum_is_a_scalar(self):
        quotient = quotient_basis(preset("A1"), [3])
        orbit_sum = quotient.reduce(e((1,)) + e((-1,)))
        self.assertEqual(orbit_sum, tuple(Fraction(10, 3) * c for c in quotient.unit))

    def test_a2_regular_point(self):
        a2 = preset("A2")
        quotient = quotient_basis(a2, [2, 3])
        self.assertEqual(quotient.dimension, 6)
        self.assertEqual(evaluation_count(a2, [2, 3]), 6)

    def test_g2_dimension(self):
        quotient = quotient_basis(preset("G2"), [1, 2])
        self.assertEqual(quotient.dimension, 12)
        self.assertEqual(quotient.to_json()["dimension"], 12)
        self.assertTrue(quotient.to_json()["groebner_basis"])

    def test_dimension_is_the_weyl_group_order(self):
        points = {
            "A1": ([1], [-1], [3], [Fraction(1, 2)]),
            "A2": ([1, 1], [2, 3], [1, -1]),
            "G2": ([1, 1], [1, 2], [2, 3]),
        }
        for name, values in points.items():
            datum = preset(name)
            for point in values:
                with self.subTest(datum=name, point=point):
                    self.assertEqual(
                        quotient_basis(datum, point).dimension, len(datum.weyl_group)
                    )

    def test_evaluation_needs_a_regular_point(self):
        self.assertEqual(evaluation_count(preset("G2"), [2, 3]), 12)
        self.assertIsNone(evaluation_count(preset("G2"), [1, 2]))

    def test_multiplication_matches_weights(self):
        quotient = quotient_basis(preset("A2"), [2, 3])
        u = quotient.normal_form((1, 0))
        v = quotient.normal_form((0, 1))
        self.assertEqual(quotient.multiply(u, v), quotient.normal_form((1, 1)))


class SimpleCountTestCase(SimpleTestCase):
    def test_local_algebra(self):
        result = count_simples(truncated_polynomial_algebra(2))
        self.assertEqual(result.simple_count, 1)
        self.assertEqual(result.radical_dim, 1)

    def test_matrix_algebra(self):
        result = count_simples(matrix_algebra(2))
        self.assertEqual((result.simple_count, result.radical_dim), (1, 0))

    def test_basis_order_does_not_matter(self):
        algebra = matrix_algebra(2)
        self.assertEqual(count_simples(algebra.permuted([2, 0, 3, 1])).simple_count, 1)
        self.assertTrue(algebra.permuted([3, 2, 1, 0]).check_unit())

    def test_a1_regular_character(self):
        a1 = preset("A1")
        algebra = build_specialized(a1, ParameterFunction.default(a1), a1_character(3, 2))
        self.assertEqual(algebra.dimension, 4)
        self.assertTrue(algebra.check_unit())
        self.assertTrue(algebra.check_associativity(random.Random(0)))
        result = count_simples(algebra)
        self.assertEqual((result.simple_count, result.radical_dim), (1, 0))

    def test_a1_reducible_principal_series(self):
        a1 = preset("A1")
        algebra = build_specialized(a1, ParameterFunction.default(a1), a1_character(2, 4))
        self.assertEqual(count_simples(algebra).simple_count, 2)

    def test_a1_group_algebra(self):
        a1 = preset("A1")
        algebra = build_specialized(a1, ParameterFunction.default(a1), a1_character(1, 1))
        self.assertEqual(count_simples(algebra).simple_count, 2)


class G2SimpleCountTestCase(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.g2 = preset("G2")
        cls.parameters = ParameterFunction.default(cls.g2)
        cls.algebra = build_specialized(
            cls.g2, cls.parameters, load_character("example1", cls.g2)
        )

    def test_dimension(self):
        self.assertEqual(self.algebra.dimension, 144)

    def test_unit_and_associativity(self):
        self.assertTrue(self.algebra.check_unit())
        self.assertTrue(self.algebra.check_associativity(random.Random(9), samples=10))

    def test_example1_has_five_simples(self):
        self.assertEqual(count_simples(self.algebra).simple_count, 5)

    def test_hecke_elements_embed(self):
        context = HeckeContext(self.g2, self.algebra.parameters)
        s = self.algebra.from_hecke(context.simple(0))
        square = self.algebra.from_hecke(context.simple(0) * context.simple(0))
        self.assertEqual(self.algebra.multiply(s, s), square)


class CrosscheckTestCase(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.g2 = preset("G2")
        cls.parameters = ParameterFunction.default(cls.g2)

    def crosscheck(self, name, degree=1):
        a = load_character(name, self.g2)
        return classify_and_crosscheck(self.g2, self.parameters, a, degree)

    def test_trivial_character(self):
        report = self.crosscheck("trivial")
        self.assertEqual(report.simple_count.simple_count, 6)
        self.assertEqual(len(report.orbit_classes), 6)
        self.assertTrue(report.match)

    def test_generic_character(self):
        report = self.crosscheck("generic")
        self.assertEqual(report.verdict["verdict"], VERDICT_FINITE)
        self.assertEqual(report.simple_count.simple_count, 4)
        self.assertEqual(len(report.orbit_classes), 4)
        self.assertTrue(report.match)

    def test_example2_is_not_counted(self):
        report = self.crosscheck("example2")
        self.assertEqual(report.verdict["verdict"], VERDICT_INFINITE)
        self.assertIsNone(report.simple_count)
        self.assertIsNone(report.match)
