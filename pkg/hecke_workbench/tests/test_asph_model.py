import random

from django.test import SimpleTestCase

from hecke_workbench.asph_model import AntisphericalModule, random_element, verify_realization
from hecke_workbench.hecke_core import HeckeContext
from hecke_workbench.laurent import ParameterFunction, demazure
from hecke_workbench.root_data import preset


def module(name, values=None):
    datum = preset(name)
    parameters = ParameterFunction.default(datum)
    if values is not None:
        parameters = parameters.specialized(values)
    return AntisphericalModule(HeckeContext(datum, parameters))


class OperatorTestCase(SimpleTestCase):
    def setUp(self):
        self.module = module("G2")
        self.context = self.module.context

    def test_theta(self):
        m = self.context.monomial((0, 1))
        self.assertEqual(self.module.act_theta((0, 0), m), m)
        self.assertEqual(self.module.act_theta((1, 0), m), self.context.monomial((1, 1)))

    def test_theta_composition(self):
        rng = random.Random(1)
        m = random_element(rng, 2, 2, 3)
        self.assertEqual(
            self.module.act_theta((1, 2), self.module.act_theta((-3, 1), m)),
            self.module.act_theta((-2, 3), m),
        )

    def test_T_on_the_unit_is_the_sign(self):
        one = self.context.monomial((0, 0))
        for i in (0, 1):
            self.assertEqual(self.module.act_T(i, one), -1)

    def test_K_on_the_unit(self):
        one = self.context.monomial((0, 0))
        self.assertEqual(self.module.act_K(0, one), 1 - self.module.q_e_alpha(0))

    def test_K_long_root(self):
        m = self.context.monomial((0, 1))
        expected = (1 - self.module.q_e_alpha(1)) * demazure(self.context.datum, 1, m)
        self.assertEqual(self.module.act_K(1, m), expected)

    def test_K_is_minus_T_plus_q_e_alpha(self):
        rng = random.Random(2)
        for _ in range(100):
            m = random_element(rng, 2, 2, 3)
            for i in (0, 1):
                self.assertEqual(
                    self.module.act_K(i, m),
                    -(self.module.act_T(i, m) + self.module.q_e_alpha(i) * m),
                )

    def test_hecke_generator_acts_as_T(self):
        m = self.context.monomial((2, -1))
        self.assertEqual(
            self.module.act_hecke(self.context.simple(1), m), self.module.act_T(1, m)
        )

    def test_distinct_elements_act_differently(self):
        self.assertFalse(
            self.module.acts_identically(self.context.simple(0), self.context.one(), 1)
        )


class RealizationTestCase(SimpleTestCase):
    def test_g2_relations_hold(self):
        datum = preset("G2")
        report = verify_realization(datum, ParameterFunction.default(datum), trials=200)
        self.assertTrue(report.passed, report.to_json())
        self.assertEqual(report.result("quadratic[1]").trials, 200)
        self.assertEqual(report.result("braid[1,2]").trials, 200)

    def test_a1_relations_hold(self):
        datum = preset("A1")
        report = verify_realization(datum, ParameterFunction.default(datum), trials=200)
        self.assertTrue(report.passed, report.to_json())
        self.assertEqual(report.result("bernstein[1]").trials, 200)

    def test_a1_at_q_one(self):
        datum = preset("A1")
        parameters = ParameterFunction.default(datum).specialized([1])
        report = verify_realization(datum, parameters, trials=20)
        self.assertTrue(report.passed, report.to_json())

    def test_a2_braid_of_length_three(self):
        datum = preset("A2")
        report = verify_realization(datum, ParameterFunction.default(datum), trials=200)
        self.assertTrue(report.result("braid[1,2]").passed)
        self.assertTrue(report.passed, report.to_json())

    def test_exhaustive_box(self):
        datum = preset("A1")
        report = verify_realization(
            datum, ParameterFunction.default(datum), radius=2, exhaustive=True
        )
        self.assertTrue(report.passed)
        self.assertEqual(report.result("quadratic[1]").trials, 5)

    def test_report_is_reproducible(self):
        datum = preset("A2")
        parameters = ParameterFunction.default(datum)
        first = verify_realization(datum, parameters, trials=5, seed=4).to_json()
        second = verify_realization(datum, parameters, trials=5, seed=4).to_json()
        self.assertEqual(first, second)
