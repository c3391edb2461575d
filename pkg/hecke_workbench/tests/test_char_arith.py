import json
import os
import tempfile
from fractions import Fraction

from django.test import SimpleTestCase

from hecke_workbench.char_arith import (
    CharacterValue,
    RootedRepresentation,
    centralizer_roots,
    evaluate,
    finiteness_evidence,
    finiteness_verdict,
    fixed_support,
    generates_torsion_free,
    in_subgroup,
    is_connected_centralizer,
    is_positive_real,
    load_character,
    polar_decomposition,
    rational_specialization,
    reduction_pair,
)
from hecke_workbench.constants import VERDICT_FINITE, VERDICT_INFINITE
from hecke_workbench.exceptions import CharacterError
from hecke_workbench.laurent import ParameterFunction
from hecke_workbench.root_data import preset


class CharacterTestCase(SimpleTestCase):
    def setUp(self):
        self.g2 = preset("G2")
        self.representation = RootedRepresentation.from_parameters(
            ParameterFunction.default(self.g2)
        )
        self.example1 = load_character("example1", self.g2)
        self.example2 = load_character("example2", self.g2)
        self.trivial = load_character("trivial", self.g2)
        self.generic = load_character("generic", self.g2)

    def support(self, a):
        return {weight for weight, _ in fixed_support(a, self.representation, self.g2)}

    def verdict(self, a):
        return finiteness_verdict(self.g2, self.representation, a)


class CharacterValueTestCase(SimpleTestCase):
    def test_torsion_is_reduced_mod_one(self):
        value = CharacterValue(Fraction(4, 3), (1,))
        self.assertEqual(value.torsion, Fraction(1, 3))

    def test_cube_of_a_third_root_of_unity(self):
        zeta = CharacterValue(Fraction(1, 3), (0,))
        self.assertTrue((zeta ** 3).is_one)

    def test_subgroup_membership(self):
        two = CharacterValue(0, (1, 0))
        three = CharacterValue(0, (0, 1))
        self.assertTrue(in_subgroup(CharacterValue(0, (2, -3)), [two, three]))
        self.assertFalse(in_subgroup(CharacterValue(0, (1, 1)), [two ** 2, three]))

    def test_torsion_free_generation(self):
        q = CharacterValue(0, (1,))
        zeta_q = CharacterValue(Fraction(1, 3), (1,))
        self.assertTrue(generates_torsion_free([q, q]))
        self.assertFalse(generates_torsion_free([zeta_q, q]))
        self.assertTrue(generates_torsion_free([zeta_q]))


class EvaluationTestCase(CharacterTestCase):
    def test_zero_weight(self):
        self.assertTrue(evaluate(self.example1, (0, 0)).is_one)

    def test_example1(self):
        self.assertEqual(evaluate(self.example1, (1, 1)), CharacterValue(0, (1,)))

    def test_example2(self):
        self.assertEqual(evaluate(self.example2, (3, 1)), CharacterValue(0, (1,)))

    def test_parameter_exponents(self):
        value = evaluate(self.example2, (0, 0), (1, -1))
        self.assertEqual(value, CharacterValue(Fraction(1, 3), (0,)))


class FixedSupportTestCase(CharacterTestCase):
    def test_example1(self):
        support = fixed_support(self.example1, self.representation, self.g2)
        self.assertEqual(support, {((0, 1), 1), ((1, 1), 0), ((2, 1), 0), ((3, 1), 1)})

    def test_example2(self):
        self.assertEqual(self.support(self.example2), {(0, 1), (1, 1), (3, 1)})

    def test_trivial_character_fixes_everything(self):
        support = fixed_support(self.trivial, self.representation, self.g2)
        self.assertEqual(len(support), 14)
        self.assertIn(((0, 0), 0), support)
        self.assertIn(((0, 0), 1), support)

    def test_generic(self):
        self.assertEqual(self.support(self.generic), {(1, 0), (0, 1)})


class CentralizerTestCase(CharacterTestCase):
    def test_example1(self):
        self.assertEqual(set(centralizer_roots(self.g2, self.example1)), {(1, 0), (-1, 0)})

    def test_example2(self):
        self.assertEqual(centralizer_roots(self.g2, self.example2), ())

    def test_trivial(self):
        self.assertEqual(set(centralizer_roots(self.g2, self.trivial)), set(self.g2.roots))

    def test_g2_centralizers_are_connected(self):
        for a in (self.example1, self.example2, self.trivial, self.generic):
            self.assertTrue(is_connected_centralizer(self.g2, a))


class ReductionTestCase(CharacterTestCase):
    def test_generic_reduces_to_everything(self):
        pair = reduction_pair(self.g2, self.representation, self.generic)
        self.assertEqual(set(pair.roots), set(self.g2.roots))
        self.assertEqual(len(pair.weights), 14)
        self.assertEqual(pair.type_name, "G2")
        self.assertTrue(pair.torsion_free)

    def test_example2_has_torsion(self):
        pair = reduction_pair(self.g2, self.representation, self.example2)
        self.assertFalse(pair.torsion_free)

    def test_trivial(self):
        pair = reduction_pair(self.g2, self.representation, self.trivial)
        self.assertEqual(pair.type_name, "G2")
        self.assertEqual(len(pair.weights), 14)


class FinitenessTestCase(CharacterTestCase):
    def test_example2_is_infinite(self):
        evidence = finiteness_evidence(self.g2, self.representation, self.example2)
        self.assertEqual(evidence.verdict, VERDICT_INFINITE)
        self.assertEqual((evidence.centralizer_dim, evidence.fixed_dim), (2, 3))

    def test_finite_characters(self):
        for a in (self.example1, self.trivial, self.generic):
            self.assertEqual(self.verdict(a), VERDICT_FINITE)


class PositivityTestCase(CharacterTestCase):
    def test_positive_real(self):
        self.assertTrue(is_positive_real(self.example1))
        self.assertTrue(is_positive_real(self.trivial))
        self.assertFalse(is_positive_real(self.example2))

    def test_polar_decomposition(self):
        unit, positive = polar_decomposition(self.example2)
        self.assertTrue(is_positive_real(positive))
        self.assertEqual(unit.s_values[0].torsion, Fraction(1, 3))
        self.assertEqual(positive.s_values[1], CharacterValue(0, (1,)))


class LoadingTestCase(CharacterTestCase):
    def test_rational_specialization(self):
        s, t = rational_specialization(self.example1)
        self.assertEqual(s, (1, 2))
        self.assertEqual(t, (2, 2))

    def test_third_roots_of_unity_are_not_rational(self):
        with self.assertRaises(CharacterError):
            rational_specialization(self.example2)

    def test_sign_is_rational(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "sign.json")
            with open(path, "w") as f:
                json.dump(
                    {
                        "generators": ["q"],
                        "s": {"alpha": {"tors": "1/2"}, "beta": {"free": {"q": 1}}},
                        "t": [{"free": {"q": 1}}, {"free": {"q": 1}}],
                        "values": {"q": "3"},
                    },
                    f,
                )
            a = load_character(path, self.g2)
        self.assertEqual(a.name, "sign")
        self.assertEqual(rational_specialization(a)[0], (-1, 3))

    def test_unknown_preset(self):
        with self.assertRaises(CharacterError):
            load_character("no-such-character", self.g2)

    def test_missing_weight(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "broken.json")
            with open(path, "w") as f:
                json.dump({"s": {"alpha": {}}, "t": []}, f)
            with self.assertRaises(CharacterError):
                load_character(path, self.g2)
