from fractions import Fraction

from django.test import SimpleTestCase

from hecke_workbench.constants import COMMAND_CLASSIFY, COMMAND_RELATIONS
from hecke_workbench.forms import RunConfigForm


class RunConfigFormTestCase(SimpleTestCase):
    def test_defaults(self):
        form = RunConfigForm({"command": COMMAND_RELATIONS})
        self.assertTrue(form.is_valid())
        self.assertEqual(form.cleaned_data["assignments"], {})
        self.assertIsNone(form.cleaned_data["params"])
        self.assertIsNone(form.cleaned_data["field_degree"])

    def test_unknown_command(self):
        form = RunConfigForm({"command": "dance"})
        self.assertFalse(form.is_valid())
        self.assertIn("command", form.errors)

    def test_assignments_are_rationals(self):
        form = RunConfigForm({"command": COMMAND_RELATIONS, "assignments": "q1=2, q2=-1/3"})
        self.assertTrue(form.is_valid())
        self.assertEqual(
            form.cleaned_data["assignments"], {"q1": Fraction(2), "q2": Fraction(-1, 3)}
        )

    def test_bad_assignment(self):
        for value in ("q1", "q1=two", "=3"):
            form = RunConfigForm({"command": COMMAND_RELATIONS, "assignments": value})
            self.assertFalse(form.is_valid(), value)
            self.assertIn("assignments", form.errors)

    def test_params_must_be_an_object(self):
        params = '{"short": "q1", "long": "q2"}'
        form = RunConfigForm({"command": COMMAND_RELATIONS, "params": params})
        self.assertTrue(form.is_valid())
        self.assertEqual(form.cleaned_data["params"], {"short": "q1", "long": "q2"})
        for value in ("[0, 1]", "{a: 0"):
            form = RunConfigForm({"command": COMMAND_RELATIONS, "params": value})
            self.assertFalse(form.is_valid(), value)

    def test_field_order(self):
        form = RunConfigForm({"command": COMMAND_RELATIONS, "field_order": 27})
        self.assertTrue(form.is_valid())
        self.assertEqual(form.cleaned_data["field_degree"], 3)

    def test_field_order_must_be_a_power_of_three(self):
        for order in (10, 4):
            form = RunConfigForm({"command": COMMAND_RELATIONS, "field_order": order})
            self.assertFalse(form.is_valid(), order)
            self.assertIn("field_order", form.errors)

    def test_field_order_bound(self):
        form = RunConfigForm({"command": COMMAND_RELATIONS, "field_order": 3 ** 5})
        self.assertFalse(form.is_valid())

    def test_classify_needs_a_character(self):
        form = RunConfigForm({"command": COMMAND_CLASSIFY})
        self.assertFalse(form.is_valid())
        self.assertIn("character", form.errors)
        form = RunConfigForm({"command": COMMAND_CLASSIFY, "character": "generic"})
        self.assertTrue(form.is_valid())
