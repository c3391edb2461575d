import json
from io import StringIO

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from hecke_workbench.constants import EXIT_USAGE_ERROR, VERDICT_INFINITE


class HeckeCommandTestCase(SimpleTestCase):
    def call(self, *args):
        out = StringIO()
        call_command("hecke", *args, stdout=out)
        return json.loads(out.getvalue())

    def test_relations(self):
        report = self.call("relations", "--type", "A1", "--trials", "5", "--seed", "7")
        self.assertEqual(report["command"], "relations")
        self.assertTrue(report["ok"])
        self.assertEqual(report["config"]["root_datum"], "A1")
        self.assertEqual(report["config"]["seed"], 7)
        self.assertTrue(all(r["passed"] for r in report["report"]["relations"]))

    def test_relations_at_a_specialization(self):
        report = self.call("relations", "--type", "A1", "--set", "q1=1", "--trials", "3")
        self.assertTrue(report["ok"])
        self.assertEqual(report["config"]["set"], {"q1": "1"})

    def test_classify_infinite(self):
        report = self.call("classify", "--char", "example2")
        self.assertTrue(report["ok"])
        self.assertEqual(report["finiteness"]["verdict"], VERDICT_INFINITE)
        self.assertEqual(report["centralizer_roots"], [])
        self.assertNotIn("classes", report)

    def test_fibers(self):
        report = self.call("fibers", "--rep", "va+vb", "--field", "3", "--pretty")
        self.assertTrue(report["ok"])
        self.assertEqual(report["point_count"], 1)
        self.assertEqual(report["polynomial"], [1])
        self.assertEqual(report["config"]["field"], 3)

    def test_bad_field(self):
        with self.assertRaises(CommandError) as cm:
            self.call("fibers", "--field", "10")
        self.assertEqual(cm.exception.returncode, EXIT_USAGE_ERROR)

    def test_classify_needs_a_character(self):
        with self.assertRaises(CommandError) as cm:
            self.call("classify")
        self.assertEqual(cm.exception.returncode, EXIT_USAGE_ERROR)

    def test_geometry_needs_g2(self):
        with self.assertRaises(CommandError) as cm:
            self.call("fibers", "--type", "A1")
        self.assertEqual(cm.exception.returncode, EXIT_USAGE_ERROR)
