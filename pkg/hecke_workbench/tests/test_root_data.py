import json
import os
import tempfile

from django.test import SimpleTestCase

from hecke_workbench.constants import LENGTH_LONG, LENGTH_SHORT, NEGATIVE_ROOTS
from hecke_workbench.exceptions import RootDatumError
from hecke_workbench.root_data import (
    enumerate_weyl,
    load_root_datum,
    preset,
    reflect,
    subsystem_type,
    weyl_orbit,
)


SHORT_ROOTS = {(1, 0), (-1, 0), (1, 1), (-1, -1), (2, 1), (-2, -1)}


class ReflectionTestCase(SimpleTestCase):
    def test_g2_reflections(self):
        g2 = preset("G2")
        self.assertEqual(reflect(g2, (1, 0), (1, 0)), (-1, 0))
        self.assertEqual(reflect(g2, (1, 0), (0, 1)), (3, 1))

    def test_a1_sign_flip(self):
        self.assertEqual(reflect(preset("A1"), (2,), (1,)), (-1,))

    def test_reflection_is_an_involution(self):
        g2 = preset("G2")
        for root in g2.roots:
            for weight in [(2, -1), (0, 3), (-4, 5)]:
                self.assertEqual(g2.reflect(root, g2.reflect(root, weight)), weight)

    def test_unknown_root(self):
        with self.assertRaises(RootDatumError):
            preset("G2").reflect((5, 5), (1, 0))

    def test_simple_reflections_permute_roots(self):
        for name in ("G2", "A1", "A2"):
            datum = preset(name)
            for i in datum.simple_roots:
                images = {datum.simple_reflect(i, root) for root in datum.roots}
                self.assertEqual(images, set(datum.roots))


class RootSystemTestCase(SimpleTestCase):
    def test_g2_positive_roots_and_lengths(self):
        g2 = preset("G2")
        positive = {g2.roots[k] for k in g2.positive_roots}
        self.assertEqual(positive, set(NEGATIVE_ROOTS))
        self.assertEqual(len(g2.roots), 12)
        short = {root for root in g2.roots if g2.lengths[root] == LENGTH_SHORT}
        self.assertEqual(short, SHORT_ROOTS)
        self.assertEqual(g2.lengths[(3, 2)], LENGTH_LONG)

    def test_pairing_with_coroot_is_two(self):
        for name in ("G2", "A1", "A2"):
            datum = preset(name)
            for root in datum.roots:
                self.assertEqual(datum.pairing(root, root), 2)

    def test_subsystem_types(self):
        g2 = preset("G2")
        self.assertEqual(subsystem_type(g2, g2.roots), "G2")
        self.assertEqual(subsystem_type(g2, [(1, 0), (-1, 0)]), "A1")
        self.assertEqual(subsystem_type(g2, []), "")
        long_roots = [root for root in g2.roots if g2.lengths[root] == LENGTH_LONG]
        self.assertEqual(subsystem_type(g2, long_roots), "A2")

    def test_rejects_non_crystallographic_cartan(self):
        with self.assertRaises(RootDatumError):
            load_root_datum({"simple_roots": [[1, 0], [0, 1]], "cartan": [[2, -1], [-5, 2]]})

    def test_loads_json_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "b2.json")
            with open(path, "w") as f:
                json.dump(
                    {"name": "B2", "simple_roots": [[1, 0], [0, 1]], "cartan": [[2, -1], [-2, 2]]},
                    f,
                )
            datum = load_root_datum(path)
        self.assertEqual(len(datum.roots), 8)
        self.assertEqual(len(datum.weyl_group), 8)


class WeylGroupTestCase(SimpleTestCase):
    def test_orders(self):
        self.assertEqual(len(enumerate_weyl(preset("G2"))), 12)
        self.assertEqual(len(enumerate_weyl(preset("A1"))), 2)
        self.assertEqual(len(enumerate_weyl(preset("A2"))), 6)

    def test_length_counts_inversions(self):
        g2 = preset("G2")
        for w in g2.weyl_group:
            self.assertEqual(w.length, g2.inversion_count(w))

    def test_length_changes_by_one(self):
        g2 = preset("G2")
        for w in g2.weyl_group:
            for i in g2.simple_roots:
                self.assertEqual(abs(g2.times_simple(w, i).length - w.length), 1)

    def test_half_the_group_inverts_each_root(self):
        g2 = preset("G2")
        for root in g2.roots:
            count = sum(
                1 for w in g2.weyl_group if not g2.is_positive(g2.inverse(w).act(root))
            )
            self.assertEqual(count, 6)

    def test_poincare_polynomial(self):
        self.assertEqual(preset("G2").poincare_polynomial(), (1, 2, 2, 2, 2, 2, 1))
        self.assertEqual(sum(c * 3 ** i for i, c in enumerate(preset("G2").poincare_polynomial())), 1456)


class WeylOrbitTestCase(SimpleTestCase):
    def test_short_root_orbit(self):
        self.assertEqual(set(weyl_orbit(preset("G2"), (1, 0))), SHORT_ROOTS)

    def test_zero_is_fixed(self):
        for name in ("G2", "A1", "A2"):
            datum = preset(name)
            self.assertEqual(set(weyl_orbit(datum, (0,) * datum.rank)), {(0,) * datum.rank})

    def test_a1_orbit(self):
        self.assertEqual(set(weyl_orbit(preset("A1"), (1,))), {(1,), (-1,)})

    def test_orbit_size_divides_group_order(self):
        g2 = preset("G2")
        for weight in [(1, 0), (0, 1), (1, 2), (3, -1)]:
            self.assertEqual(12 % len(weyl_orbit(g2, weight)), 0)

    def test_dominant_representative(self):
        g2 = preset("G2")
        dominant = g2.dominant_representative((-1, 0))
        self.assertTrue(g2.is_dominant(dominant))
        self.assertIn(dominant, g2.weyl_orbit((-1, 0)))
