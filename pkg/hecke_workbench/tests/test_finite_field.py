from django.test import SimpleTestCase

from hecke_workbench.exceptions import FieldBoundError
from hecke_workbench.finite_field import field_from_order, galois_field


class GaloisFieldTestCase(SimpleTestCase):
    def setUp(self):
        self.field = galois_field(2)

    def test_prime_field_is_integers_mod_three(self):
        f = galois_field(1)
        self.assertEqual(f.add(2, 2), 1)
        self.assertEqual(f.mul(2, 2), 1)
        self.assertEqual(f.neg(1), 2)

    def test_prime_subfield_is_shared(self):
        f = self.field
        self.assertEqual(f.add(1, 1), 2)
        self.assertEqual(f.mul(2, 2), 1)
        self.assertEqual(f.from_int(5), 2)

    def test_generator_has_full_order(self):
        f = self.field
        powers = {f.power(f.generator, n) for n in range(8)}
        self.assertEqual(powers, set(f.nonzero()))

    def test_inverses(self):
        f = self.field
        for a in f.nonzero():
            self.assertEqual(f.mul(a, f.inverse(a)), 1)
        with self.assertRaises(ZeroDivisionError):
            f.inverse(0)

    def test_distributivity(self):
        f = self.field
        for a in f.elements():
            for b in f.elements():
                for c in (1, f.generator):
                    self.assertEqual(f.mul(c, f.add(a, b)), f.add(f.mul(c, a), f.mul(c, b)))

    def test_frobenius_is_additive_and_fixes_the_prime_field(self):
        f = self.field
        for a in f.elements():
            for b in f.elements():
                self.assertEqual(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)))
        self.assertEqual([f.frobenius(a) for a in range(3)], [0, 1, 2])

    def test_rank(self):
        f = galois_field(1)
        self.assertEqual(f.rank([[1, 2], [2, 1]]), 1)
        self.assertEqual(f.rank([[1, 0], [0, 1]]), 2)
        self.assertEqual(f.rank([[0, 0]]), 0)

    def test_format(self):
        f = self.field
        self.assertEqual(f.format(2), "2")
        self.assertEqual(f.format(f.generator), "g^1")


class FieldOrderTestCase(SimpleTestCase):
    def test_orders(self):
        self.assertEqual(field_from_order(3).degree, 1)
        self.assertEqual(field_from_order(27).degree, 3)

    def test_rejects_non_powers_of_three(self):
        for order in (1, 2, 10, 12):
            with self.assertRaises(FieldBoundError):
                field_from_order(order)

    def test_enumeration_bound(self):
        with self.assertRaises(FieldBoundError):
            galois_field(5)
