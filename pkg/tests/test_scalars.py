"""
Arithmetic layer tests
"""

import fractions
import math
import unittest

import sympy

from pymilnor.scalars import (exact, is_exact, is_zero, max_abs,
    normalize, sqrt, to_float, wrap_angle)


class ScalarTests(unittest.TestCase):
    def test_exact_conversion(self):
        self.assertEqual(exact(3), sympy.Integer(3))
        self.assertEqual(exact(fractions.Fraction(2, 3)), sympy.Rational(2, 3))
        self.assertEqual(exact(0.1), sympy.Rational(1, 10))
        self.assertEqual(exact('1/4'), sympy.Rational(1, 4))

        with self.assertRaises(TypeError):
            exact(True)

        with self.assertRaises(TypeError):
            exact([1])

        with self.assertRaises(ValueError):
            exact(math.inf)

    def test_layers(self):
        self.assertTrue(is_exact(2))
        self.assertTrue(is_exact(sympy.sqrt(2) / 3))
        self.assertFalse(is_exact(2.0))
        self.assertFalse(is_exact(True))
        self.assertFalse(is_exact(sympy.Float(0.5)))

        self.assertEqual(sqrt(sympy.Rational(1, 4)), sympy.Rational(1, 2))
        self.assertIsInstance(sqrt(0.25), float)

    def test_zero_tests(self):
        root = sympy.sqrt(sympy.Rational(1, 2))
        self.assertTrue(is_zero(root * root - sympy.Rational(1, 2)))
        self.assertTrue(is_zero(sympy.sqrt(8) - 2 * sympy.sqrt(2)))
        self.assertFalse(is_zero(sympy.Rational(1, 10 ** 12)))
        self.assertTrue(is_zero(0))
        self.assertFalse(is_zero(1e-12))
        self.assertTrue(is_zero(1e-12, tol=1e-9))

    def test_normalize_and_max(self):
        root = sympy.sqrt(2)
        self.assertEqual(normalize((root + 1) ** 2), 2 * root + 3)
        self.assertEqual(normalize(0.5), 0.5)

        self.assertEqual(max_abs([]), 0)
        self.assertEqual(max_abs([sympy.Integer(-8), sympy.Integer(3)]), 8)
        self.assertEqual(max_abs([0.5, -2.0, 1.0]), 2.0)
        self.assertEqual(to_float(sympy.Rational(3, 4)), 0.75)

    def test_wrap_angle(self):
        self.assertAlmostEqual(wrap_angle(3 * math.pi / 2), -math.pi / 2)
        self.assertAlmostEqual(wrap_angle(-3 * math.pi / 2), math.pi / 2)
        self.assertEqual(wrap_angle(math.pi), math.pi)
        self.assertEqual(wrap_angle(-math.pi), math.pi)
        self.assertEqual(wrap_angle(0.25), 0.25)
