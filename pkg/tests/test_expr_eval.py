"""
Numeric parameter evaluator tests
"""

import unittest

import sympy

from pymilnor.expr_eval import ExpressionEvaluator, parse_number


class ExprEvalTests(unittest.TestCase):
    def test_rationals_stay_exact(self):
        self.assertEqual(parse_number('1/2'), sympy.Rational(1, 2))
        self.assertEqual(parse_number('0.1'), sympy.Rational(1, 10))
        self.assertEqual(parse_number(' 3 '), 3)
        self.assertEqual(parse_number('-2/3 + 1'), sympy.Rational(1, 3))
        self.assertEqual(parse_number('2**-2'), sympy.Rational(1, 4))

    def test_constants_and_functions(self):
        self.assertEqual(parse_number('2*pi/3'), 2 * sympy.pi / 3)
        self.assertEqual(parse_number('sqrt(2)'), sympy.sqrt(2))
        self.assertEqual(parse_number('cos(pi/3)'), sympy.Rational(1, 2))
        self.assertAlmostEqual(float(parse_number('e')), 2.718281828459045)

    def test_rejected_syntax(self):
        with self.assertRaisesRegex(SyntaxError, r"invalid syntax"):
            parse_number('1 +')

        with self.assertRaisesRegex(SyntaxError, r"Unknown name 'x'"):
            parse_number('x + 1')

        with self.assertRaisesRegex(SyntaxError, r"Invalid operation "
            r"'compare'"):
            parse_number('1 < 2')

        with self.assertRaisesRegex(SyntaxError, r"Invalid operation "
            r"'floordiv'"):
            parse_number('3 // 2')

        with self.assertRaisesRegex(SyntaxError, r"Unknown function"):
            parse_number('exp(1)')

        with self.assertRaisesRegex(SyntaxError, r"Functions take exactly "
            r"one argument"):
            parse_number('sqrt(2, 3)')

        with self.assertRaisesRegex(SyntaxError, r"Invalid constant 'a'"):
            parse_number('"a"')

        with self.assertRaisesRegex(SyntaxError, r"Invalid operation "
            r"'attribute'"):
            parse_number('pi.real')

    def test_error_offsets(self):
        with self.assertRaises(SyntaxError) as ctx:
            parse_number('1 + foo')

        self.assertEqual(ctx.exception.offset, 5)
        self.assertEqual(ctx.exception.end_offset, 8)
        self.assertEqual(ctx.exception.text, '1 + foo')

    def test_non_real_results(self):
        with self.assertRaisesRegex(ValueError, r"not a finite real number"):
            parse_number('sqrt(-1)')

        with self.assertRaisesRegex(ValueError, r"not a finite real number"):
            parse_number('1/0')

        with self.assertRaisesRegex(ValueError, r"too large"):
            parse_number('2**1000')

    def test_repr(self):
        self.assertEqual(repr(ExpressionEvaluator('1/2 + pi')),
            "<ExpressionEvaluator: 1 / 2 + pi>")
