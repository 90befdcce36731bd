"""
Milnor metric tests
"""

import fractions
import unittest

from hypothesis import given, settings, strategies as st
import numpy
import sympy

from pymilnor.fields import FrameField
from pymilnor.group import AlgebraVector, IDENTITY, random_point
from pymilnor.metrics import (BergerParams, IsometryTag, MilnorTriple,
    christoffel, classify, killing_residual, koszul_table, nabla,
    nat_red_check, reductive_brackets, reductive_check, right_invariant_field,
    sectional_curvature, structure_constants)
from pymilnor.scalars import is_zero, max_abs, to_float

rationals = st.fractions(min_value=fractions.Fraction(1, 100), max_value=10,
    max_denominator=100)
triples = st.builds(MilnorTriple, rationals, rationals, rationals)

# Small integers make repeated constants (Berger and round triples) likely
constants = st.one_of(rationals, st.integers(min_value=1, max_value=3))
permuted_triples = st.tuples(st.tuples(constants, constants, constants),
    st.permutations(range(3)))

berger_eps = st.fractions(min_value=fractions.Fraction(1, 10), max_value=10,
    max_denominator=20).filter(lambda eps: eps != 1).map(
    lambda eps: sympy.Rational(eps.numerator, eps.denominator))

R = sympy.Rational


class TripleTests(unittest.TestCase):
    def test_validation(self):
        with self.assertRaisesRegex(MilnorTriple.InvalidTriple,
            r"y must be positive"):
            MilnorTriple(1, 0, 1)

        with self.assertRaisesRegex(MilnorTriple.InvalidTriple,
            r"z must be positive"):
            MilnorTriple(1, 1, -0.5)

        with self.assertRaisesRegex(MilnorTriple.InvalidTriple,
            r"not a number"):
            MilnorTriple(1, 1, 'a')

        with self.assertRaises(ValueError):
            MilnorTriple(None, 1, 1)

    def test_layers(self):
        triple = MilnorTriple(3, fractions.Fraction(1, 2), 0.5)
        self.assertEqual(triple.x, 3)
        self.assertEqual(triple.y, R(1, 2))
        self.assertIsInstance(triple.z, float)
        self.assertFalse(triple.is_exact)
        self.assertTrue(MilnorTriple(3, 2, 1).is_exact)

    def test_frame(self):
        triple = MilnorTriple(2, 8, 1)
        self.assertEqual(triple.scales, (sympy.sqrt(2), 4, sympy.sqrt(8)))

        vec = triple.frame_to_algebra((1.0, -2.0, 0.5))
        self.assertAlmostEqual(vec.a2, -8.0)
        for got, want in zip(triple.algebra_to_frame(vec), (1.0, -2.0, 0.5)):
            self.assertAlmostEqual(got, want)

        self.assertEqual(triple.scaled(2).as_tuple(), (4, 16, 2))
        self.assertEqual(triple.canonical().as_tuple(), (8, 2, 1))

    def test_berger_params(self):
        self.assertEqual(BergerParams(R(1, 2)).triple().as_tuple(), (1, 2, 2))
        self.assertEqual(BergerParams(0.25).triple().as_tuple(),
            (1.0, 4.0, 4.0))

        with self.assertRaisesRegex(BergerParams.InvalidEpsilon,
            r"round sphere"):
            BergerParams(1)

        with self.assertRaisesRegex(BergerParams.InvalidEpsilon,
            r"must be positive"):
            BergerParams(-2)


class ChristoffelTests(unittest.TestCase):
    @settings(max_examples=100, deadline=None)
    @given(triples)
    def test_closed_form_matches_koszul(self, triple):
        table = christoffel(triple)
        oracle = koszul_table(triple)

        for i, j, k, value in table.entries():
            self.assertTrue(is_zero(value - oracle[i][j][k]))
            self.assertTrue(is_zero(value + table[i][k][j]))

    @settings(max_examples=20, deadline=None)
    @given(berger_eps)
    def test_berger_values(self, eps):
        table = christoffel(BergerParams(eps).triple())
        self.assertEqual(table[0][1][2], 1)
        self.assertEqual(table[1][2][0], 1)
        self.assertEqual(table[2][0][1], 2 / eps - 1)

    def test_structure_constants(self):
        consts = structure_constants(MilnorTriple(3, 2, 1))
        self.assertEqual(consts[0][1][2], 6)
        self.assertEqual(consts[1][0][2], -6)
        self.assertEqual(consts[1][2][0], 4)
        self.assertEqual(consts[2][0][1], 2)
        self.assertEqual(consts[0][0][1], 0)

    def test_exact_nabla(self):
        triple = MilnorTriple(3, 2, 1)
        table = christoffel(triple)
        value = nabla(table, FrameField.basis(0), FrameField.basis(1),
            IDENTITY)
        self.assertEqual(value, (0, 0, 2))

    def test_numeric_table(self):
        table = christoffel(MilnorTriple(1.0, 2.0, 2.0))
        self.assertEqual(table.numeric[2][0][1], 3.0)
        self.assertFalse(table.is_exact)


class CurvatureTests(unittest.TestCase):
    def test_round_sphere(self):
        triple = MilnorTriple(1, 1, 1)
        table = christoffel(triple)
        for i, j in ((0, 1), (0, 2), (1, 2)):
            self.assertEqual(sectional_curvature(table, triple, i, j), 1)

    def test_berger_sphere(self):
        triple = BergerParams(R(1, 2)).triple()
        table = christoffel(triple)
        self.assertEqual(sectional_curvature(table, triple, 0, 1), 5)
        self.assertEqual(sectional_curvature(table, triple, 1, 0), 5)

        with self.assertRaisesRegex(ValueError, r"two distinct"):
            sectional_curvature(table, triple, 1, 1)

    def test_homothety(self):
        triple = MilnorTriple(3, 2, 1)
        table = christoffel(triple)
        scaled = triple.scaled(3)
        scaled_table = christoffel(scaled)
        for i, j in ((0, 1), (0, 2), (1, 2)):
            self.assertEqual(sectional_curvature(scaled_table, scaled, i, j),
                9 * sectional_curvature(table, triple, i, j))


class ClassifyTests(unittest.TestCase):
    def test_classes(self):
        result = classify(MilnorTriple(1, 1, 1))
        self.assertIs(result.tag, IsometryTag.ROUND_SPHERE)
        self.assertIsNone(result.eps)

        result = classify(MilnorTriple(2, 3, 3))
        self.assertIs(result.tag, IsometryTag.BERGER_HOMOTHETY)
        self.assertEqual(result.eps, R(2, 3))
        self.assertEqual(result.canonical.as_tuple(), (3, 3, 2))
        self.assertEqual(result.canonical.scaled(result.scale).as_tuple(),
            (R(3, 2), R(3, 2), 1))

        result = classify(MilnorTriple(1, 2, 3))
        self.assertIs(result.tag, IsometryTag.NON_NATURALLY_REDUCTIVE)
        self.assertEqual(result.canonical.as_tuple(), (3, 2, 1))

    def test_berger_roundtrip(self):
        for eps in (R(1, 4), R(1, 2), 2, 4):
            result = classify(BergerParams(eps).triple())
            self.assertIs(result.tag, IsometryTag.BERGER_HOMOTHETY)
            self.assertEqual(result.eps, eps)

    def test_order_independence(self):
        self.assertEqual(classify(MilnorTriple(3, 1, 3)),
            classify(MilnorTriple(3, 3, 1)))

    @settings(max_examples=200, deadline=None)
    @given(permuted_triples)
    def test_permutation_invariance(self, drawn):
        values, order = drawn
        triple = MilnorTriple(*values)
        permuted = MilnorTriple(*(values[idx] for idx in order))

        self.assertEqual(classify(permuted), classify(triple))
        self.assertEqual(classify(permuted).canonical.as_tuple(),
            tuple(sorted((R(val) for val in values), reverse=True)))

    def test_float_triples(self):
        result = classify(MilnorTriple(1.0, 0.5, 0.5))
        self.assertIs(result.tag, IsometryTag.BERGER_HOMOTHETY)
        self.assertAlmostEqual(to_float(result.eps), 2.0)


class KillingTests(unittest.TestCase):
    def test_right_invariant_fields(self):
        rng = numpy.random.default_rng(23)
        triple = MilnorTriple(3, 2, 1)
        table = christoffel(triple)
        field = right_invariant_field(triple, AlgebraVector(0.3, -0.5, 0.8))

        for _ in range(10):
            point = random_point(rng)
            residual = killing_residual(table, field, point)
            self.assertLess(to_float(max_abs(val for row in residual
                for val in row)), 1e-9)

    def test_left_invariant_fields(self):
        table = christoffel(BergerParams(R(1, 2)).triple())
        residual = killing_residual(table, FrameField.basis(2), IDENTITY)
        self.assertTrue(all(val == 0 for row in residual for val in row))

        residual = killing_residual(table, FrameField.basis(0), IDENTITY)
        self.assertNotEqual(max_abs(val for row in residual for val in row),
            0)


class ReductiveTests(unittest.TestCase):
    def test_decomposition(self):
        for eps in (R(1, 4), R(1, 2), 2, 4):
            self.assertEqual(reductive_check(eps), 0)
            self.assertEqual(nat_red_check(eps), 0)

    @settings(max_examples=20, deadline=None)
    @given(berger_eps)
    def test_rational_decomposition(self, eps):
        self.assertEqual(reductive_check(eps), 0)
        self.assertEqual(nat_red_check(eps), 0)

    def test_brackets(self):
        brackets = reductive_brackets(R(1, 2))
        self.assertEqual(brackets['b1', 'b1'], (0, 0, 0))
        self.assertEqual(brackets['b1', 'b2'], (0, 0, 2))
        self.assertEqual(brackets['b2', 'b1'], (0, 0, -2))

    def test_invalid_eps(self):
        with self.assertRaisesRegex(ValueError, r"must be positive"):
            nat_red_check(0)
