"""
Berger foliation identity tests
"""

import math
import unittest

import numpy

from pymilnor.fields import FrameField
from pymilnor.foliations import (IDENTITIES, LemmaCheck,
    berger_mean_curvature_factor, completion_fields, killing_foliation,
    lemma_equalities_check, sample_region, tilted_field)
from pymilnor.foliations.lemma import LEMMA_STEP
from pymilnor.group import AlgebraVector, IDENTITY
from pymilnor.metrics import BergerParams, christoffel, nabla
from pymilnor.scalars import to_float

from .killing_family import killing_family


class ConvergenceTests(unittest.TestCase):
    def test_orders(self):
        orders = LemmaCheck.convergence({'a': 1e-4, 'b': 0.0, 'c': 1e-3},
            {'a': 1e-6, 'b': 1e-3, 'c': 1e-9})
        self.assertAlmostEqual(orders['a'], 2.0)
        self.assertEqual(orders['b'], -math.inf)
        self.assertEqual(orders['c'], math.inf)

    def test_verdicts(self):
        check = LemmaCheck(0.5, 1e-2, 1e-5, {'a': 1e-6, 'b': 2e-5},
            {'a': 4.0, 'b': 1.5})
        self.assertFalse(check.passed)
        self.assertFalse(check.converged())
        self.assertTrue(check.converged(1.0))


class IdentityTests(unittest.TestCase):
    def test_killing_foliations(self):
        rng = numpy.random.default_rng(103)

        for sample in killing_family():
            params, field = sample.params, sample.field
            check = lemma_equalities_check(params, field,
                sample_region(field, rng, 2))

            with self.subTest(eps=params.eps, xi=sample.xi.as_tuple()):
                self.assertEqual(tuple(check.residuals), IDENTITIES)
                self.assertEqual(check.eps, params.eps)
                self.assertEqual(check.step, LEMMA_STEP)
                self.assertTrue(check.passed, check.residuals)
                self.assertTrue(check.converged(), check.orders)

    def test_not_metric(self):
        params = BergerParams(0.5)
        with self.assertRaisesRegex(LemmaCheck.NotMetric,
            r"not a metric foliation"):
            lemma_equalities_check(params, tilted_field(0.7), [IDENTITY])

        with self.assertRaisesRegex(ValueError, r"At least one sample"):
            lemma_equalities_check(params, tilted_field(0.7), [])

    def test_horizontal_field_fails(self):
        check = lemma_equalities_check(BergerParams(0.5),
            FrameField.basis(0), [IDENTITY], require_metric=False)

        self.assertFalse(check.passed)
        self.assertAlmostEqual(check.residuals['Y3(nu)+2/eps'], 4.0)
        self.assertAlmostEqual(check.orders['Y3(nu)+2/eps'], 0.0)
        self.assertFalse(check.converged())


class MeanCurvatureFactorTests(unittest.TestCase):
    def test_factor(self):
        rng = numpy.random.default_rng(107)

        for eps in (0.25, 4.0):
            params = BergerParams(eps)
            table = christoffel(params.triple())
            field = killing_foliation(params, AlgebraVector(1.0, 0.2, -0.4))
            _, horizontal = completion_fields(field)

            for point in sample_region(field, rng, 3):
                factor = berger_mean_curvature_factor(params, field, point)
                curvature = nabla(table, field, field, point)
                for got, coeff in zip(curvature, horizontal.floats(point)):
                    self.assertAlmostEqual(to_float(got), factor * coeff,
                        places=6)
