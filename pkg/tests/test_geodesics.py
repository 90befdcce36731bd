"""
Geodesic tests
"""

import fractions
import math
import unittest

import numpy

from pymilnor.geodesics import (BergerGeodesicSpec, GeodesicState,
    HOPF_COLUMNS, Integrator, IntegratorConfig, TRAJECTORY_COLUMNS,
    angle_to_y3, berger_geodesic, find_orbit_returns, find_period_shift,
    general_berger_geodesic, geodesic_from_direction, integrate_geodesic,
    jacobi_curvature_estimate, period_shift, rk4_order, verify_prop_geo)
from pymilnor.group import IDENTITY, distance, hopf_flow, random_point
from pymilnor.metrics import (BergerParams, MilnorTriple, christoffel,
    sectional_curvature)
from pymilnor.scalars import to_float, wrap_angle

EPS_VALUES = (0.25, 0.5, 2.0, 4.0)
THETA_VALUES = (math.pi / 6, math.pi / 3, math.pi / 2, 2 * math.pi / 3)


class SpecTests(unittest.TestCase):
    def test_formulas(self):
        spec = BergerGeodesicSpec(0.5, math.pi / 3)
        self.assertAlmostEqual(spec.alpha, 0.5)
        self.assertAlmostEqual(spec.frequency, math.sqrt(1.75))
        self.assertAlmostEqual(spec.period, 2 * math.pi / math.sqrt(1.75))
        self.assertAlmostEqual(spec.shift, 0.25 * spec.period)
        self.assertEqual(spec.initial_velocity, (0.0, spec.beta, spec.alpha))

    def test_domain(self):
        for theta in (0.0, math.pi, -1.0):
            with self.assertRaisesRegex(BergerGeodesicSpec.DomainError,
                r"theta must lie"):
                BergerGeodesicSpec(0.5, theta)

        with self.assertRaisesRegex(BergerGeodesicSpec.DomainError,
            r"round sphere"):
            BergerGeodesicSpec(1.0, 1.0)

        with self.assertRaises(BergerGeodesicSpec.DomainError):
            period_shift(0.0, 1.0)

    def test_round_sphere_limit(self):
        period, shift = period_shift(1.0, 1.0)
        self.assertAlmostEqual(period, 2 * math.pi)
        self.assertEqual(shift, 0.0)

    def test_horizontal_geodesics_close(self):
        spec = BergerGeodesicSpec(0.5, math.pi / 2)
        self.assertAlmostEqual(spec.shift, 0.0)
        self.assertLess(distance(berger_geodesic(spec, spec.period),
            IDENTITY), 1e-8)


class ClosedFormTests(unittest.TestCase):
    def test_start(self):
        spec = BergerGeodesicSpec(2.0, math.pi / 6)
        self.assertEqual(berger_geodesic(spec, 0.0), IDENTITY)

    def test_period_shift_law(self):
        times = numpy.linspace(0.0, 10.0, 100)
        for eps in numpy.linspace(0.2, 5.0, 10):
            for theta in numpy.linspace(0.0, math.pi, 12)[1:-1]:
                self.assertLess(verify_prop_geo(eps, theta, times), 1e-10)

    def test_integrated_period_shift_law(self):
        spec = BergerGeodesicSpec(0.5, math.pi / 3)
        times = numpy.linspace(0.0, 2.0, 20)
        traj = integrate_geodesic(BergerParams(0.5).triple(),
            GeodesicState(IDENTITY, spec.initial_velocity),
            spec.period + 2.0, IntegratorConfig(1e-4))

        self.assertLess(verify_prop_geo(0.5, math.pi / 3, times,
            lambda time: traj.at(time).point), 1e-5)

    def test_near_round_sphere(self):
        period, shift = period_shift(0.999, 1.0)
        self.assertLess(abs(shift), 1e-2)
        self.assertLess(verify_prop_geo(0.999, 1.0, [0.0, 1.0, 2.0]),
            1e-10)
        self.assertGreater(period, 0)

    def test_general_geodesic(self):
        eps = 0.5
        start = random_point(numpy.random.default_rng(29))
        velocity = (0.3, -0.4, 0.5)
        triple = BergerParams(eps).triple()
        state = geodesic_from_direction(start, velocity)
        traj = integrate_geodesic(triple, state, 2.0)

        for time, state in list(traj)[::400]:
            self.assertLess(distance(state.point, general_berger_geodesic(eps,
                start, velocity, time / math.sqrt(0.5))), 1e-9)

    def test_hopf_orbits(self):
        start = random_point(numpy.random.default_rng(31))
        point = general_berger_geodesic(0.5, start, (0.0, 0.0, -2.0), 0.7)
        self.assertLess(distance(point, hopf_flow(0.5, -1.4, start)), 1e-12)

        with self.assertRaises(BergerGeodesicSpec.DomainError):
            general_berger_geodesic(0.5, start, (0.0, 0.0, 0.0), 1.0)


class IntegratorTests(unittest.TestCase):
    def test_config(self):
        with self.assertRaisesRegex(IntegratorConfig.InvalidConfig,
            r"Step must be positive"):
            IntegratorConfig(0.0)

        with self.assertRaisesRegex(IntegratorConfig.InvalidConfig,
            r"Unknown scheme"):
            IntegratorConfig(scheme='euler')

    def test_matches_closed_form(self):
        config = IntegratorConfig(1e-4)

        for eps in EPS_VALUES:
            for theta in THETA_VALUES:
                spec = BergerGeodesicSpec(eps, theta)
                traj = integrate_geodesic(BergerParams(eps).triple(),
                    GeodesicState(IDENTITY, spec.initial_velocity),
                    4 * math.pi, config)
                deviation = max(distance(state.point,
                    berger_geodesic(spec, time)) for time, state in
                    zip(traj.times[::50] + [traj.times[-1]],
                    traj.states[::50] + [traj.final]))

                with self.subTest(eps=eps, theta=theta):
                    self.assertLess(deviation, 1e-6)
                    self.assertLess(traj.max_norm_drift, 1e-12)

    def test_fourth_order(self):
        ratio = rk4_order(BergerGeodesicSpec(0.5, math.pi / 3), math.pi,
            0.05)
        self.assertGreaterEqual(ratio, 8)
        self.assertLessEqual(ratio, 32)

    def test_speed_conservation(self):
        rng = numpy.random.default_rng(37)

        for _ in range(50):
            triple = MilnorTriple(*(fractions.Fraction(int(num), int(den))
                for num, den in zip(rng.integers(1, 4, size=3),
                rng.integers(1, 3, size=3))))
            state = geodesic_from_direction(random_point(rng),
                rng.normal(size=3))
            traj = integrate_geodesic(triple, state, 10.0)

            with self.subTest(triple=triple.as_tuple()):
                self.assertLess(max(abs(val.speed - 1)
                    for val in traj.states), 1e-9)
                self.assertLess(traj.max_norm_drift, 1e-12)

    def test_reversibility(self):
        rng = numpy.random.default_rng(39)
        triple = MilnorTriple(3, 2, 1)

        for _ in range(5):
            start = geodesic_from_direction(random_point(rng),
                rng.normal(size=3))
            forward = integrate_geodesic(triple, start, 3.0)
            backward = integrate_geodesic(triple, forward.final, -3.0)

            self.assertLess(distance(backward.final.point, start.point),
                1e-8)
            for got, want in zip(backward.final.body_velocity,
                start.body_velocity):
                self.assertAlmostEqual(got, want, places=8)

    def test_trajectory(self):
        triple = BergerParams(0.5).triple()
        state = GeodesicState(IDENTITY, (0.0, 1.0, 0.0))

        single = integrate_geodesic(triple, state, 0.0)
        self.assertEqual(len(single), 1)
        self.assertEqual(single.rows(), [(0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0,
            0.0)])

        traj = integrate_geodesic(triple, state, 0.0105,
            IntegratorConfig(0.001))
        self.assertEqual(len(traj), 12)
        self.assertEqual(traj.times[-1], 0.0105)
        self.assertEqual(len(traj.rows()[0]), len(TRAJECTORY_COLUMNS))
        self.assertEqual(len(traj.rows(hopf=True)[0]),
            len(TRAJECTORY_COLUMNS) + len(HOPF_COLUMNS))

        spec = BergerGeodesicSpec(0.5, math.pi / 2)
        self.assertLess(distance(traj.at(0.0055).point, berger_geodesic(spec,
            0.0055)), 1e-12)
        with self.assertRaisesRegex(ValueError, r"outside"):
            traj.at(0.1)

        backward = integrate_geodesic(triple, state, -0.5)
        self.assertEqual(backward.times[-1], -0.5)
        self.assertLess(distance(backward.final.point, berger_geodesic(spec,
            -0.5)), 1e-10)

    def test_integration_errors(self):
        integrator = Integrator(MilnorTriple(1, 1, 1))
        with self.assertRaises(Integrator.IntegrationError):
            integrator.run(GeodesicState(IDENTITY, (1.0, 0.0, 0.0)),
                math.inf)

        with self.assertRaises(Integrator.IntegrationError):
            integrator.step(IDENTITY.as_tuple(), (math.inf, 0.0, 0.0), 0.1)

        with self.assertRaisesRegex(ValueError, r"nonzero"):
            geodesic_from_direction(IDENTITY, (0.0, 0.0, 0.0))

    def test_constant_angle(self):
        spec = BergerGeodesicSpec(2.0, 1.1)
        traj = integrate_geodesic(BergerParams(2.0).triple(),
            GeodesicState(IDENTITY, spec.initial_velocity), 3.0)
        for state in traj.states[::500]:
            self.assertAlmostEqual(angle_to_y3(state), 1.1, places=9)


class OracleTests(unittest.TestCase):
    def test_search_finds_period_and_shift(self):
        spec = BergerGeodesicSpec(0.5, math.pi / 3)
        returns = find_orbit_returns(spec, 1.1 * spec.period)
        self.assertEqual(len(returns), 2)
        self.assertAlmostEqual(returns[0], spec.period / 2, places=5)

        period, shift = find_period_shift(spec)
        self.assertAlmostEqual(period, spec.period, places=5)
        self.assertAlmostEqual(wrap_angle((shift - spec.shift) / spec.eps),
            0.0, places=5)

    def test_jacobi_estimate(self):
        triple = MilnorTriple(3, 2, 1)
        table = christoffel(triple)
        self.assertAlmostEqual(jacobi_curvature_estimate(triple, 0, 1),
            to_float(sectional_curvature(table, triple, 0, 1)), places=3)

        eps = 0.5
        berger = BergerParams(eps).triple()
        estimate = jacobi_curvature_estimate(berger, 0, 1,
            lambda velocity, time: general_berger_geodesic(eps, IDENTITY,
            velocity, time))
        self.assertAlmostEqual(estimate, 5.0, places=3)

        with self.assertRaisesRegex(ValueError, r"two distinct"):
            jacobi_curvature_estimate(triple, 2, 2)
