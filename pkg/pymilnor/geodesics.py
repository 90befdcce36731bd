"""
Geodesics of left-invariant metrics and of Berger spheres

A geodesic is described by its point g and its body velocity a, the frame
coefficients of g'(t). It solves

    g' = g * (a1 e1 + a2 e2 + a3 e3)
    ak' = -sum over i, j of ai aj gamma_ij^k

which is integrated with a fixed-step classical Runge-Kutta scheme. On Berger
spheres the geodesics through the identity are also known in closed form.
"""

import bisect
import dataclasses
import logging
import math
import typing

import numpy

from .group import (AlgebraVector, GroupPoint, IDENTITY, alg_exp, distance,
    group_inv, group_mul, hopf_flow, hopf_projection, quaternion_product)
from .metrics import BergerParams, MilnorTriple, christoffel
from .scalars import to_float, wrap_angle


LOGGER = logging.getLogger(__name__)

Velocity: typing.TypeAlias = tuple[float, float, float]
GeodesicMap: typing.TypeAlias = typing.Callable[[Velocity, float], GroupPoint]

TRAJECTORY_COLUMNS = ('t', 'qw', 'qx', 'qy', 'qz', 'a1', 'a2', 'a3')
HOPF_COLUMNS = ('hx', 'hy', 'hz')

# Variation parameter and sample times of the geodesic deviation estimate
JACOBI_VARIATION = 1e-4
JACOBI_TIMES = (0.02, 0.2)
JACOBI_SAMPLES = 12

__all__ = ['GeodesicState', 'BergerGeodesicSpec', 'IntegratorConfig',
    'Integrator', 'Trajectory', 'integrate_geodesic',
    'geodesic_from_direction',
    'berger_geodesic', 'period_shift', 'verify_prop_geo',
    'general_berger_geodesic', 'angle_to_y3', 'jacobi_curvature_estimate',
    'find_orbit_returns', 'find_period_shift', 'rk4_order',
    'TRAJECTORY_COLUMNS', 'HOPF_COLUMNS']


@dataclasses.dataclass(frozen=True)
class GeodesicState:
    """
    Point of a geodesic and its body velocity in the orthonormal frame.
    """

    point: GroupPoint
    body_velocity: Velocity

    @property
    def speed(self) -> float:
        """
        Frame norm of the body velocity.
        """

        return math.sqrt(sum(coeff * coeff for coeff in self.body_velocity))


def geodesic_from_direction(point: GroupPoint,
    direction: typing.Sequence[float]) -> GeodesicState:
    """
    Unit-speed initial state at point in the given frame direction.
    """

    coeffs = [float(coeff) for coeff in direction]
    norm = math.sqrt(sum(coeff * coeff for coeff in coeffs))
    if norm == 0:
        raise ValueError("Direction must be nonzero")

    return GeodesicState(point, typing.cast(Velocity,
        tuple(coeff / norm for coeff in coeffs)))


@dataclasses.dataclass(frozen=True)
class BergerGeodesicSpec:
    """
    Unit-speed Berger geodesic through the identity whose initial velocity
    makes the angle theta with Y3: c'(0) = alpha*Y3 + beta*Y2.
    """

    class DomainError(ValueError):
        """
        Raised when theta is outside (0, pi) or eps is invalid.
        """

    eps: float
    theta: float

    def __post_init__(self) -> None:
        try:
            BergerParams(self.eps)
        except BergerParams.InvalidEpsilon as err:
            raise self.DomainError(str(err)) from err

        object.__setattr__(self, 'eps', to_float(self.eps))
        object.__setattr__(self, 'theta', to_float(self.theta))

        if not 0 < self.theta < math.pi:
            raise self.DomainError(f"theta must lie in (0, pi), not "
                f"{self.theta}")

    @property
    def alpha(self) -> float:
        """
        Component of c'(0) along Y3.
        """

        return math.cos(self.theta)

    @property
    def beta(self) -> float:
        """
        Component of c'(0) along Y2.
        """

        return math.sin(self.theta)

    @property
    def frequency(self) -> float:
        """
        m = sqrt(alpha**2 + beta**2/eps).
        """

        return math.sqrt(self.alpha ** 2 + self.beta ** 2 / self.eps)

    @property
    def period(self) -> float:
        """
        T = 2*pi/m.
        """

        return 2 * math.pi / self.frequency

    @property
    def shift(self) -> float:
        """
        S = alpha*(1 - eps)*T.
        """

        return self.alpha * (1 - self.eps) * self.period

    @property
    def initial_velocity(self) -> Velocity:
        """
        Frame coefficients (0, beta, alpha) of c'(0).
        """

        return (0.0, self.beta, self.alpha)


@dataclasses.dataclass(frozen=True)
class IntegratorConfig:
    """
    Fixed-step integration settings.
    """

    class InvalidConfig(ValueError):
        """
        Raised for a non-positive step or an unknown scheme.
        """

    step: float = 1e-3
    renormalize: bool = True
    scheme: str = 'rk4'

    def __post_init__(self) -> None:
        if not (math.isfinite(self.step) and self.step > 0):
            raise self.InvalidConfig(f"Step must be positive, not "
                f"{self.step!r}")

        if self.scheme != 'rk4':
            raise self.InvalidConfig(f"Unknown scheme {self.scheme!r}")


Quat: typing.TypeAlias = tuple[float, float, float, float]


class Trajectory:
    """
    States of an integrated geodesic at the times k*step, plus the final
    time when it is not on the grid.
    """

    def __init__(self, integrator: 'Integrator', times: list[float],
        states: list[GeodesicState], max_norm_drift: float) -> None:

        self.integrator = integrator
        self.times = times
        self.states = states
        self.max_norm_drift = max_norm_drift

    def __len__(self) -> int:
        return len(self.states)

    def __iter__(self) -> typing.Iterator[tuple[float, GeodesicState]]:
        return iter(zip(self.times, self.states))

    @property
    def final(self) -> GeodesicState:
        """
        State at the end time.
        """

        return self.states[-1]

    def at(self, time: float) -> GeodesicState:
        """
        State at an arbitrary time of the covered interval, obtained by one
        partial step from the nearest stored state.
        """

        lower, upper = sorted((self.times[0], self.times[-1]))
        if not lower - 1e-12 <= time <= upper + 1e-12:
            raise ValueError(f"Time {time} outside [{lower}, {upper}]")

        ordered = self.times if self.times[-1] >= self.times[0] else \
            [-val for val in self.times]
        key = time if self.times[-1] >= self.times[0] else -time

        pos = bisect.bisect_left(ordered, key)
        candidates = [idx for idx in (pos - 1, pos) if 0 <= idx < len(ordered)]
        idx = min(candidates, key=lambda cand: abs(ordered[cand] - key))

        delta = time - self.times[idx]
        state = self.states[idx]
        if delta == 0:
            return state

        quat, vel = self.integrator.step(state.point.as_tuple(),
            state.body_velocity, delta)
        return GeodesicState(GroupPoint.from_quaternion(quat), vel)

    def rows(self, *, hopf: bool = False) -> list[tuple[float, ...]]:
        """
        One row per stored state, in the column order of TRAJECTORY_COLUMNS
        followed by HOPF_COLUMNS when hopf is set.
        """

        result = []
        for time, state in self:
            row = (time, *state.point.as_tuple(), *state.body_velocity)
            if hopf:
                row += hopf_projection(state.point)
            result.append(row)

        return result


class Integrator:
    """
    Classical Runge-Kutta integrator of the geodesic equations of a Milnor
    metric.
    """

    class IntegrationError(ArithmeticError):
        """
        Raised when the state becomes non-finite.
        """

    def __init__(self, triple: MilnorTriple,
        config: IntegratorConfig | None = None) -> None:

        self.triple = triple
        self.config = config or IntegratorConfig()
        self.scales = triple.float_scales

        gamma = christoffel(triple).numeric
        # Only symbols with three distinct indices are nonzero, so output k
        # has the single quadratic term vel[i]*vel[j] for {i, j, k} = {0, 1, 2}
        self.coeffs = tuple(gamma[i][j][k] + gamma[j][i][k]
            for k, (i, j) in enumerate(((1, 2), (0, 2), (0, 1))))

    def derivative(self, quat: Quat, vel: Velocity) -> tuple[Quat, Velocity]:
        """
        Right-hand side of the geodesic equations.
        """

        l_1, l_2, l_3 = self.scales
        dquat = quaternion_product(quat, (0.0, l_1 * vel[0], l_2 * vel[1],
            l_3 * vel[2]))

        v_1, v_2, v_3 = vel
        a_1, a_2, a_3 = self.coeffs
        dvel = (-a_1 * v_2 * v_3, -a_2 * v_1 * v_3, -a_3 * v_1 * v_2)

        return dquat, dvel

    def step(self, quat: Quat, vel: Velocity, step: float) \
        -> tuple[Quat, Velocity]:
        """
        One Runge-Kutta step of size step (which may be negative).
        """

        def shift(base: tuple[float, ...], slope: tuple[float, ...],
            factor: float) -> tuple[float, ...]:
            return tuple(val + factor * der for val, der in zip(base, slope))

        kq1, kv1 = self.derivative(quat, vel)
        kq2, kv2 = self.derivative(shift(quat, kq1, step / 2),
            shift(vel, kv1, step / 2))
        kq3, kv3 = self.derivative(shift(quat, kq2, step / 2),
            shift(vel, kv2, step / 2))
        kq4, kv4 = self.derivative(shift(quat, kq3, step),
            shift(vel, kv3, step))

        new_quat = tuple(val + step * (d1 + 2 * d2 + 2 * d3 + d4) / 6
            for val, d1, d2, d3, d4 in zip(quat, kq1, kq2, kq3, kq4))
        new_vel = tuple(val + step * (d1 + 2 * d2 + 2 * d3 + d4) / 6
            for val, d1, d2, d3, d4 in zip(vel, kv1, kv2, kv3, kv4))

        if not all(math.isfinite(val) for val in new_quat + new_vel):
            raise self.IntegrationError("Non-finite geodesic state")

        return typing.cast(Quat, new_quat), typing.cast(Velocity, new_vel)

    def run(self, start: GeodesicState, t_end: float) -> Trajectory:
        """
        Integrates from start (at time 0) to t_end.
        """

        if not math.isfinite(t_end):
            raise self.IntegrationError(f"Non-finite end time {t_end}")

        step = self.config.step
        sign = 1.0 if t_end >= 0 else -1.0
        count = int(math.floor(abs(t_end) / step + 1e-9))
        remainder = abs(t_end) - count * step

        LOGGER.debug("Integrating %s from %s over %d steps of %g",
            self.triple.as_tuple(), start, count, step)

        quat = start.point.as_tuple()
        vel = tuple(float(coeff) for coeff in start.body_velocity)
        times = [0.0]
        states = [GeodesicState(start.point, typing.cast(Velocity, vel))]
        drift = 0.0

        sizes = [sign * step] * count
        if remainder > 1e-12 * step:
            sizes.append(sign * remainder)

        for idx, size in enumerate(sizes, 1):
            quat, vel = self.step(quat, vel, size)
            norm = math.sqrt(sum(val * val for val in quat))
            drift = max(drift, abs(norm - 1))

            if self.config.renormalize:
                quat = typing.cast(Quat, tuple(val / norm for val in quat))

            times.append(sign * idx * step if idx <= count else t_end)
            states.append(GeodesicState(GroupPoint.from_quaternion(quat),
                vel))

        LOGGER.debug("Integration done, final speed %.15g, norm drift %g",
            states[-1].speed, drift)

        return Trajectory(self, times, states, drift)


def integrate_geodesic(triple: MilnorTriple, start: GeodesicState,
    t_end: float, config: IntegratorConfig | None = None) -> Trajectory:
    """
    Integrates the geodesic of triple starting at start until t_end.
    """

    return Integrator(triple, config).run(start, t_end)


# MARK: Berger closed form


def berger_geodesic(spec: BergerGeodesicSpec, time: float) -> GroupPoint:
    """
    Closed-form Berger geodesic with c(0) = identity and
    c'(0) = alpha*Y3 + beta*Y2:

        f = cos(m t) + i alpha sin(m t)/m
        g = i beta sin(m t)/(sqrt(eps) m)
        c(t) = [[f e^(i phi), g e^(-i phi)], [g e^(i phi), conj(f) e^(-i phi)]]

    with phi = alpha (1/eps - 1) t.
    """

    m = spec.frequency
    sin_mt = math.sin(m * time)
    f = complex(math.cos(m * time), spec.alpha * sin_mt / m)
    g = complex(0.0, spec.beta * sin_mt / (math.sqrt(spec.eps) * m))
    phi = spec.alpha * (1 / spec.eps - 1) * time

    top_left = f * complex(math.cos(phi), math.sin(phi))
    top_right = g * complex(math.cos(phi), -math.sin(phi))

    return GroupPoint(top_left.real, top_right.real, top_right.imag,
        top_left.imag)


def period_shift(eps: float, theta: float) -> tuple[float, float]:
    """
    Period T and Hopf shift S of Berger geodesics at angle theta to Y3.
    Unlike BergerGeodesicSpec, eps = 1 is admitted (then S = 0).
    """

    if not eps > 0:
        raise BergerGeodesicSpec.DomainError(f"eps must be positive, not "
            f"{eps}")

    eps = to_float(eps)
    theta = to_float(theta)
    if not 0 < theta < math.pi:
        raise BergerGeodesicSpec.DomainError(f"theta must lie in (0, pi), "
            f"not {theta}")

    alpha, beta = math.cos(theta), math.sin(theta)
    period = 2 * math.pi / math.sqrt(alpha ** 2 + beta ** 2 / eps)
    return period, alpha * (1 - eps) * period


def verify_prop_geo(eps: float, theta: float,
    sample_times: typing.Iterable[float],
    geodesic: typing.Callable[[float], GroupPoint] | None = None) -> float:
    """
    Maximum over sample_times of |c(t + T) - flow_S(c(t))|, where flow is the
    Hopf flow. The closed form is used unless a geodesic is given.
    """

    spec = BergerGeodesicSpec(eps, theta)
    curve = geodesic or (lambda time: berger_geodesic(spec, time))
    period, shift = spec.period, spec.shift

    return max((distance(curve(time + period), hopf_flow(spec.eps, shift,
        curve(time))) for time in sample_times), default=0.0)


def general_berger_geodesic(eps: float, start: GroupPoint,
    velocity: typing.Sequence[float], time: float) -> GroupPoint:
    """
    Berger geodesic through start with initial frame velocity velocity. The
    curve is the image of a closed-form geodesic through the identity under
    a left translation and a rotation about the Y3 axis. Velocities along
    +-Y3 give Hopf orbits. A non-unit velocity reparametrizes time.
    """

    spec_eps = to_float(eps)
    coeffs = [float(coeff) for coeff in velocity]
    speed = math.sqrt(sum(coeff * coeff for coeff in coeffs))
    if speed == 0:
        raise BergerGeodesicSpec.DomainError("Zero initial velocity")

    u_1, u_2, u_3 = (coeff / speed for coeff in coeffs)
    sin_theta = math.hypot(u_1, u_2)

    if sin_theta < 1e-12:
        return hopf_flow(spec_eps, math.copysign(speed * time, u_3), start)

    spec = BergerGeodesicSpec(spec_eps, math.atan2(sin_theta, u_3))
    rot = alg_exp(AlgebraVector(0.0, 0.0, math.atan2(u_1, u_2) / 2))
    base = berger_geodesic(spec, speed * time)

    return group_mul(group_mul(group_mul(start, group_inv(rot)), base), rot)


def angle_to_y3(state: GeodesicState) -> float:
    """
    Angle between the velocity and Y3 (frame index 2).
    """

    return math.acos(max(-1.0, min(1.0, state.body_velocity[2] /
        state.speed)))


# MARK: Numeric oracles


def _body_frame(triple: MilnorTriple, base: GroupPoint,
    tangent: Quat) -> Velocity:
    # base^-1 * tangent is a pure quaternion: the body vector in the algebra
    _, q_1, q_2, q_3 = quaternion_product(group_inv(base).as_tuple(), tangent)
    return triple.algebra_to_frame(AlgebraVector(q_1, q_2, q_3))


def jacobi_curvature_estimate(triple: MilnorTriple, i: int, j: int,
    geodesic: GeodesicMap | None = None,
    config: IntegratorConfig | None = None) -> float:
    """
    Estimates the sectional curvature of the plane (Ei, Ej) from geodesic
    deviation. The Jacobi field J along the geodesic from the identity in
    direction Ei with J(0) = 0, J'(0) = Ej satisfies

        |J(t)|**2 / t**2 = 1 - K t**2/3 + O(t**4)

    after symmetrization in t, so K is read off a polynomial fit in t**2.
    geodesic maps (frame velocity, t) to the geodesic point; by default the
    integrator is used.
    """

    if i == j:
        raise ValueError("Curvature needs two distinct frame vectors")

    if geodesic is None:
        integrator = Integrator(triple, config)

        def geodesic(velocity: Velocity, time: float) -> GroupPoint:
            state = GeodesicState(IDENTITY, velocity)
            return integrator.run(state, time).final.point

    def direction(angle: float) -> Velocity:
        coeffs = [0.0, 0.0, 0.0]
        coeffs[i] = math.cos(angle)
        coeffs[j] = math.sin(angle)
        return typing.cast(Velocity, tuple(coeffs))

    def ratio(time: float) -> float:
        center = geodesic(direction(0.0), time)
        plus = geodesic(direction(JACOBI_VARIATION), time).as_tuple()
        minus = geodesic(direction(-JACOBI_VARIATION), time).as_tuple()
        tangent = typing.cast(Quat, tuple((p - m) / (2 * JACOBI_VARIATION)
            for p, m in zip(plus, minus)))
        body = _body_frame(triple, center, tangent)
        return sum(val * val for val in body) / (time * time)

    times = numpy.linspace(*JACOBI_TIMES, JACOBI_SAMPLES)
    values = [(ratio(time) + ratio(-time)) / 2 for time in times]

    squares = times * times
    top = float(squares[-1])
    coeffs = numpy.polynomial.polynomial.polyfit(squares / top, values, 3)

    return float(-3 * coeffs[1] / top)


def _orbit_gap(state: GeodesicState) -> float:
    # Squared distance from the Hopf orbit of the identity
    return state.point.x ** 2 + state.point.y ** 2


def find_orbit_returns(spec: BergerGeodesicSpec, t_end: float,
    config: IntegratorConfig | None = None,
    tolerance: float = 1e-6) -> list[float]:
    """
    Times in (0, t_end] at which the integrated geodesic of spec meets the
    Hopf orbit of its starting point (the identity) again.
    """

    triple = BergerParams(spec.eps).triple()
    start = GeodesicState(IDENTITY, spec.initial_velocity)
    traj = integrate_geodesic(triple, start, t_end, config)
    gaps = [_orbit_gap(state) for state in traj.states]

    returns = []
    for idx in range(1, len(gaps) - 1):
        if not gaps[idx] <= gaps[idx - 1] or not gaps[idx] < gaps[idx + 1]:
            continue

        time = _refine_minimum(traj, traj.times[idx],
            traj.times[idx + 1] - traj.times[idx])
        if _orbit_gap(traj.at(time)) < tolerance ** 2:
            returns.append(time)

    LOGGER.debug("Orbit returns for %s: %s", spec, returns)
    return returns


def _refine_minimum(traj: Trajectory, center: float, width: float) -> float:
    # Successive parabolic vertices of the gap, shrinking the bracket
    lower, upper = sorted((traj.times[0], traj.times[-1]))

    for _ in range(6):
        left = max(lower, center - width)
        right = min(upper, center + width)
        values = [_orbit_gap(traj.at(time)) for time in (left, center, right)]
        denom = values[0] - 2 * values[1] + values[2]
        if denom <= 0 or left == center or right == center:
            break

        center = center + width * (values[0] - values[2]) / (2 * denom)
        center = min(max(center, lower), upper)
        width /= 10

    return center


def find_period_shift(spec: BergerGeodesicSpec,
    config: IntegratorConfig | None = None) -> tuple[float, float]:
    """
    Period and shift located on the integrated geodesic. The geodesic passes
    -diag(...) on the Hopf orbit of the identity after half a period, so the
    period is the second return time. The shift is only defined modulo
    2*pi*eps and is reported in (-pi*eps, pi*eps].
    """

    horizon = 2 * math.pi * max(1.0, math.sqrt(spec.eps)) * 1.1
    returns = find_orbit_returns(spec, horizon, config)
    if len(returns) < 2:
        raise Integrator.IntegrationError(f"Geodesic {spec} did not return "
            f"twice to its Hopf orbit before t={horizon}")

    period = returns[1]
    triple = BergerParams(spec.eps).triple()
    state = integrate_geodesic(triple, GeodesicState(IDENTITY,
        spec.initial_velocity), period, config).final
    angle = math.atan2(state.point.z, state.point.w)

    return period, spec.eps * wrap_angle(angle)


def rk4_order(spec: BergerGeodesicSpec, t_end: float, step: float) \
    -> float:
    """
    Ratio of the maximal closed-form deviations at steps step and step/2.
    A fourth order scheme gives about 16.
    """

    errors = []
    triple = BergerParams(spec.eps).triple()
    start = GeodesicState(IDENTITY, spec.initial_velocity)

    for size in (step, step / 2):
        traj = integrate_geodesic(triple, start, t_end,
            IntegratorConfig(size))
        errors.append(max(distance(state.point, berger_geodesic(spec, time))
            for time, state in traj))

    return errors[0] / errors[1]
