"""
Homogeneity certificate of a one-dimensional foliation

When the mean curvature form w of the unit field V is closed, it has a
potential f with df = w on the sphere, and X = exp(-f) V is a Killing field
whose orbits are the leaves. The certificate builds f by line integration and
measures how far X is from being Killing.
"""

import dataclasses
import logging
import math
import typing

from ..fields import FrameField, OneFormField
from ..group import (AlgebraVector, GroupPoint, DEFAULT_STEP, NESTED_STEP,
    SIMPSON_PANELS, alg_exp, alg_log, distance, group_inv, group_mul, simpson)
from ..metrics import MilnorTriple, christoffel, killing_residual
from ..scalars import (Coefficients, Scalar, is_exact, is_zero, max_abs,
    to_float)
from .checks import (DEFAULT_TOLERANCE, FRAME_PAIRS, exterior_derivative,
    mean_curvature)


LOGGER = logging.getLogger(__name__)

# Tolerance of the Killing residual for a successful certificate
KILLING_TOLERANCE = 1e-5

__all__ = ['PotentialFunction', 'frame_arc_amounts', 'HomogeneityCertificate',
    'homogeneity_certificate', 'KILLING_TOLERANCE']


def frame_arc_amounts(triple: MilnorTriple, base: GroupPoint,
    target: GroupPoint) -> tuple[float, float, float]:
    """
    Amounts (t1, t2, t3) such that
    target = base * exp(t1 e1) * exp(t2 e2) * exp(t3 e3).
    """

    rel = group_mul(group_inv(base), target)
    w, x, y, z = rel.as_tuple()

    # Rotation matrix entries of rel, decomposed as Rx(A) Ry(B) Rz(C)
    r_00 = 1 - 2 * (y * y + z * z)
    r_01 = 2 * (x * y - w * z)
    r_02 = 2 * (x * z + w * y)
    r_12 = 2 * (y * z - w * x)
    r_22 = 1 - 2 * (x * x + y * y)

    halves = [math.atan2(-r_12, r_22) / 2,
        math.asin(max(-1.0, min(1.0, r_02))) / 2,
        math.atan2(-r_01, r_00) / 2]

    rebuilt = group_mul(group_mul(alg_exp(AlgebraVector(halves[0], 0.0, 0.0)),
        alg_exp(AlgebraVector(0.0, halves[1], 0.0))),
        alg_exp(AlgebraVector(0.0, 0.0, halves[2])))

    # The rotation only fixes the quaternion up to sign
    if distance(rebuilt, rel) > distance(rebuilt, -rel):
        halves[2] += math.pi

    l_1, l_2, l_3 = triple.float_scales
    return (halves[0] / l_1, halves[1] / l_2, halves[2] / l_3)


class PotentialFunction:
    """
    Potential f of a closed one-form w with f(base) = 0, obtained by
    integrating w along the frame arcs from base to the evaluated point with
    the composite Simpson rule.
    """

    def __init__(self, triple: MilnorTriple, form: OneFormField,
        base: GroupPoint, panels: int = SIMPSON_PANELS) -> None:

        self.triple = triple
        self.form = form
        self.base = base
        self.panels = panels

    def _component(self, point: GroupPoint, idx: int) -> float:
        return to_float(self.form(point)[idx])

    def __call__(self, point: GroupPoint) -> float:
        if self.form.is_left_invariant and \
            all(is_zero(val) for val in self.form(point)):
            return 0.0

        amounts = frame_arc_amounts(self.triple, self.base, point)
        generators = self.triple.float_generators
        total = 0.0
        start = self.base

        for idx, (amount, gen) in enumerate(zip(amounts, generators)):
            origin = start
            total += simpson(lambda time: self._component(group_mul(origin,
                alg_exp(gen * time)), idx), 0.0, amount, self.panels)
            start = group_mul(origin, alg_exp(gen * amount))

        return total

    def local(self, anchor: GroupPoint, point: GroupPoint) -> float:
        """
        f(point) - f(anchor) for nearby points, integrated along the single
        arc anchor*exp(s*a), s in [0, 1], where exp(a) = anchor^-1 * point.
        """

        vec = alg_log(group_mul(group_inv(anchor), point))
        velocity = self.triple.algebra_to_frame(vec)

        def integrand(time: float) -> float:
            coeffs = self.form(group_mul(anchor, alg_exp(vec * time)))
            return sum(to_float(form) * vel for form, vel in zip(coeffs,
                velocity))

        return simpson(integrand, 0.0, 1.0, self.panels)


@dataclasses.dataclass(frozen=True)
class HomogeneityCertificate:
    """
    Potential f and Killing field X = exp(-f) V of a homogeneous foliation,
    with the largest Killing residual of X over the samples.
    """

    class NotClosed(Exception):
        """
        The mean curvature form is not closed: dw(Ei, Ej) = value at point.
        """

        def __init__(self, pair: tuple[int, int], value: Scalar,
            point: GroupPoint) -> None:

            self.pair = pair
            self.value = value
            self.point = point
            super().__init__(f"dw(E{pair[0] + 1}, E{pair[1] + 1}) = {value} "
                f"at {point.as_tuple()}")

    field: FrameField
    potential: PotentialFunction
    killing_residual: Scalar
    tolerance: float

    @property
    def success(self) -> bool:
        """
        True if X is Killing within tolerance.
        """

        return to_float(self.killing_residual) < self.tolerance

    def killing_field(self) -> FrameField:
        """
        The field X = exp(-f) V.
        """

        potential, field = self.potential, self.field
        return field.scaled_by(lambda pnt: math.exp(-potential(pnt)),
            f'exp(-f)*{field.name}')


def _check_closed(triple: MilnorTriple, form: OneFormField,
    points: typing.Sequence[GroupPoint], tol: float) -> None:

    table = christoffel(triple)
    basis = [FrameField.basis(idx) for idx in range(3)]

    for point in points:
        for i, j in FRAME_PAIRS:
            value = exterior_derivative(form, basis[i], basis[j], point,
                table=table)
            closed = is_zero(value) if is_exact(value) else \
                abs(to_float(value)) <= tol
            if not closed:
                raise HomogeneityCertificate.NotClosed((i, j), value, point)


def homogeneity_certificate(triple: MilnorTriple, field: FrameField,
    base: GroupPoint, samples: typing.Sequence[GroupPoint],
    tol: float = KILLING_TOLERANCE,
    closed_tol: float = DEFAULT_TOLERANCE,
    step: float = DEFAULT_STEP) -> HomogeneityCertificate:
    """
    Certifies that the foliation of field is homogeneous. Raises
    HomogeneityCertificate.NotClosed with a witness when dw does not vanish
    at a sample; otherwise returns the certificate, whose success tells
    whether exp(-f) V is Killing within tol at every sample.
    """

    form = mean_curvature(triple, field, NESTED_STEP)
    points = samples if samples else [base]
    _check_closed(triple, form, points, closed_tol)

    potential = PotentialFunction(triple, form, base)
    table = christoffel(triple)

    if field.is_left_invariant:
        # Closed left-invariant forms vanish, so f is constant
        residuals = [val for row in killing_residual(table, field, base, step)
            for val in row]
    else:
        residuals = []
        for point in points:
            offset = potential(point)

            def local_field(pnt: GroupPoint, anchor: GroupPoint = point,
                value: float = offset) -> Coefficients:
                scale = math.exp(-(value + potential.local(anchor, pnt)))
                return typing.cast(Coefficients, tuple(scale * coeff
                    for coeff in field.floats(pnt)))

            matrix = killing_residual(table, FrameField(local_field, None,
                'X'), point, step)
            residuals.extend(val for row in matrix for val in row)

    certificate = HomogeneityCertificate(field, potential,
        max_abs(residuals), tol)
    LOGGER.info("Certificate for %s: Killing residual %s (%s)", field.name,
        certificate.killing_residual,
        'success' if certificate.success else 'failure')
    return certificate
