"""
Pointwise identities satisfied by metric foliations of Berger spheres

For a unit field V with angle coordinates (psi, nu) and the adapted frame
V, W, U, the identities checked on the region V != +-Y3 are

    Y3(psi) = 0
    Y3(nu) + 2/eps = 0
    W(psi) = 0
    U(psi) + sin(psi) W(nu) + (2 - 2/eps) sin(psi)**2 = 0
    V(psi) = 0
    <U, [U, V]> = 0
    V(U(psi)) = 0
    Y3(V(nu)) = 0
    V(V(nu)) = 0

together with [Y3, V] = [Y3, U] = [Y3, W] = 0.
"""

import dataclasses
import logging
import math
import typing

from ..fields import FrameField
from ..group import GroupPoint, NESTED_STEP, frame_derivative
from ..metrics import BergerParams, ChristoffelTable, christoffel, nabla
from ..scalars import to_float, wrap_angle
from .checks import DEFAULT_TOLERANCE, inner, is_metric_foliation
from .frames import AngleCoordinates, completion_fields


LOGGER = logging.getLogger(__name__)

# Residual tolerance of the identities
LEMMA_TOLERANCE = 1e-5

# Residuals below this value are treated as converged round-off
ROUNDOFF_FLOOR = 1e-8

# Fine step of the outer derivatives; the coarse step is STEP_RATIO times
# larger. The order is measured between 1e-2 and 1e-3 rather than 1e-3 and
# 1e-4: with Richardson refinement the residuals at 1e-4 are round-off.
LEMMA_STEP = 1e-3
STEP_RATIO = 10

IDENTITIES = ('Y3(psi)', 'Y3(nu)+2/eps', 'W(psi)',
    'U(psi)+sin(psi)W(nu)+(2-2/eps)sin^2(psi)', 'V(psi)', '<U,[U,V]>',
    'V(U(psi))', 'Y3(V(nu))', 'V(V(nu))', '[Y3,V]', '[Y3,U]', '[Y3,W]')

ScalarField: typing.TypeAlias = typing.Callable[[GroupPoint], float]

__all__ = ['LemmaCheck', 'lemma_equalities_check',
    'berger_mean_curvature_factor', 'IDENTITIES', 'LEMMA_TOLERANCE',
    'LEMMA_STEP']


@dataclasses.dataclass(frozen=True)
class LemmaCheck:
    """
    Largest absolute residual of each identity over the samples at the
    fine step, and the observed convergence order between the coarse and
    the fine step (infinite when the fine residual is round-off).
    """

    class NotMetric(ValueError):
        """
        Raised when the field does not span a metric foliation.
        """

    eps: float
    step: float
    tolerance: float
    residuals: dict[str, float]
    orders: dict[str, float]

    @property
    def passed(self) -> bool:
        """
        True if every residual is within tolerance.
        """

        return all(val <= self.tolerance for val in self.residuals.values())

    @staticmethod
    def convergence(coarse: dict[str, float], fine: dict[str, float],
        ratio: float = STEP_RATIO) -> dict[str, float]:
        """
        Observed order log(r_coarse/r_fine)/log(ratio) per identity.
        """

        orders = {}
        for name, value in fine.items():
            if value <= ROUNDOFF_FLOOR:
                orders[name] = math.inf
            elif coarse[name] <= 0:
                orders[name] = -math.inf
            else:
                orders[name] = math.log(coarse[name] / value) / math.log(ratio)

        return orders

    def converged(self, min_order: float = 2.0) -> bool:
        """
        True if every identity converges at least at min_order.
        """

        return all(order >= min_order for order in self.orders.values())


class _LocalAngles:
    """
    Angle functions and frame derivatives around one sample point.
    """

    def __init__(self, params: BergerParams, field: FrameField,
        point: GroupPoint, step: float) -> None:

        self.triple = params.triple()
        self.field = field
        self.normal, self.horizontal = completion_fields(field)
        self.step = step
        # Unwrapping reference for nu
        self.nu_ref = AngleCoordinates.from_coefficients(field(point)).nu

    def psi(self, point: GroupPoint) -> float:
        """
        Angle between V and Y3.
        """

        return AngleCoordinates.from_coefficients(self.field(point)).psi

    def nu(self, point: GroupPoint) -> float:
        """
        Angle of the Y1Y2 projection of V, continuous near the sample.
        """

        value = AngleCoordinates.from_coefficients(self.field(point)).nu
        return self.nu_ref + wrap_angle(value - self.nu_ref)

    def along(self, direction: FrameField, func: ScalarField,
        point: GroupPoint, *, inner_step: bool = False) -> float:
        """
        Derivative of func along direction at point, at the outer step or,
        for the inner derivative of a nested expression, at NESTED_STEP.
        """

        vec = self.triple.frame_to_algebra(direction.floats(point))
        return frame_derivative(func, point, vec,
            NESTED_STEP if inner_step else self.step)

    def derived(self, direction: FrameField, func: ScalarField) \
        -> ScalarField:
        """
        The function direction(func), for nesting.
        """

        return lambda pnt: self.along(direction, func, pnt, inner_step=True)


def _commutator_norm(table: ChristoffelTable, left: FrameField,
    right: FrameField, point: GroupPoint, step: float) -> float:

    forward = nabla(table, left, right, point, step)
    backward = nabla(table, right, left, point, step)
    return math.sqrt(sum((to_float(fwd) - to_float(bwd)) ** 2
        for fwd, bwd in zip(forward, backward)))


def _residuals(params: BergerParams, field: FrameField,
    samples: typing.Sequence[GroupPoint], step: float) -> dict[str, float]:

    table = christoffel(params.triple())
    inv_eps = 1 / to_float(params.eps)
    hopf = FrameField.basis(2)
    worst = dict.fromkeys(IDENTITIES, 0.0)

    for point in samples:
        local = _LocalAngles(params, field, point, step)
        normal, horizontal = local.normal, local.horizontal
        psi = local.psi(point)
        sin_psi = math.sin(psi)

        bracket_uv = [to_float(fwd) - to_float(bwd) for fwd, bwd in zip(
            nabla(table, horizontal, field, point, step),
            nabla(table, field, horizontal, point, step))]

        values = {
            'Y3(psi)': local.along(hopf, local.psi, point),
            'Y3(nu)+2/eps': local.along(hopf, local.nu, point) + 2 * inv_eps,
            'W(psi)': local.along(normal, local.psi, point),
            'U(psi)+sin(psi)W(nu)+(2-2/eps)sin^2(psi)':
                local.along(horizontal, local.psi, point)
                + sin_psi * local.along(normal, local.nu, point)
                + (2 - 2 * inv_eps) * sin_psi ** 2,
            'V(psi)': local.along(field, local.psi, point),
            '<U,[U,V]>': to_float(inner(horizontal.floats(point),
                bracket_uv)),
            'V(U(psi))': local.along(field, local.derived(horizontal,
                local.psi), point),
            'Y3(V(nu))': local.along(hopf, local.derived(field, local.nu),
                point),
            'V(V(nu))': local.along(field, local.derived(field, local.nu),
                point),
            '[Y3,V]': _commutator_norm(table, hopf, field, point, step),
            '[Y3,U]': _commutator_norm(table, hopf, horizontal, point, step),
            '[Y3,W]': _commutator_norm(table, hopf, normal, point, step),
        }

        for name, value in values.items():
            worst[name] = max(worst[name], abs(value))

    return worst


def lemma_equalities_check(params: BergerParams, field: FrameField,
    samples: typing.Sequence[GroupPoint], step: float = LEMMA_STEP,
    tol: float = LEMMA_TOLERANCE, *,
    require_metric: bool = True) -> LemmaCheck:
    """
    Evaluates every identity at every sample with Richardson-refined
    central differences at step, and again at STEP_RATIO*step to measure
    the convergence order.
    Unless require_metric is cleared, the field must first pass
    is_metric_foliation.
    """

    if not samples:
        raise ValueError("At least one sample point is needed")

    if require_metric:
        report = is_metric_foliation(params.triple(), field, samples,
            DEFAULT_TOLERANCE)
        if not report.is_metric:
            raise LemmaCheck.NotMetric(f"{field.name} is not a metric "
                f"foliation: residual {report.max_residual}")

    fine = _residuals(params, field, samples, step)
    coarse = _residuals(params, field, samples, step * STEP_RATIO)

    check = LemmaCheck(to_float(params.eps), step, tol, fine,
        LemmaCheck.convergence(coarse, fine))
    LOGGER.debug("Identity residuals for %s: %s", field.name, fine)
    return check


def berger_mean_curvature_factor(params: BergerParams, field: FrameField,
    point: GroupPoint, step: float = LEMMA_STEP) -> float:
    """
    The factor f = V(nu) sin(psi) + (1/eps - 1) sin(2 psi), for which
    nabla_V V = f U holds on metric foliations.
    """

    local = _LocalAngles(params, field, point, step)
    psi = local.psi(point)
    v_nu = local.along(field, local.nu, point, inner_step=True)

    return v_nu * math.sin(psi) \
        + (1 / to_float(params.eps) - 1) * math.sin(2 * psi)
