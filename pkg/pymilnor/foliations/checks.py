"""
Metric and homogeneity checks of one-dimensional foliations

A unit field V spans a foliation whose orthogonal distribution is spanned by
a completion (W, U). The foliation is metric when that distribution is
totally geodesic, and homogeneous when the mean curvature form
w = <nabla_V V, .> is closed.
"""

import dataclasses
import logging
import math
import typing

from ..fields import FrameField, OneFormField
from ..group import (AlgebraVector, GroupPoint, IDENTITY, DEFAULT_STEP,
    NESTED_STEP, frame_derivative)
from ..metrics import (BergerParams, ChristoffelTable, MilnorTriple,
    christoffel, nabla, right_invariant_field, structure_constants)
from ..scalars import (Coefficients, Scalar, is_exact, is_zero, max_abs,
    normalize, sqrt, to_float)
from .frames import completion_fields


LOGGER = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-6

# Frame pairs on which the exterior derivative is evaluated
FRAME_PAIRS = ((0, 1), (0, 2), (1, 2))

# A Killing field R + c*Y3 stays away from zero while |c| is below this
# fraction of the smallest possible length of R
KILLING_MARGIN = 0.5

__all__ = ['FoliationReport', 'SampleResult', 'DEFAULT_TOLERANCE',
    'FRAME_PAIRS', 'inner', 'is_metric_foliation', 'mean_curvature',
    'exterior_derivative', 'InhomogeneousFoliation',
    'build_inhomogeneous_foliation', 'killing_field', 'killing_foliation',
    'tilted_field']


def inner(left: typing.Sequence[Scalar], right: typing.Sequence[Scalar]) \
    -> Scalar:
    """
    Inner product of frame coefficients.
    """

    return normalize(sum((lft * rgt for lft, rgt in zip(left, right)), 0))


@dataclasses.dataclass(frozen=True)
class SampleResult:
    """
    Per-sample values of a foliation check: the totally geodesic residuals
    <nabla_U U, V>, <nabla_W W, V> and <nabla_U W + nabla_W U, V>, the mean
    curvature coefficients and dw on the frame pairs E1E2, E1E3, E2E3.
    """

    point: GroupPoint
    residuals: Coefficients
    mean_curvature: Coefficients
    d_omega: Coefficients


@dataclasses.dataclass(frozen=True)
class FoliationReport:
    """
    Outcome of is_metric_foliation.
    """

    field: str
    triple: MilnorTriple
    tolerance: float
    samples: tuple[SampleResult, ...]
    exact: bool

    @property
    def max_residual(self) -> Scalar:
        """
        Largest totally geodesic residual over all samples.
        """

        return max_abs(val for sample in self.samples
            for val in sample.residuals)

    @property
    def max_d_omega(self) -> Scalar:
        """
        Largest value of |dw| over all samples and frame pairs.
        """

        return max_abs(val for sample in self.samples
            for val in sample.d_omega)

    def _below(self, value: Scalar) -> bool:
        if self.exact:
            return is_zero(value)

        return to_float(value) <= self.tolerance

    @property
    def is_metric(self) -> bool:
        """
        True if every residual is within tolerance (exactly zero for exact
        checks).
        """

        return self._below(self.max_residual)

    @property
    def is_closed(self) -> bool:
        """
        True if dw vanishes on every sample.
        """

        return self._below(self.max_d_omega)


def _brackets(table: ChristoffelTable, field_x: FrameField,
    field_y: FrameField, point: GroupPoint, step: float) -> Coefficients:
    # Torsion-free: [X, Y] = nabla_X Y - nabla_Y X
    forward = nabla(table, field_x, field_y, point, step)
    backward = nabla(table, field_y, field_x, point, step)
    return typing.cast(Coefficients, tuple(normalize(fwd - bwd)
        for fwd, bwd in zip(forward, backward)))


def mean_curvature(triple: MilnorTriple, field: FrameField,
    step: float = DEFAULT_STEP) -> OneFormField:
    """
    The mean curvature form w = <nabla_V V, .> of the foliation spanned by
    the unit field V. It is constant for left-invariant V.
    """

    table = christoffel(triple)

    if field.is_left_invariant:
        coeffs = nabla(table, field, field, IDENTITY)
        return OneFormField.left_invariant(coeffs, f'omega({field.name})')

    return OneFormField(lambda pnt: nabla(table, field, field, pnt, step),
        None, f'omega({field.name})')


def exterior_derivative(form: OneFormField, field_x: FrameField,
    field_y: FrameField, point: GroupPoint, *, table: ChristoffelTable,
    step: float = NESTED_STEP) -> Scalar:
    """
    Cartan formula dw(X, Y) = X(w(Y)) - Y(w(X)) - w([X, Y]). The derivative
    terms vanish when the form and both fields are left-invariant, and the
    result is then exact. Otherwise they are central differences at step.
    """

    triple = table.triple

    if field_x.is_left_invariant and field_y.is_left_invariant:
        x_c, y_c = field_x(point), field_y(point)
        consts = structure_constants(triple)
        bracket_c: Coefficients = typing.cast(Coefficients, tuple(
            normalize(sum((x_c[i] * y_c[j] * consts[i][j][k]
            for i in range(3) for j in range(3)), 0)) for k in range(3)))
    else:
        bracket_c = _brackets(table, field_x, field_y, point, DEFAULT_STEP)

    result = -inner(form(point), bracket_c)

    if not (form.is_left_invariant and field_x.is_left_invariant and
        field_y.is_left_invariant):

        def pairing(fld: FrameField) -> typing.Callable[[GroupPoint], float]:
            return lambda pnt: to_float(inner(form(pnt), fld(pnt)))

        dir_x = triple.frame_to_algebra(field_x.floats(point))
        dir_y = triple.frame_to_algebra(field_y.floats(point))
        result = to_float(result) \
            + frame_derivative(pairing(field_y), point, dir_x, step) \
            - frame_derivative(pairing(field_x), point, dir_y, step)

    return result


def is_metric_foliation(triple: MilnorTriple, field: FrameField,
    samples: typing.Sequence[GroupPoint], tol: float = DEFAULT_TOLERANCE,
    step: float = DEFAULT_STEP) -> FoliationReport:
    """
    Evaluates the totally geodesic residuals of the orthogonal distribution
    of field at every sample, together with the mean curvature form and its
    exterior derivative. Left-invariant fields with a left-invariant
    completion are checked exactly at a single point.
    """

    table = christoffel(triple)
    normal, horizontal = completion_fields(field)
    # The form is differentiated again for dw
    omega = mean_curvature(triple, field, NESTED_STEP)

    exact = field.is_left_invariant and normal.is_left_invariant and \
        horizontal.is_left_invariant and table.is_exact and \
        all(is_exact(val) for fld in (field, normal, horizontal)
            for val in fld(IDENTITY))

    if field.is_left_invariant and normal.is_left_invariant and \
        horizontal.is_left_invariant:
        points: typing.Sequence[GroupPoint] = samples[:1] or [IDENTITY]
    elif samples:
        points = samples
    else:
        raise ValueError(f"{field.name} is not left-invariant and needs "
            f"sample points")

    basis = [FrameField.basis(idx) for idx in range(3)]
    results = []

    for point in points:
        vec = field(point)
        uu = nabla(table, horizontal, horizontal, point, step)
        ww = nabla(table, normal, normal, point, step)
        uw = nabla(table, horizontal, normal, point, step)
        wu = nabla(table, normal, horizontal, point, step)

        residuals = (inner(uu, vec), inner(ww, vec),
            inner([lft + rgt for lft, rgt in zip(uw, wu)], vec))
        d_omega = tuple(exterior_derivative(omega, basis[i], basis[j], point,
            table=table) for i, j in FRAME_PAIRS)

        results.append(SampleResult(point, residuals, omega(point),
            typing.cast(Coefficients, d_omega)))

    report = FoliationReport(field.name, triple, tol, tuple(results), exact)
    LOGGER.debug("Foliation %s on %s: max residual %s, max dw %s",
        field.name, triple.as_tuple(), report.max_residual,
        report.max_d_omega)
    return report


# MARK: Examples


@dataclasses.dataclass(frozen=True)
class InhomogeneousFoliation:
    """
    Metric but inhomogeneous foliation of a metric with distinct structure
    constants x > y > z, spanned by the left-invariant unit field
    V = v2 E2 + v3 E3 with

        v2 = sqrt((y - z)/(x - z)),  v3 = sqrt((x - y)/(x - z))

    so that v2**2 (x - y) = v3**2 (y - z).
    """

    class DomainError(ValueError):
        """
        Raised unless x > y > z.
        """

    triple: MilnorTriple

    def __post_init__(self) -> None:
        x, y, z = self.triple
        for big, small in ((x, y), (y, z)):
            diff = big - small
            if is_zero(diff) or to_float(diff) < 0:
                raise self.DomainError(f"Need x > y > z, got "
                    f"{self.triple.as_tuple()}; canonicalize the triple "
                    f"first")

    @property
    def v2(self) -> Scalar:
        """
        Coefficient of E2.
        """

        x, y, z = self.triple
        return sqrt((y - z) / (x - z))

    @property
    def v3(self) -> Scalar:
        """
        Coefficient of E3.
        """

        x, y, z = self.triple
        return sqrt((x - y) / (x - z))

    @property
    def key_identity_residual(self) -> Scalar:
        """
        v2**2 (x - y) - v3**2 (y - z), zero by construction.
        """

        x, y, z = self.triple
        return normalize(self.v2 ** 2 * (x - y) - self.v3 ** 2 * (y - z))

    @property
    def mean_curvature_value(self) -> Scalar:
        """
        Coefficient 2 v2 v3 (x - z) of E1 in nabla_V V.
        """

        x, _, z = self.triple
        return normalize(2 * self.v2 * self.v3 * (x - z))

    @property
    def expected_d_omega(self) -> Scalar:
        """
        dw(E2, E3) = -4 v2 v3 y (x - z).
        """

        x, y, z = self.triple
        return normalize(-4 * self.v2 * self.v3 * y * (x - z))

    @property
    def field(self) -> FrameField:
        """
        The unit field V, carrying the completion U = E1,
        W = -v3 E2 + v2 E3.
        """

        v_2, v_3 = self.v2, self.v3
        completion = (FrameField.left_invariant((0, -v_3, v_2), 'W'),
            FrameField.basis(0))
        return FrameField.left_invariant((0, v_2, v_3), 'theorem1',
            completion)


def build_inhomogeneous_foliation(triple: MilnorTriple) -> FrameField:
    """
    Unit field of the inhomogeneous metric foliation of triple (x > y > z).
    """

    return InhomogeneousFoliation(triple).field


def killing_field(params: BergerParams, xi: AlgebraVector,
    coeff: float = 0.0) -> FrameField:
    """
    Killing field K = R + coeff*Y3 of the Berger sphere, where R is the
    right-invariant field generated by the unit vector along xi.
    """

    triple = params.triple()
    norm = xi.norm()
    if norm == 0:
        raise ValueError("xi must be nonzero")

    limit = KILLING_MARGIN / max(triple.float_scales)
    if abs(coeff) > limit:
        raise ValueError(f"|c| must not exceed {limit:.6g} so that the "
            f"field has no zeros")

    right = right_invariant_field(triple, xi * (1 / norm))

    def evaluator(point: GroupPoint) -> Coefficients:
        c_1, c_2, c_3 = right.floats(point)
        return (c_1, c_2, c_3 + coeff)

    return FrameField(evaluator, None, f'killing({xi.as_tuple()}, {coeff})')


def killing_foliation(params: BergerParams, xi: AlgebraVector,
    coeff: float = 0.0) -> FrameField:
    """
    Unit field K/|K| of the orbit foliation of the Killing field
    K = R + coeff*Y3.
    """

    killing = killing_field(params, xi, coeff)

    def evaluator(point: GroupPoint) -> Coefficients:
        coeffs = killing.floats(point)
        norm = math.sqrt(sum(val * val for val in coeffs))
        return typing.cast(Coefficients, tuple(val / norm for val in coeffs))

    return FrameField(evaluator, None, f'unit-{killing.name}')


def tilted_field(angle: float) -> FrameField:
    """
    Left-invariant unit field cos(angle) E1 + sin(angle) E3.
    """

    return FrameField.left_invariant((math.cos(angle), 0.0,
        math.sin(angle)), f'tilted({angle:g})')
