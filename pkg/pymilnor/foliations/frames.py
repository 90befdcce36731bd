"""
Angle coordinates of a unit field against the frame Y1, Y2, Y3 and the
adapted orthonormal frame V, W, U

    V = sin(psi) cos(nu) Y1 + sin(psi) sin(nu) Y2 + cos(psi) Y3
    W = cos(psi) cos(nu) Y1 + cos(psi) sin(nu) Y2 - sin(psi) Y3
    U = -sin(nu) Y1 + cos(nu) Y2

defined on the region where V is not +-Y3.
"""

import dataclasses
import math
import typing

import numpy

from ..fields import FrameField
from ..group import GroupPoint, random_point
from ..scalars import Coefficients, Scalar, is_exact, is_zero, sqrt, to_float


# Below this value of sin(psi) a point counts as outside the region
REGION_THRESHOLD = 1e-12

__all__ = ['AngleCoordinates', 'angle_coordinates', 'orthonormal_completion',
    'completion_fields', 'sample_region', 'REGION_THRESHOLD']


@dataclasses.dataclass(frozen=True)
class AngleCoordinates:
    """
    Angles psi in (0, pi) and nu in (-pi, pi] of a unit field.
    """

    class OutsideRegion(ValueError):
        """
        Raised when the field is +-Y3 at the evaluated point.
        """

    psi: float
    nu: float

    @classmethod
    def from_coefficients(cls, coeffs: typing.Sequence[Scalar]) -> typing.Self:
        """
        Angles of the unit vector with the given frame coefficients.
        """

        c_1, c_2, c_3 = (to_float(coeff) for coeff in coeffs)
        if math.hypot(c_1, c_2) < REGION_THRESHOLD:
            raise cls.OutsideRegion(f"Field {tuple(coeffs)} is +-Y3")

        return cls(math.acos(max(-1.0, min(1.0, c_3))), math.atan2(c_2, c_1))

    def field_direction(self) -> tuple[float, float, float]:
        """
        Frame coefficients of V.
        """

        sin_psi = math.sin(self.psi)
        return (sin_psi * math.cos(self.nu), sin_psi * math.sin(self.nu),
            math.cos(self.psi))

    def normal_direction(self) -> tuple[float, float, float]:
        """
        Frame coefficients of W.
        """

        cos_psi = math.cos(self.psi)
        return (cos_psi * math.cos(self.nu), cos_psi * math.sin(self.nu),
            -math.sin(self.psi))

    def horizontal_direction(self) -> tuple[float, float, float]:
        """
        Frame coefficients of U.
        """

        return (-math.sin(self.nu), math.cos(self.nu), 0.0)


def angle_coordinates(field: FrameField, point: GroupPoint) \
    -> AngleCoordinates:
    """
    Angle coordinates of field at point.
    """

    return AngleCoordinates.from_coefficients(field(point))


def orthonormal_completion(coeffs: typing.Sequence[Scalar]) \
    -> tuple[Coefficients, Coefficients]:
    """
    Coefficients of W and U for the unit vector V with coefficients coeffs.
    The angle formulas are rewritten algebraically, so exact input gives
    exact output: with s = sqrt(c1**2 + c2**2),

        W = (c3 c1/s, c3 c2/s, -s),  U = (-c2/s, c1/s, 0)
    """

    c_1, c_2, c_3 = coeffs
    norm_sq = c_1 * c_1 + c_2 * c_2

    if all(is_exact(coeff) for coeff in coeffs):
        if is_zero(norm_sq):
            raise AngleCoordinates.OutsideRegion(f"Field {tuple(coeffs)} "
                f"is +-Y3")
    elif math.sqrt(to_float(norm_sq)) < REGION_THRESHOLD:
        raise AngleCoordinates.OutsideRegion(f"Field {tuple(coeffs)} is +-Y3")

    scale = sqrt(norm_sq)
    normal = (c_3 * c_1 / scale, c_3 * c_2 / scale, -scale)
    horizontal = (-c_2 / scale, c_1 / scale, 0)

    return normal, horizontal


def completion_fields(field: FrameField) -> tuple[FrameField, FrameField]:
    """
    Fields (W, U) completing field to an orthonormal frame. An explicit
    completion carried by the field takes precedence; otherwise the angle
    completion is used, which is left-invariant for left-invariant fields.
    The left-invariant fields +-Y3 are completed by (E1, +-E2).
    """

    if field.completion is not None:
        return field.completion

    if field.constant is not None:
        c_1, c_2, c_3 = field.constant
        if is_zero(c_1) and is_zero(c_2) and not is_zero(c_3):
            # +-Y3 lies outside the angle region; W = E1, U = +-E2
            sign = 1 if to_float(c_3) > 0 else -1
            return (FrameField.basis(0),
                FrameField.left_invariant((0, sign, 0), f'U({field.name})'))

        normal, horizontal = orthonormal_completion(field.constant)
        return (FrameField.left_invariant(normal, f'W({field.name})'),
            FrameField.left_invariant(horizontal, f'U({field.name})'))

    def normal_eval(point: GroupPoint) -> Coefficients:
        return orthonormal_completion(field.floats(point))[0]

    def horizontal_eval(point: GroupPoint) -> Coefficients:
        return orthonormal_completion(field.floats(point))[1]

    return (FrameField(normal_eval, None, f'W({field.name})'),
        FrameField(horizontal_eval, None, f'U({field.name})'))


def sample_region(field: FrameField, rng: numpy.random.Generator,
    count: int, min_sin: float = 0.3) -> list[GroupPoint]:
    """
    Draws count uniformly distributed points at which sin(psi) of field
    exceeds min_sin.
    """

    samples: list[GroupPoint] = []
    attempts = 0

    while len(samples) < count:
        attempts += 1
        if attempts > 1000 * max(count, 1):
            raise AngleCoordinates.OutsideRegion(f"{field.name} rarely has "
                f"sin(psi) > {min_sin}")

        point = random_point(rng)
        c_1, c_2, _ = field.floats(point)
        if math.hypot(c_1, c_2) > min_sin:
            samples.append(point)

    return samples
