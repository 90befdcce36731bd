"""
SU(2) and its Lie algebra su(2)

Group elements are unit quaternions w + a*i + b*j + c*k. The algebra basis
x1, x2, x3 is identified with the quaternion units i, j, k, and the unit
quaternion w + a*i + b*j + c*k with the special-unitary matrix

    w*e + a*x1 + b*x2 + c*x3 = [[w + i*c, a + i*b], [-a + i*b, w - i*c]]

where x1 = [[0, 1], [-1, 0]], x2 = [[0, i], [i, 0]], x3 = [[i, 0], [0, -i]].
Under this identification [x1, x2] = 2*x3, [x2, x3] = 2*x1, [x3, x1] = 2*x2,
which check_isomorphism() verifies when the module is loaded.
"""

import dataclasses
import math
import typing

import numpy

from ..scalars import Scalar


Quaternion: typing.TypeAlias = tuple[float, float, float, float]

__all__ = ['AlgebraVector', 'GroupPoint', 'BASIS', 'IDENTITY', 'bracket',
    'alg_exp', 'alg_log', 'group_mul', 'group_inv', 'hopf_flow', 'adjoint',
    'distance', 'hopf_projection', 'random_point', 'algebra_matrix',
    'quaternion_product', 'check_isomorphism']


@dataclasses.dataclass(frozen=True)
class AlgebraVector:
    """
    Element a1*x1 + a2*x2 + a3*x3 of su(2). Coefficients may be exact or
    floats.
    """

    a1: Scalar
    a2: Scalar
    a3: Scalar

    def __add__(self, other: 'AlgebraVector') -> 'AlgebraVector':
        return AlgebraVector(self.a1 + other.a1, self.a2 + other.a2,
            self.a3 + other.a3)

    def __sub__(self, other: 'AlgebraVector') -> 'AlgebraVector':
        return AlgebraVector(self.a1 - other.a1, self.a2 - other.a2,
            self.a3 - other.a3)

    def __neg__(self) -> 'AlgebraVector':
        return AlgebraVector(-self.a1, -self.a2, -self.a3)

    def __mul__(self, factor: Scalar) -> 'AlgebraVector':
        return AlgebraVector(self.a1 * factor, self.a2 * factor,
            self.a3 * factor)

    __rmul__ = __mul__

    def __iter__(self) -> typing.Iterator[Scalar]:
        yield self.a1
        yield self.a2
        yield self.a3

    def as_tuple(self) -> tuple[Scalar, Scalar, Scalar]:
        """
        Returns the coefficients as a tuple.
        """

        return (self.a1, self.a2, self.a3)

    def norm(self) -> float:
        """
        Norm for which each x_i has unit length (x_i squares to -identity).
        """

        return math.sqrt(sum(float(coeff) ** 2 for coeff in self))

    def bracket(self, other: 'AlgebraVector') -> 'AlgebraVector':
        """
        Lie bracket [self, other].
        """

        return bracket(self, other)


BASIS = (AlgebraVector(1, 0, 0), AlgebraVector(0, 1, 0),
    AlgebraVector(0, 0, 1))


@dataclasses.dataclass(frozen=True)
class GroupPoint:
    """
    Element of SU(2), stored as a unit quaternion. The components are
    renormalized on construction.
    """

    w: float
    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        norm = math.sqrt(self.w * self.w + self.x * self.x + self.y * self.y
            + self.z * self.z)

        if not math.isfinite(norm) or norm == 0.0:
            raise ValueError(f"Cannot normalize quaternion {self.as_tuple()}")

        for name in ('w', 'x', 'y', 'z'):
            object.__setattr__(self, name, float(getattr(self, name)) / norm)

    @classmethod
    def from_quaternion(cls, quat: typing.Sequence[float]) -> typing.Self:
        """
        Creates a group point from a (w, x, y, z) sequence.
        """

        w, x, y, z = quat
        return cls(w, x, y, z)

    @classmethod
    def from_matrix(cls, matrix: numpy.ndarray) -> typing.Self:
        """
        Creates a group point from a 2x2 special-unitary matrix.
        """

        return cls(matrix[0, 0].real, matrix[0, 1].real, matrix[0, 1].imag,
            matrix[0, 0].imag)

    @classmethod
    def from_s3(cls, z_1: complex, z_2: complex) -> typing.Self:
        """
        Maps (z, w) on the unit sphere of C^2 to [[z, -conj(w)], [w, conj(z)]].
        """

        return cls.from_matrix(numpy.array([[z_1, -z_2.conjugate()],
            [z_2, z_1.conjugate()]], dtype=complex))

    def to_s3(self) -> tuple[complex, complex]:
        """
        Inverse of from_s3: the first column of the matrix.
        """

        matrix = self.to_matrix()
        return complex(matrix[0, 0]), complex(matrix[1, 0])

    def as_tuple(self) -> Quaternion:
        """
        Returns the (w, x, y, z) components.
        """

        return (self.w, self.x, self.y, self.z)

    def to_matrix(self) -> numpy.ndarray:
        """
        Returns the special-unitary matrix of the point.
        """

        return numpy.array([
            [complex(self.w, self.z), complex(self.x, self.y)],
            [complex(-self.x, self.y), complex(self.w, -self.z)],
        ])

    def __mul__(self, other: 'GroupPoint') -> 'GroupPoint':
        return group_mul(self, other)

    def __neg__(self) -> 'GroupPoint':
        return GroupPoint(-self.w, -self.x, -self.y, -self.z)

    def inverse(self) -> 'GroupPoint':
        """
        Group inverse (quaternion conjugate).
        """

        return group_inv(self)


IDENTITY = GroupPoint(1.0, 0.0, 0.0, 0.0)

# The basis matrices of su(2)
X_MATRICES = (
    numpy.array([[0, 1], [-1, 0]], dtype=complex),
    numpy.array([[0, 1j], [1j, 0]], dtype=complex),
    numpy.array([[1j, 0], [0, -1j]], dtype=complex),
)


def quaternion_product(left: Quaternion, right: Quaternion) -> Quaternion:
    """
    Hamilton product of two (not necessarily unit) quaternions.
    """

    w_1, x_1, y_1, z_1 = left
    w_2, x_2, y_2, z_2 = right

    return (
        w_1 * w_2 - x_1 * x_2 - y_1 * y_2 - z_1 * z_2,
        w_1 * x_2 + x_1 * w_2 + y_1 * z_2 - z_1 * y_2,
        w_1 * y_2 - x_1 * z_2 + y_1 * w_2 + z_1 * x_2,
        w_1 * z_2 + x_1 * y_2 - y_1 * x_2 + z_1 * w_2,
    )


def bracket(left: AlgebraVector, right: AlgebraVector) -> AlgebraVector:
    """
    Lie bracket of su(2): twice the cross product of the coefficients.
    """

    return AlgebraVector(
        2 * (left.a2 * right.a3 - left.a3 * right.a2),
        2 * (left.a3 * right.a1 - left.a1 * right.a3),
        2 * (left.a1 * right.a2 - left.a2 * right.a1),
    )


def algebra_matrix(vec: AlgebraVector) -> numpy.ndarray:
    """
    Returns the matrix a1*x1 + a2*x2 + a3*x3.
    """

    return sum((complex(coeff) * mat for coeff, mat in zip(vec, X_MATRICES)),
        numpy.zeros((2, 2), dtype=complex))


def group_mul(left: GroupPoint, right: GroupPoint) -> GroupPoint:
    """
    Group product.
    """

    return GroupPoint.from_quaternion(quaternion_product(left.as_tuple(),
        right.as_tuple()))


def group_inv(point: GroupPoint) -> GroupPoint:
    """
    Group inverse.
    """

    return GroupPoint(point.w, -point.x, -point.y, -point.z)


def alg_exp(vec: AlgebraVector) -> GroupPoint:
    """
    Exponential map: for a = theta*n with |n| = 1, returns
    cos(theta)*e + sin(theta)*n.
    """

    a_1, a_2, a_3 = (float(coeff) for coeff in vec)
    theta = math.sqrt(a_1 * a_1 + a_2 * a_2 + a_3 * a_3)

    if theta < 1e-8:
        # sin(theta)/theta from its Taylor series
        scale = 1.0 - theta * theta / 6.0
    else:
        scale = math.sin(theta) / theta

    return GroupPoint(math.cos(theta), scale * a_1, scale * a_2, scale * a_3)


def alg_log(point: GroupPoint) -> AlgebraVector:
    """
    Logarithm with values in the ball |a| < pi. The point -identity has no
    unique logarithm and raises ValueError.
    """

    imag = math.sqrt(point.x * point.x + point.y * point.y + point.z * point.z)
    theta = math.atan2(imag, point.w)

    if imag < 1e-12:
        if point.w < 0:
            raise ValueError("-identity has no unique logarithm")
        scale = 1.0
    else:
        scale = theta / imag

    return AlgebraVector(scale * point.x, scale * point.y, scale * point.z)


def hopf_flow(eps: float, time: float, point: GroupPoint) -> GroupPoint:
    """
    Time-s flow of the unit Killing field Y3 = X3/eps of the Berger sphere:
    g -> g*exp((s/eps)*x3).
    """

    if not eps > 0:
        raise ValueError(f"eps must be positive, not {eps!r}")

    return group_mul(point, alg_exp(AlgebraVector(0.0, 0.0,
        float(time) / float(eps))))


def adjoint(point: GroupPoint, vec: AlgebraVector) -> AlgebraVector:
    """
    Adjoint action g*a*g^-1.
    """

    quat = quaternion_product(point.as_tuple(),
        (0.0, float(vec.a1), float(vec.a2), float(vec.a3)))
    _, x, y, z = quaternion_product(quat, group_inv(point).as_tuple())

    return AlgebraVector(x, y, z)


def hopf_projection(point: GroupPoint) -> tuple[float, float, float]:
    """
    Projection to the unit 2-sphere, constant along the Y3 orbits: Ad(g)x3.
    """

    return typing.cast(tuple[float, float, float],
        adjoint(point, BASIS[2]).as_tuple())


def distance(left: GroupPoint, right: GroupPoint) -> float:
    """
    Euclidean distance |p - q| between the quaternions.
    """

    return math.dist(left.as_tuple(), right.as_tuple())


def random_point(rng: numpy.random.Generator) -> GroupPoint:
    """
    Uniformly distributed point of SU(2).
    """

    return GroupPoint.from_quaternion(rng.normal(size=4))


class IsomorphismError(AssertionError):
    """
    Raised when the quaternion/matrix identification breaks the bracket table.
    """


def check_isomorphism() -> None:
    """
    Verifies that the fixed identification sends the quaternion units to the
    matrices x1, x2, x3, that these square to -identity, and that the bracket
    agrees with the matrix commutator on all basis pairs.
    """

    ident = numpy.eye(2, dtype=complex)

    for idx, (vec, mat) in enumerate(zip(BASIS, X_MATRICES)):
        point = GroupPoint(0.0, *(float(coeff) for coeff in vec))
        if not numpy.array_equal(point.to_matrix(), mat):
            raise IsomorphismError(f"x{idx + 1} is not a quaternion unit")

        if not numpy.array_equal(mat @ mat, -ident):
            raise IsomorphismError(f"x{idx + 1} does not square to -e")

    for vec_a, mat_a in zip(BASIS, X_MATRICES):
        for vec_b, mat_b in zip(BASIS, X_MATRICES):
            commutator = mat_a @ mat_b - mat_b @ mat_a
            if not numpy.array_equal(algebra_matrix(bracket(vec_a, vec_b)),
                commutator):
                raise IsomorphismError(f"Bracket table mismatch for "
                    f"{vec_a} and {vec_b}")


check_isomorphism()
