"""
Left-invariant metrics on SU(2) in Milnor frames

A positive triple (x, y, z) defines the metric for which the frame E1, E2, E3
is orthonormal, where

    [E1, E2] = 2x E3,  [E2, E3] = 2y E1,  [E3, E1] = 2z E2.

Such a frame is realized by Ei = li*xi with l1 = sqrt(xz), l2 = sqrt(xy) and
l3 = sqrt(yz). Indices are 0-based: gamma[0][1][2] is the coefficient of E3
in the covariant derivative of E2 along E1.
"""

import dataclasses
import enum
import functools
import itertools
import logging
import math
import typing

from .fields import FrameField
from .group import (AlgebraVector, BASIS, GroupPoint, adjoint, bracket,
    frame_derivative_vector, group_inv, DEFAULT_STEP)
from .scalars import (Coefficients, Scalar, exact, is_exact, is_zero,
    max_abs, normalize, sqrt, to_float)


LOGGER = logging.getLogger(__name__)

Table: typing.TypeAlias = tuple[tuple[tuple[Scalar, ...], ...], ...]
Matrix: typing.TypeAlias = tuple[tuple[Scalar, ...], ...]

__all__ = ['MilnorTriple', 'BergerParams', 'ChristoffelTable',
    'IsometryTag', 'IsometryClass', 'structure_constants', 'christoffel',
    'koszul_table', 'classify', 'nabla', 'sectional_curvature',
    'killing_residual', 'right_invariant_field', 'reductive_brackets',
    'reductive_check', 'nat_red_check']


def _layer(value: typing.Any) -> Scalar:
    # Python ints would turn into floats on division
    if isinstance(value, float):
        return value

    return exact(value)


@dataclasses.dataclass(frozen=True)
class MilnorTriple:
    """
    Structure constants (x, y, z) of a left-invariant metric. Integers,
    fractions and sympy numbers are kept exact; floats stay floats.
    """

    class InvalidTriple(ValueError):
        """
        Raised when a structure constant is not a positive number.
        """

    x: Scalar
    y: Scalar
    z: Scalar

    def __post_init__(self) -> None:
        for name in ('x', 'y', 'z'):
            try:
                value = _layer(getattr(self, name))
            except (TypeError, ValueError) as err:
                raise self.InvalidTriple(f"{name} is not a number: "
                    f"{getattr(self, name)!r}") from err

            if not to_float(value) > 0:
                raise self.InvalidTriple(f"{name} must be positive, not "
                    f"{value}")

            object.__setattr__(self, name, value)

    def __iter__(self) -> typing.Iterator[Scalar]:
        yield self.x
        yield self.y
        yield self.z

    def as_tuple(self) -> Coefficients:
        """
        Returns (x, y, z).
        """

        return (self.x, self.y, self.z)

    @property
    def is_exact(self) -> bool:
        """
        True if every constant is in the exact layer.
        """

        return all(is_exact(value) for value in self)

    @property
    def scales(self) -> Coefficients:
        """
        The factors li with Ei = li*xi.
        """

        return (sqrt(self.x * self.z), sqrt(self.x * self.y),
            sqrt(self.y * self.z))

    @functools.cached_property
    def float_scales(self) -> tuple[float, float, float]:
        """
        Float version of scales.
        """

        l_1, l_2, l_3 = self.scales
        return (to_float(l_1), to_float(l_2), to_float(l_3))

    def generators(self) -> tuple[AlgebraVector, AlgebraVector,
        AlgebraVector]:
        """
        The algebra vectors e1, e2, e3 generating the orthonormal frame.
        """

        return typing.cast(tuple[AlgebraVector, AlgebraVector,
            AlgebraVector], tuple(basis * scale for basis, scale in
            zip(BASIS, self.scales)))

    @functools.cached_property
    def float_generators(self) -> tuple[AlgebraVector, AlgebraVector,
        AlgebraVector]:
        """
        Float version of generators().
        """

        return typing.cast(tuple[AlgebraVector, AlgebraVector,
            AlgebraVector], tuple(basis * scale for basis, scale in
            zip(BASIS, self.float_scales)))

    def frame_to_algebra(self, coeffs: typing.Sequence[float]) \
        -> AlgebraVector:
        """
        Converts float frame coefficients to the algebra vector sum ci*ei.
        """

        l_1, l_2, l_3 = self.float_scales
        return AlgebraVector(float(coeffs[0]) * l_1, float(coeffs[1]) * l_2,
            float(coeffs[2]) * l_3)

    def algebra_to_frame(self, vec: AlgebraVector) \
        -> tuple[float, float, float]:
        """
        Inverse of frame_to_algebra.
        """

        l_1, l_2, l_3 = self.float_scales
        return (float(vec.a1) / l_1, float(vec.a2) / l_2, float(vec.a3) / l_3)

    def scaled(self, factor: Scalar) -> 'MilnorTriple':
        """
        Triple of the homothetic metric whose structure constants are
        multiplied by factor (the metric itself is divided by factor**2).
        """

        factor = _layer(factor)
        return MilnorTriple(self.x * factor, self.y * factor, self.z * factor)

    def canonical(self) -> 'MilnorTriple':
        """
        The triple sorted in decreasing order.
        """

        x, y, z = sorted(self, key=to_float, reverse=True)
        return MilnorTriple(x, y, z)


@dataclasses.dataclass(frozen=True)
class BergerParams:
    """
    Berger sphere with parameter eps: the Hopf direction is scaled by eps**2
    and its orthogonal complement by eps. The frame Y1, Y2, Y3 has Milnor
    triple (1, 1/eps, 1/eps).
    """

    class InvalidEpsilon(ValueError):
        """
        Raised when eps is not positive or equals 1.
        """

    eps: Scalar

    def __post_init__(self) -> None:
        try:
            eps = _layer(self.eps)
        except (TypeError, ValueError) as err:
            raise self.InvalidEpsilon(f"eps is not a number: {self.eps!r}") \
                from err

        if not to_float(eps) > 0:
            raise self.InvalidEpsilon(f"eps must be positive, not {eps}")

        if is_zero(eps - 1):
            raise self.InvalidEpsilon("eps = 1 is the round sphere")

        object.__setattr__(self, 'eps', eps)

    def triple(self) -> MilnorTriple:
        """
        Milnor triple (1, 1/eps, 1/eps) of the Y frame.
        """

        inv = 1 / self.eps
        one: Scalar = 1.0 if isinstance(self.eps, float) else 1
        return MilnorTriple(one, inv, inv)


@dataclasses.dataclass(frozen=True)
class ChristoffelTable:
    """
    The 27 values gamma[i][j][k] of the Levi-Civita connection in the
    orthonormal Milnor frame of triple.
    """

    gamma: Table
    triple: MilnorTriple

    def __getitem__(self, idx: int) -> tuple[tuple[Scalar, ...], ...]:
        return self.gamma[idx]

    @property
    def is_exact(self) -> bool:
        """
        True if the table is in the exact layer.
        """

        return self.triple.is_exact

    @functools.cached_property
    def numeric(self) -> tuple[tuple[tuple[float, ...], ...], ...]:
        """
        Float version of the table.
        """

        return tuple(tuple(tuple(to_float(val) for val in row) for row in
            plane) for plane in self.gamma)

    def entries(self) -> typing.Iterator[tuple[int, int, int, Scalar]]:
        """
        Iterates over (i, j, k, gamma[i][j][k]).
        """

        for i, j, k in itertools.product(range(3), repeat=3):
            yield i, j, k, self.gamma[i][j][k]


class IsometryTag(enum.Enum):
    """
    Isometry classes of left-invariant metrics up to homothety.
    """

    ROUND_SPHERE = 'RoundSphere'
    BERGER_HOMOTHETY = 'BergerHomothety'
    NON_NATURALLY_REDUCTIVE = 'NonNaturallyReductive'


class IsometryClass(typing.NamedTuple):
    """
    Result of classify(). For Berger homotheties, eps is the ratio
    distinct/repeated and scale the factor taking the canonical triple to
    (1, 1/eps, 1/eps) up to order.
    """

    tag: IsometryTag
    canonical: MilnorTriple
    eps: Scalar | None = None
    scale: Scalar | None = None


def _nested(func: typing.Callable[[int, int, int], Scalar]) -> Table:
    return tuple(tuple(tuple(func(i, j, k) for k in range(3))
        for j in range(3)) for i in range(3))


def structure_constants(triple: MilnorTriple) -> Table:
    """
    Returns c with [Ei, Ej] = sum over k of c[i][j][k] Ek.
    """

    x, y, z = triple
    values = {(0, 1, 2): 2 * x, (1, 2, 0): 2 * y, (2, 0, 1): 2 * z}

    def entry(i: int, j: int, k: int) -> Scalar:
        if (i, j, k) in values:
            return values[i, j, k]
        if (j, i, k) in values:
            return -values[j, i, k]
        return 0

    return _nested(entry)


def christoffel(triple: MilnorTriple) -> ChristoffelTable:
    """
    Closed-form Christoffel symbols: gamma_12^3 = x + z - y,
    gamma_23^1 = x + y - z, gamma_31^2 = y + z - x, their antisymmetric
    partners in the last two indices, and zero elsewhere.
    """

    x, y, z = triple
    values = {
        (0, 1, 2): x + z - y,
        (1, 2, 0): x + y - z,
        (2, 0, 1): y + z - x,
    }

    def entry(i: int, j: int, k: int) -> Scalar:
        if (i, j, k) in values:
            return values[i, j, k]
        if (i, k, j) in values:
            return -values[i, k, j]
        return 0

    return ChristoffelTable(_nested(entry), triple)


def koszul_table(triple: MilnorTriple) -> ChristoffelTable:
    """
    Christoffel symbols from Koszul's formula for left-invariant orthonormal
    fields: gamma_ij^k = (c_ij^k - c_jk^i + c_ki^j)/2.
    """

    consts = structure_constants(triple)

    def entry(i: int, j: int, k: int) -> Scalar:
        total = consts[i][j][k] - consts[j][k][i] + consts[k][i][j]
        return normalize(_layer(total) / 2)

    return ChristoffelTable(_nested(entry), triple)


def _same(left: Scalar, right: Scalar) -> bool:
    if is_exact(left) and is_exact(right):
        return is_zero(left - right)

    return math.isclose(to_float(left), to_float(right), rel_tol=1e-12)


def classify(triple: MilnorTriple) -> IsometryClass:
    """
    Isometry class of the metric up to homothety. The result only depends on
    the unordered triple.
    """

    canon = triple.canonical()
    big, mid, small = canon

    if _same(big, mid) and _same(mid, small):
        result = IsometryClass(IsometryTag.ROUND_SPHERE, canon)
    elif _same(big, mid) or _same(mid, small):
        repeated = mid
        distinct = small if _same(big, mid) else big
        result = IsometryClass(IsometryTag.BERGER_HOMOTHETY, canon,
            normalize(distinct / repeated), normalize(1 / distinct))
    else:
        result = IsometryClass(IsometryTag.NON_NATURALLY_REDUCTIVE, canon)

    LOGGER.debug("Triple %s classified as %s", triple.as_tuple(),
        result.tag.value)
    return result


def _all_exact(values: typing.Iterable[Scalar]) -> bool:
    return all(is_exact(value) for value in values)


def nabla(table: ChristoffelTable, field_a: FrameField, field_b: FrameField,
    point: GroupPoint, step: float = DEFAULT_STEP) -> Coefficients:
    """
    Frame coefficients of the covariant derivative of field_b along field_a
    at point. Exact when both fields are left-invariant with exact
    coefficients and the table is exact; otherwise the derivatives of
    field_b's coefficients are taken by finite differences.
    """

    coeffs_a = field_a(point)
    coeffs_b = field_b(point)

    if field_a.is_left_invariant and field_b.is_left_invariant and \
        table.is_exact and _all_exact(coeffs_a + coeffs_b):

        return typing.cast(Coefficients, tuple(normalize(sum((coeffs_a[i]
            * coeffs_b[j] * table[i][j][k] for i in range(3)
            for j in range(3)), 0)) for k in range(3)))

    gamma = table.numeric
    a_f = [to_float(val) for val in coeffs_a]
    b_f = [to_float(val) for val in coeffs_b]

    result = [sum(a_f[i] * b_f[j] * gamma[i][j][k] for i in range(3)
        for j in range(3)) for k in range(3)]

    if not field_b.is_left_invariant:
        direction = table.triple.frame_to_algebra(a_f)
        deriv = frame_derivative_vector(field_b.floats, point, direction,
            step)
        result = [res + float(der) for res, der in zip(result, deriv)]

    return typing.cast(Coefficients, tuple(result))


def sectional_curvature(table: ChristoffelTable, triple: MilnorTriple,
    i: int, j: int) -> Scalar:
    """
    Sectional curvature of the plane spanned by Ei and Ej:

        K = sum over k of (gamma_jj^k gamma_ik^i - gamma_ij^k gamma_jk^i
            - c_ij^k gamma_kj^i)
    """

    if i == j:
        raise ValueError("Sectional curvature needs two distinct frame "
            "vectors")

    consts = structure_constants(triple)
    gam = table.gamma

    return normalize(sum((gam[j][j][k] * gam[i][k][i]
        - gam[i][j][k] * gam[j][k][i] - consts[i][j][k] * gam[k][j][i]
        for k in range(3)), 0))


def killing_residual(table: ChristoffelTable, field: FrameField,
    point: GroupPoint, step: float = DEFAULT_STEP) -> Matrix:
    """
    Symmetric matrix K[i][j] = <nabla_Ei X, Ej> + <nabla_Ej X, Ei>. X is a
    Killing field if and only if this vanishes everywhere.
    """

    derivs = [nabla(table, FrameField.basis(idx), field, point, step)
        for idx in range(3)]

    return tuple(tuple(normalize(derivs[i][j] + derivs[j][i])
        for j in range(3)) for i in range(3))


def right_invariant_field(triple: MilnorTriple, xi: AlgebraVector,
    name: str = 'right-invariant') -> FrameField:
    """
    The vector field g -> xi*g, which generates the left translations
    g -> exp(t*xi)*g. Left translations are isometries, so the field is
    Killing for every left-invariant metric.
    """

    def evaluator(point: GroupPoint) -> Coefficients:
        return triple.algebra_to_frame(adjoint(group_inv(point), xi))

    return FrameField(evaluator, None, name)


# MARK: Naturally reductive decomposition


REDUCTIVE_NAMES = ('b1', 'b2', 'v')

Quad: typing.TypeAlias = tuple[Scalar, Scalar, Scalar, Scalar]


def _quad_bracket(left: Quad, right: Quad) -> Quad:
    # The R factor is central
    vec = bracket(AlgebraVector(*left[1:]), AlgebraVector(*right[1:]))
    return (0, vec.a1, vec.a2, vec.a3)


def _reductive_basis(eps: Scalar) -> dict[str, Quad]:
    return {
        'u': (1, 0, 0, 1),
        'b1': (0, 1, 0, 0),
        'b2': (0, 0, 1, 0),
        'v': (eps - 1, 0, 0, eps),
    }


def reductive_brackets(eps: Scalar) -> dict[tuple[str, str], Coefficients]:
    """
    Brackets of b1, b2, v in R + su(2), projected to m = span(b1, b2, v)
    along h = span(u). Values are coefficients against (b1, b2, v).
    """

    eps = _layer(eps)
    basis = _reductive_basis(eps)
    result = {}

    for left, right in itertools.product(REDUCTIVE_NAMES, repeat=2):
        w_0, w_1, w_2, w_3 = _quad_bracket(basis[left], basis[right])
        result[left, right] = (normalize(w_1), normalize(w_2),
            normalize(w_3 - w_0))

    return result


def reductive_check(eps: Scalar) -> Scalar:
    """
    Maximum residual of [u, v] = 0, [u, b1] = 2 b2 and [u, b2] = -2 b1,
    which make m invariant under h.
    """

    basis = _reductive_basis(_layer(eps))
    expected = {
        'v': (0, 0, 0, 0),
        'b1': tuple(2 * val for val in basis['b2']),
        'b2': tuple(-2 * val for val in basis['b1']),
    }

    residuals = []
    for name, target in expected.items():
        value = _quad_bracket(basis['u'], basis[name])
        residuals.extend(got - want for got, want in zip(value, target))

    return max_abs(residuals)


def nat_red_check(eps: Scalar) -> Scalar:
    """
    Maximum over all basis triples (a, b, c) of m of
    <[a, b]_m, c> + <[a, c]_m, b>, with <b1, b1> = <b2, b2> = eps and
    <v, v> = eps**2. Zero means the decomposition is naturally reductive.
    """

    eps = _layer(eps)
    if not to_float(eps) > 0:
        raise ValueError(f"eps must be positive, not {eps}")

    brackets = reductive_brackets(eps)
    weights = dict(zip(REDUCTIVE_NAMES, (eps, eps, eps * eps)))

    def pairing(coeffs: Coefficients, name: str) -> Scalar:
        return coeffs[REDUCTIVE_NAMES.index(name)] * weights[name]

    residuals = []
    for a, b, c in itertools.product(REDUCTIVE_NAMES, repeat=3):
        residuals.append(pairing(brackets[a, b], c)
            + pairing(brackets[a, c], b))

    result = max_abs(residuals)
    LOGGER.debug("Naturally reductive residual for eps=%s: %s", eps, result)
    return result
