"""
Finite differences along left-invariant directions, quadrature and
convergence slopes
"""

import logging
import math
import typing

import numpy

from .core import AlgebraVector, BASIS, GroupPoint, alg_exp, group_mul


LOGGER = logging.getLogger(__name__)

# Step of first derivatives; refined once by Richardson extrapolation
DEFAULT_STEP = 1e-5

# Step of nested derivatives (derivatives of derivatives)
NESTED_STEP = 1e-3

SIMPSON_PANELS = 64

ScalarField: typing.TypeAlias = typing.Callable[[GroupPoint], float]
VectorFunction: typing.TypeAlias = typing.Callable[[GroupPoint],
    typing.Sequence[float]]
Direction: typing.TypeAlias = AlgebraVector | int

__all__ = ['EvaluationError', 'DEFAULT_STEP', 'NESTED_STEP', 'SIMPSON_PANELS',
    'frame_derivative', 'frame_derivative_vector', 'convergence_order',
    'simpson']


class EvaluationError(ArithmeticError):
    """
    A field returned a non-finite value during a finite difference.
    """


def _direction(direction: Direction) -> AlgebraVector:
    if isinstance(direction, int):
        return BASIS[direction]

    return direction


def _central(func: VectorFunction, point: GroupPoint, gen: AlgebraVector,
    step: float) -> numpy.ndarray:

    fwd = numpy.asarray(func(group_mul(point, alg_exp(gen * step))),
        dtype=float)
    bwd = numpy.asarray(func(group_mul(point, alg_exp(gen * -step))),
        dtype=float)

    if not (numpy.all(numpy.isfinite(fwd)) and numpy.all(numpy.isfinite(bwd))):
        raise EvaluationError(f"Non-finite field value near {point}")

    return (fwd - bwd) / (2 * step)


def frame_derivative_vector(func: VectorFunction, point: GroupPoint,
    direction: Direction, step: float = DEFAULT_STEP, *,
    richardson: bool = True) -> numpy.ndarray:
    """
    Derivative of a vector-valued function at point along the left-invariant
    field generated by direction, which is either an algebra vector or the
    index of a basis vector x1, x2, x3. Uses the central difference
    (F(g*exp(h*e)) - F(g*exp(-h*e)))/(2h), refined once by Richardson
    extrapolation unless richardson is False.
    """

    if not step > 0:
        raise ValueError(f"Step must be positive, not {step!r}")

    gen = AlgebraVector(*(float(coeff) for coeff in _direction(direction)))
    coarse = _central(func, point, gen, step)

    if not richardson:
        return coarse

    fine = _central(func, point, gen, step / 2)
    return (4 * fine - coarse) / 3


def frame_derivative(func: ScalarField, point: GroupPoint,
    direction: Direction, step: float = DEFAULT_STEP, *,
    richardson: bool = True) -> float:
    """
    Scalar version of frame_derivative_vector.
    """

    value = frame_derivative_vector(lambda pnt: (func(pnt),), point,
        direction, step, richardson=richardson)
    return float(value[0])


def convergence_order(steps: typing.Sequence[float],
    residuals: typing.Sequence[float]) -> float:
    """
    Slope of the least-squares line through (log h, log residual). A method
    of order p gives p.
    """

    if len(steps) != len(residuals) or len(steps) < 2:
        raise ValueError("Need at least two (step, residual) pairs")

    if min(residuals) <= 0:
        raise ValueError("Residuals must be positive")

    slope, _ = numpy.polyfit(numpy.log(steps), numpy.log(residuals), 1)
    return float(slope)


def simpson(func: typing.Callable[[float], float], start: float, end: float,
    panels: int = SIMPSON_PANELS) -> float:
    """
    Composite Simpson rule on [start, end] with an even number of panels.
    """

    if panels < 2 or panels % 2:
        raise ValueError(f"Panel count must be even and positive, not "
            f"{panels}")

    if start == end:
        return 0.0

    width = (end - start) / panels
    total = func(start) + func(end)

    for idx in range(1, panels):
        total += (4 if idx % 2 else 2) * func(start + idx * width)

    result = total * width / 3
    if not math.isfinite(result):
        raise EvaluationError(f"Non-finite integral on [{start}, {end}]")

    return result
