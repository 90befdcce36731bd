"""
Arithmetic layers shared by every computation: exact numbers (sympy rationals
and square roots of rationals) and plain floats.
"""

import fractions
import math
import typing

import sympy


# A scalar is either an exact sympy number or a float. Exact values stay exact
# through +, -, *, / and sqrt.
Scalar: typing.TypeAlias = float | int | sympy.Expr
Coefficients: typing.TypeAlias = tuple[Scalar, Scalar, Scalar]

__all__ = ['Scalar', 'Coefficients', 'exact', 'is_exact', 'is_zero', 'sqrt',
    'normalize', 'max_abs', 'to_float', 'wrap_angle']


def exact(value: typing.Any) -> sympy.Expr:
    """
    Converts a value to the exact layer. Integers, fractions and decimal
    strings become sympy rationals; floats are read through their shortest
    decimal representation, so exact(0.5) is 1/2 and exact(0.1) is 1/10.
    """

    if isinstance(value, sympy.Basic):
        return value

    if isinstance(value, bool):
        raise TypeError(f"{value!r} is not a number")

    if isinstance(value, (int, fractions.Fraction)):
        return sympy.Rational(value)

    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"{value!r} has no exact value")
        return sympy.Rational(repr(value))

    if isinstance(value, str):
        return sympy.Rational(value)

    raise TypeError(f"{value!r} is not a number")


def is_exact(value: typing.Any) -> bool:
    """
    Returns True if the value belongs to the exact layer. Python integers are
    exact too, as long as nothing divides them.
    """

    if isinstance(value, sympy.Basic):
        return not value.has(sympy.Float)

    return isinstance(value, int) and not isinstance(value, bool)


def normalize(value: Scalar) -> Scalar:
    """
    Brings an exact value to its expanded canonical form; floats are returned
    unchanged.
    """

    if isinstance(value, sympy.Basic):
        return sympy.expand(value)

    return value


def is_zero(value: Scalar, tol: float = 0.0) -> bool:
    """
    Zero test for both layers. Exact values must be literally zero; floats
    must be within tol of zero.
    """

    if isinstance(value, sympy.Basic):
        expanded = sympy.expand(value)
        if expanded == 0:
            return True

        # Nested radicals are not always canonical after expansion
        return bool(sympy.simplify(expanded) == 0)

    if isinstance(value, int):
        return value == 0

    return abs(value) <= tol


def sqrt(value: Scalar) -> Scalar:
    """
    Square root in the layer of the argument.
    """

    if is_exact(value):
        return sympy.sqrt(value)

    return math.sqrt(value)


def to_float(value: Scalar) -> float:
    """
    Converts a value of either layer to a float.
    """

    return float(value)


def max_abs(values: typing.Iterable[Scalar]) -> Scalar:
    """
    Largest absolute value of a collection, in the layer of its elements.
    An empty collection gives 0.
    """

    best: Scalar = 0
    for value in values:
        value = abs(normalize(value))
        if best == 0 or float(value) > float(best):
            best = value

    return best


def wrap_angle(value: float) -> float:
    """
    Wraps an angle to the interval (-pi, pi].
    """

    wrapped = math.remainder(value, 2 * math.pi)
    if wrapped == -math.pi:
        return math.pi

    return wrapped
