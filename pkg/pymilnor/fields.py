"""
Vector fields and one-forms on SU(2), expressed against an orthonormal
left-invariant frame E1, E2, E3
"""

import dataclasses
import typing

from .group import GroupPoint
from .scalars import Coefficients, Scalar, to_float


__all__ = ['FrameField', 'OneFormField']


Evaluator: typing.TypeAlias = typing.Callable[[GroupPoint], Coefficients]


@dataclasses.dataclass(frozen=True)
class FrameField:
    """
    Vector field given by its frame coefficients (c1, c2, c3) at each point.
    Left-invariant fields store their constant coefficients, which may be
    exact. A field may also carry an explicit orthonormal completion (W, U)
    used by the foliation checks instead of the angle-based one.
    """

    evaluator: Evaluator
    constant: Coefficients | None = None
    name: str = 'field'
    completion: tuple['FrameField', 'FrameField'] | None = \
        dataclasses.field(default=None, compare=False)

    @classmethod
    def left_invariant(cls, coeffs: typing.Sequence[Scalar],
        name: str = 'field', completion: tuple['FrameField',
        'FrameField'] | None = None) -> typing.Self:
        """
        Creates the field with constant frame coefficients.
        """

        const = typing.cast(Coefficients, tuple(coeffs))
        if len(const) != 3:
            raise ValueError(f"Expected 3 coefficients, got {len(const)}")

        return cls(lambda _: const, const, name, completion)

    @classmethod
    def basis(cls, idx: int) -> typing.Self:
        """
        The frame field E_{idx+1}.
        """

        coeffs = [0, 0, 0]
        coeffs[idx] = 1
        return cls.left_invariant(coeffs, f'E{idx + 1}')

    @property
    def is_left_invariant(self) -> bool:
        """
        True for constant-coefficient fields.
        """

        return self.constant is not None

    def __call__(self, point: GroupPoint) -> Coefficients:
        if self.constant is not None:
            return self.constant

        return self.evaluator(point)

    def floats(self, point: GroupPoint) -> tuple[float, float, float]:
        """
        Frame coefficients at point as floats.
        """

        c_1, c_2, c_3 = self(point)
        return (to_float(c_1), to_float(c_2), to_float(c_3))

    def __neg__(self) -> 'FrameField':
        if self.constant is not None:
            return FrameField.left_invariant([-coeff for coeff in
                self.constant], f'-{self.name}', self.completion)

        evaluator = self.evaluator
        return FrameField(lambda pnt: typing.cast(Coefficients,
            tuple(-coeff for coeff in evaluator(pnt))), None, f'-{self.name}',
            self.completion)

    def scaled_by(self, func: typing.Callable[[GroupPoint], float],
        name: str | None = None) -> 'FrameField':
        """
        The field func*self. The result is never treated as left-invariant.
        """

        base = self
        return FrameField(lambda pnt: typing.cast(Coefficients,
            tuple(func(pnt) * to_float(coeff) for coeff in base(pnt))), None,
            name or f'f*{self.name}')


@dataclasses.dataclass(frozen=True)
class OneFormField:
    """
    One-form given by its coefficients (w1, w2, w3) against the frame, so that
    w(X) = w1*c1 + w2*c2 + w3*c3 for a field X with coefficients c.
    """

    evaluator: Evaluator
    constant: Coefficients | None = None
    name: str = 'form'

    @classmethod
    def left_invariant(cls, coeffs: typing.Sequence[Scalar],
        name: str = 'form') -> typing.Self:
        """
        Creates the one-form with constant coefficients.
        """

        const = typing.cast(Coefficients, tuple(coeffs))
        return cls(lambda _: const, const, name)

    @property
    def is_left_invariant(self) -> bool:
        """
        True for constant-coefficient forms.
        """

        return self.constant is not None

    def __call__(self, point: GroupPoint) -> Coefficients:
        if self.constant is not None:
            return self.constant

        return self.evaluator(point)

    def pair(self, field: FrameField, point: GroupPoint) -> Scalar:
        """
        The value w(X) at point.
        """

        return sum((form * vec for form, vec in zip(self(point),
            field(point))), 0)
