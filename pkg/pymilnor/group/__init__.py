"""
SU(2), its Lie algebra and calculus along left-invariant directions
"""

from .core import (AlgebraVector, GroupPoint, BASIS, IDENTITY, bracket,
    alg_exp, alg_log, group_mul, group_inv, hopf_flow, adjoint, distance,
    hopf_projection, random_point, quaternion_product)
from .calculus import (EvaluationError, DEFAULT_STEP, NESTED_STEP,
    SIMPSON_PANELS, frame_derivative, frame_derivative_vector,
    convergence_order, simpson)


__all__ = ['AlgebraVector', 'GroupPoint', 'BASIS', 'IDENTITY', 'bracket',
    'alg_exp', 'alg_log', 'group_mul', 'group_inv', 'hopf_flow', 'adjoint',
    'distance', 'hopf_projection', 'random_point', 'quaternion_product',
    'EvaluationError', 'DEFAULT_STEP', 'NESTED_STEP', 'SIMPSON_PANELS',
    'frame_derivative', 'frame_derivative_vector', 'convergence_order',
    'simpson']
