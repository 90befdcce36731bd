"""
One-dimensional foliations: metric and homogeneity checks, the
inhomogeneous example of metrics with distinct structure constants, and the
identities of metric foliations of Berger spheres
"""

from ..fields import FrameField, OneFormField
from .frames import (AngleCoordinates, angle_coordinates,
    orthonormal_completion, completion_fields, sample_region)
from .checks import (FoliationReport, SampleResult, DEFAULT_TOLERANCE,
    is_metric_foliation, mean_curvature, exterior_derivative,
    InhomogeneousFoliation, build_inhomogeneous_foliation, killing_field,
    killing_foliation, tilted_field)
from .certificate import (PotentialFunction, HomogeneityCertificate,
    frame_arc_amounts, homogeneity_certificate)
from .lemma import (LemmaCheck, lemma_equalities_check,
    berger_mean_curvature_factor, IDENTITIES)


__all__ = ['FrameField', 'OneFormField', 'AngleCoordinates',
    'angle_coordinates', 'orthonormal_completion', 'completion_fields',
    'sample_region', 'FoliationReport', 'SampleResult', 'DEFAULT_TOLERANCE',
    'is_metric_foliation', 'mean_curvature', 'exterior_derivative',
    'InhomogeneousFoliation', 'build_inhomogeneous_foliation',
    'killing_field', 'killing_foliation', 'tilted_field', 'PotentialFunction',
    'HomogeneityCertificate', 'frame_arc_amounts', 'homogeneity_certificate',
    'LemmaCheck', 'lemma_equalities_check', 'berger_mean_curvature_factor',
    'IDENTITIES']
