"""Numerical differential geometry of the exceptional Lorentzian metric on the universal cover of SL(2, R)."""

__version__ = "0.1.0"

from .curvature import christoffel, curvature_at, ricci, riemann, scalar_curvature
from .errors import (
    BlowUpError,
    ConfigError,
    DegeneracyError,
    DomainError,
    GeometryError,
    ParameterError,
    SpecError,
    UnsupportedFamilyError,
)
from .fields import OneForm, VectorField
from .geodesic import GeodesicState, GeodesicTrace, geodesic_rhs, integrate_geodesic
from .jets import Jet2, Point3, ScalarField, fd_jet2, jet2_eval
from .lie import exterior_derivative, flat, lie_bracket, lie_derivative_metric
from .metric import Frame, MetricField, MetricSpec, frame_fields, metric_at, metric_field, metric_inverse
from .soliton import (
    SolitonFamily,
    einstein_residual,
    gradient_obstruction,
    killing_basis,
    soliton_field,
    soliton_residual,
)
