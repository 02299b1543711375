"""Natural metrics on the frame bundle: closed-form curvature with a finite-difference oracle."""

from .base_manifold import MetricField, christoffel, flat, polynomial_metric, riemann, space_form
from .closed_form import abc, connection, curvature, scalar, sectional, sectional_table
from .errors import (
    ConfigError,
    DegeneratePlane,
    DomainError,
    FrameCurvError,
    IndexOutOfRange,
    InvalidFrame,
    InvalidSpec,
    NotOrthonormal,
    NotSymmetric,
    SingularMetric,
    WeightDomainError,
)
from .frame_bundle import FramePoint, LMTangent, horizontal_lift, vertical_lift
from .kernels import BACKEND
from .metrics import (
    GeneralMetricSpec,
    assert_pd,
    cheeger_gromoll,
    custom_rational,
    general_metric,
    kron_block,
    natural_metric,
    sasaki,
)

__version__ = "0.1.0"
