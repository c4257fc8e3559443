"""Stream functions annihilated by the axisymmetric Stokes operator E^2.

Covers the parabolic, tangent-sphere and cardioid rotational coordinate
systems: coordinate maps and metrics, first-order Bessel functions, the
operator itself, separable modes and their series, residual certification,
least-squares coefficient fitting and streamline tracing.
"""

from .coords import CartesianPoint, CoordPoint, MetricData, SystemId
from .eigen import AngularKind, ModeSpec, RadialKind, SeriesExpansion, SeriesTerm
from .errors import (
    BesselOverflowError,
    ConvergenceError,
    DomainError,
    EmptyGridError,
    RankDeficiencyError,
    SeriesTermError,
    SingularPointError,
    StokesEigenError,
)
from .special import BesselKind

__version__ = "0.1.0"

__all__ = [
    "AngularKind",
    "BesselKind",
    "BesselOverflowError",
    "CartesianPoint",
    "ConvergenceError",
    "CoordPoint",
    "DomainError",
    "EmptyGridError",
    "MetricData",
    "ModeSpec",
    "RadialKind",
    "RankDeficiencyError",
    "SeriesExpansion",
    "SeriesTerm",
    "SeriesTermError",
    "SingularPointError",
    "StokesEigenError",
    "SystemId",
]
