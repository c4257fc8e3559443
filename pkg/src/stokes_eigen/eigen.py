"""Separable stream functions annihilated by E^2.

Every mode has the form ``psi = M(mu) N(nu) / R(mu, nu)`` with

    M(mu) = mu I1(n mu)  or  mu K1(n mu)
    N(nu) = nu J1(n nu)  or  nu Y1(n nu)     parabolic, cardioid
    N(nu) = cos(n nu)    or  sin(n nu)       tangent sphere

and the R-factor

    parabolic       R = 1
    tangent sphere  R = sqrt(mu^2 + nu^2)
    cardioid        R = sqrt(2) (mu^2 + nu^2)

The cardioid factor keeps the sqrt(2); a series written with the bare
``1/(mu^2 + nu^2)`` differs only by a constant absorbed into coefficients.
"""

import dataclasses
import enum
import math
from typing import Tuple

from .coords import EPS_SING, CoordPoint, SystemId, check_domain, metric_coefficients
from .errors import DomainError, SeriesTermError, SingularPointError
from .special import BesselKind, bessel_derivatives
from .stokes_op import Derivatives

__all__ = [
    "RadialKind",
    "AngularKind",
    "ModeSpec",
    "SeriesTerm",
    "SeriesExpansion",
    "angular_kinds",
    "r_factor",
    "eval_mode",
    "eval_mode_derivatives",
    "eval_series",
    "series_derivatives",
    "velocity_field",
    "all_modes",
]

_SQRT2 = math.sqrt(2.0)


class RadialKind(enum.Enum):
    I1 = "I1"
    K1 = "K1"


class AngularKind(enum.Enum):
    J1 = "J1"
    Y1 = "Y1"
    COS = "cos"
    SIN = "sin"


def angular_kinds(system):
    """The (first, second) angular pair used by `system`."""
    if SystemId.parse(system) is SystemId.TANGENT_SPHERE:
        return AngularKind.COS, AngularKind.SIN
    return AngularKind.J1, AngularKind.Y1


@dataclasses.dataclass(frozen=True)
class ModeSpec:
    system: SystemId
    n: float
    radial_kind: RadialKind
    angular_kind: AngularKind

    def __post_init__(self):
        object.__setattr__(self, "system", SystemId.parse(self.system))
        object.__setattr__(self, "radial_kind", RadialKind(self.radial_kind))
        object.__setattr__(self, "angular_kind", AngularKind(self.angular_kind))
        if not (math.isfinite(self.n) and self.n > 0.0):
            raise DomainError(f"separation parameter must satisfy n > 0, got {self.n!r}")
        if self.angular_kind not in angular_kinds(self.system):
            raise DomainError(
                f"angular kind {self.angular_kind.value} is not valid for {self.system.value}"
            )

    def value(self, mu, nu):
        return eval_mode(self, CoordPoint(mu, nu))

    def derivatives(self, mu, nu):
        return eval_mode_derivatives(self, CoordPoint(mu, nu))

    def label(self):
        return f"{self.system.value} n={self.n:g} {self.radial_kind.value}x{self.angular_kind.value}"


def all_modes(system, ns):
    """Every radial x angular kind combination for each n in `ns`."""
    system = SystemId.parse(system)
    return [
        ModeSpec(system, float(n), rk, ak)
        for n in ns
        for rk in RadialKind
        for ak in angular_kinds(system)
    ]


@dataclasses.dataclass(frozen=True)
class SeriesTerm:
    """``[A mu I1(n mu) + B mu K1(n mu)] [C g1(n nu) + D g2(n nu)]``."""

    n: float
    a: float = 0.0
    b: float = 0.0
    c: float = 0.0
    d: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.n) and self.n > 0.0):
            raise DomainError(f"separation parameter must satisfy n > 0, got {self.n!r}")
        if not all(math.isfinite(v) for v in (self.a, self.b, self.c, self.d)):
            raise DomainError(f"non-finite coefficient in {self!r}")


@dataclasses.dataclass(frozen=True)
class SeriesExpansion:
    system: SystemId
    terms: Tuple[SeriesTerm, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "system", SystemId.parse(self.system))
        object.__setattr__(self, "terms", tuple(self.terms))

    def value(self, mu, nu):
        return eval_series(self, CoordPoint(mu, nu))

    def derivatives(self, mu, nu):
        return series_derivatives(self, CoordPoint(mu, nu))

    def scaled(self, factor):
        return SeriesExpansion(
            self.system,
            [SeriesTerm(t.n, factor * t.a, factor * t.b, t.c, t.d) for t in self.terms],
        )

    def to_dict(self):
        return {
            "system": self.system.value,
            "terms": [{"n": t.n, "A": t.a, "B": t.b, "C": t.c, "D": t.d} for t in self.terms],
        }

    @classmethod
    def from_dict(cls, data):
        terms = [
            SeriesTerm(
                float(t["n"]),
                float(t.get("A", 0.0)),
                float(t.get("B", 0.0)),
                float(t.get("C", 0.0)),
                float(t.get("D", 0.0)),
            )
            for t in data.get("terms", [])
        ]
        return cls(SystemId.parse(data["system"]), terms)


# ---------------------------------------------------------------------------
# building blocks
# ---------------------------------------------------------------------------


def _r_inverse(system, mu, nu):
    """``G = 1/R`` with partials ``(G, G_mu, G_nu, G_mumu, G_nunu)``."""
    if system is SystemId.PARABOLIC:
        return 1.0, 0.0, 0.0, 0.0, 0.0
    s = mu * mu + nu * nu
    if system is SystemId.TANGENT_SPHERE:
        g = 1.0 / math.sqrt(s)
        g3 = g / s
        g5 = g3 / s
        return g, -mu * g3, -nu * g3, -g3 + 3.0 * mu * mu * g5, -g3 + 3.0 * nu * nu * g5
    s2 = s * s
    s3 = s2 * s
    return (
        1.0 / (_SQRT2 * s),
        -2.0 * mu / (_SQRT2 * s2),
        -2.0 * nu / (_SQRT2 * s2),
        (-2.0 / s2 + 8.0 * mu * mu / s3) / _SQRT2,
        (-2.0 / s2 + 8.0 * nu * nu / s3) / _SQRT2,
    )


def _x_bessel(kind, n, x):
    """``y = x Z(n x)`` with ``y'`` and ``y''``."""
    if kind in (BesselKind.Y1, BesselKind.K1) and not n * x > 0.0:
        raise DomainError(f"{kind.value} requires a positive argument, got n*x = {n * x!r}")
    z, dz, ddz = bessel_derivatives(kind, n * x)
    return x * z, z + n * x * dz, 2.0 * n * dz + n * n * x * ddz


def _radial(kind, n, mu):
    return _x_bessel(BesselKind(kind.value), n, mu)


def _angular(kind, n, nu):
    if kind is AngularKind.COS:
        c, s = math.cos(n * nu), math.sin(n * nu)
        return c, -n * s, -n * n * c
    if kind is AngularKind.SIN:
        c, s = math.cos(n * nu), math.sin(n * nu)
        return s, n * c, -n * n * s
    return _x_bessel(BesselKind(kind.value), n, nu)


def _combine(system, mu, nu, m, nn):
    """Derivatives of ``M N / R`` from the 1-D factors ``m``, ``nn``."""
    mv, m1, m2 = m
    nv, n1, n2 = nn
    g, gm, gn, gmm, gnn = _r_inverse(system, mu, nu)
    return Derivatives(
        mv * nv * g,
        (m1 * g + mv * gm) * nv,
        (n1 * g + nv * gn) * mv,
        (m2 * g + 2.0 * m1 * gm + mv * gmm) * nv,
        (n2 * g + 2.0 * n1 * gn + nv * gnn) * mv,
    )


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def r_factor(system, p):
    system = SystemId.parse(system)
    check_domain(system, p.mu, p.nu, p.phi)
    if system is SystemId.PARABOLIC:
        return 1.0
    s = p.mu * p.mu + p.nu * p.nu
    if system is SystemId.TANGENT_SPHERE:
        return math.sqrt(s)
    return _SQRT2 * s


def eval_mode(mode, p):
    return eval_mode_derivatives(mode, p).value


def eval_mode_derivatives(mode, p):
    """Value and analytic partials of a single mode at `p`."""
    check_domain(mode.system, p.mu, p.nu, p.phi)
    m = _radial(mode.radial_kind, mode.n, p.mu)
    nn = _angular(mode.angular_kind, mode.n, p.nu)
    return _combine(mode.system, p.mu, p.nu, m, nn)


def series_derivatives(s, p):
    """Value and analytic partials of a series expansion at `p`."""
    check_domain(s.system, p.mu, p.nu, p.phi)
    first, second = angular_kinds(s.system)
    acc = [0.0] * 5
    for index, t in enumerate(s.terms):
        try:
            m = _zero3()
            if t.a:
                m = _axpy(t.a, _radial(RadialKind.I1, t.n, p.mu), m)
            if t.b:
                m = _axpy(t.b, _radial(RadialKind.K1, t.n, p.mu), m)
            nn = _zero3()
            if t.c:
                nn = _axpy(t.c, _angular(first, t.n, p.nu), nn)
            if t.d:
                nn = _axpy(t.d, _angular(second, t.n, p.nu), nn)
        except DomainError as exc:
            raise SeriesTermError(index, exc) from exc
        d = _combine(s.system, p.mu, p.nu, m, nn)
        for i in range(5):
            acc[i] += d[i]
    return Derivatives(*acc)


def _zero3():
    return (0.0, 0.0, 0.0)


def _axpy(alpha, x, y):
    return tuple(alpha * xi + yi for xi, yi in zip(x, y))


def eval_series(s, p):
    return series_derivatives(s, p).value


def velocity_field(s, p):
    """Physical velocity components ``(v_mu, v_nu)`` of stream function `s`.

    ``v_mu = (h2/varpi) dpsi/dnu`` and ``v_nu = -(h1/varpi) dpsi/dmu``, with
    h1, h2 the reciprocal scale factors. `s` may be a SeriesExpansion or a
    ModeSpec.
    """
    m = metric_coefficients(s.system, p)
    if m.varpi <= EPS_SING:
        raise SingularPointError(f"velocity undefined on the symmetry axis at ({p.mu!r}, {p.nu!r})")
    if isinstance(s, ModeSpec):
        d = eval_mode_derivatives(s, p)
    else:
        d = series_derivatives(s, p)
    return m.h2 / m.varpi * d.d_nu, -m.h1 / m.varpi * d.d_mu
