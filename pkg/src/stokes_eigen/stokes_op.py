"""The axisymmetric Stokes operator E^2 in the three rotational systems.

Two independent routes are provided:

* ``apply_generic`` discretizes the divergence form

      E^2 psi = h1 h2 varpi [ d/dmu (h1/(h2 varpi) dpsi/dmu)
                              + d/dnu (h2/(h1 varpi) dpsi/dnu) ]

  with centered differences and metric data from :mod:`coords`.
* ``apply_analytic`` uses the expanded per-system form

      E^2 = P(mu, nu) [ d2/dmu2 + a(mu, nu) d/dmu + b(mu, nu) d/dnu + d2/dnu2 ]

  and analytic partial derivatives of the field.
"""

import dataclasses
import math
from typing import Callable, NamedTuple

from .coords import EPS_SING, CoordPoint, SystemId, check_domain, metric_coefficients
from .errors import DomainError, SingularPointError

__all__ = [
    "Derivatives",
    "StencilConfig",
    "operator_coefficients",
    "analytic_terms",
    "apply_analytic",
    "normalized_residual",
    "apply_generic",
]


class Derivatives(NamedTuple):
    """Value and the partials needed by E^2 at one point."""

    value: float
    d_mu: float
    d_nu: float
    d_mumu: float
    d_nunu: float

    def scaled(self, factor):
        return Derivatives(*(factor * v for v in self))


ScalarField = Callable[[float, float], float]
DerivativeField = Callable[[float, float], Derivatives]


@dataclasses.dataclass(frozen=True)
class StencilConfig:
    step_mu: float = 1e-3
    step_nu: float = 1e-3
    scheme: str = "centered2"

    def __post_init__(self):
        if not (self.step_mu > 0.0 and self.step_nu > 0.0):
            raise ValueError("stencil steps must be positive")
        if self.scheme != "centered2":
            raise ValueError(f"unsupported scheme {self.scheme!r}")


def operator_coefficients(system, mu, nu):
    """Return ``(prefactor, coef_mu, coef_nu)`` of the expanded operator."""
    system = SystemId.parse(system)
    if abs(mu) <= EPS_SING:
        raise SingularPointError(f"E^2 coefficients are singular at mu = 0 ({system.value})")
    s = mu * mu + nu * nu
    if system is SystemId.PARABOLIC:
        if abs(nu) <= EPS_SING:
            raise SingularPointError("parabolic E^2 coefficients are singular at nu = 0")
        return 1.0 / s, -1.0 / mu, -1.0 / nu
    if system is SystemId.TANGENT_SPHERE:
        return s * s, (mu * mu - nu * nu) / (mu * s), 2.0 * nu / s
    if abs(nu) <= EPS_SING:
        raise SingularPointError("cardioid E^2 coefficients are singular at nu = 0")
    return s * s * s, (3.0 * mu * mu - nu * nu) / (mu * s), (3.0 * nu * nu - mu * mu) / (nu * s)


def analytic_terms(system, d, p):
    """The four expanded terms of E^2 f at `p`, prefactor included."""
    pref, a, b = operator_coefficients(system, p.mu, p.nu)
    return (pref * d.d_mumu, pref * a * d.d_mu, pref * b * d.d_nu, pref * d.d_nunu)


def apply_analytic(system, field, p):
    """E^2 applied to `field`, a callable returning :class:`Derivatives`."""
    system = SystemId.parse(system)
    check_domain(system, p.mu, p.nu, p.phi)
    return math.fsum(analytic_terms(system, field(p.mu, p.nu), p))


def normalized_residual(system, field, p):
    """|E^2 f| divided by the largest of its four expanded terms (0 if all vanish)."""
    system = SystemId.parse(system)
    check_domain(system, p.mu, p.nu, p.phi)
    terms = analytic_terms(system, field(p.mu, p.nu), p)
    scale = max(abs(t) for t in terms)
    if scale == 0.0:
        return 0.0
    return abs(math.fsum(terms)) / scale


def _flux_coefficients(system, mu, nu, phi):
    m = metric_coefficients(system, CoordPoint(mu, nu, phi))
    if m.varpi <= EPS_SING:
        raise SingularPointError(f"stencil touches the symmetry axis at ({mu!r}, {nu!r})")
    return m.h1 / (m.h2 * m.varpi), m.h2 / (m.h1 * m.varpi)


def apply_generic(system, f, p, cfg=StencilConfig()):
    """E^2 f by centered differences of the divergence form.

    `f` is a plain callable ``f(mu, nu)``. Metric factors are evaluated at the
    stencil midpoints.
    """
    system = SystemId.parse(system)
    hm, hn = cfg.step_mu, cfg.step_nu
    mu, nu, phi = p.mu, p.nu, p.phi
    stencil = [(mu + hm, nu), (mu - hm, nu), (mu, nu + hn), (mu, nu - hn)]
    try:
        for q in stencil:
            check_domain(system, q[0], q[1], phi)
    except DomainError as exc:
        raise SingularPointError(f"stencil leaves the {system.value} domain: {exc}") from exc

    center = metric_coefficients(system, p)
    if center.varpi <= EPS_SING:
        raise SingularPointError(f"point ({mu!r}, {nu!r}) is on the symmetry axis")
    a_plus, _ = _flux_coefficients(system, mu + 0.5 * hm, nu, phi)
    a_minus, _ = _flux_coefficients(system, mu - 0.5 * hm, nu, phi)
    _, b_plus = _flux_coefficients(system, mu, nu + 0.5 * hn, phi)
    _, b_minus = _flux_coefficients(system, mu, nu - 0.5 * hn, phi)

    f0 = f(mu, nu)
    d_mu = (a_plus * (f(mu + hm, nu) - f0) - a_minus * (f0 - f(mu - hm, nu))) / (hm * hm)
    d_nu = (b_plus * (f(mu, nu + hn) - f0) - b_minus * (f0 - f(mu, nu - hn))) / (hn * hn)
    return center.h1 * center.h2 * center.varpi * (d_mu + d_nu)
