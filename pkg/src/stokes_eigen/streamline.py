"""Streamline tracing in the (mu, nu) parameter plane.

The coordinate rates follow from the physical velocity through the
reciprocal scale factors, ``dmu/dt = h1 v_mu`` and ``dnu/dt = h2 v_nu``, i.e.

    dmu/dt =  (h1 h2 / varpi) dpsi/dnu
    dnu/dt = -(h1 h2 / varpi) dpsi/dmu

so psi is constant along exact trajectories. Integration is classical RK4
with a fixed step.
"""

import dataclasses
import math

from .coords import CoordPoint, SystemId, check_domain, metric_coefficients, to_cartesian
from .eigen import series_derivatives, velocity_field
from .errors import DomainError, SingularPointError
from .verify import SINGULAR_MARGIN, near_singular

__all__ = ["Streamline", "trace_streamline"]


@dataclasses.dataclass
class Streamline:
    system: SystemId
    points: list
    stop_reason: str

    def rows(self, expansion):
        """``(step, mu, nu, x, z, psi)`` for every traced point."""
        out = []
        for i, p in enumerate(self.points):
            c = to_cartesian(self.system, p)
            out.append((i, p.mu, p.nu, c.x, c.z, series_derivatives(expansion, p).value))
        return out


def _rate(expansion, mu, nu, normalize):
    p = CoordPoint(mu, nu)
    m = metric_coefficients(expansion.system, p)
    v_mu, v_nu = velocity_field(expansion, p)
    r_mu, r_nu = m.h1 * v_mu, m.h2 * v_nu
    if normalize:
        speed = math.hypot(r_mu, r_nu)
        if speed == 0.0:
            return 0.0, 0.0
        return r_mu / speed, r_nu / speed
    return r_mu, r_nu


def _inside(system, mu, nu, bounds, margin):
    p = CoordPoint(mu, nu)
    try:
        check_domain(system, mu, nu)
    except DomainError:
        return False
    if near_singular(system, p, margin):
        return False
    if bounds is not None:
        mu0, mu1, nu0, nu1 = bounds
        if not (mu0 <= mu <= mu1 and nu0 <= nu <= nu1):
            return False
    return True


def trace_streamline(expansion, seed, *, step=1e-3, max_steps=1000, bounds=None,
                     normalize=True, reverse=False, margin=SINGULAR_MARGIN):
    """Trace the streamline of `expansion` through `seed`.

    With `normalize` the rate is scaled to unit speed in the parameter plane,
    so `step` is an arc length in (mu, nu); otherwise it is a time step.
    Tracing stops after `max_steps` steps or when the next point would leave
    `bounds` (``(mu0, mu1, nu0, nu1)``) or approach a singular locus.
    """
    system = SystemId.parse(expansion.system)
    check_domain(system, seed.mu, seed.nu, seed.phi)
    if metric_coefficients(system, seed).varpi <= 0.0 or near_singular(system, seed, margin):
        raise SingularPointError(f"seed ({seed.mu!r}, {seed.nu!r}) lies on or near the symmetry axis")
    h = -step if reverse else step
    mu, nu = seed.mu, seed.nu
    points = [CoordPoint(mu, nu)]
    for _ in range(max_steps):
        try:
            k1 = _rate(expansion, mu, nu, normalize)
            k2 = _rate(expansion, mu + 0.5 * h * k1[0], nu + 0.5 * h * k1[1], normalize)
            k3 = _rate(expansion, mu + 0.5 * h * k2[0], nu + 0.5 * h * k2[1], normalize)
            k4 = _rate(expansion, mu + h * k3[0], nu + h * k3[1], normalize)
        except DomainError:
            return Streamline(system, points, "domain")
        mu_new = mu + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0])
        nu_new = nu + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])
        if not _inside(system, mu_new, nu_new, bounds, margin):
            return Streamline(system, points, "domain")
        mu, nu = mu_new, nu_new
        points.append(CoordPoint(mu, nu))
    return Streamline(system, points, "max_steps")
