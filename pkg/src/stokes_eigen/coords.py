"""Parabolic, tangent-sphere and cardioid rotational coordinate systems.

Each system maps a meridian parameter pair (mu, nu) to the cylindrical pair
(rho, z); the azimuth phi is carried through unchanged. All three maps are
conformal in the meridian plane, so the two metric coefficients coincide:

    parabolic       rho = mu nu              z = (mu^2 - nu^2) / 2
                    h1 = h2 = 1 / sqrt(mu^2 + nu^2)
    tangent sphere  rho = mu / S             z = nu / S
                    h1 = h2 = S
    cardioid        rho = mu nu / S^2        z = (mu^2 - nu^2) / (2 S^2)
                    h1 = h2 = S^(3/2)

with ``S = mu^2 + nu^2``. Metric coefficients here are reciprocal scale
factors, ``h = 1 / |d(rho, z)/dq|``.
"""

import dataclasses
import enum
import math

from .errors import ConvergenceError, DomainError, SingularPointError

__all__ = [
    "EPS_SING",
    "SystemId",
    "CoordPoint",
    "CartesianPoint",
    "MetricData",
    "meridian",
    "meridian_jacobian",
    "to_cartesian",
    "metric_coefficients",
    "from_cartesian",
    "euclidean_distance",
    "check_domain",
]

EPS_SING = 1e-12


class SystemId(enum.Enum):
    PARABOLIC = "parabolic"
    TANGENT_SPHERE = "tangent-sphere"
    CARDIOID = "cardioid"

    @classmethod
    def parse(cls, name):
        """Accept the enum, its value, or a loose spelling like ``TangentSphere``."""
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower().replace("_", "-")
        aliases = {"tangentsphere": "tangent-sphere", "tangent": "tangent-sphere"}
        key = aliases.get(key, key)
        try:
            return cls(key)
        except ValueError:
            raise DomainError(f"unknown coordinate system {name!r}") from None


@dataclasses.dataclass(frozen=True)
class CoordPoint:
    mu: float
    nu: float
    phi: float = 0.0


@dataclasses.dataclass(frozen=True)
class CartesianPoint:
    x: float
    y: float
    z: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.x, self.y, self.z)):
            raise DomainError(f"non-finite Cartesian point {self!r}")


@dataclasses.dataclass(frozen=True)
class MetricData:
    h1: float
    h2: float
    varpi: float


def check_domain(system, mu, nu, phi=0.0):
    """Raise if (mu, nu, phi) is outside the parameter domain of `system`."""
    if not (math.isfinite(mu) and math.isfinite(nu)):
        raise DomainError(f"non-finite coordinates ({mu!r}, {nu!r})")
    if not 0.0 <= phi < 2.0 * math.pi:
        raise DomainError(f"phi must lie in [0, 2pi), got {phi!r}")
    if system is SystemId.TANGENT_SPHERE:
        if not mu > EPS_SING:
            raise SingularPointError(f"tangent-sphere requires mu > 0, got {mu!r}")
        return
    if mu < 0.0 or nu < 0.0:
        raise DomainError(f"{system.value} requires mu, nu >= 0, got ({mu!r}, {nu!r})")
    if system is SystemId.CARDIOID and mu * mu + nu * nu <= EPS_SING:
        raise SingularPointError("cardioid map is singular at mu = nu = 0")


def meridian(system, mu, nu):
    """Return the meridian pair (rho, z); rho may be signed off-domain."""
    s = mu * mu + nu * nu
    if system is SystemId.PARABOLIC:
        return mu * nu, 0.5 * (mu * mu - nu * nu)
    if system is SystemId.TANGENT_SPHERE:
        return mu / s, nu / s
    s2 = s * s
    return mu * nu / s2, 0.5 * (mu * mu - nu * nu) / s2


def meridian_jacobian(system, mu, nu):
    """Closed-form partials ``(rho_mu, z_mu, rho_nu, z_nu)``."""
    if system is SystemId.PARABOLIC:
        return nu, mu, mu, -nu
    s = mu * mu + nu * nu
    if system is SystemId.TANGENT_SPHERE:
        s2 = s * s
        return (nu * nu - mu * mu) / s2, -2.0 * mu * nu / s2, -2.0 * mu * nu / s2, (mu * mu - nu * nu) / s2
    s3 = s * s * s
    mm, nn = mu * mu, nu * nu
    return (
        nu * (nn - 3.0 * mm) / s3,
        mu * (3.0 * nn - mm) / s3,
        mu * (mm - 3.0 * nn) / s3,
        nu * (nn - 3.0 * mm) / s3,
    )


def to_cartesian(system, p):
    system = SystemId.parse(system)
    check_domain(system, p.mu, p.nu, p.phi)
    rho, z = meridian(system, p.mu, p.nu)
    return CartesianPoint(rho * math.cos(p.phi), rho * math.sin(p.phi), z)


def metric_coefficients(system, p):
    system = SystemId.parse(system)
    check_domain(system, p.mu, p.nu, p.phi)
    s = p.mu * p.mu + p.nu * p.nu
    if s <= EPS_SING:
        raise SingularPointError(f"{system.value} metric is singular at mu = nu = 0")
    rho_mu, z_mu, rho_nu, z_nu = meridian_jacobian(system, p.mu, p.nu)
    h1 = 1.0 / math.hypot(rho_mu, z_mu)
    h2 = 1.0 / math.hypot(rho_nu, z_nu)
    rho, _ = meridian(system, p.mu, p.nu)
    return MetricData(h1, h2, abs(rho))


def euclidean_distance(system, p):
    c = to_cartesian(system, p)
    return math.sqrt(c.x * c.x + c.y * c.y + c.z * c.z)


def from_cartesian(system, c, guess, *, tol=1e-14, max_iter=100):
    """Invert the map by damped Newton iteration on the meridian pair.

    `tol` bounds the residual ``|(rho, z) - target|`` relative to
    ``max(1, |target|)``. Raises ConvergenceError after `max_iter` steps.
    """
    system = SystemId.parse(system)
    rho_t = math.hypot(c.x, c.y)
    z_t = c.z
    scale = max(1.0, math.hypot(rho_t, z_t))
    phi = math.atan2(c.y, c.x) % (2.0 * math.pi)
    if phi >= 2.0 * math.pi:
        phi = 0.0

    def residual(mu, nu):
        rho, z = meridian(system, mu, nu)
        return rho - rho_t, z - z_t

    def valid(mu, nu):
        if system is SystemId.TANGENT_SPHERE:
            return mu > EPS_SING
        return mu * mu + nu * nu > EPS_SING

    mu, nu = float(guess.mu), float(guess.nu)
    if not valid(mu, nu):
        raise DomainError(f"initial guess ({mu!r}, {nu!r}) is singular for {system.value}")
    fr, fz = residual(mu, nu)
    norm = math.hypot(fr, fz)
    for _ in range(max_iter):
        if norm <= tol * scale:
            break
        a, b, cc, d = meridian_jacobian(system, mu, nu)
        # [[rho_mu, rho_nu], [z_mu, z_nu]] . step = -F
        det = a * d - cc * b
        if det == 0.0:
            raise ConvergenceError("singular Jacobian in Newton inversion", norm)
        dmu = -(d * fr - cc * fz) / det
        dnu = -(-b * fr + a * fz) / det
        lam = 1.0
        while lam > 1e-10:
            mu_new, nu_new = mu + lam * dmu, nu + lam * dnu
            if valid(mu_new, nu_new):
                fr_new, fz_new = residual(mu_new, nu_new)
                norm_new = math.hypot(fr_new, fz_new)
                if norm_new < norm or norm_new <= tol * scale:
                    break
            lam *= 0.5
        else:
            raise ConvergenceError("line search failed in Newton inversion", norm)
        mu, nu, fr, fz, norm = mu_new, nu_new, fr_new, fz_new, norm_new
    else:
        if norm > tol * scale:
            raise ConvergenceError(f"Newton inversion did not converge in {max_iter} iterations", norm)

    # (mu, nu) and (-mu, -nu) share an image for the even maps; a single sign
    # flip only survives when rho_t = 0, where it leaves the image unchanged.
    if system is not SystemId.TANGENT_SPHERE:
        mu, nu = abs(mu), abs(nu)
    return CoordPoint(mu, nu, phi)
