"""Residual certification of the eigenfunctions and of the operators."""

import dataclasses
import json
import math

import numpy as np

from .coords import CoordPoint, SystemId
from .eigen import ModeSpec, SeriesExpansion, all_modes
from .errors import DomainError, EmptyGridError
from .special import BesselKind, bessel_derivatives
from .stokes_op import (
    Derivatives,
    StencilConfig,
    analytic_terms,
    apply_analytic,
    apply_generic,
    normalized_residual,
)

__all__ = [
    "GridSpec",
    "ResidualReport",
    "PolynomialField",
    "POLYNOMIAL_SUITE",
    "CrosscheckResult",
    "standard_grid",
    "near_singular",
    "annihilation_report",
    "ode_residual_appendix",
    "operator_crosscheck",
    "run_suite",
]

SINGULAR_MARGIN = 0.05


@dataclasses.dataclass(frozen=True)
class GridSpec:
    mu_min: float
    mu_max: float
    mu_count: int
    nu_min: float
    nu_max: float
    nu_count: int

    def __post_init__(self):
        if self.mu_count < 1 or self.nu_count < 1:
            raise EmptyGridError("grid counts must be positive")
        if self.mu_min > self.mu_max or self.nu_min > self.nu_max:
            raise EmptyGridError("grid ranges must be non-empty")

    def points(self):
        for mu in np.linspace(self.mu_min, self.mu_max, self.mu_count):
            for nu in np.linspace(self.nu_min, self.nu_max, self.nu_count):
                yield CoordPoint(float(mu), float(nu))

    @property
    def size(self):
        return self.mu_count * self.nu_count

    def to_dict(self):
        return dataclasses.asdict(self)

    @classmethod
    def parse(cls, text):
        """Parse ``"mu0:mu1:count,nu0:nu1:count"``."""
        try:
            mu_part, nu_part = text.split(",")
            m0, m1, mc = mu_part.split(":")
            n0, n1, nc = nu_part.split(":")
            return cls(float(m0), float(m1), int(mc), float(n0), float(n1), int(nc))
        except ValueError as exc:
            raise ValueError(f"bad grid spec {text!r}; expected mu0:mu1:count,nu0:nu1:count") from exc


def standard_grid(system, count=20):
    """The test box: mu, nu in [0.2, 2]; nu in [-1, 1] for the tangent sphere."""
    if SystemId.parse(system) is SystemId.TANGENT_SPHERE:
        return GridSpec(0.2, 2.0, count, -1.0, 1.0, count)
    return GridSpec(0.2, 2.0, count, 0.2, 2.0, count)


def near_singular(system, p, margin=SINGULAR_MARGIN):
    """True when `p` is within `margin` of a locus where E^2 or a mode degenerates."""
    if p.mu < margin:
        return True
    if SystemId.parse(system) is SystemId.TANGENT_SPHERE:
        return False
    return p.nu < margin


@dataclasses.dataclass(frozen=True)
class ResidualReport:
    system: str
    description: str
    grid_spec: dict
    max_residual: float
    mean_residual: float
    points_skipped: int

    def to_dict(self):
        return dataclasses.asdict(self)

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self):
        g = self.grid_spec
        return (
            f"{self.system}\t{self.description}\t"
            f"mu=[{g['mu_min']:g},{g['mu_max']:g}]x{g['mu_count']} "
            f"nu=[{g['nu_min']:g},{g['nu_max']:g}]x{g['nu_count']}\t"
            f"max={self.max_residual:.3e}\tmean={self.mean_residual:.3e}\t"
            f"skipped={self.points_skipped}"
        )


def _field_of(subject):
    if isinstance(subject, (ModeSpec, SeriesExpansion)):
        return subject.system, subject.derivatives
    raise TypeError(f"expected ModeSpec or SeriesExpansion, got {type(subject).__name__}")


def annihilation_report(subject, grid, *, system=None, description=None, margin=SINGULAR_MARGIN):
    """Normalized |E^2 psi| statistics over `grid`.

    `subject` is a ModeSpec, a SeriesExpansion, or a callable returning
    Derivatives (then `system` is required).
    """
    if callable(subject) and not isinstance(subject, (ModeSpec, SeriesExpansion)):
        if system is None:
            raise ValueError("system is required for a bare derivative field")
        field = subject
        system = SystemId.parse(system)
    else:
        system, field = _field_of(subject)
    if description is None:
        description = subject.label() if isinstance(subject, ModeSpec) else repr(subject)

    residuals = []
    skipped = 0
    for p in grid.points():
        if near_singular(system, p, margin):
            skipped += 1
            continue
        try:
            residuals.append(normalized_residual(system, field, p))
        except DomainError:
            skipped += 1
    if not residuals:
        raise EmptyGridError(f"no usable grid points for {description}")
    return ResidualReport(
        system=system.value,
        description=description,
        grid_spec=grid.to_dict(),
        max_residual=float(max(residuals)),
        mean_residual=float(math.fsum(residuals) / len(residuals)),
        points_skipped=skipped,
    )


def ode_residual_appendix(sign, n, solution_kind, x_grid):
    """Largest normalized residual of ``x^2 y'' - x y' -/+ n^2 x^2 y`` for ``y = x Z(n x)``.

    `sign` is ``"minus"`` (modified Bessel branch) or ``"plus"`` (Bessel
    branch). Any of J1, Y1, I1, K1 may be substituted into either equation.
    """
    if sign not in ("minus", "plus"):
        raise ValueError(f"sign must be 'minus' or 'plus', got {sign!r}")
    kind = BesselKind(solution_kind)
    s = -1.0 if sign == "minus" else 1.0
    worst = 0.0
    for x in x_grid:
        x = float(x)
        if not x > 0.0:
            raise DomainError(f"x grid must be positive, got {x!r}")
        z, dz, ddz = bessel_derivatives(kind, n * x)
        y = x * z
        dy = z + n * x * dz
        ddy = 2.0 * n * dz + n * n * x * ddz
        terms = (x * x * ddy, -x * dy, s * n * n * x * x * y)
        scale = max(abs(t) for t in terms)
        if scale:
            worst = max(worst, abs(math.fsum(terms)) / scale)
    return worst


class PolynomialField:
    """``sum c_ij mu^i nu^j`` with exact value and derivatives."""

    def __init__(self, coefficients, name=None):
        self.coefficients = dict(coefficients)
        self.name = name or " + ".join(f"{c:g}*mu^{i}*nu^{j}" for (i, j), c in self.coefficients.items())

    def value(self, mu, nu):
        return math.fsum(c * mu**i * nu**j for (i, j), c in self.coefficients.items())

    def derivatives(self, mu, nu):
        v = dm = dn = dmm = dnn = 0.0
        for (i, j), c in self.coefficients.items():
            v += c * mu**i * nu**j
            if i >= 1:
                dm += c * i * mu ** (i - 1) * nu**j
            if j >= 1:
                dn += c * j * mu**i * nu ** (j - 1)
            if i >= 2:
                dmm += c * i * (i - 1) * mu ** (i - 2) * nu**j
            if j >= 2:
                dnn += c * j * (j - 1) * mu**i * nu ** (j - 2)
        return Derivatives(v, dm, dn, dmm, dnn)

    @property
    def is_constant(self):
        return all(i == 0 and j == 0 for (i, j) in self.coefficients if self.coefficients[(i, j)])


POLYNOMIAL_SUITE = {
    "1": PolynomialField({(0, 0): 1.0}, "1"),
    "mu": PolynomialField({(1, 0): 1.0}, "mu"),
    "nu": PolynomialField({(0, 1): 1.0}, "nu"),
    "mu*nu": PolynomialField({(1, 1): 1.0}, "mu*nu"),
    "mu^2*nu^2": PolynomialField({(2, 2): 1.0}, "mu^2*nu^2"),
    "mu^3+nu^3": PolynomialField({(3, 0): 1.0, (0, 3): 1.0}, "mu^3+nu^3"),
}


@dataclasses.dataclass(frozen=True)
class CrosscheckResult:
    order: float
    exact_match: bool
    steps: tuple
    errors: tuple

    def to_dict(self):
        return {
            "order": None if math.isnan(self.order) else self.order,
            "exact_match": self.exact_match,
            "steps": list(self.steps),
            "errors": list(self.errors),
        }


def operator_crosscheck(system, test_field, points, step_sequence=(1e-2, 5e-3, 2.5e-3), *, exact_tol=1e-9):
    """Observed order of |generic - analytic| as the stencil step shrinks.

    The error at each step is the maximum over `points`, normalized by the
    largest analytic term. If every error is below `exact_tol` the result is
    flagged as an exact match and the order is NaN.
    """
    system = SystemId.parse(system)
    steps = tuple(float(h) for h in step_sequence)
    if len(steps) < 3:
        raise ValueError("operator_crosscheck needs at least three steps")
    points = list(points)
    if not points:
        raise EmptyGridError("operator_crosscheck needs at least one point")
    errors = []
    for h in steps:
        cfg = StencilConfig(h, h)
        worst = 0.0
        for p in points:
            d = test_field.derivatives(p.mu, p.nu)
            scale = max(max(abs(t) for t in analytic_terms(system, d, p)), abs(d.value))
            exact = apply_analytic(system, test_field.derivatives, p)
            approx = apply_generic(system, test_field.value, p, cfg)
            worst = max(worst, abs(approx - exact) / (scale or 1.0))
        errors.append(worst)
    if max(errors) <= exact_tol:
        return CrosscheckResult(float("nan"), True, steps, tuple(errors))
    slope = np.polyfit(np.log(steps), np.log(errors), 1)[0]
    return CrosscheckResult(float(slope), False, steps, tuple(errors))


def random_points(system, count, seed=0, box=(0.2, 2.0)):
    """Deterministic uniform points in the standard test box of `system`."""
    rng = np.random.default_rng(seed)
    lo, hi = box
    mus = rng.uniform(lo, hi, count)
    if SystemId.parse(system) is SystemId.TANGENT_SPHERE:
        nus = rng.uniform(-1.0, 1.0, count)
    else:
        nus = rng.uniform(lo, hi, count)
    return [CoordPoint(float(m), float(v)) for m, v in zip(mus, nus)]


def run_suite(systems=tuple(SystemId), ns=(1, 2, 5), *, tolerance=1e-6, ode_tolerance=1e-8,
              order_target=2.0, order_slack=0.2, grid_count=20, crosscheck_points=20, seed=0):
    """Annihilation, radial ODE and operator cross-check sections.

    Returns a JSON-ready dict with a top-level ``passed`` flag and the name
    of every failing section under ``failures``.
    """
    systems = [SystemId.parse(s) for s in systems]
    failures = []

    annihilation = []
    for system in systems:
        grid = standard_grid(system, grid_count)
        for mode in all_modes(system, ns):
            rep = annihilation_report(mode, grid)
            ok = rep.max_residual < tolerance
            if not ok:
                failures.append(f"annihilation:{rep.description}")
            annihilation.append(dict(rep.to_dict(), passed=ok))

    x_grid = np.linspace(0.1, 10.0, 100)
    ode = []
    for n in ns:
        for sign, right, wrong in (("minus", ("I1", "K1"), ("J1", "Y1")), ("plus", ("J1", "Y1"), ("I1", "K1"))):
            for kind in right + wrong:
                r = ode_residual_appendix(sign, float(n), kind, x_grid)
                expected_ok = kind in right
                ok = r < ode_tolerance if expected_ok else r > 1e-1
                if not ok:
                    failures.append(f"ode:{sign}:{kind}:n={n}")
                ode.append({
                    "equation": sign,
                    "n": float(n),
                    "solution_kind": kind,
                    "branch": "correct" if expected_ok else "wrong",
                    "max_residual": r,
                    "passed": ok,
                })

    crosscheck = []
    for system in systems:
        points = random_points(system, crosscheck_points, seed)
        for name, field in POLYNOMIAL_SUITE.items():
            res = operator_crosscheck(system, field, points)
            # some fields (constants, parabolic mu^2 nu^2, tangent-sphere nu)
            # carry a flux the midpoint stencil differences exactly
            ok = res.exact_match or abs(res.order - order_target) <= order_slack
            if not ok:
                failures.append(f"crosscheck:{system.value}:{name}")
            crosscheck.append(dict(res.to_dict(), system=system.value, field=name, passed=ok))

    return {
        "passed": not failures,
        "failures": failures,
        "tolerances": {
            "annihilation": tolerance,
            "ode": ode_tolerance,
            "wrong_branch_min": 1e-1,
            "order": [order_target - order_slack, order_target + order_slack],
        },
        "annihilation": annihilation,
        "ode": ode,
        "crosscheck": crosscheck,
    }
