"""Least-squares collocation of mode coefficients to prescribed psi values.

Each basis entry is one product mode with a single free multiplier. This
sidesteps the bilinear ``[A M1 + B M2][C N1 + D N2]`` form, whose four
coefficients are only determined up to a shared scale per term.
"""

import dataclasses
import math

import numpy as np

from .coords import CoordPoint, SystemId, check_domain
from .eigen import AngularKind, ModeSpec, RadialKind, SeriesExpansion, SeriesTerm, angular_kinds, eval_mode
from .errors import DomainError, EmptyGridError, RankDeficiencyError
from .verify import SINGULAR_MARGIN, near_singular

__all__ = [
    "BasisEntry",
    "CollocationProblem",
    "FitResult",
    "design_matrix",
    "solve_collocation",
    "coordinate_surface_samples",
    "fit_to_expansion",
]

# Relative singular-value floor below which the unregularized solve is refused.
RANK_RTOL = 1e-13


@dataclasses.dataclass(frozen=True)
class BasisEntry:
    n: float
    radial_kind: RadialKind
    angular_kind: AngularKind

    def __post_init__(self):
        object.__setattr__(self, "radial_kind", RadialKind(self.radial_kind))
        object.__setattr__(self, "angular_kind", AngularKind(self.angular_kind))

    def mode(self, system):
        return ModeSpec(system, self.n, self.radial_kind, self.angular_kind)

    def to_dict(self):
        return {"n": self.n, "radial": self.radial_kind.value, "angular": self.angular_kind.value}

    @classmethod
    def from_dict(cls, d):
        return cls(float(d["n"]), RadialKind(d["radial"]), AngularKind(d["angular"]))


@dataclasses.dataclass(frozen=True)
class CollocationProblem:
    system: SystemId
    mode_basis: tuple
    samples: tuple  # ((CoordPoint, target), ...)
    regularization: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "system", SystemId.parse(self.system))
        object.__setattr__(self, "mode_basis", tuple(self.mode_basis))
        object.__setattr__(self, "samples", tuple((p, float(t)) for p, t in self.samples))
        if not self.mode_basis:
            raise ValueError("mode basis is empty")
        if not (self.regularization >= 0.0 and math.isfinite(self.regularization)):
            raise ValueError(f"regularization must be non-negative, got {self.regularization!r}")
        if len(self.samples) < len(self.mode_basis) and self.regularization == 0.0:
            raise ValueError(
                f"{len(self.samples)} samples for {len(self.mode_basis)} basis functions "
                "needs regularization > 0"
            )
        for entry in self.mode_basis:
            entry.mode(self.system)  # validates kind/system pairing
        for p, _ in self.samples:
            check_domain(self.system, p.mu, p.nu, p.phi)

    def to_dict(self):
        return {
            "system": self.system.value,
            "basis": [b.to_dict() for b in self.mode_basis],
            "samples": [{"mu": p.mu, "nu": p.nu, "psi": t} for p, t in self.samples],
            "regularization": self.regularization,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            SystemId.parse(d["system"]),
            [BasisEntry.from_dict(b) for b in d["basis"]],
            [(CoordPoint(float(s["mu"]), float(s["nu"])), float(s["psi"])) for s in d["samples"]],
            float(d.get("regularization", 0.0)),
        )


@dataclasses.dataclass(frozen=True)
class FitResult:
    coefficients: tuple
    residual_norm: float
    condition_estimate: float

    def to_dict(self):
        return {
            "coefficients": list(self.coefficients),
            "residual_norm": self.residual_norm,
            "condition_estimate": self.condition_estimate,
        }


def design_matrix(system, basis, points):
    system = SystemId.parse(system)
    modes = [b.mode(system) for b in basis]
    a = np.empty((len(points), len(modes)))
    for i, p in enumerate(points):
        for j, m in enumerate(modes):
            a[i, j] = eval_mode(m, p)
    return a


def solve_collocation(problem):
    """Ridge-regularized least squares through an SVD of the design matrix.

    Column scaling is applied before factorization so the condition
    estimate reflects genuine dependence rather than mode magnitude.
    """
    points = [p for p, _ in problem.samples]
    targets = np.array([t for _, t in problem.samples])
    a = design_matrix(problem.system, problem.mode_basis, points)

    col = np.linalg.norm(a, axis=0)
    col[col == 0.0] = 1.0
    a_s = a / col
    u, sv, vt = np.linalg.svd(a_s, full_matrices=False)
    smax = sv[0] if sv.size else 0.0
    smin = sv[-1] if sv.size else 0.0
    cond = math.inf if smin <= 0.0 else float(smax / smin)
    lam = problem.regularization
    if lam == 0.0:
        if smin <= RANK_RTOL * smax * max(a.shape):
            raise RankDeficiencyError("design matrix is rank deficient", cond)
        coef = (vt.T @ ((u.T @ targets) / sv)) / col
    else:
        # penalty lam * |coef|^2 on the unscaled coefficients
        aug = np.vstack([a, math.sqrt(lam) * np.eye(a.shape[1])])
        rhs = np.concatenate([targets, np.zeros(a.shape[1])])
        q, r = np.linalg.qr(aug)
        coef = np.linalg.solve(r, q.T @ rhs)
    misfit = a @ coef - targets
    rms = float(math.sqrt(np.mean(misfit**2))) if misfit.size else 0.0
    return FitResult(tuple(float(c) for c in coef), rms, cond)


def coordinate_surface_samples(system, fixed_coord, value, free_range, count, *, margin=SINGULAR_MARGIN):
    """Evenly spaced points on the surface ``fixed_coord = value``.

    `fixed_coord` is ``"mu"`` or ``"nu"``. Points within `margin` of a
    singular locus are dropped; an empty result raises EmptyGridError.
    """
    system = SystemId.parse(system)
    if fixed_coord not in ("mu", "nu"):
        raise ValueError(f"fixed_coord must be 'mu' or 'nu', got {fixed_coord!r}")
    if count < 1:
        raise EmptyGridError("sample count must be positive")
    lo, hi = free_range
    out = []
    for t in np.linspace(lo, hi, count):
        mu, nu = (value, float(t)) if fixed_coord == "mu" else (float(t), value)
        p = CoordPoint(float(mu), float(nu))
        if near_singular(system, p, margin):
            continue
        try:
            check_domain(system, p.mu, p.nu)
        except DomainError:
            continue
        out.append(p)
    if not out:
        raise EmptyGridError(f"{fixed_coord}={value:g} surface has no usable points on {system.value}")
    return out


def fit_to_expansion(problem, result):
    """Express a fit as a SeriesExpansion, one term per basis entry."""
    first, _ = angular_kinds(problem.system)
    terms = []
    for entry, coef in zip(problem.mode_basis, result.coefficients):
        a, b = (coef, 0.0) if entry.radial_kind is RadialKind.I1 else (0.0, coef)
        c, d = (1.0, 0.0) if entry.angular_kind is first else (0.0, 1.0)
        terms.append(SeriesTerm(entry.n, a, b, c, d))
    return SeriesExpansion(problem.system, terms)
