"""Command-line interface.

Exit status: 0 success, 1 tolerance failure, 2 usage or configuration error.
"""

import argparse
import csv
import io
import json
import sys

from .coords import CoordPoint, SystemId, to_cartesian
from .eigen import AngularKind, ModeSpec, RadialKind, SeriesExpansion, angular_kinds, velocity_field
from .errors import StokesEigenError
from .fit import CollocationProblem, fit_to_expansion, solve_collocation
from .stokes_op import normalized_residual
from .streamline import trace_streamline
from .verify import GridSpec, run_suite

EXIT_OK = 0
EXIT_TOLERANCE = 1
EXIT_USAGE = 2

SYSTEM_CHOICES = [s.value for s in SystemId] + ["all"]


class ConfigError(Exception):
    pass


def fmt(v):
    if isinstance(v, float):
        return format(v + 0.0, ".17g")  # folds -0.0
    return str(v)


def _write(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _csv(header, rows, footer=None):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    if footer:
        buf.write(footer + "\n")
    return buf.getvalue()


def _json(obj):
    return json.dumps(obj, indent=2) + "\n"


def _parse_ns(text):
    try:
        ns = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise ConfigError(f"bad --n list {text!r}") from None
    if not ns or any(n <= 0 for n in ns):
        raise ConfigError("--n values must be positive")
    return [int(n) if n.is_integer() else n for n in ns]


def _parse_point(text):
    try:
        mu, nu = (float(t) for t in text.split(","))
    except ValueError:
        raise ConfigError(f"bad point {text!r}; expected mu,nu") from None
    return CoordPoint(mu, nu)


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None


def _load_expansion(args):
    try:
        expansion = SeriesExpansion.from_dict(_load_json(args.expansion))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"invalid expansion file {args.expansion}: {exc}") from None
    if args.system not in (None, "all") and SystemId.parse(args.system) is not expansion.system:
        raise ConfigError(f"--system {args.system} does not match expansion system {expansion.system.value}")
    return expansion


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_verify(args):
    systems = list(SystemId) if args.system in (None, "all") else [SystemId.parse(args.system)]
    ns = _parse_ns(args.n)
    report = run_suite(systems, ns, tolerance=args.tolerance)
    report["systems"] = [s.value for s in systems]
    report["n"] = ns
    if args.format == "csv":
        rows = []
        for r in report["annihilation"]:
            rows.append(("annihilation", r["system"], r["description"], r["max_residual"], r["passed"]))
        for r in report["ode"]:
            label = f"{r['equation']} n={r['n']:g} {r['solution_kind']} ({r['branch']})"
            rows.append(("ode", "", label, r["max_residual"], r["passed"]))
        for r in report["crosscheck"]:
            order = "exact" if r["exact_match"] else r["order"]
            rows.append(("crosscheck", r["system"], r["field"], order, r["passed"]))
        _write(_csv(["section", "system", "description", "value", "passed"], rows), args.out)
    else:
        _write(_json(report), args.out)
    for failure in report["failures"]:
        print(f"FAILED {failure}", file=sys.stderr)
    return EXIT_OK if report["passed"] else EXIT_TOLERANCE


def cmd_eval(args):
    if args.expansion:
        subject = _load_expansion(args)
    else:
        if args.system in (None, "all"):
            raise ConfigError("eval needs --expansion or a single --system with --n")
        system = SystemId.parse(args.system)
        first, _ = angular_kinds(system)
        angular = AngularKind(args.angular) if args.angular else first
        subject = ModeSpec(system, _parse_ns(args.n)[0], RadialKind(args.radial), angular)
    if not args.point:
        raise ConfigError("eval needs at least one --point mu,nu")
    rows = []
    for text in args.point:
        p = _parse_point(text)
        d = subject.derivatives(p.mu, p.nu)
        v_mu, v_nu = velocity_field(subject, p)
        res = normalized_residual(subject.system, subject.derivatives, p)
        rows.append((p.mu, p.nu, d.value, v_mu, v_nu, res))
    header = ["mu", "nu", "psi", "v_mu", "v_nu", "e2_residual"]
    if args.format == "json":
        _write(_json([dict(zip(header, r)) for r in rows]), args.out)
    else:
        _write(_csv(header, rows), args.out)
    return EXIT_OK


def cmd_fit(args):
    if not args.problem:
        raise ConfigError("fit needs --problem <path>")
    try:
        problem = CollocationProblem.from_dict(_load_json(args.problem))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"invalid problem file {args.problem}: {exc}") from None
    result = solve_collocation(problem)
    payload = {"fit": result.to_dict(), "expansion": fit_to_expansion(problem, result).to_dict()}
    _write(_json(payload), args.out)
    if args.tolerance is not None and result.residual_norm > args.tolerance:
        print(f"FAILED fit residual {result.residual_norm:.3e} > {args.tolerance:.3e}", file=sys.stderr)
        return EXIT_TOLERANCE
    return EXIT_OK


def cmd_grid(args):
    expansion = _load_expansion(args)
    if not args.grid:
        raise ConfigError("grid needs --grid mu0:mu1:count,nu0:nu1:count")
    try:
        grid = GridSpec.parse(args.grid)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    rows = []
    skipped = 0
    for p in grid.points():
        try:
            c = to_cartesian(expansion.system, p)
            psi = expansion.value(p.mu, p.nu)
            v_mu, v_nu = velocity_field(expansion, p)
        except StokesEigenError:
            skipped += 1
            continue
        rows.append((p.mu, p.nu, c.x, c.z, psi, v_mu, v_nu))
    header = ["mu", "nu", "x", "z", "psi", "v_mu", "v_nu"]
    if args.format == "json":
        _write(_json({"rows": [dict(zip(header, r)) for r in rows], "skipped": skipped}), args.out)
    else:
        _write(_csv(header, rows, footer=f"# skipped,{skipped}"), args.out)
    return EXIT_OK


def cmd_streamline(args):
    expansion = _load_expansion(args)
    if not args.seed:
        raise ConfigError("streamline needs at least one --seed mu,nu")
    bounds = None
    if args.bounds:
        try:
            bounds = tuple(float(t) for t in args.bounds.split(","))
        except ValueError:
            raise ConfigError(f"bad --bounds {args.bounds!r}") from None
        if len(bounds) != 4:
            raise ConfigError("--bounds needs mu0,mu1,nu0,nu1")
    rows = []
    for line, text in enumerate(args.seed):
        trace = trace_streamline(
            expansion,
            _parse_point(text),
            step=args.step,
            max_steps=args.max_steps,
            bounds=bounds,
            reverse=args.reverse,
        )
        rows.extend((line,) + r + (trace.stop_reason,) for r in trace.rows(expansion))
    header = ["line", "step", "mu", "nu", "x", "z", "psi", "stop_reason"]
    if args.format == "json":
        _write(_json([dict(zip(header, r)) for r in rows]), args.out)
    else:
        _write(_csv(header, rows), args.out)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="stokes-eigen",
        description="Evaluate and verify E^2-annihilated stream functions in "
        "parabolic, tangent-sphere and cardioid coordinates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, system_default=None):
        p.add_argument("--system", choices=SYSTEM_CHOICES, default=system_default)
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--format", choices=["csv", "json"], default="csv")

    p = sub.add_parser("verify", help="run the annihilation, ODE and operator cross-check suite")
    common(p, "all")
    p.set_defaults(format="json")
    p.add_argument("--n", default="1,2,5", help="comma-separated separation parameters")
    p.add_argument("--tolerance", type=float, default=1e-6, help="annihilation tolerance")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("eval", help="evaluate a mode or expansion at points")
    common(p)
    p.add_argument("--expansion")
    p.add_argument("--n", default="1")
    p.add_argument("--radial", choices=[k.value for k in RadialKind], default="I1")
    p.add_argument("--angular", choices=[k.value for k in AngularKind])
    p.add_argument("--point", action="append", help="mu,nu (repeatable)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("fit", help="least-squares collocation fit")
    common(p)
    p.add_argument("--problem", help="collocation problem JSON")
    p.add_argument("--tolerance", type=float, help="fail if the RMS misfit exceeds this")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("grid", help="sample psi and velocity on a grid")
    common(p)
    p.add_argument("--expansion", required=True)
    p.add_argument("--grid", help="mu0:mu1:count,nu0:nu1:count")
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("streamline", help="trace streamlines from seed points")
    common(p)
    p.add_argument("--expansion", required=True)
    p.add_argument("--seed", action="append", help="mu,nu (repeatable)")
    p.add_argument("--step", type=float, default=1e-3)
    p.add_argument("--max-steps", type=int, default=1000)
    p.add_argument("--bounds", help="mu0,mu1,nu0,nu1")
    p.add_argument("--reverse", action="store_true")
    p.set_defaults(func=cmd_streamline)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, StokesEigenError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
