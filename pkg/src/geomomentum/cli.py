import argparse
import contextlib
import json
import logging
import math
import sys
from datetime import datetime, timezone

from geomomentum import settings
from geomomentum.exceptions import GeomomentumError
from geomomentum.figures import reproduce_figure
from geomomentum.momentum_rep.oscillator import compare_ho
from geomomentum.momentum_rep.properties import MomentumGrid, amplitude_table, second_moment
from geomomentum.momentum_rep.uncertainty import momentum_uncertainty_au, uncertainty_product
from geomomentum.results import (
    check_health,
    check_passed,
    format_status_table,
    read_all_results,
    write_result,
)
from geomomentum.sinks import make_sink
from geomomentum.surface_geometry import (
    geometric_potential,
    geometry_at,
    laplacian_limit_coefficient,
    normal_divergence,
    principal_curvatures,
    shell_det_closed_form,
    shell_metric,
)
from geomomentum.surfaces import registry
from geomomentum.validation import (
    validate_figure_id,
    validate_grid,
    validate_index,
    validate_positive,
    validate_surface,
    validate_truncation,
)
from geomomentum.verification import DEFAULT_SURFACES, SUITES

logger = logging.getLogger("geomomentum")


class UsageError(Exception):
    """Raised by command handlers for argument combinations argparse cannot express."""


def _require(message):
    if message:
        raise UsageError(message)


@contextlib.contextmanager
def _output_stream(args):
    path = getattr(args, "output", None)
    if not path:
        yield sys.stdout
        return
    with open(path, "w", encoding="utf-8", newline="") as f:
        yield f
    logger.info("Wrote %s", path)


def _emit_table(args, header, rows, metadata):
    with _output_stream(args) as stream:
        make_sink(args.format, stream).write_table(header, rows, metadata)


def _emit_document(args, doc):
    with _output_stream(args) as stream:
        make_sink(args.format, stream).write_document(doc)


def _grid_from_args(args) -> MomentumGrid:
    _require(validate_grid(args.kmax, args.step))
    return MomentumGrid.uniform(args.kmax, args.step)


def _amplitudes_in_k(args):
    """Q_lm on the k = p_z/hbar grid, normalized per unit k.

    The library evaluates at p_z = k * hbar; the sqrt(hbar) factor turns the
    per-p_z amplitude into the per-k one so the ``k`` column means k.
    """
    _require(validate_index(args.l, args.m))
    _require(validate_positive("hbar", args.hbar))
    grid = _grid_from_args(args)
    p_grid = MomentumGrid(grid.k_values * args.hbar, symmetric=grid.symmetric)
    table = amplitude_table(args.l, args.m, p_grid, args.hbar, args.source)
    metadata = {
        "l": args.l,
        "m": args.m,
        "source": table.source,
        "hbar": args.hbar,
        "grid": grid.describe(),
    }
    return grid, table.values * math.sqrt(args.hbar), metadata


def cmd_qdist(args):
    grid, values, metadata = _amplitudes_in_k(args)
    density = abs(values) ** 2
    rows = zip(grid.k_values.tolist(), density.tolist())
    _emit_table(args, ["k", "density"], list(rows), metadata)
    return 0


def cmd_qamp(args):
    grid, values, metadata = _amplitudes_in_k(args)
    rows = zip(grid.k_values.tolist(), values.real.tolist(), values.imag.tolist())
    _emit_table(args, ["k", "re_q", "im_q"], list(rows), metadata)
    return 0


def _run_suite(args, suite, parameters, **suite_kwargs):
    """Run a verification suite, record the result file and report residuals."""
    started_at = datetime.now(timezone.utc)
    results_dir = getattr(args, "results_dir", None)
    try:
        checks = SUITES[suite](**suite_kwargs)
    except GeomomentumError:
        if results_dir:
            write_result(
                results_dir,
                suite,
                started_at,
                datetime.now(timezone.utc),
                checks=[],
                status="error",
                parameters=parameters,
            )
        raise

    failed = [c for c in checks if not check_passed(c)]
    if results_dir:
        path = write_result(
            results_dir,
            suite,
            started_at,
            datetime.now(timezone.utc),
            checks=checks,
            parameters=parameters,
        )
        logger.info("Recorded %s", path)
    for c in failed:
        logger.warning("%s: residual %.3e above %.1e", c["check"], c["residual"], c["threshold"])

    doc = {
        "suite": suite,
        "parameters": parameters,
        "passed": not failed,
        "checks_total": len(checks),
        "checks_failed": len(failed),
        "worst_residual": max((c["residual"] for c in checks), default=None),
        "checks": checks,
    }
    _emit_document(args, doc)
    return 1 if failed else 0


def cmd_verify_algebra(args):
    interior = args.lmax - 2 if args.interior is None else args.interior
    _require(validate_truncation(args.lmax, interior))
    parameters = {"l_max": args.lmax, "l_interior": interior, "hbar": args.hbar}
    return _run_suite(
        args, "algebra", parameters, l_max=args.lmax, l_interior=interior, hbar=args.hbar
    )


def cmd_verify_qlm(args):
    _require(validate_index(args.lmax, 0))
    parameters = {"l_max": args.lmax, "hbar": args.hbar}
    return _run_suite(args, "qlm", parameters, l_max=args.lmax, hbar=args.hbar)


def cmd_verify_geometry(args):
    surfaces = args.surface or list(DEFAULT_SURFACES)
    for spec in surfaces:
        _require(validate_surface(spec))
    _require(validate_positive("points", args.points))
    parameters = {"surfaces": surfaces, "points": args.points, "hbar": args.hbar}
    return _run_suite(
        args,
        "geometry",
        parameters,
        surfaces=surfaces,
        points=args.points,
        hbar=args.hbar,
    )


def cmd_surface(args):
    if args.list:
        _emit_document(args, registry.capabilities())
        return 0
    if not args.surface or args.q1 is None or args.q2 is None:
        raise UsageError("surface needs --list, or --surface with --q1 and --q2")
    _require(validate_surface(args.surface))
    chart = registry.parse_surface(args.surface)
    q = (args.q1, args.q2)
    geo = geometry_at(chart, q)
    k1, k2 = principal_curvatures(geo)
    doc = {
        "surface": chart.describe(),
        "q": list(q),
        "g": geo.g.tolist(),
        "n": geo.n.tolist(),
        "alpha": geo.alpha.tolist(),
        "M": geo.M,
        "K": geo.K,
        "principal_curvatures": [k1, k2],
        "geometric_potential": geometric_potential(geo.M, geo.K, args.mu, args.hbar),
        "laplacian_limit_coefficient": laplacian_limit_coefficient(geo.M, geo.K),
        "normal_divergence": normal_divergence(chart, q),
    }
    if args.q3 is not None:
        shell = shell_metric(chart, q, args.q3)
        doc["shell_metric"] = {
            "q3": args.q3,
            "G": shell.G.tolist(),
            "detG": shell.detG,
            "detG_closed_form": shell_det_closed_form(chart, q, args.q3),
        }
    _emit_document(args, doc)
    return 0


def cmd_uncertainty(args):
    has_state = args.l is not None or args.m is not None
    if (args.radius_angstrom is None) == (not has_state):
        raise UsageError("uncertainty needs either --radius-angstrom or --l/--m")
    if args.radius_angstrom is not None:
        _require(validate_positive("radius", args.radius_angstrom))
        doc = {"delta_p_au": round(momentum_uncertainty_au(args.radius_angstrom), 4)}
    else:
        l, m = args.l or 0, args.m or 0  # noqa: E741
        _require(validate_index(l, m))
        doc = {"l": l, "m": m, **uncertainty_product(l, m).as_dict()}
        doc["second_moment"] = second_moment(l, m)
    _emit_document(args, doc)
    return 0


def cmd_compare_ho(args):
    _require(validate_index(args.l, 0))
    if args.matching == "manual":
        if args.beta is None:
            raise UsageError("--matching manual requires --beta")
        _require(validate_positive("beta", args.beta))
    n = args.l if args.n is None else args.n
    _require(None if n >= 0 else f"n must be >= 0, got {n}")
    grid = _grid_from_args(args)
    result = compare_ho(args.l, n, args.matching, args.beta, grid)
    _emit_document(args, result.as_dict())
    return 0


def cmd_figure(args):
    _require(validate_figure_id(args.id))
    curves = reproduce_figure(args.id, args.output_dir)
    _emit_document(args, {"figure": args.id, "output_dir": args.output_dir, "curves": curves})
    return 0


def cmd_status(args):
    if not args.results_dir:
        raise UsageError("status needs --results-dir (env: GEOMOMENTUM_RESULTS_DIR)")
    results = read_all_results(args.results_dir)

    if args.json:
        print(json.dumps(results, indent=2))
    else:
        print(format_status_table(results, stale_hours=args.stale_hours))

    healthy = check_health(results, stale_hours=args.stale_hours)
    return 0 if healthy else 1


def _add_output_options(p, default_format):
    p.add_argument(
        "--format",
        choices=["csv", "json", "text"],
        default=default_format,
        help=f"Output format (default: {default_format})",
    )
    p.add_argument("--output", help="Write to this file instead of stdout")


def _add_grid_options(p):
    p.add_argument(
        "--kmax", type=float, default=settings.KMAX, help=f"Grid half-width (default: {settings.KMAX:g})"
    )
    p.add_argument(
        "--step", type=float, default=settings.KSTEP, help=f"Grid spacing (default: {settings.KSTEP:g})"
    )


def _add_hbar(p):
    p.add_argument(
        "--hbar",
        type=float,
        default=settings.HBAR,
        help="Reduced Planck constant (env: GEOMOMENTUM_HBAR, default 1)",
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="geomomentum",
        description="Geometric momentum on curved surfaces: amplitudes, algebra checks and figure data",
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="store_true",
        help="Enable debug logging",
    )
    parser.add_argument(
        "--results-dir",
        default=settings.RESULTS_DIR,
        help="Directory for verification result files (env: GEOMOMENTUM_RESULTS_DIR)",
    )
    subparsers = parser.add_subparsers(dest="command")

    for verb, helptext in (
        ("qdist", "Momentum distribution |Q_lm(p_z)|^2 on a grid"),
        ("qamp", "Complex amplitude Q_lm(p_z) on a grid"),
    ):
        p = subparsers.add_parser(verb, help=helptext)
        p.add_argument("--l", type=int, required=True, help="Angular quantum number l")
        p.add_argument("--m", type=int, required=True, help="Magnetic quantum number m")
        p.add_argument(
            "--source",
            choices=["closed_form", "quadrature"],
            help="Evaluator (default: closed form for l <= 2, else quadrature)",
        )
        _add_grid_options(p)
        _add_hbar(p)
        _add_output_options(p, "csv")

    p = subparsers.add_parser("verify-algebra", help="Check the commutation relations of p_i and L_i")
    p.add_argument("--lmax", type=int, default=settings.LMAX, help="Basis truncation (default: 12)")
    p.add_argument("--interior", type=int, help="Interior block l <= N (default: lmax - 2)")
    _add_hbar(p)
    _add_output_options(p, "json")

    p = subparsers.add_parser("verify-qlm", help="Check closed forms and properties of Q_lm")
    p.add_argument("--lmax", type=int, default=6, help="Check all l <= N (default: 6)")
    _add_hbar(p)
    _add_output_options(p, "json")

    p = subparsers.add_parser("verify-geometry", help="Check curvature and shell-metric contracts")
    p.add_argument(
        "--surface",
        action="append",
        help="Surface spec, repeatable (default: all built-ins), e.g. torus:R=2,a=0.5",
    )
    p.add_argument("--points", type=int, default=20, help="Random interior points per surface")
    _add_hbar(p)
    _add_output_options(p, "json")

    p = subparsers.add_parser("surface", help="Geometry of a built-in surface at one point")
    p.add_argument("--list", action="store_true", help="List built-in surfaces and parameters")
    p.add_argument("--surface", help="Surface spec, e.g. sphere:r=1 or torus:R=2,a=0.5")
    p.add_argument("--q1", type=float, help="First chart coordinate")
    p.add_argument("--q2", type=float, help="Second chart coordinate")
    p.add_argument("--q3", type=float, help="Normal offset for the shell metric")
    p.add_argument("--mu", type=float, default=settings.MASS, help="Particle mass (default 1)")
    _add_hbar(p)
    _add_output_options(p, "json")

    p = subparsers.add_parser("uncertainty", help="Momentum uncertainty estimates")
    p.add_argument("--radius-angstrom", type=float, help="Sphere radius in angstrom")
    p.add_argument("--l", type=int, help="State l for the Delta z Delta k product")
    p.add_argument("--m", type=int, help="State m for the Delta z Delta k product")
    _add_output_options(p, "json")

    p = subparsers.add_parser("compare-ho", help="Compare |Q_l0|^2 with an oscillator density")
    p.add_argument("--l", type=int, required=True, help="Angular quantum number l")
    p.add_argument("--n", type=int, help="Oscillator level (default: l)")
    p.add_argument("--matching", choices=["variance", "manual"], default="variance")
    p.add_argument("--beta", type=float, help="Oscillator width for --matching manual")
    _add_grid_options(p)
    _add_output_options(p, "json")

    p = subparsers.add_parser("figure", help="Write the CSV data of a figure")
    p.add_argument("--id", type=int, required=True, help="Figure number (1, 2 or 3)")
    p.add_argument("--output-dir", required=True, help="Directory for the CSV files")
    _add_output_options(p, "json")

    p = subparsers.add_parser("status", help="Show the verification dashboard")
    p.add_argument(
        "--stale-hours",
        type=int,
        default=168,
        help="Hours after which a result is considered stale (default: 168 = 7 days)",
    )
    p.add_argument("--json", action="store_true", help="Output status as JSON")

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s %(levelname)s [%(name)s] %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )

    if not args.command:
        parser.print_help()
        sys.exit(2)

    commands = {
        "qdist": cmd_qdist,
        "qamp": cmd_qamp,
        "verify-algebra": cmd_verify_algebra,
        "verify-qlm": cmd_verify_qlm,
        "verify-geometry": cmd_verify_geometry,
        "surface": cmd_surface,
        "uncertainty": cmd_uncertainty,
        "compare-ho": cmd_compare_ho,
        "figure": cmd_figure,
        "status": cmd_status,
    }

    try:
        exit_code = commands[args.command](args)
    except UsageError as e:
        parser.error(str(e))
    except GeomomentumError as e:
        logger.error("%s failed: %s", args.command, e)
        print(json.dumps(e.to_payload()))
        sys.exit(1)
    except Exception:
        logger.exception("%s failed unexpectedly", args.command)
        sys.exit(1)

    if exit_code:
        sys.exit(exit_code)


if __name__ == "__main__":
    main()
