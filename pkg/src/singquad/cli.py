"""``singquad`` command-line front end.

Subcommands::

    singquad integrate DATA.json [--degree N] [--no-correction] [--format plain|csv]
    singquad correct VALUE --a A (--c C | --h H) --m M [--singularity X:J0,J1,...]...
    singquad refine [--mode simple|composite] [--degree N] [--levels N] [--d D]
                    [--n-offset K] [--fixed-xstar X] [--out PATH] [--plot-data STEM]
    singquad constants --degree N --s S
    singquad errata

Exit status: 0 ok, 2 usage or parse error, 3 panel mismatch, 4 node
collision, 5 missing jumps, 1 any other library error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import exceptions as exc
from .core import DEFAULT_NODE_TOL, SampleSet, SingularitySpec, UniformGrid, make_grid
from .corrections import correct_precomputed, error_constants, singularity_corrections
from .errata import erratum_report
from .harness import (
    CompositeExperimentConfig,
    SimpleExperimentConfig,
    default_points,
    run_composite_refinement,
    run_simple_refinement,
)
from .rules import SUPPORTED_DEGREES, composite_integral, rule_weights

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_PANEL = 3
EXIT_NODE = 4
EXIT_JUMPS = 5

TOL_ENV = "SINGQUAD_SEED_TOL"

_EXIT_FOR = (
    (exc.PanelMismatch, EXIT_PANEL),
    (exc.NodeCollision, EXIT_NODE),
    (exc.MissingJumps, EXIT_JUMPS),
)


class UsageError(Exception):
    pass


def fmt(x: float) -> str:
    """Shortest decimal that parses back to ``x``."""
    return repr(float(x))


def node_tol_from_env(environ=os.environ) -> float:
    raw = environ.get(TOL_ENV)
    if raw is None or raw == "":
        return DEFAULT_NODE_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise UsageError(f"{TOL_ENV}={raw!r} is not a number") from None
    if not tol >= 0:
        raise UsageError(f"{TOL_ENV}={raw!r} must be non-negative")
    return tol


# ---------------------------------------------------------------------------
# data files


def _grid_from_json(g) -> UniformGrid:
    if not isinstance(g, dict):
        raise UsageError("'grid' must be an object")
    try:
        if "h" in g:
            return UniformGrid(float(g["a"]), float(g["h"]), int(g["m"]))
        return make_grid(float(g["a"]), float(g["c"]), int(g["m"]))
    except KeyError as e:
        raise UsageError(f"grid is missing field {e.args[0]!r}") from None
    except (TypeError, ValueError) as e:
        if isinstance(e, exc.SingquadError):
            raise
        raise UsageError(f"bad grid field: {e}") from None


def _spec_from_json(i, s) -> SingularitySpec:
    if not isinstance(s, dict) or "x" not in s or "jumps" not in s:
        raise UsageError(f"singularities[{i}] needs fields 'x' and 'jumps'")
    try:
        return SingularitySpec(float(s["x"]), tuple(float(v) for v in s["jumps"]))
    except exc.SingquadError:
        raise
    except (TypeError, ValueError) as e:
        raise UsageError(f"singularities[{i}]: {e}") from None


def load_datafile(path) -> tuple[SampleSet, list[SingularitySpec]]:
    """Read ``{"grid": {...}, "values": [...], "singularities": [{x, jumps}, ...]}``."""
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise UsageError(f"{path}: invalid JSON at line {e.lineno} column {e.colno}") from None
    if not isinstance(doc, dict):
        raise UsageError(f"{path}: top level must be an object")
    for key in ("grid", "values"):
        if key not in doc:
            raise UsageError(f"{path}: missing field {key!r}")
    grid = _grid_from_json(doc["grid"])
    try:
        samples = SampleSet(grid, [float(v) for v in doc["values"]])
    except (TypeError, ValueError) as e:
        if isinstance(e, exc.SingquadError):
            raise
        raise UsageError(f"{path}: bad 'values': {e}") from None
    specs = [_spec_from_json(i, s) for i, s in enumerate(doc.get("singularities", []))]
    return samples, specs


def dump_datafile(path, samples: SampleSet, specs=()) -> None:
    g = samples.grid
    doc = {
        "grid": {"a": g.a, "h": g.h, "m": g.m},
        "values": [float(v) for v in samples.values],
        "singularities": [{"x": s.xstar, "jumps": list(s.jumps)} for s in specs],
    }
    Path(path).write_text(json.dumps(doc, indent=1) + "\n")


def _parse_singularity(text: str) -> SingularitySpec:
    try:
        x, _, jumps = text.partition(":")
        return SingularitySpec(float(x), tuple(float(v) for v in jumps.split(",") if v.strip()))
    except (TypeError, ValueError) as e:
        if isinstance(e, exc.SingquadError):
            raise
        raise argparse.ArgumentTypeError(f"expected X:J0,J1,..., got {text!r}") from None


# ---------------------------------------------------------------------------
# commands


def cmd_integrate(args, out) -> int:
    samples, specs = load_datafile(args.input)
    rule = rule_weights(args.degree)
    classical = composite_integral(rule, samples)
    if args.no_correction:
        rows = [("classical", classical)]
    else:
        tol = node_tol_from_env()
        corrected = correct_precomputed(classical, rule, samples.grid, specs, tol)
        rows = [("classical", classical), ("corrected", corrected), ("correction", classical - corrected)]
    if args.format == "csv":
        out.write(",".join(k for k, _ in rows) + "\n")
        out.write(",".join(fmt(v) for _, v in rows) + "\n")
    else:
        for k, v in rows:
            out.write(f"{k} {fmt(v)}\n")
    return EXIT_OK


def cmd_correct(args, out) -> int:
    if args.h is not None:
        grid = UniformGrid(args.a, args.h, args.m)
    elif args.c is not None:
        grid = make_grid(args.a, args.c, args.m)
    else:
        raise UsageError("give either --c or --h")
    rule = rule_weights(args.degree)
    specs = args.singularity or []
    tol = node_tol_from_env()
    value = correct_precomputed(args.value, rule, grid, specs, tol)
    if args.verbose:
        for spec, p, c in singularity_corrections(rule, grid, specs, tol):
            out.write(f"# x={fmt(spec.xstar)} panel={p.panel} j={p.variant} alpha={fmt(p.alpha)} C={fmt(c)}\n")
    out.write(fmt(value) + "\n")
    return EXIT_OK


def cmd_refine(args, out) -> int:
    tol = node_tol_from_env()
    if args.mode == "simple":
        if args.fixed_xstar is not None:
            raise UsageError("--fixed-xstar applies to composite mode only")
        cfg = SimpleExperimentConfig(
            degree=args.degree, d=args.d, n_offset=args.n_offset, levels=args.levels, node_tol=tol
        )
        report = run_simple_refinement(cfg)
    else:
        kw = dict(d=args.d, n_offset=args.n_offset, points=_composite_points(args))
        if args.fixed_xstar is not None:
            cfg = CompositeExperimentConfig.fixed_singularity(args.degree, xstar=args.fixed_xstar, **kw)
        else:
            cfg = CompositeExperimentConfig.default(args.degree, node_tol=tol, **kw)
        report = run_composite_refinement(cfg)
    if args.format == "csv":
        text = report.to_csv()
    else:
        text = _plain_table(report)
    if args.out:
        Path(args.out).write_text(text)
    else:
        out.write(text)
    if args.plot_data:
        report.write_plot_data(args.plot_data)
    return EXIT_OK


def _composite_points(args):
    return default_points(args.degree)[: args.levels]


def _order_cell(o) -> str:
    if o is None:
        return "-"
    return o if isinstance(o, str) else f"{o:.5g}"


def _plain_table(report) -> str:
    lines = [f"{'level':>5} {'n':>6} {'h':>12} {'E classical':>13} {'O':>8} {'E corrected':>13} {'O':>8}"]
    for r in report.rows:
        oc, ok = _order_cell(r.order_classical), _order_cell(r.order_corrected)
        lines.append(
            f"{r.level:>5} {r.n:>6g} {r.h:>12.6g} {r.error_classical:>13.5e} {oc:>8} {r.error_corrected:>13.5e} {ok:>8}"
        )
    return "\n".join(lines) + "\n"


def cmd_constants(args, out) -> int:
    try:
        s = Fraction(args.s)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--s expects a number or fraction like 1/3, got {args.s!r}") from None
    if not 0 < s <= args.degree:
        raise UsageError(f"--s must lie in (0, {args.degree}] for degree {args.degree}, got {args.s}")
    ec = error_constants(args.degree, s)
    for i, v in enumerate((ec.c1, ec.c2, ec.c3, ec.c4), start=1):
        out.write(f"C{i} {fmt(v)} {v}\n")
    return EXIT_OK


def cmd_errata(args, out) -> int:
    out.write(erratum_report())
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _nonneg_int(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return v


def _pos_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="singquad", description="Newton-Cotes quadrature with jump corrections.")
    sub = p.add_subparsers(dest="command", required=True)

    degree = argparse.ArgumentParser(add_help=False)
    degree.add_argument("--degree", type=int, choices=SUPPORTED_DEGREES, default=1)

    q = sub.add_parser("integrate", parents=[degree], help="integrate a JSON data file")
    q.add_argument("input")
    q.add_argument("--no-correction", action="store_true")
    q.add_argument("--format", choices=("plain", "csv"), default="plain")
    q.set_defaults(func=cmd_integrate)

    q = sub.add_parser("correct", parents=[degree], help="post-process a classical composite value")
    q.add_argument("value", type=float)
    q.add_argument("--a", type=float, required=True)
    q.add_argument("--c", type=float)
    q.add_argument("--h", type=float)
    q.add_argument("--m", type=_pos_int, required=True)
    q.add_argument("--singularity", type=_parse_singularity, action="append", metavar="X:J0,J1,...")
    q.add_argument("--verbose", "-v", action="store_true")
    q.set_defaults(func=cmd_correct)

    q = sub.add_parser("refine", parents=[degree], help="grid-refinement study on the test function")
    q.add_argument("--mode", choices=("simple", "composite"), default="simple")
    q.add_argument("--levels", type=_pos_int, default=10)
    q.add_argument("--d", type=float, default=0.4)
    q.add_argument("--n-offset", type=_nonneg_int, default=0)
    q.add_argument("--fixed-xstar", type=float, help="pin the singularity (composite mode)")
    q.add_argument("--out")
    q.add_argument("--plot-data", metavar="STEM")
    q.add_argument("--format", choices=("csv", "plain"), default="csv")
    q.set_defaults(func=cmd_refine)

    q = sub.add_parser("constants", help="error constants around offset s")
    q.add_argument("--degree", type=int, choices=SUPPORTED_DEGREES, required=True)
    q.add_argument("--s", required=True)
    q.set_defaults(func=cmd_constants)

    q = sub.add_parser("errata", help="compare printed correction forms with the generator")
    q.set_defaults(func=cmd_errata)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args, out)
    except UsageError as e:
        err.write(f"singquad {args.command}: {e}\n")
        return EXIT_USAGE
    except exc.SingquadError as e:
        for cls, code in _EXIT_FOR:
            if isinstance(e, cls):
                break
        else:
            code = EXIT_USAGE if isinstance(e, (exc.InvalidGrid, exc.OutOfRange)) else EXIT_ERROR
        err.write(f"singquad {args.command}: {type(e).__name__}: {e}\n")
        return code


if __name__ == "__main__":
    sys.exit(main())
