"""
liestat -- command-line front end
=================================
Left-invariant Riemannian and statistical geometry on Lie groups.

Usage:
    liestat report <spec.json> [--json] [--classify] [--out PATH]
    liestat classify (--milnor --c A B C | --nonunimodular --xi X --eta Y |
                      --product --nu2 V | --sweep --grid lo:hi:step [--family F] |
                      (--milnor | --nonunimodular | --product) --grid lo:hi:step)
                     [--show-basis] [--json]
    liestat models (normal | t) [--nu N] [--alpha A] [--json]

Examples:
    # Geometry of a spec file, with the conjugate-symmetric classification
    python main.py report specs/milnor-131.json --classify

    # Kernel dimension for the e2 Milnor frame
    python main.py classify --milnor --c 1 1 0 --show-basis

    # Non-unimodular sweep over xi x eta
    python main.py classify --nonunimodular --grid 0:1.5:0.25

    # Student-t model at its flat alpha
    python main.py models t --nu 5 --alpha 2.5 --json

Exit codes: 0 ok, 2 input error, 3 validation error, 4 ambiguous rank decision.
The LIESTAT_RANK_TOL environment variable overrides the relative rank threshold.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Sequence

from liestat.classify import (
    SWEEP_FAMILIES,
    classify_nonunimodular,
    classify_product,
    classify_unimodular,
    parse_grid,
    sweep,
)
from liestat.config import Tolerances, load_tolerances
from liestat.errors import InputError, LiestatError
from liestat.models import NormalModel, TModel, normal_structure, t_structure
from liestat.report import (
    build_classify_report,
    build_models_report,
    build_report,
    build_sweep_report,
    render_json,
    render_text,
)
from liestat.spec_loader import load_group_spec

logger = logging.getLogger("liestat")


def configure_logging(verbose: bool = False) -> None:
    level = logging.DEBUG if verbose else logging.WARNING
    fmt   = "%(asctime)s [%(levelname)-8s] %(name)s -- %(message)s"
    logging.basicConfig(level=level, format=fmt, datefmt="%Y-%m-%d %H:%M:%S", stream=sys.stderr)


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad flags, which matches the input-error code."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        raise InputError(message)


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def build_arg_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Emit the machine-readable JSON report.")
    common.add_argument("--out", type=str, default=None, help="Write the report to PATH instead of stdout.")
    common.add_argument("--config", type=str, default=None, help="Tolerance config YAML (default: config/liestat-config.yaml).")
    common.add_argument("--flat-tol", type=float, default=None, help="Flatness tolerance for Hessian checks.")
    common.add_argument("--verbose", "-v", action="store_true", help="Enable DEBUG logging on stderr.")

    parser = _Parser(
        prog="liestat",
        description="Left-invariant Riemannian and statistical geometry on Lie groups.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__,
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    # ---- report ----
    p_report = sub.add_parser("report", parents=[common], help="Geometry report for a GroupSpec JSON file.")
    p_report.add_argument("spec", type=str, help="Path to a GroupSpec JSON document.")
    p_report.add_argument("--classify", action="store_true", help="Append the conjugate-symmetric kernel.")

    # ---- classify ----
    p_cls = sub.add_parser("classify", parents=[common], help="Kernel of the conjugate-symmetry system.")
    mode = p_cls.add_mutually_exclusive_group(required=True)
    mode.add_argument("--milnor", action="store_true", help="Unimodular Milnor frame (needs --c, or --grid for the ray (1, t, 1)).")
    mode.add_argument("--nonunimodular", action="store_true", help="Normalized non-unimodular frame (needs --xi, --eta, or --grid for xi x eta).")
    mode.add_argument("--product", action="store_true", help="2D solvable group times a line (needs --nu2, or --grid over nu2).")
    mode.add_argument("--sweep", action="store_true", help="Sweep a family over --grid.")
    p_cls.add_argument("--c", type=float, nargs=3, metavar=("C1", "C2", "C3"))
    p_cls.add_argument("--xi", type=float)
    p_cls.add_argument("--eta", type=float)
    p_cls.add_argument("--nu2", type=float)
    p_cls.add_argument("--grid", type=str, help="lo:hi:step")
    p_cls.add_argument(
        "--family", choices=list(SWEEP_FAMILIES), default=None,
        help="Sweep family (default: nonuni). milnor sweeps the ray (1, t, 1).",
    )
    p_cls.add_argument("--show-basis", action="store_true", help="Print the echelon basis of the kernel.")
    p_cls.add_argument("--workers", type=int, default=None, help="Worker threads for sweeps.")

    # ---- models ----
    p_models = sub.add_parser("models", parents=[common], help="Normal and Student-t statistical models.")
    p_models.add_argument("model", choices=["normal", "t"])
    p_models.add_argument("--nu", type=float, default=None, help="Degrees of freedom (t model).")
    p_models.add_argument("--alpha", type=float, default=1.0, help="alpha of the connection (default: 1).")

    return parser


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def _tolerances(args: argparse.Namespace, overrides: dict | None = None) -> Tolerances:
    merged = dict(overrides or {})
    if args.flat_tol is not None:
        merged["flatness"] = args.flat_tol
    if getattr(args, "workers", None) is not None:
        merged["sweep_workers"] = args.workers
    return load_tolerances(args.config, merged)


def cmd_report(args: argparse.Namespace) -> str:
    spec = load_group_spec(args.spec, validity=_tolerances(args).validity)
    tol = _tolerances(args, spec.tolerances)
    report = build_report(spec, tol, with_classification=args.classify)
    return render_json(report) if args.json else render_text(report, "report.txt.j2")


_FLAG_FAMILIES = {"milnor": "milnor", "nonunimodular": "nonuni", "product": "product"}


def _sweep_family(args: argparse.Namespace) -> str:
    """Family swept by ``--sweep --grid`` or by a family flag with ``--grid``."""
    if args.sweep:
        if not args.grid:
            raise InputError("--sweep requires --grid lo:hi:step")
        return args.family or "nonuni"
    flag = next(name for name in _FLAG_FAMILIES if getattr(args, name))
    point = [
        name for name, value in (("--c", args.c), ("--xi", args.xi), ("--eta", args.eta), ("--nu2", args.nu2))
        if value is not None
    ]
    if point:
        raise InputError(f"--grid sweeps --{flag}; drop {', '.join(point)}")
    family = _FLAG_FAMILIES[flag]
    if args.family not in (None, family):
        raise InputError(f"--family {args.family} conflicts with --{flag}")
    return family


def cmd_classify(args: argparse.Namespace) -> str:
    tol = _tolerances(args)
    if args.sweep or args.grid:
        family = _sweep_family(args)
        grid = parse_grid(args.grid)
        report = build_sweep_report(family, grid, sweep(family, grid, tol))
    elif args.milnor:
        if args.c is None:
            raise InputError("--milnor requires --c C1 C2 C3")
        space = classify_unimodular(*args.c, tolerances=tol)
        report = build_classify_report("milnor", args.c, space, args.show_basis)
    elif args.nonunimodular:
        if args.xi is None or args.eta is None:
            raise InputError("--nonunimodular requires --xi and --eta")
        space = classify_nonunimodular(args.xi, args.eta, tolerances=tol)
        report = build_classify_report("nonuni", [args.xi, args.eta], space, args.show_basis)
    else:
        if args.nu2 is None:
            raise InputError("--product requires --nu2")
        space = classify_product(args.nu2, tolerances=tol)
        report = build_classify_report("product_g2d_r", [args.nu2], space, args.show_basis)
    return render_json(report) if args.json else render_text(report, "classify.txt.j2")


def cmd_models(args: argparse.Namespace) -> str:
    tol = _tolerances(args)
    if args.model == "t":
        if args.nu is None:
            raise InputError("models t requires --nu")
        model: NormalModel | TModel = TModel(args.nu)
        stat = t_structure(args.nu)
    else:
        if args.nu is not None:
            raise InputError("--nu applies to the t model only")
        model = NormalModel()
        stat = normal_structure()
    report = build_models_report(model, stat, args.alpha, tol)
    return render_json(report) if args.json else render_text(report, "models.txt.j2")


COMMANDS = {
    "report":   cmd_report,
    "classify": cmd_classify,
    "models":   cmd_models,
}


def _emit(body: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(body)
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(body, encoding="utf-8")
    logger.info("report written to %s", path)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_arg_parser()
    try:
        args = parser.parse_args(argv)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code

    configure_logging(verbose=args.verbose)
    try:
        body = COMMANDS[args.command](args)
        _emit(body, args.out)
    except LiestatError as exc:
        logger.debug("command failed", exc_info=True)
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return InputError.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
