"""Command-line front end.

Five subcommands expose the library surface:

* ``spectrum`` — enumerate cavity modes below a frequency cap and print
  them as CSV or JSON.
* ``validate`` — compare computed spectra against the embedded reference
  tables; per-wedge summaries go to stdout, per-row detail to stderr, and
  the exit code is 1 as soon as any tabulated theory value is missed.
* ``ladder-check`` — certify the highest-weight annihilation and the
  Casimir eigenvalue of a ladder-built profile on a chosen grid.
* ``oracle`` — run the finite-difference eigensolver for one azimuthal
  weight and print the eigenvalue/degree estimates.
* ``eval`` — evaluate one special function at a point.

Units at the interface are millimetres and gigahertz (the tables'
presentation units); everything internal is SI.  Machine-readable output
goes to stdout only, diagnostics to stderr only, and identical invocations
produce byte-identical stdout.  Exit codes: 0 success, 1 validation
failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import angular, modes, report
from .oracle import legendre_spectrum_fd
from .specfun import ConvergenceError, ln_gamma, legendre_theta, riccati_derivative, spherical_j

__all__ = ["main"]

_HIGHEST_WEIGHT_BOUND = 1e-8
_CASIMIR_BOUND = 1e-5


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wedgemodes",
        description="Eigenmode spectra of spherical cavities with conducting wedges.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_spectrum = sub.add_parser("spectrum", help="enumerate modes below a frequency cap")
    p_spectrum.add_argument("--radius-mm", type=float, required=True, help="sphere radius, mm")
    p_spectrum.add_argument("--wedge-deg", type=float, required=True, help="wedge opening, degrees")
    p_spectrum.add_argument("--fmax-ghz", type=float, required=True, help="frequency cap, GHz")
    p_spectrum.add_argument("--pol", choices=("te", "tm", "both"), default="both")
    p_spectrum.add_argument("--format", choices=("csv", "json"), default="csv")

    p_val = sub.add_parser("validate", help="compare against the embedded reference tables")
    group = p_val.add_mutually_exclusive_group()
    group.add_argument("--wedge-deg", type=float, help="validate one wedge block")
    group.add_argument("--all", action="store_true", help="validate every block (default)")
    p_val.add_argument("--tol-pct", type=float, default=0.2,
                       help="tolerance against tabulated theory values, percent")

    p_lad = sub.add_parser("ladder-check", help="certify ladder-algebra identities")
    p_lad.add_argument("--m", type=float, default=2.0 / 3.0, help="azimuthal weight")
    p_lad.add_argument("--k", type=int, default=1, help="lowering steps for the tesseral check")
    p_lad.add_argument("--grid", type=int, default=4096, help="grid size")

    p_orc = sub.add_parser("oracle", help="finite-difference eigensolver")
    p_orc.add_argument("--m", type=float, required=True, help="azimuthal weight")
    p_orc.add_argument("--grid", type=int, default=4000, help="grid size")
    p_orc.add_argument("--count", type=int, default=3, help="number of eigenvalues")

    p_eval = sub.add_parser("eval", help="evaluate one special function")
    p_eval.add_argument("--fn", choices=("sph-j", "riccati-d", "legendre-theta", "ln-gamma"),
                        required=True)
    p_eval.add_argument("--nu", type=float, help="order / degree")
    p_eval.add_argument("--m", type=float, help="azimuthal weight (legendre-theta)")
    p_eval.add_argument("--x", type=float, required=True,
                        help="argument (radians for legendre-theta)")
    return parser


def _emit(data: bytes) -> None:
    sys.stdout.buffer.write(data)
    sys.stdout.buffer.flush()


def _cmd_spectrum(args: argparse.Namespace) -> int:
    config = modes.WedgeConfig.from_degrees(args.wedge_deg, args.radius_mm * 1e-3)
    pols = {"te": frozenset(("TE",)), "tm": frozenset(("TM",)),
            "both": frozenset(("TM", "TE"))}[args.pol]
    records = modes.enumerate_spectrum(config, args.fmax_ghz * 1e9, pols)
    _emit(report.render(records, args.format, kind="spectrum"))
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    if args.wedge_deg is not None:
        wedges = [args.wedge_deg]
    else:
        wedges = sorted({row.wedge_deg for row in report.load_reference()})
    tol = args.tol_pct / 100.0
    lines = ["wedge_deg,matched,total,mean_abs_dev_vs_hfss_pct,within_tol,status"]
    failed = False
    for wedge in wedges:
        block = report.block_reference(wedge)
        config = modes.WedgeConfig.from_degrees(wedge, 0.015)
        cap_hz = 1.3 * max(row.f_theory_ghz for row in block) * 1e9
        records = modes.enumerate_spectrum(config, cap_hz)
        rows, mean_abs = report.compare(records, block, tol)
        matched = sum(row.matched for row in rows)
        within = sum(row.within_tol for row in rows)
        ok = within == len(rows)
        failed = failed or not ok
        lines.append(
            f"{wedge:g},{matched},{len(rows)},{100.0 * mean_abs:.4f},"
            f"{within},{'pass' if ok else 'fail'}"
        )
        for row in rows:
            if not row.matched:
                print(
                    f"wedge {wedge:g} mode {row.reference.mode_index}: "
                    f"no computed mode matches "
                    f"({row.reference.polarisation}, m={row.reference.m:.6f}, "
                    f"k={row.reference.k})",
                    file=sys.stderr,
                )
            elif not row.within_tol:
                print(
                    f"wedge {wedge:g} mode {row.reference.mode_index}: "
                    f"computed {row.f_computed_ghz:.4f} GHz vs tabulated "
                    f"{row.reference.f_theory_ghz:.4f} GHz "
                    f"({100.0 * row.dev_vs_theory:+.3f}% > {args.tol_pct:g}%)",
                    file=sys.stderr,
                )
    _emit(("\n".join(lines) + "\n").encode("utf-8"))
    return 1 if failed else 0


def _cmd_ladder_check(args: argparse.Namespace) -> int:
    grid = angular.uniform_grid(args.grid)
    mask = angular.interior_mask(grid)

    sect = angular.sectoral(args.m, grid)
    raised = angular.apply_raising(sect)
    highest = float(np.max(np.abs(raised.values[mask])) / np.max(np.abs(sect.values)))

    tess = angular.build_tesseral(args.m, args.k, grid)
    target = (args.m + args.k) * (args.m + args.k + 1.0)
    quotient = angular.casimir_eigenvalue_estimate(tess)
    casimir = abs(quotient - target) / target

    lines = ["check,m,k,grid,value,bound,status"]
    failed = False
    for name, k_cell, value, bound in (
        ("highest_weight", "", highest, _HIGHEST_WEIGHT_BOUND),
        ("casimir_quotient", str(args.k), casimir, _CASIMIR_BOUND),
    ):
        ok = value < bound
        failed = failed or not ok
        lines.append(
            f"{name},{args.m:.6f},{k_cell},{args.grid},{value:.3e},{bound:.1e},"
            f"{'pass' if ok else 'fail'}"
        )
    _emit(("\n".join(lines) + "\n").encode("utf-8"))
    return 1 if failed else 0


def _cmd_oracle(args: argparse.Namespace) -> int:
    result = legendre_spectrum_fd(args.m, args.grid, args.count)
    lines = ["index,lambda,nu"]
    for i, (lam, nu) in enumerate(zip(result.lambdas, result.nus)):
        lines.append(f"{i},{lam:.6f},{nu:.6f}")
    _emit(("\n".join(lines) + "\n").encode("utf-8"))
    return 0


def _cmd_eval(args: argparse.Namespace) -> int:
    def need(flag: str, value: float | None) -> float:
        if value is None:
            raise ValueError(f"--fn {args.fn} requires {flag}")
        return value

    if args.fn == "sph-j":
        value = spherical_j(need("--nu", args.nu), args.x)
    elif args.fn == "riccati-d":
        value = riccati_derivative(need("--nu", args.nu), args.x)
    elif args.fn == "legendre-theta":
        value = legendre_theta(need("--nu", args.nu), need("--m", args.m), args.x)
    else:
        value = ln_gamma(args.x)
    _emit(f"{value:.12g}\n".encode("utf-8"))
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "spectrum": _cmd_spectrum,
        "validate": _cmd_validate,
        "ladder-check": _cmd_ladder_check,
        "oracle": _cmd_oracle,
        "eval": _cmd_eval,
    }
    try:
        return handlers[args.command](args)
    except (ValueError, ConvergenceError, modes.RootNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except report.ReferenceIntegrityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
