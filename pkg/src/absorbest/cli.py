"""Command-line front end.

Verbs:

* ``curves``   - tabulate the analytic information curves and advantage
  ratios (fixed-length sweep, fixed-absorbance sweep, per-strategy-optimum
  sweep, facet-transmission sweep, or pass-count sweep).
* ``optimal``  - closed-form optimal lengths, the transmissions and
  information at the optimum, and the advantage there.
* ``simulate`` - run a Monte Carlo experiment from a config file and
  compare the measured information against the analytic value.
* ``w``        - evaluate the principal-branch Lambert W (debug utility).

Every output table starts with comment lines recording the fully resolved
configuration (``# key = value``, re-loadable for simulations) plus
informational annotations (``# name: value``), so each output is
re-derivable from its own header. Exit codes: 0 success, 2 configuration
error, 3 domain (physics/math validity) error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path

import numpy as np

from .channel import AbsorbanceChannel
from .config import parse_config_file, resolve_simulate_config
from .errors import ConfigError, DomainError
from .fisher import (
    estimator_info_dark,
    fisher_a_fock,
    fisher_multipass_coherent,
    fisher_multipass_fock,
)
from .lambertw import lambert_w0
from .optimize import optimum_report
from .simulate import group_fisher_estimate, run_heralded, run_single_arm, theory_overlay

OUTDIR_ENV = "ABSORBEST_OUTDIR"

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DOMAIN = 3

_CURVE_KINDS = ("fig2a", "fig2b", "fig2c", "supB", "multipass")
_DEFAULT_GRIDS = {
    "fig2a": (0.1, 5.0, 100),
    "fig2b": (0.1, 5.0, 100),
    "fig2c": (0.1, 10.0, 100),
    "supB": (0.05, 1.0, 96),
    "multipass": (1.0, 8.0, 141),
}


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def _out_path(path: str | None, default_name: str) -> Path:
    base = Path(os.environ.get(OUTDIR_ENV, "."))
    if path is None:
        return base / default_name
    p = Path(path)
    return p if p.is_absolute() else base / p


def _render_rows(header, rows, comments, fmt) -> list[str]:
    lines = list(comments)
    if fmt == "csv":
        lines.append(",".join(header))
        lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    else:
        cells = [list(header)] + [[_fmt(v) for v in row] for row in rows]
        widths = [max(len(r[c]) for r in cells) for c in range(len(header))]
        lines.extend(
            "  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip()
            for r in cells
        )
    return lines


def _write_table(path: Path, header, rows, comments, fmt) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(_render_rows(header, rows, comments, fmt)) + "\n")
    print(f"wrote {path}")


def _config_comments(resolved: dict[str, str]) -> list[str]:
    return [f"# {key} = {value}" for key, value in resolved.items()]


def _parse_grid(spec: str) -> np.ndarray:
    parts = spec.split(":")
    if len(parts) != 3:
        raise ConfigError(f"--grid expects START:STOP:POINTS, got {spec!r}")
    try:
        start, stop, points = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ConfigError(f"--grid expects numbers, got {spec!r}") from None
    if points < 1:
        raise ConfigError(f"--grid needs at least 1 point, got {points}")
    return np.linspace(start, stop, points)


def _cmd_curves(args: argparse.Namespace) -> int:
    grid_spec = args.grid or "{}:{}:{}".format(*_DEFAULT_GRIDS[args.kind])
    grid = _parse_grid(grid_spec)
    resolved = {"command": "curves", "kind": args.kind, "grid": grid_spec}

    if args.kind == "multipass":
        resolved["epsilon"] = _fmt(args.epsilon)
        rows = []
        for i in grid:
            fc = fisher_multipass_coherent(args.epsilon, float(i))
            fq = fisher_multipass_fock(args.epsilon, float(i))
            rows.append([float(i), fc, fq, fq / fc])
    elif args.kind == "supB":
        resolved.update({"a": _fmt(args.a), "beta": _fmt(args.beta)})
        rows = []
        for g in grid:
            classical = optimum_report(args.a, args.beta, float(g), "classical")
            fock = optimum_report(args.a, args.beta, float(g), "fock")
            rows.append(
                [
                    float(g),
                    classical.info_at_optimum,
                    fock.info_at_optimum,
                    fock.info_at_optimum / classical.info_at_optimum,
                ]
            )
    else:
        if args.kind == "fig2a":
            channel = AbsorbanceChannel(float(grid[0]), args.length, args.beta, args.gamma)
            curve = theory_overlay(channel, absorbances=grid)
            resolved["length"] = _fmt(args.length)
        elif args.kind == "fig2b":
            channel = AbsorbanceChannel(args.a, 1.0, args.beta, args.gamma)
            curve = theory_overlay(channel, lengths=grid)
            resolved["a"] = _fmt(args.a)
        else:  # fig2c: each strategy at its own optimal length
            channel = AbsorbanceChannel(float(grid[0]), 1.0, args.beta, args.gamma)
            curve = theory_overlay(channel, absorbances=grid, at_optimal_length=True)
        resolved.update({"beta": _fmt(args.beta), "gamma": _fmt(args.gamma)})
        rows = [
            [x, fc, fq, fq / fc]
            for x, fc, fq in zip(curve["x"], curve["classical"], curve["fock"])
        ]

    path = _out_path(args.out, f"curves_{args.kind}.csv")
    _write_table(
        path,
        ["x", "F_classical", "F_quantum", "Q"],
        rows,
        _config_comments(resolved),
        args.format,
    )
    return EXIT_OK


def _cmd_optimal(args: argparse.Namespace) -> int:
    classical = optimum_report(args.a, args.beta, args.gamma, "classical")
    fock = optimum_report(args.a, args.beta, args.gamma, "fock")
    advantage = fock.info_at_optimum / classical.info_at_optimum
    reports = [classical, fock]
    if args.fano is not None:
        reports.append(optimum_report(args.a, strategy="general", fano=args.fano))

    resolved = {
        "command": "optimal",
        "a": _fmt(args.a),
        "beta": _fmt(args.beta),
        "gamma": _fmt(args.gamma),
    }
    if args.fano is not None:
        resolved["fano"] = _fmt(args.fano)
    comments = _config_comments(resolved)
    comments.append(f"# advantage_at_optimum: {_fmt(advantage)}")
    header = [
        "strategy",
        "optimal_length",
        "optimal_total_transmission",
        "info_at_optimum",
    ]
    rows = [
        [r.strategy, r.optimal_length, r.optimal_total_transmission, r.info_at_optimum]
        for r in reports
    ]
    for line in _render_rows(header, rows, comments, args.format):
        print(line)
    if args.out:
        _write_table(_out_path(args.out, "optimal.csv"), header, rows, comments, args.format)
    return EXIT_OK


def _cmd_simulate(args: argparse.Namespace) -> int:
    entries = parse_config_file(args.config)
    cfg, resolved = resolve_simulate_config(
        args.kind, entries, origin=str(args.config), seed_override=args.seed
    )

    if args.kind == "heralded":
        estimates, outcomes = run_heralded(cfg)
        n0 = cfg.mean_heralds_per_window
        theory = fisher_a_fock(cfg.channel)
    else:
        estimates, outcomes = run_single_arm(cfg)
        n0 = cfg.source.mean
        if n0 > 0:
            eta = cfg.channel.total_transmission
            theory = (
                cfg.channel.length**2
                * eta**2
                * estimator_info_dark(eta, cfg.source.fano, cfg.detector.dark_var, n0)
            )
        else:
            theory = math.nan

    discard_count = sum(1 for o in outcomes if o.discarded)
    comments = _config_comments(resolved)
    comments.append(f"# command: simulate {args.kind}")
    comments.append(f"# theory_info_per_photon: {_fmt(theory)}")

    window_rows = []
    est_iter = iter(estimates)
    for i, o in enumerate(outcomes):
        est = math.nan if o.discarded else next(est_iter)
        window_rows.append(
            [i, o.n_signal, o.n_coincidence, o.n_idler, o.n_dark, o.discarded, est, theory]
        )
    out = _out_path(args.out, f"simulate_{args.kind}.csv")
    _write_table(
        out,
        [
            "window",
            "n_signal",
            "n_coincidence",
            "n_idler",
            "n_dark",
            "discarded",
            "estimate",
            "theory_info",
        ],
        window_rows,
        comments,
        args.format,
    )

    result = group_fisher_estimate(
        estimates, cfg.group_size, n0, discard_count=discard_count
    )
    values = np.asarray(estimates)
    group_rows = []
    for g in range(result.n_groups):
        block = values[g * cfg.group_size : (g + 1) * cfg.group_size]
        var = float(np.var(block, ddof=1))
        group_rows.append([g, block.size, var, 1.0 / (n0 * var)])
    groups_out = out.with_name(out.stem + ".groups" + (out.suffix or ".csv"))
    _write_table(
        groups_out,
        ["group", "n_estimates", "variance", "info_per_photon"],
        group_rows,
        comments,
        args.format,
    )

    dev = abs(result.mean_info_per_photon - theory)
    in_se = dev / result.std_error if result.std_error > 0 else math.inf
    print(
        f"measured info/photon = {result.mean_info_per_photon:.6g} "
        f"+/- {result.std_error:.2g} ({result.n_groups} groups, "
        f"{discard_count} discards); analytic = {theory:.6g}; "
        f"deviation = {in_se:.2f} standard errors"
    )
    return EXIT_OK


def _cmd_w(args: argparse.Namespace) -> int:
    print(_fmt(lambert_w0(args.x)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="absorbest",
        description=(
            "Precision bounds, optimal operating points, and Monte Carlo "
            "experiments for Beer-Lambert absorbance estimation."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--out",
            help=f"output path (relative paths resolve against ${OUTDIR_ENV} when set)",
        )
        p.add_argument(
            "--format",
            choices=("csv", "table"),
            default="csv",
            help="output format (default csv)",
        )

    curves = sub.add_parser("curves", help="tabulate analytic curves")
    curves.add_argument("--kind", choices=_CURVE_KINDS, required=True)
    curves.add_argument("--a", type=float, default=1.0, help="absorbance")
    curves.add_argument("--length", type=float, default=1.0, help="path length")
    curves.add_argument("--beta", type=float, default=0.0)
    curves.add_argument("--gamma", type=float, default=1.0)
    curves.add_argument(
        "--epsilon",
        type=float,
        default=0.5,
        help="single-pass transmission (multipass only)",
    )
    curves.add_argument("--grid", help="grid as START:STOP:POINTS")
    add_common(curves)
    curves.set_defaults(func=_cmd_curves)

    optimal = sub.add_parser("optimal", help="closed-form optimal lengths")
    optimal.add_argument("--a", type=float, required=True)
    optimal.add_argument("--beta", type=float, default=0.0)
    optimal.add_argument("--gamma", type=float, default=1.0)
    optimal.add_argument(
        "--fano", type=float, help="also report the general-statistics optimum"
    )
    add_common(optimal)
    optimal.set_defaults(func=_cmd_optimal)

    simulate = sub.add_parser("simulate", help="run a Monte Carlo experiment")
    simulate.add_argument("--kind", choices=("heralded", "single-arm"), required=True)
    simulate.add_argument("--config", required=True, help="flat key=value config file")
    simulate.add_argument("--seed", type=int, help="override run.seed")
    add_common(simulate)
    simulate.set_defaults(func=_cmd_simulate)

    w = sub.add_parser("w", help="principal-branch Lambert W")
    w.add_argument("x", type=float)
    w.set_defaults(func=_cmd_w)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except DomainError as err:
        print(f"domain error: {err}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
