"""Command-line interface: solve, compare, flow, verify.

Exit codes: 0 success, 1 verification failure, 2 usage/config error,
3 numeric failure.
"""

import argparse
import json
import sys
from dataclasses import replace

import numpy as np

from . import __version__
from .basis import BasisSpec
from .config import parse_config
from .errors import ConfigError, NumericError, ValidationError
from .flow import FlowSpec, flow_levels, ordering_report, pointwise_ordering, psd_gap
from .hamiltonian import optimize_basis_scale, solve_levels
from .verify import list_criteria, run_criteria


def _fmt(x):
    """Machine format: 17 significant digits."""
    return format(float(x), ".17g")


def _emit(rows, header, cfg, out_format, out_path, extra_meta=None):
    if out_format == "csv":
        lines = [",".join(header)]
        for row in rows:
            lines.append(",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row))
        text = "\n".join(lines) + "\n"
    else:
        meta = {"tool": "specorder", "version": __version__, "config": cfg.raw}
        if extra_meta:
            meta.update(extra_meta)
        payload = {
            "meta": meta,
            "rows": [dict(zip(header, row)) for row in rows],
        }
        text = json.dumps(payload, indent=2) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _resolve_basis(cfg, kinetic, potential, l, target=0):
    """Basis at the configured size; b optimized for the target level when
    set to auto."""
    if cfg.basis_b is not None:
        return BasisSpec(l=l, size=cfg.basis_size, b=cfg.basis_b)
    template = BasisSpec(l=l, size=cfg.basis_size, b=1.0)
    opt = optimize_basis_scale(kinetic, potential, template, target=target)
    return replace(template, b=opt.b)


def cmd_solve(cfg):
    problem = cfg.problems["problem"]
    rows = []
    for l in cfg.l_values:
        basis = _resolve_basis(cfg, problem.kinetic, problem.potential, l)
        for level in solve_levels(problem.kinetic, problem.potential, basis, cfg.level_count):
            rows.append((level.n, level.l, level.E, basis.size, basis.b))
    _emit(rows, ("n", "l", "E", "basis_N", "b_used"), cfg, cfg.out_format, cfg.out_path)
    return 0


def cmd_compare(cfg):
    p1 = cfg.problems["problem1"]
    p2 = cfg.problems["problem2"]
    rows = []
    gaps = {}
    for l in cfg.l_values:
        # shared basis per l: b tuned on endpoint 1 then frozen
        basis = _resolve_basis(cfg, p1.kinetic, p1.potential, l)
        spec = FlowSpec(
            endpoint1=(p1.kinetic, p1.potential),
            endpoint2=(p2.kinetic, p2.potential),
            basis=basis,
            levels=tuple((n, l) for n in range(cfg.level_count)),
        )
        gaps[l] = psd_gap(spec, l=l)
        report = ordering_report(spec, tol=cfg.verdict_tol)
        for (n, ll), verdict in sorted(report.items()):
            rows.append((n, ll, verdict.e1, verdict.e2, verdict.delta, verdict.endpoint_ordered))
    meta = {"psd_gap": {str(l): g for l, g in gaps.items()}}
    _emit(rows, ("n", "l", "E1", "E2", "dE", "ordered"), cfg, cfg.out_format, cfg.out_path, meta)
    if cfg.out_format == "csv" and cfg.out_path is None:
        for l, g in sorted(gaps.items()):
            sys.stdout.write(f"# psd_gap l={l}: {_fmt(g)}\n")
    return 0


def cmd_flow(cfg):
    p1 = cfg.problems["problem1"]
    p2 = cfg.problems["problem2"]
    rows = []
    max_residual = 0.0
    monotone = True
    for l in cfg.l_values:
        basis = _resolve_basis(cfg, p1.kinetic, p1.potential, l)
        spec = FlowSpec(
            endpoint1=(p1.kinetic, p1.potential),
            endpoint2=(p2.kinetic, p2.potential),
            basis=basis,
            a_grid=np.linspace(0.0, 1.0, cfg.flow_grid),
            levels=tuple((n, l) for n in range(cfg.level_count)),
        )
        result = flow_levels(spec, tol=cfg.verdict_tol)
        max_residual = max(max_residual, result.max_hf_residual)
        monotone = monotone and result.monotone
        for (n, ll), lf in sorted(result.levels.items()):
            for k in range(lf.a.size):
                rows.append(
                    (
                        float(lf.a[k]),
                        n,
                        ll,
                        float(lf.energy[k]),
                        float(lf.hf_expectation[k]),
                        float(lf.fd_derivative[k]),
                        float(lf.fd_derivative[k] - lf.hf_expectation[k]),
                        bool(lf.degenerate[k]),
                    )
                )
    meta = {"max_residual": max_residual, "monotone": monotone}
    _emit(
        rows,
        ("a", "n", "l", "E", "hf_expectation", "fd_derivative", "residual", "degenerate"),
        cfg,
        cfg.out_format,
        cfg.out_path,
        meta,
    )
    if cfg.out_format == "csv" and cfg.out_path is None:
        sys.stdout.write(
            f"# max_residual: {_fmt(max_residual)} monotone: {monotone}\n"
        )
    return 0


def cmd_verify(args):
    if args.list:
        for name in list_criteria():
            print(name)
        return 0
    results = run_criteria()
    failed = 0
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(f"{status} {res.name}: measured={res.measured:g} tolerance={res.tolerance:g} ({res.details})")
        if not res.passed:
            failed += 1
    print(f"{len(results) - failed}/{len(results)} criteria passed")
    return 0 if failed == 0 else 1


def _load_config(args, prefixes):
    if not args.config:
        raise ConfigError("--config is required for this command")
    try:
        with open(args.config) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    cfg = parse_config(text, problem_prefixes=prefixes)
    if args.format:
        cfg.out_format = args.format
    if args.out:
        cfg.out_path = args.out
    if args.levels:
        cfg.level_count = args.levels
    if getattr(args, "grid", None):
        cfg.flow_grid = args.grid
    return cfg


def build_parser():
    parser = argparse.ArgumentParser(
        prog="specorder",
        description="Radial bound-state spectra and eigenvalue-ordering certificates.",
    )
    parser.add_argument("--version", action="version", version=f"specorder {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, grid=False):
        p.add_argument("--config", help="path to a run configuration file")
        p.add_argument("--format", choices=("csv", "json"), help="output format override")
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--levels", type=int, help="number of levels per l block")
        if grid:
            p.add_argument("--grid", type=int, help="number of interpolation samples")

    common(sub.add_parser("solve", help="solve one problem for its lowest levels"))
    common(sub.add_parser("compare", help="solve two problems and report ordering"))
    common(sub.add_parser("flow", help="interpolate between two problems"), grid=True)
    pv = sub.add_parser("verify", help="run the built-in verification suite")
    pv.add_argument("--list", action="store_true", help="list criteria without running")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "solve":
            return cmd_solve(_load_config(args, ("problem",)))
        if args.command == "compare":
            return cmd_compare(_load_config(args, ("problem1", "problem2")))
        if args.command == "flow":
            return cmd_flow(_load_config(args, ("problem1", "problem2")))
        return cmd_verify(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
