"""Command-line front end: ``verify``, ``tabulate`` and ``sweep``.

Exit codes: 0 all checks pass, 1 at least one check failed (or a
numerical failure while tabulating), 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError
from .measures import DeformationParams, even_density, gaussian, odd_density
from .odesys import analytic_pair
from .verification import CHECK_NAMES, verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

TARGETS = ("density-even", "density-odd", "pair-K", "pair-I", "gaussian")


class UsageError(Exception):
    pass


def _fmt(x: float) -> str:
    return f"{x:.10g}"


def _params(mu: float, lam: float) -> DeformationParams:
    try:
        return DeformationParams(mu, lam)
    except DomainError as exc:
        raise UsageError(f"invalid parameters: {exc} (constraints: μ > −1/2, λ > 0)") from exc


def _tol(tol: Optional[float]) -> Optional[float]:
    if tol is not None and not (math.isfinite(tol) and tol > 0):
        raise UsageError(f"--tol must be a finite number > 0, got {tol}")
    return tol


def _write(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _grid(r_spec: Sequence[str], allow_zero: bool) -> np.ndarray:
    try:
        r_min, r_max, steps = float(r_spec[0]), float(r_spec[1]), int(r_spec[2])
    except ValueError as exc:
        raise UsageError(f"--r expects MIN MAX STEPS, got {' '.join(r_spec)}") from exc
    lowest_ok = r_min >= 0 if allow_zero else r_min > 0
    if not lowest_ok:
        raise UsageError(f"--r MIN must be {'>= 0' if allow_zero else '> 0'}, got {r_min}")
    if steps < 1:
        raise UsageError(f"--r STEPS must be >= 1, got {steps}")
    if steps == 1:
        if r_min != r_max:
            raise UsageError("a single-point grid needs MIN == MAX")
    elif not r_min < r_max:
        raise UsageError(f"--r needs MIN < MAX, got {r_min} >= {r_max}")
    return np.linspace(r_min, r_max, steps)


def cmd_verify(args) -> int:
    params = _params(args.mu, args.lam)
    report = verify(params, _tol(args.tol))
    _write(report.to_json(), args.out)
    for c in report.checks:
        if c.status != "pass":
            print(f"{c.name}: {c.status} (metric={c.metric}, tolerance={c.tolerance}) {c.detail}", file=sys.stderr)
    return EXIT_OK if report.status == "pass" else EXIT_FAIL


def cmd_tabulate(args) -> int:
    target = args.target
    params = _params(args.mu, args.lam)
    grid = _grid(args.r, allow_zero=target == "gaussian")
    if target in ("pair-K", "pair-I"):
        if args.lam != 1.0:
            raise UsageError("solution pairs are tabulated for lambda = 1 only")
        pair = analytic_pair(target[-1], params.mu)
        header = "r,even,odd"
        rows = [f"{_fmt(r)},{_fmt(pair.even(r))},{_fmt(pair.odd(r))}" for r in map(float, grid)]
    else:
        density = {
            "density-even": lambda: even_density(params),
            "density-odd": lambda: odd_density(params),
            "gaussian": lambda: gaussian(params.lam),
        }[target]()
        header = "r,value"
        rows = [f"{_fmt(r)},{_fmt(density(r))}" for r in map(float, grid)]
    _write("\n".join([header, *rows]) + "\n", args.out)
    return EXIT_OK


def _parse_mu_list(text: str) -> list[float]:
    items = [t.strip() for t in text.split(",") if t.strip()]
    if not items:
        raise UsageError("--mu needs at least one value")
    try:
        return [float(t) for t in items]
    except ValueError as exc:
        raise UsageError(f"--mu expects comma-separated numbers, got {text!r}") from exc


def cmd_sweep(args) -> int:
    mus = _parse_mu_list(args.mu)
    all_params = [_params(mu, args.lam) for mu in mus]
    tol = _tol(args.tol)
    lines = [",".join(("mu", *CHECK_NAMES, "status"))]
    ok = True
    for params in all_params:
        report = verify(params, tol)
        by_name = {c.name: c for c in report.checks}
        cells = []
        for name in CHECK_NAMES:
            c = by_name[name]
            cells.append("error" if c.metric is None else _fmt(c.metric))
        lines.append(",".join((_fmt(params.mu), *cells, report.status)))
        ok &= report.status == "pass"
        print(f"mu={_fmt(params.mu)}: {report.status}", file=sys.stderr)
    _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="musbs", description="Verify and tabulate the two-measure mu-deformed Segal-Bargmann structure."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, mu_type=float, mu_required=True):
        p.add_argument("--mu", type=mu_type, required=mu_required, help="deformation parameter, mu > -1/2")
        p.add_argument("--lambda", dest="lam", type=float, default=1.0, help="scale lambda > 0 (default 1)")
        p.add_argument("--out", default=None, help="output file (default: stdout)")

    v = sub.add_parser("verify", help="run all checks for one parameter set and emit a JSON report")
    common(v)
    v.add_argument("--tol", type=float, default=None, help="override every check tolerance")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("tabulate", help="write r,value (or r,even,odd) rows on a uniform grid")
    t.add_argument("target", choices=TARGETS)
    common(t, mu_required=False)
    t.set_defaults(mu=0.0)
    t.add_argument("--r", nargs=3, metavar=("MIN", "MAX", "STEPS"), default=("0.1", "4", "40"))
    t.set_defaults(func=cmd_tabulate)

    s = sub.add_parser("sweep", help="run verify for a comma-separated list of mu values")
    common(s, mu_type=str)
    s.add_argument("--tol", type=float, default=None, help="override every check tolerance")
    s.set_defaults(func=cmd_sweep)
    return parser


def _join_negative_values(argv: Sequence[str]) -> list[str]:
    """Rewrite ``--mu -0.4,0`` as ``--mu=-0.4,0`` so argparse does not read
    the value as an option."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok == "--mu":
            nxt = next(it, None)
            if nxt is None:
                out.append(tok)
            elif nxt.startswith("-") and len(nxt) > 1 and (nxt[1].isdigit() or nxt[1] == "."):
                out.append(f"--mu={nxt}")
            else:
                out.extend((tok, nxt))
        else:
            out.append(tok)
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_negative_values(argv))
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"musbs {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ArithmeticError, RuntimeError, OSError) as exc:
        print(f"musbs {args.command}: failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
