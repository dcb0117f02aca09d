"""Command line front end: batch evaluation, classification and verification.

Subcommands: ``eval``, ``curvature``, ``elasticity``, ``classify``,
``verify``. Point batches come from a headerless CSV file or an inline grid
descriptor ``grid:<lo>..<hi>x<lo>..<hi>[x...]:<k>`` (k equally spaced samples
per axis, inclusive endpoints, row-major order). Rows are emitted in input
order, CSV or JSONL, with identical numeric values in both encodings.

Exit codes: 0 success, 1 domain error, 2 parse/validation error, 3 numerical
failure. Singular points in a batch never fail the run; they are reported in
the per-row ``status`` column (``ok``, ``hicks_undefined``,
``allen_undefined``, ``domain_error``).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import Sequence

import numpy as np

from .classify import classify_allen_singular, classify_ces, classify_developable
from .elasticity import AllenUndefined, elasticity_report
from .errors import (
    DomainError,
    HicksUndefined,
    NumericalError,
    ParseError,
    ProdgeomError,
    SpecError,
    ValidationError,
)
from .funcspec import Acms, Composite, FunctionSpec, Homothetical, evaluate, parse_spec
from .geometry import gauss_kronecker
from .jets import fd_jet, jet_multivariate
from .verify import run_checks


def _parse_grid(desc: str) -> list:
    body = desc[len("grid:"):]
    axes_part, sep, count_part = body.rpartition(":")
    if not sep:
        raise ValidationError(f"grid descriptor {desc!r} is missing the sample count")
    try:
        k = int(count_part)
    except ValueError:
        raise ValidationError(f"grid sample count {count_part!r} is not an integer") from None
    if k < 1:
        raise ValidationError(f"grid sample count must be >= 1, got {k}")
    axes = []
    for axis in axes_part.split("x"):
        lo_s, sep, hi_s = axis.partition("..")
        if not sep:
            raise ValidationError(f"grid axis {axis!r} must look like <lo>..<hi>")
        try:
            lo, hi = float(lo_s), float(hi_s)
        except ValueError:
            raise ValidationError(f"grid axis {axis!r} has non-numeric bounds") from None
        axes.append([lo] if k == 1 else [float(v) for v in np.linspace(lo, hi, k)])
    points = [()]
    for axis in axes:
        points = [p + (v,) for p in points for v in axis]
    return points


def _load_points(source: str, n: int) -> list:
    if source.startswith("grid:"):
        points = _parse_grid(source)
    else:
        points = []
        try:
            with open(source, "r", encoding="utf-8") as fh:
                for lineno, line in enumerate(fh, start=1):
                    line = line.strip()
                    if not line:
                        continue
                    cells = line.split(",")
                    try:
                        points.append(tuple(float(c) for c in cells))
                    except ValueError:
                        raise ValidationError(
                            f"{source}:{lineno}: non-numeric coordinate in {line!r}"
                        ) from None
        except OSError as e:
            raise ValidationError(f"cannot read points file {source}: {e}") from None
    if not points:
        raise ValidationError(f"points source {source!r} produced no points")
    for idx, p in enumerate(points):
        if len(p) != n:
            raise ValidationError(
                f"point {idx + 1} has {len(p)} coordinates but the spec has {n} variables")
    return points


def _load_spec(path: str, relax_rho: bool) -> FunctionSpec:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ValidationError(f"cannot read spec file {path}: {e}") from None
    return parse_spec(text, relax_rho=relax_rho)


def _parse_pairs(text: str, n: int) -> list:
    pairs = []
    for chunk in text.split(";"):
        i_s, sep, j_s = chunk.partition(",")
        if not sep:
            raise ValidationError(f"pair {chunk!r} must look like i,j")
        try:
            i, j = int(i_s), int(j_s)
        except ValueError:
            raise ValidationError(f"pair {chunk!r} has non-integer indices") from None
        if not (1 <= i <= n and 1 <= j <= n) or i == j:
            raise ValidationError(f"pair ({i},{j}) invalid for {n} variables")
        pairs.append((i, j))
    return pairs


def _fd_gap(spec: FunctionSpec, point) -> float:
    exact = jet_multivariate(spec, point)
    approx = fd_jet(lambda p: evaluate(spec, p), point)
    g_gap = float(np.max(np.abs(approx.gradient - exact.gradient)))
    g_gap /= max(1.0, float(np.max(np.abs(exact.gradient))))
    h_gap = float(np.max(np.abs(approx.hessian - exact.hessian)))
    h_gap /= max(1.0, float(np.max(np.abs(exact.hessian))))
    return max(g_gap, h_gap)


def _emit(header: list, rows: list, fmt: str, out) -> None:
    if fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(["" if cell is None
                             else repr(cell) if isinstance(cell, float)
                             else cell
                             for cell in row])
    else:
        for row in rows:
            out.write(json.dumps(dict(zip(header, row)), separators=(",", ":")))
            out.write("\n")


def _coord_header(n: int) -> list:
    return [f"x{k + 1}" for k in range(n)]


def _run_eval(spec: FunctionSpec, points, fd_check: bool, fmt: str, out) -> int:
    header = _coord_header(spec.n) + ["value"]
    if fd_check:
        header.append("fd_gap")
    header.append("status")
    rows = []
    for p in points:
        cells = list(p)
        try:
            cells.append(evaluate(spec, p))
            if fd_check:
                cells.append(_fd_gap(spec, p))
            cells.append("ok")
        except DomainError:
            cells = list(p) + [None] * (len(header) - spec.n - 1) + ["domain_error"]
        rows.append(cells)
    _emit(header, rows, fmt, out)
    return 0


def _run_curvature(spec: FunctionSpec, points, fd_check: bool, fmt: str, out) -> int:
    header = _coord_header(spec.n) + ["value", "omega", "det_hessian", "gk"]
    if fd_check:
        header.append("fd_gap")
    header.append("status")
    rows = []
    for p in points:
        cells = list(p)
        try:
            rec = gauss_kronecker(spec, p)
            cells.extend([evaluate(spec, p), rec.omega, rec.hessian_det, rec.gk_curvature])
            if fd_check:
                cells.append(_fd_gap(spec, p))
            cells.append("ok")
        except DomainError:
            cells = list(p) + [None] * (len(header) - spec.n - 1) + ["domain_error"]
        rows.append(cells)
    _emit(header, rows, fmt, out)
    return 0


def _run_elasticity(spec: FunctionSpec, points, pairs, fd_check: bool, fmt: str,
                    out) -> int:
    if spec.n < 2:
        raise ValidationError("the elasticity subcommand needs a spec with >= 2 variables")
    if pairs is None:
        pairs = [(i, j) for i in range(1, spec.n + 1) for j in range(i + 1, spec.n + 1)]
    header = _coord_header(spec.n) + ["value"]
    header += [f"hicks_{i}_{j}" for i, j in pairs]
    header += [f"allen_{i}_{j}" for i, j in pairs]
    header.append("bordered_det")
    if fd_check:
        header.append("fd_gap")
    header.append("status")
    rows = []
    for p in points:
        cells = list(p)
        status = "ok"
        try:
            report = elasticity_report(spec, p)
            cells.append(evaluate(spec, p))
            for i, j in pairs:
                h = float(report.hicks[i - 1, j - 1])
                if h != h:  # nan marks an undefined pair
                    cells.append(None)
                    status = "hicks_undefined"
                else:
                    cells.append(h)
            for i, j in pairs:
                if report.allen is None:
                    cells.append(None)
                    if status == "ok":
                        status = "allen_undefined"
                else:
                    cells.append(float(report.allen[i - 1, j - 1]))
            cells.append(report.bordered_det)
            if fd_check:
                cells.append(_fd_gap(spec, p))
            cells.append(status)
        except DomainError:
            cells = list(p) + [None] * (len(header) - spec.n - 1) + ["domain_error"]
        rows.append(cells)
    _emit(header, rows, fmt, out)
    return 0


def _run_classify(spec: FunctionSpec, fmt: str, out) -> int:
    verdicts = []
    if isinstance(spec, Homothetical):
        verdicts.append(("developable", classify_developable(spec)))
        verdicts.append(("ces", classify_ces(spec)))
    elif isinstance(spec, Composite):
        verdicts.append(("allen_singular", classify_allen_singular(spec)))
        verdicts.append(("ces", classify_ces(spec)))
    elif isinstance(spec, Acms):
        # the CES form is an outer-composed product only after rewriting, so
        # only the constant-elasticity family applies symbolically
        verdicts.append(("ces", classify_ces(spec)))
    header = ["classifier", "family", "certificate", "notes"]
    rows = [[name, v.family, json.dumps(v.certificate, separators=(",", ":")), v.notes]
            for name, v in verdicts]
    _emit(header, rows, fmt, out)
    return 0


def _run_verify(seed: int, tol: float, out) -> int:
    results = run_checks(seed=seed, tol=tol)
    width = max(len(r.name) for r in results)
    for r in results:
        out.write(f"{'PASS' if r.passed else 'FAIL'}  {r.name:<{width}}  {r.detail}\n")
    failed = [r.name for r in results if not r.passed]
    out.write(f"{len(results) - len(failed)}/{len(results)} checks passed "
              f"(seed {seed}, tol {tol!r})\n")
    if failed:
        print(f"error: failing checks: {', '.join(failed)}", file=sys.stderr)
        return 3
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prodgeom",
        description="Curvature, substitution elasticities and family "
                    "classification for product-form function specs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp, needs_points: bool):
        sp.add_argument("--spec", required=True, help="path to a JSON spec file")
        if needs_points:
            sp.add_argument("--points", required=True,
                            help="points CSV file or grid:<lo>..<hi>x...:<k>")
            sp.add_argument("--fd-check", action="store_true",
                            help="add a finite-difference cross-check column")
        sp.add_argument("--format", choices=("csv", "jsonl"), default="csv")
        sp.add_argument("--tol", type=float, default=1e-8)
        sp.add_argument("--seed", type=int, default=42)
        sp.add_argument("--relax-rho", action="store_true",
                        help="permit CES specs with rho >= 1")

    add_common(sub.add_parser("eval", help="evaluate the spec on a point batch"),
               needs_points=True)
    add_common(sub.add_parser("curvature",
                              help="omega, Hessian determinant and curvature per point"),
               needs_points=True)
    ela = sub.add_parser("elasticity",
                         help="Hicks/Allen elasticities and bordered determinant")
    add_common(ela, needs_points=True)
    ela.add_argument("--pairs", help="variable pairs i,j[;i,j...] (default: all)")
    add_common(sub.add_parser("classify", help="symbolic family classification"),
               needs_points=False)
    ver = sub.add_parser("verify", help="run the named verification checks")
    ver.add_argument("--tol", type=float, default=1e-8)
    ver.add_argument("--seed", type=int, default=42)
    return parser


def run(argv: Sequence[str]) -> int:
    """Entry point returning the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as e:
        code = e.code
        return code if isinstance(code, int) else 2
    out = sys.stdout
    try:
        if args.command == "verify":
            if args.tol <= 0.0:
                raise ValidationError(f"--tol must be positive, got {args.tol!r}")
            return _run_verify(args.seed, args.tol, out)
        spec = _load_spec(args.spec, args.relax_rho)
        if args.command == "classify":
            return _run_classify(spec, args.format, out)
        points = _load_points(args.points, spec.n)
        if args.command == "eval":
            return _run_eval(spec, points, args.fd_check, args.format, out)
        if args.command == "curvature":
            return _run_curvature(spec, points, args.fd_check, args.format, out)
        pairs = _parse_pairs(args.pairs, spec.n) if args.pairs else None
        return _run_elasticity(spec, points, pairs, args.fd_check, args.format, out)
    except (ParseError, ValidationError, SpecError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except DomainError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (NumericalError, HicksUndefined, AllenUndefined) as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except ProdgeomError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
