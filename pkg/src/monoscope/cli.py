"""monoscope command line: order / eval / related / oracle / replicate.

Exit codes: 0 success, 1 replication failure, 2 input error, 3 improper or
undefined value requested, 4 unsupported oracle configuration.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from .chains import (
    DEFAULT_TOL,
    antiderivative,
    chi_n,
    is_n_related,
    monotonicity_order,
    phi_n,
)
from .envelope import build_envelope, psi_eval
from .errors import (
    ImproperValueError,
    InputError,
    MonoscopeError,
    UnsupportedOracleError,
)
from .extreal import format_real
from .operators import load_operator
from .oracles import SampleSpec, oracle_from_dict, oracle_order, sample_graph
from .replicate import CASES, run_case


def _parse_order(text: str):
    if text.strip().lower() in {"inf", "infinity", "oo"}:
        return math.inf
    try:
        return int(text)
    except ValueError as exc:
        raise InputError(f"--n must be a positive integer or 'inf', got {text!r}") from exc


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _parse_vector(text: str) -> list[float]:
    try:
        return [float(p) for p in text.split(",") if p.strip() != ""]
    except ValueError as exc:
        raise InputError(f"cannot parse vector {text!r}") from exc


def _parse_query(text: str):
    if ";" not in text:
        raise InputError(f"query {text!r} must look like 'x1,x2;y1,y2'")
    xs, ys = text.split(";", 1)
    return _parse_vector(xs), _parse_vector(ys)


def _load_queries(path: str, with_y: bool = True):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(data, list):
        raise InputError("query file must hold a JSON list")
    out = []
    for entry in data:
        if isinstance(entry, dict):
            if with_y:
                out.append((_vec(entry.get("x")), _vec(entry.get("y"))))
            else:
                out.append(_vec(entry.get("x")))
        elif isinstance(entry, list) and with_y:
            if len(entry) != 2:
                raise InputError(f"query {entry!r} must be [x, y]")
            out.append((_vec(entry[0]), _vec(entry[1])))
        elif not with_y:
            out.append(_vec(entry))
        else:
            raise InputError(f"cannot interpret query {entry!r}")
    return out


def _vec(v) -> list[float]:
    if v is None:
        raise InputError("query entry is missing a coordinate")
    if isinstance(v, (int, float)):
        return [float(v)]
    return [float(t) for t in v]


def _emit(rows: list[dict], columns: list[str], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(rows, indent=2))
        return
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=columns)
        writer.writeheader()
        writer.writerows(rows)
        sys.stdout.write(buf.getvalue())
        return
    widths = {c: max(len(c), *(len(str(r[c])) for r in rows)) if rows else len(c) for c in columns}
    print("  ".join(c.ljust(widths[c]) for c in columns))
    for r in rows:
        print("  ".join(str(r[c]).ljust(widths[c]) for c in columns))


def _fmt_vec(v) -> str:
    return ",".join(format_real(float(t)) for t in np.atleast_1d(v))


# -- subcommands ------------------------------------------------------------------


def cmd_order(args) -> int:
    T = load_operator(args.graph)
    report = monotonicity_order(T, tol=args.tol)
    if report.order == math.inf:
        line = "order: inf"
        payload = {"order": "inf"}
    else:
        w = report.witness
        line = (
            f"order: {report.order}, witness length {len(w.indices)}\n"
            f"witness indices: {' '.join(map(str, w.indices))}\n"
            f"witness cycle sum: {format_real(w.cycle_sum)}"
        )
        payload = {
            "order": report.order,
            "witness": list(w.indices),
            "cycle_sum": w.cycle_sum,
        }
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(line)
    return 0


def _gather_queries(args, with_y: bool = True):
    queries = []
    for text in args.at or []:
        if with_y:
            queries.append(_parse_query(text))
        else:
            queries.append(_parse_vector(text))
    if args.queries:
        queries.extend(_load_queries(args.queries, with_y=with_y))
    if not queries:
        raise InputError("no queries given; use --at or --queries")
    return queries


def cmd_eval(args) -> int:
    T = load_operator(args.graph)
    rows = []
    if args.fn == "antideriv":
        for x in _gather_queries(args, with_y=False):
            val = antiderivative(T, args.base, x)
            rows.append({"x": _fmt_vec(x), "value": format_real(val.value)})
        _emit(rows, ["x", "value"], args.format)
        return 0
    if args.n is None:
        raise InputError(f"--n is required for fn={args.fn}")
    queries = _gather_queries(args)
    if args.fn == "psi":
        E = build_envelope(T, args.n)
        for x, y in queries:
            val = psi_eval(E, (x, y))
            rows.append({"x": _fmt_vec(x), "y": _fmt_vec(y), "value": format_real(val.value)})
        _emit(rows, ["x", "y", "value"], args.format)
        return 0
    fn = phi_n if args.fn == "phi" else chi_n
    for x, y in queries:
        cv = fn(T, args.n, (x, y))
        chain = " ".join(map(str, cv.argchain)) if cv.argchain else "-"
        rows.append(
            {
                "x": _fmt_vec(x),
                "y": _fmt_vec(y),
                "value": format_real(cv.value.value),
                "chain": chain,
            }
        )
    _emit(rows, ["x", "y", "value", "chain"], args.format)
    return 0


def cmd_related(args) -> int:
    T = load_operator(args.graph)
    rows = []
    for x, y in _gather_queries(args):
        rel = is_n_related(T, args.n, (x, y), tol=args.tol)
        nn = math.inf if args.n == math.inf else args.n - 1
        v = phi_n(T, nn, (x, y)).value
        c = T.space.pair(x, y)
        rows.append(
            {
                "x": _fmt_vec(x),
                "y": _fmt_vec(y),
                "related": "yes" if rel else "no",
                "phi": format_real(v.value),
                "c": format_real(c),
            }
        )
    _emit(rows, ["x", "y", "related", "phi", "c"], args.format)
    return 0


def _sample_spec(args) -> SampleSpec:
    return SampleSpec(
        grid_count=args.sample_count,
        lo=args.sample_lo,
        hi=args.sample_hi,
        radii=tuple(_parse_vector(args.sample_radii)),
        circle_count=args.sample_circle,
        magnitudes=tuple(_parse_vector(args.sample_magnitudes)),
    )


def cmd_oracle(args) -> int:
    try:
        with open(args.oracle) as fh:
            o = oracle_from_dict(json.load(fh))
    except OSError as exc:
        raise InputError(f"cannot read {args.oracle}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{args.oracle} is not valid JSON: {exc}") from exc
    if args.fn == "order":
        got = oracle_order(o)
        line = {"order": "inf" if got == math.inf else got}
        if args.format == "json":
            print(json.dumps(line))
        else:
            print(f"order: {line['order']}")
        if args.cross_check:
            S = sample_graph(o, _sample_spec(args))
            sampled = monotonicity_order(S, tol=args.tol).order
            print(f"sampled order ({S.m} points): {'inf' if sampled == math.inf else sampled}")
        return 0
    if args.n is None:
        raise InputError(f"--n is required for fn={args.fn}")
    evaluate = o.phi if args.fn == "phi" else o.chi
    sample = sample_graph(o, _sample_spec(args)) if args.cross_check else None
    rows = []
    for x, y in _gather_queries(args):
        val = evaluate(args.n, (x, y))
        row = {"x": _fmt_vec(x), "y": _fmt_vec(y), "value": format_real(val.value)}
        if sample is not None:
            fn = phi_n if args.fn == "phi" else chi_n
            sv = fn(sample, args.n, (x, y)).value
            row["sampled"] = format_real(sv.value)
            gap = val.value - sv.value if args.fn == "phi" else sv.value - val.value
            row["gap"] = format_real(gap) if not math.isnan(gap) else "nan"
        rows.append(row)
    cols = ["x", "y", "value"] + (["sampled", "gap"] if sample is not None else [])
    _emit(rows, cols, args.format)
    return 0


def cmd_replicate(args) -> int:
    names = sorted(CASES) if args.case == "all" else [args.case]
    all_checks = []
    for name in names:
        checks = run_case(name, seed=args.seed, tol=args.tol)
        all_checks.extend((name, c) for c in checks)
    if args.format == "json":
        print(
            json.dumps(
                [
                    {
                        "case": name,
                        "check": c.name,
                        "passed": c.passed,
                        "computed": c.computed,
                        "expected": c.expected,
                    }
                    for name, c in all_checks
                ],
                indent=2,
            )
        )
    else:
        for name, c in all_checks:
            mark = "PASS" if c.passed else "FAIL"
            print(f"[{mark}] {name}: {c.name} (computed {c.computed}, expected {c.expected})")
        passed = sum(c.passed for _, c in all_checks)
        print(f"{passed}/{len(all_checks)} checks passed")
    return 0 if all(c.passed for _, c in all_checks) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="monoscope", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, queries=True):
        sp.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL)
        sp.add_argument("--format", choices=["text", "csv", "json"], default="text")
        if queries:
            sp.add_argument("--at", action="append", help="inline query 'x1,x2;y1,y2'")
            sp.add_argument("--queries", help="JSON file with a list of queries")

    sp = sub.add_parser("order", help="monotonicity order of an operator file")
    sp.add_argument("graph")
    common(sp, queries=False)
    sp.set_defaults(fn_impl=cmd_order)

    sp = sub.add_parser("eval", help="evaluate phi/chi/psi/antideriv on queries")
    sp.add_argument("graph")
    sp.add_argument("--fn", choices=["phi", "chi", "psi", "antideriv"], required=True)
    sp.add_argument("--n", type=_parse_order, default=None)
    sp.add_argument("--base", type=int, default=0, help="base point index for antideriv")
    common(sp)
    sp.set_defaults(fn_impl=cmd_eval)

    sp = sub.add_parser("related", help="n-relatedness test at query pairs")
    sp.add_argument("graph")
    sp.add_argument("--n", type=_parse_order, required=True)
    common(sp)
    sp.set_defaults(fn_impl=cmd_related)

    sp = sub.add_parser("oracle", help="closed-form oracle values")
    sp.add_argument("oracle")
    sp.add_argument("--fn", choices=["phi", "chi", "order"], required=True)
    sp.add_argument("--n", type=_parse_order, default=None)
    sp.add_argument("--cross-check", action="store_true")
    sp.add_argument("--sample-count", type=int, default=5)
    sp.add_argument("--sample-lo", type=float, default=-1.0)
    sp.add_argument("--sample-hi", type=float, default=1.0)
    sp.add_argument("--sample-radii", default="1")
    sp.add_argument("--sample-circle", type=int, default=36)
    sp.add_argument("--sample-magnitudes", default="1")
    common(sp)
    sp.set_defaults(fn_impl=cmd_oracle)

    sp = sub.add_parser("replicate", help="re-derive the built-in numeric claims")
    sp.add_argument("case", choices=sorted(CASES) + ["all"])
    sp.add_argument("--seed", type=int, default=0)
    common(sp, queries=False)
    sp.set_defaults(fn_impl=cmd_replicate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn_impl(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ImproperValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except UnsupportedOracleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except MonoscopeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
