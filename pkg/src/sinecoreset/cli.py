"""Command-line interface: ``sinecoreset <subcommand> [options]``.

Exit status is 0 on success, 2 for usage errors and 1 for data errors.  Any
failure prints one JSON line ``{"error": <kind>, "message": <text>}`` on
stderr.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import List, Optional

import numpy as np

from . import __version__
from .core import IntegerPointSet
from .coreset import sample_coreset, theoretical_size, uniform_coreset, vc_bound
from .discretize import discretize_dataset
from .errors import SineCoresetError
from .evalharness import run_trials
from .ingest import DEFAULT_N, IngestConfig, load_series, quantize, synthetic_points
from .sensitivity import sensitivities_parallel
from .solver import Regularizer, nontrivial_queries, solve_exact, solve_on_coreset
from .streaming import StreamState

NONTRIVIAL_HELP = "exclude multiples of N/2, where every data set costs zero"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        _emit_error("usage", message)
        sys.exit(2)


def _emit_error(kind: str, message: str):
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")


# ----------------------------------------------------------------- parsing helpers


def parse_inline(spec: str):
    """``"N=8,P=1,3"`` -> ``(8, [1, 3])``."""
    N = None
    values: List[str] = []
    current = None
    for tok in spec.replace(" ", "").split(","):
        if not tok:
            continue
        if "=" in tok:
            key, val = tok.split("=", 1)
            current = key.upper()
            if current == "N":
                N = val
            elif current == "P":
                values.append(val)
            else:
                raise UsageError(f"unknown inline key {key!r}; expected N= and P=")
        elif current == "P":
            values.append(tok)
        else:
            raise UsageError(f"cannot parse inline token {tok!r}")
    try:
        nums = [float(v) for v in values]
        N = None if N is None else int(N)
    except ValueError as exc:
        raise UsageError(f"bad inline value: {exc}") from exc
    if not nums:
        raise UsageError("inline spec has no points (use P=...)")
    return N, nums


def parse_lambda(spec: Optional[str], N: int) -> Regularizer:
    if spec is None or spec == "none":
        return Regularizer.zero()
    kind, _, arg = spec.partition(":")
    if kind == "linear":
        try:
            return Regularizer.linear(float(arg))
        except ValueError as exc:
            raise UsageError(f"bad linear regularizer {spec!r}") from exc
    if kind == "file":
        try:
            vals = np.loadtxt(arg, dtype=np.float64, ndmin=1)
        except OSError as exc:
            raise SineCoresetError(f"cannot read regularizer file: {exc}") from exc
        if vals.size != N:
            raise SineCoresetError(f"regularizer file has {vals.size} values, expected N={N}")
        return Regularizer.tabulated(vals)
    raise UsageError(f"unknown regularizer {spec!r}; use none, linear:ALPHA or file:PATH")


def _int_list(text: str) -> List[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _column(text: str):
    return int(text) if text.lstrip("-").isdigit() else text


def _read_values(args):
    """Raw values and the N to use (``args.N`` overrides)."""
    if args.inline and args.input:
        raise UsageError("--inline and --input are mutually exclusive")
    if args.inline:
        N, vals = parse_inline(args.inline)
        if args.N is not None:
            N = args.N
        if N is None:
            raise UsageError("inline input needs N= or --N")
        return vals, N, True
    if not args.input:
        raise UsageError("an input is required: --inline or --input")
    cfg = IngestConfig(
        path=args.input,
        column=args.column,
        delimiter=args.delimiter,
        take_absolute=args.abs,
        target_N=args.N or DEFAULT_N,
        skip_nonnumeric=args.skip_nonnumeric,
    )
    return load_series(cfg), cfg.target_N, args.no_quantize


def _load_points(args) -> IntegerPointSet:
    vals, N, raw = _read_values(args)
    if raw:
        if any(v != int(v) for v in vals):
            raise SineCoresetError("points must be integers unless quantization is enabled")
        return IntegerPointSet(N, [int(v) for v in vals])
    return quantize(vals, N)


def _write(args, text: str):
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _rows_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _draw(P, args, smap=None):
    if args.method == "uniform":
        return uniform_coreset(P, args.m, args.seed), smap
    if smap is None:
        smap = sensitivities_parallel(P, args.workers)
    return sample_coreset(P, smap, args.m, args.seed), smap


def _resolve_m(args, smap, P):
    if args.m is not None:
        return
    if args.eps is None:
        raise UsageError("give --m or --eps (with optional --delta) to size the coreset")
    args.m = theoretical_size(smap.total_t, vc_bound(P.n, P.N), args.eps, args.delta)


def _mask(args, N):
    return nontrivial_queries(N) if args.nontrivial else None


def _coreset_payload(cs):
    return {
        "method": cs.method,
        "seed": cs.seed,
        "requested_m": cs.requested_m,
        "source_n": cs.source_n,
        "entries": [{"p": p, "weight": w} for p, w in cs.entries()],
    }


# ----------------------------------------------------------------- subcommands


def cmd_sensitivities(args):
    P = _load_points(args)
    smap = sensitivities_parallel(P, args.workers, backend=args.backend)
    if args.format == "csv":
        rows = [(i, int(p), repr(float(s))) for i, (p, s) in enumerate(zip(P.points, smap.s))]
        _write(args, _rows_csv(["index", "p", "s"], rows))
        return
    _write(args, _dump({
        "N": P.N,
        "n": P.n,
        "total_t": smap.total_t,
        "skipped_queries": smap.skipped_queries,
        "sensitivities": [{"p": int(p), "s": float(s)} for p, s in zip(P.points, smap.s)],
    }))


def cmd_coreset(args):
    P = _load_points(args)
    smap = None
    if args.m is None or args.method == "sensitivity":
        smap = sensitivities_parallel(P, args.workers)
    _resolve_m(args, smap, P)
    cs, _ = _draw(P, args, smap)
    if args.format == "csv":
        _write(args, _rows_csv(["p", "weight"], [(p, repr(w)) for p, w in cs.entries()]))
        return
    payload = {"N": P.N}
    payload.update(_coreset_payload(cs))
    _write(args, _dump(payload))


def cmd_fit(args):
    P = _load_points(args)
    lam = parse_lambda(args.lam, P.N)
    out = {"N": P.N, "n": P.n}
    if args.on_coreset:
        smap = None
        if args.m is None or args.method == "sensitivity":
            smap = sensitivities_parallel(P, args.workers)
        _resolve_m(args, smap, P)
        cs, _ = _draw(P, args, smap)
        fit = solve_on_coreset(cs, P.N, lam, mask=_mask(args, P.N), workers=args.workers)
        out.update({"on_coreset": True, "method": args.method, "m": args.m, "seed": args.seed,
                    "coreset_size": len(cs)})
    else:
        fit = solve_exact(P, lam, mask=_mask(args, P.N), workers=args.workers)
        out["on_coreset"] = False
    out.update(fit.to_dict())
    if args.format == "csv":
        _write(args, _rows_csv(list(out), [list(out.values())]))
        return
    _write(args, _dump(out))


def _iter_stream_ints(src):
    for lineno, line in enumerate(src, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            yield int(line)
        except ValueError:
            raise SineCoresetError(f"line {lineno}: not an integer: {line!r}") from None


def cmd_stream(args):
    if args.format != "json":
        raise UsageError("stream emits JSON lines only")
    if args.N is None:
        raise UsageError("stream needs --N")
    state = StreamState(args.N, args.m, seed=args.seed, method=args.method)
    lines = []
    src = sys.stdin if args.input in (None, "-") else open(args.input, encoding="utf-8")
    try:
        for p in _iter_stream_ints(src):
            try:
                state.push(p)
            except ValueError as exc:
                raise SineCoresetError(str(exc)) from None
            if args.snapshot_every and state.n % args.snapshot_every == 0:
                cs = state.query_coreset()
                lines.append(json.dumps({
                    "snapshot": True, "n": state.n, "retained": state.retained,
                    "entries": [{"p": p_, "weight": w} for p_, w in cs.entries()],
                }))
    finally:
        if src is not sys.stdin:
            src.close()
    cs = state.query_coreset()
    final = {"final": True, "n": state.n, "retained": state.retained, "N": args.N, "m": args.m}
    if len(cs):
        final.update(solve_on_coreset(cs, args.N, parse_lambda(args.lam, args.N), mask=_mask(args, args.N)).to_dict())
    final["entries"] = [{"p": p_, "weight": w} for p_, w in cs.entries()]
    lines.append(json.dumps(final))
    _write(args, "\n".join(lines) + "\n")


def cmd_discretize(args):
    vals, N, raw = _read_values(args)
    x = np.asarray(vals, dtype=np.float64)
    if raw:
        P = IntegerPointSet(N, [int(round(v)) for v in x])
        scaled, lo, hi = x, None, None
    else:
        P = quantize(x, N)
        lo, hi = float(x.min()), float(x.max())
        scaled = 1 + (x - lo) / (hi - lo) * (N - 1) if hi > lo else np.ones_like(x)
    lam = parse_lambda(args.lam, N)
    if args.on_coreset:
        smap = sensitivities_parallel(P, args.workers) if args.method == "sensitivity" else None
        _resolve_m(args, smap, P)
        cs, _ = _draw(P, args, smap)
        fit = solve_on_coreset(cs, N, lam, mask=_mask(args, N))
    else:
        fit = solve_exact(P, lam, mask=_mask(args, N), workers=args.workers)
    res = discretize_dataset(scaled, fit, N)
    back = res.projected
    if lo is not None and hi > lo:
        back = lo + (res.projected - 1) / (N - 1) * (hi - lo)
    if args.format == "csv":
        rows = [(repr(float(a)), repr(float(b)), repr(float(c)))
                for a, b, c in zip(x, res.projected, back)]
        _write(args, _rows_csv(["value", "projected_scaled", "projected"], rows))
        return
    _write(args, _dump({
        "N": N,
        "c_star": fit.c_star,
        "objective": fit.objective,
        "total_distance": res.total_distance,
        "projected_scaled": res.projected.tolist(),
        "projected": np.asarray(back).tolist(),
    }))


def cmd_eval(args):
    P = _load_points(args)
    smap = None
    if "sensitivity" in args.methods:
        smap = sensitivities_parallel(P, args.workers)
    report = run_trials(
        P,
        sample_sizes=args.sizes,
        trials=args.trials,
        methods=args.methods,
        base_seed=args.seed,
        sensitivities=smap,
        lam=parse_lambda(args.lam, P.N),
        mask=_mask(args, P.N),
    )
    _write(args, report.to_csv() if args.format == "csv" else report.to_json() + "\n")


def cmd_generate(args):
    P = synthetic_points(args.N, args.n, args.c0, noise=args.noise, seed=args.seed)
    if args.format == "csv":
        _write(args, _rows_csv(["p"], [[int(p)] for p in P.points]))
        return
    _write(args, _dump({"N": P.N, "c0": args.c0, "noise": args.noise, "seed": args.seed,
                        "points": [int(p) for p in P.points]}))


# ----------------------------------------------------------------- parser


def _add_input(sp):
    g = sp.add_argument_group("input")
    g.add_argument("--inline", help='inline points, e.g. "N=8,P=1,3"')
    g.add_argument("--input", help="delimited text file")
    g.add_argument("--column", type=_column, default=0, help="column name or zero-based index")
    g.add_argument("--delimiter", default=",")
    g.add_argument("--abs", action="store_true", help="take absolute values")
    g.add_argument("--skip-nonnumeric", action="store_true")
    g.add_argument("--no-quantize", action="store_true",
                   help="file already holds integers in [1, N]; requires --N")
    g.add_argument("--N", type=int, help=f"query range / quantization target (default {DEFAULT_N})")


def _add_output(sp):
    sp.add_argument("--output", help="output path (default stdout)")
    sp.add_argument("--format", choices=("json", "csv"), default="json")


def _add_sampling(sp, with_m_default=None):
    sp.add_argument("--m", type=int, default=with_m_default, help="sample count")
    sp.add_argument("--eps", type=float, help="size the coreset from eps when --m is absent")
    sp.add_argument("--delta", type=float, default=0.1)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--method", choices=("sensitivity", "uniform"), default="sensitivity")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sinecoreset", description="Coresets for integer sine fitting.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("sensitivities", help="per-point sensitivities and their total")
    _add_input(sp)
    _add_output(sp)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--backend", choices=("thread", "process"), default="thread")
    sp.set_defaults(func=cmd_sensitivities)

    sp = sub.add_parser("coreset", help="draw a weighted coreset")
    _add_input(sp)
    _add_output(sp)
    _add_sampling(sp)
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_coreset)

    sp = sub.add_parser("fit", help="minimize the fitting objective")
    _add_input(sp)
    _add_output(sp)
    _add_sampling(sp)
    sp.add_argument("--lambda", dest="lam", default="none", help="none | linear:ALPHA | file:PATH")
    sp.add_argument("--nontrivial", action="store_true", help=NONTRIVIAL_HELP)
    sp.add_argument("--on-coreset", action="store_true")
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_fit)

    sp = sub.add_parser("stream", help="merge-and-reduce over integers, one per line")
    sp.add_argument("--input", help="file of integers (default stdin)")
    sp.add_argument("--N", type=int)
    sp.add_argument("--m", type=int, default=128)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--method", choices=("sensitivity", "uniform"), default="sensitivity")
    sp.add_argument("--snapshot-every", type=int, default=0)
    sp.add_argument("--lambda", dest="lam", default="none")
    sp.add_argument("--nontrivial", action="store_true", help=NONTRIVIAL_HELP)
    _add_output(sp)
    sp.set_defaults(func=cmd_stream)

    sp = sub.add_parser("discretize", help="fit, then snap values to the wave's roots")
    _add_input(sp)
    _add_output(sp)
    _add_sampling(sp)
    sp.add_argument("--lambda", dest="lam", default="none")
    sp.add_argument("--nontrivial", action="store_true", help=NONTRIVIAL_HELP)
    sp.add_argument("--on-coreset", action="store_true")
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_discretize)

    sp = sub.add_parser("eval", help="sensitivity vs uniform sampling trials")
    _add_input(sp)
    _add_output(sp)
    sp.add_argument("--sizes", type=_int_list, default=[16, 32, 64, 128, 256])
    sp.add_argument("--trials", type=int, default=32)
    sp.add_argument("--methods", type=lambda s: [v for v in s.split(",") if v],
                    default=["sensitivity", "uniform"])
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--lambda", dest="lam", default="none")
    sp.add_argument("--nontrivial", action="store_true", help=NONTRIVIAL_HELP)
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("generate", help="synthetic points around the roots of a known wave")
    sp.add_argument("--N", type=int, default=4096)
    sp.add_argument("--n", type=int, default=1024)
    sp.add_argument("--c0", type=int, default=37)
    sp.add_argument("--noise", type=float, default=0.1)
    sp.add_argument("--seed", type=int, default=0)
    _add_output(sp)
    sp.set_defaults(func=cmd_generate)
    return p


def _validate(args):
    for name in ("workers", "m", "trials", "snapshot_every"):
        v = getattr(args, name, None)
        if v is not None and v < (0 if name == "snapshot_every" else 1):
            raise UsageError(f"--{name.replace('_', '-')} must be positive")
    if getattr(args, "no_quantize", False) and args.input and args.N is None:
        raise UsageError("--no-quantize needs --N")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _validate(args)
        args.func(args)
    except UsageError as exc:
        _emit_error("usage", str(exc))
        return 2
    except (SineCoresetError, ValueError, TypeError) as exc:
        _emit_error(type(exc).__name__, str(exc))
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
