"""Command-line front end.

Subcommands: demo, encode, corrupt, decode, simulate, bound, bench.
Stdout carries data (matrices, CSV, status lines); stderr carries
diagnostics.  Exit codes: 0 success, 2 decode failure, 3 format error,
4 parameter error.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import demo as demo_mod
from .codes import (
    GabidulinSpec,
    LinearCodeSpec,
    code_spec_from_text,
    encode_interleaved,
    resolve_code,
)
from .errors import FormatError, ParameterError
from .fields import ExtField
from .matrix import MatQm, mat_from_text
from .simulate import SimConfig, run_trials, sample_error, success_lower_bound, trial_rng

EXIT_OK = 0
EXIT_DECODE_FAILURE = 2
EXIT_FORMAT = 3
EXIT_PARAMETER = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems are parameter errors (exit 4)
        raise ParameterError(message)


def _parse_field(text: str) -> ExtField:
    return ExtField.from_spec(text)


def _parse_inline_code(text: str, ctx: ExtField | None) -> GabidulinSpec:
    if not text.startswith("gabidulin:"):
        raise ParameterError(f"inline --code must look like gabidulin:g=...,k=... (got {text!r})")
    if ctx is None:
        raise ParameterError("inline --code requires --field")
    body = text[len("gabidulin:") :]
    head, sep, ktext = body.rpartition(",k=")
    if not sep or not head.startswith("g="):
        raise ParameterError(f"malformed inline code {text!r}")
    try:
        g = tuple(int(a) for a in head[2:].split(","))
        k = int(ktext)
    except ValueError as exc:
        raise ParameterError(f"malformed inline code {text!r}") from exc
    return GabidulinSpec(ctx, g, k)


def _load_code(args) -> LinearCodeSpec:
    ctx = _parse_field(args.field) if getattr(args, "field", None) else None
    if getattr(args, "code_file", None):
        spec = code_spec_from_text(Path(args.code_file).read_text())
        if ctx is not None and spec.ctx != ctx:
            raise ParameterError("--field disagrees with the field in --code-file")
    elif getattr(args, "code", None):
        spec = _parse_inline_code(args.code, ctx)
    else:
        raise ParameterError("one of --code or --code-file is required")
    return resolve_code(spec)


def _read_matrix(path: str, ctx: ExtField | None = None) -> MatQm:
    return mat_from_text(Path(path).read_text(), ctx=ctx)


def _write(path: str, text: str) -> None:
    Path(path).write_text(text)


# -- subcommands -----------------------------------------------------------------


def cmd_demo(args) -> int:
    tamper = None
    if args.tamper:
        try:
            i, j, delta = (int(x) for x in args.tamper.split(","))
        except ValueError as exc:
            raise ParameterError("--tamper wants i,j,delta") from exc
        tamper = (i, j, delta)
    return demo_mod.run_demo(quiet=args.quiet, tamper=tamper)


def cmd_encode(args) -> int:
    code = _load_code(args)
    msg = _read_matrix(args.message, ctx=code.ctx)
    if msg.cols != code.k:
        raise ParameterError(f"message has {msg.cols} columns, code dimension is {code.k}")
    _write(args.out, encode_interleaved(code.gen, msg).to_text())
    return EXIT_OK


def cmd_corrupt(args) -> int:
    ctx = _parse_field(args.field) if args.field else None
    word = _read_matrix(args.infile, ctx=ctx)
    rng = trial_rng(args.seed, 0)
    err, _, _ = sample_error(rng, word.ctx, word.rows, word.cols, args.t, args.mode)
    _write(args.out, word.add(err).to_text())
    _write(args.error_out, err.to_text())
    return EXIT_OK


def cmd_decode(args) -> int:
    from .decoder import decode

    code = _load_code(args)
    received = _read_matrix(args.infile, ctx=code.ctx)
    outcome = decode(code.h, received, code.d)
    if not outcome.success:
        print(f"decode failure: {outcome.reason.value} (t_hat={outcome.t_hat})", file=sys.stderr)
        return EXIT_DECODE_FAILURE
    _write(args.out, outcome.c_hat.to_text())
    if args.out_coeff:
        _write(args.out_coeff, outcome.a_hat.to_text())
    if args.out_support:
        _write(args.out_support, outcome.b_hat.to_text())
    print(f"status,success t,{outcome.t_hat} beyond,{int(outcome.beyond_guarantee)}")
    return EXIT_OK


def cmd_simulate(args) -> int:
    code = _load_code(args)
    cfg = SimConfig(code=code, ell=args.ell, t=args.t, trials=args.trials, seed=args.seed, mode=args.mode)
    report = run_trials(cfg)
    if args.out:
        _write(args.out, report.to_csv())
    else:
        sys.stdout.write(report.to_csv())
    print(report.summary_line())
    return EXIT_OK


def cmd_bound(args) -> int:
    product, simple = success_lower_bound(args.t, args.ell, args.m, args.q)
    print(
        f"product,{float(product)!r} product_exact,{product.numerator}/{product.denominator} "
        f"simple,{float(simple)!r} simple_exact,{simple.numerator}/{simple.denominator}"
    )
    return EXIT_OK


def cmd_bench(args) -> int:
    """Non-gating wall-time report for a few decode shapes."""
    from .decoder import decode
    from .simulate import rand_matrix

    shapes = [(2, 5, 5, 2, 2, 2), (2, 8, 8, 2, 3, 3), (2, 10, 10, 2, 7, 7)]
    for q, m, n, k, ell, t in shapes:
        ctx = ExtField(q, m)
        gab = GabidulinSpec(ctx, tuple(ctx.alpha_pow(i) for i in range(n)), k)
        code = resolve_code(gab)
        rng = trial_rng(args.seed, 0)
        total = 0.0
        reps = args.reps
        for _ in range(reps):
            msg = rand_matrix(rng, ctx, ell, k)
            err, _, _ = sample_error(rng, ctx, ell, n, t, "fullrank")
            word = (msg @ code.gen).add(err)
            start = time.perf_counter()
            decode(code.h, word, code.d)
            total += time.perf_counter() - start
        print(f"decode q={q} m={m} n={n} k={k} ell={ell} t={t}: {1e3 * total / reps:.3f} ms/word")
    return EXIT_OK


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rankmk", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("demo", help="run the built-in worked example end to end")
    p.add_argument("--quiet", action="store_true", help="print only PASS/FAIL")
    p.add_argument("--tamper", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_demo)

    def add_code_args(p):
        p.add_argument("--field", help="field spec, e.g. 'q=2 m=5 f=1,0,1,0,0,1'")
        p.add_argument("--code", help="inline code, e.g. 'gabidulin:g=1,2,4,8,16,k=2'")
        p.add_argument("--code-file", help="path to a code spec file")

    p = sub.add_parser("encode", help="message matrix -> interleaved codeword matrix")
    add_code_args(p)
    p.add_argument("--message", required=True, help="message matrix file (ell x k)")
    p.add_argument("--out", required=True, help="codeword output file")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("corrupt", help="add a random rank-t error to a codeword file")
    p.add_argument("--field", help="field spec override (default polynomial otherwise)")
    p.add_argument("--in", dest="infile", required=True, help="codeword matrix file")
    p.add_argument("--t", type=int, required=True, help="rank weight of the planted error")
    p.add_argument("--seed", type=int, default=0, help="64-bit master seed")
    p.add_argument("--mode", choices=("uniform", "fullrank"), default="uniform")
    p.add_argument("--out", required=True, help="received-word output file")
    p.add_argument("--error-out", required=True, help="planted-error output file")
    p.set_defaults(func=cmd_corrupt)

    p = sub.add_parser("decode", help="received word -> codeword (+ error factors)")
    add_code_args(p)
    p.add_argument("--in", dest="infile", required=True, help="received-word matrix file")
    p.add_argument("--out", required=True, help="decoded codeword output file")
    p.add_argument("--out-coeff", help="coefficient matrix (A) output file")
    p.add_argument("--out-support", help="support basis (B) output file")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("simulate", help="Monte-Carlo success-rate measurement")
    add_code_args(p)
    p.add_argument("--ell", type=int, required=True, help="interleaving order")
    p.add_argument("--t", type=int, required=True, help="rank weight per trial")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0, help="64-bit master seed")
    p.add_argument("--mode", choices=("uniform", "fullrank"), default="uniform")
    p.add_argument("--out", help="CSV report file (stdout otherwise)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("bound", help="success-probability lower bounds")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("bench", help="non-gating decode wall-time report")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--reps", type=int, default=20)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except FormatError as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except ParameterError as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return EXIT_PARAMETER
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_FORMAT


if __name__ == "__main__":
    sys.exit(main())
