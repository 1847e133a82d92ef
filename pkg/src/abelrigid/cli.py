"""Command-line interface.

Exit codes: 0 success, 2 usage error, 3 malformed or unsuitable input,
4 internal consistency fault.  Diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .errors import AbelRigidError, ConsistencyError
from .geometry import canonicalize, check_convex, format_figure, read_figure, uv_representation
from .oracle import (abelian_classes, abelian_pattern_complexity, constant_sum_check, period_vectors,
                     search_windows_2d, search_words_1d, sequence_window)
from .polynomial import detect_cyclotomic_factors, format_poly, poly_of_pattern
from .rigidity import decide_rigidity, extension_bound
from .window import PeriodicSequence, read_window_or_sequence
from .witness import build_witness_1d, build_witness_2d

EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_CONSISTENCY = 4


class UsageError(Exception):
    pass


def _pair(text: str) -> tuple[int, int]:
    try:
        a, b = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two integers `a,b`, got {text!r}") from None
    return a, b


def _size(text: str) -> tuple[int, int]:
    try:
        w, h = (int(t) for t in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected `WxH`, got {text!r}") from None
    if w <= 0 or h <= 0:
        raise argparse.ArgumentTypeError("window sizes must be positive")
    return w, h


def _values(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = (int(t) for t in text.split(".."))
            return list(range(lo, hi + 1))
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected `lo..hi` or a comma list, got {text!r}") from None


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return n


def _nonnegative(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError("expected a nonnegative integer")
    return n


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational number, got {text!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--threads", type=_positive, default=1, help="worker threads (never changes output)")
    common.add_argument("-o", "--output", help="write the result here instead of stdout")
    common.add_argument("--dim", type=int, choices=(1, 2), help="force the figure dimension")

    parser = _Parser(prog="abelrigid", description="Abelian rigidity of lattice patterns.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_text, figure=True):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if figure:
            p.add_argument("figure", help="figure file")
        return p

    add("poly", "polynomial of the pattern")
    add("canon", "canonical figure")
    add("convex-check", "is the figure convex")
    p = add("uv-rep", "(u,v)-representation of a convex figure")
    p.add_argument("--u", type=_pair, required=True)
    p.add_argument("--v", type=_pair, required=True)
    add("rigidity", "decide abelian rigidity with certificates")
    p = add("cyclotomic", "cyclotomic factors of a 1D pattern polynomial")
    p.add_argument("--max-n", type=_positive)
    p = add("witness-1d", "periodic constant-sum-0 sequence from Phi_n")
    p.add_argument("--n", type=_positive, required=True)
    p = add("witness-2d", "aperiodic single-class window from l(v, n)")
    p.add_argument("--v", type=_pair, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--window", type=_size, required=True)
    p.add_argument("--origin", type=_pair, default=(0, 0))
    p.add_argument("--period-bound", type=_positive)
    p = add("verify", "abelian complexity and constant sums of a window", figure=False)
    p.add_argument("--figure", required=True)
    p.add_argument("--window-file", required=True)
    p = add("periods", "period vectors of a window", figure=False)
    p.add_argument("window_file")
    p.add_argument("--bound", type=_positive, required=True)
    p = add("search-1d", "periodic words with a single class")
    p.add_argument("--alphabet", type=_positive)
    p.add_argument("--max-len", type=_positive, required=True)
    p.add_argument("--values", type=_values, help="integer letters, `lo..hi` or `a,b,c`")
    p.add_argument("--target", type=int, help="required weighted sum (with --values)")
    p.add_argument("--budget", type=_nonnegative, default=0)
    p = add("search-2d", "windows with a single class")
    p.add_argument("--alphabet", type=_positive, required=True)
    p.add_argument("--window", type=_size, required=True)
    p.add_argument("--budget", type=_nonnegative, default=0)
    p = add("bound-n", "extension bound N for a convex figure")
    p.add_argument("--alphabet", type=_positive, required=True)
    p.add_argument("--delta-cap", type=_fraction, help="use this value for Delta")
    return parser


# ---------------------------------------------------------------------------
# subcommands: each returns (json object, text)

def _figure(args, dim=None):
    return read_figure(args.figure, dim or args.dim)


def _fig_json(fig):
    return {"dim": fig.dim, "points": [[list(p), w] for p, w in fig.points]}


def cmd_poly(args):
    p = poly_of_pattern(_figure(args))
    return {"polynomial": format_poly(p), "terms": p.to_json()}, format_poly(p)


def cmd_canon(args):
    fig = canonicalize(_figure(args))
    return _fig_json(fig), format_figure(fig).rstrip("\n")


def cmd_convex_check(args):
    ok = check_convex(_figure(args, 2))
    return {"convex": ok}, "true" if ok else "false"


def cmd_uv_rep(args):
    rep = uv_representation(_figure(args, 2), args.u, args.v)
    data = {"u": list(rep.u), "v": list(rep.v), "n": rep.n, "lows": list(rep.lows), "highs": list(rep.highs)}
    text = "n={} lows={} highs={}".format(
        rep.n, ",".join(map(str, rep.lows)), ",".join(map(str, rep.highs)))
    return data, text


def cmd_rigidity(args):
    verdict = decide_rigidity(_figure(args), threads=args.threads)
    lines = [verdict.status]
    for d, g in verdict.geometric or []:
        lines.append(f"gcd {d[0]},{d[1]}: {g}")
    if verdict.algebraic is not None:
        div = verdict.algebraic
        lines.append(f"divisor l(({div.direction[0]},{div.direction[1]}), {div.n}), quotient {div.quotient}")
    if verdict.reason:
        lines.append(f"reason: {verdict.reason}")
    lines += [f"warning: {w}" for w in verdict.warnings]
    return verdict.to_json(), "\n".join(lines)


def cmd_cyclotomic(args):
    fig = _figure(args, 1)
    report = detect_cyclotomic_factors(poly_of_pattern(fig), args.max_n)
    text = "divisors: " + (" ".join(map(str, report.divisors)) if report.divisors else "none")
    return report.to_json(), text + f" (tested n <= {report.tested_bound})"


def cmd_witness_1d(args):
    seq = build_witness_1d(_figure(args, 1), args.n)
    return seq.to_json(), seq.to_text().rstrip("\n")


def cmd_witness_2d(args):
    win = build_witness_2d(_figure(args, 2), args.v, args.n, args.window, args.origin,
                           args.period_bound, threads=args.threads)
    return win.to_json(), win.to_text().rstrip("\n")


def cmd_verify(args):
    source = read_window_or_sequence(args.window_file)
    fig = read_figure(args.figure, 1 if isinstance(source, PeriodicSequence) else (args.dim or 2))
    win = sequence_window(source, fig) if isinstance(source, PeriodicSequence) else source
    classes = abelian_classes(win, fig)
    data = {"complexity": len(classes), "classes": [list(c.multiplicities) for c in classes],
            "alphabet": list(win.alphabet)}
    lines = [f"abelian pattern complexity: {len(classes)}"]
    if win.has_integer_alphabet:
        report = constant_sum_check(source, fig)
        data["constant_sum"] = report.to_json()
        if report.is_constant:
            lines.append(f"constant sum: {report.constant} over {report.translates} translates")
        else:
            (p1, s1), (p2, s2) = report.counterexample
            lines.append(f"not constant: sum {s1} at {p1}, {s2} at {p2}")
    else:
        data["constant_sum"] = None
        lines.append("constant sum: not applicable (non-integer alphabet)")
    return data, "\n".join(lines)


def cmd_periods(args):
    source = read_window_or_sequence(args.window_file)
    if isinstance(source, PeriodicSequence):
        raise AbelRigidError("periods expects a window file")
    vecs = period_vectors(source, args.bound)
    return ({"bound": args.bound, "periods": [list(v) for v in vecs]},
            "\n".join(" ".join(map(str, v)) for v in vecs) or "none")


def _search_text(res):
    lines = [f"solutions: {len(res.solutions)}", f"exhausted: {str(res.exhausted).lower()}",
             f"nodes: {res.stats['nodes']}"]
    for s in res.to_json()["solutions"]:
        if s and isinstance(s[0], list):
            lines.append("")
            lines.extend(" ".join(map(str, row)) for row in s)
        else:
            lines.append(" ".join(map(str, s)))
    return "\n".join(lines)


def cmd_search_1d(args):
    if args.values is None and args.alphabet is None:
        raise UsageError("search-1d needs --alphabet or --values")
    if args.target is not None and args.values is None:
        raise UsageError("--target needs --values")
    res = search_words_1d(_figure(args, 1), args.alphabet or 0, args.max_len, values=args.values,
                          target=args.target, budget=args.budget, threads=args.threads)
    return res.to_json(), _search_text(res)


def cmd_search_2d(args):
    w, h = args.window
    res = search_windows_2d(_figure(args, 2), args.alphabet, w, h, budget=args.budget, threads=args.threads)
    return res.to_json(), _search_text(res)


def cmd_bound_n(args):
    b = extension_bound(_figure(args, 2), args.alphabet, args.delta_cap)
    text = (f"N = {b.N:.6f}\ndelta = {b.delta:.6f}\nDelta = {float(b.Delta):.6f}"
            f"{' (estimated)' if b.Delta_estimated else ''}\ndiameter = {b.diameter:.6f}\n"
            f"size = {b.size}\nalphabet = {b.alphabet}")
    return b.to_json(), text


COMMANDS = {
    "poly": cmd_poly, "canon": cmd_canon, "convex-check": cmd_convex_check, "uv-rep": cmd_uv_rep,
    "rigidity": cmd_rigidity, "cyclotomic": cmd_cyclotomic, "witness-1d": cmd_witness_1d,
    "witness-2d": cmd_witness_2d, "verify": cmd_verify, "periods": cmd_periods,
    "search-1d": cmd_search_1d, "search-2d": cmd_search_2d, "bound-n": cmd_bound_n,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        data, text = COMMANDS[args.command](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except ConsistencyError as exc:
        print(f"abelrigid: internal consistency fault: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except (AbelRigidError, ValueError, OSError) as exc:
        print(f"abelrigid: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.format == "json":
        out = json.dumps(data, separators=(",", ":")) + "\n"
    else:
        out = text + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
