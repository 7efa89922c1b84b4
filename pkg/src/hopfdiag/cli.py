"""Command-line interface.

Exit codes: 0 success, 1 usage or input error, 2 bound exceeded,
3 a requested check failed.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import boson, combinatorics, diagrams, hopf
from .errors import BoundExceededError, HopfDiagError, ParseError
from .exact_core import rational_to_str, to_rational

EXIT_OK, EXIT_USAGE, EXIT_BOUND, EXIT_FAILED = 0, 1, 2, 3
BELL_TABLE_BOUND = 25


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def max_grade() -> int:
    raw = os.environ.get("HOPFDIAG_MAX_GRADE")
    if raw is None:
        return diagrams.DEFAULT_DIAGRAM_BOUND
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"HOPFDIAG_MAX_GRADE must be an integer, got {raw!r}")


def _bound(what: str, n: int, bound: int) -> None:
    if n < 0:
        raise UsageError(f"{what} must be non-negative")
    if n > bound:
        raise BoundExceededError(what, n, bound)


def parse_rational_list(text: str) -> list[Fraction]:
    if not text.strip():
        return []
    try:
        return [to_rational(tok) for tok in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse rational list {text!r}: {exc}")


def extend_weights(vals: list[Fraction], N: int) -> list[Fraction]:
    """Extend a short weight list to length N by repeating its last entry."""
    if not vals:
        return [Fraction(0)] * N
    return (vals + [vals[-1]] * N)[: max(N, len(vals))]


def _emit(obj: Any, out) -> None:
    out.write(json.dumps(obj, indent=2, sort_keys=False) + "\n")


def _table(rows: Sequence[Sequence[Any]], out) -> None:
    cells = [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells if i < len(r)) for i in range(max(map(len, cells)))]
    for r in cells:
        out.write("  ".join(c.rjust(widths[i]) for i, c in enumerate(r)).rstrip() + "\n")


def _nf_text(nf: boson.NormalForm) -> str:
    if not nf.terms:
        return "0"
    parts = []
    for (i, j), c in nf.terms.items():
        ops = " ".join(["a+"] * i + ["a"] * j) or "1"
        parts.append(ops if c == 1 else f"{c}*({ops})")
    return " + ".join(parts)


# --- subcommands -----------------------------------------------------------

def cmd_bell(args, out) -> int:
    _bound("--n", args.n, BELL_TABLE_BOUND)
    rows = [
        {"n": n, "bell": combinatorics.bell_number(n),
         "stirling2": [combinatorics.stirling2(n, k) for k in range(n + 1)]}
        for n in range(args.n + 1)
    ]
    if args.format == "json":
        _emit({"rows": [{**r, "bell": str(r["bell"]), "stirling2": [str(s) for s in r["stirling2"]]}
                        for r in rows]}, out)
    else:
        _table([["n", "B(n)", "S(n,k), k=0..n"]]
               + [[r["n"], r["bell"], " ".join(map(str, r["stirling2"]))] for r in rows], out)
    return EXIT_OK


def cmd_normal_order(args, out) -> int:
    word = boson.parse_word(args.word)
    nf = boson.normal_order(word)
    forgetful = boson.forget_normal_order(word)
    exp_nf = boson.coherent_expectation(nf)
    exp_ff = boson.coherent_expectation(forgetful)
    if args.format == "json":
        _emit({
            "word": str(word),
            "normal_order": nf.to_json(),
            "forgetful_normal_order": forgetful.to_json(),
            "expectation": {"poly": boson.format_zpoly(exp_nf), **exp_nf.to_json()},
            "forgetful_expectation": {"poly": boson.format_zpoly(exp_ff), **exp_ff.to_json()},
        }, out)
    else:
        out.write(f"word:            {word or '(empty)'}\n")
        out.write(f"normal order:    {_nf_text(nf)}\n")
        out.write(f"forgetful :w::   {_nf_text(forgetful)}\n")
        out.write(f"<z|w|z>:         {boson.format_zpoly(exp_nf)}\n")
        out.write(f"<z|:w:|z>:       {boson.format_zpoly(exp_ff)}\n")
    return EXIT_OK


def cmd_pfi(args, out) -> int:
    if args.word is not None:
        return _pfi_word(args, out)
    bound = max_grade()
    _bound("--N", args.N, bound)
    L = extend_weights(parse_rational_list(args.L), args.N)
    V = extend_weights(parse_rational_list(args.V), args.N)
    by_diag = diagrams.pfi_by_diagrams(args.N, L, V, bound=bound)
    by_series = diagrams.pfi_by_series(args.N, L, V)
    equal = by_diag == by_series
    table = []
    for n in range(1, args.N + 1):
        census = diagrams.enumerate_diag_diagrams(n, bound)
        table.append({"grade": n, "diagrams": len(census), "connected": len(census.connected()),
                      "multiplicity": census.total(), "F_n": rational_to_str(by_diag[n])})
    if args.format == "json":
        _emit({"N": args.N, "L": [rational_to_str(x) for x in L], "V": [rational_to_str(x) for x in V],
               "by_series": by_series.to_json(), "by_diagrams": by_diag.to_json(),
               "equal": equal, "grades": table}, out)
    else:
        out.write("F by series:   " + ", ".join(map(str, by_series.coeffs)) + "\n")
        out.write("F by diagrams: " + ", ".join(map(str, by_diag.coeffs)) + "\n")
        out.write(f"equal: {str(equal).lower()}\n")
        if table:
            _table([["grade", "diagrams", "connected", "multiplicity", "F_n"]]
                   + [[t["grade"], t["diagrams"], t["connected"], t["multiplicity"], t["F_n"]] for t in table],
                   out)
    return EXIT_OK if equal else EXIT_FAILED


def _pfi_word(args, out) -> int:
    word = boson.parse_word(args.word)
    _bound("--N", args.N, boson.DEFAULT_MOMENT_BOUND)
    W = boson.word_moments(word, args.N)
    V = boson.moments_to_cumulants(W)
    equal = boson.cumulants_to_moments(V) == W
    if args.format == "json":
        _emit({"word": str(word), "N": args.N,
               "moments": [{"n": n, "poly": boson.format_zpoly(w), **w.to_json()} for n, w in enumerate(W)],
               "cumulants": [{"n": n, "poly": boson.format_zpoly(v), **v.to_json()}
                             for n, v in enumerate(V, start=1)],
               "equal": equal}, out)
    else:
        _table([["n", "W_n", "V_n"]]
               + [[n, boson.format_zpoly(W[n]), boson.format_zpoly(V[n - 1]) if n else ""]
                  for n in range(args.N + 1)], out)
        out.write(f"equal: {str(equal).lower()}\n")
    return EXIT_OK if equal else EXIT_FAILED


def cmd_diagrams(args, out) -> int:
    bound = max_grade()
    _bound("--n", args.n, bound)
    census = diagrams.enumerate_diag_diagrams(args.n, bound)
    connected = census.connected()
    shown = connected if args.connected_only else census
    bell_sq = combinatorics.bell_number(args.n) ** 2
    written = []
    if args.dot is not None:
        try:
            written = diagrams.write_dot_files(list(shown), args.n, args.dot)
        except OSError as exc:
            raise UsageError(f"cannot write DOT files to {args.dot}: {exc}")
    summary = {"grade": args.n, "count": len(census), "connected": len(connected),
               "total_multiplicity": census.total(), "bell_squared": bell_sq,
               "census_ok": census.total() == bell_sq}
    if args.format == "json":
        _emit({"diagrams": [{"index": i, **d.to_json(), "multiplicity": shown[d],
                             "connected": diagrams.is_connected(d),
                             "white_degrees": list(d.white_degrees),
                             "black_degrees": list(d.black_degrees)}
                            for i, d in enumerate(shown)],
               "dot_files": [p.name for p in written],
               "summary": summary}, out)
    else:
        rows = [["idx", "mult", "conn", "white deg", "black deg", "matrix"]]
        for i, d in enumerate(shown):
            rows.append([i, shown[d], "y" if diagrams.is_connected(d) else "n",
                         ",".join(map(str, d.white_degrees)), ",".join(map(str, d.black_degrees)),
                         json.dumps([list(r) for r in d.mult])])
        _table(rows, out)
        out.write(f"grade {args.n}: {summary['count']} diagrams, {summary['connected']} connected, "
                  f"total multiplicity {summary['total_multiplicity']} (B(n)^2 = {bell_sq})\n")
    return EXIT_OK if summary["census_ok"] else EXIT_FAILED


def cmd_hopf_check(args, out) -> int:
    _bound("--grade", args.grade, max_grade())
    report = hopf.check_hopf_axioms(args.algebra, args.grade)
    _emit(report.to_json(), out)
    return EXIT_OK if report.passed else EXIT_FAILED


def _resolve_map(spec: str, N: int):
    builtin = {"bell": hopf.phi_bell, "contract": hopf.phi_contract, "zero": hopf.phi_zero}
    if spec in builtin:
        return builtin[spec](N)
    path = Path(spec)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read map file {spec!r}: {exc}")
    try:
        return hopf.load_morphism(json.loads(text), N)
    except json.JSONDecodeError as exc:
        raise UsageError(f"map file {spec!r} is not valid JSON: {exc}")
    except ValueError as exc:
        raise UsageError(f"map file {spec!r}: {exc}")


def cmd_morphism_check(args, out) -> int:
    _bound("--grade", args.grade, max_grade())
    phi = _resolve_map(args.map, args.grade)
    report = hopf.check_hopf_morphism(phi, args.grade)
    _emit({"map": args.map, **report.to_json()}, out)
    return EXIT_OK if report.passed else EXIT_FAILED


def _load_sequence(path: str) -> list:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read {path!r}: {exc}")
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path!r} is not valid JSON: {exc}")
    if isinstance(data, dict):
        data = data.get("moments", data.get("cumulants", data.get("sequence")))
    if not isinstance(data, list):
        raise UsageError(f"{path!r} must hold a JSON list or an object with a 'moments' list")
    try:
        return [boson.ZPolynomial.from_json(x) for x in data]
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"{path!r}: bad sequence entry: {exc!r}")


def _seq_json(seq, start: int) -> list:
    return [{"n": n, "poly": boson.format_zpoly(p), **p.to_json()} for n, p in enumerate(seq, start=start)]


def cmd_cumulants(args, out) -> int:
    if args.moments is not None:
        seq = _load_sequence(args.moments)
    elif args.word is not None:
        if args.invert:
            raise UsageError("--invert needs --moments FILE holding cumulants")
        if args.N is None:
            raise UsageError("--word requires --N")
        _bound("--N", args.N, boson.DEFAULT_MOMENT_BOUND)
        seq = boson.word_moments(boson.parse_word(args.word), args.N)
    else:
        raise UsageError("one of --moments FILE or --word W is required")

    result: dict = {}
    if args.invert:
        W = boson.cumulants_to_moments(seq)
        result["cumulants"] = _seq_json(seq, 1)
        result["moments"] = _seq_json(W, 0)
        roundtrip = boson.moments_to_cumulants(W) == list(seq)
    else:
        try:
            V = boson.moments_to_cumulants(seq)
        except ValueError as exc:
            raise UsageError(str(exc))
        result["moments"] = _seq_json(seq, 0)
        result["cumulants"] = _seq_json(V, 1)
        roundtrip = boson.cumulants_to_moments(V) == list(seq)
    if args.check_roundtrip:
        result["roundtrip"] = roundtrip
    if args.format == "json":
        _emit(result, out)
    else:
        key = "moments" if args.invert else "cumulants"
        name = "W" if args.invert else "V"
        for item in result[key]:
            out.write(f"{name}_{item['n']} = {item['poly']}\n")
        if args.check_roundtrip:
            out.write(f"roundtrip: {str(roundtrip).lower()}\n")
    return EXIT_FAILED if args.check_roundtrip and not roundtrip else EXIT_OK


def cmd_partition_function(args, out) -> int:
    x = args.beta_eps
    if not (x > 0) or math.isinf(x):
        raise UsageError("--beta-eps must be a positive finite number")
    z = boson.free_boson_partition_function(x)
    trace = boson.geometric_trace(x)
    if args.format == "json":
        _emit({"beta_eps": x, "Z": z, "geometric_trace": trace, "delta": abs(z - trace)}, out)
    else:
        out.write(f"Z = {z!r}\ngeometric trace = {trace!r}\ndelta = {abs(z - trace)!r}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hopfdiag", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text, formats=("json", "text")):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        if formats:
            p.add_argument("--format", choices=formats, default="json")
        return p

    p = add("bell", cmd_bell, "Bell numbers and Stirling rows up to n")
    p.add_argument("--n", type=int, required=True)

    p = add("normal-order", cmd_normal_order, "normal and forgetful ordering of a boson word")
    p.add_argument("--word", required=True, help='e.g. "A a A a" (A = creation)')

    p = add("pfi", cmd_pfi, "partition function integrand coefficients")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--L", default="", help="comma-separated L_1,L_2,...; the last value repeats")
    p.add_argument("--V", default="", help="comma-separated V_1,V_2,...; the last value repeats")
    p.add_argument("--word", help="boson word; reports W_n and V_n instead")

    p = add("diagrams", cmd_diagrams, "enumerate grade-n diagrams")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--connected-only", action="store_true")
    p.add_argument("--dot", metavar="DIR", help="write one DOT file per listed diagram")

    p = add("hopf-check", cmd_hopf_check, "check the Hopf axioms", formats=())
    p.add_argument("--algebra", choices=["bell", "diag"], required=True)
    p.add_argument("--grade", type=int, required=True)

    p = add("morphism-check", cmd_morphism_check, "check a DIAG -> BELL map", formats=())
    p.add_argument("--map", required=True, help="bell, contract, zero, or a JSON file")
    p.add_argument("--grade", type=int, required=True)

    p = add("cumulants", cmd_cumulants, "moments <-> cumulants")
    p.add_argument("--moments", metavar="FILE")
    p.add_argument("--word")
    p.add_argument("--N", type=int)
    p.add_argument("--invert", action="store_true", help="input holds cumulants V_1..V_N")
    p.add_argument("--check-roundtrip", action="store_true")

    p = add("partition-function", cmd_partition_function, "free-boson partition function")
    p.add_argument("--beta-eps", type=float, required=True)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except BoundExceededError as exc:
        sys.stderr.write(f"hopfdiag: {exc}\n")
        return EXIT_BOUND
    except (UsageError, ParseError) as exc:
        sys.stderr.write(f"hopfdiag: {exc}\n")
        return EXIT_USAGE
    except (HopfDiagError, ValueError) as exc:
        sys.stderr.write(f"hopfdiag: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
