"""Command-line front end: ``gaussmaps corank | ledger | verify-all``.

Exit codes: 0 success, 1 verification mismatch, 2 invalid input, 3 prime
disagreement after retries, 4 closed-form corank inapplicable, 5 matrix size
guard exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import ledger
from .curves import CIType, InvalidTypeError
from .exactlin import DEFAULT_MAX_CELLS, SizingError
from .gaussmap import (
    SCHEMA_VERSION,
    FormulaInapplicableError,
    InstabilityError,
    corank_pair,
    corank_wedge,
    formula_report,
)
from .verify import run_checks

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID, EXIT_UNSTABLE, EXIT_FORMULA, EXIT_SIZING = range(6)


class UsageError(ValueError):
    pass


def _parse_pair(text: str, k: int) -> tuple[int, int]:
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != 2:
        raise UsageError(f"--pair expects 'a,b', got {text!r}")
    out = []
    for s in parts:
        coeff, has_k, rest = s.partition("k")
        if rest or not (coeff or has_k):
            raise UsageError(f"cannot read twist {s!r}")
        try:
            value = int(coeff) if coeff else 1
        except ValueError as exc:
            raise UsageError(f"cannot read twist {s!r}") from exc
        out.append(value * k if has_k else value)
    return out[0], out[1]


def _emit(obj: dict | str, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        print(obj)


def _render_corank(rep) -> str:
    lines = [
        f"type        {rep.citype}   (g={rep.citype.g}, k={rep.citype.k})",
        f"map         {rep.mode} O({rep.a}) x O({rep.b}) -> omega(k+{rep.a + rep.b})",
        f"path        {rep.path}",
        f"rank        {rep.rank}",
        f"target dim  {rep.target_dim}",
        f"corank      {rep.corank}",
    ]
    if rep.path == "matrix":
        lines.append(f"primes      {', '.join(map(str, rep.primes))}")
        lines.append(f"coranks     {', '.join(map(str, rep.coranks))}")
        lines.append(f"curve seeds {', '.join(map(str, rep.seeds))}")
    return "\n".join(lines)


def cmd_corank(args) -> int:
    t = CIType.parse(args.type)
    if args.method == "formula":
        if args.pair:
            raise UsageError("--method formula only covers the wedge map")
        rep = formula_report(t)
    else:
        kw = dict(seed=args.seed, primes=args.prime, retries=args.retries, max_cells=args.max_cells)
        a, b = _parse_pair(args.pair, t.k) if args.pair else (t.k, t.k)
        if (a, b) == (t.k, t.k):
            rep = corank_wedge(t, **kw)
        else:
            rep = corank_pair(t, a, b, **kw)
    _emit(rep.to_dict() if args.format == "json" else _render_corank(rep), args.format)
    return EXIT_OK


def _ledger_dict(e: ledger.LedgerEntry, rep, seed) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "r": e.r,
        "g": e.g,
        "n": e.n,
        "N": e.N,
        "corank": {
            "expected": e.table_corank,
            "computed": rep.corank if rep else None,
            "primes": list(rep.primes) if rep else [],
            "seed": seed if rep else None,
        },
        "h0n2": e.h0n2,
        "f": e.f_value,
        "bound": e.bound_value,
        "hilbert_k3_dim": e.hilbert_k3_dim,
        "zak": e.zak,
        "verdict": e.verdict,
        "parameters": e.table_parameters,
        "provenance": e.provenance,
        "hypotheses": e.hypotheses,
        "notes": list(e.notes),
    }


def _render_ledger(d: dict) -> str:
    def show(v):
        return "-" if v is None else str(v)

    c = d["corank"]
    corank = show(c["expected"])
    if c["computed"] is not None:
        corank += f" (computed {c['computed']} at primes {', '.join(map(str, c['primes']))})"
    lines = [
        f"(r, g, n)       ({d['r']}, {d['g']}, {d['n']})",
        f"N               {d['N']}",
        f"corank          {corank}",
        f"h0(N_C(-2))     {show(d['h0n2'])}",
        f"f               {show(d['f'])}",
        f"bound           {show(d['bound'])}",
        f"dim Hilb K3     {d['hilbert_k3_dim']}",
        f"not k-ext from  {show(d['zak'])}",
        f"known family    {show(d['parameters'])}",
        f"verdict         {d['verdict']}",
    ]
    for key, value in d["provenance"].items():
        lines.append(f"source {key:<9}{value}")
    lines.extend(f"note            {n}" for n in d["notes"])
    return "\n".join(lines)


def cmd_ledger(args) -> int:
    if args.dump_tables:
        print(json.dumps(ledger.load_tables(), indent=2))
        return EXIT_OK
    if args.r is None or args.g is None:
        raise UsageError("ledger needs --r and --g (or --dump-tables)")
    if args.r < 1 or args.g < 2 or (args.n is not None and args.n < 3):
        raise UsageError("need r >= 1, g >= 2 and n >= 3")
    rep = None
    if args.compute:
        from .curves import ci_types

        match = [t for t, r, g in ci_types() if (r, g) == (args.r, args.g)]
        if not match:
            raise UsageError(f"(r,g)=({args.r},{args.g}) has no complete-intersection model to compute")
        rep = corank_wedge(match[0], seed=args.seed, primes=args.prime, retries=args.retries, max_cells=args.max_cells)
    entry = ledger.classification_report(args.r, args.g, args.n, computed=rep)
    d = _ledger_dict(entry, rep, args.seed)
    if entry.verdict == ledger.OUTSIDE:
        print(f"warning: ({args.r},{args.g}) n={entry.n} is outside the classified range", file=sys.stderr)
    _emit(d if args.format == "json" else _render_ledger(d), args.format)
    return EXIT_OK


def _render_verify(report, timings: bool) -> str:
    lines = [f"verify-all  seed={report.seed}"]
    head = f"{'check':<24}{'expected':>14}{'computed':>14}  {'provenance':<10} result"
    lines.append(head + ("    time" if timings else ""))
    for c in report.checks:
        row = f"{c.id:<24}{c.expected!s:>14}{c.computed!s:>14}  {c.provenance:<10} {'PASS' if c.passed else 'FAIL'}"
        if timings and c.runtime is not None:
            row += f"  {c.runtime:6.2f}s"
        lines.append(row)
    s = report.summary()
    lines.append("groups: " + "  ".join(f"{k} {v}" for k, v in s["groups"].items()))
    lines.append(f"total {s['total']}  passed {s['passed']}  failed {s['failed']}")
    return "\n".join(lines)


def cmd_verify_all(args) -> int:
    inject = {}
    for item in args.inject_mismatch or ():
        cid, _, off = item.partition("=")
        try:
            inject[cid] = int(off) if off else 1
        except ValueError as exc:
            raise UsageError(f"bad --inject-mismatch {item!r}") from exc
    try:
        report = run_checks(args.seed, primes=args.prime, retries=args.retries, max_cells=args.max_cells, inject=inject)
    except KeyError as exc:
        raise UsageError(str(exc)) from exc
    if args.format == "json":
        _emit(report.to_dict(args.timings), "json")
    else:
        print(_render_verify(report, args.timings))
    return EXIT_OK if report.ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="64-bit seed for prime and curve draws")
    common.add_argument("--prime", type=int, action="append", help="explicit 31-bit prime (repeatable, max 2)")
    common.add_argument("--retries", type=int, default=3, help="extra primes tried when coranks disagree")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--max-cells", type=int, default=DEFAULT_MAX_CELLS, help="matrix size guard")

    parser = argparse.ArgumentParser(prog="gaussmaps", description="Gaussian map coranks and classification arithmetic.")
    sub = parser.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("corank", parents=[common], help="corank of a Gaussian map on a CI curve")
    pc.add_argument("--type", required=True, help="degrees, e.g. 2,2,3")
    pc.add_argument("--pair", help="twists a,b; accepts k-multiples such as k,2k (default: wedge k,k)")
    pc.add_argument("--method", choices=("matrix", "formula"), default="matrix")
    pc.set_defaults(func=cmd_corank)

    pl = sub.add_parser("ledger", parents=[common], help="parameter counts and verdicts for (r, g[, n])")
    pl.add_argument("--r", type=int)
    pl.add_argument("--g", type=int)
    pl.add_argument("--n", type=int)
    pl.add_argument("--compute", action="store_true", help="recompute the corank on the CI model")
    pl.add_argument("--dump-tables", action="store_true", help="print the embedded dataset as JSON")
    pl.set_defaults(func=cmd_ledger)

    pv = sub.add_parser("verify-all", parents=[common], help="run the full verification suite")
    pv.add_argument("--timings", action="store_true", help="include per-check runtimes (output no longer reproducible)")
    pv.add_argument("--inject-mismatch", action="append", metavar="ID[=OFFSET]", help="test mode: perturb an expected value")
    pv.set_defaults(func=cmd_verify_all)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.retries < 0:
        print("error: --retries must be >= 0", file=sys.stderr)
        return EXIT_INVALID
    try:
        return args.func(args)
    except FormulaInapplicableError as exc:
        code, msg = EXIT_FORMULA, str(exc)
    except SizingError as exc:
        code, msg = EXIT_SIZING, str(exc)
    except InstabilityError as exc:
        code, msg = EXIT_UNSTABLE, str(exc)
    except ValueError as exc:
        code, msg = EXIT_INVALID, str(exc)
    print(f"error: {msg}", file=sys.stderr)
    return code

if __name__ == "__main__":
    sys.exit(main())
