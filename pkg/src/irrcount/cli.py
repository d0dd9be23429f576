"""Command-line front end.

    irrcount count P --q 4 --n 3 --t 0 --s 0
    irrcount table F --q 4 --n 3 --format pretty
    irrcount enumerate --q 2 --n 4 --t 0 --s 0
    irrcount verify --max-points 65536
    irrcount show-elements --q 8

Exit status: 0 success, 1 verification failure, 2 usage error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import counting, oracle
from .errors import BudgetExceeded, ReducibleModulus, UnsupportedDegree
from .extfield import ext_make
from .gf2k import FieldParams, element_pretty, fp_make
from .polyring import enumerate_monic_irreducibles, parse_poly, to_text

EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 1, 2, 3
FORMATS = ("json", "csv", "pretty")


@dataclass
class CliConfig:
    params: FieldParams
    ext_modulus: str | None
    fmt: str
    budget: oracle.Budget


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--q", type=int, help="base field size, a power of two (default 2)")
    g.add_argument("--k", type=int, help="base field degree over GF(2)")
    p.add_argument("--modulus", help="base-field modulus as a bit vector, decimal or 0x-hex")
    p.add_argument("--ext-modulus", help='modulus of GF(q^n) for element sweeps, e.g. "x^3+x+1"')
    p.add_argument("--format", choices=FORMATS, help="default: pretty (json for verify)")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--max-points", type=int, default=oracle.DEFAULT_MAX_POINTS)
    p.add_argument("--max-poly", type=int, default=oracle.DEFAULT_MAX_POLY)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="irrcount",
        description="Count irreducible polynomials over GF(2^k) by trace and subtrace.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="one exact count")
    p.add_argument("kind", choices=counting.KINDS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True, help="trace, as an element index")
    p.add_argument("--s", type=int, required=True, help="subtrace, as an element index")
    p.add_argument("--oracle", action="store_true", help="also compute by brute force")

    p = sub.add_parser("table", parents=[common], help="the full (t, s) grid")
    p.add_argument("kind", choices=counting.KINDS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--oracle", action="store_true", help="compute by brute force instead")

    p = sub.add_parser("enumerate", parents=[common], help="list monic irreducibles")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int)
    p.add_argument("--s", type=int)

    p = sub.add_parser("verify", parents=[common], help="run the oracle grid (JSON report)")
    p.add_argument("--max-k", type=int, default=16)
    p.add_argument("--time-cap", type=float)

    sub.add_parser("show-elements", parents=[common], help="index <-> polynomial form")
    return parser


def _config(args) -> CliConfig:
    if args.k is not None:
        k = args.k
    elif args.q is not None:
        if args.q < 2 or args.q & (args.q - 1):
            raise UsageError(f"--q {args.q} is not a power of two")
        k = args.q.bit_length() - 1
    else:
        k = 1
    modulus = int(args.modulus, 0) if args.modulus else None
    try:
        params = fp_make(k, modulus)
    except (UnsupportedDegree, ReducibleModulus) as exc:
        raise UsageError(str(exc)) from exc
    if args.threads < 1:
        raise UsageError("--threads must be positive")
    if not 0 < args.max_points <= oracle.DEFAULT_MAX_POINTS:
        raise UsageError(f"--max-points must be in 1..{oracle.DEFAULT_MAX_POINTS}")
    if not 0 < args.max_poly <= oracle.DEFAULT_MAX_POLY:
        raise UsageError(f"--max-poly must be in 1..{oracle.DEFAULT_MAX_POLY}")
    budget = oracle.Budget(
        max_points=args.max_points,
        max_poly=args.max_poly,
        threads=args.threads,
        time_cap=getattr(args, "time_cap", None),
    )
    return CliConfig(params, args.ext_modulus, args.format, budget)


def _element(params: FieldParams, value: int | None, name: str) -> int | None:
    if value is not None and not 0 <= value < params.q:
        raise UsageError(f"--{name} {value} is not an element index of GF({params.q})")
    return value


def _ext(cfg: CliConfig, n: int):
    if cfg.ext_modulus is None:
        return ext_make(cfg.params, n)
    try:
        f = parse_poly(cfg.ext_modulus, cfg.params)
        return ext_make(cfg.params, n, f)
    except (ValueError, ReducibleModulus) as exc:
        raise UsageError(f"--ext-modulus: {exc}") from exc


def _meta(cfg: CliConfig, n: int | None = None, ext=None) -> dict:
    p = cfg.params
    meta = {"q": p.q, "k": p.k, "modulus": p.modulus}
    if n is not None:
        meta["n"] = n
    if ext is not None:
        meta["ext_modulus"] = to_text(ext.modulus)
    return meta


def _header(meta: dict) -> str:
    mod = meta["modulus"]
    line = f"# GF({meta['q']}) modulus {element_pretty(mod, 'x')} ({mod:#x})"
    if "ext_modulus" in meta:
        line += f", extension modulus {meta['ext_modulus']}"
    return line


def _oracle_table(kind: str, cfg: CliConfig, n: int):
    if kind == "F":
        ext = _ext(cfg, n)
        return oracle.oracle_F(cfg.params, n, cfg.budget, ext), ext
    if kind == "Fstar":
        return oracle.oracle_Fstar(cfg.params, n, cfg.budget), None
    return oracle.oracle_P(cfg.params, n, cfg.budget), None


def _closed_value(kind: str, params: FieldParams, n: int, t: int, s: int) -> int:
    if kind == "F":
        return counting.F_dispatch(params, n, t, s)
    if kind == "Fstar":
        return counting.Fstar_closed(params, n, t, s)
    return counting.P_count(params, n, t, s)


def cmd_count(args, cfg: CliConfig, out) -> int:
    n = args.n
    if n < (1 if args.kind == "F" else 2):
        raise UsageError(f"n = {n} is too small for kind {args.kind}")
    t = _element(cfg.params, args.t, "t")
    s = _element(cfg.params, args.s, "s")
    value = _closed_value(args.kind, cfg.params, n, t, s)
    ext = None
    brute = None
    if args.oracle:
        table, ext = _oracle_table(args.kind, cfg, n)
        brute = table[t, s]
    meta = _meta(cfg, n, ext)
    if cfg.fmt == "json":
        doc = {**meta, "kind": args.kind, "t": t, "s": s, "count": str(value)}
        if brute is not None:
            doc.update(oracle=str(brute), match=brute == value)
        print(json.dumps(doc), file=out)
    elif cfg.fmt == "csv":
        print(_header(meta), file=out)
        cols = ["kind", "n", "t", "s", "count"] + (["oracle", "match"] if brute is not None else [])
        vals = [args.kind, n, t, s, value] + ([brute, str(brute == value).lower()] if brute is not None else [])
        print(",".join(cols), file=out)
        print(",".join(str(v) for v in vals), file=out)
    else:
        print(_header(meta), file=out)
        print(value, file=out)
        if brute is not None:
            print(f"oracle {brute}", file=out)
            print(f"match {str(brute == value).lower()}", file=out)
    return 0 if brute is None or brute == value else EXIT_FAIL


def cmd_table(args, cfg: CliConfig, out) -> int:
    n = args.n
    if n < 2:
        raise UsageError("tables need n >= 2")
    ext = None
    if args.oracle:
        table, ext = _oracle_table(args.kind, cfg, n)
    else:
        table = counting.count_table(args.kind, cfg.params, n)
    meta = _meta(cfg, n, ext)
    if cfg.fmt == "json":
        doc = table.to_dict()
        if ext is not None:
            doc["ext_modulus"] = meta["ext_modulus"]
        print(json.dumps(doc, indent=2), file=out)
    elif cfg.fmt == "csv":
        print(_header(meta), file=out)
        out.write(table.to_csv())
    else:
        print(_header(meta), file=out)
        print(f"# {args.kind}({n}, t, s): rows t, columns s", file=out)
        print(table.to_pretty(), file=out)
    return 0


def cmd_enumerate(args, cfg: CliConfig, out) -> int:
    t = _element(cfg.params, args.t, "t")
    s = _element(cfg.params, args.s, "s")
    if args.n < 1 or (s is not None and args.n < 2):
        raise UsageError("n too small for the requested filter")
    polys = enumerate_monic_irreducibles(cfg.params, args.n, t, s, cfg.budget.max_poly)
    meta = _meta(cfg, args.n)
    if cfg.fmt == "json":
        print(json.dumps({**meta, "t": t, "s": s, "polynomials": [to_text(f) for f in polys],
                          "count": len(polys)}), file=out)
    else:
        print(_header(meta), file=out)
        for f in polys:
            print(to_text(f), file=out)
        print(f"count {len(polys)}", file=out)
    return 0


def cmd_verify(args, cfg: CliConfig, out) -> int:
    if cfg.fmt != "json":
        raise UsageError("verify reports are JSON only")
    report = oracle.verify_grid(max_k=args.max_k, budget=cfg.budget)
    doc = {**_meta(cfg), **report.to_dict()}
    print(json.dumps(doc, indent=2), file=out)
    return 0 if report.ok else EXIT_FAIL


def cmd_show_elements(args, cfg: CliConfig, out) -> int:
    meta = _meta(cfg)
    if cfg.fmt == "json":
        print(json.dumps({**meta, "elements": [element_pretty(i) for i in range(cfg.params.q)]}), file=out)
    else:
        print(_header(meta), file=out)
        for i in range(cfg.params.q):
            print(f"{i}\t{element_pretty(i)}", file=out)
    return 0


COMMANDS = {
    "count": cmd_count,
    "table": cmd_table,
    "enumerate": cmd_enumerate,
    "verify": cmd_verify,
    "show-elements": cmd_show_elements,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = "json" if args.command == "verify" else "pretty"
    try:
        cfg = _config(args)
        return COMMANDS[args.command](args, cfg, out)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"irrcount: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"irrcount: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
