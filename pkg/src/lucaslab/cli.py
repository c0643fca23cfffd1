"""Command-line front end.

Subcommands: list (registry contents), seq (sequence terms), check
(identity verification), bench (naive vs fast-doubling timing).
Data goes to stdout, diagnostics to stderr.  Exit codes: 0 success,
1 check failures or a bench mismatch, 2 usage errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

from . import identities
from .identities import DEFAULT_SEED, SYM, check_grid, get_record, registry, report_to_dict
from .rings import Ring, RingError
from .sequences import SeqKind, named_term

_FAST_CUTOFF = 64  # seq switches to doubling beyond this index magnitude

_BENCH_KINDS = (
    SeqKind.FIBONACCI,
    SeqKind.LUCAS,
    SeqKind.PELL,
    SeqKind.PELL_LUCAS,
    SeqKind.JACOBSTHAL,
    SeqKind.JACOBSTHAL_LUCAS,
)


class UsageError(Exception):
    pass


def _parse_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo_s, _, hi_s = text.partition("..")
        try:
            lo, hi = int(lo_s), int(hi_s)
        except ValueError:
            raise UsageError(f"bad range {text!r}: expected a..b") from None
    else:
        try:
            lo = hi = int(text)
        except ValueError:
            raise UsageError(f"bad range {text!r}: expected a..b or an integer") from None
    if hi < lo:
        raise UsageError(f"bad range {text!r}: end before start")
    return lo, hi


def _parse_kind(text: str) -> SeqKind:
    try:
        return SeqKind(text.lower())
    except ValueError:
        names = ", ".join(k.value for k in SeqKind)
        raise UsageError(f"unknown kind {text!r}; choose from: {names}") from None


def _parse_binding(ring: Ring, text: str):
    """One binding flag value: 'sym', an expression, or a comma list."""
    if text.strip().lower() == SYM:
        return SYM
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise UsageError("empty binding value")
    vals = [ring.parse(p) for p in parts]
    return vals[0] if len(vals) == 1 else vals


def _digits_head_tail(value: int) -> tuple[int, str, str]:
    """Decimal digit count plus first/last 8 digits, without converting
    the whole integer to a string (quadratic on this interpreter)."""
    x = abs(value)
    if x == 0:
        return 1, "0", "0"
    d = max(1, int(x.bit_length() * 0.30102999566398119))
    p = 10**d
    while p <= x:
        d += 1
        p *= 10
    while d > 1 and p > 10 * x:
        d -= 1
        p //= 10
    head = str(x // 10 ** (d - 8)) if d > 8 else str(x)
    tail = str(x % 10**8).zfill(min(d, 8))
    return d, head, tail


def _print_rows(rows: list[dict], fmt: str, columns: list[str]) -> None:
    if fmt == "json":
        print(json.dumps(rows, indent=2))
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        sys.stdout.write(buf.getvalue())
    else:
        for row in rows:
            print("\t".join(str(row[c]) for c in columns))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lucaslab",
        description="Exact Lucas/Chebyshev sequence terms and identity checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("list", help="print the identity registry")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")

    p = sub.add_parser("seq", help="print sequence terms over an index range")
    p.add_argument("kind", help="e.g. fibonacci, pell, lucaspoly, chebt, lucasu")
    p.add_argument("range", help="index range a..b (inclusive) or a single index")
    p.add_argument("--arg", help="argument expression for polynomial kinds")
    p.add_argument("--y", dest="y", help="y expression for lucasu/lucasv")
    p.add_argument("--z", dest="z", help="z expression for lucasu/lucasv")
    p.add_argument("--ext-square", type=int, default=None, help="square of the generator w")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")

    p = sub.add_parser("check", help="verify identities on index/binding grids")
    p.add_argument("ids", nargs="*", help="identity ids (see: lucaslab list)")
    p.add_argument("--all", action="store_true", help="check every registry entry")
    p.add_argument("--mode", choices=("symbolic", "numeric", "both"), default="both")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--n", dest="n_range", help="n range lo..hi (relative to c when the identity has c)")
    p.add_argument("--c", dest="c_range", help="c range lo..hi")
    p.add_argument("--m", dest="m_range", help="m range lo..hi (parity filters still apply)")
    p.add_argument("--x", help="binding: expression, comma list, or 'sym'")
    p.add_argument("--y", help="binding for y")
    p.add_argument("--z", help="binding for z")
    p.add_argument("--r", help="binding for r")
    p.add_argument("--ext-square", type=int, default=None, help="extension square for parsing binding expressions")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")

    p = sub.add_parser("bench", help="time naive vs fast-doubling evaluation")
    p.add_argument("kind")
    p.add_argument("n", type=int)
    p.add_argument("--impl", choices=("naive", "fast", "both"), default="both")
    p.add_argument("--repeat", type=int, default=1)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")

    return parser


def _cmd_list(args) -> int:
    rows = [
        {
            "id": r.id,
            "statement": r.statement,
            "domain": r.domain,
            "indices": ",".join(r.index_params),
            "free_vars": ",".join(r.free_vars),
            "ext_square": "" if r.ext_square is None else str(r.ext_square),
        }
        for r in registry()
    ]
    _print_rows(rows, args.format, ["id", "statement", "domain", "indices", "free_vars", "ext_square"])
    return 0


def _cmd_seq(args) -> int:
    kind = _parse_kind(args.kind)
    lo, hi = _parse_range(args.range)
    ring = Ring(args.ext_square)
    arg = y = z = None
    if kind in (SeqKind.FIBONACCI_POLY, SeqKind.LUCAS_POLY, SeqKind.CHEB_T, SeqKind.CHEB_U):
        default_var = "y" if kind in (SeqKind.CHEB_T, SeqKind.CHEB_U) else "x"
        arg = ring.parse(args.arg) if args.arg else ring.var(default_var)
    elif args.arg:
        raise UsageError(f"{kind.value} takes no --arg")
    if kind in (SeqKind.LUCAS_U, SeqKind.LUCAS_V):
        y = ring.parse(args.y) if args.y else ring.var("y")
        z = ring.parse(args.z) if args.z else ring.var("z")
    elif args.y or args.z:
        raise UsageError(f"{kind.value} takes no --y/--z")

    rows = []
    for n in range(lo, hi + 1):
        value = named_term(kind, n, arg=arg, y=y, z=z, fast=abs(n) > _FAST_CUTOFF)
        rows.append({"n": n, "value": str(value)})
    _print_rows(rows, args.format, ["n", "value"])
    return 0


def _check_rows(reports, fmt):
    if fmt == "json":
        print(json.dumps([report_to_dict(r) for r in reports], indent=2))
        return
    rows = []
    for rep in reports:
        if rep.failures:
            for f in rep.failures:
                rows.append({
                    "id": rep.id,
                    "params": json.dumps(f.params, sort_keys=True),
                    "status": "fail",
                    "lhs": f.lhs,
                    "rhs": f.rhs,
                    "millis": f"{rep.millis:.3f}",
                })
        else:
            rows.append({
                "id": rep.id,
                "params": f"cases={rep.attempted}",
                "status": "pass",
                "lhs": "",
                "rhs": "",
                "millis": f"{rep.millis:.3f}",
            })
    if fmt == "csv":
        _print_rows(rows, "csv", ["id", "params", "status", "lhs", "rhs", "millis"])
    else:
        for rep in reports:
            status = "pass" if not rep.failures else "FAIL"
            print(f"{rep.id}: {status} ({rep.passed}/{rep.attempted} cases)")
            for f in rep.failures:
                print(f"  {json.dumps(f.params, sort_keys=True)}: lhs={f.lhs} rhs={f.rhs}")


def _cmd_check(args) -> int:
    if args.all:
        idents = [r.id for r in registry()]
    elif args.ids:
        idents = args.ids
    else:
        raise UsageError("give identity ids or --all")
    for ident in idents:
        get_record(ident)  # raises UnknownIdentity for bad ids before any work

    ring = Ring(args.ext_square)
    bindings = {}
    for var in ("x", "y", "z", "r"):
        raw = getattr(args, var)
        if raw is not None:
            bindings[var] = _parse_binding(ring, raw)

    n_range = _parse_range(args.n_range) if args.n_range else None
    c_range = _parse_range(args.c_range) if args.c_range else None
    m_values = None
    if args.m_range:
        m_lo, m_hi = _parse_range(args.m_range)
        m_values = range(m_lo, m_hi + 1)

    reports = [
        check_grid(
            ident,
            n_range=n_range,
            c_range=c_range,
            m_values=m_values,
            bindings=bindings,
            mode=args.mode,
            seed=args.seed,
        )
        for ident in idents
    ]
    _check_rows(reports, args.format)
    return 0 if all(not r.failures for r in reports) else 1


def _cmd_bench(args) -> int:
    kind = _parse_kind(args.kind)
    if kind not in _BENCH_KINDS:
        names = ", ".join(k.value for k in _BENCH_KINDS)
        raise UsageError(f"bench supports the integer kinds: {names}")
    if args.n < 0:
        raise UsageError("bench needs n >= 0")
    if args.repeat < 1:
        raise UsageError("--repeat must be at least 1")
    impls = ("naive", "fast") if args.impl == "both" else (args.impl,)

    results = {}
    rows = []
    for impl in impls:
        best = None
        value = None
        for _ in range(args.repeat):
            t0 = time.perf_counter()
            value = named_term(kind, args.n, fast=(impl == "fast"))
            dt = (time.perf_counter() - t0) * 1000.0
            best = dt if best is None else min(best, dt)
        results[impl] = value
        digits, head, tail = _digits_head_tail(value.as_int())
        rows.append({
            "impl": impl,
            "millis": f"{best:.3f}",
            "digits": digits,
            "head": head,
            "tail": tail,
        })
    if args.impl == "both" and results["naive"] != results["fast"]:
        print("bench: naive and fast values disagree", file=sys.stderr)
        return 1
    _print_rows(rows, args.format, ["impl", "millis", "digits", "head", "tail"])
    return 0


# flags whose values may start with '-' (negative bounds, negative bindings);
# fused into --flag=value so the option parser does not read them as flags
_VALUE_FLAGS = ("--n", "--c", "--m", "--x", "--y", "--z", "--r", "--arg")


def _fuse_flag_values(argv: list[str]) -> list[str]:
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok == "--":
            out.extend(argv[i:])
            break
        if tok in _VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)  # seq prints full terms, however large
    try:
        args = _build_parser().parse_args(_fuse_flag_values(list(argv)))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "list":
            return _cmd_list(args)
        if args.command == "seq":
            return _cmd_seq(args)
        if args.command == "check":
            return _cmd_check(args)
        if args.command == "bench":
            return _cmd_bench(args)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"lucaslab: {exc}", file=sys.stderr)
        return 2
    except identities.UnknownIdentity as exc:
        print(f"lucaslab: unknown identity {exc}", file=sys.stderr)
        return 2
    except identities.DomainError as exc:
        print(f"lucaslab: {exc}", file=sys.stderr)
        return 2
    except (RingError, ValueError, TypeError) as exc:
        print(f"lucaslab: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
