"""Command-line front end: ``matineq {list,verify,replay,demo}``.

Exit codes: 0 success, 1 verification failures, 2 usage errors, 3 I/O errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence, TextIO

from .concave import parse_fn
from .errors import MatIneqError
from .fixtures import DERIVED_EXAMPLES, EQUALITY_FIXTURES
from .harness import (
    CSV_HEADER,
    DEFAULT_TOL,
    EXPERIMENTAL_IDS,
    REGISTRY,
    SuiteOptions,
    TrialResult,
    emit_report,
    fixture_ok,
    replay,
    run_fixture,
    run_suite,
)
from .norms import NormSpec
from .sampling import PROFILES

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
DEFAULT_SEED = 42
SEED_ENV = "MATINEQ_SEED"


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    """``"1,2,5"`` or ``"1-6"`` or a mix like ``"1-3,6"``."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        lo, sep, hi = part.partition("-")
        try:
            if sep:
                a, b = int(lo), int(hi)
                if b < a:
                    raise ValueError
                out.extend(range(a, b + 1))
            else:
                out.append(int(part))
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid integer list {text!r}") from None
    if not out or any(d < 1 for d in out):
        raise argparse.ArgumentTypeError(f"invalid dimension list {text!r}")
    return out


def _str_list(text: str) -> list[str]:
    items = [s.strip() for s in text.split(",") if s.strip()]
    if not items:
        raise argparse.ArgumentTypeError("empty list")
    return items


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return v


def _seed(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer seed: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("seed must be >= 0")
    return v


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=_seed, default=None, help=f"base seed (default {DEFAULT_SEED}, or ${SEED_ENV})")
    p.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL, help="tolerance (default 1e-9)")
    p.add_argument("--format", choices=("json", "csv"), default=None, help="machine-readable output")
    p.add_argument("--out", default=None, metavar="PATH", help="write the output to PATH")
    p.add_argument("--fn", default=None, help="concave function: id, sqrt, pow:<p>, log1p, ratio")
    p.add_argument("--norm", default=None, help="norm: op, tr, fro, kf:<k>, sch:<p>")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="matineq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="print the inequality registry")

    v = sub.add_parser("verify", help="run a randomized verification suite")
    v.add_argument("--dims", type=_int_list, default=list(range(1, 7)), help="dimensions, e.g. 1-6 or 2,4")
    v.add_argument("--profiles", type=_str_list, default=None, help="sampler profiles (default all)")
    v.add_argument("--trials", type=_positive_int, default=200, help="trials per (dim, profile) cell")
    v.add_argument("--ineq", type=_str_list, default=None, help="descriptor ids (default all)")
    _add_common(v)

    r = sub.add_parser("replay", help="re-run one trial from its seed")
    r.add_argument("--ineq", required=True, help="descriptor id")
    r.add_argument("--dim", type=_positive_int, required=True)
    r.add_argument("--profile", required=True)
    _add_common(r)

    d = sub.add_parser("demo", help="run the deterministic fixtures")
    d.add_argument("--format", choices=("json", "csv"), default=None)
    d.add_argument("--out", default=None, metavar="PATH")
    return parser


def _resolve_seed(seed: int | None) -> int:
    if seed is not None:
        return seed
    env = os.environ.get(SEED_ENV)
    if env is None or env.strip() == "":
        return DEFAULT_SEED
    try:
        value = int(env)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {env!r}") from None
    if value < 0:
        raise UsageError(f"{SEED_ENV} must be >= 0")
    return value


def _options(args: argparse.Namespace) -> SuiteOptions:
    try:
        fn = parse_fn(args.fn) if args.fn else None
        norm = NormSpec.parse(args.norm) if args.norm else None
    except (MatIneqError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    return SuiteOptions(fn=fn, norm=norm)


def _check_ids(ids: Sequence[str]) -> None:
    unknown = [i for i in ids if i not in REGISTRY]
    if unknown:
        raise UsageError(f"unknown descriptor id(s): {', '.join(unknown)}")


def _check_profiles(profiles: Sequence[str]) -> None:
    valid = set(PROFILES)
    unknown = [p for p in profiles if p not in valid]
    if unknown:
        raise UsageError(f"unknown profile(s): {', '.join(unknown)}; choose from {', '.join(sorted(valid))}")


def _write(text: str, path: str | None, stdout: TextIO) -> None:
    if path is None:
        stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _table(rows: list[list[str]], header: list[str]) -> str:
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    lines = [fmt.format(*header), fmt.format(*("-" * w for w in widths))]
    lines += [fmt.format(*map(str, r)) for r in rows]
    return "\n".join(line.rstrip() for line in lines) + "\n"


def _cmd_list(stdout: TextIO) -> int:
    rows = [[d.id, d.arity, f"n>={d.min_dim}", d.reference] for d in REGISTRY.values()]
    stdout.write(_table(rows, ["id", "arity", "dims", "statement"]))
    stdout.write(f"experimental (non-gating): {', '.join(EXPERIMENTAL_IDS)}\n")
    return EXIT_OK


def _fmt(x) -> str:
    return "-" if x is None else f"{x:.6g}" if isinstance(x, float) else str(x)


def _cmd_verify(args: argparse.Namespace, stdout: TextIO) -> int:
    ids = args.ineq
    if ids is not None:
        _check_ids(ids)
    if args.profiles is not None:
        _check_profiles(args.profiles)
    report = run_suite(ids, args.dims, args.profiles, args.trials, _resolve_seed(args.seed), args.tol, _options(args))
    if args.format is not None or args.out is not None:
        text = emit_report(report, args.format or "json")
        _write(text, args.out, stdout)
    if args.format is None:
        rows = []
        for a in report.results:
            d = a.to_dict()
            rows.append([a.descriptor, d["trials"], d["not_applicable"], d["failures"], d["equality_hits"],
                         _fmt(d["min_margin"])])
        stdout.write(_table(rows, ["descriptor", "trials", "n/a", "failures", "equality", "min margin"]))
        bad = [(fx.name, r.status) for fx, r, ok in report.fixtures if not ok]
        stdout.write(f"fixtures: {len(report.fixtures) - len(bad)}/{len(report.fixtures)} as expected\n")
        for name, status in bad:
            stdout.write(f"  fixture {name!r} gave {status}\n")
        for a in report.experimental:
            d = a.to_dict()
            stdout.write(f"experimental {a.descriptor}: trials={d['trials']} violations={d['failures']} "
                         f"min margin={_fmt(d['min_margin'])}\n")
        stdout.write("PASS\n" if report.ok else f"FAIL ({report.failures} failures)\n")
    return EXIT_OK if report.ok else EXIT_FAIL


def _trial_text(r: TrialResult) -> str:
    lines = [f"{k}: {v}" for k, v in r.to_dict().items()]
    for eid, lhs, rhs, margin, status in r.experimental:
        lines.append(f"experimental {eid}: lhs={lhs!r} rhs={rhs!r} margin={margin!r} status={status}")
    return "\n".join(lines) + "\n"


def _cmd_replay(args: argparse.Namespace, stdout: TextIO) -> int:
    _check_ids([args.ineq])
    _check_profiles([args.profile])
    r = replay(args.ineq, args.dim, args.profile, _resolve_seed(args.seed), args.tol, _options(args))
    if args.format == "json":
        text = json.dumps(r.to_dict(), indent=2) + "\n"
    elif args.format == "csv":
        text = ",".join(CSV_HEADER) + "\n" + ",".join(
            [r.descriptor_id, str(r.dim), r.profile, str(r.seed), repr(r.lhs), repr(r.rhs), repr(r.margin), r.status]
        ) + "\n"
    else:
        text = _trial_text(r)
    _write(text, args.out, stdout)
    return EXIT_FAIL if r.status == "fail" else EXIT_OK


def run_demo() -> tuple[list[dict], bool]:
    """Evaluate every derived example and equality fixture."""
    rows = []
    for ex in DERIVED_EXAMPLES:
        observed, expected, ok = ex.run()
        rows.append({"kind": "value", "name": ex.name, "observed": observed, "expected": expected, "ok": ok})
    for fx in EQUALITY_FIXTURES:
        r = run_fixture(fx)
        rows.append({"kind": "fixture", "name": fx.name, "descriptor": fx.descriptor_id, "expect": fx.expect,
                     "status": r.status, "lhs": r.lhs, "rhs": r.rhs, "ok": fixture_ok(fx, r)})
    return rows, all(row["ok"] for row in rows)


def _cmd_demo(args: argparse.Namespace, stdout: TextIO) -> int:
    rows, ok = run_demo()
    if args.format == "json":
        text = json.dumps({"fixtures": rows, "ok": ok}, indent=2) + "\n"
    elif args.format == "csv":
        text = "kind,name,observed,expected,ok\n" + "".join(
            f"{r['kind']},\"{r['name']}\",{r.get('observed', r.get('lhs'))!r},"
            f"{r.get('expected', r.get('rhs'))!r},{r['ok']}\n" for r in rows
        )
    else:
        table = []
        for r in rows:
            if r["kind"] == "value":
                table.append([r["name"], f"{r['observed']:.12g}", f"{r['expected']:.12g}", "PASS" if r["ok"] else "FAIL"])
            else:
                table.append([f"{r['name']} [{r['descriptor']}]", f"{r['status']} ({r['lhs']:.12g} vs {r['rhs']:.12g})",
                              r["expect"], "PASS" if r["ok"] else "FAIL"])
        text = _table(table, ["fixture", "observed", "expected", "result"])
        text += f"{sum(r['ok'] for r in rows)}/{len(rows)} fixtures pass\n"
    _write(text, args.out, stdout)
    return EXIT_OK if ok else EXIT_FAIL


def main(argv: Sequence[str] | None = None, stdout: TextIO | None = None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        if args.command == "list":
            return _cmd_list(stdout)
        if args.command == "verify":
            return _cmd_verify(args, stdout)
        if args.command == "replay":
            return _cmd_replay(args, stdout)
        return _cmd_demo(args, stdout)
    except UsageError as exc:
        print(f"matineq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"matineq: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
