"""Command line front end: JSON on stdout, deterministic files on disk.

Subcommands: validate, classify, decompose, sweep, verify.  All output
objects are serialized with sorted keys and no whitespace, so repeated
runs with the same arguments are byte-identical.

Exit codes: 0 success, 1 usage or I/O failure, 2 invalid profile,
3 invariant breach (a negative multiplicity or a failing verify
suite).  No other codes are used.

The sweep distributes profiles over worker processes; AMBIGAL_THREADS
caps the worker count (default: available parallelism).  Workers are
keyed by profile and results are merged in canonical order, so the
output does not depend on the worker count.
"""
from __future__ import annotations

import argparse
import json
import multiprocessing
import os
import sys

from . import verify as verify_mod
from .decomp import NegativeMultiplicity, constants, decompose
from .ramification import EVEN, classify_case, make_profile, validate_profile
from . import tables


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _emit(obj) -> None:
    print(_dump(obj))


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad flags; the contract reserves 2 for
    invalid profiles, so usage errors are remapped to 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _breaks_arg(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"breaks must be comma-separated integers, got {text!r}")


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {text}")
    return value


def _profile_from(args):
    p = make_profile(args.e0, args.breaks, n=args.n, f_exp=args.f_exp)
    v = validate_profile(p)
    if not v.ok:
        _emit({"ok": False, "violations": v.violations})
        raise SystemExit(2)
    return p


def cmd_validate(args) -> int:
    p = make_profile(args.e0, args.breaks, n=args.n, f_exp=args.f_exp)
    v = validate_profile(p)
    _emit({"ok": v.ok, "violations": v.violations})
    return 0 if v.ok else 2


def cmd_classify(args) -> int:
    p = _profile_from(args)
    if p.parity == EVEN or p.s == 3:
        label = classify_case(p)
        _emit({"case": label.value, "stable": label.stable})
    else:
        _emit({"case": None, "stable": p.stable})
    return 0


def cmd_decompose(args) -> int:
    p = _profile_from(args)
    try:
        d = decompose(args.i, p)
    except NegativeMultiplicity as exc:
        _emit({"error": "NEGATIVE_MULTIPLICITY", "detail": str(exc),
               "ok": False})
        return 3
    out = {"case": d.case, "rank": d.rank(),
           "normalized": d.normalized()}
    if not args.normalize:
        out["modules"] = dict(sorted(d.mults.items()))
        out["char"] = list(d.char())
    _emit(out)
    return 0


def _oracle_status(d, p, i) -> str | None:
    """Per-row agreement of the linear formula table with the engine;
    divergences name the table slots (expected on the window-verdict
    strata of cases D and F)."""
    if p.parity == EVEN or p.s != 3:
        return None
    case = d.case
    truth = verify_mod.engine_row_values(case, i, p)
    on_line = p.breaks[1] == 3 * p.breaks[0]
    env = constants(i, p).env(p)
    bad = []
    for slot in [r for r in range(1, 11)
                 if tables.MODULE_TABLE[case][r - 1] is not None] + ["R3"]:
        if slot == "R3":
            form = tables.r3_formula_for(case, "adopted", on_line)
        else:
            form = tables.formula_for(case, slot, "adopted", on_line)
        if tables.evaluate(form, env) != truth[slot]:
            bad.append(str(slot))
    return "agree" if not bad else "divergent:" + ",".join(bad)


def _sweep_profile_lines(p):
    """One profile's records plus its contribution to the summary."""
    lines = []
    support_counts: dict[str, int] = {}
    for i in range(2 ** p.n * p.e0):
        d = decompose(i, p)
        normalized = d.normalized()
        rec = {
            "n": p.n, "e0": p.e0, "breaks": list(p.breaks),
            "f_exp": p.f_exp, "i": i, "case": d.case,
            "modules": dict(sorted(d.mults.items())),
            "normalized": normalized,
            "rank_sum": d.rank() * p.f_exp,
            "char_sum": [c * p.f_exp for c in d.char()],
            "oracle_status": _oracle_status(d, p, i),
        }
        lines.append(_dump(rec))
        for name in normalized:
            support_counts[name] = support_counts.get(name, 0) + 1
    return lines, support_counts


def _worker_count() -> int:
    raw = os.environ.get("AMBIGAL_THREADS", "")
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value >= 1:
        return value
    return os.cpu_count() or 1


def cmd_sweep(args) -> int:
    from .ramification import all_profiles

    profiles = list(all_profiles(args.n, args.e0_max, args.f_exp))
    threads = min(_worker_count(), len(profiles)) or 1
    summary_path = f"{args.out}.summary.json"
    support: dict[str, int] = {}
    records = 0
    try:
        with open(args.out, "w", encoding="ascii") as fh:
            if threads > 1 and len(profiles) >= 4:
                with multiprocessing.Pool(threads) as pool:
                    results = pool.imap(_sweep_profile_lines, profiles)
                    for lines, counts in results:
                        fh.write("\n".join(lines) + "\n")
                        records += len(lines)
                        for name, k in counts.items():
                            support[name] = support.get(name, 0) + k
            else:
                for p in profiles:
                    lines, counts = _sweep_profile_lines(p)
                    fh.write("\n".join(lines) + "\n")
                    records += len(lines)
                    for name, k in counts.items():
                        support[name] = support.get(name, 0) + k
        summary = {"distinct": len(support),
                   "modules": dict(sorted(support.items())),
                   "profiles": len(profiles), "records": records}
        with open(summary_path, "w", encoding="ascii") as fh:
            fh.write(_dump(summary) + "\n")
    except OSError as exc:
        for path in (args.out, summary_path):
            try:
                os.remove(path)
            except OSError:
                pass
        print(f"sweep failed: {exc}", file=sys.stderr)
        return 1
    _emit(summary)
    return 0


def cmd_verify(args) -> int:
    report = verify_mod.run_verify(e0_max=args.e0_max)
    if args.report:
        try:
            with open(args.report, "w", encoding="ascii") as fh:
                json.dump(report, fh, sort_keys=True, indent=2)
                fh.write("\n")
        except OSError as exc:
            try:
                os.remove(args.report)
            except OSError:
                pass
            print(f"report write failed: {exc}", file=sys.stderr)
            return 1
    _emit(report)
    return 0 if report["ok"] else 3


def _add_profile_flags(sub, with_index: bool) -> None:
    sub.add_argument("--e0", type=_positive_int, required=True,
                     help="absolute ramification index of the base field")
    sub.add_argument("--breaks", type=_breaks_arg, required=True,
                     help="comma-separated break numbers, e.g. 1,3,7")
    sub.add_argument("--n", type=int, default=None,
                     help="degree exponent (default: number of breaks)")
    sub.add_argument("--f-exp", type=_positive_int, default=1,
                     dest="f_exp", help="residue degree exponent")
    if with_index:
        sub.add_argument("--i", type=int, required=True,
                         help="ideal index (any integer)")


def _build_parser() -> _Parser:
    parser = _Parser(prog="ambigal",
                     description="Galois-module decompositions of "
                                 "ambiguous ideals, degrees 2 to 8.")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("validate", help="check a ramification profile")
    _add_profile_flags(sub, with_index=False)
    sub.set_defaults(func=cmd_validate)

    sub = subs.add_parser("classify", help="regime of a valid profile")
    _add_profile_flags(sub, with_index=False)
    sub.set_defaults(func=cmd_classify)

    sub = subs.add_parser("decompose",
                          help="decomposition multiset of one ideal")
    _add_profile_flags(sub, with_index=True)
    sub.add_argument("--normalize", action="store_true",
                     help="report only the alias-free multiset")
    sub.set_defaults(func=cmd_decompose)

    sub = subs.add_parser("sweep",
                          help="JSONL records for every profile and index")
    sub.add_argument("--n", type=int, required=True, choices=(0, 1, 2, 3),
                     help="degree exponent of the swept extensions")
    sub.add_argument("--e0-max", type=_positive_int, required=True,
                     dest="e0_max")
    sub.add_argument("--out", required=True,
                     help="output path; summary lands in <out>.summary.json")
    sub.add_argument("--f-exp", type=_positive_int, default=1, dest="f_exp")
    sub.set_defaults(func=cmd_sweep)

    sub = subs.add_parser("verify",
                          help="run every invariant suite and the "
                               "formula-table readings census")
    sub.add_argument("--e0-max", type=_positive_int, default=6,
                     dest="e0_max")
    sub.add_argument("--report", default=None,
                     help="also write the full report to this path")
    sub.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1


if __name__ == "__main__":
    sys.exit(main())
