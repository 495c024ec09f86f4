"""Command-line entry point.

    critmap verify --n 5 --mode symbolic
    critmap verify --n 9 --mode numeric --trials 50 --seed 7 --json runs.jsonl
    critmap conjecture --profile 2,1,1 --trials 20 --seed 11
    critmap factor --profile 2,1,1 --columns principal
    critmap rank --roots 0,1,3

Exit codes: 0 all asserted checks pass (findings allowed), 1 mathematical
violation or kernel fault, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
import time
from datetime import datetime, timezone
from typing import Callable, Dict, List, Optional, Tuple

from .jacobian import (
    DEFAULT_BOUND,
    corank_check,
    definition_crosscheck,
    structural_checks,
    verify_proposition,
)
from .matrix import SYMBOLIC_GUARD, GuardError
from .multiplicity import (
    MultiplicityProfile,
    ProfileError,
    bullet_checks,
    bullet_patterns,
    conjecture_check,
    enumerate_minors,
    factor_minor,
    principal_columns,
)
from .poly import format_rational, parse_rational
from .report import RunRecord, report_append
from .sampling import MASK64, derive_seed, sample_distinct_roots

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2
DEFAULT_SEED = 1
DEFAULT_WITNESS_PATH = "conjecture-witnesses.jsonl"


class UsageError(Exception):
    pass


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer: {text!r}") from None
    if not 0 <= value <= MASK64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer: {text!r}")
    return value


def _profile(text: str) -> MultiplicityProfile:
    try:
        return MultiplicityProfile.parse(text)
    except ProfileError as exc:
        raise UsageError(str(exc)) from None


def _parse_columns(text: str, profile: MultiplicityProfile) -> Optional[List[Tuple[int, ...]]]:
    if text == "all":
        return None
    if text == "principal":
        return [principal_columns(profile)]
    try:
        cols = tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise UsageError(f"columns must be 'all', 'principal' or a comma list: {text!r}") from None
    return [cols]


# -- commands ------------------------------------------------------------------------


def run_verify(args) -> Tuple[str, Dict]:
    n = args.n
    if n < 2:
        raise UsageError("--n must be at least 2")
    results: Dict = {"n": n, "mode": args.mode}
    ok = True
    if args.mode == "symbolic":
        if n - 1 > SYMBOLIC_GUARD and not args.override_guard:
            raise UsageError(f"symbolic mode is guarded at n <= {SYMBOLIC_GUARD + 1}; pass --override-guard")
        prop = verify_proposition(n, "symbolic", override_guard=args.override_guard)
        structure = structural_checks(n, override_guard=True)
        crosscheck = definition_crosscheck(n, override_guard=True)
        results["structure"] = structure.to_json()
        results["definition_crosscheck"] = crosscheck
        ok = ok and structure.passed and crosscheck
    else:
        prop = verify_proposition(n, "numeric", trials=args.trials, seed=args.seed, bound=args.bound)
    results["proposition"] = prop.to_json()
    ok = ok and prop.passed

    ranks = []
    for trial in range(args.trials):
        roots = sample_distinct_roots(n, derive_seed(args.seed, trial), max(args.bound, n))
        ranks.append(corank_check(roots))
    results["corank"] = {
        "trials": args.trials,
        "expected_rank": n - 1,
        "ranks": ranks,
        "passed": all(r == n - 1 for r in ranks),
    }
    ok = ok and results["corank"]["passed"]
    return ("pass" if ok else "fail"), results


def run_conjecture(args) -> Tuple[str, Dict]:
    profile = _profile(args.profile)
    report = conjecture_check(profile, args.trials, args.seed, args.bound)
    results = report.to_json()
    if report.verdict == "violated":
        results["witness_path"] = str(args.json or args.witness)
        return "fail", results
    return "pass", results


def run_factor(args) -> Tuple[str, Dict]:
    profile = _profile(args.profile)
    if profile.s < 1:
        raise UsageError(f"profile {profile} has no simple roots; nothing to factor")
    columns = _parse_columns(args.columns, profile)
    try:
        minors = enumerate_minors(profile, columns, override_guard=args.override_guard)
    except ProfileError as exc:
        raise UsageError(str(exc)) from None
    entries = []
    status = "pass"
    for mn in minors:
        entry = {"columns": list(mn.columns), "det": str(mn.det)}
        if mn.det.is_zero():
            entry["factorization"] = None
        else:
            fr = factor_minor(mn.det)
            entry["factorization"] = fr.to_json()
            if not (fr.roundtrip_ok and fr.residual_coprime):
                status = "fail"
        entries.append(entry)
    results: Dict = {
        "profile": str(profile),
        "s": profile.s,
        "principal_columns": list(principal_columns(profile)),
        "minors": entries,
    }
    if bullet_patterns(profile):
        bullets = bullet_checks(profile, minors)
        results["bullets"] = bullets.to_json()
        if bullets.status == "fail":
            status = "fail"
        elif bullets.status == "finding" and status == "pass":
            status = "finding"
    return status, results


def run_rank(args) -> Tuple[str, Dict]:
    try:
        roots = [parse_rational(tok) for tok in args.roots.split(",")]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if len(roots) < 2:
        raise UsageError("need at least two roots")
    if len(set(roots)) != len(roots):
        raise UsageError("roots must be pairwise distinct")
    rank = corank_check(roots)
    n = len(roots)
    results = {
        "roots": [format_rational(a) for a in roots],
        "n": n,
        "rank": rank,
        "expected_rank": n - 1,
    }
    return ("pass" if rank == n - 1 else "fail"), results


def _summary(command: str, status: str, results: Dict) -> str:
    if command == "rank":
        return f"rank {results['rank']} (expected {results['expected_rank']}): {status}"
    if command == "conjecture":
        return f"profile {results['profile']}: s={results['s']} ranks={sorted(set(results['ranks']))} verdict {results['verdict']}"
    if command == "verify":
        return f"n={results['n']} mode={results['mode']}: {status}"
    lines = [f"profile {results['profile']}: {len(results['minors'])} minor(s), status {status}"]
    for entry in results["minors"]:
        fr = entry["factorization"]
        if fr is None:
            lines.append(f"  columns {entry['columns']}: det = 0")
        else:
            lines.append(f"  columns {entry['columns']}: c={fr['c']} t={fr['t']} g={fr['g']}")
    for finding in results.get("bullets", {}).get("findings", []):
        lines.append(f"  finding: {finding}")
    return "\n".join(lines)


COMMANDS: Dict[str, Callable] = {
    "verify": run_verify,
    "conjecture": run_conjecture,
    "factor": run_factor,
    "rank": run_rank,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="append a JSONL run record to PATH")
    common.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    common.add_argument("--trials", type=_positive, default=20)
    common.add_argument("--bound", type=_positive, default=DEFAULT_BOUND,
                        help="numerator/denominator bound for sampled roots")
    common.add_argument("--override-guard", action="store_true",
                        help="allow symbolic work above the size guard")

    parser = argparse.ArgumentParser(prog="critmap", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="check the distinct-root Jacobian identities")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=["symbolic", "numeric"], default="symbolic")

    p = sub.add_parser("conjecture", parents=[common], help="rank of M equals the number of simple roots")
    p.add_argument("--profile", required=True, help="decreasing multiplicities, e.g. 2,1,1")
    p.add_argument("--witness", default=DEFAULT_WITNESS_PATH,
                   help="where a violation witness is written when --json is not given")

    p = sub.add_parser("factor", parents=[common], help="factor the simple-row minors of M")
    p.add_argument("--profile", required=True)
    p.add_argument("--columns", default="all", help="'all', 'principal' or e.g. 1,2,3")

    p = sub.add_parser("rank", parents=[common], help="exact rank of T at rational roots")
    p.add_argument("--roots", required=True, help="comma-separated rationals, e.g. 0,1/2,-3")
    return parser


def _parameters(args) -> Dict:
    skip = {"command", "json", "seed", "witness"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = datetime.now(timezone.utc).isoformat(timespec="seconds")
    t0 = time.perf_counter()
    try:
        status, results = COMMANDS[args.command](args)
    except (UsageError, GuardError) as exc:
        print(f"critmap {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    elapsed_ms = int((time.perf_counter() - t0) * 1000)
    record = RunRecord(
        command=args.command,
        parameters=_parameters(args),
        seed=args.seed,
        status=status,
        results=results,
        started=started,
        elapsed_ms=elapsed_ms,
    )
    print(_summary(args.command, status, results))
    targets = [args.json] if args.json else []
    if args.command == "conjecture" and results.get("verdict") == "violated" and not args.json:
        targets.append(args.witness)
    try:
        for path in targets:
            report_append(record, path)
    except OSError as exc:
        print(f"critmap: cannot write {exc.filename}: {exc.strerror}", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_VIOLATION if status == "fail" else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
